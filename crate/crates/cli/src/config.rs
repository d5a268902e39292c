use std::path::PathBuf;

use clap::{Args, ValueEnum};
use vdecomp_core::{Field, Multicomposition, PLocal, PSplit, Rational, XAdic, XParam};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemKind {
    /// `R = Z_(p)`, parameters are rationals.
    #[value(name = "p-local")]
    PLocal,
    /// `R = Q(ζ_e)[x]_(x)`, parameters are `c(ζ_e)(1+x)^b`.
    #[value(name = "x-adic")]
    XAdic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Latex,
}

#[derive(Args, Clone, Debug)]
pub struct ConfigArgs {
    /// Rank of the algebra.
    #[arg(long)]
    pub n: usize,
    /// Number of cyclotomic parameters; inferred from --Qhat or --m when omitted.
    #[arg(long)]
    pub r: Option<usize>,
    /// Row bounds m_1,...,m_r (default n for each component).
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<usize>>,
    /// Parameter split r_1,...,r_g.
    #[arg(long = "p-split")]
    pub p_split: Option<String>,
    #[arg(long, value_enum, default_value = "p-local")]
    pub system: SystemKind,
    /// Residue characteristic of the p-local system (default 2).
    #[arg(long)]
    pub p: Option<u64>,
    /// Order of the root of unity of the x-adic system (default 2).
    #[arg(long)]
    pub e: Option<u32>,
    /// q̂: a rational (p-local) or `c0,c1,...^b` (x-adic).
    #[arg(long)]
    pub qhat: Option<String>,
    /// Q̂_1,...,Q̂_r: comma separated rationals (p-local) or `;` separated x-adic parameters.
    #[arg(long = "Qhat")]
    pub big_qhat: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Directory for cached Murphy transition matrices.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long)]
    pub no_cache: bool,
    /// Restrict `gram` to one multipartition, e.g. `2,1|1`.
    #[arg(long)]
    pub lambda: Option<String>,
}

#[derive(Clone, Debug)]
pub enum SystemConfig {
    PLocal(PLocal),
    XAdic(XAdic),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub r: usize,
    pub bounds: Vec<usize>,
    pub split: Option<PSplit>,
    pub system: SystemConfig,
    pub output: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    pub lambda: Option<Multicomposition>,
}

impl RunConfig {
    pub fn from_args(a: &ConfigArgs) -> Result<Self, CliError> {
        let qs: Option<Vec<String>> = a.big_qhat.as_ref().map(|s| {
            let sep = if a.system == SystemKind::XAdic { ';' } else { ',' };
            s.split(sep).map(|t| t.trim().to_string()).collect()
        });
        let r = a
            .r
            .or(qs.as_ref().map(Vec::len))
            .or(a.m.as_ref().map(Vec::len))
            .unwrap_or(1);
        if r == 0 {
            return Err(CliError::Usage("r must be positive".into()));
        }
        if let Some(q) = &qs {
            if q.len() != r {
                return Err(CliError::Usage(format!("--Qhat has {} entries but r = {r}", q.len())));
            }
        }
        let bounds = a.m.clone().unwrap_or_else(|| vec![a.n; r]);
        if bounds.len() != r {
            return Err(CliError::Usage(format!("--m has {} entries but r = {r}", bounds.len())));
        }
        let split = a.p_split.as_deref().map(PSplit::parse).transpose()?;
        if let Some(p) = &split {
            if p.r() != r {
                return Err(CliError::Usage(format!("--p-split {p} does not sum to r = {r}")));
            }
        }
        let system = match a.system {
            SystemKind::PLocal => {
                if a.e.is_some() {
                    return Err(CliError::Usage("--e applies to the x-adic system only".into()));
                }
                let p = a.p.unwrap_or(2);
                let qhat = a
                    .qhat
                    .as_deref()
                    .unwrap_or("1")
                    .parse::<Rational>()
                    .map_err(|e| CliError::Usage(format!("--qhat: {e}")))?;
                let big = match qs {
                    Some(q) => q
                        .iter()
                        .map(|t| t.parse::<Rational>().map_err(|e| CliError::Usage(format!("--Qhat: {e}"))))
                        .collect::<Result<Vec<_>, _>>()?,
                    None => (0..r).map(|k| Rational::from_i64(k as i64 * p as i64)).collect(),
                };
                SystemConfig::PLocal(PLocal::new(p, qhat, big)?)
            }
            SystemKind::XAdic => {
                if a.p.is_some() {
                    return Err(CliError::Usage("--p applies to the p-local system only".into()));
                }
                let e = a.e.unwrap_or(2);
                let qhat = a.qhat.as_deref().map(XParam::parse).transpose()?;
                let big = match qs {
                    Some(q) => q.iter().map(|t| XParam::parse(t)).collect::<Result<Vec<_>, _>>()?,
                    None => (0..r)
                        .map(|k| {
                            let mut coeffs = vec![Rational::from_i64(0); k + 1];
                            coeffs[k] = Rational::from_i64(1);
                            XParam { coeffs, exponent: 0 }
                        })
                        .collect(),
                };
                SystemConfig::XAdic(XAdic::new(e, qhat, big)?)
            }
        };
        let lambda = a
            .lambda
            .as_deref()
            .map(|s| Multicomposition::parse(s, &bounds))
            .transpose()?;
        Ok(RunConfig {
            n: a.n,
            r,
            bounds,
            split,
            system,
            output: a.output,
            cache_dir: if a.no_cache { None } else { a.cache_dir.clone() },
            lambda,
        })
    }
}
