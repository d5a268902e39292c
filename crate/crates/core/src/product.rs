//! The split side: component algebras `H_{n_k, r_k}` on consecutive parameter
//! blocks, Kronecker-factored forms, and checks that the direct computation
//! agrees with the product of the component computations.

use std::sync::Arc;

use serde::Serialize;

use crate::engine::{Engine, Memo};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::jantzen::VPolynomial;
use crate::matrix::Matrix;
use crate::modular::{elementary_divisor_valuations, ModularSystem, ValuationProfile};
use crate::multipartition::{alpha_p, split, AlphaVector, Multicomposition, Multipartition, PSplit};
use crate::tableau::SemistandardTableau;

/// One factor of the split: `H_{n_k, r_k}` with parameters `q, Q_{p_k+1}, …, Q_{p_k+r_k}`.
#[derive(Clone, Debug)]
pub struct ComponentConfig<M: ModularSystem> {
    pub index: usize,
    pub n: usize,
    pub r: usize,
    pub bounds: Vec<usize>,
    pub ms: M,
}

/// Slices `(n, m, parameters)` according to `p` and `α`.
pub fn component_configs<M: ModularSystem>(
    bounds: &[usize],
    p: &PSplit,
    alpha: &AlphaVector,
    ms: &M,
) -> Result<Vec<ComponentConfig<M>>> {
    if p.r() != bounds.len() || p.r() != ms.r() {
        return Err(Error::SplitMismatch(format!(
            "split {p} does not match {} bounds and {} parameters",
            bounds.len(),
            ms.r()
        )));
    }
    if alpha.n_parts.len() != p.g() {
        return Err(Error::SplitMismatch(format!("α = {:?} has the wrong length for split {p}", alpha.n_parts)));
    }
    p.offsets()
        .into_iter()
        .zip(p.r_parts())
        .enumerate()
        .map(|(k, (off, &r))| {
            Ok(ComponentConfig {
                index: k,
                n: alpha.n_parts[k],
                r,
                bounds: bounds[off..off + r].to_vec(),
                ms: ms.restrict(off, r)?,
            })
        })
        .collect()
}

/// The form on `Z̄^λ` at weight `μ`, rows indexed by tuples of component tableaux.
#[derive(Clone, Debug)]
pub struct BarZBlock<K: Field> {
    pub tableaux: Vec<Vec<SemistandardTableau>>,
    pub gram: Matrix<K>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorCheck {
    pub mu: String,
    pub profile: ValuationProfile,
    pub minkowski: ValuationProfile,
    pub convolution_pass: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorReport {
    pub lambda: String,
    pub checks: Vec<TensorCheck>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Schur,
    Hecke,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub side: Side,
    pub lambda: String,
    pub mu: String,
    pub direct: VPolynomial,
    pub product: VPolynomial,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub schur_pass: usize,
    pub schur_fail: usize,
    pub hecke_pass: usize,
    pub hecke_fail: usize,
    /// Pairs outside the hypotheses of the Hecke-side comparison.
    pub hecke_skipped: usize,
    pub tensor_pass: usize,
    pub tensor_fail: usize,
    /// Passing pairs whose common polynomial is not constant.
    pub schur_nonconstant: usize,
    pub hecke_nonconstant: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub r: usize,
    pub bounds: Vec<usize>,
    pub split: String,
    pub system: serde_json::Value,
    pub records: Vec<PairRecord>,
    pub tensor: Vec<TensorReport>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.summary.schur_fail == 0 && self.summary.hecke_fail == 0 && self.summary.tensor_fail == 0
    }
}

/// The direct engine together with lazily built component engines.
#[derive(Debug)]
pub struct ProductContext<M: ModularSystem> {
    direct: Arc<Engine<M>>,
    split: PSplit,
    components: Memo<(usize, usize), Engine<M>>,
}

impl<M: ModularSystem> ProductContext<M> {
    pub fn new(direct: Arc<Engine<M>>, split: PSplit) -> Result<Self> {
        if split.r() != direct.r() {
            return Err(Error::SplitMismatch(format!("split {split} does not sum to r = {}", direct.r())));
        }
        Ok(ProductContext {
            direct,
            split,
            components: Memo::new(),
        })
    }

    pub fn direct(&self) -> &Engine<M> {
        &self.direct
    }

    pub fn split(&self) -> &PSplit {
        &self.split
    }

    /// The engine for block `k` at rank `n_k`.
    pub fn component(&self, k: usize, n_k: usize) -> Result<Arc<Engine<M>>> {
        self.components.get_or_try(&(k, n_k), || {
            let mut sizes = vec![0; self.split.g()];
            sizes[k] = n_k;
            let cfg = component_configs(
                self.direct.bounds(),
                &self.split,
                &AlphaVector::from_sizes(sizes),
                self.direct.modular_system(),
            )?
            .swap_remove(k);
            Engine::new(cfg.n, &cfg.bounds, cfg.ms)
        })
    }

    fn pieces(&self, mu: &Multicomposition) -> Result<Vec<Multicomposition>> {
        split(&self.direct.normalize(mu)?, &self.split)
    }

    fn check_alpha(&self, lambda: &Multicomposition, mu: &Multicomposition) -> Result<()> {
        let (a, b) = (alpha_p(lambda, &self.split)?, alpha_p(mu, &self.split)?);
        if a != b {
            return Err(Error::SplitMismatch(format!(
                "α_p({lambda}) = {:?} differs from α_p({mu}) = {:?}",
                a.n_parts, b.n_parts
            )));
        }
        Ok(())
    }

    /// `∏_k d_{λ^[k] μ^[k]}(v)`, each factor computed in its component algebra.
    pub fn product_v_decomp(&self, lambda: &Multicomposition, mu: &Multicomposition) -> Result<VPolynomial> {
        self.component_product(lambda, mu, |e, l, m| e.v_decomp(l, m))
    }

    /// `∏_k d^H_{λ^[k] μ^[k]}(v)`.
    pub fn product_v_decomp_hecke(&self, lambda: &Multicomposition, mu: &Multicomposition) -> Result<VPolynomial> {
        self.component_product(lambda, mu, |e, l, m| e.v_decomp_hecke(l, m))
    }

    fn component_product(
        &self,
        lambda: &Multicomposition,
        mu: &Multicomposition,
        f: impl Fn(&Engine<M>, &Multicomposition, &Multicomposition) -> Result<VPolynomial>,
    ) -> Result<VPolynomial> {
        self.check_alpha(lambda, mu)?;
        let (ls, ms) = (self.pieces(lambda)?, self.pieces(mu)?);
        let mut acc = VPolynomial::one();
        for (k, (l, m)) in ls.iter().zip(&ms).enumerate() {
            let e = self.component(k, l.size())?;
            acc = acc.mul(&f(&e, l, m)?);
        }
        Ok(acc)
    }

    /// Kronecker product of the component Weyl forms at `μ^[k]`; empty when
    /// some `T_0(λ^[k], μ^[k])` is empty.
    pub fn barz_gram_block(&self, lambda: &Multicomposition, mu: &Multicomposition) -> Result<BarZBlock<M::K>> {
        self.check_alpha(lambda, mu)?;
        let (ls, ms) = (self.pieces(lambda)?, self.pieces(mu)?);
        let mut gram = Matrix::identity(1);
        let mut tableaux = vec![Vec::new()];
        for (k, (l, m)) in ls.iter().zip(&ms).enumerate() {
            let e = self.component(k, l.size())?;
            let w = e.weyl_gram(l)?;
            let Some(b) = w.block(m) else {
                return Ok(BarZBlock {
                    tableaux: Vec::new(),
                    gram: Matrix::zeros(0, 0),
                });
            };
            gram = gram.kronecker(&b.gram);
            tableaux = tableaux
                .iter()
                .flat_map(|prefix: &Vec<SemistandardTableau>| {
                    b.tableaux.iter().map(move |t| {
                        let mut v = prefix.clone();
                        v.push(t.clone());
                        v
                    })
                })
                .collect();
        }
        Ok(BarZBlock { tableaux, gram })
    }

    /// Profile of every `Z̄^λ` weight block against the Minkowski sum of the
    /// component profiles, and layer counts against their convolution.
    pub fn verify_jantzen_tensor(&self, lambda: &Multicomposition) -> Result<TensorReport> {
        let l = self.direct.require_partition(lambda)?;
        let ls = self.pieces(&l)?;
        let alpha = alpha_p(&l, &self.split)?;
        let ms = self.direct.modular_system();
        let mut checks = Vec::new();
        for mu in self.direct.lambda() {
            if alpha_p(mu, &self.split)? != alpha {
                continue;
            }
            let block = self.barz_gram_block(&l, mu)?;
            if block.tableaux.is_empty() {
                continue;
            }
            let profile = elementary_divisor_valuations(ms, &block.gram)?;
            let mut minkowski = ValuationProfile::new(vec![crate::modular::Valuation::Finite(0)]);
            let mut counts = vec![1usize];
            let mut infinite_total = 0usize;
            let mut total = 1usize;
            for (k, (lk, mk)) in ls.iter().zip(self.pieces(mu)?).enumerate() {
                let e = self.component(k, lk.size())?;
                let prof = e.jantzen_profile(lk)?;
                let p = prof
                    .block(&mk)
                    .ok_or_else(|| Error::Inconsistency(format!("component block {mk} missing for {lk}")))?;
                minkowski = minkowski.minkowski_sum(p);
                let finite = finite_counts(p);
                counts = convolve(&counts, &finite);
                let fin_total: usize = finite.iter().sum();
                infinite_total = infinite_total * p.len() + (total - infinite_total) * (p.len() - fin_total);
                total *= p.len();
            }
            let got = finite_counts(&profile);
            let convolution_pass =
                trim(&got) == trim(&counts) && profile.infinite_count() == infinite_total && profile.len() == total;
            checks.push(TensorCheck {
                mu: mu.to_string(),
                pass: convolution_pass && profile == minkowski,
                profile,
                minkowski,
                convolution_pass,
            });
        }
        Ok(TensorReport {
            lambda: l.to_string(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        })
    }

    fn hecke_applicable(&self, mu: &Multipartition) -> Result<bool> {
        if self.direct.omega().is_none() || !self.direct.is_d_nonzero(mu)? {
            return Ok(false);
        }
        for (k, mk) in self.pieces(mu)?.iter().enumerate() {
            let e = self.component(k, mk.size())?;
            if e.omega().is_none() || !e.is_d_nonzero(mk)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Compares both sides of the product formulas on every pair with `α_p(λ) = α_p(μ)`.
    pub fn verify(&self) -> Result<VerificationReport> {
        let d = &self.direct;
        let mut records = Vec::new();
        let mut summary = Summary::default();
        let mut tensor = Vec::new();
        for l in d.lambda_plus() {
            let row = d.v_decomp_row(l)?;
            for m in d.lambda_plus() {
                if alpha_p(l, &self.split)? != alpha_p(m, &self.split)? {
                    continue;
                }
                let direct = row[m].clone();
                let product = self.product_v_decomp(l, m)?;
                let pass = direct == product;
                if pass {
                    summary.schur_pass += 1;
                    if !direct.is_constant() {
                        summary.schur_nonconstant += 1;
                    }
                } else {
                    summary.schur_fail += 1;
                }
                records.push(PairRecord {
                    side: Side::Schur,
                    lambda: l.to_string(),
                    mu: m.to_string(),
                    direct,
                    product,
                    pass,
                });
                if !self.hecke_applicable(m)? {
                    summary.hecke_skipped += 1;
                    continue;
                }
                let direct = d.v_decomp_hecke(l, m)?;
                let product = self.product_v_decomp_hecke(l, m)?;
                let pass = direct == product;
                if pass {
                    summary.hecke_pass += 1;
                    if !direct.is_constant() {
                        summary.hecke_nonconstant += 1;
                    }
                } else {
                    summary.hecke_fail += 1;
                }
                records.push(PairRecord {
                    side: Side::Hecke,
                    lambda: l.to_string(),
                    mu: m.to_string(),
                    direct,
                    product,
                    pass,
                });
            }
            let t = self.verify_jantzen_tensor(l)?;
            if t.pass {
                summary.tensor_pass += 1;
            } else {
                summary.tensor_fail += 1;
            }
            tensor.push(t);
        }
        Ok(VerificationReport {
            n: d.n(),
            r: d.r(),
            bounds: d.bounds().to_vec(),
            split: self.split.to_string(),
            system: d.modular_system().describe(),
            records,
            tensor,
            summary,
        })
    }
}

/// Runs [`ProductContext::verify`] on a fresh engine.
pub fn verify_product_formula<M: ModularSystem>(
    n: usize,
    bounds: &[usize],
    split: &PSplit,
    ms: M,
) -> Result<VerificationReport> {
    let direct = Arc::new(Engine::new(n, bounds, ms)?);
    ProductContext::new(direct, split.clone())?.verify()
}

fn finite_counts(p: &ValuationProfile) -> Vec<usize> {
    let max = p.max_finite().unwrap_or(-1);
    (0..=max).map(|i| p.count_eq(i)).collect()
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(v: &[usize]) -> &[usize] {
    let len = v.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
    &v[..len]
}
