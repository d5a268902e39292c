//! Modular systems `(K, R, F)`: valuations, reduction, elementary divisors over `R`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Cyclotomic, Field, Fp, Poly, RatFunc, Rational};
use crate::matrix::Matrix;

/// A value in `Z ∪ {∞}`; `Finite(_) < Infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }

    pub fn plus(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Sorted multiset of elementary-divisor valuations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct ValuationProfile(Vec<Valuation>);

impl ValuationProfile {
    pub fn new(mut values: Vec<Valuation>) -> Self {
        values.sort();
        ValuationProfile(values)
    }

    pub fn values(&self) -> &[Valuation] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count_eq(&self, i: i64) -> usize {
        self.0.iter().filter(|v| **v == Valuation::Finite(i)).count()
    }

    pub fn count_at_least(&self, i: i64) -> usize {
        self.0.iter().filter(|v| **v >= Valuation::Finite(i)).count()
    }

    pub fn infinite_count(&self) -> usize {
        self.0.iter().filter(|v| v.is_infinite()).count()
    }

    pub fn max_finite(&self) -> Option<i64> {
        self.0.iter().filter_map(|v| v.finite()).max()
    }

    /// `{a + b : a ∈ self, b ∈ other}` as a multiset.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.0 {
            for b in &other.0 {
                out.push(a.plus(*b));
            }
        }
        ValuationProfile::new(out)
    }
}

impl fmt::Display for ValuationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", s.join(", "))
    }
}

/// A discrete valuation ring `R` with fraction field `K` and residue field `F`,
/// together with the Hecke parameters `q̂, Q̂_1, ..., Q̂_r ∈ R`.
pub trait ModularSystem: Clone + fmt::Debug + Send + Sync + 'static {
    type K: Field;
    type F: Field;

    fn valuation(&self, x: &Self::K) -> Valuation;

    /// The canonical map `R → F`; errors off `R`.
    fn reduce(&self, x: &Self::K) -> Result<Self::F>;

    /// A generator of the maximal ideal.
    fn uniformizer(&self) -> Self::K;

    fn qhat(&self) -> &Self::K;

    fn big_qhat(&self) -> &[Self::K];

    fn r(&self) -> usize {
        self.big_qhat().len()
    }

    /// The same ring with parameters `(q̂, Q̂_{start+1}, ..., Q̂_{start+len})`.
    fn restrict(&self, start: usize, len: usize) -> Result<Self>;

    /// A canonical text description, stable across runs, used for cache keys.
    fn fingerprint(&self) -> String;

    fn describe(&self) -> serde_json::Value;
}

fn check_slice(r: usize, start: usize, len: usize) -> Result<()> {
    if len == 0 || start + len > r {
        return Err(Error::ParameterMismatch(format!(
            "cannot take {len} parameters from position {start} of {r}"
        )));
    }
    Ok(())
}

/// `Z_(p) ⊂ Q` with residue field `F_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PLocal {
    p: u64,
    qhat: Rational,
    big_qhat: Vec<Rational>,
}

impl PLocal {
    pub fn new(p: u64, qhat: Rational, big_qhat: Vec<Rational>) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        if big_qhat.is_empty() {
            return Err(Error::Config("at least one parameter Q̂ is required".into()));
        }
        let sys = PLocal { p, qhat, big_qhat };
        if sys.valuation(&sys.qhat) != Valuation::Finite(0) {
            return Err(Error::Config(format!("q̂ = {} is not a unit at p = {p}", sys.qhat)));
        }
        for q in &sys.big_qhat {
            if sys.valuation(q) < Valuation::Finite(0) {
                return Err(Error::NotIntegral(q.to_string()));
            }
        }
        Ok(sys)
    }

    /// Integer parameters.
    pub fn with_ints(p: u64, qhat: i64, big_qhat: &[i64]) -> Result<Self> {
        PLocal::new(p, Rational::from_i64(qhat), big_qhat.iter().map(|&x| Rational::from_i64(x)).collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn int_valuation(&self, v: &BigInt) -> i64 {
        let p = BigInt::from(self.p);
        let mut v = v.clone();
        let mut k = 0;
        loop {
            let (q, r) = v.div_rem(&p);
            if !r.is_zero() {
                return k;
            }
            v = q;
            k += 1;
        }
    }
}

impl ModularSystem for PLocal {
    type K = Rational;
    type F = Fp;

    fn valuation(&self, x: &Rational) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinity;
        }
        Valuation::Finite(self.int_valuation(x.numer()) - self.int_valuation(x.denom()))
    }

    fn reduce(&self, x: &Rational) -> Result<Fp> {
        if self.valuation(x) < Valuation::Finite(0) {
            return Err(Error::NotIntegral(x.to_string()));
        }
        let p = BigInt::from(self.p);
        let a = x.numer().mod_floor(&p).to_i64().expect("residue fits");
        let b = x.denom().mod_floor(&p).to_i64().expect("residue fits");
        let b_inv = Fp::new(b, self.p).inv().expect("denominator is a unit");
        Ok(Fp::new(a, self.p).mul(&b_inv))
    }

    fn uniformizer(&self) -> Rational {
        Rational::from_i64(self.p as i64)
    }

    fn qhat(&self) -> &Rational {
        &self.qhat
    }

    fn big_qhat(&self) -> &[Rational] {
        &self.big_qhat
    }

    fn restrict(&self, start: usize, len: usize) -> Result<Self> {
        check_slice(self.r(), start, len)?;
        Ok(PLocal {
            p: self.p,
            qhat: self.qhat.clone(),
            big_qhat: self.big_qhat[start..start + len].to_vec(),
        })
    }

    fn fingerprint(&self) -> String {
        let qs: Vec<String> = self.big_qhat.iter().map(|q| q.to_string()).collect();
        format!("p-local;p={};qhat={};Qhat={}", self.p, self.qhat, qs.join(","))
    }

    fn describe(&self) -> serde_json::Value {
        serde_json::json!({
            "system": "p-local",
            "p": self.p,
            "qhat": self.qhat.to_string(),
            "Qhat": self.big_qhat.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// A parameter `c(ζ_e) · (1+x)^b` of the x-adic system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XParam {
    /// Coefficients of `c` in powers of `ζ_e`, ascending.
    pub coeffs: Vec<Rational>,
    pub exponent: i64,
}

impl XParam {
    /// Parses `c0,c1,...^b`; the exponent defaults to 0.
    pub fn parse(s: &str) -> Result<Self> {
        let (c, b) = match s.split_once('^') {
            Some((c, b)) => (c, b.trim().parse::<i64>().map_err(|e| Error::Parse(format!("exponent in {s:?}: {e}")))?),
            None => (s, 0),
        };
        let coeffs = c
            .split(',')
            .map(|t| t.trim().parse::<Rational>().map_err(|e| Error::Parse(format!("{t:?} in {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(XParam { coeffs, exponent: b })
    }

    pub fn to_scalar(&self, e: u32) -> RatFunc<Cyclotomic> {
        let c = Cyclotomic::from_coeffs(e, self.coeffs.clone());
        let one_plus_x = RatFunc::from_poly(Poly::new(vec![Cyclotomic::one(), Cyclotomic::one()]));
        let factor = if self.exponent >= 0 {
            one_plus_x.pow(self.exponent as u32)
        } else {
            one_plus_x.pow((-self.exponent) as u32).inv().expect("1+x is nonzero")
        };
        RatFunc::constant(c).mul(&factor)
    }
}

impl fmt::Display for XParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}^{}", c.join(","), self.exponent)
    }
}

/// `R = Q(ζ_e)[x]_(x)` inside `K = Q(ζ_e)(x)`, with residue field `Q(ζ_e)`.
#[derive(Clone, Debug)]
pub struct XAdic {
    e: u32,
    qhat_spec: XParam,
    big_qhat_spec: Vec<XParam>,
    qhat: RatFunc<Cyclotomic>,
    big_qhat: Vec<RatFunc<Cyclotomic>>,
}

impl XAdic {
    /// `qhat = None` selects the default `q̂ = ζ_e (1+x)`.
    pub fn new(e: u32, qhat: Option<XParam>, big_qhat: Vec<XParam>) -> Result<Self> {
        if e == 0 {
            return Err(Error::Config("root of unity order must be positive".into()));
        }
        if big_qhat.is_empty() {
            return Err(Error::Config("at least one parameter Q̂ is required".into()));
        }
        let qhat_spec = qhat.unwrap_or(XParam {
            coeffs: vec![Rational::zero(), Rational::one()],
            exponent: 1,
        });
        let q = qhat_spec.to_scalar(e);
        if q.is_zero() {
            return Err(Error::Config("q̂ must be a unit".into()));
        }
        Ok(XAdic {
            e,
            qhat: q,
            big_qhat: big_qhat.iter().map(|p| p.to_scalar(e)).collect(),
            qhat_spec,
            big_qhat_spec: big_qhat,
        })
    }

    pub fn e(&self) -> u32 {
        self.e
    }
}

impl ModularSystem for XAdic {
    type K = RatFunc<Cyclotomic>;
    type F = Cyclotomic;

    fn valuation(&self, x: &Self::K) -> Valuation {
        x.order_at_zero().map_or(Valuation::Infinity, Valuation::Finite)
    }

    fn reduce(&self, x: &Self::K) -> Result<Cyclotomic> {
        x.value_at_zero().ok_or_else(|| Error::NotIntegral(x.to_string()))
    }

    fn uniformizer(&self) -> Self::K {
        RatFunc::x()
    }

    fn qhat(&self) -> &Self::K {
        &self.qhat
    }

    fn big_qhat(&self) -> &[Self::K] {
        &self.big_qhat
    }

    fn restrict(&self, start: usize, len: usize) -> Result<Self> {
        check_slice(self.r(), start, len)?;
        Ok(XAdic {
            e: self.e,
            qhat_spec: self.qhat_spec.clone(),
            qhat: self.qhat.clone(),
            big_qhat_spec: self.big_qhat_spec[start..start + len].to_vec(),
            big_qhat: self.big_qhat[start..start + len].to_vec(),
        })
    }

    fn fingerprint(&self) -> String {
        let qs: Vec<String> = self.big_qhat_spec.iter().map(|q| q.to_string()).collect();
        format!("x-adic;e={};qhat={};Qhat={}", self.e, self.qhat_spec, qs.join(";"))
    }

    fn describe(&self) -> serde_json::Value {
        serde_json::json!({
            "system": "x-adic",
            "e": self.e,
            "qhat": self.qhat_spec.to_string(),
            "Qhat": self.big_qhat_spec.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Valuations of the Smith normal form diagonal of `g` over `R`.
///
/// Pivots on an entry of minimal valuation (lexicographically first on ties),
/// clears its column, and drops its row and column. Once the remainder is zero,
/// the leftover diagonal entries are `∞`.
pub fn elementary_divisor_valuations<M: ModularSystem>(ms: &M, g: &Matrix<M::K>) -> Result<ValuationProfile> {
    let mut vals: Vec<Valuation> = Vec::with_capacity(g.rows() * g.cols());
    for x in g.entries() {
        let v = ms.valuation(x);
        if v < Valuation::Finite(0) {
            return Err(Error::NotIntegral(x.to_string()));
        }
        vals.push(v);
    }
    let mut a = g.clone();
    let mut rows: Vec<usize> = (0..g.rows()).collect();
    let mut cols: Vec<usize> = (0..g.cols()).collect();
    let diag = g.rows().min(g.cols());
    let mut out = Vec::with_capacity(diag);
    while !rows.is_empty() && !cols.is_empty() {
        let mut best: Option<(Valuation, usize, usize)> = None;
        for (ri, &i) in rows.iter().enumerate() {
            for (ci, &j) in cols.iter().enumerate() {
                let v = ms.valuation(a.get(i, j));
                let better = match best {
                    None => true,
                    Some((bv, _, _)) => v.cmp(&bv) == Ordering::Less,
                };
                if better {
                    best = Some((v, ri, ci));
                }
            }
        }
        let (v, ri, ci) = best.expect("nonempty remainder");
        if v.is_infinite() {
            break;
        }
        let (pi, pj) = (rows[ri], cols[ci]);
        let pivot_inv = a.get(pi, pj).inv().expect("finite valuation means nonzero");
        for &i in &rows {
            if i == pi {
                continue;
            }
            let f = a.get(i, pj).mul(&pivot_inv);
            if !f.is_zero() {
                a.add_row_multiple(i, pi, &f.neg());
            }
        }
        out.push(v);
        rows.remove(ri);
        cols.remove(ci);
    }
    while out.len() < diag {
        out.push(Valuation::Infinity);
    }
    Ok(ValuationProfile::new(out))
}

/// Rank of the entrywise reduction of `g` over `F`.
pub fn rank_over_f<M: ModularSystem>(ms: &M, g: &Matrix<M::K>) -> Result<usize> {
    Ok(g.try_map(|x| ms.reduce(x))?.rank())
}
