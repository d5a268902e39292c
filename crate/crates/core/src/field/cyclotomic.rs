use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use super::{Field, Poly, Rational};

/// The cyclotomic polynomial `Φ_e(y)` over `Q`.
pub fn cyclotomic_polynomial(e: u32) -> Poly<Rational> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Poly<Rational>>>> = OnceLock::new();
    assert!(e >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&e) {
        return p.clone();
    }
    // y^e - 1 = prod_{d | e} Φ_d(y)
    let mut acc = Poly::monomial(Rational::one(), e as usize).sub(&Poly::constant(Rational::one()));
    for d in 1..e {
        if e.is_multiple_of(d) {
            let (q, r) = acc.div_rem(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            acc = q;
        }
    }
    cache.lock().unwrap().insert(e, acc.clone());
    acc
}

/// An element of `Q(ζ_e)`, stored as its residue polynomial in `ζ` modulo `Φ_e`.
///
/// `order == 0` marks a rational constant that has not met a cyclotomic
/// context yet; rational constants embed identically into every `Q(ζ_e)`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    poly: Poly<Rational>,
}

impl Cyclotomic {
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        Self::reduce(order, Poly::new(coeffs))
    }

    /// The primitive root `ζ_e`.
    pub fn zeta(order: u32) -> Self {
        Self::from_coeffs(order, vec![Rational::zero(), Rational::one()])
    }

    pub fn rational(c: Rational) -> Self {
        Cyclotomic {
            order: 0,
            poly: Poly::constant(c),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        self.poly.coeffs()
    }

    fn reduce(order: u32, poly: Poly<Rational>) -> Self {
        if order == 0 {
            assert!(poly.degree().unwrap_or(0) == 0, "non-constant element without a cyclotomic order");
            return Cyclotomic { order, poly };
        }
        let (_, r) = poly.div_rem(&cyclotomic_polynomial(order));
        Cyclotomic { order, poly: r }
    }

    fn join(&self, other: &Self) -> u32 {
        match (self.order, other.order) {
            (0, b) => b,
            (a, 0) => a,
            (a, b) => {
                assert_eq!(a, b, "mixing elements of different cyclotomic fields");
                a
            }
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Field for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic {
            order: 0,
            poly: Poly::zero(),
        }
    }
    fn one() -> Self {
        Self::rational(Rational::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::rational(Rational::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Cyclotomic {
            order: self.join(other),
            poly: self.poly.add(&other.poly),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Cyclotomic {
            order: self.join(other),
            poly: self.poly.sub(&other.poly),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Self::reduce(self.join(other), self.poly.mul(&other.poly))
    }
    fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            poly: self.poly.neg(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.poly.is_zero() {
            return None;
        }
        if self.poly.degree() == Some(0) {
            let c = self.poly.coeff(0).inv()?;
            return Some(Cyclotomic {
                order: self.order,
                poly: Poly::constant(c),
            });
        }
        let modulus = cyclotomic_polynomial(self.order);
        let (g, s) = self.poly.ext_gcd_inverse_part(&modulus);
        debug_assert_eq!(g.degree(), Some(0), "Φ_e is irreducible");
        Some(Self::reduce(self.order, s))
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "e": self.order,
            "c": self.poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
    fn from_json(v: &serde_json::Value) -> Option<Self> {
        let order = v.get("e")?.as_u64()? as u32;
        let coeffs = v
            .get("c")?
            .as_array()?
            .iter()
            .map(|c| c.as_str()?.parse().ok())
            .collect::<Option<Vec<Rational>>>()?;
        Some(Self::from_coeffs(order, coeffs))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@Q(z{})", self.order)
    }
}
