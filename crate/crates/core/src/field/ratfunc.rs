use std::fmt;

use super::{Field, Poly};

/// A rational function `num(x) / den(x)` over a coefficient field.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, and `den = 1` when `num = 0`.
#[derive(Clone, PartialEq)]
pub struct RatFunc<C: Field> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Field> RatFunc<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::constant(C::one()),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().cloned().expect("nonzero denominator");
        let lead_inv = lead.inv().expect("nonzero leading coefficient");
        RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(C::one()),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_poly(Poly::monomial(C::one(), 1))
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    /// Order of vanishing at `x = 0` (negative for poles); `None` for zero.
    pub fn order_at_zero(&self) -> Option<i64> {
        let a = self.num.low_order()? as i64;
        let b = self.den.low_order().expect("nonzero denominator") as i64;
        Some(a - b)
    }

    /// Value at `x = 0`; `None` if there is a pole there.
    pub fn value_at_zero(&self) -> Option<C> {
        let d = self.den.coeff(0);
        let dinv = d.inv()?;
        Some(self.num.coeff(0).mul(&dinv))
    }
}

impl<C: Field> Field for RatFunc<C> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }
    fn to_json(&self) -> serde_json::Value {
        let enc = |p: &Poly<C>| p.coeffs().iter().map(|c| c.to_json()).collect::<Vec<_>>();
        serde_json::json!({ "num": enc(&self.num), "den": enc(&self.den) })
    }
    fn from_json(v: &serde_json::Value) -> Option<Self> {
        let dec = |key: &str| -> Option<Poly<C>> {
            let arr = v.get(key)?.as_array()?;
            Some(Poly::new(arr.iter().map(C::from_json).collect::<Option<Vec<_>>>()?))
        };
        let den = dec("den")?;
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(dec("num")?, den))
    }
}

fn fmt_poly<C: Field>(p: &Poly<C>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match i {
            0 => write!(f, "({c})")?,
            1 => write!(f, "({c})x")?,
            _ => write!(f, "({c})x^{i}")?,
        }
    }
    Ok(())
}

impl<C: Field> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.num, f)?;
        if self.den.degree() != Some(0) {
            write!(f, " / ")?;
            fmt_poly(&self.den, f)?;
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Cyclotomic;

    type K = RatFunc<Cyclotomic>;

    #[test]
    fn canonical_form_cancels() {
        let x = K::x();
        let one = K::one();
        let a = x.add(&one).mul(&x);
        let b = a.div(&x.add(&one)).unwrap();
        assert_eq!(b, x);
        assert_eq!(b.denom().degree(), Some(0));
    }

    #[test]
    fn order_and_value() {
        let x = K::x();
        let two = K::from_i64(2);
        let f = x.mul(&x).mul(&x.add(&K::one())).div(&two).unwrap();
        assert_eq!(f.order_at_zero(), Some(2));
        let g = Field::add(&K::constant(Cyclotomic::zeta(3)), &x);
        assert_eq!(g.order_at_zero(), Some(0));
        assert_eq!(g.value_at_zero(), Some(Cyclotomic::zeta(3)));
        let h = K::one().div(&x).unwrap();
        assert_eq!(h.order_at_zero(), Some(-1));
        assert_eq!(h.value_at_zero(), None);
        assert_eq!(K::from_json(&f.to_json()), Some(f));
    }
}
