use std::fmt;

use super::Field;

/// An element of the prime field `F_p`.
///
/// A modulus of `0` marks a context-free integer constant (what `zero()`,
/// `one()` and `from_i64` produce); it is reduced as soon as it meets an
/// element that knows its prime.
#[derive(Clone, Copy)]
pub struct Fp {
    value: i64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2, "F_p needs a prime modulus");
        Fp {
            value: value.rem_euclid(modulus as i64),
            modulus,
        }
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn lift(self, modulus: u64) -> i64 {
        if modulus == 0 {
            self.value
        } else {
            self.value.rem_euclid(modulus as i64)
        }
    }

    fn binop(&self, other: &Self, op: impl Fn(i128, i128) -> i128) -> Self {
        let m = self.modulus.max(other.modulus);
        let a = self.lift(m) as i128;
        let b = other.lift(m) as i128;
        let v = op(a, b);
        if m == 0 {
            Fp {
                value: v as i64,
                modulus: 0,
            }
        } else {
            Fp {
                value: v.rem_euclid(m as i128) as i64,
                modulus: m,
            }
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let m = self.modulus.max(other.modulus);
        self.lift(m) == other.lift(m)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp { value: 0, modulus: 0 }
    }
    fn one() -> Self {
        Fp { value: 1, modulus: 0 }
    }
    fn from_i64(v: i64) -> Self {
        Fp { value: v, modulus: 0 }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.binop(other, |a, b| a + b)
    }
    fn sub(&self, other: &Self) -> Self {
        self.binop(other, |a, b| a - b)
    }
    fn mul(&self, other: &Self) -> Self {
        self.binop(other, |a, b| a * b)
    }
    fn neg(&self) -> Self {
        Fp::zero().sub(self)
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        if self.modulus == 0 {
            return match self.value {
                1 | -1 => Some(*self),
                _ => None,
            };
        }
        // Fermat: a^(p-2)
        let p = self.modulus as u128;
        let mut base = self.value as u128 % p;
        let mut e = p - 2;
        let mut acc = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Some(Fp {
            value: acc as i64,
            modulus: self.modulus,
        })
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
    fn from_json(v: &serde_json::Value) -> Option<Self> {
        let s = v.as_str()?;
        match s.split_once(" mod ") {
            Some((a, m)) => Some(Fp::new(a.parse().ok()?, m.parse().ok()?)),
            None => Some(Fp::from_i64(s.parse().ok()?)),
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} mod {}", self.value, self.modulus)
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
