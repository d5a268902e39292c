//! Exact scalar fields.
//!
//! Every coefficient in the library lives in a type implementing [`Field`].
//! There is no floating point anywhere: equality is decidable and canonical.

mod cyclotomic;
mod poly;
mod prime;
mod rational;
mod ratfunc;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use poly::Poly;
pub use prime::Fp;
pub use ratfunc::RatFunc;
pub use rational::Rational;

use std::fmt;

/// A commutative field with exact arithmetic.
///
/// `zero()` and `one()` are context-free constants. Types whose elements carry
/// a runtime modulus (residue fields, cyclotomic fields) treat those constants
/// as living in every instance of the family and adopt the context of the other
/// operand on first contact.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` exactly for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Lossless serialization used by result files and the on-disk cache.
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Option<Self>;
}
