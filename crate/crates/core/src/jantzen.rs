//! Jantzen filtrations of Weyl and Specht modules and v-decomposition numbers.
//!
//! Layer `i` of `W^λ` has, at weight `μ`, dimension equal to the number of
//! elementary divisors of the `μ`-block with valuation exactly `i`. With `M`
//! the largest finite valuation over all blocks the filtration is cut at
//! `k = M + 1`: `W^λ(k)` keeps the divisors of infinite valuation and
//! `W^λ(k + 1) = 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::modular::{elementary_divisor_valuations, rank_over_f, ModularSystem, ValuationProfile};
use crate::multipartition::{Multicomposition, Multipartition};
use crate::schur::Character;

/// Elementary-divisor valuations of every weight block of a Weyl form.
#[derive(Clone, Debug, Serialize)]
pub struct JantzenProfile {
    pub lambda: Multipartition,
    pub blocks: Vec<(Multicomposition, ValuationProfile)>,
    /// `W^λ(cut + 1) = 0`.
    pub cut: usize,
    /// Some block is singular over `K`.
    pub k_fiber_singular: bool,
}

impl JantzenProfile {
    pub fn block(&self, mu: &Multicomposition) -> Option<&ValuationProfile> {
        self.blocks.iter().find(|(m, _)| m == mu).map(|(_, p)| p)
    }

    /// Number of divisors assigned to layer `i` in a profile under this cut.
    pub fn layer_count(&self, p: &ValuationProfile, i: usize) -> usize {
        layer_count(p, self.cut, i)
    }
}

fn layer_count(p: &ValuationProfile, cut: usize, i: usize) -> usize {
    match i.cmp(&cut) {
        std::cmp::Ordering::Less => p.count_eq(i as i64),
        std::cmp::Ordering::Equal => p.infinite_count(),
        std::cmp::Ordering::Greater => 0,
    }
}

/// `Σ_i c_i v^i` with non-negative integer coefficients, trailing zeros stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VPolynomial(Vec<u64>);

impl VPolynomial {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        VPolynomial(coeffs)
    }

    pub fn zero() -> Self {
        VPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        VPolynomial(vec![1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn eval_one(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `1 + v^2` style; `0` for the zero polynomial.
    pub fn to_text(&self) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "v".into(),
                (1, c) => format!("{c}v"),
                (i, 1) => format!("v^{i}"),
                (i, c) => format!("{c}v^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl fmt::Display for VPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for VPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<M: ModularSystem> Engine<M> {
    pub fn jantzen_profile(&self, lambda: &Multicomposition) -> Result<std::sync::Arc<JantzenProfile>> {
        let l = self.require_partition(lambda)?;
        self.profiles.get_or_try(&l.clone().into_inner(), || {
            let g = self.weyl_gram(&l)?;
            let blocks = g
                .blocks
                .iter()
                .map(|b| Ok((b.weight.clone(), elementary_divisor_valuations(self.modular_system(), &b.gram)?)))
                .collect::<Result<Vec<_>>>()?;
            let max = blocks.iter().filter_map(|(_, p)| p.max_finite()).max().unwrap_or(0);
            let singular = blocks.iter().any(|(_, p)| p.infinite_count() > 0);
            Ok(JantzenProfile {
                lambda: l.clone(),
                blocks,
                cut: max as usize + 1,
                k_fiber_singular: singular,
            })
        })
    }

    /// Weight-space dimensions of `W^λ(i) / W^λ(i+1)`.
    pub fn layer_character(&self, lambda: &Multicomposition, i: usize) -> Result<Character> {
        let prof = self.jantzen_profile(lambda)?;
        let mut ch = Character::new();
        for (mu, p) in &prof.blocks {
            ch.set(mu.clone(), prof.layer_count(p, i));
        }
        Ok(ch)
    }

    /// `d_{λμ}(v)` for every `μ ∈ Λ⁺`, by decomposing each layer.
    pub fn v_decomp_row(&self, lambda: &Multicomposition) -> Result<BTreeMap<Multipartition, VPolynomial>> {
        let prof = self.jantzen_profile(lambda)?;
        let mut coeffs: BTreeMap<Multipartition, Vec<u64>> = BTreeMap::new();
        for i in 0..=prof.cut {
            let layer = self.layer_character(lambda, i)?;
            for (nu, c) in self.decompose_character(&layer)? {
                let v = coeffs.entry(nu).or_default();
                v.resize(v.len().max(i + 1), 0);
                v[i] += c as u64;
            }
        }
        Ok(self
            .lambda_plus()
            .iter()
            .map(|mu| (mu.clone(), VPolynomial::new(coeffs.remove(mu).unwrap_or_default())))
            .collect())
    }

    pub fn v_decomp(&self, lambda: &Multicomposition, mu: &Multicomposition) -> Result<VPolynomial> {
        let m = self.require_partition(mu)?;
        Ok(self.v_decomp_row(lambda)?.remove(&m).unwrap_or_default())
    }

    /// Rows and columns in `Λ⁺` order.
    pub fn v_decomp_matrix(&self) -> Result<Vec<Vec<VPolynomial>>> {
        self.lambda_plus()
            .iter()
            .map(|l| {
                let row = self.v_decomp_row(l)?;
                Ok(self.lambda_plus().iter().map(|m| row[m].clone()).collect())
            })
            .collect()
    }

    /// Elementary-divisor valuations of the Specht form, checked against the
    /// `ω`-weight block of the Weyl form when `ω ∈ Λ`.
    pub fn specht_jantzen_valuations(&self, lambda: &Multicomposition) -> Result<ValuationProfile> {
        let l = self.require_partition(lambda)?;
        let prof = elementary_divisor_valuations(self.modular_system(), &*self.specht_gram(&l)?)?;
        if let Some(omega) = self.omega() {
            let weyl = self.jantzen_profile(&l)?;
            let block = weyl.block(&omega).cloned().unwrap_or_else(|| ValuationProfile::new(Vec::new()));
            if block != prof {
                return Err(Error::Inconsistency(format!(
                    "Specht profile {prof} of {l} differs from its ω-weight Weyl profile {block}"
                )));
            }
        }
        Ok(prof)
    }

    /// `dim D^μ`, the rank over `F` of the Specht form.
    pub fn dim_simple_hecke(&self, mu: &Multicomposition) -> Result<usize> {
        rank_over_f(self.modular_system(), &*self.specht_gram(mu)?)
    }

    pub fn is_d_nonzero(&self, mu: &Multicomposition) -> Result<bool> {
        Ok(self.dim_simple_hecke(mu)? > 0)
    }

    /// `d^H_{λμ}(v)`, transferred from the Schur side and checked against the
    /// Specht filtration layer by layer.
    pub fn v_decomp_hecke(&self, lambda: &Multicomposition, mu: &Multicomposition) -> Result<VPolynomial> {
        let m = self.require_partition(mu)?;
        if self.omega().is_none() {
            return Err(Error::Precondition(format!(
                "the bounds {:?} exclude ω, so the Schur functor is unavailable",
                self.bounds()
            )));
        }
        if !self.is_d_nonzero(&m)? {
            return Err(Error::Precondition(format!("D^{m} = 0")));
        }
        let l = self.require_partition(lambda)?;
        let specht = self.specht_jantzen_valuations(&l)?;
        let prof = self.jantzen_profile(&l)?;
        let row = self.v_decomp_row(&l)?;
        for i in 0..=prof.cut {
            let expected = prof.layer_count(&specht, i) as u64;
            let mut got = 0;
            for (nu, d) in &row {
                let c = d.coeff(i);
                if c > 0 {
                    got += c * self.dim_simple_hecke(nu)? as u64;
                }
            }
            if got != expected {
                return Err(Error::Inconsistency(format!(
                    "layer {i} of S^{l}: dimension {expected}, but the v-decomposition numbers give {got}"
                )));
            }
        }
        Ok(row[&m].clone())
    }
}
