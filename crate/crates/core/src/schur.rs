//! Weyl modules of the cyclotomic q-Schur algebra, realised inside `H`.
//!
//! For `T ∈ T_0(λ, μ)` write `m_{T^λ T} = Σ m_{t^λ t}` over the standard `t`
//! of type `T`. The form is read off from
//! `m_{T^λ S} · h_T ≡ ⟨φ_S, φ_T⟩ m_{t^λ t^λ}` where `m_μ h_T = m_{T T^λ}`,
//! which is the composite `φ_{T^λ S} ∘ φ_{T T^λ}` evaluated on `m_λ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hecke::{AlgebraElement, MurphyLabel};
use crate::matrix::Matrix;
use crate::modular::{rank_over_f, ModularSystem};
use crate::multipartition::{Multicomposition, Multipartition};
use crate::tableau::{enumerate_std, ssyt_classes, SemistandardTableau};

/// The Gram form of `W^λ` restricted to the `μ`-weight space.
#[derive(Clone, Debug)]
pub struct WeylBlock<K: Field> {
    pub weight: Multicomposition,
    pub tableaux: Vec<SemistandardTableau>,
    pub gram: Matrix<K>,
}

/// The Gram form of `W^λ`, one block per weight with `T_0(λ, μ)` nonempty, in `Λ` order.
#[derive(Clone, Debug)]
pub struct WeylGram<K: Field> {
    pub lambda: Multipartition,
    pub blocks: Vec<WeylBlock<K>>,
}

impl<K: Field> WeylGram<K> {
    pub fn block(&self, mu: &Multicomposition) -> Option<&WeylBlock<K>> {
        self.blocks.iter().find(|b| &b.weight == mu)
    }
}

/// Weight-space dimensions of a module; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Character(BTreeMap<Multicomposition, usize>);

impl Character {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, mu: &Multicomposition) -> usize {
        self.0.get(mu).copied().unwrap_or(0)
    }

    pub fn set(&mut self, mu: Multicomposition, v: usize) {
        if v == 0 {
            self.0.remove(&mu);
        } else {
            self.0.insert(mu, v);
        }
    }

    pub fn add(&mut self, mu: &Multicomposition, v: usize) {
        let cur = self.get(mu);
        self.set(mu.clone(), cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Support in ascending derived order.
    pub fn iter(&self) -> impl Iterator<Item = (&Multicomposition, usize)> {
        self.0.iter().map(|(m, &v)| (m, v))
    }

    /// The support weight greatest in descending lexicographic order of the
    /// padded part vector; it is maximal for dominance.
    pub fn leading_weight(&self) -> Option<&Multicomposition> {
        self.0.keys().max_by(|a, b| a.flat().cmp(&b.flat()))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(m, v)| format!("({m}):{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl<M: ModularSystem> Engine<M> {
    /// The Gram form of `W^λ`, block by weight.
    pub fn weyl_gram(&self, lambda: &Multicomposition) -> Result<Arc<WeylGram<M::K>>> {
        let l = self.require_partition(lambda)?;
        self.weyl.get_or_try(&l.clone().into_inner(), || self.compute_weyl_gram(&l))
    }

    fn compute_weyl_gram(&self, l: &Multipartition) -> Result<WeylGram<M::K>> {
        let basis = self.murphy()?;
        let alg = self.algebra();
        let shape = basis
            .shape_index(l)
            .ok_or_else(|| Error::Inconsistency(format!("{l} missing from the Murphy basis")))?;
        let std = enumerate_std(l);
        let mut blocks = Vec::new();
        for mu in self.lambda() {
            let classes = ssyt_classes(l, mu, &std);
            if classes.is_empty() {
                continue;
            }
            let sum = |f: &dyn Fn(usize) -> MurphyLabel, members: &[usize]| {
                let mut e = AlgebraElement::zero();
                for &i in members {
                    e.add_scaled(basis.element(f(i)), &M::K::one());
                }
                e
            };
            let lefts: Vec<_> = classes
                .iter()
                .map(|c| sum(&|t| MurphyLabel { shape, s: 0, t }, &c.members))
                .collect();
            let mut hs = Vec::with_capacity(classes.len());
            for c in &classes {
                let target = sum(&|s| MurphyLabel { shape, s, t: 0 }, &c.members);
                let h = self.divide_by_weight(mu, &target)?.ok_or_else(|| {
                    Error::Inconsistency(format!("m_{{T T^λ}} for T = {} is not in m_{mu} H", c.tableau))
                })?;
                hs.push(h);
            }
            let k = classes.len();
            let mut gram = Matrix::zeros(k, k);
            for (si, left) in lefts.iter().enumerate() {
                for (ti, h) in hs.iter().enumerate() {
                    let c = basis.leading_coefficient(shape, &alg.multiply(left, h))?;
                    gram.set(si, ti, c);
                }
            }
            if !gram.is_symmetric() {
                return Err(Error::Inconsistency(format!("Weyl form of {l} at weight {mu} is not symmetric")));
            }
            if mu == l.as_multicomposition() && gram != Matrix::identity(1) {
                return Err(Error::Inconsistency(format!("Weyl form of {l} at its own weight is {gram:?}, not (1)")));
            }
            blocks.push(WeylBlock {
                weight: mu.clone(),
                tableaux: classes.into_iter().map(|c| c.tableau).collect(),
                gram,
            });
        }
        Ok(WeylGram {
            lambda: l.clone(),
            blocks,
        })
    }

    /// `μ ↦ |T_0(λ, μ)|`.
    pub fn char_weyl(&self, lambda: &Multicomposition) -> Result<Character> {
        let l = self.require_partition(lambda)?;
        let std = enumerate_std(&l);
        let mut ch = Character::new();
        for mu in self.lambda() {
            ch.set(mu.clone(), ssyt_classes(&l, mu, &std).len());
        }
        Ok(ch)
    }

    /// `μ ↦ rank over F` of the `μ`-block of the Weyl form: the character of `L^λ`.
    pub fn char_simple(&self, lambda: &Multicomposition) -> Result<Arc<Character>> {
        let l = self.require_partition(lambda)?;
        self.simple.get_or_try(&l.clone().into_inner(), || {
            let g = self.weyl_gram(&l)?;
            let mut ch = Character::new();
            for b in &g.blocks {
                ch.set(b.weight.clone(), rank_over_f(self.modular_system(), &b.gram)?);
            }
            if ch.get(l.as_multicomposition()) != 1 {
                return Err(Error::Inconsistency(format!("L^{l} does not have weight {l} with multiplicity 1")));
            }
            Ok(ch)
        })
    }

    /// Whether the `ω`-weight block of the Weyl form equals the Specht form
    /// entrywise under `Std(λ) ↔ T_0(λ, ω)`. `None` when `ω ∉ Λ`.
    pub fn omega_block_matches_specht(&self, lambda: &Multicomposition) -> Result<Option<bool>> {
        let Some(omega) = self.omega() else {
            return Ok(None);
        };
        let l = self.require_partition(lambda)?;
        let std = enumerate_std(&l);
        let classes = ssyt_classes(&l, &omega, &std);
        if classes.len() != std.len() || classes.iter().enumerate().any(|(i, c)| c.members != [i]) {
            return Err(Error::Inconsistency(format!("the type map Std({l}) -> T_0({l}, ω) is not the identity bijection")));
        }
        let weyl = self.weyl_gram(&l)?;
        let block = weyl
            .block(&omega)
            .ok_or_else(|| Error::Inconsistency(format!("W^{l} has no ω-weight block")))?;
        Ok(Some(block.gram == *self.specht_gram(&l)?))
    }

    /// Writes `ch` as a non-negative combination of simple characters.
    pub fn decompose_character(&self, ch: &Character) -> Result<BTreeMap<Multipartition, usize>> {
        let mut rest: BTreeMap<Multicomposition, i64> = ch.iter().map(|(m, v)| self.normalize(m).map(|m| (m, v as i64))).collect::<Result<_>>()?;
        let mut out = BTreeMap::new();
        loop {
            rest.retain(|_, v| *v != 0);
            if let Some((m, v)) = rest.iter().find(|(_, v)| **v < 0) {
                return Err(Error::Inconsistency(format!("negative multiplicity {v} at weight {m} while decomposing {ch}")));
            }
            let Some(top) = rest.keys().max_by(|a, b| a.flat().cmp(&b.flat())).cloned() else {
                break;
            };
            let nu = Multipartition::try_from(top.clone()).map_err(|_| {
                Error::Inconsistency(format!("leading weight {top} of the residual of {ch} is not a multipartition"))
            })?;
            let c = rest[&top];
            let simple = self.char_simple(&top)?;
            for (mu, d) in simple.iter() {
                *rest.entry(mu.clone()).or_insert(0) -= c * d as i64;
            }
            out.insert(nu, c as usize);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::modular::PLocal;

    fn mc(s: &str, m: &[usize]) -> Multicomposition {
        Multicomposition::parse(s, m).unwrap()
    }

    #[test]
    fn single_box_weyl_gram() {
        let e = Engine::with_default_bounds(1, PLocal::with_ints(2, 1, &[0, 2]).unwrap()).unwrap();
        let g = e.weyl_gram(&mc("1|", &[1, 1])).unwrap();
        assert_eq!(g.blocks.len(), 2);
        assert_eq!(g.block(&mc("1|", &[1, 1])).unwrap().gram, Matrix::identity(1));
        let b = g.block(&mc("|1", &[1, 1])).unwrap();
        assert_eq!(b.gram, Matrix::from_rows(vec![vec![Rational::from_i64(-2)]]));
    }

    #[test]
    fn two_row_weyl_gram() {
        let e = Engine::with_default_bounds(2, PLocal::with_ints(2, 1, &[0]).unwrap()).unwrap();
        let g = e.weyl_gram(&mc("2", &[2])).unwrap();
        let b = g.block(&mc("1,1", &[2])).unwrap();
        assert_eq!(b.gram, Matrix::from_rows(vec![vec![Rational::from_i64(2)]]));
        assert_eq!(g.blocks.len(), 3);
    }

    #[test]
    fn characters() {
        let b = [1, 1];
        let e = Engine::with_default_bounds(1, PLocal::with_ints(2, 1, &[0, 2]).unwrap()).unwrap();
        let w = e.char_weyl(&mc("1|", &b)).unwrap();
        assert_eq!(w.get(&mc("1|", &b)), 1);
        assert_eq!(w.get(&mc("|1", &b)), 1);
        let s = e.char_simple(&mc("1|", &b)).unwrap();
        assert_eq!(s.get(&mc("1|", &b)), 1);
        assert_eq!(s.get(&mc("|1", &b)), 0);
        let d = e.decompose_character(&w).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.values().all(|&c| c == 1));
        assert!(e.decompose_character(&Character::new()).unwrap().is_empty());

        assert_eq!(e.omega_block_matches_specht(&mc("1|", &b)).unwrap(), Some(true));
        let unit = Engine::with_default_bounds(1, PLocal::with_ints(2, 1, &[0, 1]).unwrap()).unwrap();
        let s = unit.char_simple(&mc("1|", &b)).unwrap();
        assert_eq!(s.total(), 2);
    }
}
