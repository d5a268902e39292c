//! A computation context for one `(n, r, m, modular system)` tuple.
//!
//! Owns the Ariki-Koike algebra over `K`, its Murphy basis, and memoised
//! Gram blocks, profiles and simple characters. Results are immutable once
//! published; the caches are safe to share between threads.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::hecke::{AlgebraElement, HeckeAlgebra, MurphyBasis, MurphyTransition};
use crate::jantzen::JantzenProfile;
use crate::matrix::{Echelon, Matrix};
use crate::modular::ModularSystem;
use crate::multipartition::{enumerate_lambda, enumerate_lambda_plus, Multicomposition, Multipartition};
use crate::schur::{Character, WeylGram};

/// Tag for the defining relations; part of every cache key.
pub const CONVENTION_TAG: &str = "T_w L^c; (T-q)(T+1); L_{i+1}=q^-1 T_i L_i T_i; murphy u+ x";

#[derive(Debug)]
pub(crate) struct Memo<Key, V> {
    map: Mutex<HashMap<Key, Arc<V>>>,
}

impl<Key: Eq + Hash + Clone, V> Memo<Key, V> {
    pub(crate) fn new() -> Self {
        Memo {
            map: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn get_or_try(&self, key: &Key, f: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        if let Some(v) = self.map.lock().expect("memo poisoned").get(key) {
            return Ok(v.clone());
        }
        let v = Arc::new(f()?);
        Ok(self
            .map
            .lock()
            .expect("memo poisoned")
            .entry(key.clone())
            .or_insert(v)
            .clone())
    }
}

#[derive(Debug)]
pub struct Engine<M: ModularSystem> {
    n: usize,
    bounds: Vec<usize>,
    ms: M,
    alg: HeckeAlgebra<M::K>,
    murphy: OnceLock<MurphyBasis<M::K>>,
    lambda: Vec<Multicomposition>,
    lambda_plus: Vec<Multipartition>,
    pub(crate) weyl: Memo<Multicomposition, WeylGram<M::K>>,
    pub(crate) weight_solvers: Memo<Multicomposition, Echelon<M::K>>,
    pub(crate) specht: Memo<Multicomposition, Matrix<M::K>>,
    pub(crate) profiles: Memo<Multicomposition, JantzenProfile>,
    pub(crate) simple: Memo<Multicomposition, Character>,
}

impl<M: ModularSystem> Engine<M> {
    /// `bounds[k]` caps the number of rows of component `k`.
    pub fn new(n: usize, bounds: &[usize], ms: M) -> Result<Self> {
        if bounds.len() != ms.r() {
            return Err(Error::Config(format!(
                "{} row bounds given for {} parameters",
                bounds.len(),
                ms.r()
            )));
        }
        let alg = HeckeAlgebra::new(n, ms.qhat().clone(), ms.big_qhat().to_vec())?;
        Ok(Engine {
            n,
            bounds: bounds.to_vec(),
            lambda: enumerate_lambda(n, bounds),
            lambda_plus: enumerate_lambda_plus(n, bounds),
            ms,
            alg,
            murphy: OnceLock::new(),
            weyl: Memo::new(),
            weight_solvers: Memo::new(),
            specht: Memo::new(),
            profiles: Memo::new(),
            simple: Memo::new(),
        })
    }

    /// Like [`Engine::new`] with `m_k = n` for every component.
    pub fn with_default_bounds(n: usize, ms: M) -> Result<Self> {
        let bounds = vec![n; ms.r()];
        Self::new(n, &bounds, ms)
    }

    /// Installs a previously computed Murphy transition instead of recomputing it.
    pub fn install_transition(&self, t: MurphyTransition<M::K>) -> Result<()> {
        let basis = MurphyBasis::from_transition(&self.alg, t)?;
        let _ = self.murphy.set(basis);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn modular_system(&self) -> &M {
        &self.ms
    }

    pub fn algebra(&self) -> &HeckeAlgebra<M::K> {
        &self.alg
    }

    pub fn murphy(&self) -> Result<&MurphyBasis<M::K>> {
        if let Some(b) = self.murphy.get() {
            return Ok(b);
        }
        let b = MurphyBasis::compute(&self.alg)?;
        let _ = self.murphy.set(b);
        Ok(self.murphy.get().expect("just set"))
    }

    /// `Λ`, dominant first.
    pub fn lambda(&self) -> &[Multicomposition] {
        &self.lambda
    }

    /// `Λ⁺`, in the same order as `Λ`.
    pub fn lambda_plus(&self) -> &[Multipartition] {
        &self.lambda_plus
    }

    /// `ω = (∅, …, ∅, (1^n))` if it lies in `Λ`.
    pub fn omega(&self) -> Option<Multipartition> {
        Multipartition::omega(self.n, &self.bounds).ok()
    }

    /// Re-pads `μ` to this engine's row bounds.
    pub fn normalize(&self, mu: &Multicomposition) -> Result<Multicomposition> {
        if mu.size() != self.n || mu.r() != self.r() {
            return Err(Error::ShapeMismatch(format!(
                "{mu} is not an {}-multicomposition of {}",
                self.r(),
                self.n
            )));
        }
        let comps = mu
            .components()
            .iter()
            .map(|c| {
                let p = c.parts();
                let len = p.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
                p[..len].to_vec()
            })
            .collect();
        Multicomposition::new(comps, &self.bounds)
    }

    pub fn normalize_partition(&self, lambda: &Multicomposition) -> Result<Multipartition> {
        Multipartition::try_from(self.normalize(lambda)?)
    }

    pub(crate) fn require_partition(&self, lambda: &Multicomposition) -> Result<Multipartition> {
        let l = self.normalize_partition(lambda)?;
        if !self.lambda_plus.contains(&l) {
            return Err(Error::ShapeMismatch(format!("{l} is not in Λ⁺ for bounds {:?}", self.bounds)));
        }
        Ok(l)
    }

    /// The Specht module Gram matrix, rows and columns in [`crate::tableau::enumerate_std`] order.
    pub fn specht_gram(&self, lambda: &Multicomposition) -> Result<Arc<Matrix<M::K>>> {
        let l = self.normalize_partition(lambda)?;
        self.specht
            .get_or_try(&l.clone().into_inner(), || self.murphy()?.specht_gram(&self.alg, &l))
    }

    /// Solves `m_μ h = target` in `H`; `None` if `target ∉ m_μ H`.
    pub(crate) fn divide_by_weight(
        &self,
        mu: &Multicomposition,
        target: &AlgebraElement<M::K>,
    ) -> Result<Option<AlgebraElement<M::K>>> {
        let solver = self.weight_solvers.get_or_try(mu, || {
            let m = crate::hecke::murphy_weight_element(&self.alg, mu)?;
            let dim = self.alg.dim();
            let mut a = Matrix::zeros(dim, dim);
            for j in 0..dim {
                let col = self.alg.multiply(&m, &AlgebraElement::basis(j as u32));
                for (i, c) in col.terms() {
                    a.set(i as usize, j, c.clone());
                }
            }
            Ok(Echelon::new(a))
        })?;
        Ok(solver
            .solve(&target.to_dense(self.alg.dim()))
            .map(|h| AlgebraElement::from_dense(&h)))
    }
}
