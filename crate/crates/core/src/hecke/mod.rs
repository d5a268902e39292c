//! The Ariki-Koike algebra `H_{n,r}` with exact coefficients.
//!
//! Relations: `(T_i - q)(T_i + 1) = 0`, `(T_0 - Q_1)···(T_0 - Q_r) = 0`, the type B
//! braid relations, and Jucys-Murphy elements `L_1 = T_0`, `L_{i+1} = q^{-1} T_i L_i T_i`.
//! Elements are stored in the basis `T_w L_1^{c_1}···L_n^{c_n}` with `0 <= c_i < r`.

mod murphy;

pub use murphy::{murphy_weight_element, MurphyBasis, MurphyLabel, MurphyTransition};

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::tableau::Permutation;

/// Index of a normal-form basis element `T_w L^c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalBasisIndex {
    pub w: Permutation,
    pub c: Vec<usize>,
}

/// A sparse linear combination of normal-form basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<K: Field> {
    terms: BTreeMap<u32, K>,
}

impl<K: Field> Default for AlgebraElement<K> {
    fn default() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }
}

impl<K: Field> AlgebraElement<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(idx: u32) -> Self {
        Self::term(idx, K::one())
    }

    pub fn term(idx: u32, c: K) -> Self {
        let mut e = Self::zero();
        e.add_term(idx, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: u32) -> K {
        self.terms.get(&idx).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &K)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += c · b_idx`
    pub fn add_term(&mut self, idx: u32, c: &K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(v) => {
                let s = v.add(c);
                if s.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(idx, c.clone());
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &Self, c: &K) {
        if c.is_zero() {
            return;
        }
        for (&i, v) in &other.terms {
            self.add_term(i, &v.mul(c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &K::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &K::one().neg());
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Dense coordinate vector of length `dim`.
    pub fn to_dense(&self, dim: usize) -> Vec<K> {
        let mut v = vec![K::zero(); dim];
        for (&i, c) in &self.terms {
            v[i as usize] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[K]) -> Self {
        let mut e = Self::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term(i as u32, c);
        }
        e
    }
}

/// `H_{n,r}` at fixed parameter values in `K`.
#[derive(Debug)]
pub struct HeckeAlgebra<K: Field> {
    n: usize,
    r: usize,
    q: K,
    q_inv: K,
    q_minus_one: K,
    big_q: Vec<K>,
    /// `L_1^r = Σ_k cyclotomic[k] L_1^k`.
    cyclotomic: Vec<K>,
    perms: Vec<Permutation>,
    perm_index: HashMap<Permutation, usize>,
    /// `right_gen[w][j-1] = (index of w s_j, whether the length goes up)`.
    right_gen: Vec<Vec<(usize, bool)>>,
    words: Vec<Vec<usize>>,
    r_pow_n: usize,
    star_cache: OnceLock<Vec<AlgebraElement<K>>>,
}

impl<K: Field> HeckeAlgebra<K> {
    pub fn new(n: usize, q: K, big_q: Vec<K>) -> Result<Self> {
        let r = big_q.len();
        if r == 0 {
            return Err(Error::Config("the cyclotomic relation needs at least one parameter".into()));
        }
        let q_inv = q.inv().ok_or_else(|| Error::Config("q must be invertible".into()))?;
        // ∏ (x - Q_k), ascending coefficients
        let mut poly = vec![K::one()];
        for qk in &big_q {
            let mut next = vec![K::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&c.mul(qk));
            }
            poly = next;
        }
        let cyclotomic = poly[..r].iter().map(K::neg).collect();
        let perms = Permutation::all(n);
        let perm_index: HashMap<Permutation, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let right_gen = perms
            .iter()
            .map(|w| {
                (1..n)
                    .map(|j| (perm_index[&w.mul_generator(j)], w.generator_lengthens(j)))
                    .collect()
            })
            .collect();
        let words = perms.iter().map(Permutation::reduced_word).collect();
        Ok(HeckeAlgebra {
            n,
            r,
            q_minus_one: q.sub(&K::one()),
            q,
            q_inv,
            big_q,
            cyclotomic,
            perms,
            perm_index,
            right_gen,
            words,
            r_pow_n: r.pow(n as u32),
            star_cache: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> &K {
        &self.q
    }

    pub fn big_q(&self) -> &[K] {
        &self.big_q
    }

    /// `r^n · n!`
    pub fn dim(&self) -> usize {
        self.perms.len() * self.r_pow_n
    }

    pub fn index_of(&self, b: &NormalBasisIndex) -> u32 {
        let w = self.perm_index[&b.w];
        (w * self.r_pow_n + self.encode(&b.c)) as u32
    }

    pub fn decode_index(&self, idx: u32) -> NormalBasisIndex {
        let (w, c) = self.split(idx);
        NormalBasisIndex {
            w: self.perms[w].clone(),
            c,
        }
    }

    fn encode(&self, c: &[usize]) -> usize {
        c.iter().rev().fold(0, |acc, &e| acc * self.r + e)
    }

    fn split(&self, idx: u32) -> (usize, Vec<usize>) {
        let idx = idx as usize;
        let w = idx / self.r_pow_n;
        let mut code = idx % self.r_pow_n;
        let mut c = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            c.push(code % self.r);
            code /= self.r;
        }
        (w, c)
    }

    fn join(&self, w: usize, c: &[usize]) -> u32 {
        (w * self.r_pow_n + self.encode(c)) as u32
    }

    pub fn one(&self) -> AlgebraElement<K> {
        AlgebraElement::basis(self.join(0, &vec![0; self.n]))
    }

    pub fn scalar(&self, c: K) -> AlgebraElement<K> {
        self.one().scale(&c)
    }

    /// The generator `T_i`; `i = 0` gives `T_0 = L_1`.
    pub fn generator(&self, i: usize) -> Result<AlgebraElement<K>> {
        if i >= self.n.max(1) || (i == 0 && self.n == 0) {
            return Err(Error::ShapeMismatch(format!("no generator T_{i} in H_{}", self.n)));
        }
        Ok(if i == 0 { self.mul_l(&self.one(), 1) } else { self.mul_t(&self.one(), i) })
    }

    /// The Jucys-Murphy element `L_j`, `1 <= j <= n`.
    pub fn jucys_murphy(&self, j: usize) -> AlgebraElement<K> {
        self.mul_l(&self.one(), j)
    }

    /// `T_w` for a permutation of `n` letters.
    pub fn t_w(&self, w: &Permutation) -> AlgebraElement<K> {
        AlgebraElement::basis(self.join(self.perm_index[w], &vec![0; self.n]))
    }

    /// Right multiplication by `T_j`, `1 <= j < n`.
    pub fn mul_t(&self, a: &AlgebraElement<K>, j: usize) -> AlgebraElement<K> {
        assert!(j >= 1 && j < self.n, "T_{j} out of range");
        let mut out = AlgebraElement::zero();
        for (idx, coeff) in a.terms() {
            let (w, c) = self.split(idx);
            let mut cs = c.clone();
            cs.swap(j - 1, j);
            let (ws, up) = self.right_gen[w][j - 1];
            if up {
                out.add_term(self.join(ws, &cs), coeff);
            } else {
                out.add_term(self.join(w, &cs), &coeff.mul(&self.q_minus_one));
                out.add_term(self.join(ws, &cs), &coeff.mul(&self.q));
            }
            let (x, y) = (c[j - 1], c[j]);
            if x != y {
                let (lo, hi, sign) = if x > y { (y, x, coeff.neg()) } else { (x, y, coeff.clone()) };
                let f = sign.mul(&self.q_minus_one);
                let mut cd = c.clone();
                for t in 0..hi - lo {
                    cd[j - 1] = lo + t;
                    cd[j] = hi - t;
                    out.add_term(self.join(w, &cd), &f);
                }
            }
        }
        out
    }

    /// Right multiplication by `L_j`, `1 <= j <= n`.
    pub fn mul_l(&self, a: &AlgebraElement<K>, j: usize) -> AlgebraElement<K> {
        assert!(j >= 1 && j <= self.n, "L_{j} out of range");
        let mut out = AlgebraElement::zero();
        let mut overflow = AlgebraElement::zero();
        for (idx, coeff) in a.terms() {
            let (w, mut c) = self.split(idx);
            if c[j - 1] + 1 < self.r {
                c[j - 1] += 1;
                out.add_term(self.join(w, &c), coeff);
            } else if j == 1 {
                for (k, ck) in self.cyclotomic.iter().enumerate() {
                    c[0] = k;
                    out.add_term(self.join(w, &c), &coeff.mul(ck));
                }
            } else {
                overflow.add_term(idx, coeff);
            }
        }
        if !overflow.is_zero() {
            // x L_j = q^{-1} ((x T_{j-1}) L_{j-1}) T_{j-1}
            let y = self.mul_t(&self.mul_l(&self.mul_t(&overflow, j - 1), j - 1), j - 1);
            out.add_scaled(&y, &self.q_inv);
        }
        out
    }

    /// `a · T_w` via a reduced word.
    pub fn mul_tw(&self, a: &AlgebraElement<K>, w: &Permutation) -> AlgebraElement<K> {
        self.words[self.perm_index[w]].iter().fold(a.clone(), |acc, &j| self.mul_t(&acc, j))
    }

    fn mul_word_index(&self, a: &AlgebraElement<K>, w: usize) -> AlgebraElement<K> {
        self.words[w].iter().fold(a.clone(), |acc, &j| self.mul_t(&acc, j))
    }

    fn mul_l_monomial(&self, a: &AlgebraElement<K>, c: &[usize]) -> AlgebraElement<K> {
        let mut acc = a.clone();
        for (j, &e) in c.iter().enumerate() {
            for _ in 0..e {
                acc = self.mul_l(&acc, j + 1);
            }
        }
        acc
    }

    pub fn multiply(&self, a: &AlgebraElement<K>, b: &AlgebraElement<K>) -> AlgebraElement<K> {
        let mut by_w: BTreeMap<usize, Vec<(Vec<usize>, &K)>> = BTreeMap::new();
        for (idx, coeff) in b.terms() {
            let (w, c) = self.split(idx);
            by_w.entry(w).or_default().push((c, coeff));
        }
        let mut out = AlgebraElement::zero();
        for (w, group) in by_w {
            let aw = self.mul_word_index(a, w);
            for (c, coeff) in group {
                out.add_scaled(&self.mul_l_monomial(&aw, &c), coeff);
            }
        }
        out
    }

    /// The anti-automorphism fixing every `T_i`.
    pub fn star(&self, a: &AlgebraElement<K>) -> AlgebraElement<K> {
        let cache = self.star_cache.get_or_init(|| {
            (0..self.dim() as u32)
                .map(|idx| {
                    let (w, c) = self.split(idx);
                    let lc = self.mul_l_monomial(&self.one(), &c);
                    self.mul_tw(&lc, &self.perms[w].inverse())
                })
                .collect()
        });
        let mut out = AlgebraElement::zero();
        for (idx, coeff) in a.terms() {
            out.add_scaled(&cache[idx as usize], coeff);
        }
        out
    }
}
