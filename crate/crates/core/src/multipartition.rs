//! Multicompositions, multipartitions, dominance, and parameter splittings.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A composition: a finite sequence of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Index of the last nonzero part, plus one.
    pub fn length(&self) -> usize {
        self.parts.iter().rposition(|&p| p != 0).map_or(0, |i| i + 1)
    }

    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }
}

/// An `r`-tuple of compositions, component `k` padded with zeros to length `m_k`.
///
/// The padding lengths are part of the value, so two multicompositions are
/// comparable exactly when they live in the same weight set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multicomposition {
    components: Vec<Composition>,
}

impl Multicomposition {
    /// Builds from unpadded components, padding component `k` to `bounds[k]`.
    pub fn new(components: Vec<Vec<usize>>, bounds: &[usize]) -> Result<Self> {
        if components.len() != bounds.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} components for a bound vector of length {}",
                components.len(),
                bounds.len()
            )));
        }
        let mut out = Vec::with_capacity(components.len());
        for (k, (mut c, &m)) in components.into_iter().zip(bounds).enumerate() {
            while c.last() == Some(&0) {
                c.pop();
            }
            if c.len() > m {
                return Err(Error::ShapeMismatch(format!(
                    "component {} has length {} > bound {}",
                    k + 1,
                    c.len(),
                    m
                )));
            }
            c.resize(m, 0);
            out.push(Composition::new(c));
        }
        Ok(Multicomposition { components: out })
    }

    /// The multicomposition with every component empty.
    pub fn empty(bounds: &[usize]) -> Self {
        Multicomposition {
            components: bounds.iter().map(|&m| Composition::new(vec![0; m])).collect(),
        }
    }

    fn from_padded(components: Vec<Composition>) -> Self {
        Multicomposition { components }
    }

    /// Parses the canonical text form, e.g. `2,1|1` for `((2,1),(1))`.
    pub fn parse(s: &str, bounds: &[usize]) -> Result<Self> {
        let comps: Vec<&str> = s.trim().split('|').collect();
        let mut parsed = Vec::with_capacity(comps.len());
        for c in comps {
            let c = c.trim();
            if c.is_empty() || c == "-" {
                parsed.push(Vec::new());
                continue;
            }
            let parts = c
                .split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{p:?} in {s:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            parsed.push(parts);
        }
        Multicomposition::new(parsed, bounds)
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn bounds(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.parts.len()).collect()
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(Composition::size).sum()
    }

    pub fn component(&self, k: usize) -> &[usize] {
        &self.components[k].parts
    }

    pub fn components(&self) -> &[Composition] {
        &self.components
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(Composition::size).collect()
    }

    pub fn is_multipartition(&self) -> bool {
        self.components.iter().all(Composition::is_partition)
    }

    /// The padded part vector, components concatenated in order.
    pub fn flat(&self) -> Vec<usize> {
        self.components.iter().flat_map(|c| c.parts.iter().copied()).collect()
    }

    /// Number of nodes in row `i` of component `k` (zero-based).
    pub fn row_len(&self, k: usize, i: usize) -> usize {
        self.components[k].parts.get(i).copied().unwrap_or(0)
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.bounds() != other.bounds() || self.size() != other.size() {
            return Err(Error::ShapeMismatch(format!(
                "{self} (bounds {:?}, size {}) vs {other} (bounds {:?}, size {})",
                self.bounds(),
                self.size(),
                other.bounds(),
                other.size()
            )));
        }
        Ok(())
    }

    /// `self ⊵ other`, assuming both live in the same weight set.
    pub fn dominates(&self, other: &Self) -> bool {
        let a = self.flat();
        let b = other.flat();
        let (mut sa, mut sb) = (0usize, 0usize);
        for (x, y) in a.iter().zip(&b) {
            sa += x;
            sb += y;
            if sa < sb {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Multicomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            let len = c.length();
            for (i, p) in c.parts[..len].iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Multicomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A multicomposition whose components are all partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Multipartition(Multicomposition);

impl Multipartition {
    pub fn new(components: Vec<Vec<usize>>, bounds: &[usize]) -> Result<Self> {
        Multicomposition::new(components, bounds)?.try_into()
    }

    pub fn parse(s: &str, bounds: &[usize]) -> Result<Self> {
        Multicomposition::parse(s, bounds)?.try_into()
    }

    /// `ω = (∅, ..., ∅, (1^n))`; needs `m_r >= n`.
    pub fn omega(n: usize, bounds: &[usize]) -> Result<Self> {
        let mut comps = vec![Vec::new(); bounds.len()];
        if let Some(last) = comps.last_mut() {
            *last = vec![1; n];
        }
        Multipartition::new(comps, bounds)
    }

    pub fn as_multicomposition(&self) -> &Multicomposition {
        &self.0
    }

    pub fn into_inner(self) -> Multicomposition {
        self.0
    }
}

impl TryFrom<Multicomposition> for Multipartition {
    type Error = Error;

    fn try_from(mu: Multicomposition) -> Result<Self> {
        if mu.is_multipartition() {
            Ok(Multipartition(mu))
        } else {
            Err(Error::ShapeMismatch(format!("{mu} is not a multipartition")))
        }
    }
}

impl Deref for Multipartition {
    type Target = Multicomposition;

    fn deref(&self) -> &Multicomposition {
        &self.0
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Result of comparing two multicompositions in the dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Greater,
    Less,
    Equal,
    Incomparable,
}

pub fn dominance_cmp(mu: &Multicomposition, nu: &Multicomposition) -> Result<Dominance> {
    mu.same_space(nu)?;
    if mu == nu {
        return Ok(Dominance::Equal);
    }
    Ok(match (mu.dominates(nu), nu.dominates(mu)) {
        (true, _) => Dominance::Greater,
        (_, true) => Dominance::Less,
        _ => Dominance::Incomparable,
    })
}

/// All `μ` with `|μ| = n` and component `k` of length at most `m_k`, in
/// descending lexicographic order of the padded part vector (dominant first).
pub fn enumerate_lambda(n: usize, bounds: &[usize]) -> Vec<Multicomposition> {
    let slots: usize = bounds.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(slots);
    fill_slots(n, slots, &mut cur, &mut |flat| {
        out.push(unflatten(flat, bounds));
    });
    out
}

fn fill_slots(remaining: usize, slots: usize, cur: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if cur.len() == slots {
        if remaining == 0 {
            emit(cur);
        }
        return;
    }
    if cur.len() + 1 == slots {
        cur.push(remaining);
        emit(cur);
        cur.pop();
        return;
    }
    for v in (0..=remaining).rev() {
        cur.push(v);
        fill_slots(remaining - v, slots, cur, emit);
        cur.pop();
    }
}

fn unflatten(flat: &[usize], bounds: &[usize]) -> Multicomposition {
    let mut comps = Vec::with_capacity(bounds.len());
    let mut pos = 0;
    for &m in bounds {
        comps.push(Composition::new(flat[pos..pos + m].to_vec()));
        pos += m;
    }
    Multicomposition::from_padded(comps)
}

/// The multipartitions among [`enumerate_lambda`], in the same order.
pub fn enumerate_lambda_plus(n: usize, bounds: &[usize]) -> Vec<Multipartition> {
    enumerate_lambda(n, bounds)
        .into_iter()
        .filter(Multicomposition::is_multipartition)
        .map(Multipartition)
        .collect()
}

/// A splitting `r = r_1 + ... + r_g` of the parameter slots into consecutive blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PSplit {
    r_parts: Vec<usize>,
}

impl PSplit {
    pub fn new(r_parts: Vec<usize>) -> Result<Self> {
        if r_parts.is_empty() || r_parts.contains(&0) {
            return Err(Error::SplitMismatch(format!("invalid split {r_parts:?}")));
        }
        Ok(PSplit { r_parts })
    }

    /// The trivial split `p = (r)`.
    pub fn trivial(r: usize) -> Self {
        PSplit { r_parts: vec![r] }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("split {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        PSplit::new(parts)
    }

    pub fn g(&self) -> usize {
        self.r_parts.len()
    }

    pub fn r(&self) -> usize {
        self.r_parts.iter().sum()
    }

    pub fn r_parts(&self) -> &[usize] {
        &self.r_parts
    }

    /// `p_k = r_1 + ... + r_{k-1}` (zero-based `k`).
    pub fn offsets(&self) -> Vec<usize> {
        self.r_parts
            .iter()
            .scan(0, |acc, &r| {
                let o = *acc;
                *acc += r;
                Some(o)
            })
            .collect()
    }

    fn check(&self, mu: &Multicomposition) -> Result<()> {
        if self.r() != mu.r() {
            return Err(Error::SplitMismatch(format!(
                "split {:?} sums to {} but {mu} has {} components",
                self.r_parts,
                self.r(),
                mu.r()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.r_parts.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// The block sizes `n_k` of a multicomposition under a split, with prefix sums `a_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlphaVector {
    pub n_parts: Vec<usize>,
    pub a_parts: Vec<usize>,
}

impl AlphaVector {
    pub fn from_sizes(n_parts: Vec<usize>) -> Self {
        let a_parts = n_parts
            .iter()
            .scan(0, |acc, &n| {
                let a = *acc;
                *acc += n;
                Some(a)
            })
            .collect();
        AlphaVector { n_parts, a_parts }
    }

    pub fn total(&self) -> usize {
        self.n_parts.iter().sum()
    }

    /// Every `(n_1, ..., n_g)` of non-negative integers summing to `n`.
    pub fn all(n: usize, g: usize) -> Vec<AlphaVector> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(g);
        if g > 0 {
            fill_slots(n, g, &mut cur, &mut |v| out.push(AlphaVector::from_sizes(v.to_vec())));
        }
        out
    }
}

pub fn alpha_p(mu: &Multicomposition, p: &PSplit) -> Result<AlphaVector> {
    p.check(mu)?;
    let sizes = mu.component_sizes();
    let n_parts = p
        .offsets()
        .iter()
        .zip(p.r_parts())
        .map(|(&o, &r)| sizes[o..o + r].iter().sum())
        .collect();
    Ok(AlphaVector::from_sizes(n_parts))
}

/// Slices `λ` into `(λ^[1], ..., λ^[g])`, each keeping its own bound vector.
pub fn split(lambda: &Multicomposition, p: &PSplit) -> Result<Vec<Multicomposition>> {
    p.check(lambda)?;
    Ok(p.offsets()
        .iter()
        .zip(p.r_parts())
        .map(|(&o, &r)| Multicomposition::from_padded(lambda.components[o..o + r].to_vec()))
        .collect())
}

/// Inverse of [`split`].
pub fn concat(pieces: &[Multicomposition]) -> Multicomposition {
    Multicomposition::from_padded(pieces.iter().flat_map(|m| m.components.iter().cloned()).collect())
}

impl PartialOrd<Multipartition> for Multicomposition {
    fn partial_cmp(&self, other: &Multipartition) -> Option<Ordering> {
        self.partial_cmp(&other.0)
    }
}

impl PartialEq<Multipartition> for Multicomposition {
    fn eq(&self, other: &Multipartition) -> bool {
        *self == other.0
    }
}
