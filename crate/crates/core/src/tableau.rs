//! Standard and semistandard multitableaux, the type map, and permutations.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multipartition::{alpha_p, split, Multicomposition, Multipartition, PSplit};

/// A permutation of `{1..n}` acting on the right: `i·(uv) = (i·u)·v`.
///
/// Stored in one-line form with zero-based values, `one_line[i] = i·w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            one_line: (0..n).collect(),
        }
    }

    /// Zero-based one-line form; panics if not a bijection.
    pub fn from_one_line(one_line: Vec<usize>) -> Self {
        let mut seen = vec![false; one_line.len()];
        for &v in &one_line {
            assert!(v < one_line.len() && !seen[v], "not a permutation: {one_line:?}");
            seen[v] = true;
        }
        Permutation { one_line }
    }

    /// All permutations of `n` letters in lexicographic order of the one-line form.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { one_line: cur.clone() });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    go(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        go(n, &mut cur, &mut used, &mut out);
        out
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Coxeter length (number of inversions).
    pub fn length(&self) -> usize {
        let w = &self.one_line;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&k| w[i] > w[k]).count()).sum()
    }

    fn position_of_value(&self, v: usize) -> usize {
        self.one_line.iter().position(|&x| x == v).expect("value present")
    }

    /// `w s_j` for the generator `s_j = (j, j+1)`, `1 <= j < n`.
    pub fn mul_generator(&self, j: usize) -> Self {
        let mut one_line = self.one_line.clone();
        for v in one_line.iter_mut() {
            if *v == j - 1 {
                *v = j;
            } else if *v == j {
                *v = j - 1;
            }
        }
        Permutation { one_line }
    }

    /// Whether `l(w s_j) = l(w) + 1`.
    pub fn generator_lengthens(&self, j: usize) -> bool {
        self.position_of_value(j - 1) < self.position_of_value(j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        Permutation {
            one_line: self.one_line.iter().map(|&v| other.one_line[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { one_line: inv }
    }

    /// A reduced word `[j_1, ..., j_k]` with `w = s_{j_1} ··· s_{j_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(j) = (1..w.n()).find(|&j| !w.generator_lengthens(j)) {
            w = w.mul_generator(j);
            word.push(j);
        }
        word.reverse();
        word
    }

    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter().fold(Permutation::identity(n), |w, &j| w.mul_generator(j))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// A standard tableau: entries `1..=n`, increasing along rows and down columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StandardTableau {
    shape: Multipartition,
    /// `rows[k][i]` is row `i` of component `k`.
    rows: Vec<Vec<Vec<usize>>>,
}

impl StandardTableau {
    /// Validates the filling against the shape.
    pub fn new(shape: Multipartition, rows: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let t = StandardTableau { shape, rows };
        if !t.fits_shape() || !t.is_standard() {
            return Err(Error::ShapeMismatch(format!("{t} is not a standard tableau")));
        }
        Ok(t)
    }

    /// The row-reading tableau `t^λ`.
    pub fn superstandard(shape: &Multipartition) -> Self {
        let mut next = 1;
        let rows = row_reading(shape.as_multicomposition(), |_, _| {
            next += 1;
            next - 1
        });
        StandardTableau {
            shape: shape.clone(),
            rows,
        }
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<Vec<usize>>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.shape.size()
    }

    /// Entries listed by box in row-reading order.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().flatten().copied().collect()
    }

    /// `(component, row, column)` of each entry, indexed by `entry - 1`.
    pub fn positions(&self) -> Vec<(usize, usize, usize)> {
        let mut pos = vec![(0, 0, 0); self.n()];
        for (k, comp) in self.rows.iter().enumerate() {
            for (i, row) in comp.iter().enumerate() {
                for (j, &e) in row.iter().enumerate() {
                    pos[e - 1] = (k, i, j);
                }
            }
        }
        pos
    }

    fn fits_shape(&self) -> bool {
        self.rows.len() == self.shape.r()
            && self.rows.iter().enumerate().all(|(k, comp)| {
                let lens: Vec<usize> = comp.iter().map(Vec::len).collect();
                let want: Vec<usize> = self.shape.component(k).iter().copied().filter(|&p| p > 0).collect();
                lens == want
            })
    }

    fn is_standard(&self) -> bool {
        let mut word = self.reading_word();
        word.sort_unstable();
        if word != (1..=self.n()).collect::<Vec<_>>() {
            return false;
        }
        self.rows.iter().all(|comp| {
            comp.iter().all(|row| row.windows(2).all(|w| w[0] < w[1]))
                && comp.windows(2).all(|rr| rr[1].iter().zip(&rr[0]).all(|(b, a)| a < b))
        })
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .rows
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
                    .collect::<Vec<_>>()
                    .join("/")
            })
            .collect();
        write!(f, "({})", comps.join(" | "))
    }
}

/// A label `(i, k)`: row `i` of component `k`, both one-based.
pub type Label = (usize, usize);

fn label_lt(a: Label, b: Label) -> bool {
    (a.1, a.0) < (b.1, b.0)
}

/// A semistandard tableau of shape `λ` and type `μ`, entries are labels `(i, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SemistandardTableau {
    shape: Multipartition,
    weight: Multicomposition,
    rows: Vec<Vec<Vec<Label>>>,
}

impl SemistandardTableau {
    /// Validates content, the component condition and row/column monotonicity.
    pub fn new(shape: Multipartition, weight: Multicomposition, rows: Vec<Vec<Vec<Label>>>) -> Result<Self> {
        let t = SemistandardTableau { shape, weight, rows };
        if !t.is_valid() {
            return Err(Error::ShapeMismatch(format!("{t} is not semistandard of type {}", t.weight)));
        }
        Ok(t)
    }

    /// `T^λ`: every box of row `i` of component `k` labelled `(i, k)`.
    pub fn superstandard(shape: &Multipartition) -> Self {
        let rows = row_reading(shape.as_multicomposition(), |k, i| (i + 1, k + 1));
        SemistandardTableau {
            shape: shape.clone(),
            weight: shape.as_multicomposition().clone(),
            rows,
        }
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn weight(&self) -> &Multicomposition {
        &self.weight
    }

    pub fn rows(&self) -> &[Vec<Vec<Label>>] {
        &self.rows
    }

    /// Checks every defining condition field by field.
    pub fn is_valid(&self) -> bool {
        if self.rows.len() != self.shape.r() || self.weight.bounds() != self.shape.bounds() {
            return false;
        }
        let mut content: HashMap<Label, usize> = HashMap::new();
        for (s, comp) in self.rows.iter().enumerate() {
            let want: Vec<usize> = self.shape.component(s).iter().copied().filter(|&p| p > 0).collect();
            if comp.iter().map(Vec::len).collect::<Vec<_>>() != want {
                return false;
            }
            for (ri, row) in comp.iter().enumerate() {
                for (ci, &lab) in row.iter().enumerate() {
                    if lab.1 < s + 1 || lab.1 > self.shape.r() || lab.0 == 0 {
                        return false;
                    }
                    *content.entry(lab).or_default() += 1;
                    if ci > 0 && label_lt(lab, row[ci - 1]) {
                        return false;
                    }
                    if ri > 0 && !label_lt(comp[ri - 1][ci], lab) {
                        return false;
                    }
                }
            }
        }
        for k in 0..self.weight.r() {
            for (i, &c) in self.weight.component(k).iter().enumerate() {
                if content.remove(&(i + 1, k + 1)).unwrap_or(0) != c {
                    return false;
                }
            }
        }
        content.is_empty()
    }
}

impl fmt::Display for SemistandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .rows
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|row| row.iter().map(|(i, k)| format!("({i},{k})")).collect::<String>())
                    .collect::<Vec<_>>()
                    .join("/")
            })
            .collect();
        write!(f, "[{}]", comps.join(" | "))
    }
}

/// Fills the diagram of `shape` in row-reading order with `fill(component, row)`.
fn row_reading<T>(shape: &Multicomposition, mut fill: impl FnMut(usize, usize) -> T) -> Vec<Vec<Vec<T>>> {
    (0..shape.r())
        .map(|k| {
            shape
                .component(k)
                .iter()
                .enumerate()
                .filter(|(_, &len)| len > 0)
                .map(|(i, &len)| (0..len).map(|_| fill(k, i)).collect())
                .collect()
        })
        .collect()
}

/// Every standard tableau of shape `λ`, with `t^λ` first.
pub fn enumerate_std(lambda: &Multipartition) -> Vec<StandardTableau> {
    let n = lambda.size();
    let r = lambda.r();
    let target: Vec<Vec<usize>> = (0..r)
        .map(|k| lambda.component(k).iter().copied().filter(|&p| p > 0).collect())
        .collect();
    let mut rows: Vec<Vec<Vec<usize>>> = target.iter().map(|c| vec![Vec::new(); c.len()]).collect();
    let mut out = Vec::new();

    fn go(
        next: usize,
        n: usize,
        target: &[Vec<usize>],
        rows: &mut Vec<Vec<Vec<usize>>>,
        shape: &Multipartition,
        out: &mut Vec<StandardTableau>,
    ) {
        if next > n {
            out.push(StandardTableau {
                shape: shape.clone(),
                rows: rows.clone(),
            });
            return;
        }
        for k in 0..target.len() {
            for i in 0..target[k].len() {
                let len = rows[k][i].len();
                if len < target[k][i] && (i == 0 || rows[k][i - 1].len() > len) {
                    rows[k][i].push(next);
                    go(next + 1, n, target, rows, shape, out);
                    rows[k][i].pop();
                }
            }
        }
    }

    go(1, n, &target, &mut rows, lambda, &mut out);
    out
}

/// The labels of `1..=n` under the row reading of `μ`: entry `j` gets `(i, k)`
/// when `j` sits in row `i` of component `k` of `t^μ`.
pub fn weight_labels(mu: &Multicomposition) -> Vec<Label> {
    row_reading(mu, |k, i| (i + 1, k + 1)).into_iter().flatten().flatten().collect()
}

/// Replaces each entry of `t` by its `μ`-label; `None` if the result is not semistandard.
pub fn type_map(t: &StandardTableau, mu: &Multicomposition) -> Option<SemistandardTableau> {
    if mu.size() != t.n() || mu.bounds() != t.shape().bounds() {
        return None;
    }
    let labels = weight_labels(mu);
    let rows = t
        .rows
        .iter()
        .map(|comp| comp.iter().map(|row| row.iter().map(|&e| labels[e - 1]).collect()).collect())
        .collect();
    let s = SemistandardTableau {
        shape: t.shape.clone(),
        weight: mu.clone(),
        rows,
    };
    s.is_valid().then_some(s)
}

/// A semistandard tableau together with the indices (into [`enumerate_std`])
/// of the standard tableaux mapping onto it.
#[derive(Clone, Debug)]
pub struct SsytClass {
    pub tableau: SemistandardTableau,
    pub members: Vec<usize>,
}

/// `T_0(λ, μ)` as fibres of the type map over `Std(λ)`, in order of first occurrence.
pub fn ssyt_classes(lambda: &Multipartition, mu: &Multicomposition, std: &[StandardTableau]) -> Vec<SsytClass> {
    let mut index: HashMap<SemistandardTableau, usize> = HashMap::new();
    let mut out: Vec<SsytClass> = Vec::new();
    if mu.size() != lambda.size() || mu.bounds() != lambda.bounds() {
        return out;
    }
    for (si, t) in std.iter().enumerate() {
        if let Some(s) = type_map(t, mu) {
            match index.get(&s) {
                Some(&pos) => out[pos].members.push(si),
                None => {
                    index.insert(s.clone(), out.len());
                    out.push(SsytClass {
                        tableau: s,
                        members: vec![si],
                    });
                }
            }
        }
    }
    out
}

/// `T_0(λ, μ)`.
pub fn enumerate_ssyt(lambda: &Multipartition, mu: &Multicomposition) -> Vec<SemistandardTableau> {
    ssyt_classes(lambda, mu, &enumerate_std(lambda))
        .into_iter()
        .map(|c| c.tableau)
        .collect()
}

/// `T_0^p(λ, μ)`: `T_0(λ, μ)` when `α_p(λ) = α_p(μ)`, empty otherwise.
pub fn enumerate_ssyt_p(lambda: &Multipartition, mu: &Multicomposition, p: &PSplit) -> Result<Vec<SemistandardTableau>> {
    if alpha_p(lambda, p)? != alpha_p(mu, p)? {
        return Ok(Vec::new());
    }
    Ok(enumerate_ssyt(lambda, mu))
}

/// Restricts `T` to each block of `p`, relabelling `(i, k)` to `(i, k - p_k)`.
pub fn split_ssyt(t: &SemistandardTableau, p: &PSplit) -> Result<Vec<SemistandardTableau>> {
    let shapes = split(t.shape(), p)?;
    let weights = split(t.weight(), p)?;
    let mut out = Vec::with_capacity(p.g());
    for (b, (&off, &len)) in p.offsets().iter().zip(p.r_parts()).enumerate() {
        let mut rows = Vec::with_capacity(len);
        for comp in &t.rows[off..off + len] {
            let mut c = Vec::with_capacity(comp.len());
            for row in comp {
                let mut rr = Vec::with_capacity(row.len());
                for &(i, k) in row {
                    if k <= off || k > off + len {
                        return Err(Error::SplitMismatch(format!("label ({i},{k}) of {t} leaves block {}", b + 1)));
                    }
                    rr.push((i, k - off));
                }
                c.push(rr);
            }
            rows.push(c);
        }
        let shape = Multipartition::try_from(shapes[b].clone())?;
        out.push(SemistandardTableau::new(shape, weights[b].clone(), rows)?);
    }
    Ok(out)
}

/// `d(t)`, defined by `t = t^λ · d(t)`.
pub fn d_perm(t: &StandardTableau) -> Permutation {
    let base = StandardTableau::superstandard(t.shape()).reading_word();
    let word = t.reading_word();
    let mut one_line = vec![0; t.n()];
    for (a, b) in base.iter().zip(&word) {
        one_line[a - 1] = b - 1;
    }
    Permutation { one_line }
}

/// The row stabiliser of `t^μ` as a list of permutations.
pub fn row_stabilizer(mu: &Multicomposition) -> Vec<Permutation> {
    let n = mu.size();
    let mut blocks = Vec::new();
    let mut start = 0;
    for k in 0..mu.r() {
        for &len in mu.component(k) {
            if len > 1 {
                blocks.push((start, len));
            }
            start += len;
        }
    }
    Permutation::all(n)
        .into_iter()
        .filter(|w| {
            w.one_line().iter().enumerate().all(|(i, &v)| {
                blocks
                    .iter()
                    .find(|&&(s, l)| i >= s && i < s + l)
                    .map_or(v == i, |&(s, l)| v >= s && v < s + l)
            })
        })
        .collect()
}
