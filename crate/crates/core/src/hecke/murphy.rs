//! The Murphy basis `m_st = T_{d(s)}^* m_λ T_{d(t)}` and its change of basis matrix.

use serde_json::{json, Value};

use super::{AlgebraElement, HeckeAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::multipartition::{dominance_cmp, enumerate_lambda_plus, Dominance, Multicomposition, Multipartition};
use crate::tableau::{d_perm, enumerate_std, row_stabilizer, StandardTableau};

const PAYLOAD_VERSION: u64 = 1;

/// `u^+_μ x_μ` for a multicomposition `μ`: the product of `(L_i - Q_k)` over
/// `2 <= k <= r`, `i <= |μ^(1)| + ... + |μ^(k-1)|`, times the row stabiliser sum.
pub fn murphy_weight_element<K: Field>(alg: &HeckeAlgebra<K>, mu: &Multicomposition) -> Result<AlgebraElement<K>> {
    if mu.size() != alg.n() || mu.r() != alg.r() {
        return Err(Error::ShapeMismatch(format!(
            "{mu} does not index H_{{{},{}}}",
            alg.n(),
            alg.r()
        )));
    }
    let sizes = mu.component_sizes();
    let mut e = alg.one();
    let mut a = 0;
    for k in 1..alg.r() {
        a += sizes[k - 1];
        let qk = &alg.big_q()[k];
        for i in 1..=a {
            e = alg.mul_l(&e, i).sub(&e.scale(qk));
        }
    }
    let mut out = AlgebraElement::zero();
    for w in row_stabilizer(mu) {
        out.add_scaled(&alg.mul_tw(&e, &w), &K::one());
    }
    Ok(out)
}

fn strip(mu: &Multicomposition) -> Vec<Vec<usize>> {
    (0..mu.r())
        .map(|k| mu.component(k).iter().copied().filter(|&x| x > 0).collect())
        .collect()
}

/// Position of a Murphy basis element: shape index into `Λ⁺`, then the
/// indices of `s` and `t` into `Std(λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MurphyLabel {
    pub shape: usize,
    pub s: usize,
    pub t: usize,
}

/// Columns are the Murphy basis in normal-form coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct MurphyTransition<K: Field> {
    pub matrix: Matrix<K>,
    pub inverse: Matrix<K>,
}

impl<K: Field> MurphyTransition<K> {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn to_payload(&self) -> Value {
        let enc = |m: &Matrix<K>| -> Value {
            Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(K::to_json).collect())).collect())
        };
        json!({
            "version": PAYLOAD_VERSION,
            "dim": self.dim(),
            "matrix": enc(&self.matrix),
            "inverse": enc(&self.inverse),
        })
    }

    /// `Ok(None)` for a payload written by another format version.
    pub fn from_payload(v: &Value) -> Result<Option<Self>> {
        let bad = |what: &str| Error::Parse(format!("transition payload: {what}"));
        if v.get("version").and_then(Value::as_u64) != Some(PAYLOAD_VERSION) {
            return Ok(None);
        }
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing dim"))? as usize;
        let dec = |key: &str| -> Result<Matrix<K>> {
            let rows = v.get(key).and_then(Value::as_array).ok_or_else(|| bad(key))?;
            if rows.len() != dim {
                return Err(bad("row count"));
            }
            let mut out = Vec::with_capacity(dim);
            for row in rows {
                let row = row.as_array().ok_or_else(|| bad("row"))?;
                if row.len() != dim {
                    return Err(bad("column count"));
                }
                out.push(row.iter().map(|x| K::from_json(x).ok_or_else(|| bad("entry"))).collect::<Result<Vec<_>>>()?);
            }
            Ok(Matrix::from_rows(out))
        };
        Ok(Some(MurphyTransition {
            matrix: dec("matrix")?,
            inverse: dec("inverse")?,
        }))
    }
}

/// The Murphy basis of `H_{n,r}`, indexed by all `r`-multipartitions of `n`.
#[derive(Clone, Debug)]
pub struct MurphyBasis<K: Field> {
    shapes: Vec<Multipartition>,
    std: Vec<Vec<StandardTableau>>,
    offsets: Vec<usize>,
    elements: Vec<AlgebraElement<K>>,
    transition: MurphyTransition<K>,
}

impl<K: Field> MurphyBasis<K> {
    pub fn compute(alg: &HeckeAlgebra<K>) -> Result<Self> {
        let (shapes, std, offsets) = Self::index(alg)?;
        let mut elements = Vec::with_capacity(alg.dim());
        for (lambda, tabs) in shapes.iter().zip(&std) {
            let m = murphy_weight_element(alg, lambda)?;
            if alg.star(&m) != m {
                return Err(Error::Inconsistency(format!("m_{lambda} is not *-invariant")));
            }
            let d: Vec<_> = tabs.iter().map(d_perm).collect();
            for ds in &d {
                let left = alg.star(&alg.mul_tw(&m, ds));
                for dt in &d {
                    elements.push(alg.mul_tw(&left, dt));
                }
            }
        }
        let dim = alg.dim();
        let mut matrix = Matrix::zeros(dim, dim);
        for (j, e) in elements.iter().enumerate() {
            for (i, c) in e.terms() {
                matrix.set(i as usize, j, c.clone());
            }
        }
        let inverse = matrix
            .inverse()
            .map_err(|e| Error::Inconsistency(format!("Murphy elements are not a basis: {e}")))?;
        Ok(MurphyBasis {
            shapes,
            std,
            offsets,
            elements,
            transition: MurphyTransition { matrix, inverse },
        })
    }

    /// Rebuilds the basis from a stored transition matrix.
    pub fn from_transition(alg: &HeckeAlgebra<K>, transition: MurphyTransition<K>) -> Result<Self> {
        let (shapes, std, offsets) = Self::index(alg)?;
        let dim = alg.dim();
        if transition.dim() != dim || transition.inverse.rows() != dim || transition.matrix.cols() != dim {
            return Err(Error::ShapeMismatch(format!(
                "stored transition has dimension {}, expected {dim}",
                transition.dim()
            )));
        }
        let elements = (0..dim)
            .map(|j| AlgebraElement::from_dense(&(0..dim).map(|i| transition.matrix.get(i, j).clone()).collect::<Vec<_>>()))
            .collect();
        Ok(MurphyBasis {
            shapes,
            std,
            offsets,
            elements,
            transition,
        })
    }

    #[allow(clippy::type_complexity)]
    fn index(alg: &HeckeAlgebra<K>) -> Result<(Vec<Multipartition>, Vec<Vec<StandardTableau>>, Vec<usize>)> {
        let shapes = enumerate_lambda_plus(alg.n(), &vec![alg.n(); alg.r()]);
        let std: Vec<_> = shapes.iter().map(enumerate_std).collect();
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for s in &std {
            offsets.push(total);
            total += s.len() * s.len();
        }
        if total != alg.dim() {
            return Err(Error::Inconsistency(format!("{total} Murphy elements but dim H = {}", alg.dim())));
        }
        Ok((shapes, std, offsets))
    }

    pub fn shapes(&self) -> &[Multipartition] {
        &self.shapes
    }

    /// Index of `λ` in `Λ⁺`; row bounds of `λ` are ignored.
    pub fn shape_index(&self, lambda: &Multicomposition) -> Option<usize> {
        let key = strip(lambda);
        self.shapes.iter().position(|s| strip(s) == key)
    }

    pub fn standard_tableaux(&self, shape: usize) -> &[StandardTableau] {
        &self.std[shape]
    }

    pub fn transition(&self) -> &MurphyTransition<K> {
        &self.transition
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, label: MurphyLabel) -> usize {
        self.offsets[label.shape] + label.s * self.std[label.shape].len() + label.t
    }

    pub fn label(&self, pos: usize) -> MurphyLabel {
        let shape = self.offsets.partition_point(|&o| o <= pos) - 1;
        let f = self.std[shape].len();
        let rel = pos - self.offsets[shape];
        MurphyLabel {
            shape,
            s: rel / f,
            t: rel % f,
        }
    }

    pub fn element(&self, label: MurphyLabel) -> &AlgebraElement<K> {
        &self.elements[self.position(label)]
    }

    /// Coordinates of `a` in the Murphy basis.
    pub fn coefficients(&self, a: &AlgebraElement<K>) -> Vec<K> {
        self.transition.inverse.mul_vec(&a.to_dense(self.dim()))
    }

    /// Reads off `c` from `a ≡ c·m_{t^λ t^λ}` modulo `H^{▷λ}`, checking that `a`
    /// has that form.
    pub(crate) fn leading_coefficient(&self, shape: usize, a: &AlgebraElement<K>) -> Result<K> {
        let coeffs = self.coefficients(a);
        let lambda = &self.shapes[shape];
        for (pos, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let l = self.label(pos);
            let ok = if l.shape == shape {
                l.s == 0 && l.t == 0
            } else {
                dominance_cmp(&self.shapes[l.shape], lambda)? == Dominance::Greater
            };
            if !ok {
                return Err(Error::Inconsistency(format!(
                    "product for shape {lambda} has a coefficient on m_st with s, t of shape {}",
                    self.shapes[l.shape]
                )));
            }
        }
        Ok(coeffs[self.position(MurphyLabel { shape, s: 0, t: 0 })].clone())
    }

    /// The Gram matrix of the Specht module: `m_{t^λ s} m_{t t^λ} ≡ G[s][t] m_{t^λ t^λ}`.
    pub fn specht_gram(&self, alg: &HeckeAlgebra<K>, lambda: &Multicomposition) -> Result<Matrix<K>> {
        let shape = self
            .shape_index(lambda)
            .ok_or_else(|| Error::ShapeMismatch(format!("{lambda} is not in the indexing set")))?;
        let f = self.std[shape].len();
        let mut g = Matrix::zeros(f, f);
        for s in 0..f {
            let left = self.element(MurphyLabel { shape, s: 0, t: s });
            for t in s..f {
                let right = self.element(MurphyLabel { shape, s: t, t: 0 });
                let c = self.leading_coefficient(shape, &alg.multiply(left, right))?;
                g.set(s, t, c.clone());
                g.set(t, s, c);
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn k(x: i64) -> Rational {
        Rational::from_i64(x)
    }

    fn alg(n: usize, q: i64, big_q: &[i64]) -> HeckeAlgebra<Rational> {
        HeckeAlgebra::new(n, k(q), big_q.iter().map(|&x| k(x)).collect()).unwrap()
    }

    #[test]
    fn rank_one_transition() {
        let h = alg(1, 3, &[2, 7]);
        let b = MurphyBasis::compute(&h).unwrap();
        assert_eq!(b.shapes()[0].to_string(), "1|");
        let l1 = h.jucys_murphy(1);
        assert_eq!(b.element(MurphyLabel { shape: 0, s: 0, t: 0 }), &l1.sub(&h.scalar(k(7))));
        assert_eq!(b.element(MurphyLabel { shape: 1, s: 0, t: 0 }), &h.one());
    }

    #[test]
    fn small_gram_matrices() {
        let h = alg(1, 3, &[2, 7]);
        let b = MurphyBasis::compute(&h).unwrap();
        let g = b.specht_gram(&h, &Multipartition::parse("1|", &[1, 1]).unwrap()).unwrap();
        assert_eq!(g, Matrix::from_rows(vec![vec![k(-5)]]));

        let h = alg(2, 3, &[1]);
        let b = MurphyBasis::compute(&h).unwrap();
        let two = b.specht_gram(&h, &Multipartition::parse("2", &[2]).unwrap()).unwrap();
        assert_eq!(two, Matrix::from_rows(vec![vec![k(4)]]));
        let one_one = b.specht_gram(&h, &Multipartition::parse("1,1", &[2]).unwrap()).unwrap();
        assert_eq!(one_one, Matrix::from_rows(vec![vec![k(1)]]));
    }

    #[test]
    fn coefficients_invert_elements() {
        let h = alg(2, 2, &[1, 3]);
        let b = MurphyBasis::compute(&h).unwrap();
        for pos in 0..b.dim() {
            let c = b.coefficients(&b.elements[pos]);
            for (i, x) in c.iter().enumerate() {
                assert_eq!(x, &if i == pos { k(1) } else { k(0) });
            }
            assert_eq!(b.position(b.label(pos)), pos);
        }
    }

    #[test]
    fn payload_round_trip() {
        let h = alg(2, 2, &[1, 3]);
        let b = MurphyBasis::compute(&h).unwrap();
        let p = b.transition().to_payload();
        let back = MurphyTransition::<Rational>::from_payload(&p).unwrap().unwrap();
        assert_eq!(&back, b.transition());
        let rebuilt = MurphyBasis::from_transition(&h, back).unwrap();
        assert_eq!(rebuilt.elements, b.elements);
        let mut stale = p.clone();
        stale["version"] = json!(0);
        assert!(MurphyTransition::<Rational>::from_payload(&stale).unwrap().is_none());
    }

    #[test]
    fn shape_lookup_ignores_bounds() {
        let h = alg(2, 2, &[1, 3]);
        let b = MurphyBasis::compute(&h).unwrap();
        let narrow = Multicomposition::parse("1|1", &[1, 1]).unwrap();
        assert_eq!(b.shapes()[b.shape_index(&narrow).unwrap()].to_string(), "1|1");
    }
}
