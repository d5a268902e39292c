//! Fixtures shared by the benchmarks.

use vdecomp_core::{AlgebraElement, Engine, Field, HeckeAlgebra, Matrix, PLocal, Rational};

/// `q̂ = 1`, `Q̂_k = (k-1)p`.
pub fn p_local(p: u64, r: usize) -> PLocal {
    let qs: Vec<i64> = (0..r).map(|k| k as i64 * p as i64).collect();
    PLocal::with_ints(p, 1, &qs).expect("valid parameters")
}

pub fn engine(n: usize, r: usize) -> Engine<PLocal> {
    Engine::with_default_bounds(n, p_local(2, r)).expect("valid engine")
}

/// `H_{n,r}` at generic rational parameters.
pub fn generic_algebra(n: usize, r: usize) -> HeckeAlgebra<Rational> {
    let qs = (0..r).map(|k| Rational::new(2 * k as i64 + 3, k as i64 + 1)).collect();
    HeckeAlgebra::new(n, Rational::new(2, 3), qs).expect("valid algebra")
}

/// A dense element with small integer coefficients, deterministic in `seed`.
pub fn dense_element(dim: usize, seed: u64) -> AlgebraElement<Rational> {
    let mut e = AlgebraElement::zero();
    let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    for i in 0..dim as u32 {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let c = (x >> 60) as i64 - 8;
        if c != 0 {
            e.add_term(i, &Rational::from_i64(c));
        }
    }
    e
}

/// An integer matrix with entries divisible by varying powers of 2.
pub fn valued_matrix(n: usize) -> Matrix<Rational> {
    Matrix::from_fn(n, n, |i, j| {
        let base = ((i * 7 + j * 3) % 11) as i64 - 5;
        Rational::from_i64(base * (1 << ((i + j) % 3)) + if i == j { 2 } else { 0 })
    })
}
