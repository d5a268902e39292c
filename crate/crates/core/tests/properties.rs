use proptest::prelude::*;
use vdecomp_core::*;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-12i64..=12, rows * cols).prop_map(move |v| {
        Matrix::from_fn(rows, cols, |i, j| Rational::from_i64(v[i * cols + j]))
    })
}

fn square_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=4).prop_flat_map(|n| int_matrix(n, n))
}

fn system() -> impl Strategy<Value = PLocal> {
    prop::sample::select(vec![2u64, 3, 5]).prop_map(|p| PLocal::with_ints(p, 1, &[0]).unwrap())
}

fn element(dim: usize) -> impl Strategy<Value = AlgebraElement<Rational>> {
    prop::collection::vec((0..dim as u32, -3i64..=3), 0..6).prop_map(|terms| {
        let mut e = AlgebraElement::zero();
        for (i, c) in terms {
            e.add_term(i, &Rational::from_i64(c));
        }
        e
    })
}

fn algebra() -> HeckeAlgebra<Rational> {
    HeckeAlgebra::new(3, rat(2, 3), vec![rat(3, 1), rat(-1, 2)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_is_additive_and_ultrametric(a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500, ms in system()) {
        let x = rat(a, b);
        let y = rat(c, d);
        let vx = ms.valuation(&x);
        let vy = ms.valuation(&y);
        prop_assert_eq!(ms.valuation(&x.mul(&y)), vx.plus(vy));
        prop_assert!(ms.valuation(&x.add(&y)) >= vx.min(vy));
    }

    #[test]
    fn profile_is_invariant_under_unimodular_moves(
        m in square_matrix(),
        ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3, any::<bool>()), 0..8),
        ms in system(),
    ) {
        let before = elementary_divisor_valuations(&ms, &m).unwrap();
        let n = m.rows();
        let mut a = m.clone();
        for (i, j, f, on_rows) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            if on_rows {
                a.add_row_multiple(i, j, &Rational::from_i64(f));
            } else {
                a = a.transpose();
                a.add_row_multiple(i, j, &Rational::from_i64(f));
                a = a.transpose();
                a.swap_cols(i, j);
            }
        }
        prop_assert_eq!(elementary_divisor_valuations(&ms, &a).unwrap(), before);
    }

    #[test]
    fn kronecker_profile_is_the_minkowski_sum(a in square_matrix(), b in square_matrix(), ms in system()) {
        let pa = elementary_divisor_valuations(&ms, &a).unwrap();
        let pb = elementary_divisor_valuations(&ms, &b).unwrap();
        let pk = elementary_divisor_valuations(&ms, &a.kronecker(&b)).unwrap();
        prop_assert_eq!(pk, pa.minkowski_sum(&pb));
    }

    #[test]
    fn rank_over_f_counts_zero_valuations(m in square_matrix(), ms in system()) {
        let prof = elementary_divisor_valuations(&ms, &m).unwrap();
        prop_assert_eq!(rank_over_f(&ms, &m).unwrap(), prof.count_eq(0));
    }

    #[test]
    fn multiplication_is_associative(a in element(48), b in element(48), c in element(48)) {
        let h = algebra();
        let left = h.multiply(&h.multiply(&a, &b), &c);
        let right = h.multiply(&a, &h.multiply(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_reverses_products(a in element(48), b in element(48)) {
        let h = algebra();
        prop_assert_eq!(h.star(&h.multiply(&a, &b)), h.multiply(&h.star(&b), &h.star(&a)));
    }

    #[test]
    fn text_form_round_trips(parts in prop::collection::vec(0usize..3, 6)) {
        let bounds = [3, 3];
        let mu = Multicomposition::new(vec![parts[..3].to_vec(), parts[3..].to_vec()], &bounds).unwrap();
        prop_assert_eq!(Multicomposition::parse(&mu.to_string(), &bounds).unwrap(), mu);
    }
}
