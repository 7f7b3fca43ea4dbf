use k3_frobenius::forms::QuadraticForm;
use k3_frobenius::k3::{catalog, hyperbolic_plane};
use k3_frobenius::linalg::RatMatrix;
use k3_frobenius::Rational;
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..6).prop_filter("nonzero", |(p, _)| *p != 0).prop_map(|(p, q)| Rational::new(p, q))
}

fn diagonal(max: usize) -> impl Strategy<Value = QuadraticForm> {
    prop::collection::vec(entry(), 1..=max).prop_map(|e| QuadraticForm::diagonal(&e))
}

fn unimodular(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..3 * n).prop_map(move |ops| {
        let mut m = RatMatrix::identity(n);
        for (i, j, f) in ops {
            if i != j {
                let mut e = RatMatrix::identity(n);
                e[(i, j)] = Rational::from(f);
                m = e.mul(&m).unwrap();
            }
        }
        m
    })
}

proptest! {
    #[test]
    fn invariants_are_congruence_invariant(q in diagonal(4), c in unimodular(4)) {
        prop_assume!(q.dim() == 4);
        let moved = q.transform(&c).unwrap();
        prop_assert_eq!(q.invariants().unwrap(), moved.invariants().unwrap());
        prop_assert!(q.is_equivalent(&moved).unwrap());
    }

    #[test]
    fn witt_cancellation(q in diagonal(3), r in diagonal(3), s in diagonal(3)) {
        let qr = q.direct_sum(&r);
        let qs = q.direct_sum(&s);
        if qr.is_equivalent(&qs).unwrap() {
            prop_assert!(r.is_equivalent(&s).unwrap());
        }
        prop_assert!(qr.is_equivalent(&r.direct_sum(&q)).unwrap());
    }

    #[test]
    fn hasse_product_formula(q in diagonal(5)) {
        prop_assert_eq!(q.invariants().unwrap().hasse_product(), 1);
    }

    #[test]
    fn twist_lemma(m in (1i64..500, 1i64..40).prop_map(|(p, q)| Rational::new(p, q))) {
        let u = hyperbolic_plane().form();
        let uu = u.direct_sum(&u);
        let d88 = QuadraticForm::from_i64(&[vec![8, 0], vec![0, 8]]).unwrap();
        let e8 = catalog("E8_minus").unwrap().form();
        for q in [&u, &uu, &d88, &e8] {
            let twisted = q.twist(&m).unwrap();
            let predicted = q.lemma_predicts_twist_equivalent(&m).unwrap();
            prop_assert_eq!(predicted, Some(q.is_equivalent(&twisted).unwrap()));
            let inv = twisted.invariants().unwrap();
            for v in inv.hasse.keys() {
                prop_assert_eq!(q.hasse_epsilon_twist(&m, v).unwrap(), inv.hasse_at(v));
            }
        }
    }

    #[test]
    fn twisting_twice_multiplies(q in diagonal(4), a in entry(), b in entry()) {
        let lhs = q.twist(&a).unwrap().twist(&b).unwrap();
        let rhs = q.twist(&(&a * &b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn e8_is_even_unimodular_negative_definite() {
    let e8 = catalog("E8_minus").unwrap();
    assert!(e8.is_even() && e8.is_unimodular());
    assert_eq!(e8.signature().unwrap(), (0, 8));
}
