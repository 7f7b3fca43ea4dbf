use k3_frobenius::arith::{hilbert_symbol, is_norm_of, relevant_places, Place};
use k3_frobenius::oracle::hilbert_symbol_bruteforce;
use k3_frobenius::Rational;
use proptest::prelude::*;

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-2000i64..2000, 1i64..2000).prop_filter("nonzero", |(p, _)| *p != 0).prop_map(|(p, q)| Rational::new(p, q))
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Infinite),
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101]).prop_map(|p| Place::finite(p).unwrap()),
    ]
}

proptest! {
    #[test]
    fn reciprocity(a in nonzero_rational(), b in nonzero_rational()) {
        let mut prod = 1;
        for v in relevant_places(&[&a, &b]).unwrap() {
            prod *= hilbert_symbol(&a, &b, &v).unwrap();
        }
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn bimultiplicative(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational(), v in place()) {
        let ab = hilbert_symbol(&(&a * &b), &c, &v).unwrap();
        prop_assert_eq!(ab, hilbert_symbol(&a, &c, &v).unwrap() * hilbert_symbol(&b, &c, &v).unwrap());
        prop_assert_eq!(hilbert_symbol(&a, &b, &v).unwrap(), hilbert_symbol(&b, &a, &v).unwrap());
        prop_assert_eq!(hilbert_symbol(&a, &(-&a), &v).unwrap(), 1);
    }

    #[test]
    fn square_classes(a in nonzero_rational(), b in nonzero_rational(), s in nonzero_rational(), v in place()) {
        let b2 = &b * &s * &s;
        prop_assert_eq!(hilbert_symbol(&a, &b, &v).unwrap(), hilbert_symbol(&a, &b2, &v).unwrap());
    }

    #[test]
    fn closed_form_matches_local_solvability(a in -40i64..40, b in -40i64..40, p in prop::sample::select(vec![None, Some(2u64), Some(3), Some(5), Some(7)])) {
        prop_assume!(a != 0 && b != 0);
        let v = match p { Some(p) => Place::finite(p).unwrap(), None => Place::Infinite };
        prop_assert_eq!(hilbert_symbol(&Rational::from(a), &Rational::from(b), &v).unwrap(), hilbert_symbol_bruteforce(a, b, p));
    }

    #[test]
    fn sums_of_two_squares_are_norms(x in -300i64..300, y in -300i64..300, d in 1i64..50) {
        prop_assume!(x != 0 || y != 0);
        let q = Rational::new(x * x + y * y, d * d);
        prop_assert!(is_norm_of(&q, &Rational::one()).unwrap());
    }
}
