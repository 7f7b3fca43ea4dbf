use std::sync::Arc;

use k3_frobenius::frobenius::default_k3_model;
use k3_frobenius::orbifold::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sym(n: usize) -> SymmetricPower {
    SymmetricPower::new(n, Arc::new(default_k3_model())).unwrap()
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn defect_and_sign_are_well_defined(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::seq::SliceRandom;
        let mut a: Vec<usize> = (0..n).collect();
        let mut b = a.clone();
        a.shuffle(&mut rng);
        b.shuffle(&mut rng);
        let (g, h) = (Permutation::new(a).unwrap(), Permutation::new(b).unwrap());
        prop_assert_eq!(epsilon_exponent_twice(&g, &h) % 2, 0);
        for t in joint_orbits(&g, &h).unwrap().blocks {
            let d = graph_defect_twice(&g, &h, &t).unwrap();
            prop_assert!(d >= 0 && d % 2 == 0);
        }
    }

    #[test]
    fn group_laws(g in perm(5), h in perm(5), k in perm(5)) {
        prop_assert_eq!(g.compose(&h).compose(&k), g.compose(&h.compose(&k)));
        prop_assert!(g.compose(&g.inverse()).is_identity());
        prop_assert_eq!(orbits(&g).len(), orbits(&g.conjugate_by(&k)).len());
        let text = g.to_string();
        prop_assert_eq!(Permutation::parse(5, &text).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn star_is_associative(n in 2usize..=3, seed in any::<u64>()) {
        let s = sym(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (s.random_element(&mut rng, 3), s.random_element(&mut rng, 3), s.random_element(&mut rng, 3));
        let xy = s.star(&x, &y).unwrap();
        prop_assert_eq!(&xy.sector, &x.sector.compose(&y.sector));
        prop_assert_eq!(s.star(&xy, &z).unwrap(), s.star(&x, &s.star(&y, &z).unwrap()).unwrap());
    }

    #[test]
    fn conjugation_is_an_algebra_action(seed in any::<u64>(), k in perm(3)) {
        let s = sym(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (s.random_element(&mut rng, 3), s.random_element(&mut rng, 3));
        let lhs = conjugation_action(&k, &s.star(&x, &y).unwrap()).unwrap();
        let rhs = s.star(&conjugation_action(&k, &x).unwrap(), &conjugation_action(&k, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn graded_counts_match_oracle() {
    let a = default_k3_model();
    for n in 1..=4 {
        assert_eq!(sn_invariant_dimension(n, &a).unwrap(), goettsche_oracle(n).unwrap(), "n = {n}");
    }
}

#[test]
fn oracle_for_other_surfaces() {
    // Hilb² of P²: Betti numbers 1, 2, 3, 2, 1.
    let p2 = goettsche_for_surface(2, &[1, 0, 1, 0, 1]).unwrap();
    let v: Vec<i64> = p2.values().map(|c| i64::try_from(c.clone()).unwrap()).collect();
    assert_eq!(v, vec![1, 2, 3, 2, 1]);
}

#[test]
fn sector_element_json() {
    let s = sym(2);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let x = s.random_element(&mut rng, 3);
    let json = serde_json::to_string(&x).unwrap();
    let back: SectorElement = serde_json::from_str(&json).unwrap();
    assert_eq!(back, x);
}
