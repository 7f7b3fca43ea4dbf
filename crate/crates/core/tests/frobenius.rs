use std::sync::Arc;

use k3_frobenius::frobenius::*;
use k3_frobenius::linalg::RatMatrix;
use k3_frobenius::Rational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn model() -> Arc<GradedFrobeniusAlgebra> {
    static MODEL: std::sync::OnceLock<Arc<GradedFrobeniusAlgebra>> = std::sync::OnceLock::new();
    MODEL.get_or_init(|| Arc::new(default_k3_model())).clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_is_sound(seed in any::<u64>(), count in 1usize..6) {
        let a = model();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for map in generate_maps(&a, count, &mut rng).unwrap() {
            let c = classify_map(&map).unwrap();
            prop_assert!(c.criteria_agree, "{}", map.label);
            if c.algebra_hom && c.nonzero {
                prop_assert!(c.unit_preserved);
            }
            if c.frobenius_iso {
                prop_assert!(c.orthogonal);
                // Orthogonal means the adjoint is the inverse.
                let inv = map.matrix.inverse().unwrap();
                prop_assert_eq!(map.adjoint().unwrap(), inv);
            }
            if let Some(law) = c.adjoint_law {
                prop_assert!(law);
            }
        }
    }

    #[test]
    fn isometries_compose(seed in any::<u64>()) {
        let a = model();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let maps = generate_maps(&a, 3, &mut rng).unwrap();
        let isos: Vec<_> = maps.iter().filter(|m| classify_map(m).unwrap().frobenius_iso).collect();
        for f in &isos {
            for g in &isos {
                if Arc::ptr_eq(&f.target, &g.source) {
                    prop_assert!(classify_map(&g.compose(f).unwrap()).unwrap().frobenius_iso);
                }
            }
        }
    }

    #[test]
    fn reflections_preserve_the_model(i in 1usize..23, j in 1usize..23, x in -2i64..=2, y in -2i64..=2) {
        let a = model();
        let h2 = h2_range(&a);
        let mut g = RatMatrix::zeros(h2.len(), h2.len());
        for r in 0..h2.len() {
            for c in 0..h2.len() {
                g[(r, c)] = a.pairing()[(r + 1, c + 1)].clone();
            }
        }
        let mut v = vec![Rational::zero(); h2.len()];
        v[i - 1] += Rational::from(x);
        v[j - 1] += Rational::from(y);
        if let Ok(r) = reflection(&g, &v) {
            let map = k3_block_map("reflection", a.clone(), a.clone(), &r, Rational::one(), Rational::one()).unwrap();
            let c = classify_map(&map).unwrap();
            prop_assert!(c.frobenius_iso && c.criteria_agree);
        }
    }
}

#[test]
fn axioms_survive_json() {
    for a in [default_k3_model(), build_exterior_model(2).unwrap(), rank_one_ns_model()] {
        let json = serde_json::to_string(&a.descriptor()).unwrap();
        let back = GradedFrobeniusAlgebra::from_descriptor(&serde_json::from_str(&json).unwrap()).unwrap();
        assert!(check_frobenius_axioms(&back).passes());
        assert_eq!(back.euler_class().unwrap(), a.euler_class().unwrap());
    }
}

#[test]
fn small_diagonal_identity_on_other_k3_forms() {
    use k3_frobenius::forms::QuadraticForm;
    use k3_frobenius::k3::{e8_minus, hyperbolic_plane};
    let u = hyperbolic_plane().form();
    let e8 = e8_minus().form();
    // NS of rank 2 with a diagonal form, the rest transcendental.
    let ns = QuadraticForm::from_i64(&[vec![4, 0], vec![0, -6]]).unwrap();
    let tr = QuadraticForm::from_i64(&[vec![2, 1], vec![1, -4]]).unwrap().direct_sum(&u).direct_sum(&e8).direct_sum(&e8);
    let a = build_k3_model(&ns, &tr).unwrap();
    assert_eq!(a.kind, ModelKind::K3 { ns_rank: 2, genuine: true });
    assert!(bv_small_diagonal_identity(&a).unwrap());
    let mut e1 = vec![Rational::zero(); 22];
    e1[0] = Rational::one();
    let mut e2 = vec![Rational::zero(); 22];
    e2[1] = Rational::one();
    let p = ck_projectors(&a, &[e1, e2], None).unwrap();
    assert!(p.check(&a).unwrap().holds());
}

#[test]
fn comultiplication_laws_on_passing_models() {
    for g in 1..=2 {
        let r = check_frobenius_axioms(&build_exterior_model(g).unwrap());
        assert!(r.passes() && r.coassociative && r.counit_law);
    }
}
