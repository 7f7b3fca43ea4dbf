use std::sync::Arc;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::forms::QuadraticForm;
use crate::linalg::RatMatrix;
use crate::rational::{q, Rational};

fn r(n: i64) -> Rational {
    Rational::from(n)
}

#[test]
fn default_model_shape() {
    let a = default_k3_model();
    assert_eq!(a.dim(), 24);
    assert_eq!(a.kind, ModelKind::K3 { ns_rank: 18, genuine: true });
    assert!(a.counit(a.unit()).is_zero());
    let pt = a.point_class().unwrap();
    assert_eq!(pt, a.basis(23));
    // h_1 · h_2 on the U block is the point.
    assert_eq!(a.mul(&a.basis(1), &a.basis(2)), pt);
}

#[test]
fn default_model_passes_axioms() {
    let report = check_frobenius_axioms(&default_k3_model());
    assert!(report.passes(), "{:?}", report.first_violation);
    assert!(report.coassociative && report.counit_law);
}

#[test]
fn trivial_algebra_passes() {
    let a = GradedFrobeniusAlgebra::new(
        "Q",
        ModelKind::Other { note: "ground field".into() },
        vec![0],
        &[(0, 0, 0, r(1))],
        vec![r(1)],
        RatMatrix::identity(1),
        0,
    )
    .unwrap();
    assert!(check_frobenius_axioms(&a).passes());
}

#[test]
fn mutations_fail() {
    let a = default_k3_model();
    let muts = mutation_models(&a);
    assert_eq!(muts.len(), 5);
    for (name, m) in muts {
        let rep = check_frobenius_axioms(&m);
        assert!(!rep.passes(), "{name}");
        assert!(rep.first_violation.is_some(), "{name}");
    }
}

#[test]
fn euler_class_is_24_points() {
    let a = default_k3_model();
    assert_eq!(euler_multiple_of_point(&a).unwrap(), Some(r(24)));
}

#[test]
fn bv_identity() {
    assert!(bv_small_diagonal_identity(&default_k3_model()).unwrap());
    assert!(bv_small_diagonal_identity(&rank_one_ns_model()).unwrap());
    let odd = with_odd_classes(&default_k3_model()).unwrap();
    assert!(!bv_small_diagonal_identity(&odd).unwrap());
}

#[test]
fn bv_needs_point() {
    let g = build_exterior_model(1).unwrap();
    assert!(g.point_class().is_some());
    let no_pt = GradedFrobeniusAlgebra::new(
        "no point",
        ModelKind::Other { note: String::new() },
        vec![0, 0],
        &[(0, 0, 0, r(1)), (0, 1, 1, r(1)), (1, 0, 1, r(1)), (1, 1, 1, r(1))],
        vec![r(1), r(0)],
        RatMatrix::identity(2),
        0,
    )
    .unwrap();
    assert!(bv_small_diagonal_identity(&no_pt).is_err());
}

#[test]
fn exterior_models() {
    let e1 = build_exterior_model(1).unwrap();
    let mut counts = [0; 3];
    for &d in e1.degrees() {
        counts[d as usize] += 1;
    }
    assert_eq!(counts, [1, 2, 1]);
    let (x, y) = (e1.basis(1), e1.basis(2));
    let xy = e1.mul(&x, &y);
    let yx: Vec<Rational> = e1.mul(&y, &x).iter().map(|c| -c).collect();
    assert_eq!(xy, yx);
    for g in 1..=2 {
        let e = build_exterior_model(g).unwrap();
        assert_eq!(e.dim(), 1 << (2 * g));
        assert!(check_frobenius_axioms(&e).passes());
    }
    assert!(build_exterior_model(0).is_err());
}

#[test]
fn identity_map_classification() {
    let a = Arc::new(default_k3_model());
    let c = classify_map(&AlgebraMap::identity(a)).unwrap();
    assert!(c.nonzero && c.unit_preserved && c.algebra_hom && c.invertible && c.orthogonal && c.frobenius_iso);
    assert_eq!(c.degree_c, Some(r(1)));
    assert!(c.criteria_agree);
}

#[test]
fn twisted_isometry_classification() {
    let a = Arc::new(default_k3_model());
    for m in [2, 3, 5] {
        let map = twisted_isometry_map(a.clone(), m, None).unwrap();
        let c = classify_map(&map).unwrap();
        assert!(c.algebra_hom && c.invertible, "m={m}");
        assert_eq!(c.degree_c, Some(r(m)));
        assert!(!c.frobenius_iso && !c.orthogonal);
        assert!(c.criteria_agree);
        assert_eq!(c.adjoint_law, Some(true));
    }
}

#[test]
fn assembled_gamma() {
    let a = Arc::new(default_k3_model());
    let id = assemble_gamma(a.clone(), &RatMatrix::identity(18), &RatMatrix::identity(4)).unwrap();
    assert_eq!(id.matrix, RatMatrix::identity(24));
    let uu = RatMatrix::from_i64(&[
        vec![0, 1, 0, 0],
        vec![1, 0, 0, 0],
        vec![0, 0, 0, 1],
        vec![0, 0, 1, 0],
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = random_isometry(&uu, 3, &mut rng);
    let map = assemble_gamma(a.clone(), &RatMatrix::identity(18), &t).unwrap();
    let c = classify_map(&map).unwrap();
    assert!(c.frobenius_iso && c.criteria_agree);
    assert_eq!(map.apply(&a.point_class().unwrap()), a.point_class().unwrap());
    // A similitude with factor 2 onto the twist is rejected.
    let twist = RatMatrix::from_i64(&[
        vec![2, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 2, 0],
        vec![0, 0, 0, 1],
    ]);
    assert!(matches!(
        assemble_gamma(a, &RatMatrix::identity(18), &twist),
        Err(crate::Error::Precondition(_))
    ));
}

#[test]
fn generated_maps_agree() {
    let a = Arc::new(default_k3_model());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let maps = generate_maps(&a, 30, &mut rng).unwrap();
    for m in &maps {
        let c = classify_map(m).unwrap();
        assert!(c.criteria_agree, "{}: {c:?}", m.label);
        if c.algebra_hom && c.nonzero {
            assert!(c.unit_preserved, "{}", m.label);
        }
        if let Some(law) = c.adjoint_law {
            assert!(law, "{}", m.label);
        }
        if m.label.starts_with("twisted") {
            assert!(c.algebra_hom && !c.frobenius_iso);
        }
    }
}

#[test]
fn dimension_mismatch() {
    let a = Arc::new(default_k3_model());
    assert!(AlgebraMap::new("bad", a.clone(), a, RatMatrix::identity(3)).is_err());
}

#[test]
fn ck_rank_one() {
    let a = rank_one_ns_model();
    let mut e = vec![r(0); 22];
    e[0] = r(1);
    let p = ck_projectors(&a, &[e], None).unwrap();
    let rep = p.check(&a).unwrap();
    assert!(rep.holds(), "{rep:?}");
    // π²_alg(h) = (1/2) h for the generator h with h² = 2.
    assert_eq!(p.pi2alg[(1, 1)], q(1, 2) * r(2));
    let nonzero = p.pi2alg.to_rows().iter().flatten().filter(|c| !c.is_zero()).count();
    assert_eq!(nonzero, 1);
}

#[test]
fn ck_default_model() {
    let a = default_k3_model();
    // e+f, e−f and the E8 coordinates are not orthogonal; use U's e±f only.
    let mut e1 = vec![r(0); 22];
    e1[0] = r(1);
    e1[1] = r(1);
    let mut e2 = vec![r(0); 22];
    e2[0] = r(1);
    e2[1] = r(-1);
    let p = ck_projectors(&a, &[e1.clone(), e2], None).unwrap();
    assert!(p.check(&a).unwrap().holds());
    let mut iso = vec![r(0); 22];
    iso[0] = r(1);
    assert!(matches!(ck_projectors(&a, &[iso], None), Err(crate::Error::Domain(_))));
}

#[test]
fn abelian_examples() {
    let two = RatMatrix::identity(2).scale(&r(2));
    let rep = av_gamma_check(1, &r(2), &two).unwrap();
    assert!(rep.frobenius_iso && rep.consistent());
    let deg2 = RatMatrix::from_i64(&[vec![2, 0], vec![0, 1]]);
    for l in [r(1), r(2), q(3, 2), r(-1)] {
        let rep = av_gamma_check(1, &l, &deg2).unwrap();
        assert!(!rep.frobenius_iso && !rep.possible && rep.consistent());
    }
    let rep = av_gamma_check(1, &r(1), &RatMatrix::identity(2)).unwrap();
    assert!(rep.frobenius_iso && rep.consistent());
    assert!(av_gamma_check(1, &r(1), &RatMatrix::zeros(2, 2)).is_err());
    assert!(av_frobenius_possible(&BigInt::from(16), 1));
    assert!(!av_frobenius_possible(&BigInt::from(2), 1));
    for g in 1..5 {
        assert!(av_frobenius_possible(&BigInt::from(1), g));
    }
}

#[test]
fn abelian_g2() {
    let f = RatMatrix::from_i64(&[vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 1, 8]]);
    let rep = av_gamma_check(2, &r(2), &f).unwrap();
    assert_eq!(rep.degree, BigInt::from(16));
    assert!(rep.frobenius_iso && rep.consistent());
}

#[test]
fn cy_examples() {
    use ScalarField::*;
    assert!(cy_scaling_solvable(3, &r(3), Rationals, false).unwrap());
    assert!(!cy_scaling_solvable(3, &(r(42) / r(14)), Rationals, true).unwrap());
    assert!(cy_scaling_solvable(3, &r(3), Reals, true).unwrap());
    assert!(!cy_scaling_solvable(4, &r(3), Rationals, false).unwrap());
    assert!(cy_scaling_solvable(4, &r(9), Rationals, false).unwrap());
    assert!(cy_scaling_solvable(3, &q(8, 27), Rationals, true).unwrap());
    assert!(cy_scaling_solvable(3, &r(0), Reals, false).is_err());
}

#[test]
fn descriptor_round_trip() {
    let a = build_exterior_model(1).unwrap();
    let json = serde_json::to_string(&a.descriptor()).unwrap();
    let d: ModelDescriptor = serde_json::from_str(&json).unwrap();
    let b = GradedFrobeniusAlgebra::from_descriptor(&d).unwrap();
    assert_eq!(b.descriptor(), a.descriptor());
}

#[test]
fn build_k3_model_rejects_degenerate() {
    let ns = QuadraticForm::from_i64(&[vec![0]]).unwrap();
    let tr = QuadraticForm::from_i64(&[vec![2]]).unwrap();
    assert!(build_k3_model(&ns, &tr).is_err());
}

#[test]
fn odd_line_model_is_frobenius() {
    let odd = with_odd_classes(&default_k3_model()).unwrap();
    let rep = check_frobenius_axioms(&odd);
    assert!(rep.passes(), "{:?}", rep.first_violation);
}
