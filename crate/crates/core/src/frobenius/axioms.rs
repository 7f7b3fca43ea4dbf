//! Exhaustive verification of the Frobenius-algebra axioms.

use serde::Serialize;

use super::algebra::{axpy, is_zero_vec, koszul, GradedFrobeniusAlgebra};
use crate::linalg::RatMatrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    /// Basis indices exhibiting the failure.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub dim: usize,
    pub unit: bool,
    pub graded: bool,
    pub associative: bool,
    pub super_commutative: bool,
    pub pairing_nondegenerate: bool,
    /// β(x, y) = ε(x · y).
    pub frobenius_pairing: bool,
    /// (μ ⊗ id)(id ⊗ δ) = δ ∘ μ = (id ⊗ μ)(δ ⊗ id).
    pub frobenius_condition: bool,
    pub coassociative: bool,
    pub counit_law: bool,
    pub first_violation: Option<Violation>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.first_violation.is_none()
    }
}

struct Recorder {
    first: Option<Violation>,
}

impl Recorder {
    fn check(&mut self, axiom: &str, ok: bool, witness: impl FnOnce() -> Vec<usize>) -> bool {
        if !ok && self.first.is_none() {
            self.first = Some(Violation { axiom: axiom.into(), witness: witness() });
        }
        ok
    }
}

fn find2(n: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
    for i in 0..n {
        for j in 0..n {
            if bad(i, j) {
                return Some(vec![i, j]);
            }
        }
    }
    None
}

pub fn check_frobenius_axioms(a: &GradedFrobeniusAlgebra) -> AxiomReport {
    let n = a.dim();
    let mut rec = Recorder { first: None };

    let unit_bad = (0..n).find(|&i| {
        let e = a.basis(i);
        a.mul(a.unit(), &e) != e || a.mul(&e, a.unit()) != e
    });
    let unit = rec.check("unit", unit_bad.is_none(), || vec![unit_bad.unwrap()]);

    let graded_bad = find2(n, |i, j| {
        a.basis_product(i, j).iter().any(|(k, _)| a.degree(*k) != a.degree(i) + a.degree(j))
    });
    let graded = rec.check("graded", graded_bad.is_none(), || graded_bad.clone().unwrap());

    let mut assoc_bad = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let ij = a.mul(&a.basis(i), &a.basis(j));
            for k in 0..n {
                let ek = a.basis(k);
                let left = a.mul(&ij, &ek);
                let jk = a.mul(&a.basis(j), &ek);
                let right = a.mul(&a.basis(i), &jk);
                if left != right {
                    assoc_bad = Some(vec![i, j, k]);
                    break 'outer;
                }
            }
        }
    }
    let associative = rec.check("associativity", assoc_bad.is_none(), || assoc_bad.clone().unwrap());

    let comm_bad = find2(n, |i, j| {
        let s = koszul(a.degree(i), a.degree(j));
        let mut ij = a.mul(&a.basis(i), &a.basis(j));
        let ji = a.mul(&a.basis(j), &a.basis(i));
        axpy(&mut ij, &-s, &ji);
        !is_zero_vec(&ij)
    });
    let super_commutative = rec.check("super-commutativity", comm_bad.is_none(), || comm_bad.clone().unwrap());

    let pairing_nondegenerate = rec.check("pairing nondegenerate", a.pairing_inverse().is_some(), Vec::new);

    let eps = a.counit_vector();
    let fp_bad = find2(n, |i, j| {
        let prod = a.mul(&a.basis(i), &a.basis(j));
        let e: Rational = prod.iter().zip(&eps).map(|(x, y)| x * y).sum();
        e != a.pairing()[(i, j)]
    });
    let frobenius_pairing = rec.check("frobenius pairing", fp_bad.is_none(), || fp_bad.clone().unwrap());

    let (frobenius_condition, coassociative, counit_law) = if pairing_nondegenerate {
        comultiplication_axioms(a, &mut rec, &eps)
    } else {
        (false, false, false)
    };

    AxiomReport {
        dim: n,
        unit,
        graded,
        associative,
        super_commutative,
        pairing_nondegenerate,
        frobenius_pairing,
        frobenius_condition,
        coassociative,
        counit_law,
        first_violation: rec.first,
    }
}

/// (μ ⊗ id)(x ⊗ T) for T ∈ A ⊗ A.
fn mul_left_slot(a: &GradedFrobeniusAlgebra, x: &[Rational], t: &RatMatrix) -> RatMatrix {
    let n = a.dim();
    let mut out = RatMatrix::zeros(n, n);
    for p in 0..n {
        let xp = a.mul(x, &a.basis(p));
        if is_zero_vec(&xp) {
            continue;
        }
        for q in 0..n {
            let c = &t[(p, q)];
            if c.is_zero() {
                continue;
            }
            for (r, v) in xp.iter().enumerate() {
                if !v.is_zero() {
                    out[(r, q)] += c * v;
                }
            }
        }
    }
    out
}

/// (id ⊗ μ)(T ⊗ y) for T ∈ A ⊗ A.
fn mul_right_slot(a: &GradedFrobeniusAlgebra, t: &RatMatrix, y: &[Rational]) -> RatMatrix {
    let n = a.dim();
    let mut out = RatMatrix::zeros(n, n);
    for q in 0..n {
        let qy = a.mul(&a.basis(q), y);
        if is_zero_vec(&qy) {
            continue;
        }
        for p in 0..n {
            let c = &t[(p, q)];
            if c.is_zero() {
                continue;
            }
            for (r, v) in qy.iter().enumerate() {
                if !v.is_zero() {
                    out[(p, r)] += c * v;
                }
            }
        }
    }
    out
}

fn comultiplication_axioms(a: &GradedFrobeniusAlgebra, rec: &mut Recorder, eps: &[Rational]) -> (bool, bool, bool) {
    let n = a.dim();
    let deltas: Vec<RatMatrix> = (0..n).map(|k| a.comultiply(&a.basis(k)).unwrap()).collect();
    let delta_of = |x: &[Rational]| {
        let mut out = RatMatrix::zeros(n, n);
        for (k, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&deltas[k].scale(c)).unwrap();
            }
        }
        out
    };

    let frob_bad = find2(n, |i, j| {
        let (ei, ej) = (a.basis(i), a.basis(j));
        let mid = delta_of(&a.mul(&ei, &ej));
        mid != mul_left_slot(a, &ei, &deltas[j]) || mid != mul_right_slot(a, &deltas[i], &ej)
    });
    let frobenius_condition = rec.check("frobenius condition", frob_bad.is_none(), || frob_bad.clone().unwrap());

    let mut coassoc_bad = None;
    for k in 0..n {
        let d = &deltas[k];
        // (δ ⊗ id)δ and (id ⊗ δ)δ, flattened to (p, q, r).
        let mut left = vec![Rational::zero(); n * n * n];
        let mut right = vec![Rational::zero(); n * n * n];
        for p in 0..n {
            for q in 0..n {
                let c = &d[(p, q)];
                if c.is_zero() {
                    continue;
                }
                for x in 0..n {
                    for y in 0..n {
                        let dl = &deltas[p][(x, y)];
                        if !dl.is_zero() {
                            left[(x * n + y) * n + q] += c * dl;
                        }
                        let dr = &deltas[q][(x, y)];
                        if !dr.is_zero() {
                            right[(p * n + x) * n + y] += c * dr;
                        }
                    }
                }
            }
        }
        if left != right {
            coassoc_bad = Some(vec![k]);
            break;
        }
    }
    let coassociative = rec.check("coassociativity", coassoc_bad.is_none(), || coassoc_bad.clone().unwrap());

    let counit_bad = (0..n).find(|&k| {
        let d = &deltas[k];
        let e = a.basis(k);
        let left: Vec<Rational> = (0..n).map(|q| (0..n).map(|p| &eps[p] * &d[(p, q)]).sum()).collect();
        let right: Vec<Rational> = (0..n).map(|p| (0..n).map(|q| &d[(p, q)] * &eps[q]).sum()).collect();
        left != e || right != e
    });
    let counit_law = rec.check("counit", counit_bad.is_none(), || vec![counit_bad.unwrap()]);

    (frobenius_condition, coassociative, counit_law)
}
