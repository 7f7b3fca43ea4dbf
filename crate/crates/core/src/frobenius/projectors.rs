//! Chow–Künneth projectors and the small-diagonal identity on surface models.

use serde::Serialize;

use super::algebra::{tensor3_eq, GradedFrobeniusAlgebra, Tensor3, Vector};
use super::models::h2_range;
use crate::error::{domain, precondition, Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CKProjectors {
    pub pi0: RatMatrix,
    pub pi2alg: RatMatrix,
    pub pi2tr: RatMatrix,
    pub pi4: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CKReport {
    pub idempotent: bool,
    pub orthogonal: bool,
    pub complete: bool,
    pub alg_self_adjoint: bool,
    pub tr_self_adjoint: bool,
    pub tr_kills_point: bool,
}

impl CKReport {
    pub fn holds(&self) -> bool {
        self.idempotent
            && self.orthogonal
            && self.complete
            && self.alg_self_adjoint
            && self.tr_self_adjoint
            && self.tr_kills_point
    }
}

fn endomorphism(a: &GradedFrobeniusAlgebra, f: impl Fn(&[Rational]) -> Vector) -> RatMatrix {
    let cols: Vec<Vector> = (0..a.dim()).map(|j| f(&a.basis(j))).collect();
    RatMatrix::from_columns(&cols).unwrap()
}

fn adjoint(a: &GradedFrobeniusAlgebra, m: &RatMatrix) -> Result<RatMatrix> {
    let p = a.pairing();
    a.pairing_inverse_or_err()?.transpose().mul(&m.transpose())?.mul(&p.transpose())
}

/// Projectors π⁰ = o × S, π⁴ = S × o, π²_alg = Σ E_i × E_i / (E_i·E_i) and
/// π²_tr = id − π⁰ − π²_alg − π⁴.
///
/// `ns_basis` is given in degree-2 coordinates. `o` defaults to the point
/// class and must have ε(o) = 1.
pub fn ck_projectors(a: &GradedFrobeniusAlgebra, ns_basis: &[Vector], o: Option<Vector>) -> Result<CKProjectors> {
    let n = a.dim();
    let h2 = h2_range(a);
    let o = match o {
        Some(o) => o,
        None => a.point_class().ok_or_else(|| Error::Domain("model has no point class".into()))?,
    };
    if o.len() != n {
        return Err(Error::DimensionMismatch(format!("point class of length {}, model of dimension {n}", o.len())));
    }
    if !a.counit(&o).is_one() {
        return precondition("point class must have counit 1");
    }
    let mut full = Vec::with_capacity(ns_basis.len());
    for (i, e) in ns_basis.iter().enumerate() {
        if e.len() != h2.len() {
            return Err(Error::DimensionMismatch(format!("NS vector {i} has length {}", e.len())));
        }
        let mut v = a.zero();
        for (k, c) in e.iter().enumerate() {
            v[h2.start + k] = c.clone();
        }
        let self_pair = a.pair(&v, &v);
        if self_pair.is_zero() {
            return domain(format!("NS vector {i} is isotropic"));
        }
        for (j, w) in full.iter().enumerate() {
            let (w, _): &(Vector, Rational) = w;
            if !a.pair(&v, w).is_zero() {
                return precondition(format!("NS vectors {j} and {i} are not orthogonal"));
            }
        }
        full.push((v, self_pair));
    }
    let unit = a.unit().clone();
    let pi0 = endomorphism(a, |x| {
        let c = a.counit(&a.mul(x, &o));
        unit.iter().map(|u| u * &c).collect()
    });
    let pi4 = endomorphism(a, |x| {
        let c = a.counit(x);
        o.iter().map(|u| u * &c).collect()
    });
    let pi2alg = endomorphism(a, |x| {
        let mut out = a.zero();
        for (e, ee) in &full {
            let c = a.pair(x, e) / ee;
            for (k, v) in e.iter().enumerate() {
                if !v.is_zero() {
                    out[k] += &c * v;
                }
            }
        }
        out
    });
    let pi2tr = RatMatrix::identity(n).sub(&pi0)?.sub(&pi2alg)?.sub(&pi4)?;
    Ok(CKProjectors { pi0, pi2alg, pi2tr, pi4 })
}

impl CKProjectors {
    pub fn all(&self) -> [&RatMatrix; 4] {
        [&self.pi0, &self.pi2alg, &self.pi2tr, &self.pi4]
    }

    pub fn check(&self, a: &GradedFrobeniusAlgebra) -> Result<CKReport> {
        let ps = self.all();
        let n = a.dim();
        let mut idempotent = true;
        let mut orthogonal = true;
        for (i, p) in ps.iter().enumerate() {
            idempotent &= p.mul(p)? == **p;
            for (j, q) in ps.iter().enumerate() {
                if i != j {
                    orthogonal &= p.mul(q)?.is_zero();
                }
            }
        }
        let sum = ps.iter().skip(1).try_fold(ps[0].clone(), |acc, p| acc.add(p))?;
        let o = a.point_class().ok_or_else(|| Error::Domain("model has no point class".into()))?;
        Ok(CKReport {
            idempotent,
            orthogonal,
            complete: sum == RatMatrix::identity(n),
            alg_self_adjoint: adjoint(a, &self.pi2alg)? == self.pi2alg,
            tr_self_adjoint: adjoint(a, &self.pi2tr)? == self.pi2tr,
            tr_kills_point: self.pi2tr.mul_vec(&o)?.iter().all(Rational::is_zero),
        })
    }
}

/// Right-hand side [Δ]⊗o + σ₁₃ + σ₂₃ − o⊗o⊗1 − o⊗1⊗o − 1⊗o⊗o.
pub fn bv_expected_tensor(a: &GradedFrobeniusAlgebra, o: &[Rational]) -> Result<Tensor3> {
    let d = a.diagonal_class()?;
    let n = a.dim();
    let one = a.unit();
    let mut t = Tensor3::new();
    let mut add = |k: (usize, usize, usize), v: Rational| {
        if !v.is_zero() {
            *t.entry(k).or_default() += v;
        }
    };
    let os: Vec<(usize, &Rational)> = o.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    for x in 0..n {
        for y in 0..n {
            let dxy = &d[(x, y)];
            if dxy.is_zero() {
                continue;
            }
            for &(k, ok) in &os {
                add((x, y, k), dxy * ok);
                add((x, k, y), dxy * ok);
                add((k, x, y), dxy * ok);
            }
        }
    }
    for &(i, oi) in &os {
        for &(j, oj) in &os {
            for (k, uk) in one.iter().enumerate() {
                if uk.is_zero() {
                    continue;
                }
                let v = -(oi * oj * uk);
                add((i, j, k), v.clone());
                add((i, k, j), v.clone());
                add((k, i, j), v);
            }
        }
    }
    t.retain(|_, v| !v.is_zero());
    Ok(t)
}

/// Whether the small diagonal decomposes through [Δ] and the point class.
pub fn bv_small_diagonal_identity(a: &GradedFrobeniusAlgebra) -> Result<bool> {
    let o = a.point_class().ok_or_else(|| Error::Domain("model has no point class o".into()))?;
    let lhs = a.small_diagonal()?;
    let rhs = bv_expected_tensor(a, &o)?;
    Ok(tensor3_eq(&lhs, &rhs))
}

/// Euler class μ([Δ]) expressed as a multiple of o, if it is one.
pub fn euler_multiple_of_point(a: &GradedFrobeniusAlgebra) -> Result<Option<Rational>> {
    let o = a.point_class().ok_or_else(|| Error::Domain("model has no point class o".into()))?;
    let e = a.euler_class()?;
    let k = o.iter().position(|c| !c.is_zero()).unwrap();
    let c = &e[k] / &o[k];
    Ok(e.iter().zip(&o).all(|(x, y)| *x == &c * y).then_some(c))
}
