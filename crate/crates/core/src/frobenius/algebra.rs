//! Finite-dimensional graded Frobenius algebras given by structure constants.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::Rational;

pub type Vector = Vec<Rational>;

/// Sparse element of A ⊗ A ⊗ A.
pub type Tensor3 = HashMap<(usize, usize, usize), Rational>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelKind {
    /// H⁰ ⊕ H² ⊕ H⁴ with H² = NS ⊕ T; `genuine` when H² has rank 22 and
    /// signature (3, 19).
    K3 { ns_rank: usize, genuine: bool },
    Exterior { g: usize },
    /// Anything else, including deliberately broken models.
    Other { note: String },
}

/// A graded algebra with unit and pairing, stored as sparse structure
/// constants `e_i · e_j = Σ_k c_ijk e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFrobeniusAlgebra {
    pub label: String,
    pub kind: ModelKind,
    degrees: Vec<u32>,
    mult: Vec<Vec<(usize, Rational)>>,
    unit: Vector,
    pairing: RatMatrix,
    pairing_inv: Option<RatMatrix>,
    frobenius_degree: u32,
}

/// JSON form of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub degrees: Vec<u32>,
    /// Triples `[i, j, k, c]` meaning `e_i · e_j` has `c` on `e_k`.
    pub mult: Vec<(usize, usize, usize, Rational)>,
    pub pairing: RatMatrix,
    pub frobenius_degree: u32,
    /// Defaults to the first basis vector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vector>,
}

pub(crate) fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub(crate) fn basis_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub(crate) fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub(crate) fn koszul(a: u32, b: u32) -> Rational {
    if (a * b) % 2 == 1 {
        Rational::from(-1)
    } else {
        Rational::one()
    }
}

impl GradedFrobeniusAlgebra {
    /// Builds a model without checking any axiom; see
    /// [`check_frobenius_axioms`](crate::frobenius::check_frobenius_axioms).
    pub fn new(
        label: impl Into<String>,
        kind: ModelKind,
        degrees: Vec<u32>,
        mult: &[(usize, usize, usize, Rational)],
        unit: Vector,
        pairing: RatMatrix,
        frobenius_degree: u32,
    ) -> Result<Self> {
        let n = degrees.len();
        if unit.len() != n || pairing.rows() != n || pairing.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} basis degrees, unit of length {}, {}x{} pairing",
                n,
                unit.len(),
                pairing.rows(),
                pairing.cols()
            )));
        }
        let mut table: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n * n];
        for (i, j, k, c) in mult {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::DimensionMismatch(format!("structure constant ({i}, {j}, {k}) out of range")));
            }
            if c.is_zero() {
                continue;
            }
            let slot = &mut table[i * n + j];
            match slot.iter_mut().find(|(kk, _)| kk == k) {
                Some((_, v)) => *v += c,
                None => slot.push((*k, c.clone())),
            }
        }
        for slot in &mut table {
            slot.retain(|(_, c)| !c.is_zero());
            slot.sort_by_key(|(k, _)| *k);
        }
        let pairing_inv = pairing.inverse();
        Ok(GradedFrobeniusAlgebra {
            label: label.into(),
            kind,
            degrees,
            mult: table,
            unit,
            pairing,
            pairing_inv,
            frobenius_degree,
        })
    }

    pub fn from_descriptor(d: &ModelDescriptor) -> Result<Self> {
        let n = d.degrees.len();
        let unit = d.unit.clone().unwrap_or_else(|| if n > 0 { basis_vec(n, 0) } else { Vec::new() });
        Self::new(
            d.label.clone().unwrap_or_else(|| "custom".into()),
            ModelKind::Other { note: "loaded from descriptor".into() },
            d.degrees.clone(),
            &d.mult,
            unit,
            d.pairing.clone(),
            d.frobenius_degree,
        )
    }

    pub fn descriptor(&self) -> ModelDescriptor {
        let n = self.dim();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.basis_product(i, j) {
                    mult.push((i, j, *k, c.clone()));
                }
            }
        }
        ModelDescriptor {
            label: Some(self.label.clone()),
            degrees: self.degrees.clone(),
            mult,
            pairing: self.pairing.clone(),
            frobenius_degree: self.frobenius_degree,
            unit: Some(self.unit.clone()),
        }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn frobenius_degree(&self) -> u32 {
        self.frobenius_degree
    }

    /// Top cohomological degree 2d.
    pub fn top_degree(&self) -> u32 {
        2 * self.frobenius_degree
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn pairing(&self) -> &RatMatrix {
        &self.pairing
    }

    pub fn pairing_inverse(&self) -> Option<&RatMatrix> {
        self.pairing_inv.as_ref()
    }

    pub(crate) fn pairing_inverse_or_err(&self) -> Result<&RatMatrix> {
        self.pairing_inv.as_ref().ok_or_else(|| Error::Degenerate {
            radical_dim: self.dim() - self.pairing.rank(),
        })
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.mult[i * self.dim() + j]
    }

    pub fn basis(&self, i: usize) -> Vector {
        basis_vec(self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        zero_vec(self.dim())
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.basis_product(i, j) {
                    out[*k] += &c * s;
                }
            }
        }
        out
    }

    /// `β(x, y) = xᵀ P y`.
    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.pairing.bilinear(x, y).expect("dimensions match")
    }

    /// Counit `ε(x) = β(η, x)`.
    pub fn counit(&self, x: &[Rational]) -> Rational {
        self.pair(&self.unit, x)
    }

    pub fn counit_vector(&self) -> Vector {
        self.pairing.transpose().mul_vec(&self.unit).unwrap()
    }

    /// The top-degree class with counit 1, when the top degree is one-dimensional.
    pub fn point_class(&self) -> Option<Vector> {
        let top: Vec<usize> = (0..self.dim()).filter(|&i| self.degrees[i] == self.top_degree()).collect();
        if top.len() != 1 {
            return None;
        }
        let e = self.basis(top[0]);
        let c = self.counit(&e).recip()?;
        Some(e.iter().map(|x| x * &c).collect())
    }

    /// Copairing Σ (P⁻¹)_ij e_i ⊗ e_j as a dense dim×dim matrix.
    pub fn copairing(&self) -> Result<RatMatrix> {
        Ok(self.pairing_inverse_or_err()?.clone())
    }

    /// Diagonal class [Δ] = Σ d_ab e_a ⊗ e_b, characterised by
    /// (β ⊗ β)(e_x ⊗ e_y, [Δ]) = β(e_x, e_y).
    pub fn diagonal_class(&self) -> Result<RatMatrix> {
        Ok(self.pairing_inverse_or_err()?.transpose())
    }

    /// Comultiplication δ(x) = Σ (P⁻¹)_ij (x · e_i) ⊗ e_j, dense dim×dim.
    pub fn comultiply(&self, x: &[Rational]) -> Result<RatMatrix> {
        let n = self.dim();
        let pinv = self.pairing_inverse_or_err()?;
        let mut out = RatMatrix::zeros(n, n);
        for i in 0..n {
            let xe = self.mul(x, &self.basis(i));
            if xe.iter().all(Rational::is_zero) {
                continue;
            }
            for j in 0..n {
                let c = &pinv[(i, j)];
                if c.is_zero() {
                    continue;
                }
                for (a, v) in xe.iter().enumerate() {
                    if !v.is_zero() {
                        out[(a, j)] += c * v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// μ([Δ]); equals χ · o for a surface.
    pub fn euler_class(&self) -> Result<Vector> {
        let d = self.diagonal_class()?;
        let mut out = self.zero();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                if d[(a, b)].is_zero() {
                    continue;
                }
                for (k, c) in self.basis_product(a, b) {
                    out[*k] += &d[(a, b)] * c;
                }
            }
        }
        Ok(out)
    }

    /// Triple form τ(x, y, z) = ε(xyz) on basis triples, sparse.
    pub fn triple_form(&self) -> Tensor3 {
        let n = self.dim();
        let eps = self.counit_vector();
        let mut out = Tensor3::new();
        for x in 0..n {
            for y in 0..n {
                let xy = self.basis_product(x, y);
                if xy.is_empty() {
                    continue;
                }
                for z in 0..n {
                    let mut t = Rational::zero();
                    for (k, c) in xy {
                        for (l, s) in self.basis_product(*k, z) {
                            if !eps[*l].is_zero() {
                                t += c * s * &eps[*l];
                            }
                        }
                    }
                    if !t.is_zero() {
                        out.insert((x, y, z), t);
                    }
                }
            }
        }
        out
    }

    /// Small diagonal [δ] ∈ A⊗A⊗A, the pairing-dual of the triple form.
    pub fn small_diagonal(&self) -> Result<Tensor3> {
        let pinv = self.pairing_inverse_or_err()?.clone();
        Ok(mode_product_all(&self.triple_form(), &pinv))
    }

    pub fn left_multiplication(&self, x: &[Rational]) -> RatMatrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(x, &self.basis(j))).collect();
        RatMatrix::from_columns(&cols).unwrap()
    }

    pub fn is_homogeneous(&self, x: &[Rational]) -> Option<u32> {
        let mut deg = None;
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                match deg {
                    None => deg = Some(self.degrees[i]),
                    Some(d) if d != self.degrees[i] => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    pub(crate) fn set_product(&mut self, i: usize, j: usize, value: Vec<(usize, Rational)>) {
        let n = self.dim();
        self.mult[i * n + j] = value.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
}

/// Applies `m` on every slot: t'_{abc} = Σ m_ax m_by m_cz t_xyz.
pub fn mode_product_all(t: &Tensor3, m: &RatMatrix) -> Tensor3 {
    let cols: Vec<Vec<(usize, Rational)>> = (0..m.cols())
        .map(|j| (0..m.rows()).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)].clone())).collect())
        .collect();
    let mut cur = t.clone();
    for slot in 0..3 {
        let mut next = Tensor3::new();
        for (&(x, y, z), v) in &cur {
            let src = [x, y, z][slot];
            for (i, c) in &cols[src] {
                let key = match slot {
                    0 => (*i, y, z),
                    1 => (x, *i, z),
                    _ => (x, y, *i),
                };
                *next.entry(key).or_default() += v * c;
            }
        }
        next.retain(|_, v| !v.is_zero());
        cur = next;
    }
    cur
}

pub(crate) fn tensor3_eq(a: &Tensor3, b: &Tensor3) -> bool {
    a.len() == b.len() && a.iter().all(|(k, v)| b.get(k) == Some(v))
}

pub(crate) fn is_zero_vec(x: &[Rational]) -> bool {
    x.iter().all(Rational::is_zero)
}
