//! Linear maps between models and their classification.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::algebra::{mode_product_all, tensor3_eq, GradedFrobeniusAlgebra, ModelKind};
use super::models::{build_k3_model, h2_range};
use crate::error::{domain, precondition, Error, Result};
use crate::forms::QuadraticForm;
use crate::linalg::RatMatrix;
use crate::rational::Rational;

/// A linear map Γ: X → Y, as a dim Y × dim X matrix.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub label: String,
    pub source: Arc<GradedFrobeniusAlgebra>,
    pub target: Arc<GradedFrobeniusAlgebra>,
    pub matrix: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapClassification {
    pub nonzero: bool,
    pub degree_preserving: bool,
    pub unit_preserved: bool,
    pub algebra_hom: bool,
    pub invertible: bool,
    /// ε_Y(Γ o_X), the c in Γ*[Y] = c[X].
    pub degree_c: Option<Rational>,
    pub orthogonal: bool,
    pub frobenius_iso: bool,
    /// Algebra isomorphism and orthogonal.
    pub criterion_orthogonal: bool,
    /// Algebra isomorphism with degree 1.
    pub criterion_degree_one: bool,
    /// Invertible and pushes the diagonal and small diagonal forward to themselves.
    pub criterion_diagonals: bool,
    pub criteria_agree: bool,
    /// For an algebra isomorphism: ᵗΓ ∘ Γ = c · id.
    pub adjoint_law: Option<bool>,
}

impl AlgebraMap {
    pub fn new(
        label: impl Into<String>,
        source: Arc<GradedFrobeniusAlgebra>,
        target: Arc<GradedFrobeniusAlgebra>,
        matrix: RatMatrix,
    ) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, models have dimensions {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(AlgebraMap { label: label.into(), source, target, matrix })
    }

    pub fn identity(a: Arc<GradedFrobeniusAlgebra>) -> Self {
        let n = a.dim();
        AlgebraMap { label: "identity".into(), source: a.clone(), target: a, matrix: RatMatrix::identity(n) }
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x).expect("dimensions checked")
    }

    /// Pairing adjoint ᵗΓ: Y → X with β_X(ᵗΓ y, x) = β_Y(y, Γ x).
    pub fn adjoint(&self) -> Result<RatMatrix> {
        let px_inv_t = self.source.pairing_inverse_or_err()?.transpose();
        px_inv_t.mul(&self.matrix.transpose())?.mul(&self.target.pairing().transpose())
    }

    pub fn compose(&self, first: &AlgebraMap) -> Result<AlgebraMap> {
        if !Arc::ptr_eq(&first.target, &self.source) && *first.target != *self.source {
            return domain("maps are not composable");
        }
        Ok(AlgebraMap {
            label: format!("{} o {}", self.label, first.label),
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }
}

fn is_hom(m: &AlgebraMap) -> bool {
    let (x, y) = (&m.source, &m.target);
    let images: Vec<Vec<Rational>> = (0..x.dim()).map(|j| m.matrix.column(j)).collect();
    for i in 0..x.dim() {
        for j in 0..x.dim() {
            let lhs = m.apply(&x.mul(&x.basis(i), &x.basis(j)));
            let rhs = y.mul(&images[i], &images[j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn classify_map(m: &AlgebraMap) -> Result<MapClassification> {
    let (x, y) = (&m.source, &m.target);
    let nonzero = !m.matrix.is_zero();
    let degree_preserving = (0..x.dim()).all(|j| {
        (0..y.dim()).all(|i| m.matrix[(i, j)].is_zero() || y.degree(i) == x.degree(j))
    });
    let unit_preserved = m.apply(x.unit()) == *y.unit();
    let algebra_hom = is_hom(m);
    let inverse = m.matrix.inverse();
    let invertible = inverse.is_some();
    let degree_c = x.point_class().map(|o| y.counit(&m.apply(&o)));
    let adjoint = m.adjoint()?;
    let adj_gamma = adjoint.mul(&m.matrix)?;
    let orthogonal = invertible && adj_gamma == RatMatrix::identity(x.dim());
    let c_is_one = degree_c.as_ref().is_some_and(Rational::is_one);
    let frobenius_iso = algebra_hom && invertible && c_is_one;

    let iso = algebra_hom && invertible;
    let criterion_orthogonal = iso && orthogonal;
    let criterion_degree_one = iso && c_is_one;
    let criterion_diagonals = invertible && preserves_diagonals(m)?;
    let criteria_agree = criterion_orthogonal == criterion_degree_one && criterion_degree_one == criterion_diagonals;
    let adjoint_law = match (&degree_c, iso) {
        (Some(c), true) => Some(adj_gamma == RatMatrix::identity(x.dim()).scale(c)),
        _ => None,
    };
    Ok(MapClassification {
        nonzero,
        degree_preserving,
        unit_preserved,
        algebra_hom,
        invertible,
        degree_c,
        orthogonal,
        frobenius_iso,
        criterion_orthogonal,
        criterion_degree_one,
        criterion_diagonals,
        criteria_agree,
        adjoint_law,
    })
}

/// (Γ⊗Γ)[Δ_X] = [Δ_Y] and (Γ⊗Γ⊗Γ)[δ_X] = [δ_Y].
pub fn preserves_diagonals(m: &AlgebraMap) -> Result<bool> {
    let dx = m.source.diagonal_class()?;
    let dy = m.target.diagonal_class()?;
    let pushed = m.matrix.mul(&dx)?.mul(&m.matrix.transpose())?;
    if pushed != dy {
        return Ok(false);
    }
    let sx = m.source.small_diagonal()?;
    let sy = m.target.small_diagonal()?;
    Ok(tensor3_eq(&mode_product_all(&sx, &m.matrix), &sy))
}

fn k3_blocks(a: &GradedFrobeniusAlgebra) -> Result<(usize, RatMatrix)> {
    let ModelKind::K3 { ns_rank, .. } = a.kind else {
        return domain("a K3-type model is required");
    };
    let r = h2_range(a);
    let mut g = RatMatrix::zeros(r.len(), r.len());
    for i in 0..r.len() {
        for j in 0..r.len() {
            g[(i, j)] = a.pairing()[(i + 1, j + 1)].clone();
        }
    }
    Ok((ns_rank, g))
}

fn sub_block(g: &RatMatrix, from: usize, len: usize) -> RatMatrix {
    let mut b = RatMatrix::zeros(len, len);
    for i in 0..len {
        for j in 0..len {
            b[(i, j)] = g[(from + i, from + j)].clone();
        }
    }
    b
}

/// Block map 1 ↦ 1, H² ↦ H² by `h2`, and pt ↦ `top` · pt.
pub fn k3_block_map(
    label: &str,
    source: Arc<GradedFrobeniusAlgebra>,
    target: Arc<GradedFrobeniusAlgebra>,
    h2: &RatMatrix,
    bottom: Rational,
    top: Rational,
) -> Result<AlgebraMap> {
    let n = source.dim();
    if target.dim() != n || h2.rows() != n - 2 || h2.cols() != n - 2 {
        return Err(Error::DimensionMismatch("H² block does not fit the models".into()));
    }
    let mut m = RatMatrix::zeros(n, n);
    m[(0, 0)] = bottom;
    m[(n - 1, n - 1)] = top;
    for i in 0..n - 2 {
        for j in 0..n - 2 {
            m[(i + 1, j + 1)] = h2[(i, j)].clone();
        }
    }
    AlgebraMap::new(label, source, target, m)
}

/// Γ = o × S′ + M + T + S × o′ on a K3-type model, where `m` acts on NS
/// and `t` on the transcendental part.
pub fn assemble_gamma(a: Arc<GradedFrobeniusAlgebra>, m: &RatMatrix, t: &RatMatrix) -> Result<AlgebraMap> {
    let (ns_rank, g) = k3_blocks(&a)?;
    let tr_rank = g.rows() - ns_rank;
    if m.rows() != ns_rank || m.cols() != ns_rank || t.rows() != tr_rank || t.cols() != tr_rank {
        return Err(Error::DimensionMismatch(format!(
            "expected {ns_rank}x{ns_rank} and {tr_rank}x{tr_rank} blocks"
        )));
    }
    let g_ns = sub_block(&g, 0, ns_rank);
    let g_tr = sub_block(&g, ns_rank, tr_rank);
    if m.transpose().mul(&g_ns)?.mul(m)? != g_ns {
        return precondition("NS block is not an isometry");
    }
    if t.transpose().mul(&g_tr)?.mul(t)? != g_tr {
        return precondition("transcendental block is not an isometry");
    }
    let h2 = RatMatrix::block_diag(&[m, t]);
    k3_block_map("assembled", a.clone(), a, &h2, Rational::one(), Rational::one())
}

/// Reflection x ↦ x − 2(x,v)/(v,v) v in a form with Gram matrix `g`.
pub fn reflection(g: &RatMatrix, v: &[Rational]) -> Result<RatMatrix> {
    let gv = g.mul_vec(v)?;
    let vv: Rational = v.iter().zip(&gv).map(|(a, b)| a * b).sum();
    if vv.is_zero() {
        return domain("cannot reflect in an isotropic vector");
    }
    let n = v.len();
    let f = Rational::from(2) / &vv;
    let mut r = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let d = &f * &v[i] * &gv[j];
            if !d.is_zero() {
                r[(i, j)] -= d;
            }
        }
    }
    Ok(r)
}

/// Random product of reflections in short integer vectors.
pub fn random_isometry(g: &RatMatrix, reflections: usize, rng: &mut impl Rng) -> RatMatrix {
    let n = g.rows();
    let mut out = RatMatrix::identity(n);
    let mut made = 0;
    while made < reflections {
        let mut v = vec![Rational::zero(); n];
        for _ in 0..rng.gen_range(1..=2) {
            v[rng.gen_range(0..n)] = Rational::from(rng.gen_range(-2i64..=2));
        }
        if let Ok(r) = reflection(g, &v) {
            out = r.mul(&out).unwrap();
            made += 1;
        }
    }
    out
}

/// The map of the twisted-isometry construction: identity on H² into the
/// model whose H² form is scaled by `m`, with pt ↦ m pt.
pub fn twisted_isometry_map(a: Arc<GradedFrobeniusAlgebra>, m: i64, h2: Option<&RatMatrix>) -> Result<AlgebraMap> {
    if m <= 0 {
        return domain("twist must be positive");
    }
    let (ns_rank, g) = k3_blocks(&a)?;
    let mq = Rational::from(m);
    let ns = QuadraticForm::new(sub_block(&g, 0, ns_rank).scale(&mq))?;
    let tr = QuadraticForm::new(sub_block(&g, ns_rank, g.rows() - ns_rank).scale(&mq))?;
    let target = Arc::new(build_k3_model(&ns, &tr)?);
    let id = RatMatrix::identity(g.rows());
    let block = h2.unwrap_or(&id);
    k3_block_map(&format!("twisted isometry m={m}"), a, target, block, Rational::one(), mq)
}

/// A mixed family of maps on a K3-type model, deterministic given `rng`.
pub fn generate_maps(a: &Arc<GradedFrobeniusAlgebra>, count: usize, rng: &mut impl Rng) -> Result<Vec<AlgebraMap>> {
    let (_, g) = k3_blocks(a)?;
    let r = g.rows();
    let n = a.dim();
    let one = Rational::one();
    let mut out = Vec::with_capacity(count);
    let mut i = 0;
    while out.len() < count {
        let kind = i % 10;
        i += 1;
        let map = match kind {
            0 => AlgebraMap::identity(a.clone()),
            1 | 2 => {
                let iso = random_isometry(&g, rng.gen_range(1..=3), rng);
                k3_block_map("isometry", a.clone(), a.clone(), &iso, one.clone(), one.clone())?
            }
            3 => {
                let m = [2, 3, 5][rng.gen_range(0..3)];
                let iso = random_isometry(&g, rng.gen_range(0..=2), rng);
                twisted_isometry_map(a.clone(), m, Some(&iso))?
            }
            4 => {
                // x ↦ t^{deg/2} x is an algebra automorphism with c = t².
                let t = Rational::from([-1i64, 2, -2, 3][rng.gen_range(0..4)]);
                let iso = random_isometry(&g, rng.gen_range(0..=1), rng);
                k3_block_map("graded scaling", a.clone(), a.clone(), &iso.scale(&t), one.clone(), &t * &t)?
            }
            5 => {
                let lambda = Rational::from([-1i64, 2, 3][rng.gen_range(0..3)]);
                AlgebraMap::new("scalar", a.clone(), a.clone(), RatMatrix::identity(n).scale(&lambda))?
            }
            6 => {
                // Kill a random H² coordinate.
                let mut h2 = RatMatrix::identity(r);
                let k = rng.gen_range(0..r);
                h2[(k, k)] = Rational::zero();
                k3_block_map("projection", a.clone(), a.clone(), &h2, one.clone(), one.clone())?
            }
            7 => {
                let mut m = RatMatrix::identity(n);
                m[(0, 0)] = Rational::zero();
                m[(n - 1, n - 1)] = Rational::zero();
                m[(0, n - 1)] = one.clone();
                m[(n - 1, 0)] = one.clone();
                AlgebraMap::new("unit-point swap", a.clone(), a.clone(), m)?
            }
            8 => {
                let iso = random_isometry(&g, rng.gen_range(1..=2), rng);
                k3_block_map("isometry without point", a.clone(), a.clone(), &iso, one.clone(), Rational::zero())?
            }
            _ => {
                let iso = random_isometry(&g, rng.gen_range(1..=2), rng);
                let m = [2, 3, 5][rng.gen_range(0..3)];
                twisted_isometry_map(a.clone(), m, Some(&iso))?
            }
        };
        out.push(map);
    }
    Ok(out)
}
