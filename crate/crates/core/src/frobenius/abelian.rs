//! Side results for abelian varieties and Calabi–Yau scalings.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::algebra::GradedFrobeniusAlgebra;
use super::maps::{classify_map, AlgebraMap};
use super::models::{build_exterior_model, exterior_basis};
use crate::arith::is_perfect_power;
use crate::error::{domain, precondition, Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::Rational;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AvGammaReport {
    pub g: usize,
    pub lambda: Rational,
    pub degree: BigInt,
    pub degree_c: Rational,
    pub algebra_hom: bool,
    /// ᵗγ ∘ γ = deg(f)/λ^{2g} · id.
    pub adjoint_law: bool,
    pub frobenius_iso: bool,
    /// λ^{2g} = deg(f).
    pub predicted: bool,
    /// Some rational λ makes γ a Frobenius isomorphism.
    pub frobenius_for_some_lambda: bool,
    pub possible: bool,
}

impl AvGammaReport {
    pub fn consistent(&self) -> bool {
        self.algebra_hom
            && self.adjoint_law
            && self.frobenius_iso == self.predicted
            && self.frobenius_for_some_lambda == self.possible
    }
}

/// ⋀•F on the exterior model: minors of F indexed by the basis subsets.
pub fn exterior_power_map(g: usize, f: &RatMatrix) -> Result<RatMatrix> {
    if f.rows() != 2 * g || f.cols() != 2 * g {
        return Err(Error::DimensionMismatch(format!("expected a {0}x{0} matrix", 2 * g)));
    }
    let masks = exterior_basis(g);
    let n = masks.len();
    let bits = |m: u32| -> Vec<usize> { (0..2 * g).filter(|&i| m >> i & 1 == 1).collect() };
    let mut out = RatMatrix::zeros(n, n);
    for (j, &s) in masks.iter().enumerate() {
        let cols = bits(s);
        for (i, &t) in masks.iter().enumerate() {
            if t.count_ones() != s.count_ones() {
                continue;
            }
            let rows = bits(t);
            let k = rows.len();
            let minor = if k == 0 {
                Rational::one()
            } else {
                let m = RatMatrix::from_rows(
                    rows.iter().map(|&r| cols.iter().map(|&c| f[(r, c)].clone()).collect()).collect(),
                )?;
                m.det()?
            };
            out[(i, j)] = minor;
        }
    }
    Ok(out)
}

fn gamma_report(model: &Arc<GradedFrobeniusAlgebra>, g: usize, lambda: &Rational, f1: &RatMatrix, degree: &BigInt) -> Result<(AlgebraMap, bool, bool, Rational)> {
    let f = f1.scale(&lambda.recip().unwrap());
    let gamma = AlgebraMap::new("exterior power", model.clone(), model.clone(), exterior_power_map(g, &f)?)?;
    let cls = classify_map(&gamma)?;
    let expected = Rational::from_int(degree.clone()) / lambda.pow(2 * g as i32);
    let law = gamma.adjoint()?.mul(&gamma.matrix)? == RatMatrix::identity(model.dim()).scale(&expected);
    let c = cls.degree_c.clone().unwrap_or_else(Rational::zero);
    Ok((gamma, cls.algebra_hom && law, cls.frobenius_iso, c))
}

/// γ = ⋀•(f₁/λ) for an isogeny with analytic representation `f1`.
pub fn av_gamma_check(g: usize, lambda: &Rational, f1: &RatMatrix) -> Result<AvGammaReport> {
    if lambda.is_zero() {
        return domain("lambda must be nonzero");
    }
    let model = Arc::new(build_exterior_model(g)?);
    let det = f1.det()?;
    if det.is_zero() {
        return precondition("f1 is singular");
    }
    if !f1.to_rows().iter().flatten().all(Rational::is_integer) {
        return precondition("f1 must be integral");
    }
    if det.is_negative() {
        return precondition("f1 must preserve orientation (positive determinant)");
    }
    let degree = det.to_integer().unwrap();
    let (_, law, frobenius_iso, degree_c) = gamma_report(&model, g, lambda, f1, &degree)?;
    let predicted = lambda.pow(2 * g as i32) == Rational::from_int(degree.clone());
    let root = Rational::from_int(degree.clone()).exact_root(2 * g as u32);
    let frobenius_for_some_lambda = match root {
        Some(r) => gamma_report(&model, g, &r, f1, &degree)?.2,
        None => false,
    };
    Ok(AvGammaReport {
        g,
        lambda: lambda.clone(),
        possible: av_frobenius_possible(&degree, g),
        degree,
        degree_c,
        algebra_hom: law,
        adjoint_law: law,
        frobenius_iso,
        predicted,
        frobenius_for_some_lambda,
    })
}

/// Whether an isogeny of degree `deg` on a g-dimensional abelian variety
/// has the form m^{2g}.
pub fn av_frobenius_possible(deg: &BigInt, g: usize) -> bool {
    deg.is_positive() && is_perfect_power(deg, 2 * g as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarField {
    Rationals,
    Reals,
}

impl std::str::FromStr for ScalarField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rationals" | "Q" | "q" => Ok(ScalarField::Rationals),
            "reals" | "R" | "r" => Ok(ScalarField::Reals),
            _ => Err(Error::Parse(format!("unknown field {s:?}"))),
        }
    }
}

/// Solvability of b² = a^d s in nonzero a, b, with b² = 1 additionally
/// demanded for a Frobenius isomorphism.
pub fn cy_scaling_solvable(d: u32, s: &Rational, field: ScalarField, frobenius: bool) -> Result<bool> {
    if d < 3 {
        return domain("dimension must be at least 3");
    }
    if !s.is_positive() {
        return domain("s must be positive");
    }
    Ok(match (field, frobenius) {
        (ScalarField::Reals, _) => true,
        (ScalarField::Rationals, false) => d % 2 == 1 || s.is_square(),
        (ScalarField::Rationals, true) => s.exact_root(d).is_some(),
    })
}
