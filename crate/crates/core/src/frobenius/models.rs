//! Concrete models: K3 cohomology, exterior algebras, and broken variants.

use super::algebra::{basis_vec, GradedFrobeniusAlgebra, ModelKind};
use crate::error::{Error, Result};
use crate::forms::QuadraticForm;
use crate::k3::{e8_minus, hyperbolic_plane, Lattice};
use crate::linalg::RatMatrix;
use crate::rational::Rational;

/// H⁰ ⊕ H² ⊕ H⁴ with H² = `ns ⊕ tr`; basis `1, h_1, …, h_r, pt`.
pub fn build_k3_model(ns: &QuadraticForm, tr: &QuadraticForm) -> Result<GradedFrobeniusAlgebra> {
    let h2 = ns.direct_sum(tr);
    let g = h2.gram();
    let r = h2.dim();
    if g.det()?.is_zero() {
        return Err(Error::Degenerate { radical_dim: r - g.rank() });
    }
    let n = r + 2;
    let pt = r + 1;
    let one = Rational::one();
    let mut mult = Vec::new();
    for i in 0..n {
        mult.push((0, i, i, one.clone()));
        if i != 0 {
            mult.push((i, 0, i, one.clone()));
        }
    }
    for i in 0..r {
        for j in 0..r {
            if !g[(i, j)].is_zero() {
                mult.push((i + 1, j + 1, pt, g[(i, j)].clone()));
            }
        }
    }
    let mut pairing = RatMatrix::zeros(n, n);
    pairing[(0, pt)] = one.clone();
    pairing[(pt, 0)] = one;
    for i in 0..r {
        for j in 0..r {
            pairing[(i + 1, j + 1)] = g[(i, j)].clone();
        }
    }
    let mut degrees = vec![2; n];
    degrees[0] = 0;
    degrees[pt] = 4;
    let genuine = r == 22 && h2.signature()? == (3, 19);
    GradedFrobeniusAlgebra::new(
        if genuine { "K3" } else { "K3-type toy" },
        ModelKind::K3 { ns_rank: ns.dim(), genuine },
        degrees,
        &mult,
        basis_vec(n, 0),
        pairing,
        2,
    )
}

/// NS = U ⊕ E8(−1)², T = U ⊕ U.
pub fn default_k3_model() -> GradedFrobeniusAlgebra {
    let u = hyperbolic_plane();
    let e8 = e8_minus();
    let ns = Lattice::sum_of("NS", &[&u, &e8, &e8]).form();
    let tr = Lattice::sum_of("T", &[&u, &u]).form();
    build_k3_model(&ns, &tr).expect("the K3 lattice is nondegenerate")
}

/// NS = ⟨2⟩, T = ⟨−2⟩ ⊕ U² ⊕ E8(−1)².
pub fn rank_one_ns_model() -> GradedFrobeniusAlgebra {
    let u = hyperbolic_plane();
    let e8 = e8_minus();
    let ns = QuadraticForm::diagonal(&[Rational::from(2)]);
    let tr = Lattice::sum_of("T", &[&Lattice::from_i64("<-2>", &[vec![-2]]), &u, &u, &e8, &e8]).form();
    build_k3_model(&ns, &tr).expect("nondegenerate")
}

/// Positions of the H² block in a K3-type model.
pub fn h2_range(a: &GradedFrobeniusAlgebra) -> std::ops::Range<usize> {
    1..a.dim() - 1
}

fn wedge_sign(s: u32, t: u32) -> i64 {
    let mut inv = 0;
    let mut bits = t;
    while bits != 0 {
        let i = bits.trailing_zeros();
        inv += (s >> (i + 1)).count_ones();
        bits &= bits - 1;
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Subsets of the 2g generators in the basis order of the exterior model.
pub fn exterior_basis(g: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << (2 * g)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

/// ⋀• Q^{2g} with generators in degree 1 and counit on the top wedge.
pub fn build_exterior_model(g: usize) -> Result<GradedFrobeniusAlgebra> {
    if g == 0 || g > 4 {
        return Err(Error::Domain(format!("exterior model needs 1 <= g <= 4, got {g}")));
    }
    let masks = exterior_basis(g);
    let n = masks.len();
    let index = |m: u32| masks.iter().position(|&x| x == m).unwrap();
    let top = (1u32 << (2 * g)) - 1;
    let mut mult = Vec::new();
    let mut pairing = RatMatrix::zeros(n, n);
    for (i, &s) in masks.iter().enumerate() {
        for (j, &t) in masks.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            let sign = Rational::from(wedge_sign(s, t));
            if s | t == top {
                pairing[(i, j)] = sign.clone();
            }
            mult.push((i, j, index(s | t), sign));
        }
    }
    GradedFrobeniusAlgebra::new(
        format!("exterior(g={g})"),
        ModelKind::Exterior { g },
        masks.iter().map(|m| m.count_ones()).collect(),
        &mult,
        basis_vec(n, 0),
        pairing,
        g as u32,
    )
}

/// Adds an odd line: x₁, x₂ in degree 1 with x₁x₂ = h₁, and dual classes
/// y₁, y₂ in degree 3 with x_i y_i = pt. Associativity forces
/// x₁h = −(h₁·h) y₂ and x₂h = (h₁·h) y₁ for degree-2 classes h.
pub fn with_odd_classes(a: &GradedFrobeniusAlgebra) -> Result<GradedFrobeniusAlgebra> {
    let pt_vec = a.point_class().ok_or_else(|| Error::Domain("model has no point class".into()))?;
    let pt = pt_vec.iter().position(|c| !c.is_zero()).unwrap();
    if !matches!(a.kind, ModelKind::K3 { .. }) {
        return Err(Error::Domain("a K3-type model is required".into()));
    }
    let n = a.dim();
    let h1 = 1;
    let (x1, x2, y1, y2) = (n, n + 1, n + 2, n + 3);
    let mut desc = a.descriptor();
    desc.degrees.extend([1, 1, 3, 3]);
    let one = Rational::one();
    let minus = -&one;
    for v in [x1, x2, y1, y2] {
        desc.mult.push((0, v, v, one.clone()));
        desc.mult.push((v, 0, v, one.clone()));
    }
    desc.mult.push((x1, x2, h1, one.clone()));
    desc.mult.push((x2, x1, h1, minus.clone()));
    for (x, y) in [(x1, y1), (x2, y2)] {
        desc.mult.push((x, y, pt, one.clone()));
        desc.mult.push((y, x, pt, minus.clone()));
    }
    for h in h2_range(a) {
        let c = a.pairing()[(h1, h)].clone();
        if c.is_zero() {
            continue;
        }
        for (x, y, s) in [(x1, y2, -&c), (x2, y1, c.clone())] {
            desc.mult.push((x, h, y, s.clone()));
            desc.mult.push((h, x, y, s));
        }
    }
    let mut pairing = RatMatrix::zeros(n + 4, n + 4);
    for i in 0..n {
        for j in 0..n {
            pairing[(i, j)] = a.pairing()[(i, j)].clone();
        }
    }
    for (x, y) in [(x1, y1), (x2, y2)] {
        pairing[(x, y)] = one.clone();
        pairing[(y, x)] = minus.clone();
    }
    let mut unit = a.unit().clone();
    unit.extend(std::iter::repeat(Rational::zero()).take(4));
    GradedFrobeniusAlgebra::new(
        format!("{} + odd line", a.label),
        ModelKind::Other { note: "K3-type model with an odd-degree line".into() },
        desc.degrees,
        &desc.mult,
        unit,
        pairing,
        a.frobenius_degree(),
    )
}

/// Five models obtained from a K3-type model by altering one structure
/// constant each.
pub fn mutation_models(a: &GradedFrobeniusAlgebra) -> Vec<(String, GradedFrobeniusAlgebra)> {
    let n = a.dim();
    let pt = n - 1;
    let (h0, h1) = (1, 2);
    let r = Rational::from;
    let mut out = Vec::new();
    let mut push = |name: &str, i: usize, j: usize, value: Vec<(usize, Rational)>| {
        let mut m = a.clone();
        m.set_product(i, j, value);
        m.label = format!("{} [{name}]", a.label);
        m.kind = ModelKind::Other { note: name.into() };
        out.push((name.to_string(), m));
    };
    let g01 = a.basis_product(h0, h1).first().map_or(r(0), |(_, c)| c.clone());
    push("h0*h1 shifted on pt", h0, h1, vec![(pt, &g01 + r(1))]);
    push("1*h0 leaks into h1", 0, h0, vec![(h0, r(1)), (h1, r(1))]);
    push("h0*h0 lands in degree 2", h0, h0, vec![(h0, r(1))]);
    let g00 = a.basis_product(h0, h0).first().map_or(r(0), |(_, c)| c.clone());
    push("h0*h0 shifted on pt", h0, h0, vec![(pt, g00 + r(3))]);
    push("pt*1 doubled", pt, 0, vec![(pt, r(2))]);
    out
}
