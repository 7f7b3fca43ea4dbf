//! The holomorphic 2-form of E × E written in the integral basis.
//!
//! Coordinates: e*_{k,l} is the l-th dual basis vector on the k-th factor,
//! dz_k = e*_{k,1} + i e*_{k,2}. Orientation: ∫_E e*_1 ∧ e*_2 = 1 on each
//! factor and e*_{1,1} ∧ e*_{1,2} ∧ e*_{2,1} ∧ e*_{2,2} integrates to 1 on
//! E × E. The quotient map to the Kummer surface has degree 4.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::QuadFieldElement;
use crate::rational::Rational;

/// Exterior algebra on four generators over Q(i); keys are bitmasks with
/// bit 2(k−1)+(l−1) standing for e*_{k,l}.
type Form = BTreeMap<u8, QuadFieldElement>;

const GENERATOR_NAMES: [&str; 4] = ["e11", "e12", "e21", "e22"];
const KUMMER_DEGREE: i64 = 4;

fn wedge_sign(s: u8, t: u8) -> i64 {
    let mut inversions = 0;
    for i in 0..4 {
        if t & (1 << i) != 0 {
            inversions += (s >> (i + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn wedge(x: &Form, y: &Form) -> Form {
    let mut out = Form::new();
    for (&s, a) in x {
        for (&t, b) in y {
            if s & t != 0 {
                continue;
            }
            let term = a.try_mul(b).unwrap().scale(&Rational::from(wedge_sign(s, t)));
            let slot = out.entry(s | t).or_insert_with(|| QuadFieldElement::gaussian(0, 0));
            *slot = slot.try_add(&term).unwrap();
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn add(x: &Form, y: &Form, sign: i64) -> Form {
    let mut out = x.clone();
    for (&k, v) in y {
        let slot = out.entry(k).or_insert_with(|| QuadFieldElement::gaussian(0, 0));
        *slot = slot.try_add(&v.scale(&Rational::from(sign))).unwrap();
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn scale(x: &Form, c: &QuadFieldElement) -> Form {
    x.iter().map(|(&k, v)| (k, v.try_mul(c).unwrap())).collect()
}

fn conj(x: &Form) -> Form {
    x.iter().map(|(&k, v)| (k, v.conj())).collect()
}

/// dz_k for k ∈ {1, 2}.
fn dz(k: usize) -> Form {
    let base = 2 * (k - 1);
    Form::from([
        (1 << base, QuadFieldElement::gaussian(1, 0)),
        (1 << (base + 1), QuadFieldElement::gaussian(0, 1)),
    ])
}

fn rational_coefficients(x: &Form) -> Option<BTreeMap<String, Rational>> {
    x.iter()
        .map(|(&k, v)| {
            v.y.is_zero().then(|| {
                let name: Vec<&str> = (0..4).filter(|i| k & (1 << i) != 0).map(|i| GENERATOR_NAMES[i]).collect();
                (name.join("^"), v.x.clone())
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormInBasisReport {
    pub orientation: String,
    /// π*(σ + σ̄) in the e* basis; `None` if some coefficient is not rational.
    pub sigma_plus_conj: Option<BTreeMap<String, Rational>>,
    /// π*(i(σ − σ̄)) in the e* basis.
    pub i_sigma_minus_conj: Option<BTreeMap<String, Rational>>,
    pub matches_display: bool,
    /// ∫_E dz ∧ dz̄.
    pub integral_dz_dzbar: QuadFieldElement,
    /// ∫_{E×E} dz₁ ∧ dz₂ ∧ dz̄₁ ∧ dz̄₂.
    pub integral_top: QuadFieldElement,
    pub kummer_degree: i64,
    /// (σ, σ̄) = ∫_{E×E}(…)/deg π.
    pub v: QuadFieldElement,
}

pub fn form_in_basis_report() -> FormInBasisReport {
    let sigma = wedge(&dz(1), &dz(2));
    let sigma_bar = conj(&sigma);
    let plus = add(&sigma, &sigma_bar, 1);
    let minus = scale(&add(&sigma, &sigma_bar, -1), &QuadFieldElement::gaussian(0, 1));
    let plus_r = rational_coefficients(&plus);
    let minus_r = rational_coefficients(&minus);

    let q = Rational::from;
    let expected_plus = BTreeMap::from([("e11^e21".to_string(), q(2)), ("e12^e22".to_string(), q(-2))]);
    let expected_minus = BTreeMap::from([("e11^e22".to_string(), q(-2)), ("e12^e21".to_string(), q(-2))]);

    // One factor, generators e1 = bit 0 and e2 = bit 1.
    let one_factor = wedge(&dz(1), &conj(&dz(1)));
    let integral_dz_dzbar = one_factor.get(&0b0011).cloned().unwrap_or_else(|| QuadFieldElement::gaussian(0, 0));
    let top = wedge(&wedge(&sigma, &conj(&dz(1))), &conj(&dz(2)));
    let integral_top = top.get(&0b1111).cloned().unwrap_or_else(|| QuadFieldElement::gaussian(0, 0));
    let v = integral_top.scale(&Rational::new(1, KUMMER_DEGREE));

    FormInBasisReport {
        orientation: "e11^e12^e21^e22".into(),
        matches_display: plus_r.as_ref() == Some(&expected_plus) && minus_r.as_ref() == Some(&expected_minus),
        sigma_plus_conj: plus_r,
        i_sigma_minus_conj: minus_r,
        integral_dz_dzbar,
        integral_top,
        kummer_degree: KUMMER_DEGREE,
        v,
    }
}

/// Both expansions are rational with the expected coefficients,
/// ∫ dz ∧ dz̄ = −2i, the top integral equals −(∫ dz ∧ dz̄)², and v = 1.
pub fn form_in_basis_check() -> bool {
    let r = form_in_basis_report();
    let minus_two_i = QuadFieldElement::gaussian(0, -2);
    let squared = minus_two_i.try_mul(&minus_two_i).unwrap().neg();
    r.matches_display
        && r.integral_dz_dzbar == minus_two_i
        && r.integral_top == squared
        && r.v == QuadFieldElement::gaussian(1, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        let r = form_in_basis_report();
        assert!(r.sigma_plus_conj.is_some());
        assert!(r.i_sigma_minus_conj.is_some());
        assert!(r.matches_display);
        assert_eq!(r.integral_dz_dzbar, QuadFieldElement::gaussian(0, -2));
        assert_eq!(r.integral_top, QuadFieldElement::gaussian(4, 0));
        assert!(form_in_basis_check());
    }

    #[test]
    fn wedge_is_alternating() {
        let x = dz(1);
        assert!(wedge(&x, &x).is_empty());
        assert_eq!(wedge_sign(0b0010, 0b0001), -1);
        assert_eq!(wedge_sign(0b0001, 0b0010), 1);
    }
}
