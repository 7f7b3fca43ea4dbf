//! Infinite families of pairwise non-isogenous K3 surfaces, certified at
//! the level of rational quadratic forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::lattice::{fermat_transcendental, Lattice};
use crate::arith::{
    factor_integer, is_norm_of, is_prime, is_sum_of_two_rational_squares, squarefree_part,
    QuadFieldElement,
};
use crate::error::{domain, precondition, Error, Result};
use crate::forms::{QuadraticForm, TwistClass};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub j: usize,
    pub k: usize,
    pub m_j: u64,
    pub m_k: u64,
    /// T(m_j) ⊗ Q ≅ T(m_k) ⊗ Q, decided by invariants.
    pub q_iso: bool,
    /// The same question decided by the closed-form arithmetic criterion.
    pub q_iso_by_criterion: bool,
    pub hodge_obstructed: bool,
    pub reason: String,
}

impl PairCheck {
    pub fn derivations_agree(&self) -> bool {
        self.q_iso == self.q_iso_by_criterion
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberCheck {
    pub j: usize,
    pub m: u64,
    pub m_is_prime: bool,
    pub m_mod_4: u64,
    /// T ⊗ Q ≅ T(m) ⊗ Q by invariants.
    pub q_iso_to_base: bool,
    pub lemma_class: Option<TwistClass>,
    /// What the twist lemma predicts for `q_iso_to_base`.
    pub lemma_prediction: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCertificate {
    pub family: String,
    pub twists: Vec<u64>,
    pub base_form: QuadraticForm,
    pub per_member: Vec<MemberCheck>,
    pub per_pair: Vec<PairCheck>,
}

impl FamilyCertificate {
    pub fn obstructed_pairs(&self) -> usize {
        self.per_pair.iter().filter(|p| p.hodge_obstructed).count()
    }

    pub fn agreeing_pairs(&self) -> usize {
        self.per_pair.iter().filter(|p| p.derivations_agree()).count()
    }

    /// Every pair obstructed, every double derivation in agreement, and every
    /// member's lemma prediction confirmed.
    pub fn holds(&self) -> bool {
        let n = self.per_pair.len();
        self.obstructed_pairs() == n
            && self.agreeing_pairs() == n
            && self
                .per_member
                .iter()
                .all(|m| m.lemma_prediction.is_none_or(|p| p == m.q_iso_to_base))
    }
}

/// The first `count` primes congruent to `residue` modulo 4.
pub fn primes_mod_4(residue: u64, count: usize) -> Vec<u64> {
    (2u64..)
        .filter(|&n| n % 4 == residue && is_prime(&BigInt::from(n)))
        .take(count)
        .collect()
}

fn member(j: usize, m: u64, base: &QuadraticForm) -> Result<MemberCheck> {
    let mq = Rational::from(m as i64);
    let class = base.lemma_twist_class().ok();
    let prediction = match class {
        Some(_) => base.lemma_predicts_twist_equivalent(&mq)?,
        None => None,
    };
    Ok(MemberCheck {
        j,
        m,
        m_is_prime: is_prime(&BigInt::from(m)),
        m_mod_4: m % 4,
        q_iso_to_base: base.is_equivalent(&base.twist(&mq)?)?,
        lemma_class: class,
        lemma_prediction: prediction,
    })
}

/// Twists of ⟨8, 8⟩ by the first `count` primes ≡ 3 mod 4.
pub fn theorem_a_family(count: usize) -> Result<FamilyCertificate> {
    if count < 2 {
        return domain("a family needs at least two members");
    }
    let base = fermat_transcendental().form();
    let twists = primes_mod_4(3, count);
    let per_member = twists
        .iter()
        .enumerate()
        .map(|(i, &m)| member(i + 1, m, &base))
        .collect::<Result<_>>()?;
    let mut per_pair = Vec::new();
    for (a, &mj) in twists.iter().enumerate() {
        for (b, &mk) in twists.iter().enumerate().skip(a + 1) {
            let tj = base.twist(&Rational::from(mj as i64))?;
            let tk = base.twist(&Rational::from(mk as i64))?;
            let q_iso = tj.is_equivalent(&tk)?;
            let product = mj * mk;
            let by_criterion = is_sum_of_two_rational_squares(&Rational::from(product as i64));
            let reason = if by_criterion {
                format!("{product} = {mj}*{mk} is a sum of two squares")
            } else {
                format!("{product} = {mj}*{mk} is not a sum of two squares")
            };
            per_pair.push(PairCheck {
                j: a + 1,
                k: b + 1,
                m_j: mj,
                m_k: mk,
                q_iso,
                q_iso_by_criterion: by_criterion,
                hodge_obstructed: !q_iso,
                reason,
            });
        }
    }
    Ok(FamilyCertificate { family: "A".into(), twists, base_form: base, per_member, per_pair })
}

const ALLOWED_SIGNATURES: [(usize, usize); 4] = [(2, 2), (2, 4), (2, 6), (2, 8)];

/// Checks the hypotheses on the prescribed transcendental lattice.
pub fn check_theorem_b_lattice(t: &Lattice) -> Result<()> {
    if !t.is_even() {
        return precondition(format!("lattice {} is not even", t.label));
    }
    let sig = t.signature()?;
    if !ALLOWED_SIGNATURES.contains(&sig) {
        return precondition(format!(
            "signature not in allowed set: ({}, {}) is not one of (2,2), (2,4), (2,6), (2,8)",
            sig.0, sig.1
        ));
    }
    let det = t.det();
    if det.is_zero() {
        return precondition(format!("lattice {} is degenerate", t.label));
    }
    if squarefree_part(&Rational::from(det.clone()))? != BigInt::one() {
        return precondition(format!("discriminant {det} of {} is not a square", t.label));
    }
    Ok(())
}

/// Twists of `t` by the first `count` primes ≡ 1 mod 4.
pub fn theorem_b_family(t: &Lattice, count: usize) -> Result<FamilyCertificate> {
    if count < 2 {
        return domain("a family needs at least two members");
    }
    check_theorem_b_lattice(t)?;
    let base = t.form();
    let twists = primes_mod_4(1, count);
    let per_member = twists
        .iter()
        .enumerate()
        .map(|(i, &m)| member(i + 1, m, &base))
        .collect::<Result<_>>()?;
    let mut per_pair = Vec::new();
    for (a, &mj) in twists.iter().enumerate() {
        for (b, &mk) in twists.iter().enumerate().skip(a + 1) {
            let tj = base.twist(&Rational::from(mj as i64))?;
            let tk = base.twist(&Rational::from(mk as i64))?;
            let q_iso = tj.is_equivalent(&tk)?;
            // The lemma puts both twists in the class of T, hence together.
            let predicted = |m: u64| base.lemma_predicts_twist_equivalent(&Rational::from(m as i64));
            let by_criterion = predicted(mj)? == Some(true) && predicted(mk)? == Some(true);
            let product = Rational::from((mj * mk) as i64);
            let square = product.is_square();
            per_pair.push(PairCheck {
                j: a + 1,
                k: b + 1,
                m_j: mj,
                m_k: mk,
                q_iso,
                q_iso_by_criterion: by_criterion,
                hodge_obstructed: !square,
                reason: if square {
                    format!("{product} = {mj}*{mk} is a square")
                } else {
                    format!("{product} = {mj}*{mk} is not a rational square")
                },
            });
        }
    }
    Ok(FamilyCertificate { family: "B".into(), twists, base_form: base, per_member, per_pair })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemElTerm {
    pub j: usize,
    #[serde(serialize_with = "crate::forms::int_as_number")]
    pub m: BigInt,
    /// 2m⁴ + 1.
    #[serde(serialize_with = "crate::forms::int_as_number")]
    pub value: BigInt,
    pub value_mod_4: u32,
    pub factors: BTreeMap<String, u32>,
    pub in_norm_group: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemElPair {
    pub j: usize,
    pub k: usize,
    pub coprime: bool,
    /// A prime ≡ 3 mod 4 with odd exponent in the product of the two values.
    pub witness_prime: Option<String>,
    pub ratio_in_norm_group: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemElReport {
    pub terms: Vec<LemElTerm>,
    pub pairs: Vec<LemElPair>,
}

impl LemElReport {
    pub fn holds(&self) -> bool {
        self.terms.iter().all(|t| !t.in_norm_group && t.value_mod_4 == 3)
            && self.pairs.iter().all(|p| !p.ratio_in_norm_group && p.witness_prime.is_some())
    }

    pub fn sequence(&self) -> Vec<BigInt> {
        self.terms.iter().map(|t| t.m.clone()).collect()
    }
}

pub const LEM_EL_MAX_TERMS: usize = 4;

/// m₁ = 1, m_{j+1} = ∏_{l ≤ j} (2m_l⁴ + 1), with the norm-group predicates.
pub fn lem_el_sequence(count: usize) -> Result<LemElReport> {
    if count < 1 {
        return domain("count must be at least 1");
    }
    if count > LEM_EL_MAX_TERMS {
        return Err(Error::Budget("values exceed desk-scale factoring budget".into()));
    }
    let mut ms = vec![BigInt::one()];
    let value = |m: &BigInt| 2 * num_traits::pow(m.clone(), 4) + 1;
    while ms.len() < count {
        let next = ms.iter().map(value).product();
        ms.push(next);
    }
    let four = BigInt::from(4);
    let three = BigInt::from(3);
    let mut terms = Vec::new();
    let mut factorizations = Vec::new();
    for (i, m) in ms.iter().enumerate() {
        let v = value(m);
        let f = factor_integer(&v);
        let in_norm = f.iter().all(|(p, e)| e % 2 == 0 || p.mod_floor(&four) != three);
        terms.push(LemElTerm {
            j: i + 1,
            m: m.clone(),
            value_mod_4: v.mod_floor(&four).to_u32().unwrap(),
            factors: f.iter().map(|(p, e)| (p.to_string(), *e)).collect(),
            value: v,
            in_norm_group: in_norm,
        });
        factorizations.push(f);
    }
    let mut pairs = Vec::new();
    for a in 0..ms.len() {
        for b in a + 1..ms.len() {
            let mut product = factorizations[a].clone();
            for (p, e) in &factorizations[b] {
                *product.entry(p.clone()).or_insert(0) += e;
            }
            let witness = product
                .iter()
                .find(|(p, e)| *e % 2 == 1 && p.mod_floor(&four) == three)
                .map(|(p, _)| p.to_string());
            pairs.push(LemElPair {
                j: a + 1,
                k: b + 1,
                coprime: terms[a].value.gcd(&terms[b].value).is_one(),
                ratio_in_norm_group: witness.is_none(),
                witness_prime: witness,
            });
        }
    }
    Ok(LemElReport { terms, pairs })
}

/// Data of a solution to the Fermat constraint system with α = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FermatSolution {
    pub m: u64,
    pub a: QuadFieldElement,
    pub b: QuadFieldElement,
    /// Coefficients on the orthogonal Néron-Severi basis; missing entries are zero.
    pub c: Vec<QuadFieldElement>,
    pub v: Rational,
    /// Half-norms (D_j, D_j)/2 of the basis vectors carrying `c`.
    pub d: Vec<Rational>,
}

/// a = 2m, b = −(1+i)/m, c₁ = 1, c₂ = 1+i, v = 1, d = (2, −1).
pub fn fermat_solution(m: u64) -> Result<FermatSolution> {
    if m == 0 {
        return domain("m must be positive");
    }
    let inv_m = Rational::new(1, m as i64);
    Ok(FermatSolution {
        m,
        a: QuadFieldElement::gaussian(2 * m as i64, 0),
        b: QuadFieldElement::gaussian(-&inv_m, -&inv_m),
        c: vec![QuadFieldElement::gaussian(1, 0), QuadFieldElement::gaussian(1, 1)],
        v: Rational::one(),
        d: vec![Rational::from(2), Rational::from(-1)],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FermatCheck {
    pub valid: bool,
    pub reason: Option<String>,
    /// v·a·b̄ + Σ c_j² d_j.
    pub constraint_value: QuadFieldElement,
    /// v(|a|² + |b|²) + 2Σ|c_j|² d_j.
    pub positivity_value: Rational,
    /// |a|² + |b|² + 2Σ|c_j|² d_j / v, the quantity that must be a norm for
    /// the new surface to be isogenous to the old one.
    pub obstruction_value: Rational,
    pub in_norm_group: bool,
}

pub fn fermat_constraints_check(sol: &FermatSolution) -> Result<FermatCheck> {
    let alpha = sol.a.alpha().clone();
    if sol.c.len() > sol.d.len() {
        return Err(Error::DimensionMismatch("more coefficients c_j than basis half-norms d_j".into()));
    }
    if !sol.v.is_positive() {
        return domain("v must be positive");
    }
    let mut constraint = sol.a.try_mul(&sol.b.conj())?.scale(&sol.v);
    let mut weighted = Rational::zero();
    for (c, d) in sol.c.iter().zip(&sol.d) {
        constraint = constraint.try_add(&c.try_mul(c)?.scale(d))?;
        weighted += c.norm() * d;
    }
    let ab = sol.a.norm() + sol.b.norm();
    let positivity = &sol.v * &ab + Rational::from(2) * &weighted;
    let obstruction = &ab + Rational::from(2) * &weighted / &sol.v;

    let reason = if sol.a.is_zero() && sol.b.is_zero() {
        Some("a and b are both zero".to_string())
    } else if !constraint.is_zero() {
        Some(format!("v*a*conj(b) + sum c_j^2 d_j = {constraint}, not zero"))
    } else if !positivity.is_positive() {
        Some(format!("positivity value {positivity} is not positive"))
    } else {
        None
    };
    let valid = reason.is_none();
    let in_norm_group = valid && is_norm_of(&obstruction, &alpha)?;
    Ok(FermatCheck {
        valid,
        reason,
        constraint_value: constraint,
        positivity_value: positivity,
        obstruction_value: obstruction,
        in_norm_group,
    })
}

/// Whether `val1 / val2` fails to be a norm from Q(√−α).
pub fn pairwise_isogeny_obstruction(val1: &Rational, val2: &Rational, alpha: &Rational) -> Result<bool> {
    if !val1.is_positive() || !val2.is_positive() {
        return domain("obstruction values must be positive");
    }
    Ok(!is_norm_of(&(val1 / val2), alpha)?)
}

/// Necessary condition for L(c) ≅ L: equal determinants and signatures.
pub fn scale_isometry_possible(l: &Lattice, c: i64) -> Result<bool> {
    if c == 0 {
        return domain("scale must be nonzero");
    }
    let det = l.det();
    if det.is_zero() {
        return Err(Error::Degenerate { radical_dim: l.rank() - l.gram().rank() });
    }
    let scaled_det = num_traits::pow(BigInt::from(c), l.rank()) * &det;
    Ok(scaled_det == det && l.twist(c)?.signature()? == l.signature()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k3::lattice::{catalog, hyperbolic_plane};
    use crate::rational::q;

    #[test]
    fn family_a_small() {
        let cert = theorem_a_family(3).unwrap();
        assert_eq!(cert.twists, vec![3, 7, 11]);
        assert_eq!(cert.per_pair.len(), 3);
        let p = &cert.per_pair[0];
        assert_eq!((p.m_j, p.m_k, p.q_iso, p.hodge_obstructed), (3, 7, false, true));
        assert!(cert.holds());
        assert!(theorem_a_family(1).is_err());

        let t = fermat_transcendental().form();
        let t3 = t.twist(&q(3, 1)).unwrap();
        assert!(t3.is_equivalent(&t3).unwrap());
    }

    #[test]
    fn family_b_small() {
        let u = hyperbolic_plane();
        let uu = u.direct_sum(&u, "UU");
        let cert = theorem_b_family(&uu, 3).unwrap();
        assert_eq!(cert.twists, vec![5, 13, 17]);
        assert!(cert.per_member.iter().all(|m| m.q_iso_to_base));
        assert!(cert.per_pair.iter().all(|p| p.q_iso && p.hodge_obstructed));
        assert!(cert.holds());

        let err = theorem_b_family(&catalog("K3_Lambda").unwrap(), 3).unwrap_err();
        assert!(err.to_string().contains("signature not in allowed set"), "{err}");
        let odd = Lattice::from_i64("odd", &[vec![1, 0], vec![0, 1]]);
        assert!(theorem_b_family(&odd, 3).is_err());
        assert!(Rational::from(25).is_square());
    }

    #[test]
    fn lem_el_terms() {
        let r = lem_el_sequence(3).unwrap();
        assert_eq!(r.sequence(), vec![BigInt::from(1), BigInt::from(3), BigInt::from(489)]);
        assert_eq!(r.terms[0].value, BigInt::from(3));
        assert_eq!(r.terms[1].value, BigInt::from(163));
        assert!(r.holds());
        assert!(!is_norm_of(&q(163, 3), &q(1, 1)).unwrap());
        assert!(matches!(lem_el_sequence(5), Err(Error::Budget(_))));
        assert!(lem_el_sequence(0).is_err());
    }

    #[test]
    fn lem_el_fourth_term() {
        let r = lem_el_sequence(4).unwrap();
        let m4: BigInt = "55920917883387".parse().unwrap();
        assert_eq!(r.terms[3].m, m4);
        assert_eq!(r.terms[2].factors.len(), 3);
        assert_eq!(r.terms[3].factors.len(), 4);
        assert!(r.holds());
    }

    #[test]
    fn fermat_values() {
        for m in 1..=6u64 {
            let check = fermat_constraints_check(&fermat_solution(m).unwrap()).unwrap();
            let mi = m as i64;
            assert!(check.valid);
            assert_eq!(check.obstruction_value, q(2, mi * mi) * q(2 * mi.pow(4) + 1, 1));
        }
        let six = fermat_constraints_check(&fermat_solution(1).unwrap()).unwrap();
        assert_eq!(six.obstruction_value, q(6, 1));
        assert!(!six.in_norm_group);

        let zero_c2 = FermatSolution {
            m: 1,
            a: QuadFieldElement::gaussian(1, 0),
            b: QuadFieldElement::gaussian(-2, 0),
            c: vec![QuadFieldElement::gaussian(1, 0), QuadFieldElement::gaussian(0, 0)],
            v: Rational::one(),
            d: vec![q(2, 1), q(-1, 1)],
        };
        let check = fermat_constraints_check(&zero_c2).unwrap();
        assert!(check.valid && check.in_norm_group);
        assert_eq!(check.obstruction_value, q(9, 1));

        let mut both_zero = zero_c2.clone();
        both_zero.a = QuadFieldElement::gaussian(0, 0);
        both_zero.b = QuadFieldElement::gaussian(0, 0);
        assert!(!fermat_constraints_check(&both_zero).unwrap().valid);
    }

    #[test]
    fn ratio_obstruction() {
        let one = q(1, 1);
        assert!(!pairwise_isogeny_obstruction(&q(6, 1), &q(6, 1), &one).unwrap());
        assert!(pairwise_isogeny_obstruction(&q(6, 1), &q(326, 9), &one).unwrap());
        assert!(pairwise_isogeny_obstruction(&q(-6, 1), &q(6, 1), &one).is_err());
    }

    #[test]
    fn scale_check() {
        let l = catalog("K3_Lambda").unwrap();
        assert!(scale_isometry_possible(&l, 1).unwrap());
        assert!(!scale_isometry_possible(&l, -1).unwrap());
        assert!(!scale_isometry_possible(&l, 2).unwrap());
        assert!(scale_isometry_possible(&l, 0).is_err());
    }
}
