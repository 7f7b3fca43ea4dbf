//! Rational quadratic forms and their Hasse-Minkowski invariants.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{factor, hilbert_symbol, is_norm_of, squarefree_part, Place};
use crate::error::{domain, Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::Rational;

/// A symmetric bilinear form on Q^n given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GramJson", into = "GramJson")]
pub struct QuadraticForm {
    gram: RatMatrix,
}

#[derive(Serialize, Deserialize)]
struct GramJson {
    gram: RatMatrix,
}

impl TryFrom<GramJson> for QuadraticForm {
    type Error = Error;

    fn try_from(g: GramJson) -> Result<Self> {
        QuadraticForm::new(g.gram)
    }
}

impl From<QuadraticForm> for GramJson {
    fn from(q: QuadraticForm) -> Self {
        GramJson { gram: q.gram }
    }
}

/// Complete invariants of a nondegenerate form over Q.
///
/// `hasse` always carries the places 2 and ∞ and otherwise only the places
/// where the invariant is −1, so equal forms have equal records.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub rank: usize,
    pub signature: (usize, usize),
    #[serde(rename = "disc", serialize_with = "int_as_number")]
    pub disc_class: BigInt,
    pub hasse: BTreeMap<Place, i8>,
}

impl FormInvariants {
    pub fn hasse_at(&self, v: &Place) -> i8 {
        self.hasse.get(v).copied().unwrap_or(1)
    }

    /// Product of the Hasse invariants over all places; 1 for every form.
    pub fn hasse_product(&self) -> i8 {
        self.hasse.values().product()
    }
}

pub(crate) fn int_as_number<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.collect_str(n),
    }
}

/// Congruence diagonalization `Cᵀ G C = diag(entries)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalForm {
    pub entries: Vec<Rational>,
    pub congruence: RatMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistClass {
    /// Q(m) ≅ Q for every m > 0.
    AllPositiveM,
    /// Q(m) ≅ Q exactly when m is a sum of two rational squares.
    NormsOfQi,
    NotApplicable,
}

impl QuadraticForm {
    pub fn new(gram: RatMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return domain("Gram matrix is not symmetric");
        }
        Ok(QuadraticForm { gram })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(RatMatrix::from_i64(rows))
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        QuadraticForm { gram: RatMatrix::diagonal(entries) }
    }

    pub fn empty() -> Self {
        QuadraticForm { gram: RatMatrix::zeros(0, 0) }
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> Rational {
        self.gram.det().expect("Gram matrix is square")
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.gram.bilinear(x, y)
    }

    /// `Cᵀ G C`.
    pub fn transform(&self, c: &RatMatrix) -> Result<Self> {
        let g = c.transpose().mul(&self.gram)?.mul(c)?;
        Ok(QuadraticForm { gram: g })
    }

    pub fn diagonalize(&self) -> Result<DiagonalForm> {
        let n = self.dim();
        let mut a = self.gram.clone();
        let mut c = RatMatrix::identity(n);
        for k in 0..n {
            if a[(k, k)].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                    a.swap_rows(k, j);
                    a.swap_cols(k, j);
                    c.swap_cols(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                    // Column/row k += column/row j; the new pivot is 2·a_kj.
                    add_multiple(&mut a, &mut c, k, j, &Rational::one());
                } else {
                    return Err(Error::Degenerate { radical_dim: n - self.gram.rank() });
                }
            }
            let inv = a[(k, k)].recip().unwrap();
            for j in k + 1..n {
                if !a[(k, j)].is_zero() {
                    let f = -(&a[(k, j)] * &inv);
                    add_multiple(&mut a, &mut c, j, k, &f);
                }
            }
        }
        let entries = (0..n).map(|i| a[(i, i)].clone()).collect();
        Ok(DiagonalForm { entries, congruence: c })
    }

    pub fn signature(&self) -> Result<(usize, usize)> {
        let d = self.diagonalize()?;
        let pos = d.entries.iter().filter(|e| e.is_positive()).count();
        Ok((pos, d.entries.len() - pos))
    }

    pub fn invariants(&self) -> Result<FormInvariants> {
        let d = self.diagonalize()?;
        invariants_of_diagonal(&d.entries)
    }

    pub fn is_equivalent(&self, other: &Self) -> Result<bool> {
        Ok(self.invariants()? == other.invariants()?)
    }

    pub fn twist(&self, m: &Rational) -> Result<Self> {
        if m.is_zero() {
            return domain("twist by zero");
        }
        Ok(QuadraticForm { gram: self.gram.scale(m) })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        QuadraticForm { gram: RatMatrix::block_diag(&[&self.gram, &other.gram]) }
    }

    /// Predicted `ε_v(Q(m))` from the invariants of `Q` alone.
    pub fn hasse_epsilon_twist(&self, m: &Rational, v: &Place) -> Result<i8> {
        if m.is_zero() {
            return domain("twist by zero");
        }
        let inv = self.invariants()?;
        let r = inv.rank;
        let mut c = if (r - 1) % 2 == 1 { Rational::from(inv.disc_class.clone()) } else { Rational::one() };
        if (r * (r.saturating_sub(1)) / 2) % 2 == 1 {
            c = -c;
        }
        Ok(inv.hasse_at(v) * hilbert_symbol(&c, m, v)?)
    }

    pub fn lemma_twist_class(&self) -> Result<TwistClass> {
        let inv = self.invariants()?;
        if inv.rank % 2 == 1 {
            return domain(format!("rank {} is odd", inv.rank));
        }
        let one = BigInt::from(1);
        let r4 = inv.rank % 4;
        Ok(if inv.disc_class == one {
            if r4 == 0 { TwistClass::AllPositiveM } else { TwistClass::NormsOfQi }
        } else if inv.disc_class == -one {
            if r4 == 2 { TwistClass::AllPositiveM } else { TwistClass::NormsOfQi }
        } else {
            TwistClass::NotApplicable
        })
    }

    /// What the twist lemma predicts for `Q ≅ Q(m)`, when it applies.
    pub fn lemma_predicts_twist_equivalent(&self, m: &Rational) -> Result<Option<bool>> {
        if !m.is_positive() {
            return domain("the twist lemma concerns m > 0");
        }
        Ok(match self.lemma_twist_class()? {
            TwistClass::AllPositiveM => Some(true),
            TwistClass::NormsOfQi => Some(is_norm_of(m, &Rational::one())?),
            TwistClass::NotApplicable => None,
        })
    }
}

/// `a ↦ a + f·b` applied to rows and columns of `a`, columns of `c`.
fn add_multiple(a: &mut RatMatrix, c: &mut RatMatrix, target: usize, src: usize, f: &Rational) {
    let n = a.rows();
    for i in 0..n {
        let v = &a[(i, src)] * f;
        if !v.is_zero() {
            a[(i, target)] += v;
        }
        let v = &c[(i, src)] * f;
        if !v.is_zero() {
            c[(i, target)] += v;
        }
    }
    for j in 0..n {
        let v = &a[(src, j)] * f;
        if !v.is_zero() {
            a[(target, j)] += v;
        }
    }
}

/// Invariants of `⟨a_1, …, a_r⟩` with the convention ε = ∏_{i<j} (a_i, a_j).
pub fn invariants_of_diagonal(entries: &[Rational]) -> Result<FormInvariants> {
    if entries.iter().any(Rational::is_zero) {
        let zeros = entries.iter().filter(|e| e.is_zero()).count();
        return Err(Error::Degenerate { radical_dim: zeros });
    }
    let pos = entries.iter().filter(|e| e.is_positive()).count();
    let disc: Rational = entries.iter().cloned().product();
    let mut primes = BTreeSet::from([BigInt::from(2)]);
    for e in entries {
        primes.extend(factor(e)?.primes().cloned());
    }
    let mut hasse = BTreeMap::new();
    let places = primes.into_iter().map(Place::Finite).chain([Place::Infinite]);
    for v in places {
        let mut eps = 1i8;
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                eps *= hilbert_symbol(&entries[i], &entries[j], &v)?;
            }
        }
        if eps == -1 || v.is_infinite() || v == Place::two() {
            hasse.insert(v, eps);
        }
    }
    Ok(FormInvariants {
        rank: entries.len(),
        signature: (pos, entries.len() - pos),
        disc_class: if entries.is_empty() { BigInt::from(1) } else { squarefree_part(&disc)? },
        hasse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn u() -> QuadraticForm {
        QuadraticForm::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn eight_eight() -> QuadraticForm {
        QuadraticForm::diagonal(&[q(8, 1), q(8, 1)])
    }

    #[test]
    fn diagonalize_examples() {
        let d = eight_eight().diagonalize().unwrap();
        assert_eq!(d.entries, vec![q(8, 1), q(8, 1)]);
        assert_eq!(d.congruence, RatMatrix::identity(2));

        let d = u().diagonalize().unwrap();
        let back = u().transform(&d.congruence).unwrap();
        assert_eq!(back.gram(), &RatMatrix::diagonal(&d.entries));
        assert_eq!(d.entries, vec![q(2, 1), q(-1, 2)]);

        let id = QuadraticForm::diagonal(&vec![q(1, 1); 5]).diagonalize().unwrap();
        assert_eq!(id.entries, vec![q(1, 1); 5]);

        let degenerate = QuadraticForm::from_i64(&[vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(degenerate.diagonalize(), Err(Error::Degenerate { radical_dim: 2 }));
    }

    #[test]
    fn invariant_examples() {
        let inv = u().invariants().unwrap();
        assert_eq!((inv.rank, inv.signature), (2, (1, 1)));
        assert_eq!(inv.disc_class, BigInt::from(-1));
        assert!(inv.hasse.values().all(|&e| e == 1));

        let inv = eight_eight().invariants().unwrap();
        assert_eq!((inv.rank, inv.signature, inv.disc_class.clone()), (2, (2, 0), BigInt::from(1)));

        let inv = QuadraticForm::diagonal(&[q(1, 1)]).invariants().unwrap();
        assert_eq!((inv.rank, inv.signature, inv.hasse_product()), (1, (1, 0), 1));

        let json = serde_json::to_value(eight_eight().invariants().unwrap()).unwrap();
        assert_eq!(json["signature"], serde_json::json!([2, 0]));
        assert_eq!(json["disc"], serde_json::json!(1));
        assert_eq!(json["hasse"]["inf"], serde_json::json!(1));
    }

    #[test]
    fn equivalence_examples() {
        let t = eight_eight();
        assert!(!t.is_equivalent(&t.twist(&q(3, 1)).unwrap()).unwrap());
        assert!(t.is_equivalent(&t.twist(&q(2, 1)).unwrap()).unwrap());
        assert_eq!(t.twist(&q(3, 1)).unwrap(), QuadraticForm::diagonal(&[q(24, 1), q(24, 1)]));
        assert_eq!(t.twist(&q(1, 1)).unwrap(), t);
        assert!(t.twist(&Rational::zero()).is_err());
    }

    #[test]
    fn twist_classes() {
        assert_eq!(u().lemma_twist_class().unwrap(), TwistClass::AllPositiveM);
        assert_eq!(eight_eight().lemma_twist_class().unwrap(), TwistClass::NormsOfQi);
        assert_eq!(u().direct_sum(&u()).lemma_twist_class().unwrap(), TwistClass::AllPositiveM);
        let odd = QuadraticForm::diagonal(&[q(1, 1)]);
        assert!(odd.lemma_twist_class().is_err());
        let three = QuadraticForm::diagonal(&[q(1, 1), q(3, 1)]);
        assert_eq!(three.lemma_twist_class().unwrap(), TwistClass::NotApplicable);
    }

    #[test]
    fn direct_sum_examples() {
        let q1 = eight_eight();
        assert_eq!(q1.direct_sum(&QuadraticForm::empty()), q1);
        let s = q1.direct_sum(&u());
        assert_eq!(s.signature().unwrap(), (3, 1));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"gram":[["0","1"],["1","0"]]}"#;
        let f: QuadraticForm = serde_json::from_str(text).unwrap();
        assert_eq!(f, u());
        assert_eq!(serde_json::to_string(&f).unwrap(), text);
        assert!(serde_json::from_str::<QuadraticForm>(r#"{"gram":[["0","1"],["2","0"]]}"#).is_err());
    }
}
