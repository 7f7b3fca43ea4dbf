//! Arithmetic in imaginary quadratic fields Q(√−α).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::rational::Rational;

/// `x + y√−α` with α > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadFieldElement {
    alpha: Rational,
    pub x: Rational,
    pub y: Rational,
}

impl QuadFieldElement {
    pub fn new(alpha: Rational, x: Rational, y: Rational) -> Result<Self> {
        if !alpha.is_positive() {
            return domain(format!("field parameter must be positive, got {alpha}"));
        }
        Ok(QuadFieldElement { alpha, x, y })
    }

    /// Gaussian rational `x + yi`.
    pub fn gaussian(x: impl Into<Rational>, y: impl Into<Rational>) -> Self {
        QuadFieldElement {
            alpha: Rational::one(),
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn zero(alpha: &Rational) -> Self {
        QuadFieldElement { alpha: alpha.clone(), x: Rational::zero(), y: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alpha != other.alpha {
            return domain(format!(
                "mixing elements of Q(sqrt(-{})) and Q(sqrt(-{}))",
                self.alpha, other.alpha
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadFieldElement {
            alpha: self.alpha.clone(),
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadFieldElement {
            alpha: self.alpha.clone(),
            x: &self.x * &other.x - &self.alpha * &self.y * &other.y,
            y: &self.x * &other.y + &self.y * &other.x,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("zero has no inverse");
        }
        let n = self.norm();
        Ok(self.conj().scale(&n.recip().unwrap()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn neg(&self) -> Self {
        QuadFieldElement { alpha: self.alpha.clone(), x: -&self.x, y: -&self.y }
    }

    pub fn conj(&self) -> Self {
        QuadFieldElement { alpha: self.alpha.clone(), x: self.x.clone(), y: -&self.y }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QuadFieldElement { alpha: self.alpha.clone(), x: c * &self.x, y: c * &self.y }
    }

    /// `x² + αy²`.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x + &self.alpha * &self.y * &self.y
    }
}

impl fmt::Display for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha.is_one() {
            write!(f, "{} + {}i", self.x, self.y)
        } else {
            write!(f, "{} + {}*sqrt(-{})", self.x, self.y, self.alpha)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    #[test]
    fn norms() {
        let c2 = QuadFieldElement::gaussian(1, 1);
        assert_eq!(c2.norm(), q(2, 1));
        let m = q(5, 1);
        let b = c2.scale(&m.recip().unwrap());
        assert_eq!(b.norm(), q(2, 25));
        assert_eq!(c2.conj(), QuadFieldElement::gaussian(1, -1));
    }

    #[test]
    fn alpha_mismatch() {
        let a = QuadFieldElement::gaussian(1, 1);
        let b = QuadFieldElement::new(q(2, 1), q(1, 1), q(0, 1)).unwrap();
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
        assert!(QuadFieldElement::new(q(-1, 1), q(1, 1), q(0, 1)).is_err());
    }

    fn elem() -> impl Strategy<Value = QuadFieldElement> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6)
            .prop_map(|(a, b, c, d)| QuadFieldElement::new(q(3, 1), q(a, b), q(c, d)).unwrap())
    }

    proptest! {
        #[test]
        fn field_laws(a in elem(), b in elem(), c in elem()) {
            let ab = a.try_mul(&b).unwrap();
            prop_assert_eq!(&ab, &b.try_mul(&a).unwrap());
            prop_assert_eq!(ab.try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
            let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
            let rhs = ab.try_add(&a.try_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(ab.norm(), a.norm() * b.norm());
            let n = a.try_mul(&a.conj()).unwrap();
            prop_assert_eq!(n.x, a.norm());
            prop_assert!(n.y.is_zero());
            if !a.is_zero() {
                let one = a.try_mul(&a.inverse().unwrap()).unwrap();
                prop_assert!(one.x.is_one() && one.y.is_zero());
            }
        }
    }
}
