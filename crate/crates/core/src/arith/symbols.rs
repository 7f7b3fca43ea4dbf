//! Square classes, Legendre and Hilbert symbols, norm groups.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::{factor, factor_integer, is_prime, jacobi};
use crate::error::{domain, Error, Result};
use crate::rational::Rational;

/// A place of Q. Finite places order before the real place.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(BigInt),
    Infinite,
}

impl Place {
    /// Finite place at `p`; fails unless `p` is prime.
    pub fn finite(p: impl Into<BigInt>) -> Result<Place> {
        let p = p.into();
        if !is_prime(&p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(Place::Finite(p))
    }

    pub fn two() -> Place {
        Place::Finite(BigInt::from(2))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Place::Infinite),
            t => {
                let p: BigInt = t.parse().map_err(|_| Error::Parse(format!("bad place `{t}`")))?;
                Place::finite(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Squarefree integer in the square class of `q`.
pub fn squarefree_part(q: &Rational) -> Result<BigInt> {
    let f = factor(q)?;
    let mut s = BigInt::from(f.sign);
    for (p, e) in &f.factors {
        if e.rem_euclid(2) == 1 {
            s *= p;
        }
    }
    Ok(s)
}

/// Integer in the square class of `q`: numerator times denominator.
fn integral_class(q: &Rational) -> BigInt {
    q.numer() * q.denom()
}

pub fn legendre_symbol(a: &BigInt, p: &BigInt) -> Result<i8> {
    if p == &BigInt::from(2) || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    Ok(jacobi(a, p))
}

fn valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut n = n.clone();
    let mut e = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        e += 1;
    }
    (e, n)
}

fn mod_small(n: &BigInt, m: u32) -> u32 {
    n.mod_floor(&BigInt::from(m)).to_u32().unwrap()
}

/// Hilbert symbol `(a, b)_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return domain("Hilbert symbol of zero");
    }
    let p = match v {
        Place::Infinite => {
            return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 });
        }
        Place::Finite(p) => p,
    };
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let (alpha, u) = valuation(&integral_class(a), p);
    let (beta, w) = valuation(&integral_class(b), p);
    let (alpha, beta) = (alpha % 2, beta % 2);
    let sign = |e: u32| if e % 2 == 0 { 1i8 } else { -1 };
    if p == &BigInt::from(2) {
        let eps = |x: &BigInt| (mod_small(x, 4) - 1) / 2;
        let omega = |x: &BigInt| {
            let r = mod_small(x, 8);
            (r * r - 1) / 8 % 2
        };
        return Ok(sign(eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u)));
    }
    let eps_p = mod_small(&((p - 1u32) / 2u32), 2);
    let mut s = sign(alpha * beta * eps_p);
    if beta == 1 {
        s *= jacobi(&u, p);
    }
    if alpha == 1 {
        s *= jacobi(&w, p);
    }
    Ok(s)
}

/// Places where `(a, b)_v` can be nontrivial: 2, primes of `a` and `b`, and
/// infinity, in ascending order.
pub fn relevant_places(values: &[&Rational]) -> Result<Vec<Place>> {
    let mut primes = std::collections::BTreeSet::from([BigInt::from(2)]);
    for q in values {
        if q.is_zero() {
            return domain("zero has no square class");
        }
        primes.extend(factor(q)?.primes().cloned());
    }
    let mut out: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    out.push(Place::Infinite);
    Ok(out)
}

pub fn is_sum_of_two_rational_squares(q: &Rational) -> bool {
    if !q.is_positive() {
        return false;
    }
    let four = BigInt::from(4);
    let three = BigInt::from(3);
    [q.numer(), q.denom()].into_iter().all(|n| {
        factor_integer(n)
            .iter()
            .all(|(p, e)| e % 2 == 0 || p.mod_floor(&four) != three)
    })
}

/// Whether `q` is a norm from Q(√−α), i.e. represented by x² + αy².
pub fn is_norm_of(q: &Rational, alpha: &Rational) -> Result<bool> {
    if !alpha.is_positive() {
        return domain("alpha must be positive");
    }
    if q.is_zero() {
        return domain("zero is not a norm");
    }
    if q.is_negative() {
        return Ok(false);
    }
    let minus_alpha = -alpha;
    for v in relevant_places(&[alpha, q])? {
        if hilbert_symbol(&minus_alpha, q, &v)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a positive integer is a perfect `k`-th power.
pub fn is_perfect_power(n: &BigInt, k: u32) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.nth_root(k);
    num_traits::pow(r, k as usize) == *n || n.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn p(n: i64) -> Place {
        Place::finite(n).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&q(8, 1)).unwrap(), BigInt::from(2));
        assert_eq!(squarefree_part(&q(-1, 1)).unwrap(), BigInt::from(-1));
        assert_eq!(squarefree_part(&q(50, 9)).unwrap(), BigInt::from(2));
        assert!(squarefree_part(&Rational::zero()).is_err());
    }

    #[test]
    fn legendre_examples() {
        let seven = BigInt::from(7);
        assert_eq!(legendre_symbol(&BigInt::from(1), &seven).unwrap(), 1);
        assert_eq!(legendre_symbol(&BigInt::from(2), &seven).unwrap(), 1);
        assert_eq!(legendre_symbol(&BigInt::from(3), &seven).unwrap(), -1);
        assert_eq!(legendre_symbol(&BigInt::from(14), &seven).unwrap(), 0);
        assert!(legendre_symbol(&BigInt::from(3), &BigInt::from(2)).is_err());
        assert!(legendre_symbol(&BigInt::from(3), &BigInt::from(9)).is_err());
    }

    #[test]
    fn hilbert_examples() {
        let m1 = q(-1, 1);
        assert_eq!(hilbert_symbol(&m1, &m1, &Place::Infinite).unwrap(), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, &p(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, &p(3)).unwrap(), 1);
        for v in [p(2), p(3), p(5), p(7), Place::Infinite] {
            assert_eq!(hilbert_symbol(&q(1, 1), &q(-7, 3), &v).unwrap(), 1);
        }
        // (2, 3)_3 = (2|3) = -1 and (2, 3)_2 = -1 by reciprocity.
        assert_eq!(hilbert_symbol(&q(2, 1), &q(3, 1), &p(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2, 1), &q(3, 1), &p(2)).unwrap(), -1);
        assert!(hilbert_symbol(&Rational::zero(), &m1, &p(2)).is_err());
    }

    #[test]
    fn sums_of_two_squares() {
        assert!(is_sum_of_two_rational_squares(&q(2, 1)));
        assert!(!is_sum_of_two_rational_squares(&q(3, 1)));
        assert!(is_sum_of_two_rational_squares(&q(9, 4)));
        assert!(!is_sum_of_two_rational_squares(&Rational::zero()));
        assert!(!is_sum_of_two_rational_squares(&q(-5, 1)));
        assert!(!is_sum_of_two_rational_squares(&q(1, 3)));
    }

    #[test]
    fn sum_of_two_squares_by_search() {
        // Brute force over small numerators and denominators.
        let mut reps = std::collections::BTreeSet::new();
        for d in 1..=6i64 {
            for x in 0..=12i64 {
                for y in 0..=12i64 {
                    if x + y > 0 {
                        reps.insert(q(x * x + y * y, d * d));
                    }
                }
            }
        }
        assert!(reps.contains(&q(9, 4)));
        for r in &reps {
            assert!(is_sum_of_two_rational_squares(r), "{r}");
        }
    }

    #[test]
    fn norm_examples() {
        let one = q(1, 1);
        assert!(!is_norm_of(&q(163, 1), &one).unwrap());
        assert!(is_norm_of(&q(5, 1), &one).unwrap());
        assert!(is_norm_of(&q(7, 1), &q(3, 1)).unwrap()); // 2² + 3·1²
        assert!(!is_norm_of(&q(5, 1), &q(3, 1)).unwrap());
        assert!(is_norm_of(&q(3, 1), &q(2, 1)).unwrap()); // 1 + 2
        assert!(is_norm_of(&q(1, 1), &one).unwrap());
        assert!(is_norm_of(&q(5, 1), &q(0, 1)).is_err());
        assert!(is_norm_of(&Rational::zero(), &one).is_err());
    }

    #[test]
    fn place_text() {
        assert_eq!(p(2).to_string(), "2");
        assert_eq!(Place::Infinite.to_string(), "inf");
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinite);
        assert!("4".parse::<Place>().is_err());
        assert!(p(97) < Place::Infinite);
    }
}
