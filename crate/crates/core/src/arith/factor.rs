//! Integer factorization and primality.
//!
//! Small factors come out by trial division; larger composite cofactors are
//! split with Brent's variant of Pollard rho. Primality is deterministic
//! Miller-Rabin below 3.3e24 and Baillie-PSW above.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::rational::Rational;

const TRIAL_BOUND: u32 = 1 << 14;

/// Signed factorization of a nonzero rational; denominator primes carry
/// negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFactorization {
    pub sign: i8,
    pub factors: BTreeMap<BigInt, i64>,
}

impl PrimeFactorization {
    pub fn exponent(&self, p: &BigInt) -> i64 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.keys()
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, &e) in &self.factors {
            if e > 0 {
                num *= num_traits::pow(p.clone(), e as usize);
            } else {
                den *= num_traits::pow(p.clone(), (-e) as usize);
            }
        }
        Rational::new(num * self.sign as i64, den)
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.sign < 0 { "-" } else { "+" })?;
        let parts: Vec<String> = self.factors.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Factors a nonzero rational.
pub fn factor(q: &Rational) -> Result<PrimeFactorization> {
    if q.is_zero() {
        return domain("cannot factor zero");
    }
    let mut factors = BTreeMap::new();
    for (p, e) in factor_integer(&q.numer().abs()) {
        *factors.entry(p).or_insert(0) += e as i64;
    }
    for (p, e) in factor_integer(q.denom()) {
        *factors.entry(p).or_insert(0) -= e as i64;
    }
    Ok(PrimeFactorization {
        sign: q.signum(),
        factors,
    })
}

/// Prime factorization of a positive integer (empty for 1).
pub fn factor_integer(n: &BigInt) -> BTreeMap<BigInt, u32> {
    assert!(n.is_positive(), "factor_integer needs a positive integer");
    let mut out = BTreeMap::new();
    let mut m = n.clone();
    for p in small_primes(TRIAL_BOUND) {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.insert(bp, e);
        }
    }
    if !m.is_one() {
        split_into(&m, &mut out);
    }
    out
}

fn split_into(n: &BigInt, out: &mut BTreeMap<BigInt, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(n) {
        *out.entry(n.clone()).or_insert(0) += 1;
        return;
    }
    if let Some(r) = perfect_square_root(n) {
        split_into(&r, out);
        split_into(&r, out);
        return;
    }
    let d = pollard_brent(n);
    split_into(&d, out);
    split_into(&(n / &d), out);
}

fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nontrivial divisor of an odd composite `n`.
fn pollard_brent(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        if let Some(d) = brent_attempt(n, &c) {
            return d;
        }
        c += 1;
    }
}

fn brent_attempt(n: &BigInt, c: &BigInt) -> Option<BigInt> {
    let f = |x: &BigInt| (x * x + c) % n;
    let m = 128usize;
    let mut y = BigInt::from(2);
    let mut r = 1usize;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Primes up to and including `bound`.
pub fn small_primes(bound: u32) -> Vec<u32> {
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let bp = BigInt::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    if let Some(small) = n.to_u64() {
        return miller_rabin_u64(small);
    }
    // Deterministic bound for the first thirteen prime bases.
    let bound: BigInt = "3317044064679887385961981".parse().unwrap();
    if n < &bound {
        return [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
            .iter()
            .all(|&a| strong_probable_prime(n, &BigInt::from(a)));
    }
    strong_probable_prime(n, &BigInt::from(2)) && strong_lucas_probable_prime(n)
}

fn miller_rabin_u64(n: u64) -> bool {
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigInt, a: &BigInt) -> bool {
    let n1: BigInt = n - 1;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Strong Lucas test with Selfridge parameters (method A).
fn strong_lucas_probable_prime(n: &BigInt) -> bool {
    if perfect_square_root(n).is_some() {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 if d.abs() != *n => return false,
            _ => {}
        }
        d = if d.is_positive() { -(d + 2u32) } else { 2u32 - d };
    }
    let q: BigInt = (BigInt::one() - &d) / 4u32;
    let modn = |x: BigInt| x.mod_floor(n);
    let half = |x: BigInt| {
        let x: BigInt = if x.is_odd() { x + n } else { x };
        (x / 2u32).mod_floor(n)
    };

    let np1: BigInt = n + 1;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;

    // Left-to-right ladder over the bits of k with P = 1.
    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = modn(q.clone());
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = modn(&u * &v);
        v = modn(&v * &v - 2 * &qk);
        qk = modn(&qk * &qk);
        if k.bit(i) {
            let nu = half(&u + &v);
            let nv = half(&d * &u + &v);
            u = nu;
            v = nv;
            qk = modn(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = modn(&v * &v - 2 * &qk);
        if v.is_zero() {
            return true;
        }
        qk = modn(&qk * &qk);
    }
    false
}

/// Jacobi symbol `(a | n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i8 {
    assert!(n.is_positive() && n.is_odd(), "jacobi needs an odd positive modulus");
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i8;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn factor_examples() {
        let f = factor(&q(12, 1)).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.factors, BTreeMap::from([(BigInt::from(2), 2), (BigInt::from(3), 1)]));

        let f = factor(&q(1, 1)).unwrap();
        assert_eq!(f.sign, 1);
        assert!(f.factors.is_empty());

        let f = factor(&q(-8, 9)).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, BTreeMap::from([(BigInt::from(2), 3), (BigInt::from(3), -2)]));
        assert_eq!(f.value(), q(-8, 9));

        assert!(factor(&Rational::zero()).is_err());
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let primes = small_primes(5000);
        for n in 0..5000u32 {
            assert_eq!(is_prime(&BigInt::from(n)), primes.binary_search(&n).is_ok(), "n = {n}");
        }
    }

    #[test]
    fn large_primes_and_composites() {
        // Mersenne primes 2^89 - 1 and 2^127 - 1.
        assert!(is_prime(&((BigInt::one() << 89) - 1)));
        assert!(is_prime(&((BigInt::one() << 127) - 1)));
        assert!(!is_prime(&((BigInt::one() << 128) + 1)));
        // Strong pseudoprime to bases 2..37 (Arnault-type sizes are beyond
        // this, but a Carmichael number times a large prime must fail).
        let carmichael = BigInt::from(561u32) * ((BigInt::one() << 89) - 1);
        assert!(!is_prime(&carmichael));
        assert!(is_prime(&big("93659677189945829193511643038173538496627")));
    }

    #[test]
    fn rho_splits_large_semiprime() {
        let p = big("48416684473");
        let r = big("93659677189945829193511643038173538496627");
        let n = BigInt::from(19 * 227) * &p * &r;
        let f = factor_integer(&n);
        assert_eq!(f.len(), 4);
        assert_eq!(f[&p], 1);
        assert_eq!(f[&r], 1);
    }

    #[test]
    fn jacobi_small() {
        // Squares mod 7 are {1, 2, 4}.
        let res: Vec<i8> = (0..7).map(|a| jacobi(&BigInt::from(a), &BigInt::from(7))).collect();
        assert_eq!(res, vec![0, 1, 1, -1, 1, -1, -1]);
    }
}
