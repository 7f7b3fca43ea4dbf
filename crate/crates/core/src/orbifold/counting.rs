//! Invariant dimensions of the symmetric-power orbifold ring and an
//! independent Betti-number oracle for Hilbert schemes of points on K3.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::perm::{orbits, Permutation};
use crate::error::{Error, Result};
use crate::frobenius::GradedFrobeniusAlgebra;

pub const MAX_INVARIANT_N: usize = 5;
pub const MAX_ORACLE_N: usize = 5;

/// Degree ↦ dimension.
pub type Graded = BTreeMap<u32, BigInt>;

fn poly_mul(a: &Graded, b: &Graded) -> Graded {
    let mut out = Graded::new();
    for (da, ca) in a {
        for (db, cb) in b {
            *out.entry(da + db).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// P_A(t^ℓ): degrees multiplied by ℓ.
fn stretched(p: &Graded, l: u32) -> Graded {
    p.iter().map(|(d, c)| (d * l, c.clone())).collect()
}

pub fn poincare_polynomial(a: &GradedFrobeniusAlgebra) -> Graded {
    let mut p = Graded::new();
    for &d in a.degrees() {
        *p.entry(d).or_insert_with(BigInt::zero) += 1;
    }
    p
}

/// Dimension of the S_n-invariants of ⊕_g A^{⊗O(g)}, graded with the
/// 2·age(g) shift, by averaging fixed-point counts over the conjugation
/// action on monomials.
pub fn sn_invariant_dimension(n: usize, a: &GradedFrobeniusAlgebra) -> Result<Graded> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    if n > MAX_INVARIANT_N {
        return Err(Error::Budget(format!("invariant count limited to n <= {MAX_INVARIANT_N}, got {n}")));
    }
    if a.degrees().iter().any(|d| d % 2 == 1) {
        return Err(Error::Domain("monomial counting needs an even coefficient algebra".into()));
    }
    let pa = poincare_polynomial(a);
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let mut total = Graded::new();
    for g in &perms {
        let og = orbits(g);
        let shift = 2 * g.age() as u32;
        for k in &perms {
            if g.conjugate_by(k) != *g {
                continue;
            }
            // k permutes the g-orbits; a fixed monomial is constant on its cycles.
            let mut seen = vec![false; og.len()];
            let mut fixed: Graded = [(shift, BigInt::one())].into();
            for s in 0..og.len() {
                if seen[s] {
                    continue;
                }
                let mut len = 0;
                let mut cur = s;
                while !seen[cur] {
                    seen[cur] = true;
                    len += 1;
                    cur = og.block_of(k.apply(og.blocks[cur][0]));
                }
                fixed = poly_mul(&fixed, &stretched(&pa, len));
            }
            for (d, c) in fixed {
                *total.entry(d).or_insert_with(BigInt::zero) += c;
            }
        }
    }
    let order = BigInt::from(perms.len());
    let mut out = Graded::new();
    for (d, c) in total {
        assert!((&c % &order).is_zero(), "orbit count not integral in degree {d}");
        out.insert(d, c / &order);
    }
    Ok(out)
}

pub fn total_dimension(p: &Graded) -> BigInt {
    p.values().sum()
}

/// Betti numbers of Hilbⁿ(K3) from
/// Σ_n P(Hilbⁿ) tⁿ = ∏_{k≥1} ∏_i (1 − (−1)^i z^{2k−2+i} t^k)^{−(−1)^i b_i}.
pub fn goettsche_oracle(n: usize) -> Result<Graded> {
    goettsche_for_surface(n, &[1, 0, 22, 0, 1])
}

/// Same expansion for a surface with Betti numbers `b[0..=4]`.
pub fn goettsche_for_surface(n: usize, b: &[u64; 5]) -> Result<Graded> {
    if n > MAX_ORACLE_N {
        return Err(Error::Budget(format!("oracle limited to n <= {MAX_ORACLE_N}, got {n}")));
    }
    // Series in t truncated at tⁿ, each coefficient a polynomial in z.
    let mut series: Vec<Graded> = vec![Graded::new(); n + 1];
    series[0].insert(0, BigInt::one());
    for k in 1..=n {
        for (i, &bi) in b.iter().enumerate() {
            if bi == 0 {
                continue;
            }
            let zdeg = (2 * k - 2 + i) as u32;
            // Odd i: (1 + z^a t^k)^{b}; even i: (1 − z^a t^k)^{−b}.
            let mut factor: Vec<Graded> = vec![Graded::new(); n + 1];
            let mut m = 0;
            while k * m <= n {
                let c = if i % 2 == 1 {
                    if m as u64 > bi {
                        break;
                    }
                    binomial(BigInt::from(bi), BigInt::from(m))
                } else {
                    binomial(BigInt::from(bi + m as u64 - 1), BigInt::from(m))
                };
                factor[k * m].insert(zdeg * m as u32, c);
                m += 1;
            }
            let mut next: Vec<Graded> = vec![Graded::new(); n + 1];
            for (p, sp) in series.iter().enumerate() {
                for (q, fq) in factor.iter().enumerate() {
                    if p + q > n || sp.is_empty() || fq.is_empty() {
                        continue;
                    }
                    for (d, c) in poly_mul(sp, fq) {
                        *next[p + q].entry(d).or_insert_with(BigInt::zero) += c;
                    }
                }
            }
            series = next;
        }
    }
    Ok(series.swap_remove(n))
}
