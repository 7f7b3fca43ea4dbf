//! Brute-force reference for the Hilbert symbol.
//!
//! Decides whether `z² = a x² + b y²` has a nontrivial solution over Q_p by
//! lifting primitive solutions modulo p^k and applying Hensel's lemma, and
//! over R by looking at signs. It shares no code with the closed-form
//! symbol in [`crate::arith`].

/// Lifting depth per prime: once a and b have valuation at most one, every
/// p-adic solution reduces to one whose gradient valuation δ satisfies
/// 2δ + 1 ≤ depth.
fn depth(p: u64) -> u32 {
    if p == 2 {
        5
    } else {
        3
    }
}

fn strip_squares(mut a: i64, p: i64) -> i64 {
    while a % (p * p) == 0 {
        a /= p * p;
    }
    a
}

fn val(x: i128, p: i128, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let mut x = x;
    let mut e = 0;
    while x % p == 0 && e < cap {
        x /= p;
        e += 1;
    }
    e
}

/// Local solvability of `z² = a x² + b y²` at the prime `p` (or at the real
/// place when `p` is `None`), returned as ±1.
pub fn hilbert_symbol_bruteforce(a: i64, b: i64, p: Option<u64>) -> i8 {
    assert!(a != 0 && b != 0, "nonzero arguments required");
    let Some(p) = p else {
        return if a < 0 && b < 0 { -1 } else { 1 };
    };
    let pi = p as i64;
    let a = strip_squares(a, pi) as i128;
    let b = strip_squares(b, pi) as i128;
    let p = p as i128;
    let top = depth(p as u64);

    let form = |z: i128, x: i128, y: i128| z * z - a * x * x - b * y * y;
    let liftable = |sol: &(i128, i128, i128), k: u32| {
        let (z, x, y) = *sol;
        let d = val(2 * z, p, k)
            .min(val(2 * a * x, p, k))
            .min(val(2 * b * y, p, k));
        2 * d < k
    };

    let mut level: Vec<(i128, i128, i128)> = Vec::new();
    for z in 0..p {
        for x in 0..p {
            for y in 0..p {
                if (z, x, y) != (0, 0, 0) && form(z, x, y).rem_euclid(p) == 0 {
                    level.push((z, x, y));
                }
            }
        }
    }
    let mut pk = p;
    for k in 1..=top {
        if level.iter().any(|s| liftable(s, k)) {
            return 1;
        }
        if k == top {
            break;
        }
        let next_mod = pk * p;
        let mut next = Vec::new();
        for &(z, x, y) in &level {
            for tz in 0..p {
                for tx in 0..p {
                    for ty in 0..p {
                        let s = (z + tz * pk, x + tx * pk, y + ty * pk);
                        if form(s.0, s.1, s.2).rem_euclid(next_mod) == 0 {
                            next.push(s);
                        }
                    }
                }
            }
        }
        level = next;
        pk = next_mod;
    }
    -1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_values() {
        assert_eq!(hilbert_symbol_bruteforce(-1, -1, None), -1);
        assert_eq!(hilbert_symbol_bruteforce(-1, -1, Some(2)), -1);
        assert_eq!(hilbert_symbol_bruteforce(-1, -1, Some(3)), 1);
        assert_eq!(hilbert_symbol_bruteforce(1, 7, Some(2)), 1);
        // 2 is a non-residue mod 3, so z² = 2x² + 3y² has no primitive 3-adic solution.
        assert_eq!(hilbert_symbol_bruteforce(2, 3, Some(3)), -1);
        assert_eq!(hilbert_symbol_bruteforce(2, 3, Some(2)), -1);
        assert_eq!(hilbert_symbol_bruteforce(2, 3, Some(5)), 1);
        // Multiplying by a square changes nothing.
        assert_eq!(hilbert_symbol_bruteforce(8, 12, Some(2)), -1);
    }
}
