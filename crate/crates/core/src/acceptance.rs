//! The acceptance suite: ten numbered criteria, each with a time limit.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{hilbert_symbol, relevant_places, Place};
use crate::error::{Error, Result};
use crate::forms::QuadraticForm;
use crate::frobenius::{
    av_gamma_check, bv_small_diagonal_identity, check_frobenius_axioms, classify_map, cy_scaling_solvable,
    default_k3_model, euler_multiple_of_point, generate_maps, mutation_models, twisted_isometry_map, ScalarField,
};
use crate::k3::{
    catalog, fermat_constraints_check, fermat_solution, hyperbolic_plane, k3_lattice, lem_el_sequence,
    pairwise_isogeny_obstruction, scale_isometry_possible, theorem_a_family, theorem_b_family,
};
use crate::linalg::RatMatrix;
use crate::oracle::hilbert_symbol_bruteforce;
use crate::orbifold::{
    epsilon_exponent_twice, goettsche_oracle, graph_defect_twice, joint_orbits, sn_invariant_dimension,
    total_dimension, Permutation, SymmetricPower,
};
use crate::rational::Rational;

pub const DEFAULT_SEED: u64 = 0x6b33_f20b;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    /// The checks themselves succeeded.
    pub verdict: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl CriterionOutcome {
    pub fn within_limit(&self) -> bool {
        self.elapsed_ms <= self.limit_ms
    }

    pub fn passed(&self) -> bool {
        self.verdict && self.within_limit()
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {}: {} ({} ms, limit {} ms) {}",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub version: &'static str,
    pub criteria: Vec<CriterionOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionOutcome::passed)
    }
}

pub const TITLES: [&str; 10] = [
    "Hilbert symbol conformance and reciprocity",
    "twist lemma suite",
    "family of primes 3 mod 4",
    "family of primes 1 mod 4",
    "Fermat solutions and recurrence",
    "integral scale rigidity",
    "Frobenius axioms and small diagonal",
    "map classification equivalences",
    "abelian and Calabi-Yau kernels",
    "orbifold suite",
];

pub const LIMITS_S: [u64; 10] = [5, 10, 2, 2, 30, 1, 20, 30, 10, 180];

/// Runs one criterion (1-based).
pub fn run_criterion(id: u8, seed: u64) -> Result<CriterionOutcome> {
    if !(1..=10).contains(&id) {
        return Err(Error::Domain(format!("no criterion {id}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let start = Instant::now();
    let result = match id {
        1 => c1(&mut rng),
        2 => c2(&mut rng),
        3 => c3(),
        4 => c4(),
        5 => c5(),
        6 => c6(),
        7 => c7(),
        8 => c8(&mut rng),
        9 => c9(&mut rng),
        _ => c10(&mut rng),
    };
    let elapsed = start.elapsed();
    let (verdict, detail) = match result {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    let i = id as usize - 1;
    Ok(CriterionOutcome {
        id,
        title: TITLES[i],
        verdict,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: Duration::from_secs(LIMITS_S[i]).as_millis(),
    })
}

pub fn run_all(seed: u64) -> SuiteReport {
    SuiteReport {
        seed,
        version: env!("CARGO_PKG_VERSION"),
        criteria: (1..=10).map(|i| run_criterion(i, seed).expect("valid id")).collect(),
    }
}

type Check = Result<(bool, String)>;

fn random_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    loop {
        let p = rng.gen_range(-bound..=bound);
        let q = rng.gen_range(1..=bound);
        if p != 0 {
            return Rational::new(p, q);
        }
    }
}

fn c1(rng: &mut impl Rng) -> Check {
    let values = [1i64, -1, 2, -2, 3, -3, 5, -5];
    let places: [Option<u64>; 4] = [Some(2), Some(3), Some(5), None];
    let mut agree = 0;
    let mut total = 0;
    let mut first_bad = None;
    for &a in &values {
        for &b in &values {
            for p in places {
                let place = match p {
                    Some(p) => Place::finite(p)?,
                    None => Place::Infinite,
                };
                let closed = hilbert_symbol(&Rational::from(a), &Rational::from(b), &place)?;
                let brute = hilbert_symbol_bruteforce(a, b, p);
                total += 1;
                if closed == brute {
                    agree += 1;
                } else if first_bad.is_none() {
                    first_bad = Some(format!("({a},{b})_{place}"));
                }
            }
        }
    }
    let mut reciprocal = 0;
    for _ in 0..200 {
        let a = random_rational(rng, 10_000);
        let b = random_rational(rng, 10_000);
        let mut prod = 1i8;
        for v in relevant_places(&[&a, &b])? {
            prod *= hilbert_symbol(&a, &b, &v)?;
        }
        if prod == 1 {
            reciprocal += 1;
        }
    }
    let ok = agree == total && reciprocal == 200;
    Ok((ok, format!("closed form = brute force {agree}/{total}, reciprocity {reciprocal}/200{}", first_bad.map(|s| format!(", first mismatch {s}")).unwrap_or_default())))
}

fn random_positive(rng: &mut impl Rng) -> Rational {
    match rng.gen_range(0..3) {
        0 => Rational::from(rng.gen_range(1..=200i64)),
        1 => Rational::new(rng.gen_range(1..=60i64), rng.gen_range(1..=60i64)),
        _ => {
            // Products of small primes hit both branches often.
            let ps = [2i64, 3, 5, 7, 11, 13];
            let mut m = 1i64;
            for _ in 0..rng.gen_range(1..=3) {
                m *= ps[rng.gen_range(0..ps.len())];
            }
            Rational::from(m)
        }
    }
}

fn c2(rng: &mut impl Rng) -> Check {
    let forms: Vec<(&str, QuadraticForm)> = vec![
        ("U", hyperbolic_plane().form()),
        ("U+U", catalog("U")?.direct_sum(&catalog("U")?, "U+U").form()),
        ("<8,8>", QuadraticForm::from_i64(&[vec![8, 0], vec![0, 8]])?),
        ("E8(-1)", catalog("E8_minus")?.form()),
    ];
    let mut verdicts = 0;
    let mut epsilon_checks = 0;
    let mut epsilon_ok = 0;
    let mut bad = Vec::new();
    for (name, q) in &forms {
        for _ in 0..50 {
            let m = random_positive(rng);
            let twisted = q.twist(&m)?;
            let actual = q.is_equivalent(&twisted)?;
            match q.lemma_predicts_twist_equivalent(&m)? {
                Some(p) if p == actual => verdicts += 1,
                other => bad.push(format!("{name} m={m}: lemma {other:?}, invariants {actual}")),
            }
            let inv = twisted.invariants()?;
            let disc = Rational::from(inv.disc_class.clone());
            let mut places = relevant_places(&[&disc, &m])?;
            places.extend(q.invariants()?.hasse.keys().cloned());
            places.sort();
            places.dedup();
            for v in places {
                epsilon_checks += 1;
                if q.hasse_epsilon_twist(&m, &v)? == inv.hasse_at(&v) {
                    epsilon_ok += 1;
                } else {
                    bad.push(format!("{name} m={m}: epsilon mismatch at {v}"));
                }
            }
        }
    }
    let ok = verdicts == 200 && epsilon_ok == epsilon_checks;
    Ok((ok, format!("verdicts {verdicts}/200, epsilon {epsilon_ok}/{epsilon_checks}{}", bad.first().map(|b| format!(", {b}")).unwrap_or_default())))
}

fn c3() -> Check {
    let cert = theorem_a_family(10)?;
    let expected: Vec<u64> = vec![3, 7, 11, 19, 23, 31, 43, 47, 59, 67];
    let obstructed = cert.obstructed_pairs();
    let agree = cert.agreeing_pairs();
    let non_iso = cert.per_pair.iter().filter(|p| !p.q_iso).count();
    let ok = cert.twists == expected && obstructed == 45 && agree == 45 && non_iso == 45 && cert.holds();
    Ok((ok, format!("non-isometric {non_iso}/45, double derivation {agree}/45")))
}

fn c4() -> Check {
    let u = hyperbolic_plane();
    let t = u.direct_sum(&u, "U+U");
    let cert = theorem_b_family(&t, 10)?;
    let expected: Vec<u64> = vec![5, 13, 17, 29, 37, 41, 53, 61, 73, 89];
    let isometric = cert.per_member.iter().filter(|m| m.q_iso_to_base).count();
    let nonsquare = cert.obstructed_pairs();
    let rejected = match theorem_b_family(&k3_lattice(), 10) {
        Err(Error::Precondition(msg)) => msg.contains("signature not in allowed set"),
        _ => false,
    };
    let ok = cert.twists == expected && isometric == 10 && nonsquare == 45 && cert.holds() && rejected;
    Ok((ok, format!("isometric twists {isometric}/10, nonsquare products {nonsquare}/45, signature rejection {rejected}")))
}

fn c5() -> Check {
    let mut fermat_ok = 0;
    for m in 1..=20u64 {
        let chk = fermat_constraints_check(&fermat_solution(m)?)?;
        let mm = Rational::from(m as i64);
        let expected = Rational::from(2) / (&mm * &mm) * (Rational::from(2) * mm.pow(4) + Rational::one());
        if chk.valid && chk.obstruction_value == expected {
            fermat_ok += 1;
        }
    }
    let report = lem_el_sequence(4)?;
    // The recurrence evaluated directly in machine integers.
    let mut ms: Vec<u128> = vec![1];
    while ms.len() < 4 {
        ms.push(ms.iter().map(|m| 2 * m.pow(4) + 1).product());
    }
    let expected: Vec<BigInt> = ms.iter().map(|&m| BigInt::from(m)).collect();
    let sequence_ok = report.sequence() == expected;
    let mut ratio_ok = 0;
    let mut ratio_total = 0;
    let one = Rational::one();
    for (j, mj) in ms.iter().enumerate() {
        for mk in ms.iter().skip(j + 1) {
            let value = |m: u128| {
                let m = Rational::from_int(BigInt::from(m));
                Rational::from(2) / (&m * &m) * (Rational::from(2) * m.pow(4) + Rational::one())
            };
            ratio_total += 1;
            if pairwise_isogeny_obstruction(&value(*mj), &value(*mk), &one)? {
                ratio_ok += 1;
            }
        }
    }
    let ok = fermat_ok == 20 && sequence_ok && report.holds() && ratio_ok == ratio_total;
    Ok((
        ok,
        format!(
            "Fermat solutions {fermat_ok}/20, sequence {:?}, norm predicates {}, ratio obstructions {ratio_ok}/{ratio_total}",
            ms,
            report.holds()
        ),
    ))
}

fn c6() -> Check {
    let l = k3_lattice();
    let mut ok = 0;
    for c in (-10..=10).filter(|&c| c != 0) {
        if scale_isometry_possible(&l, c)? == (c == 1) {
            ok += 1;
        }
    }
    Ok((ok == 20, format!("{ok}/20 scales")))
}

fn c7() -> Check {
    let a = default_k3_model();
    let axioms = check_frobenius_axioms(&a);
    let bv = bv_small_diagonal_identity(&a)?;
    let euler = euler_multiple_of_point(&a)?;
    let mutants = mutation_models(&a);
    let failing = mutants.iter().filter(|(_, m)| !check_frobenius_axioms(m).passes()).count();
    let ok = axioms.passes() && bv && euler == Some(Rational::from(24)) && mutants.len() == 5 && failing == 5;
    Ok((
        ok,
        format!(
            "axioms {}, small diagonal {bv}, euler {}, mutations failing {failing}/{}",
            axioms.passes(),
            euler.map(|e| format!("{e}*o")).unwrap_or_else(|| "not a multiple of o".into()),
            mutants.len()
        ),
    ))
}

fn c8(rng: &mut impl Rng) -> Check {
    let a = Arc::new(default_k3_model());
    let mut maps = Vec::new();
    for m in [2, 3, 5] {
        maps.push((Some(m), twisted_isometry_map(a.clone(), m, None)?));
    }
    for map in generate_maps(&a, 97, rng)? {
        let m = map.label.strip_prefix("twisted isometry m=").and_then(|s| s.parse::<i64>().ok());
        maps.push((m, map));
    }
    let mut agree = 0;
    let mut twisted = 0;
    let mut twisted_ok = 0;
    let mut laws = true;
    for (m, map) in &maps {
        let c = classify_map(map)?;
        if c.criteria_agree {
            agree += 1;
        }
        if c.algebra_hom && c.nonzero && !c.unit_preserved {
            laws = false;
        }
        if c.adjoint_law == Some(false) {
            laws = false;
        }
        if let Some(m) = m {
            twisted += 1;
            if c.algebra_hom && c.invertible && !c.frobenius_iso && c.degree_c == Some(Rational::from(*m)) {
                twisted_ok += 1;
            }
        }
    }
    let ok = maps.len() == 100 && agree == 100 && twisted_ok == twisted && laws;
    Ok((ok, format!("agreement {agree}/{}, twisted maps {twisted_ok}/{twisted} with c = m, unit and adjoint laws {laws}", maps.len())))
}

fn random_unimodular(rng: &mut impl Rng, n: usize) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let f = Rational::from(rng.gen_range(-2i64..=2));
        let mut e = RatMatrix::identity(n);
        e[(i, j)] = f;
        m = e.mul(&m).unwrap();
    }
    m
}

fn c9(rng: &mut impl Rng) -> Check {
    let mut consistent = 0;
    let mut frobenius = 0;
    let mut bad = None;
    for trial in 0..50 {
        let g = rng.gen_range(1..=2usize);
        let n = 2 * g;
        let f1 = if trial % 2 == 0 {
            let k = Rational::from(rng.gen_range(1..=3i64));
            random_unimodular(rng, n).scale(&k)
        } else {
            loop {
                let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
                let mut m = RatMatrix::from_i64(&rows);
                let d = m.det()?;
                if d.is_zero() {
                    continue;
                }
                if d.is_negative() {
                    for i in 0..n {
                        m[(i, 0)] = -m[(i, 0)].clone();
                    }
                }
                break m;
            }
        };
        let lambda = match rng.gen_range(0..4) {
            0 => Rational::one(),
            1 => Rational::from(rng.gen_range(2..=3i64)),
            2 => Rational::new(rng.gen_range(1..=5i64), rng.gen_range(1..=3i64)),
            _ => Rational::from(-rng.gen_range(1..=3i64)),
        };
        let rep = av_gamma_check(g, &lambda, &f1)?;
        if rep.frobenius_iso {
            frobenius += 1;
        }
        if rep.consistent() {
            consistent += 1;
        } else if bad.is_none() {
            bad = Some(format!("g={g} lambda={lambda} deg={}", rep.degree));
        }
    }
    use ScalarField::*;
    let s = Rational::new(42, 14);
    let cy = cy_scaling_solvable(3, &s, Rationals, false)?
        && !cy_scaling_solvable(3, &s, Rationals, true)?
        && cy_scaling_solvable(3, &s, Reals, true)?;
    let ok = consistent == 50 && cy;
    Ok((
        ok,
        format!(
            "abelian instances {consistent}/50 ({frobenius} Frobenius), Calabi-Yau verdicts {cy}{}",
            bad.map(|b| format!(", first mismatch {b}")).unwrap_or_default()
        ),
    ))
}

fn c10(rng: &mut impl Rng) -> Check {
    let mut pairs = 0;
    let mut parity_ok = 0;
    let mut defects = 0;
    let mut defect_ok = 0;
    for n in 1..=4 {
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        for g in &perms {
            for h in &perms {
                pairs += 1;
                if epsilon_exponent_twice(g, h) % 2 == 0 {
                    parity_ok += 1;
                }
                for t in joint_orbits(g, h)?.blocks {
                    defects += 1;
                    let d = graph_defect_twice(g, h, &t)?;
                    if d >= 0 && d % 2 == 0 {
                        defect_ok += 1;
                    }
                }
            }
        }
    }
    let model = Arc::new(default_k3_model());
    let mut assoc = Vec::new();
    for n in [2, 3] {
        let s = SymmetricPower::new(n, model.clone())?;
        let mut ok = 0;
        let mut nontrivial = 0;
        for _ in 0..200 {
            let x = s.random_element(rng, 3);
            let y = s.random_element(rng, 3);
            let z = s.random_element(rng, 3);
            let left = s.star(&s.star(&x, &y)?, &z)?;
            let right = s.star(&x, &s.star(&y, &z)?)?;
            if left == right {
                ok += 1;
            }
            if !left.is_zero() {
                nontrivial += 1;
            }
        }
        assoc.push((ok, nontrivial));
    }
    let mut graded = Vec::new();
    for n in [2, 3] {
        let dims = sn_invariant_dimension(n, &model)?;
        let oracle = goettsche_oracle(n)?;
        graded.push((dims == oracle, total_dimension(&dims)));
    }
    let ok = parity_ok == pairs
        && defect_ok == defects
        && assoc.iter().all(|&(a, _)| a == 200)
        && graded.iter().all(|(m, _)| *m)
        && graded[0].1 == BigInt::from(324);
    Ok((
        ok,
        format!(
            "parity {parity_ok}/{pairs}, defects {defect_ok}/{defects}, associativity n=2 {}/200 ({} nonzero) n=3 {}/200 ({} nonzero), graded match n=2 {} (total {}) n=3 {} (total {})",
            assoc[0].0, assoc[0].1, assoc[1].0, assoc[1].1, graded[0].0, graded[0].1, graded[1].0, graded[1].1
        ),
    ))
}
