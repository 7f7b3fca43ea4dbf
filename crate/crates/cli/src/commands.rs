use std::sync::Arc;

use k3_frobenius::acceptance::run_all;
use k3_frobenius::arith::Place;
use k3_frobenius::frobenius::{
    assemble_gamma, av_frobenius_possible, av_gamma_check, bv_small_diagonal_identity, check_frobenius_axioms,
    classify_map, cy_scaling_solvable, default_k3_model, euler_multiple_of_point, generate_maps, mutation_models,
    AlgebraMap, ScalarField,
};
use k3_frobenius::k3::{
    catalog, fermat_constraints_check, fermat_solution, hyperbolic_plane, k3_lattice, lem_el_sequence,
    scale_isometry_possible, theorem_a_family, theorem_b_family, CATALOG_NAMES,
};
use k3_frobenius::linalg::RatMatrix;
use k3_frobenius::orbifold::{
    epsilon_exponent_twice, epsilon_sign, goettsche_oracle, graph_defect, joint_orbits, orbits,
    sn_invariant_dimension, total_dimension, Graded, Permutation, SectorElement, SymmetricPower,
};
use k3_frobenius::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::*;
use crate::input;
use crate::report::Outcome;

type R = Result<Outcome, Error>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn name(cmd: &Command) -> String {
    let (group, sub) = match cmd {
        Command::Qf(q) => ("qf", match q {
            Qf::Invariants(_) => "invariants",
            Qf::Equiv { .. } => "equiv",
            Qf::Twist { .. } => "twist",
            Qf::LemmaClass(_) => "lemma-class",
        }),
        Command::K3(k) => ("k3", match k {
            K3::FamilyA { .. } => "family-a",
            K3::FamilyB { .. } => "family-b",
            K3::LemEl { .. } => "lem-el",
            K3::Fermat { .. } => "fermat",
            K3::ScaleCheck { .. } => "scale-check",
            K3::Catalog { .. } => "catalog",
        }),
        Command::Frob(f) => ("frob", match f {
            Frob::Axioms { .. } => "axioms",
            Frob::Classify { .. } => "classify",
            Frob::Bv { .. } => "bv",
            Frob::Assemble { .. } => "assemble",
            Frob::Abelian { .. } => "abelian",
            Frob::Cy { .. } => "cy",
        }),
        Command::Orb(o) => ("orb", match o {
            Orb::Defect(_) => "defect",
            Orb::Epsilon(_) => "epsilon",
            Orb::Star { .. } => "star",
            Orb::InvariantDim { .. } => "invariant-dim",
            Orb::Associativity { .. } => "associativity",
            Orb::Oracle { .. } => "oracle",
        }),
        Command::Suite(Suite::Acceptance) => ("suite", "acceptance"),
    };
    format!("{group} {sub}")
}

pub fn run(cmd: &Command, seed: u64) -> R {
    match cmd {
        Command::Qf(q) => qf(q),
        Command::K3(k) => k3(k),
        Command::Frob(f) => frob(f, seed),
        Command::Orb(o) => orb(o, seed),
        Command::Suite(Suite::Acceptance) => suite(seed),
    }
}

fn hasse_line(h: &std::collections::BTreeMap<Place, i8>) -> String {
    h.iter().map(|(p, e)| format!("{p}:{e:+}")).collect::<Vec<_>>().join(" ")
}

fn qf(cmd: &Qf) -> R {
    match cmd {
        Qf::Invariants(f) => {
            let q = input::form(&f.input)?;
            let inv = q.invariants()?;
            Ok(Outcome::new(None, &inv).line(format!(
                "rank {}, signature {:?}, disc {}, hasse {}",
                inv.rank,
                inv.signature,
                inv.disc_class,
                hasse_line(&inv.hasse)
            )))
        }
        Qf::Equiv { left, right } => {
            let (l, r) = (input::form(left)?, input::form(right)?);
            let equivalent = l.is_equivalent(&r)?;
            let result = json!({
                "equivalent": equivalent,
                "left": l.invariants()?,
                "right": r.invariants()?,
            });
            Ok(Outcome::new(Some(equivalent), result).line(format!("equivalent over Q: {equivalent}")))
        }
        Qf::Twist { form, m } => {
            let q = input::form(&form.input)?;
            let m = input::rational(m)?;
            let twisted = q.twist(&m)?;
            let equivalent = q.is_equivalent(&twisted)?;
            let prediction = if m.is_positive() { q.lemma_predicts_twist_equivalent(&m)? } else { None };
            let agrees = prediction.is_none_or(|p| p == equivalent);
            let result = json!({
                "m": m,
                "twisted": twisted,
                "invariants": twisted.invariants()?,
                "equivalent_to_base": equivalent,
                "lemma_prediction": prediction,
            });
            Ok(Outcome::new(Some(agrees), result)
                .line(format!("Q({m}) equivalent to Q: {equivalent}"))
                .line(format!("lemma prediction: {}", prediction.map_or("not applicable".into(), |p| p.to_string()))))
        }
        Qf::LemmaClass(f) => {
            let q = input::form(&f.input)?;
            let class = q.lemma_twist_class()?;
            Ok(Outcome::new(None, json!({ "class": class })).line(format!("{class:?}")))
        }
    }
}

fn k3(cmd: &K3) -> R {
    match cmd {
        K3::FamilyA { count } => {
            let cert = theorem_a_family(*count)?;
            let (ob, ag, n) = (cert.obstructed_pairs(), cert.agreeing_pairs(), cert.per_pair.len());
            Ok(Outcome::new(Some(cert.holds()), &cert)
                .line(format!("twists {:?}", cert.twists))
                .line(format!("pairwise obstructions {ob}/{n}, derivations agreeing {ag}/{n}")))
        }
        K3::FamilyB { count, input: t } => {
            let t = match t {
                Some(s) => input::lattice(s)?,
                None => {
                    let u = hyperbolic_plane();
                    u.direct_sum(&u, "U+U")
                }
            };
            let cert = theorem_b_family(&t, *count)?;
            let iso = cert.per_member.iter().filter(|m| m.q_iso_to_base).count();
            let n = cert.per_pair.len();
            Ok(Outcome::new(Some(cert.holds()), &cert)
                .line(format!("twists {:?}", cert.twists))
                .line(format!("isometric to base {iso}/{}, nonsquare products {}/{n}", cert.per_member.len(), cert.obstructed_pairs())))
        }
        K3::LemEl { count } => {
            let rep = lem_el_sequence(*count)?;
            let seq: Vec<String> = rep.sequence().iter().map(|m| m.to_string()).collect();
            Ok(Outcome::new(Some(rep.holds()), &rep).line(format!("sequence {}", seq.join(", "))))
        }
        K3::Fermat { m, count } => {
            let ms: Vec<u64> = match m {
                Some(m) => vec![*m],
                None => (1..=*count).collect(),
            };
            let mut rows = Vec::new();
            let mut all = true;
            let mut out = Outcome::new(None, ());
            for m in ms {
                let sol = fermat_solution(m)?;
                let chk = fermat_constraints_check(&sol)?;
                all &= chk.valid;
                out = out.line(format!("m = {m}: valid {}, obstruction value {}", chk.valid, chk.obstruction_value));
                rows.push(json!({ "solution": sol, "check": chk }));
            }
            Ok(Outcome { verdict: Some(all), result: json!(rows), ..out })
        }
        K3::ScaleCheck { input: l, m } => {
            let l = match l {
                Some(s) => input::lattice(s)?,
                None => k3_lattice(),
            };
            let cs: Vec<i64> = match m {
                Some(c) => vec![*c],
                None => (-10..=10).filter(|&c| c != 0).collect(),
            };
            let mut rows = Vec::new();
            let mut out = Outcome::new(None, ());
            for c in &cs {
                let possible = scale_isometry_possible(&l, *c)?;
                out = out.line(format!("c = {c}: {possible}"));
                rows.push(json!({ "c": c, "possible": possible }));
            }
            let verdict = if cs.len() == 1 { rows[0]["possible"].as_bool() } else { None };
            Ok(Outcome { verdict, result: json!({ "lattice": l.label, "scales": rows }), ..out })
        }
        K3::Catalog { name } => {
            let names: Vec<&str> = match name {
                Some(n) => vec![n.as_str()],
                None => CATALOG_NAMES.to_vec(),
            };
            let mut rows = Vec::new();
            let mut out = Outcome::new(None, ());
            for n in names {
                let l = catalog(n)?;
                let sig = l.signature()?;
                out = out.line(format!("{n}: rank {}, signature {sig:?}, det {}, even {}", l.rank(), l.det(), l.is_even()));
                rows.push(json!({
                    "name": n,
                    "rank": l.rank(),
                    "signature": sig,
                    "det": l.det().to_string(),
                    "even": l.is_even(),
                    "unimodular": l.is_unimodular(),
                    "gram": l.gram(),
                }));
            }
            Ok(Outcome { result: json!(rows), ..out })
        }
    }
}

#[derive(Deserialize)]
struct MapInput {
    matrix: RatMatrix,
    #[serde(default)]
    source: Option<input::ModelRef>,
    #[serde(default)]
    target: Option<input::ModelRef>,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Deserialize, Default)]
struct AssembleInput {
    #[serde(default)]
    ns: Option<RatMatrix>,
    #[serde(default)]
    tr: Option<RatMatrix>,
}

#[derive(Serialize)]
struct ClassifiedMap {
    label: String,
    classification: k3_frobenius::frobenius::MapClassification,
}

fn frob(cmd: &Frob, seed: u64) -> R {
    match cmd {
        Frob::Axioms { model, mutations } => {
            let a = input::model(&model.model, model.g)?;
            let rep = check_frobenius_axioms(&a);
            let mut out = Outcome::new(None, ()).line(format!("{} (dimension {}): axioms {}", a.label, a.dim(), if rep.passes() { "pass" } else { "fail" }));
            if let Some(v) = &rep.first_violation {
                out = out.line(format!("first violation: {} at {:?}", v.axiom, v.witness));
            }
            let mut verdict = rep.passes();
            let mut mutants = Vec::new();
            if *mutations {
                for (name, m) in mutation_models(&a) {
                    let r = check_frobenius_axioms(&m);
                    verdict &= !r.passes();
                    out = out.line(format!("mutation {name}: {}", r.first_violation.as_ref().map_or("no violation".into(), |v| format!("fails {}", v.axiom))));
                    mutants.push(json!({ "mutation": name, "report": r }));
                }
            }
            Ok(Outcome { verdict: Some(verdict), result: json!({ "model": a.label, "report": rep, "mutations": mutants }), ..out })
        }
        Frob::Classify { input: Some(src), .. } => {
            let m: MapInput = input::load(src, "map")?;
            let source = Arc::new(input::model_ref(m.source)?);
            let target = Arc::new(input::model_ref(m.target)?);
            let map = AlgebraMap::new(m.label.unwrap_or_else(|| "input".into()), source, target, m.matrix)?;
            let c = classify_map(&map)?;
            Ok(Outcome::new(Some(c.criteria_agree), &c).line(format!(
                "algebra hom {}, invertible {}, c = {}, orthogonal {}, Frobenius iso {}, criteria agree {}",
                c.algebra_hom,
                c.invertible,
                c.degree_c.as_ref().map_or("undefined".into(), |c| c.to_string()),
                c.orthogonal,
                c.frobenius_iso,
                c.criteria_agree
            )))
        }
        Frob::Classify { input: None, count } => {
            let a = Arc::new(default_k3_model());
            let maps = generate_maps(&a, *count, &mut rng(seed))?;
            let mut rows = Vec::new();
            let mut agree = 0;
            for map in &maps {
                let c = classify_map(map)?;
                agree += c.criteria_agree as usize;
                rows.push(ClassifiedMap { label: map.label.clone(), classification: c });
            }
            let verdict = agree == maps.len();
            Ok(Outcome::new(Some(verdict), json!({ "agreeing": agree, "maps": rows }))
                .line(format!("criteria agree on {agree}/{} generated maps", maps.len())))
        }
        Frob::Bv { model } => {
            let a = input::model(&model.model, model.g)?;
            let bv = bv_small_diagonal_identity(&a)?;
            let euler = euler_multiple_of_point(&a)?;
            Ok(Outcome::new(Some(bv), json!({ "model": a.label, "identity": bv, "euler_multiple_of_o": euler }))
                .line(format!("small-diagonal identity: {bv}"))
                .line(format!("euler class: {}", euler.map_or("not a multiple of o".into(), |e| format!("{e} o")))))
        }
        Frob::Assemble { input: src } => {
            let blocks: AssembleInput = match src {
                Some(s) => input::load(s, "assemble")?,
                None => AssembleInput::default(),
            };
            let a = Arc::new(default_k3_model());
            let ns = blocks.ns.unwrap_or_else(|| RatMatrix::identity(18));
            let tr = blocks.tr.unwrap_or_else(|| RatMatrix::identity(4));
            let gamma = assemble_gamma(a, &ns, &tr)?;
            let c = classify_map(&gamma)?;
            Ok(Outcome::new(Some(c.frobenius_iso), json!({ "matrix": gamma.matrix, "classification": c }))
                .line(format!("Frobenius isomorphism: {}", c.frobenius_iso)))
        }
        Frob::Abelian { g, lambda, f1 } => {
            let lambda = input::rational(lambda)?;
            let f1 = match f1 {
                Some(s) => input::load::<RatMatrix>(s, "matrix")?,
                None => RatMatrix::identity(2 * g),
            };
            let rep = av_gamma_check(*g, &lambda, &f1)?;
            Ok(Outcome::new(Some(rep.frobenius_iso), &rep)
                .line(format!("deg f = {}, c = {}, Frobenius iso {}", rep.degree, rep.degree_c, rep.frobenius_iso))
                .line(format!("some lambda works: {} (degree is a {}-th power: {})", rep.frobenius_for_some_lambda, 2 * g, av_frobenius_possible(&rep.degree, *g))))
        }
        Frob::Cy { d, s, field, frobenius } => {
            let s = input::rational(s)?;
            let f: ScalarField = field.parse()?;
            let ok = cy_scaling_solvable(*d, &s, f, *frobenius)?;
            Ok(Outcome::new(Some(ok), json!({ "d": d, "s": s, "field": f, "frobenius": frobenius, "solvable": ok }))
                .line(format!("solvable: {ok}")))
        }
    }
}

fn pair(a: &PairArgs) -> Result<(Permutation, Permutation), Error> {
    Ok((Permutation::parse(a.n, &a.g)?, Permutation::parse(a.n, &a.h)?))
}

fn graded_json(g: &Graded) -> serde_json::Value {
    json!(g.iter().map(|(d, c)| (d.to_string(), c.to_string())).collect::<std::collections::BTreeMap<_, _>>())
}

fn graded_line(g: &Graded) -> String {
    g.iter().map(|(d, c)| format!("b{d}={c}")).collect::<Vec<_>>().join(" ")
}

#[derive(Deserialize)]
struct StarInput {
    x: SectorElement,
    y: SectorElement,
}

fn orb(cmd: &Orb, seed: u64) -> R {
    match cmd {
        Orb::Defect(p) => {
            let (g, h) = pair(p)?;
            let joint = joint_orbits(&g, &h)?;
            let mut rows = Vec::new();
            let mut out = Outcome::new(None, ());
            for t in &joint.blocks {
                let d = graph_defect(&g, &h, t)?;
                let one: Vec<usize> = t.iter().map(|i| i + 1).collect();
                out = out.line(format!("{one:?}: defect {d}"));
                rows.push(json!({ "orbit": one, "defect": d }));
            }
            Ok(Outcome { result: json!({ "g": g.to_string(), "h": h.to_string(), "gh": g.compose(&h).to_string(), "orbits": rows }), ..out })
        }
        Orb::Epsilon(p) => {
            let (g, h) = pair(p)?;
            let e = epsilon_sign(&g, &h)?;
            Ok(Outcome::new(None, json!({ "epsilon": e, "exponent_times_two": epsilon_exponent_twice(&g, &h) }))
                .line(format!("epsilon({g}, {h}) = {e:+}")))
        }
        Orb::Star { n, input: src } => {
            let s = SymmetricPower::new(*n, Arc::new(default_k3_model()))?;
            let si: StarInput = input::load(src, "sector elements")?;
            let z = s.star(&si.x, &si.y)?;
            Ok(Outcome::new(None, json!({ "product": z, "shift": z.shift(), "orbits": orbits(&z.sector).to_one_based() }))
                .line(format!("sector {}, {} terms, shift {}", z.sector, z.terms.len(), z.shift())))
        }
        Orb::InvariantDim { n } => {
            let dims = sn_invariant_dimension(*n, &default_k3_model())?;
            let oracle = goettsche_oracle(*n)?;
            let matches = dims == oracle;
            Ok(Outcome::new(Some(matches), json!({
                "n": n,
                "conjugacy_classes": Permutation::all(*n).filter(|g| {
                    // One representative per class: the sorted cycle type's first occurrence.
                    Permutation::all(*n).find(|k| cycle_type(k) == cycle_type(g)).as_ref() == Some(g)
                }).count(),
                "by_degree": graded_json(&dims),
                "total": total_dimension(&dims).to_string(),
                "oracle": graded_json(&oracle),
                "oracle_match": matches,
            }))
            .line(format!("invariant dimensions {}", graded_line(&dims)))
            .line(format!("total {}, oracle match {matches}", total_dimension(&dims))))
        }
        Orb::Associativity { n, count } => {
            let s = SymmetricPower::new(*n, Arc::new(default_k3_model()))?;
            let mut r = rng(seed);
            let (mut ok, mut nonzero) = (0, 0);
            for _ in 0..*count {
                let (x, y, z) = (s.random_element(&mut r, 3), s.random_element(&mut r, 3), s.random_element(&mut r, 3));
                let left = s.star(&s.star(&x, &y)?, &z)?;
                ok += (left == s.star(&x, &s.star(&y, &z)?)?) as usize;
                nonzero += !left.is_zero() as usize;
            }
            Ok(Outcome::new(Some(ok == *count), json!({ "n": n, "trials": count, "associative": ok, "nonzero": nonzero }))
                .line(format!("associative {ok}/{count} ({nonzero} nonzero products)")))
        }
        Orb::Oracle { n } => {
            let b = goettsche_oracle(*n)?;
            Ok(Outcome::new(None, json!({ "n": n, "betti": graded_json(&b), "total": total_dimension(&b).to_string() }))
                .line(graded_line(&b)))
        }
    }
}

fn cycle_type(g: &Permutation) -> Vec<usize> {
    let mut t: Vec<usize> = orbits(g).blocks.iter().map(Vec::len).collect();
    t.sort_unstable();
    t
}

fn suite(seed: u64) -> R {
    let rep = run_all(seed);
    let mut out = Outcome::new(Some(rep.passed()), &rep);
    for c in &rep.criteria {
        out = out.line(c.line());
    }
    Ok(out)
}

