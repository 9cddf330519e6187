//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every comparison is exact.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use flk_core::bch::bch_group_law;
use flk_core::fgl::{fgl_axiom_check, group_law_from_json, group_law_from_uea, group_law_to_json, lie_from_fgl};
use flk_core::lie_pair::{
    certify_quotient, group_datum_from_json, group_datum_to_pair, kernel_ideal_check, pair_to_group_datum,
    compare_pairs, validate_lie_pair, LiePairDatum,
};
use flk_core::liealg::{standard, LieAlgebra};
use flk_core::linalg::same_span;
use flk_core::report::{codes, emit_report, Format, Report};
use flk_core::spec_io::{parse_spec, SpecFile};
use flk_core::{Enveloping, Error, Scalar};
use serde_json::{json, Value};

const ORACLE_BUDGET: Duration = Duration::from_secs(10);

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn read(rel: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

fn algebras() -> Vec<LieAlgebra> {
    ["abelian2", "h3", "sl2", "aff1", "h3-plus-line"]
        .iter()
        .map(|n| match parse_spec(&read(&format!("algebras/{n}.flk"))) {
            Ok(SpecFile::Algebra(g)) => g,
            other => panic!("{n}: {other:?}"),
        })
        .collect()
}

fn pairs() -> Vec<(String, LiePairDatum)> {
    ["h3-center", "h3-identity", "sl2-identity", "abelian-negation", "h3-swap"]
        .iter()
        .map(|n| match parse_spec(&read(&format!("pairs/{n}.flk"))) {
            Ok(SpecFile::Pair(p)) => (n.to_string(), p),
            other => panic!("{n}: {other:?}"),
        })
        .collect()
}

/// Outcome of one criterion: pass flag and a short detail string.
type Outcome = (bool, String);

fn oracle_identity(gs: &[LieAlgebra]) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for g in gs {
        for n in 2..=4 {
            match (group_law_from_uea(g, n), bch_group_law(g, n)) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => bad.push(format!("{} N={n}", g.name())),
            }
        }
    }
    let t = start.elapsed();
    let ok = bad.is_empty() && t < ORACLE_BUDGET;
    (ok, format!("{} laws compared in {:.2} s; mismatches: {:?}", gs.len() * 3, t.as_secs_f64(), bad))
}

fn law_axioms(gs: &[LieAlgebra]) -> Outcome {
    let mut bad = Vec::new();
    for g in gs {
        let f = group_law_from_uea(g, 4).expect("corpus law");
        let failures = fgl_axiom_check(&f).expect("axiom check runs");
        if !failures.is_empty() {
            bad.push(format!("{}: {}", g.name(), failures[0]));
        }
    }
    (bad.is_empty(), format!("N=4; failures: {bad:?}"))
}

fn lie_round_trip(gs: &[LieAlgebra]) -> Outcome {
    let mut bad = Vec::new();
    for g in gs {
        for n in 2..=4 {
            let back = lie_from_fgl(&group_law_from_uea(g, n).expect("corpus law")).expect("order >= 2");
            if &back != g {
                bad.push(format!("{} N={n}", g.name()));
            }
        }
    }
    (bad.is_empty(), format!("N in 2..=4; mismatches: {bad:?}"))
}

fn primitives(gs: &[LieAlgebra]) -> Outcome {
    let mut bad = Vec::new();
    for g in gs {
        let u = Enveloping::new(g.clone());
        for n in 1..=4 {
            let prims = u.primitives_upto(n).expect("degree >= 1");
            let linear: Vec<_> = prims.iter().filter(|p| p.is_linear()).map(|p| p.linear_part()).collect();
            let generators: Vec<_> = (0..g.dim()).map(|i| flk_core::linalg::basis_vector(g.dim(), i)).collect();
            let ok = prims.len() == g.dim() && linear.len() == prims.len() && same_span(&linear, &generators, g.dim());
            if !ok {
                bad.push(format!("{} N={n}: dim {}", g.name(), prims.len()));
            }
        }
    }
    (bad.is_empty(), format!("N in 1..=4; mismatches: {bad:?}"))
}

fn hopf(gs: &[LieAlgebra]) -> Outcome {
    let mut bad = Vec::new();
    for g in gs {
        let failures = Enveloping::new(g.clone()).hopf_axiom_check(3).expect("degree >= 1");
        if let Some(f) = failures.first() {
            bad.push(format!("{}: {f}", g.name()));
        }
    }
    (bad.is_empty(), format!("degree 3; failures: {bad:?}"))
}

fn construction_suite(ps: &[(String, LiePairDatum)]) -> Outcome {
    let mut bad = Vec::new();
    for (name, p) in ps {
        let valid = validate_lie_pair(p).is_empty();
        let ideal = valid && kernel_ideal_check(p).unwrap_or(false);
        let quotient = valid
            && certify_quotient(p)
                .map(|c| c.failures.is_empty() && c.map.is_surjective() && c.induced.inverse().is_some())
                .unwrap_or(false);
        if !(valid && ideal && quotient) {
            bad.push(format!("{name}: valid={valid} ideal={ideal} quotient={quotient}"));
        }
    }
    (bad.is_empty(), format!("{} pairs; failures: {bad:?}", ps.len()))
}

fn datum_round_trip(ps: &[(String, LiePairDatum)]) -> Outcome {
    let mut bad = Vec::new();
    for (name, p) in ps {
        let back = pair_to_group_datum(p, 3).and_then(|d| group_datum_to_pair(&d));
        match back {
            Ok(q) if compare_pairs(p, &q).is_empty() && &q == p => {}
            Ok(_) => bad.push(format!("{name}: differs")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    (bad.is_empty(), format!("N=3, {} pairs; failures: {bad:?}", ps.len()))
}

fn negative_controls() -> Outcome {
    let mut seen = Vec::new();
    let jacobi = match parse_spec(&read("negative/bad-jacobi.flk")) {
        Ok(SpecFile::Algebra(g)) => !g.validate_jacobi().is_empty(),
        _ => false,
    };
    seen.push(("JACOBI", jacobi));
    let component = match parse_spec(&read("negative/bad-component.flk")) {
        Ok(SpecFile::Pair(p)) => validate_lie_pair(&p).iter().any(|f| f.code == codes::PAIR_AUTOMORPHISM),
        _ => false,
    };
    seen.push((codes::PAIR_AUTOMORPHISM, component));
    let json = |rel: &str| serde_json::from_str::<Value>(&read(rel)).expect("valid JSON");
    let closing = group_datum_from_json(&json("negative/nonclosing-embedding.json"))
        .and_then(|d| group_datum_to_pair(&d))
        .is_err_and(|e| matches!(e, Error::Input { code, .. } if code == codes::DATUM_EMBEDDING_NOT_CLOSED));
    seen.push((codes::DATUM_EMBEDDING_NOT_CLOSED, closing));
    let assoc = group_law_from_json(&json("negative/nonassociative-law.json"))
        .and_then(|f| fgl_axiom_check(&f))
        .is_ok_and(|fs| fs.iter().any(|f| f.code == codes::LAW_ASSOCIATIVITY));
    seen.push((codes::LAW_ASSOCIATIVITY, assoc));
    let ok = seen.iter().all(|(_, b)| *b);
    (ok, format!("{seen:?}"))
}

fn spot_coefficients() -> Outcome {
    let half = Scalar::ratio(1, 2);
    let twelfth = Scalar::ratio(1, 12);
    let mut results = Vec::new();
    for n in [3, 4] {
        let routes = [group_law_from_uea, bch_group_law];
        for build in routes {
            let h = build(&standard::heisenberg(), n).expect("law");
            let s = build(&standard::sl2(), n).expect("law");
            let a = build(&standard::aff1(), n).expect("law");
            results.push(h.coefficient(2, &[1, 0, 0], &[0, 1, 0]).ok() == Some(half.clone()));
            results.push(s.coefficient(0, &[0, 1, 0], &[0, 0, 1]).ok() == Some(half.clone()));
            results.push(a.coefficient(1, &[2, 0], &[0, 1]).ok() == Some(twelfth.clone()));
        }
    }
    (results.iter().all(|b| *b), "h3 1/2, sl2 1/2, aff1 1/12 at N in {3,4}, both routes".into())
}

/// Everything the suite computes, as one canonical JSON report.
fn full_report(gs: &[LieAlgebra], ps: &[(String, LiePairDatum)]) -> String {
    let mut r = Report::new("acceptance");
    for g in gs {
        let f = group_law_from_uea(g, 4).expect("law");
        r.set(&format!("law/{}", g.name()), group_law_to_json(&f));
        let u = Enveloping::new(g.clone());
        r.extend(u.hopf_axiom_check(3).expect("check"));
        let prims: Vec<String> = u.primitives_upto(3).expect("prims").iter().map(|p| p.render(g.basis_names())).collect();
        r.set(&format!("primitives/{}", g.name()), json!(prims));
        r.extend(fgl_axiom_check(&f).expect("check"));
    }
    for (name, p) in ps {
        r.extend(validate_lie_pair(p));
        let d = pair_to_group_datum(p, 3).expect("datum");
        r.set(&format!("datum/{name}"), flk_core::lie_pair::group_datum_to_json(&d));
    }
    emit_report(&r, Format::Json)
}

fn determinism(gs: &[LieAlgebra], ps: &[(String, LiePairDatum)]) -> Outcome {
    let a = full_report(gs, ps);
    let b = full_report(gs, ps);
    (a == b, format!("{} bytes per run", a.len()))
}

fn main() -> ExitCode {
    let gs = algebras();
    let ps = pairs();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("oracle identity: dual law = BCH law", Box::new(|| oracle_identity(&gs))),
        ("group-law axioms at N=4", Box::new(|| law_axioms(&gs))),
        ("structure constants recovered from the law", Box::new(|| lie_round_trip(&gs))),
        ("primitives = generator span", Box::new(|| primitives(&gs))),
        ("Hopf axioms at degree 3", Box::new(|| hopf(&gs))),
        ("pair construction suite", Box::new(|| construction_suite(&ps))),
        ("pair -> group datum -> pair", Box::new(|| datum_round_trip(&ps))),
        ("negative controls", Box::new(negative_controls)),
        ("spot coefficients", Box::new(spot_coefficients)),
        ("deterministic JSON reports", Box::new(|| determinism(&gs, &ps))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run();
        if !ok {
            failed += 1;
        }
        println!("{} [{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
