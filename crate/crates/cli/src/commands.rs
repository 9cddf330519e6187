use std::fmt;
use std::path::{Path, PathBuf};

use flk_core::fgl::{fgl_axiom_check, group_law_from_json, group_law_to_json, GroupLaw};
use flk_core::lie_pair::{self, group_datum_from_json, group_datum_to_pair, GroupDatum, LiePairDatum};
use flk_core::report::{codes, Failure, Report};
use flk_core::spec_io::{parse_spec, SpecFile};
use flk_core::strategy::Registry;
use flk_core::{Enveloping, Error, LieAlgebra, Scalar};
use serde_json::{json, Value};

use crate::Via;

/// Anything that stops a command before it can produce a report.
#[derive(Debug)]
pub struct InputError {
    path: PathBuf,
    error: Error,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.error {
            Error::Parse(d) => write!(f, "{}:{d}", self.path.display()),
            e => write!(f, "{}: {e}", self.path.display()),
        }
    }
}

enum Loaded {
    Algebra(LieAlgebra),
    Pair(LiePairDatum),
    Law(GroupLaw),
    Datum(GroupDatum),
}

struct Input {
    path: PathBuf,
    loaded: Loaded,
}

impl Input {
    fn err(&self, error: Error) -> InputError {
        InputError {
            path: self.path.clone(),
            error,
        }
    }

    fn algebra(&self) -> Result<&LieAlgebra, InputError> {
        match &self.loaded {
            Loaded::Algebra(g) => Ok(g),
            Loaded::Pair(p) => Ok(&p.q),
            _ => Err(self.err(input_error("expected an algebra or pair spec file"))),
        }
    }

    fn pair(&self) -> Result<&LiePairDatum, InputError> {
        match &self.loaded {
            Loaded::Pair(p) => Ok(p),
            _ => Err(self.err(input_error("expected a pair spec file"))),
        }
    }
}

fn input_error(message: &str) -> Error {
    Error::Input {
        code: "INPUT",
        message: message.into(),
    }
}

fn load(path: &Path) -> Result<Input, InputError> {
    let err = |error| InputError {
        path: path.to_path_buf(),
        error,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(input_error(&format!("cannot read file: {e}"))))?;
    let loaded = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| {
            err(Error::Input {
                code: "JSON",
                message: e.to_string(),
            })
        })?;
        match v.get("kind").and_then(Value::as_str) {
            Some("group_law") => Loaded::Law(group_law_from_json(&v).map_err(err)?),
            Some("group_datum") => Loaded::Datum(group_datum_from_json(&v).map_err(err)?),
            _ => return Err(err(input_error("JSON input needs \"kind\": \"group_law\" or \"group_datum\""))),
        }
    } else {
        match parse_spec(&text).map_err(|d| err(d.into()))? {
            SpecFile::Algebra(g) => Loaded::Algebra(g),
            SpecFile::Pair(p) => Loaded::Pair(p),
        }
    };
    Ok(Input {
        path: path.to_path_buf(),
        loaded,
    })
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn jacobi_failures(g: &LieAlgebra) -> Vec<Failure> {
    let names = g.basis_names();
    g.validate_jacobi()
        .into_iter()
        .map(|f| {
            let (i, j, k) = f.triple;
            Failure::new(
                codes::JACOBI,
                format!("Jacobi identity fails on ({}, {}, {})", names[i], names[j], names[k]),
                json!({
                    "triple": [i, j, k],
                    "names": [names[i], names[j], names[k]],
                    "cyclic_sum": strings(&f.cyclic_sum),
                }),
            )
        })
        .collect()
}

pub fn validate(path: &Path) -> Result<Report, InputError> {
    let input = load(path)?;
    let mut r = Report::new("validate");
    match &input.loaded {
        Loaded::Algebra(g) => {
            r.set("kind", json!("algebra"));
            r.set("dimension", json!(g.dim()));
            r.extend(jacobi_failures(g));
            r.line(format!("algebra {} of dimension {}", g.name(), g.dim()));
        }
        Loaded::Pair(p) => {
            r.set("kind", json!("pair"));
            r.extend(lie_pair::validate_lie_pair(p));
            r.line(format!(
                "pair: q = {} (dimension {}), l = {} (dimension {}), {} component(s)",
                p.q.name(),
                p.q.dim(),
                p.l.name(),
                p.l.dim(),
                p.components.len()
            ));
        }
        Loaded::Law(f) => {
            r.set("kind", json!("group_law"));
            r.set("order", json!(f.order()));
            r.extend(fgl_axiom_check(f).map_err(|e| input.err(e))?);
            r.line(format!("group law on {} at order {}", f.name(), f.order()));
        }
        Loaded::Datum(d) => {
            r.set("kind", json!("group_datum"));
            match group_datum_to_pair(d) {
                Ok(p) => r.line(format!(
                    "group datum recovers a valid pair with l of dimension {}",
                    p.l.dim()
                )),
                Err(Error::Input { code, message }) if code.starts_with("DATUM-") => {
                    r.fail(Failure::new(code, message, Value::Null));
                }
                Err(e) => return Err(input.err(e)),
            }
        }
    }
    Ok(r)
}

/// First coefficient where two laws differ.
fn first_difference(a: &GroupLaw, b: &GroupLaw) -> Value {
    for (k, (ca, cb)) in a.components().iter().zip(b.components()).enumerate() {
        let lowest = ca.sub(cb).ok().and_then(|d| d.terms().next().map(|(i, _)| i.clone()));
        if let Some(idx) = lowest {
            return json!({
                "component": a.basis_names()[k],
                "exponents": idx.exponents(),
                "dual": ca.coefficient(&idx).map(|c| c.to_string()).unwrap_or_default(),
                "bch": cb.coefficient(&idx).map(|c| c.to_string()).unwrap_or_default(),
            });
        }
    }
    json!({ "order": [a.order(), b.order()] })
}

pub fn grouplaw(path: &Path, order: usize, via: Via) -> Result<Report, InputError> {
    let input = load(path)?;
    let g = input.algebra()?;
    let registry = Registry::default();
    let names: &[&str] = match via {
        Via::Dual => &["dual"],
        Via::Bch => &["bch"],
        Via::Both => &["dual", "bch"],
    };
    let mut laws = Vec::new();
    for name in names {
        let construction = registry.get(name).expect("registered construction");
        laws.push(construction.construct(g, order).map_err(|e| input.err(e))?);
    }
    let mut r = Report::new("grouplaw");
    r.set("algebra", json!(g.name()));
    r.set("order", json!(order));
    r.set("via", json!(names));
    r.set("law", group_law_to_json(&laws[0]));
    if laws.len() == 2 {
        let agree = laws[0] == laws[1];
        r.set("agree", json!(agree));
        if agree {
            r.line("dual and bch laws are identical");
        } else {
            r.set("bch_law", group_law_to_json(&laws[1]));
            r.fail(Failure::new(
                codes::ORACLE_MISMATCH,
                "dual and bch group laws differ",
                first_difference(&laws[0], &laws[1]),
            ));
        }
    }
    for line in laws[0].render() {
        r.line(line);
    }
    Ok(r)
}

pub fn primitives(path: &Path, degree: usize) -> Result<Report, InputError> {
    let input = load(path)?;
    let g = input.algebra()?;
    let u = Enveloping::new(g.clone());
    let prims = u.primitives_upto(degree).map_err(|e| input.err(e))?;
    let names = g.basis_names();
    let rendered: Vec<String> = prims.iter().map(|p| p.render(names)).collect();
    let mut r = Report::new("primitives");
    r.set("algebra", json!(g.name()));
    r.set("degree", json!(degree));
    r.set("dimension", json!(prims.len()));
    r.set("primitives", json!(rendered));
    if prims.len() != g.dim() || prims.iter().any(|p| !p.is_linear()) {
        r.fail(Failure::new(
            codes::PRIMITIVES,
            format!(
                "primitives up to degree {degree} have dimension {} and are not the span of the generators",
                prims.len()
            ),
            json!({ "dimension": prims.len(), "expected": g.dim() }),
        ));
    }
    r.line(format!("primitive space up to degree {degree}: dimension {}", prims.len()));
    for p in rendered {
        r.line(format!("  {p}"));
    }
    Ok(r)
}

pub fn hopf_check(path: &Path, degree: usize) -> Result<Report, InputError> {
    let input = load(path)?;
    let g = input.algebra()?;
    let u = Enveloping::new(g.clone());
    let mut r = Report::new("hopf-check");
    r.set("algebra", json!(g.name()));
    r.set("degree", json!(degree));
    r.extend(u.hopf_axiom_check(degree).map_err(|e| input.err(e))?);
    r.line(format!("Hopf axioms checked on PBW monomials up to degree {degree}"));
    Ok(r)
}

pub fn pair_check(path: &Path) -> Result<Report, InputError> {
    let input = load(path)?;
    let p = input.pair()?;
    lie_pair::pair_check(p).map_err(|e| input.err(e))
}

pub fn roundtrip(path: &Path, order: usize) -> Result<Report, InputError> {
    let input = load(path)?;
    let p = input.pair()?;
    let mut r = Report::new("roundtrip");
    r.set("order", json!(order));
    let invalid = lie_pair::validate_lie_pair(p);
    if !invalid.is_empty() {
        r.extend(invalid);
        return Ok(r);
    }
    let failures = lie_pair::roundtrip_check(p, order).map_err(|e| input.err(e))?;
    r.set("recovered", json!(failures.is_empty()));
    if failures.is_empty() {
        r.line("pair recovered exactly (q structure constants, l bracket, iota images, component actions)");
    }
    r.extend(failures);
    Ok(r)
}
