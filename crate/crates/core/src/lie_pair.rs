//! Lie pairs `(q, L)` modeled by a subalgebra datum `(l, ι)` and finitely
//! many component generators acting on `q` and `l`; the semidirect/quotient
//! construction and the passage to group data and back.
//!
//! Only the connected part of `L` enters through `l`; group conditions are
//! checked on the listed generators. All checked conditions are stable under
//! products and inverses, so no relations among generators are needed.

use std::collections::BTreeMap;

use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fgl::{
    fgl_axiom_check, fgl_equivariance_check, group_law_from_json, group_law_from_uea,
    group_law_to_json, json_scalar, json_strings, lie_from_fgl, GroupLaw,
};
use crate::liealg::{is_ideal, is_lie_homomorphism, quotient_algebra, semidirect_product, semidirect_unchecked, LieAlgebra};
use crate::linalg::{self, basis_vector, scale_vector, LinearMap, Vector};
use crate::report::{codes, Failure, Report, Verdict};
use crate::scalar::Scalar;

/// A component generator `γ` with its action on `q` and on `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub q_action: LinearMap,
    pub l_action: LinearMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiePairDatum {
    pub q: LieAlgebra,
    pub l: LieAlgebra,
    /// `l -> q`, one column per `l` basis element.
    pub iota: LinearMap,
    pub components: Vec<Component>,
}

impl LiePairDatum {
    /// The pair `(q, {e})`: `l = 0`, no components.
    pub fn trivial(q: LieAlgebra) -> Self {
        let n = q.dim();
        LiePairDatum {
            q,
            l: LieAlgebra::abelian("0", 0),
            iota: LinearMap::zero(0, n),
            components: Vec::new(),
        }
    }

    /// `l = q`, `ι = id`, no components.
    pub fn identity(q: LieAlgebra) -> Self {
        let n = q.dim();
        LiePairDatum {
            l: q.clone(),
            q,
            iota: LinearMap::identity(n),
            components: Vec::new(),
        }
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    fn ad_iota(&self, tau: &[Scalar]) -> Result<LinearMap> {
        self.q.adjoint_rep(&self.iota.apply(tau)?)
    }
}

fn fail(code: &'static str, message: String, witness: Value) -> Failure {
    Failure::new(code, message, witness)
}

/// Runs every condition of the pair definition and lists each failure.
pub fn validate_lie_pair(p: &LiePairDatum) -> Vec<Failure> {
    let (n, m) = (p.q.dim(), p.l.dim());
    let mut out = Vec::new();

    if p.iota.domain_dim() != m || p.iota.codomain_dim() != n {
        out.push(fail(
            codes::PAIR_SHAPE,
            format!("iota is {}x{}, expected {n}x{m}", p.iota.codomain_dim(), p.iota.domain_dim()),
            json!({ "map": "iota" }),
        ));
    }
    for (k, c) in p.components.iter().enumerate() {
        if p.components[..k].iter().any(|d| d.name == c.name) {
            out.push(fail(
                codes::PAIR_SHAPE,
                format!("component `{}` listed twice", c.name),
                json!({ "component": c.name }),
            ));
        }
        for (map, dim, label) in [(&c.q_action, n, "q_action"), (&c.l_action, m, "l_action")] {
            if map.domain_dim() != dim || map.codomain_dim() != dim {
                out.push(fail(
                    codes::PAIR_SHAPE,
                    format!(
                        "{label} of `{}` is {}x{}, expected {dim}x{dim}",
                        c.name,
                        map.codomain_dim(),
                        map.domain_dim()
                    ),
                    json!({ "component": c.name, "map": label }),
                ));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    for (alg, label) in [(&p.q, "q"), (&p.l, "l")] {
        for f in alg.validate_jacobi() {
            let (i, j, k) = f.triple;
            let names = alg.basis_names();
            out.push(fail(
                codes::PAIR_JACOBI,
                format!("Jacobi identity fails in {label} on ({}, {}, {})", names[i], names[j], names[k]),
                json!({
                    "algebra": label,
                    "triple": [i, j, k],
                    "cyclic_sum": f.cyclic_sum.iter().map(Scalar::to_string).collect::<Vec<_>>(),
                }),
            ));
        }
    }

    let lnames = p.l.basis_names();
    let qnames = p.q.basis_names();
    if let Ok(Verdict::Fails((i, j))) = is_lie_homomorphism(&p.iota, &p.l, &p.q) {
        out.push(fail(
            codes::PAIR_IOTA_HOMOMORPHISM,
            format!("iota does not preserve the bracket of ({}, {})", lnames[i], lnames[j]),
            json!({ "pair": [lnames[i], lnames[j]] }),
        ));
    }
    if let Some(v) = p.iota.kernel().first() {
        out.push(fail(
            codes::PAIR_IOTA_INJECTIVE,
            "iota is not injective".to_string(),
            json!({ "kernel_vector": v.iter().map(Scalar::to_string).collect::<Vec<_>>() }),
        ));
    }

    for c in &p.components {
        let q_inv = c.q_action.inverse();
        for (map, inv, alg, label) in [
            (&c.q_action, q_inv.is_some(), &p.q, "q"),
            (&c.l_action, c.l_action.inverse().is_some(), &p.l, "l"),
        ] {
            if !inv {
                out.push(fail(
                    codes::PAIR_SINGULAR_ACTION,
                    format!("action of `{}` on {label} is not invertible", c.name),
                    json!({ "component": c.name, "algebra": label }),
                ));
            }
            if let Ok(Verdict::Fails((i, j))) = is_lie_homomorphism(map, alg, alg) {
                let names = alg.basis_names();
                out.push(fail(
                    codes::PAIR_AUTOMORPHISM,
                    format!(
                        "action of `{}` on {label} does not preserve [{}, {}]",
                        c.name, names[i], names[j]
                    ),
                    json!({ "component": c.name, "algebra": label, "pair": [names[i], names[j]] }),
                ));
            }
        }
        for t in 0..m {
            let lhs = c.q_action.apply(p.iota.column(t)).expect("shape checked");
            let rhs = p.iota.apply(c.l_action.column(t)).expect("shape checked");
            if lhs != rhs {
                out.push(fail(
                    codes::PAIR_EQUIVARIANCE,
                    format!("iota is not equivariant for `{}` at {}", c.name, lnames[t]),
                    json!({ "component": c.name, "basis": lnames[t] }),
                ));
            }
        }
        if let Some(q_inv) = q_inv {
            for t in 0..m {
                let lhs = c
                    .q_action
                    .compose(&p.ad_iota(&basis_vector(m, t)).expect("shape checked"))
                    .and_then(|x| x.compose(&q_inv))
                    .expect("shape checked");
                let rhs = p.ad_iota(c.l_action.column(t)).expect("shape checked");
                if lhs != rhs {
                    let col = (0..n).find(|&k| lhs.column(k) != rhs.column(k)).unwrap_or(0);
                    out.push(fail(
                        codes::PAIR_INFINITESIMAL,
                        format!(
                            "`{}` conjugates ad(iota({})) to the wrong derivation (differs on {})",
                            c.name, lnames[t], qnames[col]
                        ),
                        json!({ "component": c.name, "basis": lnames[t], "on": qnames[col] }),
                    ));
                }
            }
        }
    }
    out
}

fn require_valid(p: &LiePairDatum) -> Result<()> {
    match validate_lie_pair(p).first() {
        None => Ok(()),
        Some(f) => Err(Error::Precondition(format!("invalid Lie pair: {f}"))),
    }
}

/// The action `τ -> ad_{ι(τ)}` of `l` on `q`.
fn ad_action(p: &LiePairDatum) -> Result<Vec<LinearMap>> {
    (0..p.l.dim())
        .map(|t| p.ad_iota(&basis_vector(p.l.dim(), t)))
        .collect()
}

/// `l ⋉ q` with `l` acting through `ad ∘ ι`; basis `(l, q)`.
pub fn pair_semidirect(p: &LiePairDatum) -> Result<LieAlgebra> {
    require_valid(p)?;
    semidirect_product(&p.l, &p.q, &ad_action(p)?)
}

fn theta_columns(p: &LiePairDatum) -> Vec<Vector> {
    let m = p.l.dim();
    (0..m)
        .map(|t| {
            let mut v = basis_vector(m, t);
            v.extend(scale_vector(&-Scalar::one(), p.iota.column(t)));
            v
        })
        .collect()
}

/// `τ -> (τ, -ι(τ))`, the anti-diagonal embedding `l -> l ⋉ q`.
pub fn theta_embedding(p: &LiePairDatum) -> Result<LinearMap> {
    require_valid(p)?;
    let theta = LinearMap::from_columns(p.l.dim() + p.q.dim(), theta_columns(p))?;
    let s = pair_semidirect(p)?;
    if !theta.is_injective() || !is_lie_homomorphism(&theta, &p.l, &s)?.holds() {
        return Err(Error::Internal("anti-diagonal embedding is not an injective homomorphism".into()));
    }
    Ok(theta)
}

/// Whether the image of the anti-diagonal embedding is an ideal of `l ⋉ q`.
pub fn kernel_ideal_check(p: &LiePairDatum) -> Result<bool> {
    require_valid(p)?;
    kernel_ideal_check_unchecked(p)
}

/// [`kernel_ideal_check`] without validating the pair first, so that
/// corrupted data can be probed.
pub fn kernel_ideal_check_unchecked(p: &LiePairDatum) -> Result<bool> {
    let s = semidirect_unchecked(&p.l, &p.q, &ad_action(p)?)?;
    is_ideal(&s, &theta_columns(p))
}

/// `(τ, η) -> ι(τ) + η`.
pub fn pair_quotient_map(p: &LiePairDatum) -> Result<LinearMap> {
    require_valid(p)?;
    let n = p.q.dim();
    let columns = p
        .iota
        .columns()
        .iter()
        .cloned()
        .chain((0..n).map(|j| basis_vector(n, j)))
        .collect();
    LinearMap::from_columns(n, columns)
}

/// Everything established about the quotient map.
#[derive(Debug, Clone)]
pub struct QuotientCertificate {
    pub map: LinearMap,
    pub quotient: LieAlgebra,
    /// `(l ⋉ q) / ker -> q`.
    pub induced: LinearMap,
    pub failures: Vec<Failure>,
}

/// Checks that the quotient map is a surjective homomorphism whose kernel is
/// the anti-diagonal, and that the induced map from the quotient algebra is an
/// isomorphism through which the quotient map factors.
pub fn certify_quotient(p: &LiePairDatum) -> Result<QuotientCertificate> {
    let s = pair_semidirect(p)?;
    let map = pair_quotient_map(p)?;
    let theta = theta_columns(p);
    let total = s.dim();
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(fail(codes::PAIR_QUOTIENT_MAP, format!("quotient map: {what}"), Value::Null));
        }
    };
    check(map.is_surjective(), "not surjective");
    check(is_lie_homomorphism(&map, &s, &p.q)?.holds(), "not a Lie homomorphism");
    check(
        linalg::same_span(&map.kernel(), &theta, total),
        "kernel differs from the anti-diagonal",
    );
    let q = quotient_algebra(&s, &theta)?;
    let induced = LinearMap::from_columns(
        p.q.dim(),
        q.complement.iter().map(|&c| map.column(c).clone()).collect(),
    )?;
    check(induced.inverse().is_some(), "induced map is not invertible");
    check(
        is_lie_homomorphism(&induced, &q.algebra, &p.q)?.holds(),
        "induced map is not a Lie homomorphism",
    );
    check(induced.compose(&q.projection)? == map, "does not factor through the quotient");
    Ok(QuotientCertificate {
        map,
        quotient: q.algebra,
        induced,
        failures,
    })
}

/// Validation followed by the whole semidirect/anti-diagonal/quotient suite.
pub fn pair_check(p: &LiePairDatum) -> Result<Report> {
    let mut r = Report::new("pair-check");
    let invalid = validate_lie_pair(p);
    if !invalid.is_empty() {
        r.extend(invalid);
        return Ok(r);
    }
    let s = pair_semidirect(p)?;
    r.line(format!("semidirect product: dimension {}", s.dim()));
    r.set("semidirect_dim", json!(s.dim()));
    let theta = theta_embedding(p)?;
    r.line(format!("anti-diagonal embedding: rank {}", theta.rank()));
    let ideal = kernel_ideal_check(p)?;
    if !ideal {
        r.fail(fail(
            codes::PAIR_KERNEL_IDEAL,
            "anti-diagonal is not an ideal".into(),
            Value::Null,
        ));
    }
    r.line(format!("anti-diagonal is an ideal: {ideal}"));
    r.set("kernel_ideal", json!(ideal));
    let cert = certify_quotient(p)?;
    r.line(format!(
        "quotient map: kernel = anti-diagonal, induced map onto {} is an isomorphism: {}",
        p.q.name(),
        cert.failures.is_empty()
    ));
    r.set("quotient_dim", json!(cert.quotient.dim()));
    r.extend(cert.failures);
    Ok(r)
}

/// Letter of a word in component generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Letter {
    pub generator: String,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairHomomorphism {
    /// `q1 -> q2`.
    pub dphi: LinearMap,
    /// Each generator of the first pair goes to a word in generators of the
    /// second; the word `[a, b]` acts as `a ∘ b`.
    pub component_map: BTreeMap<String, Vec<Letter>>,
}

/// Actions on `q` and `l` of a word in generators.
fn word_action(p: &LiePairDatum, word: &[Letter]) -> Result<(LinearMap, LinearMap)> {
    let mut q = LinearMap::identity(p.q.dim());
    let mut l = LinearMap::identity(p.l.dim());
    for letter in word {
        let c = p.component(&letter.generator).ok_or_else(|| Error::Input {
            code: "UNKNOWN-GENERATOR",
            message: format!("no component named `{}`", letter.generator),
        })?;
        let (qa, la) = if letter.inverse {
            let singular = || Error::Precondition(format!("`{}` is not invertible", c.name));
            (
                c.q_action.inverse().ok_or_else(singular)?,
                c.l_action.inverse().ok_or_else(singular)?,
            )
        } else {
            (c.q_action.clone(), c.l_action.clone())
        };
        q = q.compose(&qa)?;
        l = l.compose(&la)?;
    }
    Ok((q, l))
}

/// Checks the homomorphism diagrams on generators: `dφ` is a Lie
/// homomorphism, it carries `ι1(l1)` into `ι2(l2)` compatibly, and it
/// intertwines each generator with the image word.
pub fn validate_pair_homomorphism(
    h: &PairHomomorphism,
    p1: &LiePairDatum,
    p2: &LiePairDatum,
) -> Result<Vec<Failure>> {
    let (n1, n2) = (p1.q.dim(), p2.q.dim());
    if h.dphi.domain_dim() != n1 || h.dphi.codomain_dim() != n2 {
        return Err(Error::Shape(format!(
            "dphi is {}x{}, expected {n2}x{n1}",
            h.dphi.codomain_dim(),
            h.dphi.domain_dim()
        )));
    }
    if let Some(g) = p1.components.iter().find(|c| !h.component_map.contains_key(&c.name)) {
        return Err(Error::Input {
            code: "UNKNOWN-GENERATOR",
            message: format!("component `{}` has no image", g.name),
        });
    }
    let mut out = Vec::new();
    if let Verdict::Fails((i, j)) = is_lie_homomorphism(&h.dphi, &p1.q, &p2.q)? {
        let names = p1.q.basis_names();
        out.push(fail(
            codes::HOM_DPHI,
            format!("dphi does not preserve [{}, {}]", names[i], names[j]),
            json!({ "pair": [names[i], names[j]] }),
        ));
    }
    // the l-restriction psi with ι2 ∘ psi = dφ ∘ ι1
    let target = h.dphi.compose(&p1.iota)?;
    let psi = p2.iota.solve_right(&target);
    match &psi {
        None => out.push(fail(
            codes::HOM_IOTA,
            "dphi does not map iota(l1) into iota(l2)".into(),
            Value::Null,
        )),
        Some(psi) => {
            if !is_lie_homomorphism(psi, &p1.l, &p2.l)?.holds() {
                out.push(fail(
                    codes::HOM_L_RESTRICTION,
                    "restriction of dphi to l is not a Lie homomorphism".into(),
                    Value::Null,
                ));
            }
        }
    }
    for c in &p1.components {
        let word = &h.component_map[&c.name];
        let (q2, l2) = word_action(p2, word)?;
        if h.dphi.compose(&c.q_action)? != q2.compose(&h.dphi)? {
            out.push(fail(
                codes::HOM_ADJOINT,
                format!("dphi does not intertwine the action of `{}`", c.name),
                json!({ "component": c.name }),
            ));
        }
        if let Some(psi) = &psi {
            if psi.compose(&c.l_action)? != l2.compose(psi)? {
                out.push(fail(
                    codes::HOM_L_RESTRICTION,
                    format!("restriction to l does not intertwine `{}`", c.name),
                    json!({ "component": c.name }),
                ));
            }
        }
    }
    Ok(out)
}

/// A component generator acting on the group law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumComponent {
    pub name: String,
    pub q_action: LinearMap,
}

/// Truncated quotient group: the group law of `q`, the component actions,
/// and the subalgebra `ι(l)` recorded by a named basis of vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDatum {
    pub law: GroupLaw,
    pub components: Vec<DatumComponent>,
    pub l_name: String,
    pub l_embedding: Vec<(String, Vector)>,
}

/// Law of `q` at order `N`, each component action certified against it,
/// and `ι(l)`.
pub fn pair_to_group_datum(p: &LiePairDatum, order: usize) -> Result<GroupDatum> {
    require_valid(p)?;
    let law = group_law_from_uea(&p.q, order)?;
    let mut components = Vec::new();
    for c in &p.components {
        if let Verdict::Fails(w) = fgl_equivariance_check(&law, &c.q_action)? {
            return Err(Error::Internal(format!(
                "automorphism `{}` does not preserve the group law: {:?}",
                c.name, w
            )));
        }
        components.push(DatumComponent {
            name: c.name.clone(),
            q_action: c.q_action.clone(),
        });
    }
    let l_embedding = p
        .l
        .basis_names()
        .iter()
        .cloned()
        .zip(p.iota.columns().iter().cloned())
        .collect();
    Ok(GroupDatum {
        law,
        components,
        l_name: p.l.name().to_string(),
        l_embedding,
    })
}

fn datum_err(code: &'static str, message: impl Into<String>) -> Error {
    Error::Input {
        code,
        message: message.into(),
    }
}

/// Recovers a pair: `q` from the quadratic part of the law, `l` as the
/// recorded subspace with the inherited bracket, `ι` the inclusion, and the
/// `l`-actions by restriction.
pub fn group_datum_to_pair(d: &GroupDatum) -> Result<LiePairDatum> {
    let law = &d.law;
    let n = law.dim();
    if let Some(f) = fgl_axiom_check(law)?.first() {
        return Err(datum_err(codes::DATUM_LAW, format!("law fails its axioms: {f}")));
    }
    for c in &d.components {
        if c.q_action.domain_dim() != n || c.q_action.codomain_dim() != n {
            return Err(datum_err(codes::DATUM_EQUIVARIANCE, format!("action of `{}` has the wrong shape", c.name)));
        }
        if let Verdict::Fails(w) = fgl_equivariance_check(law, &c.q_action)? {
            return Err(datum_err(
                codes::DATUM_EQUIVARIANCE,
                format!("action of `{}` does not preserve the law: {}", c.name, w.to_json()),
            ));
        }
    }
    let q = lie_from_fgl(law)?;
    let vectors: Vec<Vector> = d.l_embedding.iter().map(|(_, v)| v.clone()).collect();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(datum_err(codes::DATUM_EMBEDDING_DEPENDENT, "embedding vector of the wrong length"));
    }
    if !linalg::is_independent(&vectors, n) {
        return Err(datum_err(codes::DATUM_EMBEDDING_DEPENDENT, "embedding vectors are linearly dependent"));
    }
    let names: Vec<String> = d.l_embedding.iter().map(|(s, _)| s.clone()).collect();
    let mut l = LieAlgebra::new(d.l_name.clone(), names.clone())?;
    for a in 0..vectors.len() {
        for b in a + 1..vectors.len() {
            let br = q.bracket(&vectors[a], &vectors[b])?;
            let coords = linalg::solve_in_span(&vectors, &br).ok_or_else(|| {
                datum_err(
                    codes::DATUM_EMBEDDING_NOT_CLOSED,
                    format!("[{}, {}] leaves the embedded subspace", names[a], names[b]),
                )
            })?;
            l.set_bracket(a, b, coords)?;
        }
    }
    let iota = LinearMap::from_columns(n, vectors.clone())?;
    let mut components = Vec::new();
    for c in &d.components {
        let columns = vectors
            .iter()
            .zip(&names)
            .map(|(v, name)| {
                linalg::solve_in_span(&vectors, &c.q_action.apply(v)?).ok_or_else(|| {
                    datum_err(
                        codes::DATUM_ACTION_NOT_PRESERVING,
                        format!("`{}` moves {name} out of the embedded subspace", c.name),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        components.push(Component {
            name: c.name.clone(),
            q_action: c.q_action.clone(),
            l_action: LinearMap::from_columns(vectors.len(), columns)?,
        });
    }
    let p = LiePairDatum {
        q,
        l,
        iota,
        components,
    };
    if let Some(f) = validate_lie_pair(&p).first() {
        return Err(datum_err(codes::DATUM_INVALID_PAIR, format!("recovered pair is invalid: {f}")));
    }
    Ok(p)
}

/// Differences between two pairs, comparing `q` structure constants, the
/// `l` bracket, the images of `ι` and every component action.
pub fn compare_pairs(expected: &LiePairDatum, actual: &LiePairDatum) -> Vec<Failure> {
    let mut out = Vec::new();
    let mut diff = |ok: bool, what: &str| {
        if !ok {
            out.push(fail(codes::ROUNDTRIP_MISMATCH, format!("{what} differs"), json!({ "part": what })));
        }
    };
    diff(
        expected.q.basis_names() == actual.q.basis_names() && expected.q.same_structure(&actual.q),
        "q",
    );
    diff(
        expected.l.basis_names() == actual.l.basis_names() && expected.l.same_structure(&actual.l),
        "l",
    );
    diff(expected.iota == actual.iota, "iota");
    diff(expected.components.len() == actual.components.len(), "component list");
    for (a, b) in expected.components.iter().zip(&actual.components) {
        diff(a == b, &format!("component {}", a.name));
    }
    out
}

/// Pair -> group datum -> JSON -> group datum -> pair, compared exactly.
pub fn roundtrip_check(p: &LiePairDatum, order: usize) -> Result<Vec<Failure>> {
    let datum = pair_to_group_datum(p, order)?;
    let reread = group_datum_from_json(&group_datum_to_json(&datum))?;
    if reread != datum {
        return Ok(vec![fail(
            codes::ROUNDTRIP_MISMATCH,
            "group datum changed under JSON serialization".into(),
            json!({ "part": "datum" }),
        )]);
    }
    let back = group_datum_to_pair(&reread)?;
    Ok(compare_pairs(p, &back))
}

fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|c| Value::from(c.to_string())).collect())
}

fn matrix_json(m: &LinearMap) -> Value {
    Value::Array(m.rows().iter().map(|r| vector_json(r)).collect())
}

pub fn group_datum_to_json(d: &GroupDatum) -> Value {
    json!({
        "kind": "group_datum",
        "law": group_law_to_json(&d.law),
        "components": d.components.iter().map(|c| json!({
            "name": c.name,
            "q_action": matrix_json(&c.q_action),
        })).collect::<Vec<_>>(),
        "l_embedding": {
            "name": d.l_name,
            "basis": d.l_embedding.iter().map(|(name, v)| json!({
                "name": name,
                "vector": vector_json(v),
            })).collect::<Vec<_>>(),
        },
    })
}

fn schema_err(msg: impl Into<String>) -> Error {
    datum_err("JSON-SCHEMA", msg)
}

fn vector_from_json(v: &Value, what: &str) -> Result<Vector> {
    v.as_array()
        .ok_or_else(|| schema_err(format!("`{what}` must be an array")))?
        .iter()
        .map(|x| json_scalar(x, what))
        .collect()
}

pub(crate) fn matrix_from_json(v: &Value, dim: usize, what: &str) -> Result<LinearMap> {
    let rows = v
        .as_array()
        .ok_or_else(|| schema_err(format!("`{what}` must be an array of rows")))?
        .iter()
        .map(|r| vector_from_json(r, what))
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(schema_err(format!("`{what}` must be {dim}x{dim}")));
    }
    LinearMap::from_rows(dim, rows)
}

pub fn group_datum_from_json(v: &Value) -> Result<GroupDatum> {
    let law = group_law_from_json(v.get("law").ok_or_else(|| schema_err("missing `law`"))?)?;
    let n = law.dim();
    let components = v
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| schema_err("missing `components`"))?
        .iter()
        .map(|c| {
            let name = c
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| schema_err("component without `name`"))?;
            Ok(DatumComponent {
                name: name.to_string(),
                q_action: matrix_from_json(c.get("q_action").unwrap_or(&Value::Null), n, "q_action")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let emb = v.get("l_embedding").ok_or_else(|| schema_err("missing `l_embedding`"))?;
    let l_name = emb.get("name").and_then(Value::as_str).unwrap_or("l").to_string();
    let l_embedding = emb
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| schema_err("`l_embedding` without `basis`"))?
        .iter()
        .map(|b| {
            let name = b
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| schema_err("embedding vector without `name`"))?;
            Ok((name.to_string(), vector_from_json(b.get("vector").unwrap_or(&Value::Null), "vector")?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupDatum {
        law,
        components,
        l_name,
        l_embedding,
    })
}

/// Basis names recorded under `basis` in a JSON object.
pub fn json_basis(v: &Value) -> Result<Vec<String>> {
    json_strings(v.get("basis").unwrap_or(&Value::Null), "basis")
}

/// Corpus of valid pairs plus a few invalid ones for negative tests.
pub mod standard {
    use super::*;
    use crate::liealg::standard::{abelian2, heisenberg, sl2};

    fn matrix(rows: &[&[i64]]) -> LinearMap {
        let dim = rows.first().map_or(0, |r| r.len());
        LinearMap::from_rows(
            dim,
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_integer(x)).collect()).collect(),
        )
        .expect("rectangular")
    }

    fn line(name: &str) -> LieAlgebra {
        LieAlgebra::new(name, vec!["t".to_string()]).expect("one name")
    }

    /// `q = h3`, `l = C t`, `ι(t) = e3`.
    pub fn h3_center() -> LiePairDatum {
        LiePairDatum {
            q: heisenberg(),
            l: line("center"),
            iota: matrix(&[&[0], &[0], &[1]]),
            components: Vec::new(),
        }
    }

    pub fn h3_identity() -> LiePairDatum {
        LiePairDatum::identity(heisenberg())
    }

    pub fn sl2_identity() -> LiePairDatum {
        LiePairDatum::identity(sl2())
    }

    /// `q = C^2`, `l = C t`, `ι(t) = a1`, one component acting by `-1`.
    pub fn abelian_negation() -> LiePairDatum {
        LiePairDatum {
            q: abelian2(),
            l: line("line"),
            iota: matrix(&[&[1], &[0]]),
            components: vec![Component {
                name: "minus".into(),
                q_action: matrix(&[&[-1, 0], &[0, -1]]),
                l_action: matrix(&[&[-1]]),
            }],
        }
    }

    /// The h3 center pair with `γ: e1 <-> e2, e3 -> -e3`.
    pub fn h3_swap() -> LiePairDatum {
        LiePairDatum {
            components: vec![Component {
                name: "swap".into(),
                q_action: matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]),
                l_action: matrix(&[&[-1]]),
            }],
            ..h3_center()
        }
    }

    pub fn corpus() -> Vec<(&'static str, LiePairDatum)> {
        vec![
            ("h3-center", h3_center()),
            ("h3-identity", h3_identity()),
            ("sl2-identity", sl2_identity()),
            ("abelian-negation", abelian_negation()),
            ("h3-swap", h3_swap()),
        ]
    }

    /// `γ: e1 <-> e2, e3 -> e3` is not an automorphism of h3.
    pub fn h3_bad_swap() -> LiePairDatum {
        LiePairDatum {
            components: vec![Component {
                name: "swap".into(),
                q_action: matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
                l_action: matrix(&[&[1]]),
            }],
            ..h3_center()
        }
    }

    /// `l` abelian of dimension 2 sent onto `e1, e2` of h3: not a
    /// homomorphism.
    pub fn h3_non_homomorphic_iota() -> LiePairDatum {
        LiePairDatum {
            q: heisenberg(),
            l: LieAlgebra::abelian("ab2", 2),
            iota: matrix(&[&[1, 0], &[0, 1], &[0, 0]]),
            components: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use crate::liealg::standard::{abelian2, aff1, heisenberg, sl2};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_integer(x)).collect()
    }

    fn codes_of(f: &[Failure]) -> Vec<&'static str> {
        f.iter().map(|f| f.code).collect()
    }

    #[test]
    fn corpus_pairs_validate() {
        for (name, p) in corpus() {
            assert!(validate_lie_pair(&p).is_empty(), "{name}: {:?}", validate_lie_pair(&p));
        }
        assert!(validate_lie_pair(&LiePairDatum::trivial(sl2())).is_empty());
    }

    #[test]
    fn bad_swap_fails_automorphism_on_e1_e2() {
        let f = validate_lie_pair(&h3_bad_swap());
        assert_eq!(codes_of(&f), [codes::PAIR_AUTOMORPHISM]);
        assert_eq!(f[0].witness["pair"], json!(["e1", "e2"]));
        assert_eq!(f[0].witness["algebra"], json!("q"));
    }

    #[test]
    fn iota_conditions() {
        let f = validate_lie_pair(&h3_non_homomorphic_iota());
        assert_eq!(codes_of(&f), [codes::PAIR_IOTA_HOMOMORPHISM]);
        let mut p = h3_center();
        p.iota = LinearMap::zero(1, 3);
        assert_eq!(codes_of(&validate_lie_pair(&p)), [codes::PAIR_IOTA_INJECTIVE]);
        let aff = LiePairDatum {
            q: LieAlgebra::new("b", vec!["b".into()]).unwrap(),
            l: LieAlgebra::new("t", vec!["t".into()]).unwrap(),
            iota: LinearMap::zero(1, 1),
            components: Vec::new(),
        };
        assert!(matches!(pair_semidirect(&aff), Err(Error::Precondition(_))));
    }

    #[test]
    fn shape_and_equivariance_failures() {
        let mut p = h3_swap();
        p.components[0].l_action = LinearMap::identity(2);
        assert_eq!(codes_of(&validate_lie_pair(&p)), [codes::PAIR_SHAPE]);
        let mut p = h3_swap();
        p.components[0].l_action = LinearMap::identity(1);
        let f = validate_lie_pair(&p);
        assert!(codes_of(&f).contains(&codes::PAIR_EQUIVARIANCE));
        let mut p = abelian_negation();
        p.components[0].q_action = LinearMap::zero(2, 2);
        assert!(codes_of(&validate_lie_pair(&p)).contains(&codes::PAIR_SINGULAR_ACTION));
    }

    #[test]
    fn infinitesimal_condition() {
        let scale = LinearMap::from_rows(2, vec![v(&[1, 0]), v(&[0, 2])]).unwrap();
        let mut p = LiePairDatum::identity(aff1());
        p.components.push(Component {
            name: "scale".into(),
            q_action: scale.clone(),
            l_action: scale,
        });
        assert!(validate_lie_pair(&p).is_empty());
        // for automorphisms equivariance already forces the condition, so
        // use a non-automorphism that is equivariant for ι = id
        let swap = LinearMap::from_rows(3, vec![v(&[0, 1, 0]), v(&[1, 0, 0]), v(&[0, 0, 1])]).unwrap();
        let mut p = h3_identity();
        p.components.push(Component {
            name: "swap".into(),
            q_action: swap.clone(),
            l_action: swap,
        });
        let c = codes_of(&validate_lie_pair(&p));
        assert!(c.contains(&codes::PAIR_INFINITESIMAL));
        assert!(!c.contains(&codes::PAIR_EQUIVARIANCE));
    }

    #[test]
    fn semidirect_examples() {
        let s = pair_semidirect(&h3_center()).unwrap();
        assert_eq!(s.dim(), 4);
        for j in 0..4 {
            assert!(linalg::is_zero_vector(&s.basis_bracket(0, j)));
        }
        let trivial = pair_semidirect(&LiePairDatum::trivial(heisenberg())).unwrap();
        assert!(trivial.same_structure(&heisenberg()));
    }

    #[test]
    fn theta_examples() {
        let t = theta_embedding(&h3_center()).unwrap();
        assert_eq!(t.column(0), &v(&[1, 0, 0, -1]));
        let t = theta_embedding(&LiePairDatum::trivial(sl2())).unwrap();
        assert_eq!((t.domain_dim(), t.codomain_dim()), (0, 3));
        let t = theta_embedding(&sl2_identity()).unwrap();
        assert_eq!(t.column(1), &v(&[0, 1, 0, 0, -1, 0]));
    }

    #[test]
    fn kernel_ideal_examples() {
        assert!(kernel_ideal_check(&h3_center()).unwrap());
        assert!(kernel_ideal_check(&sl2_identity()).unwrap());
        assert!(!kernel_ideal_check_unchecked(&h3_non_homomorphic_iota()).unwrap());
        assert!(matches!(
            kernel_ideal_check(&h3_non_homomorphic_iota()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quotient_examples() {
        let m = pair_quotient_map(&h3_center()).unwrap();
        assert_eq!(m.column(0), &v(&[0, 0, 1]));
        for j in 0..3 {
            assert_eq!(m.column(1 + j), &basis_vector(3, j));
        }
        let cert = certify_quotient(&sl2_identity()).unwrap();
        assert!(cert.failures.is_empty());
        assert_eq!(cert.quotient.dim(), 3);
        for (_, p) in corpus() {
            let r = pair_check(&p).unwrap();
            assert!(r.ok(), "{:?}", r.failures);
        }
    }

    #[test]
    fn group_datum_examples() {
        let d = pair_to_group_datum(&h3_center(), 2).unwrap();
        assert_eq!(d.law, group_law_from_uea(&heisenberg(), 2).unwrap());
        assert!(d.components.is_empty());
        assert_eq!(d.l_embedding, vec![("t".to_string(), v(&[0, 0, 1]))]);
        let bare = pair_to_group_datum(&LiePairDatum::trivial(sl2()), 3).unwrap();
        assert!(bare.l_embedding.is_empty());
        let neg = pair_to_group_datum(&abelian_negation(), 3).unwrap();
        assert_eq!(neg.law, GroupLaw::additive("abelian2", abelian2().basis_names().to_vec(), 3));
    }

    #[test]
    fn round_trips_are_exact() {
        for order in 2..=4 {
            for (name, p) in corpus() {
                assert!(roundtrip_check(&p, order).unwrap().is_empty(), "{name} at {order}");
            }
        }
        let bare = group_datum_to_pair(&pair_to_group_datum(&LiePairDatum::trivial(abelian2()), 2).unwrap()).unwrap();
        assert_eq!(bare.l.dim(), 0);
    }

    #[test]
    fn embedding_closure() {
        let law = group_law_from_uea(&heisenberg(), 3).unwrap();
        let datum = |vs: Vec<Vector>| GroupDatum {
            law: law.clone(),
            components: Vec::new(),
            l_name: "l".into(),
            l_embedding: vs.into_iter().enumerate().map(|(i, v)| (format!("t{i}"), v)).collect(),
        };
        assert!(group_datum_to_pair(&datum(vec![v(&[1, 0, 0])])).is_ok());
        assert!(group_datum_to_pair(&datum(vec![v(&[1, 1, 0]), v(&[0, 0, 1])])).is_ok());
        assert_eq!(
            group_datum_to_pair(&datum(vec![v(&[1, 0, 0]), v(&[0, 1, 0])])),
            Err(Error::Input {
                code: codes::DATUM_EMBEDDING_NOT_CLOSED,
                message: "[t0, t1] leaves the embedded subspace".into()
            })
        );
        assert!(matches!(
            group_datum_to_pair(&datum(vec![v(&[1, 0, 0]), v(&[2, 0, 0])])),
            Err(Error::Input { code: codes::DATUM_EMBEDDING_DEPENDENT, .. })
        ));
    }

    #[test]
    fn homomorphisms() {
        let id = |p: &LiePairDatum| PairHomomorphism {
            dphi: LinearMap::identity(p.q.dim()),
            component_map: p
                .components
                .iter()
                .map(|c| (c.name.clone(), vec![Letter { generator: c.name.clone(), inverse: false }]))
                .collect(),
        };
        for (_, p) in corpus() {
            assert!(validate_pair_homomorphism(&id(&p), &p, &p).unwrap().is_empty());
        }
        // h3 pair onto the abelian quotient by the center
        let target = LiePairDatum::trivial(abelian2());
        let quotient = PairHomomorphism {
            dphi: LinearMap::from_rows(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap(),
            component_map: BTreeMap::new(),
        };
        assert!(validate_pair_homomorphism(&quotient, &h3_center(), &target).unwrap().is_empty());
        // swapping e1, e2 with e3 fixed
        let p = h3_identity();
        let swap = PairHomomorphism {
            dphi: LinearMap::from_rows(3, vec![v(&[0, 1, 0]), v(&[1, 0, 0]), v(&[0, 0, 1])]).unwrap(),
            component_map: BTreeMap::new(),
        };
        let f = validate_pair_homomorphism(&swap, &p, &p).unwrap();
        assert!(codes_of(&f).contains(&codes::HOM_DPHI));
        // the swap pair into itself with the inverse letter
        let p = h3_swap();
        let mut h = id(&p);
        h.component_map.insert("swap".into(), vec![Letter { generator: "swap".into(), inverse: true }]);
        assert!(validate_pair_homomorphism(&h, &p, &p).unwrap().is_empty());
    }

    #[test]
    fn datum_json_round_trip() {
        let d = pair_to_group_datum(&h3_swap(), 3).unwrap();
        assert_eq!(group_datum_from_json(&group_datum_to_json(&d)).unwrap(), d);
    }
}
