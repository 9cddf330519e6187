//! Truncated formal group laws in exponential coordinates.
//!
//! A [`GroupLaw`] on an `n`-dimensional Lie algebra is `n` series
//! `F_i(x, y)` in the `2n` variables `x_1..x_n, y_1..y_n`, known up to total
//! degree `order`. It is the transpose of multiplication in `U(g)` under the
//! divided-power pairing `<x^a / a!, s_b> = δ_ab` with the symmetrized PBW
//! basis `s_b`, so the generic point is `exp(sum x_i e_i)` and `F` is the
//! Baker-Campbell-Hausdorff series.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{LinearMap, Vector};
use crate::report::{codes, Failure, Verdict};
use crate::scalar::Scalar;
use crate::series::{MultiIndex, TruncSeries};
use crate::uea::Enveloping;

#[derive(Clone, PartialEq, Eq)]
pub struct GroupLaw {
    name: String,
    basis: Vec<String>,
    order: usize,
    components: Vec<TruncSeries>,
}

impl GroupLaw {
    /// Checks shapes only; the group-law axioms are checked by
    /// [`fgl_axiom_check`].
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        order: usize,
        components: Vec<TruncSeries>,
    ) -> Result<Self> {
        let n = basis.len();
        if components.len() != n {
            return Err(Error::Shape(format!(
                "{} components for a {n}-dimensional algebra",
                components.len()
            )));
        }
        if let Some(c) = components
            .iter()
            .find(|c| c.num_vars() != 2 * n || c.order() != order)
        {
            return Err(Error::Shape(format!(
                "component has {} variables / order {}, expected {} / {order}",
                c.num_vars(),
                c.order(),
                2 * n
            )));
        }
        Ok(GroupLaw {
            name: name.into(),
            basis,
            order,
            components,
        })
    }

    /// The additive law `F(x, y) = x + y`.
    pub fn additive(name: impl Into<String>, basis: Vec<String>, order: usize) -> Self {
        let n = basis.len();
        let components = (0..n)
            .map(|i| {
                TruncSeries::variable(2 * n, order, i)
                    .add(&TruncSeries::variable(2 * n, order, n + i))
                    .expect("same shape")
            })
            .collect();
        GroupLaw {
            name: name.into(),
            basis,
            order,
            components,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn components(&self) -> &[TruncSeries] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &TruncSeries {
        &self.components[k]
    }

    /// Coefficient of `x^a y^b` in `F_k`.
    pub fn coefficient(&self, k: usize, x: &[u32], y: &[u32]) -> Result<Scalar> {
        let idx = MultiIndex::new(x.to_vec()).concat(&MultiIndex::new(y.to_vec()));
        self.components[k].coefficient(&idx)
    }

    /// Explicitly lowers the truncation order.
    pub fn truncate(&self, order: usize) -> Result<GroupLaw> {
        let components = self
            .components
            .iter()
            .map(|c| c.truncate(order))
            .collect::<Result<_>>()?;
        GroupLaw::new(self.name.clone(), self.basis.clone(), order, components)
    }

    /// Same order and coefficients; names are not compared.
    pub fn same_series(&self, other: &GroupLaw) -> bool {
        self.order == other.order && self.components == other.components
    }

    /// Human-readable `F[e3] = x_e3 + y_e3 + 1/2 x_e1 y_e2 - ...` lines.
    pub fn render(&self) -> Vec<String> {
        let n = self.dim();
        let vars: Vec<String> = self
            .basis
            .iter()
            .map(|b| format!("x_{b}"))
            .chain(self.basis.iter().map(|b| format!("y_{b}")))
            .collect();
        (0..n)
            .map(|k| format!("F[{}] = {}", self.basis[k], render_series(&self.components[k], &vars)))
            .collect()
    }
}

impl fmt::Debug for GroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupLaw({}, order {}, {:?})", self.name, self.order, self.components)
    }
}

pub(crate) fn render_series(s: &TruncSeries, vars: &[String]) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (idx, c)) in s.terms().enumerate() {
        let mono: Vec<String> = idx
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
            .collect();
        let mono = mono.join(" ");
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) if c.is_real() => (true, rest.to_string()),
            _ if c.is_real() => (false, text.clone()),
            _ => (false, format!("({text})")),
        };
        if k > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        match (mag.as_str(), mono.is_empty()) {
            (m, true) => out.push_str(m),
            ("1", false) => out.push_str(&mono),
            (m, false) => {
                out.push_str(m);
                out.push(' ');
                out.push_str(&mono);
            }
        }
    }
    out
}

/// Formal inverse `ι(x)` with `F(x, ι(x)) = 0`, as `n` series in `n` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InverseSeries {
    pub order: usize,
    pub components: Vec<TruncSeries>,
}

/// Dual route: `F_i(x, y) = sum c_i(a, b) x^a y^b / (a! b!)`, where
/// `c_i(a, b)` is the `s_{e_i}`-coordinate of `s_a s_b`.
pub fn group_law_from_uea(g: &LieAlgebra, order: usize) -> Result<GroupLaw> {
    group_law_from_enveloping(&Enveloping::new(g.clone()), order)
}

pub fn group_law_from_enveloping(u: &Enveloping, order: usize) -> Result<GroupLaw> {
    let g = u.algebra();
    if let Some(f) = g.validate_jacobi().first() {
        return Err(Error::Precondition(format!(
            "`{}` violates the Jacobi identity on {:?}",
            g.name(),
            f.triple
        )));
    }
    if order == 0 {
        return Err(Error::Precondition("truncation order must be at least 1".into()));
    }
    let n = g.dim();
    let mut components = vec![TruncSeries::zero(2 * n, order); n];
    let monos = MultiIndex::up_to(n, order);
    for a in &monos {
        let sa = u.symmetrized(a);
        let fa = a.factorial();
        for b in monos.iter().take_while(|b| a.degree() + b.degree() <= order) {
            let prod = u.multiply_unchecked(&sa, &u.symmetrized(b));
            let coords = u.symmetric_coordinates(&prod);
            let denom = Scalar::from_bigint(&fa * b.factorial());
            let xy = a.concat(b);
            for (k, comp) in components.iter_mut().enumerate() {
                if let Some(c) = coords.get(&MultiIndex::unit(n, k)) {
                    comp.add_term(xy.clone(), c / &denom);
                }
            }
        }
    }
    GroupLaw::new(g.name(), g.basis_names().to_vec(), order, components)
}

fn mismatch_failures(
    code: &'static str,
    what: &str,
    k: usize,
    lhs: &TruncSeries,
    rhs: &TruncSeries,
    names: &[String],
) -> Vec<Failure> {
    let diff = lhs.sub(rhs).expect("same shape");
    diff.terms()
        .map(|(idx, _)| {
            let l = lhs.coefficient(idx).expect("within order");
            let r = rhs.coefficient(idx).expect("within order");
            Failure::new(
                code,
                format!("{what} fails in F[{}] at exponents {:?}: {} vs {}", names[k], idx, l, r),
                json!({
                    "component": k,
                    "exponents": idx.exponents(),
                    "lhs": l.to_string(),
                    "rhs": r.to_string(),
                }),
            )
        })
        .collect()
}

/// Checks the group-law axioms modulo degree `order + 1`: vanishing constant
/// term, linear part `x + y`, two-sided unit, associativity
/// `F(F(x,y),z) = F(x,F(y,z))`, and two-sidedness of the formal inverse.
pub fn fgl_axiom_check(f: &GroupLaw) -> Result<Vec<Failure>> {
    let n = f.dim();
    let order = f.order;
    let names = &f.basis;
    let mut failures = Vec::new();

    for (k, comp) in f.components.iter().enumerate() {
        let c = comp.constant_term();
        if !c.is_zero() {
            failures.push(Failure::new(
                codes::LAW_CONSTANT,
                format!("F[{}] has constant term {c}", names[k]),
                json!({ "component": k, "value": c.to_string() }),
            ));
        }
    }

    // F(x, 0) = x and F(0, y) = y
    let additive = GroupLaw::additive(f.name.clone(), names.clone(), order);
    for (k, comp) in f.components.iter().enumerate() {
        for (half, label) in [(0..n, "F(x,0) = x"), (n..2 * n, "F(0,y) = y")] {
            let keep = |idx: &MultiIndex| {
                idx.exponents()
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| e == 0 || half.contains(&i))
            };
            let restricted =
                TruncSeries::from_terms(2 * n, order, comp.terms().filter(|(i, _)| keep(i)).map(|(i, c)| (i.clone(), c.clone())))?;
            let expected = TruncSeries::from_terms(
                2 * n,
                order,
                additive.components[k]
                    .terms()
                    .filter(|(i, _)| keep(i))
                    .map(|(i, c)| (i.clone(), c.clone())),
            )?;
            if restricted != expected {
                failures.extend(mismatch_failures(codes::LAW_UNIT, label, k, &restricted, &expected, names));
            }
        }
    }

    let linear_ok = f.components.iter().enumerate().all(|(k, comp)| {
        (0..2 * n).all(|i| {
            let want = if i == k || i == n + k { Scalar::one() } else { Scalar::zero() };
            order == 0 || comp.coefficient(&MultiIndex::unit(2 * n, i)).map(|c| c == want).unwrap_or(false)
        })
    });
    if !linear_ok {
        failures.push(Failure::new(
            codes::LAW_LINEAR,
            "linear part of F is not x + y",
            Value::Null,
        ));
    }

    // associativity in 3n variables x, y, z
    let m = 3 * n;
    let xy_to_xyz: Vec<usize> = (0..2 * n).collect();
    let yz_to_xyz: Vec<usize> = (n..3 * n).collect();
    let f_xy = f
        .components
        .iter()
        .map(|c| c.remap(m, &xy_to_xyz))
        .collect::<Result<Vec<_>>>()?;
    let f_yz = f
        .components
        .iter()
        .map(|c| c.remap(m, &yz_to_xyz))
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<TruncSeries> = (0..n).map(|i| TruncSeries::variable(m, order, i)).collect();
    let zs: Vec<TruncSeries> = (0..n).map(|i| TruncSeries::variable(m, order, 2 * n + i)).collect();
    let left_images: Vec<TruncSeries> = f_xy.iter().cloned().chain(zs.iter().cloned()).collect();
    let right_images: Vec<TruncSeries> = xs.iter().cloned().chain(f_yz.iter().cloned()).collect();
    let constants_ok = f.components.iter().all(|c| c.constant_term().is_zero());
    if constants_ok {
        for (k, comp) in f.components.iter().enumerate() {
            let lhs = comp.substitute(&left_images)?;
            let rhs = comp.substitute(&right_images)?;
            if lhs != rhs {
                failures.extend(mismatch_failures(
                    codes::LAW_ASSOCIATIVITY,
                    "associativity",
                    k,
                    &lhs,
                    &rhs,
                    names,
                ));
            }
        }
    }

    if linear_ok && constants_ok {
        let inv = fgl_inverse(f)?;
        let xs: Vec<TruncSeries> = (0..n).map(|i| TruncSeries::variable(n, order, i)).collect();
        let right: Vec<TruncSeries> = xs.iter().cloned().chain(inv.components.iter().cloned()).collect();
        let left: Vec<TruncSeries> = inv.components.iter().cloned().chain(xs.iter().cloned()).collect();
        for (k, comp) in f.components.iter().enumerate() {
            for (images, side) in [(&right, "F(x, ι(x)) = 0"), (&left, "F(ι(x), x) = 0")] {
                let value = comp.substitute(images)?;
                if !value.is_zero() {
                    failures.extend(mismatch_failures(
                        codes::LAW_INVERSE,
                        side,
                        k,
                        &value,
                        &TruncSeries::zero(n, order),
                        names,
                    ));
                }
            }
        }
    }
    Ok(failures)
}

/// Solves `F(x, ι(x)) = 0` degree by degree, starting from `ι(x) = -x`.
/// Each pass `ι <- ι - F(x, ι(x))` fixes one more degree because the
/// linear part of `F` in `y` is the identity.
pub fn fgl_inverse(f: &GroupLaw) -> Result<InverseSeries> {
    let n = f.dim();
    let order = f.order;
    for (k, comp) in f.components.iter().enumerate() {
        for i in 0..2 * n {
            let want = if i == k || i == n + k { Scalar::one() } else { Scalar::zero() };
            if order > 0 && comp.coefficient(&MultiIndex::unit(2 * n, i))? != want {
                return Err(Error::Precondition("linear part of F is not x + y".into()));
            }
        }
        if !comp.constant_term().is_zero() {
            return Err(Error::Precondition("F has a nonzero constant term".into()));
        }
    }
    let xs: Vec<TruncSeries> = (0..n).map(|i| TruncSeries::variable(n, order, i)).collect();
    let mut inv: Vec<TruncSeries> = xs.iter().map(TruncSeries::neg).collect();
    for _ in 1..order {
        let images: Vec<TruncSeries> = xs.iter().cloned().chain(inv.iter().cloned()).collect();
        let residual = f
            .components
            .iter()
            .map(|c| c.substitute(&images))
            .collect::<Result<Vec<_>>>()?;
        if residual.iter().all(TruncSeries::is_zero) {
            break;
        }
        inv = inv
            .iter()
            .zip(&residual)
            .map(|(i, r)| i.sub(r))
            .collect::<Result<_>>()?;
    }
    Ok(InverseSeries {
        order,
        components: inv,
    })
}

/// Structure constants from the quadratic part:
/// `c^k_{ij} = coeff(x_i y_j, F_k) - coeff(x_j y_i, F_k)`.
pub fn lie_from_fgl(f: &GroupLaw) -> Result<LieAlgebra> {
    if f.order < 2 {
        return Err(Error::InsufficientOrder {
            order: f.order,
            needed: 2,
        });
    }
    let n = f.dim();
    let mut g = LieAlgebra::new(f.name.clone(), f.basis.clone())?;
    let xy = |i: usize, j: usize| {
        let mut e = vec![0u32; 2 * n];
        e[i] += 1;
        e[n + j] += 1;
        MultiIndex::new(e)
    };
    for i in 0..n {
        for j in i + 1..n {
            let v: Vector = f
                .components
                .iter()
                .map(|c| Ok(c.coefficient(&xy(i, j))? - c.coefficient(&xy(j, i))?))
                .collect::<Result<_>>()?;
            g.set_bracket(i, j, v)?;
        }
    }
    Ok(g)
}

/// Why a linear map fails to preserve a group law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivarianceWitness {
    NotInvertible,
    Mismatch {
        component: usize,
        exponents: MultiIndex,
        lhs: Scalar,
        rhs: Scalar,
    },
}

impl EquivarianceWitness {
    pub fn to_json(&self) -> Value {
        match self {
            EquivarianceWitness::NotInvertible => json!({ "kind": "not-invertible" }),
            EquivarianceWitness::Mismatch {
                component,
                exponents,
                lhs,
                rhs,
            } => json!({
                "kind": "mismatch",
                "component": component,
                "exponents": exponents.exponents(),
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
            }),
        }
    }
}

/// Whether `γ` is invertible and `F(γx, γy) = γ F(x, y)` modulo degree
/// `order + 1`. On the first mismatch the lowest-order differing coefficient
/// is returned.
pub fn fgl_equivariance_check(f: &GroupLaw, gamma: &LinearMap) -> Result<Verdict<EquivarianceWitness>> {
    let n = f.dim();
    if gamma.domain_dim() != n || gamma.codomain_dim() != n {
        return Err(Error::Shape(format!(
            "map is {}x{}, law has dimension {n}",
            gamma.codomain_dim(),
            gamma.domain_dim()
        )));
    }
    if gamma.inverse().is_none() {
        return Ok(Verdict::Fails(EquivarianceWitness::NotInvertible));
    }
    let order = f.order;
    // (γx)_j = sum_m γ[j][m] x_m, and likewise for y
    let linear = |offset: usize, j: usize| -> TruncSeries {
        let terms = (0..n).map(|m| (MultiIndex::unit(2 * n, offset + m), gamma.entry(j, m).clone()));
        TruncSeries::from_terms(2 * n, order, terms).expect("shape")
    };
    let images: Vec<TruncSeries> = (0..n).map(|j| linear(0, j)).chain((0..n).map(|j| linear(n, j))).collect();
    let mut first: Option<EquivarianceWitness> = None;
    for k in 0..n {
        let lhs = f.components[k].substitute(&images)?;
        let mut rhs = TruncSeries::zero(2 * n, order);
        for m in 0..n {
            rhs = rhs.add(&f.components[m].scale(gamma.entry(k, m)))?;
        }
        let diff = lhs.sub(&rhs)?;
        let lowest = diff.terms().next().map(|(i, _)| i.clone());
        if let Some(idx) = &lowest {
            let candidate = EquivarianceWitness::Mismatch {
                component: k,
                exponents: idx.clone(),
                lhs: lhs.coefficient(idx)?,
                rhs: rhs.coefficient(idx)?,
            };
            let better = match &first {
                Some(EquivarianceWitness::Mismatch { exponents, .. }) => idx < exponents,
                _ => true,
            };
            if better {
                first = Some(candidate);
            }
        }
    }
    Ok(match first {
        None => Verdict::Holds,
        Some(w) => Verdict::Fails(w),
    })
}

/// Canonical JSON form: per component, the terms in graded-lex order of the
/// concatenated `(x, y)` exponents.
pub fn group_law_to_json(f: &GroupLaw) -> Value {
    let n = f.dim();
    let components: Vec<Value> = f
        .components
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let terms: Vec<Value> = c
                .terms()
                .map(|(idx, coeff)| {
                    let (x, y) = idx.split_at(n);
                    json!({
                        "x_exponents": x.exponents(),
                        "y_exponents": y.exponents(),
                        "coefficient": coeff.to_string(),
                    })
                })
                .collect();
            json!({ "component": f.basis[k], "terms": terms })
        })
        .collect();
    json!({
        "kind": "group_law",
        "algebra": f.name,
        "basis": f.basis,
        "order": f.order,
        "components": components,
    })
}

fn json_err(msg: impl Into<String>) -> Error {
    Error::Input {
        code: "JSON-SCHEMA",
        message: msg.into(),
    }
}

pub(crate) fn json_strings(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| json_err(format!("`{what}` must be an array of strings")))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| json_err(format!("`{what}` must be an array of strings")))
        })
        .collect()
}

pub(crate) fn json_scalar(v: &Value, what: &str) -> Result<Scalar> {
    let s = v
        .as_str()
        .ok_or_else(|| json_err(format!("`{what}` must be a scalar string")))?;
    s.parse().map_err(|e| Error::Input {
        code: "SCALAR",
        message: format!("{what}: {e}"),
    })
}

/// Inverse of [`group_law_to_json`].
pub fn group_law_from_json(v: &Value) -> Result<GroupLaw> {
    let name = v.get("algebra").and_then(Value::as_str).unwrap_or("law").to_string();
    let basis = json_strings(v.get("basis").ok_or_else(|| json_err("missing `basis`"))?, "basis")?;
    let order = v
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| json_err("missing or invalid `order`"))? as usize;
    let n = basis.len();
    let comps = v
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| json_err("missing `components`"))?;
    if comps.len() != n {
        return Err(json_err(format!("{} components for {n} basis elements", comps.len())));
    }
    let mut components = Vec::with_capacity(n);
    for comp in comps {
        let terms = comp
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| json_err("component without `terms`"))?;
        let mut series = TruncSeries::zero(2 * n, order);
        for t in terms {
            let exps = |key: &str| -> Result<MultiIndex> {
                let arr = t
                    .get(key)
                    .and_then(Value::as_array)
                    .ok_or_else(|| json_err(format!("term without `{key}`")))?;
                let e = arr
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as u32))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| json_err(format!("`{key}` must hold natural numbers")))?;
                if e.len() != n {
                    return Err(json_err(format!("`{key}` has length {}, expected {n}", e.len())));
                }
                Ok(MultiIndex::new(e))
            };
            let idx = exps("x_exponents")?.concat(&exps("y_exponents")?);
            if idx.degree() > order {
                return Err(json_err(format!("term of degree {} above order {order}", idx.degree())));
            }
            let c = json_scalar(t.get("coefficient").unwrap_or(&Value::Null), "coefficient")?;
            series.add_term(idx, c);
        }
        components.push(series);
    }
    GroupLaw::new(name, basis, order, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::standard::*;

    fn xy(x: &[u32], y: &[u32]) -> (Vec<u32>, Vec<u32>) {
        (x.to_vec(), y.to_vec())
    }

    fn coeff(f: &GroupLaw, k: usize, e: (Vec<u32>, Vec<u32>)) -> Scalar {
        f.coefficient(k, &e.0, &e.1).unwrap()
    }

    fn rows(r: &[&[i64]]) -> LinearMap {
        LinearMap::from_rows(
            r[0].len(),
            r.iter().map(|row| row.iter().map(|&x| Scalar::from_integer(x)).collect()).collect(),
        )
        .unwrap()
    }

    /// The Heisenberg law with an extra term added to `F_3`.
    fn perturbed_heisenberg(order: usize, x: [u32; 3], y: [u32; 3]) -> GroupLaw {
        let f = group_law_from_uea(&heisenberg(), order).unwrap();
        let mut comps = f.components().to_vec();
        let e = x.iter().chain(&y).copied().collect();
        comps[2].add_term(MultiIndex::new(e), Scalar::ratio(1, 2));
        GroupLaw::new("h3", f.basis_names().to_vec(), order, comps).unwrap()
    }

    #[test]
    fn abelian_law_is_additive() {
        for order in 1..=4 {
            let g = abelian2();
            let f = group_law_from_uea(&g, order).unwrap();
            assert_eq!(f, GroupLaw::additive("abelian2", g.basis_names().to_vec(), order));
        }
    }

    #[test]
    fn heisenberg_law() {
        let f = group_law_from_uea(&heisenberg(), 2).unwrap();
        let h = Scalar::ratio(1, 2);
        assert_eq!(coeff(&f, 2, xy(&[1, 0, 0], &[0, 1, 0])), h);
        assert_eq!(coeff(&f, 2, xy(&[0, 1, 0], &[1, 0, 0])), -h.clone());
        assert_eq!(f.component(2).len(), 4);
        assert_eq!(f.component(0).len(), 2);
        assert_eq!(f.component(1).len(), 2);
    }

    #[test]
    fn sl2_quadratic_coefficient() {
        // basis (h, e, f): coefficient of x_e y_f in F_h
        let f = group_law_from_uea(&sl2(), 2).unwrap();
        assert_eq!(coeff(&f, 0, xy(&[0, 1, 0], &[0, 0, 1])), Scalar::ratio(1, 2));
    }

    #[test]
    fn jacobi_failure_is_precondition() {
        assert!(matches!(
            group_law_from_uea(&jacobi_violating(), 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn axioms_hold_and_corruption_is_caught() {
        let abel = GroupLaw::additive("ab", vec!["a".into(), "b".into()], 4);
        assert!(fgl_axiom_check(&abel).unwrap().is_empty());
        assert!(fgl_axiom_check(&group_law_from_uea(&heisenberg(), 4).unwrap()).unwrap().is_empty());
        // a bilinear change of F_3 is still associative
        let bilinear = perturbed_heisenberg(3, [1, 0, 0], [0, 1, 0]);
        assert!(fgl_axiom_check(&bilinear).unwrap().is_empty());
        let bad = fgl_axiom_check(&perturbed_heisenberg(3, [2, 0, 0], [0, 1, 0])).unwrap();
        assert!(!bad.is_empty());
        assert!(bad.iter().any(|f| f.code == codes::LAW_ASSOCIATIVITY));
        // without associativity the right inverse need not be a left inverse
        assert!(bad
            .iter()
            .all(|f| f.code == codes::LAW_ASSOCIATIVITY || f.code == codes::LAW_INVERSE));
        assert!(bad.iter().any(|f| f.witness["exponents"]
            .as_array()
            .map(|e| e.iter().map(|x| x.as_u64().unwrap()).sum::<u64>() == 3)
            .unwrap_or(false)));
    }

    #[test]
    fn unit_violation_is_reported() {
        let f = group_law_from_uea(&heisenberg(), 2).unwrap();
        let mut comps = f.components().to_vec();
        comps[0].add_term(MultiIndex::new(vec![2, 0, 0, 0, 0, 0]), Scalar::one());
        let bad = GroupLaw::new("h3", f.basis_names().to_vec(), 2, comps).unwrap();
        let fails = fgl_axiom_check(&bad).unwrap();
        assert!(fails.iter().any(|f| f.code == codes::LAW_UNIT));
    }

    #[test]
    fn inverse_examples() {
        let neg = |f: &GroupLaw| -> Vec<TruncSeries> {
            (0..f.dim()).map(|i| TruncSeries::variable(f.dim(), f.order(), i).neg()).collect()
        };
        let abel = GroupLaw::additive("ab", vec!["a".into(), "b".into()], 4);
        assert_eq!(fgl_inverse(&abel).unwrap().components, neg(&abel));
        let h = group_law_from_uea(&heisenberg(), 4).unwrap();
        assert_eq!(fgl_inverse(&h).unwrap().components, neg(&h));
        let s = group_law_from_uea(&sl2(), 3).unwrap();
        let inv = fgl_inverse(&s).unwrap();
        for (i, c) in inv.components.iter().enumerate() {
            let lin: Vec<_> = c.homogeneous_part(1).collect();
            assert_eq!(lin.len(), 1);
            assert_eq!(lin[0].0, &MultiIndex::unit(3, i));
            assert_eq!(lin[0].1, &-Scalar::one());
        }
    }

    #[test]
    fn lie_from_fgl_examples() {
        let abel = GroupLaw::additive("ab", vec!["a".into(), "b".into()], 2);
        assert!(lie_from_fgl(&abel).unwrap().same_structure(&abelian2()));
        let h = group_law_from_uea(&heisenberg(), 2).unwrap();
        assert!(lie_from_fgl(&h).unwrap().same_structure(&heisenberg()));
        let s = group_law_from_uea(&sl2(), 3).unwrap();
        assert_eq!(lie_from_fgl(&s).unwrap(), sl2());
        let low = group_law_from_uea(&sl2(), 1).unwrap();
        assert_eq!(lie_from_fgl(&low), Err(Error::InsufficientOrder { order: 1, needed: 2 }));
    }

    #[test]
    fn equivariance_examples() {
        let h = group_law_from_uea(&heisenberg(), 3).unwrap();
        assert_eq!(fgl_equivariance_check(&h, &LinearMap::identity(3)).unwrap(), Verdict::Holds);
        let aut = rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]);
        assert_eq!(fgl_equivariance_check(&h, &aut).unwrap(), Verdict::Holds);
        let swap = rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        match fgl_equivariance_check(&h, &swap).unwrap() {
            Verdict::Fails(EquivarianceWitness::Mismatch { component, exponents, .. }) => {
                assert_eq!(component, 2);
                assert_eq!(exponents.degree(), 2);
            }
            other => panic!("expected a mismatch, got {other:?}"),
        }
        assert_eq!(
            fgl_equivariance_check(&h, &LinearMap::zero(3, 3)).unwrap(),
            Verdict::Fails(EquivarianceWitness::NotInvertible)
        );
    }

    #[test]
    fn json_round_trip() {
        let f = group_law_from_uea(&sl2(), 3).unwrap();
        let v = group_law_to_json(&f);
        assert_eq!(group_law_from_json(&v).unwrap(), f);
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.starts_with("{\"algebra\":\"sl2\",\"basis\":[\"h\",\"e\",\"f\"],\"components\":[{\"component\":\"h\",\"terms\":[{\"coefficient\":\"1\",\"x_exponents\":[1,0,0],\"y_exponents\":[0,0,0]}"));
    }
}
