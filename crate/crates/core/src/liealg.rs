//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, add_scaled, basis_vector, is_zero_vector, zero_vector, LinearMap, Vector};
use crate::report::Verdict;
use crate::scalar::Scalar;

/// Lie algebra on a named basis. Only `[e_i, e_j]` with `i < j` is stored;
/// the other half of the table is derived, so antisymmetry cannot be broken.
/// The Jacobi identity is *not* enforced; see [`LieAlgebra::validate_jacobi`].
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vector>,
}

/// A basis triple `i < j < k` whose cyclic sum
/// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]` is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub cyclic_sum: Vector,
}

impl LieAlgebra {
    /// Abelian algebra on the given basis names.
    pub fn new(name: impl Into<String>, basis: Vec<String>) -> Result<Self> {
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(Error::Input {
                    code: "DUPLICATE-BASIS",
                    message: format!("basis name `{b}` appears twice"),
                });
            }
        }
        Ok(LieAlgebra {
            name: name.into(),
            basis,
            brackets: BTreeMap::new(),
        })
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        let basis = (1..=dim).map(|i| format!("a{i}")).collect();
        LieAlgebra::new(name, basis).expect("generated names are distinct")
    }

    /// Sets `[e_i, e_j] = value` (and implicitly `[e_j, e_i] = -value`).
    pub fn set_bracket(&mut self, i: usize, j: usize, value: Vector) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n || value.len() != n {
            return Err(Error::Shape(format!(
                "bracket ({i}, {j}) with value of length {} in a {n}-dimensional algebra",
                value.len()
            )));
        }
        if i == j {
            if is_zero_vector(&value) {
                return Ok(());
            }
            return Err(Error::Input {
                code: "SELF-BRACKET",
                message: format!("[{0}, {0}] must vanish", self.basis[i]),
            });
        }
        let (key, value) = if i < j {
            ((i, j), value)
        } else {
            ((j, i), value.iter().map(|x| -x).collect())
        };
        if is_zero_vector(&value) {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, value);
        }
        Ok(())
    }

    /// Builder form of [`set_bracket`](Self::set_bracket) over integer
    /// coefficients, for hard-coded algebras.
    pub fn with_bracket(mut self, i: usize, j: usize, value: &[i64]) -> Self {
        let v = value.iter().map(|&x| Scalar::from_integer(x)).collect();
        self.set_bracket(i, j, v).expect("valid hard-coded bracket");
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Nonzero stored brackets `[e_i, e_j]`, `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.brackets.iter()
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => zero_vector(self.dim()),
            Less => self
                .brackets
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| zero_vector(self.dim())),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|x| -x).collect())
                .unwrap_or_else(|| zero_vector(self.dim())),
        }
    }

    /// `c^k_{ij}`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_bracket(i, j)[k].clone()
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vector> {
        let n = self.dim();
        if u.len() != n || v.len() != n {
            return Err(Error::Shape(format!(
                "bracket of vectors of length {} and {} in a {n}-dimensional algebra",
                u.len(),
                v.len()
            )));
        }
        let mut out = zero_vector(n);
        for (&(i, j), b) in &self.brackets {
            // u_i v_j - u_j v_i
            let k = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
            add_scaled(&mut out, &k, b);
        }
        Ok(out)
    }

    /// Same dimension and structure constants; names are not compared.
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.dim() == other.dim() && self.brackets == other.brackets
    }

    pub fn validate_jacobi(&self) -> Vec<JacobiFailure> {
        let n = self.dim();
        let mut failures = Vec::new();
        let e = |i: usize| basis_vector(n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut sum = zero_vector(n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.basis_bracket(a, b);
                        let outer = self.bracket(&inner, &e(c)).expect("square shapes");
                        add_scaled(&mut sum, &Scalar::from_integer(1), &outer);
                    }
                    if !is_zero_vector(&sum) {
                        failures.push(JacobiFailure {
                            triple: (i, j, k),
                            cyclic_sum: sum,
                        });
                    }
                }
            }
        }
        failures
    }

    pub fn is_jacobi_valid(&self) -> bool {
        self.validate_jacobi().is_empty()
    }

    /// Matrix of `ad_x: y -> [x, y]`.
    pub fn adjoint_rep(&self, x: &[Scalar]) -> Result<LinearMap> {
        let n = self.dim();
        let columns = (0..n)
            .map(|j| self.bracket(x, &basis_vector(n, j)))
            .collect::<Result<Vec<_>>>()?;
        LinearMap::from_columns(n, columns)
    }

    /// Checks `D[e_i,e_j] = [De_i, e_j] + [e_i, De_j]` on basis pairs.
    pub fn is_derivation_action(&self, d: &LinearMap) -> Result<Verdict<(usize, usize)>> {
        let n = self.dim();
        if d.domain_dim() != n || d.codomain_dim() != n {
            return Err(Error::Shape(format!(
                "derivation candidate is {}x{}, algebra has dimension {n}",
                d.codomain_dim(),
                d.domain_dim()
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.apply(&self.basis_bracket(i, j))?;
                let mut rhs = self.bracket(d.column(i), &basis_vector(n, j))?;
                let right = self.bracket(&basis_vector(n, i), d.column(j))?;
                add_scaled(&mut rhs, &Scalar::from_integer(1), &right);
                if lhs != rhs {
                    return Ok(Verdict::Fails((i, j)));
                }
            }
        }
        Ok(Verdict::Holds)
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, {:?}", self.name, self.basis)?;
        for (&(i, j), v) in &self.brackets {
            write!(f, ", [{},{}]={:?}", self.basis[i], self.basis[j], v)?;
        }
        write!(f, ")")
    }
}

/// Checks `f[e_i, e_j] = [f e_i, f e_j]` for all basis pairs of `source`.
pub fn is_lie_homomorphism(
    f: &LinearMap,
    source: &LieAlgebra,
    target: &LieAlgebra,
) -> Result<Verdict<(usize, usize)>> {
    if f.domain_dim() != source.dim() || f.codomain_dim() != target.dim() {
        return Err(Error::Shape(format!(
            "map is {}x{}, algebras have dimensions {} and {}",
            f.codomain_dim(),
            f.domain_dim(),
            source.dim(),
            target.dim()
        )));
    }
    let n = source.dim();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = f.apply(&source.basis_bracket(i, j))?;
            let rhs = target.bracket(f.column(i), f.column(j))?;
            if lhs != rhs {
                return Ok(Verdict::Fails((i, j)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Whether `span(subspace)` is an ideal, i.e. `[g, span] ⊆ span`.
pub fn is_ideal(g: &LieAlgebra, subspace: &[Vector]) -> Result<bool> {
    let n = g.dim();
    if subspace.iter().any(|v| v.len() != n) {
        return Err(Error::Shape("subspace vector has the wrong length".into()));
    }
    if !linalg::is_independent(subspace, n) {
        return Err(Error::Input {
            code: "DEPENDENT-SPAN",
            message: "spanning set of the subspace is linearly dependent".into(),
        });
    }
    for i in 0..n {
        for v in subspace {
            let w = g.bracket(&basis_vector(n, i), v)?;
            if !linalg::in_span(subspace, &w) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `g / ideal` together with the projection and the indices of the input
/// basis vectors used as the complement basis.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub projection: LinearMap,
    pub complement: Vec<usize>,
}

/// Quotient by an ideal. The complement basis is the lexicographically first
/// set of input basis vectors independent modulo the ideal.
pub fn quotient_algebra(g: &LieAlgebra, ideal: &[Vector]) -> Result<Quotient> {
    if !is_ideal(g, ideal)? {
        return Err(Error::Precondition(
            "subspace is not an ideal of the algebra".into(),
        ));
    }
    let n = g.dim();
    let mut spanning: Vec<Vector> = ideal.to_vec();
    let mut complement = Vec::new();
    for i in 0..n {
        let e = basis_vector(n, i);
        if !linalg::in_span(&spanning, &e) {
            spanning.push(e);
            complement.push(i);
        }
    }
    // coordinates w.r.t. (ideal, complement): keep the complement part
    let k = ideal.len();
    let project = |v: &[Scalar]| -> Vector {
        let coords = linalg::solve_in_span(&spanning, v).expect("spanning set is a basis");
        coords[k..].to_vec()
    };
    let m = complement.len();
    let columns: Vec<Vector> = (0..n).map(|j| project(&basis_vector(n, j))).collect();
    let projection = LinearMap::from_columns(m, columns)?;
    let names = complement.iter().map(|&i| g.basis[i].clone()).collect();
    let mut algebra = LieAlgebra::new(format!("{}/ideal", g.name), names)?;
    for a in 0..m {
        for b in a + 1..m {
            let v = g.basis_bracket(complement[a], complement[b]);
            algebra.set_bracket(a, b, project(&v))?;
        }
    }
    Ok(Quotient {
        algebra,
        projection,
        complement,
    })
}

/// Bracket table of `l ⋉ q` without any precondition checks. Basis order is
/// `l` then `q`; names collide-proofed with `l.`/`q.` prefixes when needed.
pub fn semidirect_unchecked(l: &LieAlgebra, q: &LieAlgebra, action: &[LinearMap]) -> Result<LieAlgebra> {
    let (dl, dq) = (l.dim(), q.dim());
    if action.len() != dl {
        return Err(Error::Shape(format!(
            "{} action maps for a {dl}-dimensional algebra",
            action.len()
        )));
    }
    if let Some(a) = action.iter().find(|a| a.domain_dim() != dq || a.codomain_dim() != dq) {
        return Err(Error::Shape(format!(
            "action map is {}x{}, expected {dq}x{dq}",
            a.codomain_dim(),
            a.domain_dim()
        )));
    }
    let collide = l.basis.iter().any(|b| q.basis.contains(b));
    let names: Vec<String> = if collide {
        l.basis
            .iter()
            .map(|b| format!("l.{b}"))
            .chain(q.basis.iter().map(|b| format!("q.{b}")))
            .collect()
    } else {
        l.basis.iter().chain(&q.basis).cloned().collect()
    };
    let mut s = LieAlgebra::new(format!("{}⋉{}", l.name, q.name), names)?;
    let n = dl + dq;
    let embed = |lv: &[Scalar], qv: &[Scalar]| -> Vector {
        let mut v = lv.to_vec();
        v.extend_from_slice(qv);
        v
    };
    let zl = zero_vector(dl);
    for i in 0..dl {
        for j in i + 1..dl {
            s.set_bracket(i, j, embed(&l.basis_bracket(i, j), &zero_vector(dq)))?;
        }
        for j in 0..dq {
            // [tau_i, eta_j] = action(tau_i) eta_j
            s.set_bracket(i, dl + j, embed(&zl, action[i].column(j)))?;
        }
    }
    for i in 0..dq {
        for j in i + 1..dq {
            s.set_bracket(dl + i, dl + j, embed(&zl, &q.basis_bracket(i, j)))?;
        }
    }
    debug_assert_eq!(s.dim(), n);
    Ok(s)
}

/// `l ⋉ q` for an action of `l` on `q` by derivations that is itself a Lie
/// homomorphism `l -> Der(q)`.
pub fn semidirect_product(l: &LieAlgebra, q: &LieAlgebra, action: &[LinearMap]) -> Result<LieAlgebra> {
    if action.len() != l.dim() {
        return Err(Error::Shape(format!(
            "{} action maps for a {}-dimensional algebra",
            action.len(),
            l.dim()
        )));
    }
    for (i, d) in action.iter().enumerate() {
        if let Verdict::Fails((a, b)) = q.is_derivation_action(d)? {
            return Err(Error::Precondition(format!(
                "action of `{}` is not a derivation: fails on ({}, {})",
                l.basis[i], q.basis[a], q.basis[b]
            )));
        }
    }
    for i in 0..l.dim() {
        for j in i + 1..l.dim() {
            // action([t_i, t_j]) = [action t_i, action t_j]
            let coeffs = l.basis_bracket(i, j);
            let mut lhs = LinearMap::zero(q.dim(), q.dim());
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let scaled = LinearMap::from_columns(
                        q.dim(),
                        action[k].columns().iter().map(|col| linalg::scale_vector(c, col)).collect(),
                    )?;
                    lhs = lhs.add(&scaled)?;
                }
            }
            let rhs = action[i]
                .compose(&action[j])?
                .sub(&action[j].compose(&action[i])?)?;
            if lhs != rhs {
                return Err(Error::Precondition(format!(
                    "action is not a Lie homomorphism into Der(q): fails on ({}, {})",
                    l.basis[i], l.basis[j]
                )));
            }
        }
    }
    let s = semidirect_unchecked(l, q, action)?;
    if let Some(f) = s.validate_jacobi().first() {
        return Err(Error::Internal(format!(
            "semidirect product violates Jacobi on {:?}",
            f.triple
        )));
    }
    Ok(s)
}

/// Hard-coded algebras used by tests, the acceptance suite and docs.
pub mod standard {
    use super::LieAlgebra;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    /// Two-dimensional abelian algebra.
    pub fn abelian2() -> LieAlgebra {
        LieAlgebra::new("abelian2", names(&["a1", "a2"])).unwrap()
    }

    /// Heisenberg algebra: `[e1, e2] = e3`.
    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::new("h3", names(&["e1", "e2", "e3"]))
            .unwrap()
            .with_bracket(0, 1, &[0, 0, 1])
    }

    /// `sl2` in the basis `(h, e, f)`.
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::new("sl2", names(&["h", "e", "f"]))
            .unwrap()
            .with_bracket(0, 1, &[0, 2, 0])
            .with_bracket(0, 2, &[0, 0, -2])
            .with_bracket(1, 2, &[1, 0, 0])
    }

    /// Affine line algebra: `[t, b] = b`.
    pub fn aff1() -> LieAlgebra {
        LieAlgebra::new("aff1", names(&["t", "b"]))
            .unwrap()
            .with_bracket(0, 1, &[0, 1])
    }

    /// `h3 ⊕ C`.
    pub fn heisenberg_plus_line() -> LieAlgebra {
        LieAlgebra::new("h3+c", names(&["e1", "e2", "e3", "c"]))
            .unwrap()
            .with_bracket(0, 1, &[0, 0, 1, 0])
    }

    /// Not a Lie algebra: `[e1,e2]=e1, [e2,e3]=e2, [e1,e3]=e3`.
    pub fn jacobi_violating() -> LieAlgebra {
        LieAlgebra::new("fake", names(&["e1", "e2", "e3"]))
            .unwrap()
            .with_bracket(0, 1, &[1, 0, 0])
            .with_bracket(1, 2, &[0, 1, 0])
            .with_bracket(0, 2, &[0, 0, 1])
    }

    /// The acceptance corpus of valid algebras.
    pub fn corpus() -> Vec<LieAlgebra> {
        vec![abelian2(), heisenberg(), sl2(), aff1(), heisenberg_plus_line()]
    }
}
