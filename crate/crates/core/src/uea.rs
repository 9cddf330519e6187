//! The universal enveloping algebra `U(g)` in the ordered PBW basis, with its
//! cocommutative Hopf structure.
//!
//! Elements are [`PbwPoly`]s: finite combinations of ordered monomials
//! `e_1^{a_1} ... e_n^{a_n}`, stored as exponent vectors. Products are
//! brought back to PBW form by straightening with the rewrite
//! `e_j e_i -> e_i e_j + [e_j, e_i]` (`j > i`). Each rewrite either lowers the
//! degree or keeps it and removes one inversion, so `(degree, inversions)`
//! decreases lexicographically and straightening terminates for any bracket
//! table, Jacobi or not.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{kernel_of_columns, Vector};
use crate::report::{codes, Failure};
use crate::scalar::Scalar;
use crate::series::MultiIndex;

/// Ordered PBW monomial, as an exponent vector over the algebra basis.
pub type PbwMonomial = MultiIndex;

/// Element of `U(g)` in the ordered PBW basis.
#[derive(Clone, PartialEq, Eq)]
pub struct PbwPoly {
    dim: usize,
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl PbwPoly {
    pub fn zero(dim: usize) -> Self {
        PbwPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(MultiIndex::zero(dim), Scalar::one())
    }

    pub fn monomial(mono: PbwMonomial, c: Scalar) -> Self {
        let mut p = Self::zero(mono.len());
        p.add_term(mono, c);
        p
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, i), Scalar::one())
    }

    /// Degree-one element `sum_i v_i e_i`.
    pub fn from_vector(v: &[Scalar]) -> Self {
        let mut p = Self::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            p.add_term(MultiIndex::unit(v.len(), i), c.clone());
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (PbwMonomial, Scalar)>) -> Self {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &PbwMonomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Highest monomial degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    pub fn add_term(&mut self, mono: PbwMonomial, c: Scalar) {
        debug_assert_eq!(mono.len(), self.dim);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, k: &Scalar, other: &PbwPoly) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), k * c);
        }
    }

    pub fn add(&self, other: &PbwPoly) -> PbwPoly {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn sub(&self, other: &PbwPoly) -> PbwPoly {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other);
        out
    }

    pub fn scale(&self, k: &Scalar) -> PbwPoly {
        let mut out = PbwPoly::zero(self.dim);
        out.add_scaled(k, self);
        out
    }

    /// Whether every term has degree exactly one.
    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 1)
    }

    /// Coefficients of the degree-one part.
    pub fn linear_part(&self) -> Vector {
        (0..self.dim)
            .map(|i| self.coefficient(&MultiIndex::unit(self.dim, i)))
            .collect()
    }

    /// Human-readable form over the given basis names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = render_monomial(m, names);
            let coeff = c.to_string();
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(rest) if c.is_real() => (true, rest.to_string()),
                _ => (false, coeff.clone()),
            };
            let mag = if c.is_real() { mag } else { format!("({coeff})") };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            match (mag.as_str(), mono.as_str()) {
                (m1, "1") => out.push_str(m1),
                ("1", mo) => out.push_str(mo),
                (m1, mo) => {
                    out.push_str(m1);
                    out.push(' ');
                    out.push_str(mo);
                }
            }
        }
        out
    }
}

impl fmt::Debug for PbwPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `e1^2 e3`, or `1` for the empty monomial.
pub fn render_monomial(m: &PbwMonomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Element of `U(g) ⊗ U(g)` in the tensor PBW basis.
pub type Tensor2 = BTreeMap<(PbwMonomial, PbwMonomial), Scalar>;
/// Element of `U(g)^{⊗3}`.
pub type Tensor3 = BTreeMap<(PbwMonomial, PbwMonomial, PbwMonomial), Scalar>;

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

type Cache<K> = Mutex<HashMap<K, Arc<PbwPoly>>>;

fn cached<K: std::hash::Hash + Eq + Clone>(
    cache: &Cache<K>,
    key: &K,
    compute: impl FnOnce() -> PbwPoly,
) -> Arc<PbwPoly> {
    if let Some(hit) = cache.lock().expect("cache lock").get(key) {
        return hit.clone();
    }
    // computed outside the lock; concurrent fills store equal values
    let value = Arc::new(compute());
    cache
        .lock()
        .expect("cache lock")
        .entry(key.clone())
        .or_insert(value)
        .clone()
}

/// `U(g)` for a fixed Lie algebra, with memoized straightening.
pub struct Enveloping {
    algebra: LieAlgebra,
    generator_products: Cache<(PbwMonomial, usize)>,
    monomial_products: Cache<(PbwMonomial, PbwMonomial)>,
    symmetrized: Cache<PbwMonomial>,
}

impl fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Enveloping({:?})", self.algebra)
    }
}

impl Enveloping {
    pub fn new(algebra: LieAlgebra) -> Self {
        Enveloping {
            algebra,
            generator_products: Mutex::default(),
            monomial_products: Mutex::default(),
            symmetrized: Mutex::default(),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn check(&self, p: &PbwPoly) -> Result<()> {
        if p.dim != self.dim() {
            return Err(Error::Shape(format!(
                "element of U of a {}-dimensional algebra used with a {}-dimensional one",
                p.dim,
                self.dim()
            )));
        }
        Ok(())
    }

    /// `e^mono * e_j` in PBW form.
    fn times_generator(&self, mono: &PbwMonomial, j: usize) -> Arc<PbwPoly> {
        let n = self.dim();
        let last = mono.exponents().iter().rposition(|&e| e > 0);
        match last {
            Some(k) if k > j => cached(&self.generator_products, &(mono.clone(), j), || {
                // e^mono = e^rest e_k, and e_k e_j = e_j e_k + [e_k, e_j]
                let rest = mono.with_decremented(k);
                let mut out = PbwPoly::zero(n);
                let left = self.times_generator(&rest, j);
                for (m, c) in &left.terms {
                    out.add_scaled(c, &self.times_generator(m, k));
                }
                let br = self.algebra.basis_bracket(k, j);
                for (l, c) in br.iter().enumerate() {
                    if !c.is_zero() {
                        out.add_scaled(c, &self.times_generator(&rest, l));
                    }
                }
                out
            }),
            _ => Arc::new(PbwPoly::monomial(mono.with_incremented(j), Scalar::one())),
        }
    }

    /// Product of two PBW monomials.
    pub fn multiply_monomials(&self, a: &PbwMonomial, b: &PbwMonomial) -> Arc<PbwPoly> {
        let first_b = b.exponents().iter().position(|&e| e > 0);
        let last_a = a.exponents().iter().rposition(|&e| e > 0);
        match (last_a, first_b) {
            (_, None) => Arc::new(PbwPoly::monomial(a.clone(), Scalar::one())),
            (None, _) => Arc::new(PbwPoly::monomial(b.clone(), Scalar::one())),
            (Some(la), Some(fb)) if la <= fb => Arc::new(PbwPoly::monomial(a.add(b), Scalar::one())),
            _ => cached(&self.monomial_products, &(a.clone(), b.clone()), || {
                let mut acc = PbwPoly::monomial(a.clone(), Scalar::one());
                for (j, &e) in b.exponents().iter().enumerate() {
                    for _ in 0..e {
                        let mut next = PbwPoly::zero(self.dim());
                        for (m, c) in &acc.terms {
                            next.add_scaled(c, &self.times_generator(m, j));
                        }
                        acc = next;
                    }
                }
                acc
            }),
        }
    }

    /// Exact product in `U(g)`, straightened to PBW form.
    pub fn multiply(&self, a: &PbwPoly, b: &PbwPoly) -> Result<PbwPoly> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.multiply_unchecked(a, b))
    }

    pub(crate) fn multiply_unchecked(&self, a: &PbwPoly, b: &PbwPoly) -> PbwPoly {
        let mut out = PbwPoly::zero(self.dim());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_scaled(&(ca * cb), &self.multiply_monomials(ma, mb));
            }
        }
        out
    }

    /// Product of generators `e_{w_1} e_{w_2} ...` in PBW form.
    pub fn word(&self, word: &[usize]) -> PbwPoly {
        let mut acc = PbwPoly::one(self.dim());
        for &j in word {
            let mut next = PbwPoly::zero(self.dim());
            for (m, c) in &acc.terms {
                next.add_scaled(c, &self.times_generator(m, j));
            }
            acc = next;
        }
        acc
    }

    /// `Δ` extended from `Δ(e_i) = e_i ⊗ 1 + 1 ⊗ e_i`; on a monomial,
    /// `Δ(e^a) = sum_{b <= a} binom(a, b) e^b ⊗ e^{a-b}`.
    pub fn coproduct(&self, a: &PbwPoly) -> Tensor2 {
        let mut out = Tensor2::new();
        for (m, c) in &a.terms {
            for (left, right, k) in monomial_coproduct(m) {
                accumulate(&mut out, (left, right), c * &Scalar::from_bigint(k));
            }
        }
        out
    }

    /// Coefficient of the empty monomial.
    pub fn counit(&self, a: &PbwPoly) -> Scalar {
        a.coefficient(&MultiIndex::zero(a.dim))
    }

    /// `S(e_i) = -e_i`, extended as an anti-homomorphism:
    /// `S(e^a) = (-1)^{|a|}` times the reversed word, re-straightened.
    pub fn antipode(&self, a: &PbwPoly) -> PbwPoly {
        let mut out = PbwPoly::zero(self.dim());
        for (m, c) in &a.terms {
            let mut word = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate().rev() {
                word.extend(std::iter::repeat_n(i, e as usize));
            }
            let sign = if m.degree() % 2 == 0 { c.clone() } else { -c };
            out.add_scaled(&sign, &self.word(&word));
        }
        out
    }

    /// The symmetrized monomial `s_a`: the average of all orderings of the
    /// word with content `a`. Its PBW expansion is `e^a` plus lower-degree
    /// terms, and `exp(sum_i x_i e_i) = sum_a x^a / a! * s_a`.
    pub fn symmetrized(&self, a: &PbwMonomial) -> Arc<PbwPoly> {
        if a.degree() <= 1 {
            return Arc::new(PbwPoly::monomial(a.clone(), Scalar::one()));
        }
        cached(&self.symmetrized, a, || {
            let mut words = Vec::new();
            distinct_words(&mut a.exponents().to_vec(), &mut Vec::new(), &mut words);
            let mut sum = PbwPoly::zero(self.dim());
            for w in &words {
                sum.add_scaled(&Scalar::one(), &self.word(w));
            }
            sum.scale(&Scalar::ratio(1, words.len() as i64))
        })
    }

    /// Coordinates of `p` in the symmetrized basis `{s_a}`, found by
    /// repeatedly cancelling the leading PBW term.
    pub fn symmetric_coordinates(&self, p: &PbwPoly) -> BTreeMap<PbwMonomial, Scalar> {
        let mut rest = p.clone();
        let mut coords = BTreeMap::new();
        while let Some((lead, c)) = rest.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let s = self.symmetrized(&lead);
            rest.add_scaled(&-c.clone(), &s);
            coords.insert(lead, c);
        }
        coords
    }

    /// Basis, in reduced echelon form over the PBW monomials of degree `<= n`,
    /// of `{p : Δ(p) = p ⊗ 1 + 1 ⊗ p}`.
    pub fn primitives_upto(&self, degree: usize) -> Result<Vec<PbwPoly>> {
        if degree == 0 {
            return Err(Error::Precondition("degree bound must be at least 1".into()));
        }
        let dim = self.dim();
        let monos = MultiIndex::up_to(dim, degree);
        let one = MultiIndex::zero(dim);
        let mut rows: BTreeMap<(PbwMonomial, PbwMonomial), usize> = BTreeMap::new();
        let mut sparse_columns = Vec::with_capacity(monos.len());
        for m in &monos {
            let p = PbwPoly::monomial(m.clone(), Scalar::one());
            let mut delta = self.coproduct(&p);
            accumulate(&mut delta, (m.clone(), one.clone()), -Scalar::one());
            accumulate(&mut delta, (one.clone(), m.clone()), -Scalar::one());
            for key in delta.keys() {
                let next = rows.len();
                rows.entry(key.clone()).or_insert(next);
            }
            sparse_columns.push(delta);
        }
        let columns: Vec<Vector> = sparse_columns
            .iter()
            .map(|delta| {
                let mut col = vec![Scalar::zero(); rows.len()];
                for (k, c) in delta {
                    col[rows[k]] = c.clone();
                }
                col
            })
            .collect();
        let kernel = kernel_of_columns(&columns, rows.len());
        Ok(kernel
            .into_iter()
            .map(|v| PbwPoly::from_terms(dim, monos.iter().cloned().zip(v)))
            .collect())
    }

    /// Checks the Hopf algebra axioms on all PBW monomials of degree `<= n`
    /// (pairs and triples of total degree `<= n` for the binary laws).
    pub fn hopf_axiom_check(&self, degree: usize) -> Result<Vec<Failure>> {
        if degree == 0 {
            return Err(Error::Precondition("degree bound must be at least 1".into()));
        }
        let dim = self.dim();
        let names = self.algebra.basis_names();
        let monos = MultiIndex::up_to(dim, degree);
        let one = PbwPoly::one(dim);
        let mut failures = Vec::new();
        let label = |m: &PbwMonomial| render_monomial(m, names);

        for m in &monos {
            let p = PbwPoly::monomial(m.clone(), Scalar::one());
            let delta = self.coproduct(&p);

            // (Δ ⊗ id)Δ = (id ⊗ Δ)Δ
            let mut left = Tensor3::new();
            let mut right = Tensor3::new();
            for ((a, b), c) in &delta {
                for ((a1, a2), k) in self.coproduct(&PbwPoly::monomial(a.clone(), Scalar::one())) {
                    accumulate(&mut left, (a1, a2, b.clone()), c * &k);
                }
                for ((b1, b2), k) in self.coproduct(&PbwPoly::monomial(b.clone(), Scalar::one())) {
                    accumulate(&mut right, (a.clone(), b1, b2), c * &k);
                }
            }
            if left != right {
                failures.push(Failure::new(
                    codes::HOPF_COASSOCIATIVITY,
                    format!("coassociativity fails on {}", label(m)),
                    json!({ "monomial": m.exponents() }),
                ));
            }

            // (ε ⊗ id)Δ = id = (id ⊗ ε)Δ
            let mut left = PbwPoly::zero(dim);
            let mut right = PbwPoly::zero(dim);
            for ((a, b), c) in &delta {
                if a.is_constant() {
                    left.add_term(b.clone(), c.clone());
                }
                if b.is_constant() {
                    right.add_term(a.clone(), c.clone());
                }
            }
            if left != p || right != p {
                failures.push(Failure::new(
                    codes::HOPF_COUNIT,
                    format!("counit law fails on {}", label(m)),
                    json!({ "monomial": m.exponents() }),
                ));
            }

            // m(S ⊗ id)Δ = ηε = m(id ⊗ S)Δ
            let unit_counit = one.scale(&self.counit(&p));
            let mut left = PbwPoly::zero(dim);
            let mut right = PbwPoly::zero(dim);
            for ((a, b), c) in &delta {
                let pa = PbwPoly::monomial(a.clone(), c.clone());
                let pb = PbwPoly::monomial(b.clone(), Scalar::one());
                left.add_scaled(&Scalar::one(), &self.multiply_unchecked(&self.antipode(&pa), &pb));
                right.add_scaled(&Scalar::one(), &self.multiply_unchecked(&pa, &self.antipode(&pb)));
            }
            if left != unit_counit || right != unit_counit {
                failures.push(Failure::new(
                    codes::HOPF_ANTIPODE,
                    format!("antipode law fails on {}", label(m)),
                    json!({ "monomial": m.exponents() }),
                ));
            }

            // 1 m = m = m 1
            if self.multiply_unchecked(&one, &p) != p || self.multiply_unchecked(&p, &one) != p {
                failures.push(Failure::new(
                    codes::HOPF_UNIT,
                    format!("unit law fails on {}", label(m)),
                    json!({ "monomial": m.exponents() }),
                ));
            }
        }

        let nonconstant: Vec<&PbwMonomial> = monos.iter().filter(|m| !m.is_constant()).collect();
        for a in &nonconstant {
            for b in &nonconstant {
                if a.degree() + b.degree() > degree {
                    continue;
                }
                let pa = PbwPoly::monomial((*a).clone(), Scalar::one());
                let pb = PbwPoly::monomial((*b).clone(), Scalar::one());
                let ab = self.multiply_unchecked(&pa, &pb);
                let lhs = self.coproduct(&ab);
                let rhs = self.tensor_multiply(&self.coproduct(&pa), &self.coproduct(&pb));
                if lhs != rhs || self.counit(&ab) != &self.counit(&pa) * &self.counit(&pb) {
                    failures.push(Failure::new(
                        codes::HOPF_COMPATIBILITY,
                        format!("Δ(ab) ≠ Δ(a)Δ(b) for a = {}, b = {}", label(a), label(b)),
                        json!({ "a": a.exponents(), "b": b.exponents() }),
                    ));
                }
                for c in &nonconstant {
                    if a.degree() + b.degree() + c.degree() > degree {
                        continue;
                    }
                    let pc = PbwPoly::monomial((*c).clone(), Scalar::one());
                    let left = self.multiply_unchecked(&ab, &pc);
                    let right = self.multiply_unchecked(&pa, &self.multiply_unchecked(&pb, &pc));
                    if left != right {
                        failures.push(Failure::new(
                            codes::HOPF_ASSOCIATIVITY,
                            format!(
                                "(ab)c ≠ a(bc) for a = {}, b = {}, c = {}",
                                label(a),
                                label(b),
                                label(c)
                            ),
                            json!({ "a": a.exponents(), "b": b.exponents(), "c": c.exponents() }),
                        ));
                    }
                }
            }
        }
        Ok(failures)
    }

    /// Product in `U ⊗ U`: `(a1 ⊗ a2)(b1 ⊗ b2) = a1 b1 ⊗ a2 b2`.
    pub fn tensor_multiply(&self, x: &Tensor2, y: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::new();
        for ((a1, a2), ca) in x {
            for ((b1, b2), cb) in y {
                let left = self.multiply_monomials(a1, b1);
                let right = self.multiply_monomials(a2, b2);
                let k = ca * cb;
                for (l, cl) in &left.terms {
                    let kl = &k * cl;
                    for (r, cr) in &right.terms {
                        accumulate(&mut out, (l.clone(), r.clone()), &kl * cr);
                    }
                }
            }
        }
        out
    }

    /// Finite slice of the Hopf structure on monomials of degree `<= n`.
    /// Products with terms above degree `n` keep the low part and are flagged.
    pub fn export_hopf_table(&self, degree: usize) -> Result<HopfTable> {
        if degree == 0 {
            return Err(Error::Precondition("degree bound must be at least 1".into()));
        }
        let dim = self.dim();
        let monos = MultiIndex::up_to(dim, degree);
        let index: HashMap<&PbwMonomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let labels = monos
            .iter()
            .map(|m| render_monomial(m, self.algebra.basis_names()))
            .collect();
        let mut mult = Vec::with_capacity(monos.len());
        for a in &monos {
            let mut row = Vec::with_capacity(monos.len());
            for b in &monos {
                let prod = self.multiply_monomials(a, b);
                let mut value = vec![Scalar::zero(); monos.len()];
                let mut truncated = false;
                for (m, c) in &prod.terms {
                    match index.get(m) {
                        Some(&k) => value[k] = c.clone(),
                        None => truncated = true,
                    }
                }
                row.push(TableProduct { value, truncated });
            }
            mult.push(row);
        }
        let comult = monos
            .iter()
            .map(|m| {
                monomial_coproduct(m)
                    .into_iter()
                    .map(|(l, r, k)| (index[&l], index[&r], Scalar::from_bigint(k)))
                    .collect()
            })
            .collect();
        let mut counit = vec![Scalar::zero(); monos.len()];
        counit[0] = Scalar::one();
        Ok(HopfTable {
            labels,
            unit: 0,
            mult,
            comult,
            counit,
        })
    }
}

/// Terms `(e^b, e^{a-b}, binom(a, b))` of `Δ(e^a)`.
fn monomial_coproduct(a: &PbwMonomial) -> Vec<(PbwMonomial, PbwMonomial, BigInt)> {
    let mut out = Vec::new();
    fn rec(
        a: &[u32],
        i: usize,
        left: &mut Vec<u32>,
        k: BigInt,
        out: &mut Vec<(PbwMonomial, PbwMonomial, BigInt)>,
    ) {
        if i == a.len() {
            let right: Vec<u32> = a.iter().zip(left.iter()).map(|(x, y)| x - y).collect();
            out.push((MultiIndex::new(left.clone()), MultiIndex::new(right), k));
            return;
        }
        for b in 0..=a[i] {
            left.push(b);
            rec(a, i + 1, left, &k * binomial(a[i], b), out);
            left.pop();
        }
    }
    rec(a.exponents(), 0, &mut Vec::new(), BigInt::one(), &mut out);
    out
}

fn distinct_words(remaining: &mut [u32], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if remaining.iter().all(|&e| e == 0) {
        out.push(prefix.clone());
        return;
    }
    for i in 0..remaining.len() {
        if remaining[i] > 0 {
            remaining[i] -= 1;
            prefix.push(i);
            distinct_words(remaining, prefix, out);
            prefix.pop();
            remaining[i] += 1;
        }
    }
}

/// One entry of the multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableProduct {
    pub value: Vector,
    /// Terms above the degree bound were dropped.
    pub truncated: bool,
}

/// Structure tables of a finite-dimensional slice of a Hopf algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfTable {
    pub labels: Vec<String>,
    /// Index of the unit element.
    pub unit: usize,
    /// `mult[i][j]` is the product of basis elements `i` and `j`.
    pub mult: Vec<Vec<TableProduct>>,
    /// `comult[i]` lists `(j, k, c)` with `Δ(b_i) = sum c b_j ⊗ b_k`.
    pub comult: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Vector,
}

impl HopfTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// Kernel of `p -> Δ(p) - p ⊗ 1 - 1 ⊗ p`, read off the comultiplication table.
pub fn prim_of_table(t: &HopfTable) -> Result<Vec<Vector>> {
    let n = t.dim();
    if t.comult.len() != n || t.counit.len() != n || (n > 0 && t.unit >= n) {
        return Err(Error::Shape("Hopf table dimensions are inconsistent".into()));
    }
    if t.comult.iter().flatten().any(|&(j, k, _)| j >= n || k >= n) {
        return Err(Error::Shape("comultiplication refers to a missing basis element".into()));
    }
    let mut columns = Vec::with_capacity(n);
    for (i, terms) in t.comult.iter().enumerate() {
        let mut col = vec![Scalar::zero(); n * n];
        for (j, k, c) in terms {
            col[j * n + k] += c;
        }
        col[i * n + t.unit] -= &Scalar::one();
        col[t.unit * n + i] -= &Scalar::one();
        columns.push(col);
    }
    Ok(kernel_of_columns(&columns, n * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::standard::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> PbwMonomial {
        MultiIndex::new(e.to_vec())
    }

    fn poly(dim: usize, terms: &[(&[u32], Scalar)]) -> PbwPoly {
        PbwPoly::from_terms(dim, terms.iter().map(|(m, c)| (mono(m), c.clone())))
    }

    fn int(k: i64) -> Scalar {
        Scalar::from_integer(k)
    }

    #[test]
    fn straightening_examples() {
        let u = Enveloping::new(heisenberg());
        let e1 = PbwPoly::generator(3, 0);
        let e2 = PbwPoly::generator(3, 1);
        assert_eq!(
            u.multiply(&e2, &e1).unwrap(),
            poly(3, &[(&[1, 1, 0], int(1)), (&[0, 0, 1], int(-1))])
        );
        let a = poly(3, &[(&[2, 0, 1], int(3)), (&[0, 1, 0], Scalar::ratio(1, 2))]);
        assert_eq!(u.multiply(&PbwPoly::one(3), &a).unwrap(), a);

        // sl2 in order (h, e, f): e h = h e - 2 e
        let s = Enveloping::new(sl2());
        let h = PbwPoly::generator(3, 0);
        let e = PbwPoly::generator(3, 1);
        assert_eq!(
            s.multiply(&e, &h).unwrap(),
            poly(3, &[(&[1, 1, 0], int(1)), (&[0, 1, 0], int(-2))])
        );
        assert!(s.multiply(&e, &PbwPoly::generator(2, 0)).is_err());
    }

    #[test]
    fn coproduct_examples() {
        let u = Enveloping::new(heisenberg());
        let d = u.coproduct(&PbwPoly::generator(3, 0));
        let want: Tensor2 = [
            ((mono(&[1, 0, 0]), mono(&[0, 0, 0])), int(1)),
            ((mono(&[0, 0, 0]), mono(&[1, 0, 0])), int(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, want);

        let d = u.coproduct(&poly(3, &[(&[2, 0, 0], int(1))]));
        assert_eq!(d.len(), 3);
        assert_eq!(d[&(mono(&[1, 0, 0]), mono(&[1, 0, 0]))], int(2));
        assert_eq!(d[&(mono(&[2, 0, 0]), mono(&[0, 0, 0]))], int(1));

        let d = u.coproduct(&poly(3, &[(&[1, 1, 0], int(1))]));
        assert_eq!(d.len(), 4);
        assert_eq!(d[&(mono(&[1, 0, 0]), mono(&[0, 1, 0]))], int(1));
        assert_eq!(d[&(mono(&[0, 1, 0]), mono(&[1, 0, 0]))], int(1));
    }

    #[test]
    fn counit_and_antipode_examples() {
        let u = Enveloping::new(heisenberg());
        assert_eq!(u.counit(&PbwPoly::one(3)), int(1));
        assert_eq!(u.counit(&PbwPoly::generator(3, 0)), int(0));
        let x = poly(3, &[(&[0, 0, 0], int(3)), (&[1, 1, 0], int(2))]);
        assert_eq!(u.counit(&x), int(3));

        assert_eq!(u.antipode(&PbwPoly::generator(3, 0)), PbwPoly::generator(3, 0).scale(&int(-1)));
        assert_eq!(
            u.antipode(&poly(3, &[(&[1, 1, 0], int(1))])),
            poly(3, &[(&[1, 1, 0], int(1)), (&[0, 0, 1], int(-1))])
        );
        assert_eq!(u.antipode(&PbwPoly::one(3)), PbwPoly::one(3));
    }

    #[test]
    fn primitive_examples() {
        let ab1 = LieAlgebra::abelian("ab1", 1);
        let prims = Enveloping::new(ab1).primitives_upto(3).unwrap();
        assert_eq!(prims, vec![PbwPoly::generator(1, 0)]);

        let prims = Enveloping::new(sl2()).primitives_upto(3).unwrap();
        assert_eq!(prims, (0..3).map(|i| PbwPoly::generator(3, i)).collect::<Vec<_>>());

        let prims = Enveloping::new(heisenberg()).primitives_upto(1).unwrap();
        assert_eq!(prims.len(), 3);
        assert!(Enveloping::new(heisenberg()).primitives_upto(0).is_err());
    }

    #[test]
    fn hopf_axioms_hold_and_detect_corruption() {
        assert!(Enveloping::new(heisenberg()).hopf_axiom_check(3).unwrap().is_empty());
        assert!(Enveloping::new(sl2()).hopf_axiom_check(2).unwrap().is_empty());
        let bad = Enveloping::new(jacobi_violating()).hopf_axiom_check(3).unwrap();
        assert!(!bad.is_empty());
        assert!(bad.iter().any(|f| f.code == codes::HOPF_ASSOCIATIVITY));
    }

    #[test]
    fn hopf_table_examples() {
        let t = Enveloping::new(LieAlgebra::abelian("ab1", 1)).export_hopf_table(2).unwrap();
        assert_eq!(t.labels, vec!["1", "a1", "a1^2"]);
        // Δ(a1^2) = a1^2 ⊗ 1 + 2 a1 ⊗ a1 + 1 ⊗ a1^2
        assert_eq!(t.comult[2], vec![(0, 2, int(1)), (1, 1, int(2)), (2, 0, int(1))]);
        assert!(t.mult[1][2].truncated);
        assert_eq!(t.mult[1][1].value, vec![int(0), int(0), int(1)]);

        let t = Enveloping::new(heisenberg()).export_hopf_table(1).unwrap();
        assert_eq!(t.dim(), 4);
        // e2 e1 = e1 e2 - e3: e1 e2 dropped, -e3 kept
        let e2e1 = &t.mult[2][1];
        assert!(e2e1.truncated);
        assert_eq!(e2e1.value, vec![int(0), int(0), int(0), int(-1)]);
        let e1e2 = &t.mult[1][2];
        assert!(e1e2.truncated);
        assert_eq!(e1e2.value, vec![int(0); 4]);
        assert_eq!(t.counit, vec![int(1), int(0), int(0), int(0)]);

        let t = Enveloping::new(sl2()).export_hopf_table(3).unwrap();
        assert_eq!(prim_of_table(&t).unwrap().len(), 3);
    }

    #[test]
    fn prim_of_small_tables() {
        let trivial = HopfTable {
            labels: vec!["1".into()],
            unit: 0,
            mult: vec![vec![TableProduct { value: vec![int(1)], truncated: false }]],
            comult: vec![vec![(0, 0, int(1))]],
            counit: vec![int(1)],
        };
        assert!(prim_of_table(&trivial).unwrap().is_empty());

        // grouplike g with Δg = g ⊗ g
        let grouplike = HopfTable {
            labels: vec!["1".into(), "g".into()],
            unit: 0,
            mult: vec![],
            comult: vec![vec![(0, 0, int(1))], vec![(1, 1, int(1))]],
            counit: vec![int(1), int(1)],
        };
        assert!(prim_of_table(&grouplike).unwrap().is_empty());

        let broken = HopfTable { counit: vec![], ..grouplike };
        assert!(prim_of_table(&broken).is_err());
    }

    #[test]
    fn symmetric_coordinates_h3() {
        let u = Enveloping::new(heisenberg());
        // e1 e2 = s_(1,1,0) + 1/2 e3
        let coords = u.symmetric_coordinates(&poly(3, &[(&[1, 1, 0], int(1))]));
        assert_eq!(coords[&mono(&[1, 1, 0])], int(1));
        assert_eq!(coords[&mono(&[0, 0, 1])], Scalar::ratio(1, 2));
        assert_eq!(coords.len(), 2);
    }

    fn arb_monomial(dim: usize, max: usize) -> impl Strategy<Value = PbwMonomial> {
        let all = MultiIndex::up_to(dim, max);
        (0..all.len()).prop_map(move |i| all[i].clone())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiplication_is_associative(
            which in 0usize..5,
            a in arb_monomial(4, 2),
            b in arb_monomial(4, 1),
            c in arb_monomial(4, 1),
        ) {
            let g = corpus()[which].clone();
            let n = g.dim();
            let cut = |m: &PbwMonomial| MultiIndex::new(m.exponents()[..n].to_vec());
            let u = Enveloping::new(g);
            let (pa, pb, pc) = (
                PbwPoly::monomial(cut(&a), int(1)),
                PbwPoly::monomial(cut(&b), int(1)),
                PbwPoly::monomial(cut(&c), int(1)),
            );
            let left = u.multiply(&u.multiply(&pa, &pb).unwrap(), &pc).unwrap();
            let right = u.multiply(&pa, &u.multiply(&pb, &pc).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn cocommutative_and_involutive(which in 0usize..5, a in arb_monomial(4, 3)) {
            let g = corpus()[which].clone();
            let n = g.dim();
            let u = Enveloping::new(g);
            let p = PbwPoly::monomial(MultiIndex::new(a.exponents()[..n].to_vec()), int(1));
            let d = u.coproduct(&p);
            let swapped: Tensor2 = d.iter().map(|((x, y), c)| ((y.clone(), x.clone()), c.clone())).collect();
            prop_assert_eq!(&d, &swapped);
            prop_assert_eq!(u.antipode(&u.antipode(&p)), p);
        }
    }

    #[test]
    fn primitives_are_generators_for_corpus() {
        for g in corpus() {
            let n = g.dim();
            let u = Enveloping::new(g);
            for degree in 1..=4 {
                let prims = u.primitives_upto(degree).unwrap();
                let want: Vec<_> = (0..n).map(|i| PbwPoly::generator(n, i)).collect();
                assert_eq!(prims, want);
            }
        }
    }
}
