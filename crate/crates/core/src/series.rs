//! Multi-indices and truncated multivariate power series over [`Scalar`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector. Ordered graded-lexicographically: lower total degree
/// first, then larger leading exponents first (`x1^2 < x1 x2 < x2^2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `alpha! = prod_i alpha_i!`.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &e in &self.0 {
            for k in 2..=e {
                acc *= k;
            }
        }
        acc
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn with_incremented(&self, i: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] += 1;
        MultiIndex(e)
    }

    pub fn with_decremented(&self, i: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] -= 1;
        MultiIndex(e)
    }

    /// Concatenation, used to split a `2n`-variable index into `(x, y)` halves
    /// and back.
    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        MultiIndex(e)
    }

    pub fn split_at(&self, mid: usize) -> (MultiIndex, MultiIndex) {
        (
            MultiIndex(self.0[..mid].to_vec()),
            MultiIndex(self.0[mid..].to_vec()),
        )
    }

    /// Every index in `len` variables of total degree exactly `degree`,
    /// in graded-lex order.
    pub fn of_degree(len: usize, degree: usize) -> Vec<MultiIndex> {
        fn rec(len: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == len {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(len, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if len == 0 {
            if degree == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(len, degree as u32, &mut Vec::with_capacity(len), &mut out);
        out
    }

    /// Every index with total degree `<= degree`, in graded-lex order.
    pub fn up_to(len: usize, degree: usize) -> Vec<MultiIndex> {
        (0..=degree).flat_map(|d| Self::of_degree(len, d)).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A power series in `num_vars` commuting variables, known up to and
/// including total degree `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    num_vars: usize,
    order: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl TruncSeries {
    pub fn zero(num_vars: usize, order: usize) -> Self {
        TruncSeries {
            num_vars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, order: usize, c: Scalar) -> Self {
        let mut s = Self::zero(num_vars, order);
        s.add_term(MultiIndex::zero(num_vars), c);
        s
    }

    pub fn one(num_vars: usize, order: usize) -> Self {
        Self::constant(num_vars, order, Scalar::one())
    }

    /// The coordinate function `x_i` (zero when `order == 0`).
    pub fn variable(num_vars: usize, order: usize, i: usize) -> Self {
        let mut s = Self::zero(num_vars, order);
        s.add_term(MultiIndex::unit(num_vars, i), Scalar::one());
        s
    }

    /// Builds a series from raw terms, dropping zeros and everything above
    /// `order`.
    pub fn from_terms<I>(num_vars: usize, order: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        let mut s = Self::zero(num_vars, order);
        for (idx, c) in terms {
            if idx.len() != num_vars {
                return Err(Error::Shape(format!(
                    "index {:?} has {} variables, series has {}",
                    idx,
                    idx.len(),
                    num_vars
                )));
            }
            s.add_term(idx, c);
        }
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
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

    /// Adds `c * x^idx`, silently ignoring indices above the order.
    pub fn add_term(&mut self, idx: MultiIndex, c: Scalar) {
        if c.is_zero() || idx.degree() > self.order {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &TruncSeries) -> Result<()> {
        if self.num_vars != other.num_vars || self.order != other.order {
            return Err(Error::Shape(format!(
                "series shapes differ: {} vars / order {} vs {} vars / order {}",
                self.num_vars, self.order, other.num_vars, other.order
            )));
        }
        Ok(())
    }

    /// Coefficient of `x^idx`. Asking beyond the truncation order is an
    /// error because the true coefficient is unknown, not zero.
    pub fn coefficient(&self, idx: &MultiIndex) -> Result<Scalar> {
        if idx.len() != self.num_vars {
            return Err(Error::Shape(format!(
                "index has {} variables, series has {}",
                idx.len(),
                self.num_vars
            )));
        }
        if idx.degree() > self.order {
            return Err(Error::OutOfTruncation {
                degree: idx.degree(),
                order: self.order,
            });
        }
        Ok(self.terms.get(idx).cloned().unwrap_or_else(Scalar::zero))
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&MultiIndex::zero(self.num_vars))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Scalar) -> TruncSeries {
        let mut out = Self::zero(self.num_vars, self.order);
        if k.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(idx, c)| (idx.clone(), c * k))
            .collect();
        out
    }

    pub fn neg(&self) -> TruncSeries {
        self.scale(&-Scalar::one())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.num_vars, self.order);
        for (a, ca) in &self.terms {
            let da = a.degree();
            for (b, cb) in &other.terms {
                if da + b.degree() > self.order {
                    continue;
                }
                out.add_term(a.add(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// Replaces variable `i` by `images[i]`. Every image must vanish at the
    /// origin so the result is determined up to the common order.
    pub fn substitute(&self, images: &[TruncSeries]) -> Result<TruncSeries> {
        if images.len() != self.num_vars {
            return Err(Error::Substitution(format!(
                "{} images supplied for {} variables",
                images.len(),
                self.num_vars
            )));
        }
        let (target_vars, target_order) = match images.first() {
            Some(first) => (first.num_vars, first.order),
            None => (0, self.order),
        };
        for (i, img) in images.iter().enumerate() {
            if img.num_vars != target_vars || img.order != target_order {
                return Err(Error::Shape(format!(
                    "substitution image {i} has shape ({}, {}), expected ({target_vars}, {target_order})",
                    img.num_vars, img.order
                )));
            }
            if !img.constant_term().is_zero() {
                return Err(Error::Substitution(format!(
                    "image {i} has nonzero constant term {}",
                    img.constant_term()
                )));
            }
        }
        if target_order != self.order {
            return Err(Error::Shape(format!(
                "cannot substitute order-{target_order} images into an order-{} series",
                self.order
            )));
        }
        let order = self.order;
        // powers[i][k] = images[i]^k
        let mut powers: Vec<Vec<TruncSeries>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let max_exp = self
                .terms
                .keys()
                .map(|idx| idx.exponents()[i])
                .max()
                .unwrap_or(0) as usize;
            let mut p = vec![TruncSeries::one(target_vars, order)];
            for k in 1..=max_exp {
                let next = p[k - 1].mul(img)?;
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = Self::zero(target_vars, order);
        for (idx, c) in &self.terms {
            let mut acc = TruncSeries::constant(target_vars, order, c.clone());
            for (i, &e) in idx.exponents().iter().enumerate() {
                if e > 0 {
                    acc = acc.mul(&powers[i][e as usize])?;
                    if acc.is_zero() {
                        break;
                    }
                }
            }
            for (k, v) in acc.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// Re-expresses the series in a larger variable set: variable `i` becomes
    /// variable `mapping[i]` of a `num_vars`-variable series.
    pub fn remap(&self, num_vars: usize, mapping: &[usize]) -> Result<TruncSeries> {
        if mapping.len() != self.num_vars || mapping.iter().any(|&m| m >= num_vars) {
            return Err(Error::Shape("invalid variable mapping".into()));
        }
        let mut out = Self::zero(num_vars, self.order);
        for (idx, c) in &self.terms {
            let mut e = vec![0u32; num_vars];
            for (i, &x) in idx.exponents().iter().enumerate() {
                e[mapping[i]] += x;
            }
            out.add_term(MultiIndex::new(e), c.clone());
        }
        Ok(out)
    }

    /// Explicitly lowers the truncation order.
    pub fn truncate(&self, order: usize) -> Result<TruncSeries> {
        if order > self.order {
            return Err(Error::Shape(format!(
                "cannot raise truncation order from {} to {order}",
                self.order
            )));
        }
        let mut out = Self::zero(self.num_vars, order);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    /// Terms of exactly the given total degree.
    pub fn homogeneous_part(&self, degree: usize) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter().filter(move |(idx, _)| idx.degree() == degree)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries(vars={}, order={}, ", self.num_vars, self.order)?;
        f.debug_map().entries(self.terms.iter()).finish()?;
        write!(f, ")")
    }
}
