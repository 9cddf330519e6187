//! Independent route to the group law: `log(exp X exp Y)` computed inside
//! `U(g)` with polynomial coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fgl::GroupLaw;
use crate::liealg::LieAlgebra;
use crate::scalar::Scalar;
use crate::series::{MultiIndex, TruncSeries};
use crate::uea::{Enveloping, PbwPoly};

/// Element of `U(g)[[t_1..t_m]]` truncated at total `t`-degree `order`,
/// stored as `t`-monomial -> PBW polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UeaSeries {
    dim: usize,
    num_vars: usize,
    order: usize,
    terms: BTreeMap<MultiIndex, PbwPoly>,
}

impl UeaSeries {
    pub fn zero(dim: usize, num_vars: usize, order: usize) -> Self {
        UeaSeries {
            dim,
            num_vars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, num_vars: usize, order: usize) -> Self {
        let mut s = Self::zero(dim, num_vars, order);
        s.add_term(MultiIndex::zero(num_vars), PbwPoly::one(dim));
        s
    }

    /// `sum_i t_{offset+i} e_i`.
    pub fn generic_element(dim: usize, num_vars: usize, order: usize, offset: usize) -> Self {
        let mut s = Self::zero(dim, num_vars, order);
        for i in 0..dim {
            s.add_term(MultiIndex::unit(num_vars, offset + i), PbwPoly::generator(dim, i));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &PbwPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, idx: MultiIndex, p: PbwPoly) {
        if idx.degree() > self.order || p.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(p);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(&Scalar::one(), &p);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Constant `t`-coefficient.
    pub fn constant_term(&self) -> PbwPoly {
        self.terms
            .get(&MultiIndex::zero(self.num_vars))
            .cloned()
            .unwrap_or_else(|| PbwPoly::zero(self.dim))
    }

    fn check_compatible(&self, other: &UeaSeries) -> Result<()> {
        if (self.dim, self.num_vars, self.order) != (other.dim, other.num_vars, other.order) {
            return Err(Error::Shape("UEA series shapes differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &UeaSeries) -> Result<UeaSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &UeaSeries) -> Result<UeaSeries> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, k: &Scalar) -> UeaSeries {
        let mut out = Self::zero(self.dim, self.num_vars, self.order);
        if k.is_zero() {
            return out;
        }
        for (idx, p) in &self.terms {
            out.terms.insert(idx.clone(), p.scale(k));
        }
        out
    }

    /// Product in `U(g)`; the `t` variables are central.
    pub fn mul(&self, other: &UeaSeries, u: &Enveloping) -> Result<UeaSeries> {
        self.check_compatible(other)?;
        if u.dim() != self.dim {
            return Err(Error::Shape("enveloping algebra dimension differs from series".into()));
        }
        let mut acc: BTreeMap<MultiIndex, PbwPoly> = BTreeMap::new();
        for (a, p) in &self.terms {
            // keys are graded, so the admissible b form a prefix
            let room = self.order - a.degree();
            for (b, q) in other.terms.iter().take_while(|(b, _)| b.degree() <= room) {
                let prod = u.multiply_unchecked(p, q);
                acc.entry(a.add(b))
                    .or_insert_with(|| PbwPoly::zero(self.dim))
                    .add_scaled(&Scalar::one(), &prod);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(UeaSeries {
            dim: self.dim,
            num_vars: self.num_vars,
            order: self.order,
            terms: acc,
        })
    }
}

/// `exp(v) = sum_{k <= order} v^k / k!`; `v` must have zero constant term.
pub fn uea_exp(v: &UeaSeries, u: &Enveloping) -> Result<UeaSeries> {
    if !v.constant_term().is_zero() {
        return Err(Error::Precondition("exp needs a series with zero constant term".into()));
    }
    let mut sum = UeaSeries::one(v.dim, v.num_vars, v.order);
    let mut power = sum.clone();
    for k in 1..=v.order {
        power = power.mul(v, u)?.scale(&Scalar::ratio(1, k as i64));
        if power.is_zero() {
            break;
        }
        sum = sum.add(&power)?;
    }
    Ok(sum)
}

/// `log(w) = sum_{k >= 1} (-1)^(k+1) (w - 1)^k / k`; the constant term of `w`
/// must be exactly `1`.
pub fn uea_log(w: &UeaSeries, u: &Enveloping) -> Result<UeaSeries> {
    if w.constant_term() != PbwPoly::one(w.dim) {
        return Err(Error::Precondition("log needs a series with constant term 1".into()));
    }
    let x = w.sub(&UeaSeries::one(w.dim, w.num_vars, w.order))?;
    let mut sum = UeaSeries::zero(w.dim, w.num_vars, w.order);
    let mut power = x.clone();
    for k in 1..=w.order {
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        sum = sum.add(&power.scale(&Scalar::ratio(sign, k as i64)))?;
        power = power.mul(&x, u)?;
    }
    Ok(sum)
}

/// `F(x, y) = log(exp(sum x_i e_i) exp(sum y_i e_i))`, read off in the basis
/// `e_i`. Every coefficient must be primitive (a Lie element); anything else
/// is an internal inconsistency.
pub fn bch_group_law(g: &LieAlgebra, order: usize) -> Result<GroupLaw> {
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
    let u = Enveloping::new(g.clone());
    let x = UeaSeries::generic_element(n, 2 * n, order, 0);
    let y = UeaSeries::generic_element(n, 2 * n, order, n);
    let z = uea_log(&uea_exp(&x, &u)?.mul(&uea_exp(&y, &u)?, &u)?, &u)?;
    let mut components = vec![TruncSeries::zero(2 * n, order); n];
    for (idx, p) in z.terms() {
        if !p.is_linear() {
            return Err(Error::Internal(format!(
                "coefficient of t^{idx:?} in log(exp X exp Y) is not a Lie element"
            )));
        }
        for (k, c) in p.linear_part().into_iter().enumerate() {
            components[k].add_term(idx.clone(), c);
        }
    }
    GroupLaw::new(g.name(), g.basis_names().to_vec(), order, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::group_law_from_uea;
    use crate::liealg::standard::*;
    use crate::uea::PbwMonomial;

    fn mono(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn exp_of_generic_element_in_h3() {
        // exp(x1 e1 + x2 e2) at t-degree 2 holds x1 x2 (e1 e2 - 1/2 e3)
        let g = heisenberg();
        let u = Enveloping::new(g);
        let mut v = UeaSeries::zero(3, 2, 2);
        v.add_term(mono(&[1, 0]), PbwPoly::generator(3, 0));
        v.add_term(mono(&[0, 1]), PbwPoly::generator(3, 1));
        let e = uea_exp(&v, &u).unwrap();
        let coeff = e.terms().find(|(k, _)| **k == mono(&[1, 1])).unwrap().1.clone();
        let expected = PbwPoly::from_terms(
            3,
            [
                (PbwMonomial::new(vec![1, 1, 0]), Scalar::one()),
                (PbwMonomial::new(vec![0, 0, 1]), Scalar::ratio(-1, 2)),
            ],
        );
        assert_eq!(coeff, expected);
    }

    #[test]
    fn log_inverts_exp() {
        let u = Enveloping::new(sl2());
        let v = UeaSeries::generic_element(3, 3, 4, 0);
        assert_eq!(uea_log(&uea_exp(&v, &u).unwrap(), &u).unwrap(), v);
    }

    #[test]
    fn preconditions() {
        let u = Enveloping::new(abelian2());
        let one = UeaSeries::one(2, 1, 3);
        assert!(matches!(uea_exp(&one, &u), Err(Error::Precondition(_))));
        let zero = UeaSeries::zero(2, 1, 3);
        assert!(matches!(uea_log(&zero, &u), Err(Error::Precondition(_))));
    }

    #[test]
    fn heisenberg_bch() {
        let f = bch_group_law(&heisenberg(), 3).unwrap();
        assert_eq!(f.coefficient(2, &[1, 0, 0], &[0, 1, 0]).unwrap(), Scalar::ratio(1, 2));
        assert_eq!(f.coefficient(2, &[0, 1, 0], &[1, 0, 0]).unwrap(), Scalar::ratio(-1, 2));
        assert_eq!(f.component(2).len(), 4);
    }

    #[test]
    fn aff1_third_order_term() {
        // [t, b] = b: the x_t^2 y_b coefficient of F_b is 1/12
        let f = bch_group_law(&aff1(), 3).unwrap();
        assert_eq!(f.coefficient(1, &[2, 0], &[0, 1]).unwrap(), Scalar::ratio(1, 12));
    }

    #[test]
    fn agrees_with_dual_route() {
        for g in corpus() {
            for order in 1..=4 {
                assert_eq!(
                    bch_group_law(&g, order).unwrap(),
                    group_law_from_uea(&g, order).unwrap(),
                    "{} at order {order}",
                    g.name()
                );
            }
        }
    }

    #[test]
    fn truncation_is_coherent() {
        let g = sl2();
        let high = bch_group_law(&g, 4).unwrap();
        assert_eq!(high.truncate(2).unwrap(), bch_group_law(&g, 2).unwrap());
    }
}
