//! Exact dense linear algebra over Q(i): vectors, linear maps, rank,
//! kernels and span membership.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Scalar], k: &Scalar, v: &[Scalar]) {
    if k.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(k * x);
        }
    }
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(k: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| k * x).collect()
}

/// Result of Gauss-Jordan elimination on a row list.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Nonzero rows in reduced row echelon form.
    pub rows: Vec<Vector>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

/// Reduced row echelon form of the given rows (all of length `ncols`).
pub fn rref(rows: &[Vector], ncols: usize) -> Echelon {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let k = -row[col].clone();
                add_scaled(row, &k, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Echelon {
        rows: m,
        pivots,
        ncols,
    }
}

pub fn rank(vectors: &[Vector], len: usize) -> usize {
    rref(vectors, len).rows.len()
}

pub fn is_independent(vectors: &[Vector], len: usize) -> bool {
    rank(vectors, len) == vectors.len()
}

/// Basis of `{x : sum_j x_j * columns[j] = 0}`, i.e. the kernel of the
/// matrix whose columns are given. Returned in reduced echelon form.
pub fn kernel_of_columns(columns: &[Vector], nrows: usize) -> Vec<Vector> {
    let ncols = columns.len();
    let rows: Vec<Vector> = (0..nrows)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let ech = rref(&rows, ncols);
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !ech.pivots.contains(c)) {
        let mut v = zero_vector(ncols);
        v[free] = Scalar::one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            v[p] = -row[free].clone();
        }
        kernel.push(v);
    }
    rref(&kernel, ncols).rows
}

/// Coefficients `c` with `sum_j c_j * spanning[j] = target`, if any.
/// `spanning` must be linearly independent for the answer to be unique.
pub fn solve_in_span(spanning: &[Vector], target: &[Scalar]) -> Option<Vector> {
    let n = target.len();
    let k = spanning.len();
    // augmented system rows: [A | b]
    let rows: Vec<Vector> = (0..n)
        .map(|r| {
            let mut row: Vector = spanning.iter().map(|v| v[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let ech = rref(&rows, k + 1);
    if ech.pivots.contains(&k) {
        return None;
    }
    let mut x = zero_vector(k);
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

pub fn in_span(spanning: &[Vector], target: &[Scalar]) -> bool {
    solve_in_span(spanning, target).is_some()
}

/// Equality of the spans of two vector lists.
pub fn same_span(a: &[Vector], b: &[Vector], len: usize) -> bool {
    let ra = rref(a, len);
    let rb = rref(b, len);
    ra.rows == rb.rows
}

/// Matrix of a linear map `K^domain_dim -> K^codomain_dim`, stored column-major:
/// column `j` is the image of the `j`-th domain basis vector.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    domain_dim: usize,
    codomain_dim: usize,
    columns: Vec<Vector>,
}

impl LinearMap {
    pub fn from_columns(codomain_dim: usize, columns: Vec<Vector>) -> Result<Self> {
        if let Some((j, c)) = columns.iter().enumerate().find(|(_, c)| c.len() != codomain_dim) {
            return Err(Error::Shape(format!(
                "column {j} has length {}, expected {codomain_dim}",
                c.len()
            )));
        }
        Ok(LinearMap {
            domain_dim: columns.len(),
            codomain_dim,
            columns,
        })
    }

    /// From row-major entries: `rows[r][c]` is the coefficient of basis `r`
    /// in the image of basis `c`.
    pub fn from_rows(domain_dim: usize, rows: Vec<Vector>) -> Result<Self> {
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != domain_dim) {
            return Err(Error::Shape(format!(
                "row {r} has length {}, expected {domain_dim}",
                row.len()
            )));
        }
        let codomain_dim = rows.len();
        let columns = (0..domain_dim)
            .map(|c| rows.iter().map(|row| row[c].clone()).collect())
            .collect();
        Ok(LinearMap {
            domain_dim,
            codomain_dim,
            columns,
        })
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            domain_dim: n,
            codomain_dim: n,
            columns: (0..n).map(|i| basis_vector(n, i)).collect(),
        }
    }

    pub fn zero(domain_dim: usize, codomain_dim: usize) -> Self {
        LinearMap {
            domain_dim,
            codomain_dim,
            columns: vec![zero_vector(codomain_dim); domain_dim],
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn is_square(&self) -> bool {
        self.domain_dim == self.codomain_dim
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.columns[col][row]
    }

    pub fn rows(&self) -> Vec<Vector> {
        (0..self.codomain_dim)
            .map(|r| self.columns.iter().map(|c| c[r].clone()).collect())
            .collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.domain_dim {
            return Err(Error::Shape(format!(
                "vector of length {} applied to a map with domain dimension {}",
                v.len(),
                self.domain_dim
            )));
        }
        let mut out = zero_vector(self.codomain_dim);
        for (x, col) in v.iter().zip(&self.columns) {
            add_scaled(&mut out, x, col);
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.codomain_dim != self.domain_dim {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} after {}x{}",
                self.codomain_dim, self.domain_dim, inner.codomain_dim, inner.domain_dim
            )));
        }
        let columns = inner
            .columns
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>>>()?;
        LinearMap::from_columns(self.codomain_dim, columns)
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        self.same_shape(other)?;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        LinearMap::from_columns(self.codomain_dim, columns)
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.same_shape(other)?;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| sub_vectors(a, b))
            .collect();
        LinearMap::from_columns(self.codomain_dim, columns)
    }

    fn same_shape(&self, other: &LinearMap) -> Result<()> {
        if self.domain_dim != other.domain_dim || self.codomain_dim != other.codomain_dim {
            return Err(Error::Shape("linear maps have different shapes".into()));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        rank(&self.columns, self.codomain_dim)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.domain_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.codomain_dim
    }

    pub fn kernel(&self) -> Vec<Vector> {
        kernel_of_columns(&self.columns, self.codomain_dim)
    }

    /// Echelon basis of the image.
    pub fn image(&self) -> Vec<Vector> {
        rref(&self.columns, self.codomain_dim).rows
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        if !self.is_square() || !self.is_injective() {
            return None;
        }
        let n = self.domain_dim;
        let columns = (0..n)
            .map(|i| solve_in_span(&self.columns, &basis_vector(n, i)))
            .collect::<Option<Vec<_>>>()?;
        Some(LinearMap {
            domain_dim: n,
            codomain_dim: n,
            columns,
        })
    }

    /// Solves `self ∘ x = target` for `x`, column by column. `self` must be
    /// injective for the solution to be unique.
    pub fn solve_right(&self, target: &LinearMap) -> Option<LinearMap> {
        if target.codomain_dim != self.codomain_dim {
            return None;
        }
        let columns = target
            .columns
            .iter()
            .map(|c| solve_in_span(&self.columns, c))
            .collect::<Option<Vec<_>>>()?;
        Some(LinearMap {
            domain_dim: target.domain_dim,
            codomain_dim: self.domain_dim,
            columns,
        })
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap{:?}", self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_integer(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[1, 1, 2])];
        assert_eq!(rank(&cols, 3), 2);
        let k = kernel_of_columns(&cols, 3);
        assert_eq!(k, vec![v(&[1, 1, -1])]);
    }

    #[test]
    fn solve_and_span() {
        let span = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        assert_eq!(solve_in_span(&span, &v(&[2, 3, 5])), Some(v(&[2, 3])));
        assert_eq!(solve_in_span(&span, &v(&[0, 0, 1])), None);
        assert!(same_span(&span, &[v(&[1, 1, 2]), v(&[1, -1, 0])], 3));
    }

    #[test]
    fn inverse_and_compose() {
        let m = LinearMap::from_rows(2, vec![v(&[1, 2]), v(&[3, 4])]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv).unwrap(), LinearMap::identity(2));
        assert_eq!(m.apply(&v(&[1, 0])).unwrap(), v(&[1, 3]));
        let singular = LinearMap::from_rows(2, vec![v(&[1, 2]), v(&[2, 4])]).unwrap();
        assert!(singular.inverse().is_none());
        assert!(LinearMap::from_rows(3, vec![v(&[1, 2])]).is_err());
    }
}
