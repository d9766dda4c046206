//! Dense matrices over the rationals with exact Gauss-Jordan elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no solution")]
    NoSolution,
}

/// A `rows x cols` matrix stored row-major. Zero-sized dimensions are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub reduced: Matrix,
    pub pivot_columns: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix { rows, cols, data }
    }

    /// Rows must all have length `cols`; `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Matrix::from_vec(rows, cols, entries.iter().map(|&x| Rational::from_int(x)).collect())
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let cols = columns.len();
        let mut m = Matrix::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column of wrong length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Panics on incompatible shapes.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes for product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "incompatible vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "incompatible shapes for sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "incompatible shapes for difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Rational::from_int(-1))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut m = Matrix::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].recip().expect("nonzero pivot");
            for j in c..a.cols {
                if !a[(r, j)].is_zero() {
                    a[(r, j)] = &a[(r, j)] * &inv;
                }
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    if !a[(r, j)].is_zero() {
                        let d = &f * &a[(r, j)];
                        a[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: pivots.len(), reduced: a, pivot_columns: pivots }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        // Eliminate on the thinner orientation.
        if self.rows > self.cols {
            self.transpose().rref().rank
        } else {
            self.rref().rank
        }
    }

    /// Columns form a basis of the null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivot_columns, .. } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivot_columns {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut k = Matrix::zeros(n, free.len());
        for (col, &f) in free.iter().enumerate() {
            k[(f, col)] = Rational::one();
            for (row, &p) in pivot_columns.iter().enumerate() {
                let v = &reduced[(row, f)];
                if !v.is_zero() {
                    k[(p, col)] = -v;
                }
            }
        }
        k
    }

    /// Exact solution of `self * x = b`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix::from_columns(self.rows, &[b.to_vec()]);
        self.solve_matrix(&rhs).map(|x| x.column(0))
    }

    /// Exact solution `X` of `self * X = rhs`, free variables set to zero.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        if rhs.rows != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "right-hand side has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        let aug = self.hstack(rhs);
        let Rref { reduced, pivot_columns, .. } = aug.rref();
        if pivot_columns.iter().any(|&p| p >= self.cols) {
            return Err(LinAlgError::NoSolution);
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &p) in pivot_columns.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = reduced[(row, self.cols + j)].clone();
            }
        }
        Ok(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rref().rank == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&Matrix::identity(self.rows)).ok()?;
        // A consistent square system with a left-inverse candidate is only an
        // inverse at full rank.
        if self.mul(&x) == Matrix::identity(self.rows) && x.mul(self) == Matrix::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut a = self.clone();
        let n = a.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.recip().expect("nonzero pivot");
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] * &inv;
                for j in c..n {
                    if !a[(c, j)].is_zero() {
                        let d = &f * &a[(c, j)];
                        a[(i, j)] -= &d;
                    }
                }
            }
        }
        det
    }

    /// Indices of a maximal linearly independent set of columns (greedy, left to right).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivot_columns
    }

    /// Basis (as columns) of the column space, taken from the original columns.
    pub fn column_space(&self) -> Matrix {
        self.select_columns(&self.independent_columns())
    }

    /// A full-row-rank matrix `Q` with `Q * self = 0` and `rank Q = rows - rank self`:
    /// the projection onto `K^rows / colspace(self)` in fixed coordinates.
    pub fn cokernel_projection(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Columns of `self` (assumed independent) extended by standard basis
    /// vectors to a basis of the whole space; returns only the added columns.
    pub fn complement_columns(&self) -> Matrix {
        let n = self.rows;
        let ext = self.hstack(&Matrix::identity(n));
        let piv = ext.independent_columns();
        let added: Vec<usize> = piv.into_iter().filter(|&j| j >= self.cols).collect();
        ext.select_columns(&added)
    }

    /// Characteristic polynomial `det(xI - A)` as coefficients, constant term first.
    pub fn charpoly(&self) -> Vec<Rational> {
        assert!(self.is_square(), "charpoly of non-square matrix");
        // Faddeev-LeVerrier.
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self.mul(&m);
            let tr: Rational = (0..n).map(|i| am[(i, i)].clone()).sum();
            coeffs[n - k] = -(tr / Rational::from_int(k as i64));
        }
        coeffs
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square(), "power of non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Row-list form used in JSON: `[["1","0"],["-1/2","3"]]`. The shape of an
/// empty matrix is carried separately by the enclosing schema.
impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Rational>> = Vec::deserialize(deserializer)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(Matrix::from_rows(rows, cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rref_examples() {
        let r = Matrix::identity(3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);

        let r = Matrix::zeros(2, 4).rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivot_columns.is_empty());

        let m = Matrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.rref().rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3).kernel_basis().cols(), 0);
        let k = Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(k.shape(), (3, 3));
        assert_eq!(k.rank(), 3);

        let m = Matrix::from_i64(2, 2, &[1, 2, 2, 4]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        // proportional to (2, -1)
        assert_eq!(&v[0] * &q(-1), &v[1] * &q(2));
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-1)];
        assert_eq!(Matrix::identity(2).solve(&b).unwrap(), b);
        assert_eq!(Matrix::zeros(2, 2).solve(&b), Err(LinAlgError::NoSolution));
        let x = Matrix::from_i64(1, 1, &[2]).solve(&[q(1)]).unwrap();
        assert_eq!(x, vec![Rational::new(1, 2)]);
        assert!(matches!(
            Matrix::identity(2).solve(&[q(1)]),
            Err(LinAlgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn invertibility() {
        assert!(Matrix::identity(4).is_invertible());
        assert!(!Matrix::zeros(2, 3).is_invertible());
        assert!(!Matrix::from_i64(2, 2, &[1, 2, 2, 4]).is_invertible());
        assert!(Matrix::zeros(0, 0).is_invertible());
        let m = Matrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn empty_shapes() {
        let a = Matrix::zeros(0, 3);
        assert_eq!(a.kernel_basis().cols(), 3);
        let b = Matrix::zeros(3, 0);
        assert_eq!(b.kernel_basis().cols(), 0);
        assert_eq!(a.mul(&b).shape(), (0, 0));
        assert_eq!(b.mul(&a).shape(), (3, 3));
        assert_eq!(b.cokernel_projection().shape(), (3, 3));
        assert_eq!(Matrix::zeros(0, 0).determinant(), Rational::one());
    }

    #[test]
    fn charpoly_and_det() {
        let m = Matrix::from_i64(2, 2, &[1, 2, 3, 4]);
        // x^2 - 5x - 2
        assert_eq!(m.charpoly(), vec![q(-2), q(-5), q(1)]);
        assert_eq!(m.determinant(), q(-2));
    }

    #[test]
    fn cokernel_projection_kills_image() {
        let u = Matrix::from_i64(3, 1, &[1, 1, 0]);
        let p = u.cokernel_projection();
        assert_eq!(p.rows(), 2);
        assert!(p.mul(&u).is_zero());
        assert_eq!(p.rank(), 2);
    }
}
