//! Dense matrices over an exact field.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::subspace::Subspace;

/// Row-major dense matrix; every entry lives in `field`.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix over {} ({}x{})", self.field.name(), self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    /// Builds from row vectors; `cols` is needed to describe a 0-row matrix.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { field, rows: n, cols, data })
    }

    pub fn from_i64_rows(field: F, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let conv = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix::from_rows(field, cols, conv)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.field.same_as(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.mul_add(&out.data[idx], a, other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!("vector of length {} against {} rows", v.len(), self.rows)));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.mul_add(o, a, self.get(i, j));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.mul_add(&acc, a, b))
            })
            .collect())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix<F> {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    pub fn vstack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.field.same_as(&other.field)?;
        if self.cols != other.cols {
            return Err(Error::Dimension(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.field.same_as(&other.field)?;
        if self.rows != other.rows {
            return Err(Error::Dimension(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols + other.cols, data })
    }

    /// Kronecker product; row (i, k) and column (j, l) map to `i*rows(b)+k`, `j*cols(b)+l`.
    pub fn kronecker(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        self.field.same_as(&other.field)?;
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..self.rows {
            for k in 0..other.rows {
                for j in 0..self.cols {
                    for l in 0..other.cols {
                        data.push(f.mul(self.get(i, j), other.get(k, l)));
                    }
                }
            }
        }
        Ok(Matrix { field: f.clone(), rows: r, cols: c, data })
    }

    /// Reduced row echelon form. Pivots are the first nonzero entry in column order.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref { matrix: m, rank, pivots }
    }

    /// Eliminates in place and returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let idx = r * cols + j;
                self.data[idx] = f.mul(&self.data[idx], &inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                for j in c..cols {
                    let src = self.data[r * cols + j].clone();
                    if f.is_zero(&src) {
                        continue;
                    }
                    let idx = i * cols + j;
                    self.data[idx] = f.mul_add(&self.data[idx], &neg, &src);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank via forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelon_rank()
    }

    fn echelon_rank(&mut self) -> usize {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for i in r + 1..rows {
                let a = self.get(i, c).clone();
                if f.is_zero(&a) {
                    continue;
                }
                let factor = f.neg(&f.mul(&a, &inv));
                for j in c..cols {
                    let src = self.data[r * cols + j].clone();
                    let idx = i * cols + j;
                    self.data[idx] = f.mul_add(&self.data[idx], &factor, &src);
                }
            }
            r += 1;
        }
        r
    }

    /// Right kernel `{x : Mx = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let Rref { matrix, pivots, .. } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(matrix.get(r, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f.clone(), self.cols, basis).expect("consistent lengths")
    }

    /// Left kernel `{y : yM = 0}`.
    pub fn left_kernel(&self) -> Subspace<F> {
        self.transpose().kernel()
    }

    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_matrix(self)
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("nonzero");
            for i in c + 1..n {
                let a = m.get(i, c).clone();
                if f.is_zero(&a) {
                    continue;
                }
                let factor = f.neg(&f.mul(&a, &inv));
                for j in c..n {
                    let src = m.data[c * n + j].clone();
                    let idx = i * n + j;
                    m.data[idx] = f.mul_add(&m.data[idx], &factor, &src);
                }
            }
        }
        Ok(det)
    }
}

impl<F: FiniteField> Matrix<F> {
    /// Uniformly random entries.
    pub fn random<R: Rng + ?Sized>(field: F, rows: usize, cols: usize, rng: &mut R) -> Self {
        let q = field.order();
        let data = (0..rows * cols).map(|_| field.element(rng.gen_range(0..q))).collect();
        Matrix { field, rows, cols, data }
    }
}
