//! Dense row-major integer matrices.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// The workhorse integer matrix type.
pub type IMat = Mat<i64>;

impl<T: Clone> Mat<T> {
    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    /// Build from nested rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    /// Build with an explicit column count (needed when there are no rows).
    pub fn from_rows_with(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(cols: &[Vec<T>], rows: usize) -> Self
    where
        T: Default,
    {
        let mut m = Mat::filled(rows, cols.len(), T::default());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            for &j in idx {
                data.push(self[(i, j)].clone());
            }
        }
        Mat { rows: self.rows, cols: idx.len(), data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.cols * idx.len());
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat { rows: idx.len(), cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Mat { rows: self.rows, cols: self.cols + other.cols, data }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::filled(rows, cols, 0)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Mat::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == i64::from(i == j)))
    }

    /// Checked product; `Overflow` if any accumulation leaves i64.
    pub fn mul(&self, other: &IMat) -> Result<IMat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = vec![0i64; self.rows * other.cols];
        for i in 0..self.rows {
            let o = &mut out[i * other.cols..(i + 1) * other.cols];
            let mut acc = vec![0i128; other.cols];
            for k in 0..self.cols {
                let a = self[(i, k)] as i128;
                if a == 0 {
                    continue;
                }
                for (j, b) in other.row(k).iter().enumerate() {
                    acc[j] += a * (*b as i128);
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                o[j] = i64::try_from(v).map_err(|_| Error::Overflow("matrix product"))?;
            }
        }
        Ok(Mat { rows: self.rows, cols: other.cols, data: out })
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("matrix-vector length".into()));
        }
        (0..self.rows)
            .map(|i| {
                let s: i128 = self.row(i).iter().zip(v).map(|(a, b)| *a as i128 * *b as i128).sum();
                i64::try_from(s).map_err(|_| Error::Overflow("matrix-vector product"))
            })
            .collect()
    }

    pub fn add(&self, other: &IMat) -> Result<IMat> {
        self.zip(other, i64::checked_add)
    }

    pub fn sub(&self, other: &IMat) -> Result<IMat> {
        self.zip(other, i64::checked_sub)
    }

    fn zip(&self, other: &IMat, f: fn(i64, i64) -> Option<i64>) -> Result<IMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("elementwise shape".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(*a, *b).ok_or(Error::Overflow("elementwise op")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: i64) -> Result<IMat> {
        let data = self
            .data
            .iter()
            .map(|a| a.checked_mul(c).ok_or(Error::Overflow("scale")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> IMat {
        self.map(|x| -x)
    }

    /// Block diagonal of two matrices.
    pub fn block_diag(&self, other: &IMat) -> IMat {
        let mut m = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, other: &IMat) -> Result<IMat> {
        let mut m = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] =
                            a.checked_mul(other[(k, l)]).ok_or(Error::Overflow("kron"))?;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Integer power of a square matrix by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Result<IMat> {
        let mut base = self.clone();
        let mut acc = IMat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}
