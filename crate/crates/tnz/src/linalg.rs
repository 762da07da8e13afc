//! Dense exact linear algebra over Gaussian rationals.
//!
//! Plain Gaussian elimination with exact division: over an exact field there
//! is no conditioning to worry about, so rank, determinant, and solutions are
//! exact and any non-zero pivot is as good as any other. Matrices here are
//! small (block maps, local projectors), so no effort goes into asymptotics.

use crate::scalar::Scalar;

/// Row-major dense matrix of exact complex scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds from a flat row-major entry list; panics unless
    /// `data.len() == rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c) + &(a * b);
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn scale(&self, by: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * by).collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.conj_transpose()
    }

    /// Exact column rank by forward elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, found);
            let inv = m.get(pivot_row, col).inverse();
            for r in pivot_row + 1..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) * &inv;
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(pivot_row, c));
                    m.set(r, c, v);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of square matrix");
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..m.cols {
            let Some(found) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Scalar::zero();
            };
            if found != col {
                m.swap_rows(col, found);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inverse();
            for r in col + 1..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) * &inv;
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// One exact solution of `self * x = b`, or `None` when the system is
    /// inconsistent. Free variables are set to zero, which makes the result
    /// deterministic.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        // Reduced row echelon form of the augmented matrix.
        let mut m = Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            m.set(r, self.cols, b[r].clone());
        }
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, found);
            let inv = m.get(pivot_row, col).inverse();
            for c in col..=self.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..=self.cols {
                    let v = m.get(r, c) - &(&factor * m.get(pivot_row, c));
                    m.set(r, c, v);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        // Inconsistent when a zero row has a non-zero right-hand side.
        for r in pivot_row..m.rows {
            if !m.get(r, self.cols).is_zero() {
                return None;
            }
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &col) in pivot_cols.iter().enumerate() {
            x[col] = m.get(row, self.cols).clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}
