//! Dense matrices over a [`Scalar`] with elimination-based determinant,
//! inverse, null space and compound matrices.

use std::ops::{Index, IndexMut};

use crate::combinatorics::IndexTable;
use crate::error::{Error, Result};
use crate::exterior::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::BadShape {
                rows: r,
                cols: bad.len(),
                expected: c,
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        self.map(S::conj)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(self.cols, other.rows));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    /// `A[(i, j)] == conj(A[(j, i)])`; reports the first violating entry.
    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::BadShape {
                rows: self.rows,
                cols: self.cols,
                expected: self.rows,
            });
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if !self[(i, j)].approx_eq(&self[(j, i)].conj(), tol) {
                    return Err(Error::NotHermitian { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(())
    }

    /// Row echelon reduction in place; returns pivot columns and the
    /// determinant sign/product contribution.
    fn eliminate(m: &mut Self, reduced: bool) -> (Vec<usize>, S) {
        let mut pivots = Vec::new();
        let mut det = S::one();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // largest weight pivot in this column
            let best = (row..m.rows)
                .map(|r| (r, m[(r, col)].pivot_weight()))
                .filter(|&(_, w)| w > 0.0)
                .max_by(|a, b| a.1.total_cmp(&b.1));
            let Some((pr, _)) = best else {
                det = S::zero();
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
                det = -det;
            }
            let pivot = m[(row, col)].clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("nonzero pivot");
            for c in col..m.cols {
                m[(row, c)] = m[(row, c)].clone() * inv.clone();
            }
            let start = if reduced { 0 } else { row + 1 };
            for r in start..m.rows {
                if r == row {
                    continue;
                }
                let factor = m[(r, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m[(row, c)].clone();
                    m[(r, c)] = m[(r, c)].clone() - factor.clone() * v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (pivots, det)
    }

    pub fn determinant(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::BadShape {
                rows: self.rows,
                cols: self.cols,
                expected: self.rows,
            });
        }
        let mut m = self.clone();
        let (pivots, det) = Self::eliminate(&mut m, false);
        Ok(if pivots.len() == self.rows { det } else { S::zero() })
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        Self::eliminate(&mut m, false).0.len()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::BadShape {
                rows: self.rows,
                cols: self.cols,
                expected: self.rows,
            });
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let (pivots, _) = Self::eliminate(&mut aug, true);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Basis of `{x : A x = 0}` from the reduced row echelon form; each
    /// basis vector has a 1 in one free coordinate and 0 in the others.
    pub fn null_space(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let (pivots, _) = Self::eliminate(&mut m, true);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Square submatrix with the given 0-based rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// `p`-th compound matrix: entry `(I, J)` is the minor of rows `I` and
    /// columns `J`, with `I`, `J` running over degree-`p` multi-indices in
    /// lexicographic order.
    pub fn compound(&self, p: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::BadShape {
                rows: self.rows,
                cols: self.cols,
                expected: self.rows,
            });
        }
        let table = IndexTable::get(p, self.rows)?;
        let idx: Vec<Vec<usize>> = table
            .entries()
            .iter()
            .map(|j| j.entries().map(|e| e - 1).collect())
            .collect();
        let n = table.len();
        let mut out = Self::zeros(n, n);
        for (a, rows) in idx.iter().enumerate() {
            for (b, cols) in idx.iter().enumerate() {
                out[(a, b)] = self.submatrix(rows, cols).determinant()?;
            }
        }
        Ok(out)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}
