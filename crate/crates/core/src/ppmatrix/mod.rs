//! Matrix representations of `(p,p)`-forms on `ℂ^{2p}`.
//!
//! A hermitian `N×N` matrix `(a_{JK})`, `N = (2p)!/(p!)²`, stands for the
//! form `i^{p²} Σ a_{JK} dz_J ∧ dz̄_K`. For `p = 2` the same form also has a
//! 6×6 matrix over the signed basis `Ω_1..Ω_6` of
//! [`section1_basis`](crate::combinatorics::section1_basis).
//!
//! The `i^{p²}` factor lives only in [`PPMatrixForm::to_exterior`] and
//! [`PPMatrixForm::from_exterior`]; the product and square formulas act on the
//! raw entries.

mod serial;

use std::sync::Arc;

use rand::Rng;

pub use serial::{MatrixBasis, MatrixJson, MatrixLoaded};

use crate::combinatorics::{omega_signs, IndexTable};
use crate::error::{Error, Result};
use crate::exterior::{Form, Scalar};
use crate::linalg::Matrix;

/// Relative tolerance for hermitian checks on float matrices.
pub const HERMITIAN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct PPMatrixForm<S> {
    p: usize,
    table: Arc<IndexTable>,
    entries: Matrix<S>,
}

impl<S: Scalar> PPMatrixForm<S> {
    pub fn new(p: usize, entries: Matrix<S>) -> Result<Self> {
        let table = IndexTable::get(p, 2 * p)?;
        if entries.rows() != table.len() || entries.cols() != table.len() {
            return Err(Error::BadShape {
                rows: entries.rows(),
                cols: entries.cols(),
                expected: table.len(),
            });
        }
        entries.check_hermitian(HERMITIAN_TOL)?;
        Ok(Self { p, table, entries })
    }

    pub fn zero(p: usize) -> Result<Self> {
        let n = IndexTable::get(p, 2 * p)?.len();
        Self::new(p, Matrix::zeros(n, n))
    }

    pub fn identity(p: usize) -> Result<Self> {
        let n = IndexTable::get(p, 2 * p)?.len();
        Self::new(p, Matrix::identity(n))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `N`, the number of degree-`p` multi-indices of `{1,…,2p}`.
    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &IndexTable {
        &self.table
    }

    pub fn entries(&self) -> &Matrix<S> {
        &self.entries
    }

    /// Entry at 0-based lexicographic positions.
    pub fn entry(&self, j: usize, k: usize) -> &S {
        &self.entries[(j, k)]
    }

    /// `i^{p²} Σ a_{JK} dz_J ∧ dz̄_K` on `ℂ^{2p}`.
    pub fn to_exterior(&self) -> Form<S> {
        let scale = S::i_pow(self.p * self.p);
        let n = self.size();
        let mut terms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = &self.entries[(a, b)];
                if !c.is_zero() {
                    terms.push((self.table.entry(a), self.table.entry(b), c.clone() * scale.clone()));
                }
            }
        }
        Form::from_terms(2 * self.p, terms).expect("table indices lie in range")
    }

    /// Inverse of [`to_exterior`](Self::to_exterior). The form must be zero
    /// or of bidegree `(p,p)` on `ℂ^{2p}`; the recovered matrix must be
    /// hermitian.
    pub fn from_exterior(form: &Form<S>) -> Result<Self> {
        let n = form.n();
        if n % 2 != 0 {
            return Err(Error::InvalidDegree { p: n / 2, n });
        }
        let p = n / 2;
        form.expect_bidegree(p, p)?;
        let table = IndexTable::get(p, n)?;
        // 1 / i^{p²} = i^{-p²}
        let unscale = S::i_pow((4 - (p * p) % 4) % 4);
        let mut entries = Matrix::zeros(table.len(), table.len());
        for ((j, k), c) in form.terms() {
            let (Some(a), Some(b)) = (table.position(*j), table.position(*k)) else {
                return Err(Error::Logic("term outside the index table".into()));
            };
            entries[(a, b)] = c.clone() * unscale.clone();
        }
        Self::new(p, entries)
    }

    /// `Σ_{J,K} ε_J ε_K a_{JK} a_{J'K'}`, the coefficient of `α²` against `dV`.
    pub fn square_coefficient(&self) -> S {
        let n = self.size();
        let mut sum = S::zero();
        for a in 0..n {
            let ca = n - 1 - a;
            debug_assert_eq!(self.table.complement_position(a), Some(ca));
            for b in 0..n {
                let x = &self.entries[(a, b)];
                if x.is_zero() {
                    continue;
                }
                let y = &self.entries[(ca, n - 1 - b)];
                if y.is_zero() {
                    continue;
                }
                let sign = self.table.sign(a) * self.table.sign(b);
                sum = sum + (x.clone() * y.clone()).signed(sign);
            }
        }
        sum
    }

    /// 6×6 Ω-basis matrix; `a^Ω_{jk} = s_j s_k a_{JK}`.
    pub fn to_omega6(&self) -> Result<Omega6Form<S>> {
        if self.p != 2 {
            return Err(Error::RequiresP2(self.p));
        }
        let s = omega_signs();
        let m = Matrix::from_fn(6, 6, |j, k| self.entries[(j, k)].clone().signed(s[j] * s[k]));
        Omega6Form::new(m)
    }

    pub fn from_omega6(omega: &Omega6Form<S>) -> Self {
        let s = omega_signs();
        let m = Matrix::from_fn(6, 6, |j, k| omega.entries[(j, k)].clone().signed(s[j] * s[k]));
        Self::new(2, m).expect("sign changes preserve hermitian symmetry")
    }

    /// Coordinates of the same form in the basis `ω_j = Σ_k M_{jk} dz_k`.
    ///
    /// With `C` the `p`-th compound of `M⁻¹` the new matrix is `Cᵀ A C̄`. The
    /// volume of the new coordinates is `|det M|²` times the old one, so
    /// `square_coefficient(new) · |det M|² = square_coefficient(old)`.
    pub fn change_basis(&self, m: &BasisChange<S>) -> Result<Self> {
        if m.n() != 2 * self.p {
            return Err(Error::DimensionMismatch(m.n(), 2 * self.p));
        }
        let c = m.inverse()?.compound(self.p)?;
        let lhs = c.transpose().mul(&self.entries)?;
        let out = lhs.mul(&c.conj())?;
        Self::new(self.p, out)
    }

    pub fn map_to<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Result<PPMatrixForm<T>> {
        PPMatrixForm::new(self.p, self.entries.map(f))
    }
}

/// A `(2,2)`-form on `ℂ⁴` written as `Σ a_{jk} Ω_j ∧ Ω̄_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Omega6Form<S> {
    entries: Matrix<S>,
}

impl<S: Scalar> Omega6Form<S> {
    pub fn new(entries: Matrix<S>) -> Result<Self> {
        if entries.rows() != 6 || entries.cols() != 6 {
            return Err(Error::BadShape {
                rows: entries.rows(),
                cols: entries.cols(),
                expected: 6,
            });
        }
        entries.check_hermitian(HERMITIAN_TOL)?;
        Ok(Self { entries })
    }

    pub fn identity() -> Self {
        Self {
            entries: Matrix::identity(6),
        }
    }

    pub fn entries(&self) -> &Matrix<S> {
        &self.entries
    }

    /// Entry `a_{jk}` with 1-based `j, k`.
    pub fn a(&self, j: usize, k: usize) -> &S {
        &self.entries[(j - 1, k - 1)]
    }

    pub fn to_lex(&self) -> PPMatrixForm<S> {
        PPMatrixForm::from_omega6(self)
    }

    pub fn to_exterior(&self) -> Form<S> {
        self.to_lex().to_exterior()
    }

    pub fn from_exterior(form: &Form<S>) -> Result<Self> {
        PPMatrixForm::from_exterior(form)?.to_omega6()
    }

    /// Quadratic form `z̄ A zᵀ` at a point of `ℂ⁶`.
    pub fn quadratic(&self, z: &[S]) -> S {
        quadratic_form(&self.entries, z)
    }

    pub fn map_to<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Result<Omega6Form<T>> {
        Omega6Form::new(self.entries.map(f))
    }
}

/// `z̄ A zᵀ = Σ z̄_j a_{jk} z_k`.
pub fn quadratic_form<S: Scalar>(a: &Matrix<S>, z: &[S]) -> S {
    let mut sum = S::zero();
    for j in 0..a.rows() {
        if z[j].is_zero() {
            continue;
        }
        let zj = z[j].conj();
        for k in 0..a.cols() {
            if z[k].is_zero() || a[(j, k)].is_zero() {
                continue;
            }
            sum = sum + zj.clone() * a[(j, k)].clone() * z[k].clone();
        }
    }
    sum
}

/// `Σ_{j,k} a_{jk} b_{7−j,7−k}`, the coefficient of `α ∧ β` against `dV`.
pub fn product22_coefficient<S: Scalar>(a: &Omega6Form<S>, b: &Omega6Form<S>) -> S {
    let mut sum = S::zero();
    for j in 0..6 {
        for k in 0..6 {
            let x = &a.entries[(j, k)];
            let y = &b.entries[(5 - j, 5 - k)];
            if !x.is_zero() && !y.is_zero() {
                sum = sum + x.clone() * y.clone();
            }
        }
    }
    sum
}

/// Invertible change of coordinates: new covectors `ω_j = Σ_k M_{jk} dz_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> BasisChange<S> {
    pub fn new(matrix: Matrix<S>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::BadShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected: matrix.rows(),
            });
        }
        if matrix.determinant()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: Matrix::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn determinant(&self) -> S {
        self.matrix.determinant().expect("square by construction")
    }

    pub fn inverse(&self) -> Result<Matrix<S>> {
        self.matrix.inverse()
    }
}

/// Random hermitian matrix with Gaussian-integer entries in `[-r, r]`
/// (real diagonal); `density` is the probability an upper entry is nonzero.
pub fn random_hermitian<S: Scalar>(rng: &mut impl Rng, size: usize, r: i64, density: f64) -> Matrix<S> {
    let mut m = Matrix::zeros(size, size);
    for j in 0..size {
        for k in j..size {
            if !rng.random_bool(density) {
                continue;
            }
            if j == k {
                m[(j, j)] = S::from_ints(rng.random_range(-r..=r), 0);
            } else {
                let v = S::from_ints(rng.random_range(-r..=r), rng.random_range(-r..=r));
                m[(k, j)] = v.conj();
                m[(j, k)] = v;
            }
        }
    }
    m
}
