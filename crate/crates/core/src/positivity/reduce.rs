//! Basis reduction for `(2,2)`-forms on `ℂ⁴`: a basis `ω_1..ω_4` in which
//! the Ω-matrix satisfies `a_26 = a_36 = a_46 = a_56 = 0`.

use rand::Rng;

use super::stream_rng;
use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};
use crate::exterior::{CoVector, Form, Scalar};
use crate::linalg::Matrix;
use crate::ppmatrix::{BasisChange, Omega6Form, PPMatrixForm, HERMITIAN_TOL};

/// Cap on candidate pairs `(ω_1, ω_2)`.
pub const MAX_PAIR_ATTEMPTS: usize = 1000;
const PAIR_SEED: u64 = 0x5eed_0022;

#[derive(Debug, Clone, PartialEq)]
pub struct Reduction<S> {
    /// Rows are the new covectors `ω_j` in `dz` coordinates.
    pub basis: BasisChange<S>,
    /// Ω-matrix of the form in the new basis.
    pub omega: Omega6Form<S>,
    /// Pairs tried before one with nonzero pairing was found.
    pub attempts: usize,
}

/// `Σ a_{jk} a_{7−j,7−k}` split into the central 2..5 block and the corner
/// `2(a_11 a_66 + |a_16|²)`; they add up once the four zeros hold.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareSplit<S> {
    pub total: S,
    pub core: S,
    pub corner: S,
}

pub fn square_split<S: Scalar>(omega: &Omega6Form<S>) -> SquareSplit<S> {
    let a = |j: usize, k: usize| omega.a(j, k).clone();
    let mut total = S::zero();
    let mut core = S::zero();
    for j in 1..=6 {
        for k in 1..=6 {
            let v = a(j, k) * a(7 - j, 7 - k);
            if (2..=5).contains(&j) && (2..=5).contains(&k) {
                core = core + v.clone();
            }
            total = total + v;
        }
    }
    let a16 = a(1, 6);
    let corner = (a(1, 1) * a(6, 6) + S::from_real(a16.norm_sqr())) * S::from_ints(2, 0);
    SquareSplit { total, core, corner }
}

/// `true` when `a_{j6} = a_{6j} = 0` for `j = 2..5`.
pub fn has_reduced_zeros<S: Scalar>(omega: &Omega6Form<S>) -> bool {
    let zero = S::zero();
    (2..=5).all(|j| omega.a(j, 6).approx_eq(&zero, HERMITIAN_TOL) && omega.a(6, j).approx_eq(&zero, HERMITIAN_TOL))
}

/// Volume coefficient of `α ∧ ω_1∧ω_2 ∧ ω̄_1∧ω̄_2`.
fn pair_pairing<S: Scalar>(alpha: &Form<S>, w1: &CoVector<S>, w2: &CoVector<S>) -> Result<S> {
    let hol = w1.to_form().wedge(&w2.to_form())?;
    let anti = w1.to_form().conjugate().wedge(&w2.to_form().conjugate())?;
    alpha.wedge(&hol)?.wedge(&anti)?.volume_coefficient()
}

/// Finds the basis by searching pairs `(ω_1, ω_2)` with
/// `α ∧ ω_1∧ω_2∧ω̄_1∧ω̄_2 ≠ 0` (the six coordinate pairs first, then seeded
/// random pairs), completing it with a basis of the solution space of
/// `α ∧ ω_1∧ω_2∧ω̄_i∧ω̄ = 0`, `i = 1, 2`, and re-expressing `α`.
pub fn reduce_basis_22<S: Scalar>(alpha: &Form<S>) -> Result<Reduction<S>> {
    if alpha.n() != 4 {
        return Err(Error::DimensionMismatch(alpha.n(), 4));
    }
    alpha.expect_bidegree(2, 2)?;
    if !alpha.is_real(HERMITIAN_TOL) {
        return Err(Error::NotReal);
    }
    if alpha.is_zero() {
        return Ok(Reduction {
            basis: BasisChange::identity(4),
            omega: Omega6Form::new(Matrix::zeros(6, 6))?,
            attempts: 0,
        });
    }

    let coordinate_pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    let mut rng = stream_rng(PAIR_SEED, 0);
    let mut found = None;
    for attempt in 0..MAX_PAIR_ATTEMPTS {
        let (w1, w2) = if let Some(&(p, q)) = coordinate_pairs.get(attempt) {
            (CoVector::coordinate(p, 4), CoVector::coordinate(q, 4))
        } else {
            let mut draw = || CoVector::new((0..4).map(|_| S::from_ints(rng.random_range(-3..=3), rng.random_range(-3..=3))).collect());
            (draw(), draw())
        };
        let cc = pair_pairing(alpha, &w1, &w2)?;
        if !cc.approx_eq(&S::zero(), HERMITIAN_TOL) {
            found = Some((w1, w2, attempt + 1));
            break;
        }
    }
    let Some((w1, w2, attempts)) = found else {
        return Err(Error::SearchFailure(MAX_PAIR_ATTEMPTS));
    };

    // Coefficients of the conditions, linear in the conjugate coordinates of ω.
    let hol = w1.to_form().wedge(&w2.to_form())?;
    let base = alpha.wedge(&hol)?;
    let mut conditions = Matrix::zeros(2, 4);
    for (row, w) in [&w1, &w2].into_iter().enumerate() {
        let partial = base.wedge(&w.to_form().conjugate())?;
        for k in 1..=4 {
            let dzbar = Form::monomial(4, MultiIndex::empty(), MultiIndex::singleton(k), S::one())?;
            conditions[(row, k - 1)] = partial.wedge(&dzbar)?.volume_coefficient()?;
        }
    }
    let kernel = conditions.null_space();
    if kernel.len() != 2 {
        return Err(Error::Logic(format!(
            "solution space has dimension {}, expected 2",
            kernel.len()
        )));
    }
    let rows: Vec<Vec<S>> = [w1.coefficients().to_vec(), w2.coefficients().to_vec()]
        .into_iter()
        .chain(kernel.iter().map(|v| v.iter().map(S::conj).collect()))
        .collect();
    let basis = BasisChange::new(Matrix::from_rows(rows)?).map_err(|e| Error::Logic(format!("reduced basis: {e}")))?;

    let lex = PPMatrixForm::from_exterior(alpha)?;
    let omega = lex.change_basis(&basis)?.to_omega6()?;
    if !has_reduced_zeros(&omega) {
        return Err(Error::Logic("reduced matrix lacks the required zeros".into()));
    }
    Ok(Reduction { basis, omega, attempts })
}
