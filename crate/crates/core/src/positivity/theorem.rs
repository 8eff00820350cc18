use crate::error::{Error, Result};
use crate::exterior::{Form, Real, Scalar};
use crate::ppmatrix::{product22_coefficient, PPMatrixForm, HERMITIAN_TOL};

/// Square coefficient `α² = c·dV` of a (2,2)-form on `ℂ⁴`, computed through
/// the ε-sum, the Ω product formula and the generic wedge. The three must
/// agree; a negative value is reported as [`Error::TheoremViolation`].
pub fn verify_theorem1<S: Scalar>(alpha: &Form<S>, tol: f64) -> Result<S::Real> {
    if alpha.n() != 4 {
        return Err(Error::DimensionMismatch(alpha.n(), 4));
    }
    if alpha.is_zero() {
        return Ok(<S::Real as Real>::zero());
    }
    alpha.expect_bidegree(2, 2)?;
    if !alpha.is_real(HERMITIAN_TOL) {
        return Err(Error::NotReal);
    }
    let lex = PPMatrixForm::from_exterior(alpha)?;
    let sq = lex.square_coefficient();
    let omega = lex.to_omega6()?;
    let prod = product22_coefficient(&omega, &omega);
    let generic = alpha.wedge(alpha)?.volume_coefficient()?;
    if !sq.approx_eq(&prod, tol) || !sq.approx_eq(&generic, tol) {
        return Err(Error::Logic(format!(
            "square paths disagree: sum {sq}, product {prod}, wedge {generic}"
        )));
    }
    let value = sq.re();
    if value.is_negative_beyond(tol) {
        return Err(Error::TheoremViolation(format!(
            "square coefficient {} of a trusted positive form",
            value.to_repr()
        )));
    }
    Ok(value)
}
