//! Exterior algebra of complex `(p,q)`-forms on `ℂ^n`.

mod form;
pub mod scalar;
pub mod serial;

pub use form::{decomposable_pp, positivity_pairing, wedge_covectors, CoVector, Form, TermKey};
pub use scalar::{Complex64, GaussianRational, Real, Scalar};

#[cfg(test)]
mod tests;
