//! Exact and floating-point tools for positive `(p,p)`-forms and their wedge squares:
//! sparse exterior algebra, hermitian matrix forms and their squares,
//! positivity searches (frames, the Dinew quadric, Plücker coordinates),
//! the (2,2) basis reduction and the reduced 4×4 conditions, and a gallery
//! of named counterexamples.

pub mod combinatorics;
pub mod error;
pub mod exterior;
pub mod gallery;
pub mod linalg;
pub mod positivity;
pub mod ppmatrix;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod testutil;
