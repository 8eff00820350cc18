//! JSON matrix format:
//! `{ "p": 2, "basis": "lex" | "omega6", "entries": [[["1","0"], …], …] }`.
//!
//! Hermitian symmetry is validated on load.

use serde::{Deserialize, Serialize};

use super::{Omega6Form, PPMatrixForm};
use crate::error::{Error, Result};
use crate::exterior::serial::check_mode;
use crate::exterior::{Form, Real, Scalar};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum MatrixBasis {
    Lex,
    Omega6,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub p: usize,
    pub basis: MatrixBasis,
    pub entries: Vec<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

/// A matrix file decoded into its representation.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixLoaded<S> {
    Lex(PPMatrixForm<S>),
    Omega6(Omega6Form<S>),
}

impl<S: Scalar> MatrixLoaded<S> {
    pub fn to_exterior(&self) -> Form<S> {
        match self {
            Self::Lex(m) => m.to_exterior(),
            Self::Omega6(m) => m.to_exterior(),
        }
    }
}

fn encode<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<[String; 2]>> {
    m.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|c| [c.re().to_repr(), c.im().to_repr()]).collect())
        .collect()
}

fn decode<S: Scalar>(rows: &[Vec<[String; 2]>]) -> Result<Matrix<S>> {
    let rows = rows
        .iter()
        .map(|row| row.iter().map(|[re, im]| S::parse_parts(re, im)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

impl<S: Scalar> PPMatrixForm<S> {
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            p: self.p,
            basis: MatrixBasis::Lex,
            entries: encode(&self.entries),
            mode: Some(S::MODE.into()),
        }
    }
}

impl<S: Scalar> Omega6Form<S> {
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            p: 2,
            basis: MatrixBasis::Omega6,
            entries: encode(&self.entries),
            mode: Some(S::MODE.into()),
        }
    }
}

impl MatrixJson {
    pub fn decode<S: Scalar>(&self) -> Result<MatrixLoaded<S>> {
        check_mode::<S>(self.mode.as_deref())?;
        let m = decode::<S>(&self.entries)?;
        match self.basis {
            MatrixBasis::Lex => Ok(MatrixLoaded::Lex(PPMatrixForm::new(self.p, m)?)),
            MatrixBasis::Omega6 => {
                if self.p != 2 {
                    return Err(Error::RequiresP2(self.p));
                }
                Ok(MatrixLoaded::Omega6(Omega6Form::new(m)?))
            }
        }
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serialization cannot fail")
    }
}
