//! JSON form format:
//! `{ "n": 4, "terms": [ { "J": [1,2], "K": [1,2], "re": "1/2", "im": "0" } ] }`.
//!
//! Coefficients are rational strings so exact forms survive a round trip.
//! An optional `"mode"` (`"exact"` or `"float"`) tags the scalar mode of the
//! writer; loading a float-tagged file as exact is rejected.

use serde::{Deserialize, Serialize};

use super::form::Form;
use super::scalar::{Real, Scalar};
use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FormJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

/// Rejects files whose declared mode conflicts with the scalar type.
pub fn check_mode<S: Scalar>(mode: Option<&str>) -> Result<()> {
    match mode {
        None => Ok(()),
        Some(m) if m == S::MODE => Ok(()),
        Some("float") if S::EXACT => Err(Error::Parse(
            "float-mode file cannot be loaded in exact mode".into(),
        )),
        Some("exact") | Some("float") => Ok(()),
        Some(other) => Err(Error::Parse(format!("unknown mode {other:?}"))),
    }
}

impl<S: Scalar> Form<S> {
    pub fn to_json(&self) -> FormJson {
        FormJson {
            n: self.n(),
            terms: self
                .terms()
                .map(|((j, k), c)| TermJson {
                    j: j.to_vec(),
                    k: k.to_vec(),
                    re: c.re().to_repr(),
                    im: c.im().to_repr(),
                })
                .collect(),
            mode: Some(S::MODE.to_string()),
        }
    }

    pub fn from_json(json: &FormJson) -> Result<Self> {
        check_mode::<S>(json.mode.as_deref())?;
        let terms = json
            .terms
            .iter()
            .map(|t| {
                Ok((
                    MultiIndex::new(&t.j, json.n)?,
                    MultiIndex::new(&t.k, json.n)?,
                    S::parse_parts(&t.re, &t.im)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Form::from_terms(json.n, terms)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("form serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: FormJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}
