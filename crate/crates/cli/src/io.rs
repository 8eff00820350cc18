//! File loading and JSON encoding shared by the commands.

use std::fmt;
use std::path::Path;

use ppforms::exterior::serial::FormJson;
use ppforms::exterior::{Form, Real, Scalar};
use ppforms::linalg::Matrix;
use ppforms::ppmatrix::{MatrixJson, MatrixLoaded};
use serde_json::{json, Value};

/// Failure that maps to exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<ppforms::Error> for CliError {
    fn from(e: ppforms::Error) -> Self {
        Self(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

/// A form read from disk, with its matrix when the file held one.
pub struct Loaded<S> {
    pub form: Form<S>,
    pub matrix: Option<MatrixLoaded<S>>,
}

/// Reads a form file (`"terms"`) or a matrix file (`"entries"`).
pub fn load<S: Scalar>(path: &Path) -> CliResult<Loaded<S>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let context = |e: String| CliError(format!("{}: {e}", path.display()));
    if value.get("entries").is_some() {
        let json: MatrixJson = serde_json::from_value(value).map_err(|e| context(e.to_string()))?;
        let matrix = json.decode::<S>().map_err(|e| context(e.to_string()))?;
        Ok(Loaded { form: matrix.to_exterior(), matrix: Some(matrix) })
    } else if value.get("terms").is_some() {
        let json: FormJson = serde_json::from_value(value).map_err(|e| context(e.to_string()))?;
        let form = Form::from_json(&json).map_err(|e| context(e.to_string()))?;
        Ok(Loaded { form, matrix: None })
    } else {
        Err(context("neither a form (\"terms\") nor a matrix (\"entries\") file".into()))
    }
}

/// `{ "value", "re", "im", "float": [re, im] }`.
pub fn scalar_json<S: Scalar>(c: &S) -> Value {
    let f = c.to_c64();
    json!({
        "value": c.to_string(),
        "re": c.re().to_repr(),
        "im": c.im().to_repr(),
        "float": [f.re, f.im],
    })
}

pub fn matrix_rows<S: Scalar>(m: &Matrix<S>) -> Value {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|c| json!([c.re().to_repr(), c.im().to_repr()])).collect::<Value>())
        .collect()
}

pub fn form_json<S: Scalar>(form: &Form<S>) -> Value {
    serde_json::to_value(form.to_json()).expect("form serialization cannot fail")
}

pub fn matrix_json(m: &MatrixJson) -> Value {
    serde_json::to_value(m).expect("matrix serialization cannot fail")
}
