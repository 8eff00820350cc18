use std::collections::BTreeMap;
use std::path::Path;

use ppforms::exterior::{Form, GaussianRational, Real, Scalar};
use ppforms::gallery;
use ppforms::positivity::{
    dinew_test, frame_witness_value, has_reduced_zeros, quadric_witness_value, reduce_basis_22, reduced_core_check,
    reduced_witness_value, sample_frames_test, square_split, PositivityVerdict, Reduced44,
};
use ppforms::ppmatrix::{product22_coefficient, MatrixLoaded, Omega6Form, PPMatrixForm};
use serde_json::{json, Value};

use crate::io::{form_json, load, matrix_json, matrix_rows, scalar_json, usage, CliResult};
use crate::{Method, Outcome};

const AGREE_TOL: f64 = 1e-9;

fn agree<S: Scalar>(values: &[S]) -> bool {
    values.windows(2).all(|w| w[0].approx_eq(&w[1], AGREE_TOL))
}

fn top_degree_report<S: Scalar>(paths: Vec<(&str, S)>) -> Value {
    let values: Vec<S> = paths.iter().map(|(_, v)| v.clone()).collect();
    let coefficient = &values[0];
    json!({
        "coefficient": coefficient.to_string(),
        "float": coefficient.to_c64().re,
        "value": scalar_json(coefficient),
        "paths": paths.iter().map(|(name, v)| (name.to_string(), Value::String(v.to_string()))).collect::<serde_json::Map<_, _>>(),
        "agree": agree(&values),
        "mode": S::MODE,
    })
}

fn lex_matrix<S: Scalar>(loaded: Option<MatrixLoaded<S>>, form: &Form<S>) -> CliResult<PPMatrixForm<S>> {
    Ok(match loaded {
        Some(MatrixLoaded::Lex(m)) => m,
        Some(MatrixLoaded::Omega6(m)) => m.to_lex(),
        None => PPMatrixForm::from_exterior(form)?,
    })
}

pub fn square<S: Scalar>(path: &Path) -> CliResult<Outcome> {
    let loaded = load::<S>(path)?;
    let form = &loaded.form;
    let n = form.n();
    if n % 2 != 0 || !form.expect_bidegree(n / 2, n / 2).is_ok() {
        return Err(usage(format!("square needs a (p,p)-form on C^(2p); got dimension {n}")));
    }
    let matrix = lex_matrix(loaded.matrix, form)?;
    let mut paths = vec![
        ("matrix", matrix.square_coefficient()),
        ("wedge", form.wedge(form)?.volume_coefficient()?),
    ];
    if matrix.p() == 2 {
        let omega = matrix.to_omega6()?;
        paths.push(("omega_product", product22_coefficient(&omega, &omega)));
    }
    let report = top_degree_report(paths);
    eprintln!("square coefficient {}", report["coefficient"].as_str().unwrap_or_default());
    Ok(Outcome::success(report))
}

pub fn wedge<S: Scalar>(a: &Path, b: &Path) -> CliResult<Outcome> {
    let la = load::<S>(a)?;
    let lb = load::<S>(b)?;
    if la.form.n() != lb.form.n() {
        return Err(usage(format!(
            "dimension mismatch: {} vs {}; rebuild one with gallery build --dim",
            la.form.n(),
            lb.form.n()
        )));
    }
    let n = la.form.n();
    let product = la.form.wedge(&lb.form)?;
    if !product.is_zero() && product.bidegree() != Some((n, n)) {
        let (p, q) = product.bidegree().unwrap_or((0, 0));
        eprintln!("wedge is a ({p},{q})-form on C^{n}");
        return Ok(Outcome::success(form_json(&product)));
    }
    let mut paths = vec![("wedge", product.volume_coefficient()?)];
    let is22 = |f: &Form<S>| n == 4 && f.bidegree() == Some((2, 2));
    if is22(&la.form) && is22(&lb.form) {
        let oa = Omega6Form::from_exterior(&la.form)?;
        let ob = Omega6Form::from_exterior(&lb.form)?;
        paths.push(("omega_product", product22_coefficient(&oa, &ob)));
    }
    let report = top_degree_report(paths);
    eprintln!("top-degree coefficient {}", report["coefficient"].as_str().unwrap_or_default());
    Ok(Outcome::success(report))
}

fn require_22<S: Scalar>(form: &Form<S>, method: &str) -> CliResult<()> {
    if form.n() != 4 || form.expect_bidegree(2, 2).is_err() {
        return Err(usage(format!("--method {method} needs a (2,2)-form on C^4")));
    }
    Ok(())
}

pub fn check<S: Scalar>(path: &Path, method: Method, samples: usize, seed: u64, tol: f64) -> CliResult<Outcome> {
    let loaded = load::<S>(path)?;
    let form = &loaded.form;
    eprintln!("check: method {}, seed {seed}, samples {samples}, tol {tol:e}", method.name());
    let mut extra = serde_json::Map::new();
    let (verdict, witness_value): (PositivityVerdict, Option<f64>) = match method {
        Method::Frames => {
            let v = sample_frames_test(form, samples, seed, tol)?;
            let value = v.witness.as_ref().map(|w| frame_witness_value(form, w)).transpose()?;
            (v, value)
        }
        Method::Dinew => {
            require_22(form, "dinew")?;
            let omega = Omega6Form::from_exterior(form)?;
            let v = dinew_test(&omega, samples, seed, tol);
            let value = v.witness.as_ref().map(|w| quadric_witness_value(&omega, w));
            (v, value)
        }
        Method::Reduced => {
            require_22(form, "reduced")?;
            let red = reduce_basis_22(form)?;
            let v = reduced_core_check(&red.omega, samples, seed, tol)?;
            let core = Reduced44::from_omega_core(&red.omega)?;
            let value = v.witness.as_ref().map(|w| reduced_witness_value(&core, w)).transpose()?.map(|(value, _)| value);
            extra.insert("basis".into(), matrix_rows(red.basis.matrix()));
            (v, value)
        }
    };
    let mut report = verdict.to_json();
    let obj = report.as_object_mut().expect("verdict is an object");
    obj.insert("method".into(), json!(method.name()));
    obj.insert("mode".into(), json!(S::MODE));
    obj.insert("witness_value".into(), json!(witness_value));
    obj.extend(extra);
    match witness_value {
        Some(value) => eprintln!("violation: witness re-evaluates to {value:.12e}"),
        None => eprintln!("no violation found; minimum {:.6e}", verdict.min),
    }
    Ok(if verdict.is_violated() { Outcome::violation(report) } else { Outcome::success(report) })
}

pub fn reduce<S: Scalar>(path: &Path) -> CliResult<Outcome> {
    let loaded = load::<S>(path)?;
    require_22(&loaded.form, "reduce")?;
    let red = reduce_basis_22(&loaded.form)?;
    let split = square_split(&red.omega);
    let zeros = has_reduced_zeros(&red.omega);
    let split_holds = split.total.approx_eq(&(split.core.clone() + split.corner.clone()), AGREE_TOL);
    eprintln!("reduce: {} pair attempts, zeros verified {zeros}, split holds {split_holds}", red.attempts);
    let report = json!({
        "basis": matrix_rows(red.basis.matrix()),
        "omega": matrix_json(&red.omega.to_json()),
        "attempts": red.attempts,
        "zeros_verified": zeros,
        "split": {
            "total": split.total.to_string(),
            "core": split.core.to_string(),
            "corner": split.corner.to_string(),
            "holds": split_holds,
        },
        "mode": S::MODE,
    });
    Ok(Outcome::success(report))
}

pub fn gallery_list() -> Outcome {
    let entries: Value = gallery::ENTRIES
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "description": e.description,
                "defaults": e.defaults.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
            })
        })
        .collect();
    Outcome::success(entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GalleryFormat {
    Form,
    Matrix,
}

pub fn parse_param(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

pub fn gallery_build<S: Scalar>(name: &str, params: &[(String, String)], format: GalleryFormat, dim: Option<usize>) -> CliResult<Outcome> {
    let overrides: BTreeMap<String, String> = params.iter().cloned().collect();
    let entry = gallery::build(name, &overrides)?;
    for e in &entry.expected {
        eprintln!("{}: expected {} = {} ({})", entry.name, e.name, e.value, e.note);
    }
    let convert = |c: &GaussianRational| S::parse_parts(&c.re.to_repr(), &c.im.to_repr());
    let payload = match format {
        GalleryFormat::Form => {
            let mut form = entry.form.clone();
            if let Some(m) = dim {
                form = form.extend_dimension(m)?;
            }
            let terms = form.terms().map(|((j, k), c)| Ok((*j, *k, convert(c)?))).collect::<ppforms::Result<Vec<_>>>()?;
            form_json(&Form::<S>::from_terms(form.n(), terms)?)
        }
        GalleryFormat::Matrix => {
            if dim.is_some() {
                return Err(usage("--dim applies to --format form only"));
            }
            let m = entry.matrix.as_ref().ok_or_else(|| usage(format!("{name} has no matrix representation")))?;
            let m = m.map_to(|c| convert(c).expect("rational parts always parse"))?;
            if m.p() == 2 {
                matrix_json(&m.to_omega6()?.to_json())
            } else {
                matrix_json(&m.to_json())
            }
        }
    };
    Ok(Outcome::success(payload))
}
