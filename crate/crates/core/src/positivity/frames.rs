//! Positivity by direct evaluation against decomposable test forms.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{stream_rng, PositivityVerdict, CHUNK};
use crate::combinatorics::IndexTable;
use crate::error::{Error, Result};
use crate::exterior::{positivity_pairing, CoVector, Complex64, Form, Scalar};

/// Relative tolerance on the imaginary part of float pairings.
const PAIRING_IMAG_TOL: f64 = 1e-8;

/// A frame `γ_1, …, γ_k` of holomorphic covectors.
pub type Frame = Vec<CoVector<Complex64>>;

pub(crate) fn random_covector(rng: &mut ChaCha8Rng, n: usize) -> CoVector<Complex64> {
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|c| *c /= norm);
    }
    CoVector::new(v)
}

fn flatten(frame: &[CoVector<Complex64>]) -> Vec<Complex64> {
    frame.iter().flat_map(|g| g.coefficients().iter().copied()).collect()
}

/// Splits a flattened witness back into `k` covectors on `ℂ^n`.
pub fn unflatten_frame(witness: &[Complex64], n: usize) -> Result<Frame> {
    if n == 0 || witness.len() % n != 0 {
        return Err(Error::Parse(format!("witness length {} is not a multiple of n = {n}", witness.len())));
    }
    Ok(witness.chunks(n).map(|c| CoVector::new(c.to_vec())).collect())
}

/// Re-evaluates a frame witness from a [`sample_frames_test`] verdict.
pub fn frame_witness_value<S: Scalar>(alpha: &Form<S>, witness: &[Complex64]) -> Result<f64> {
    let frame = unflatten_frame(witness, alpha.n())?;
    positivity_pairing(&alpha.to_float(), &frame, PAIRING_IMAG_TOL)
}

fn validate<S: Scalar>(alpha: &Form<S>) -> Result<Option<usize>> {
    if alpha.is_zero() {
        return Ok(None);
    }
    let (p, q) = alpha.bidegree().ok_or(Error::MixedBidegree)?;
    if p != q {
        return Err(Error::WrongBidegree {
            expected: (p, p),
            found: (p, q),
        });
    }
    if !alpha.is_real(crate::ppmatrix::HERMITIAN_TOL) {
        return Err(Error::NotReal);
    }
    Ok(Some(p))
}

/// Evaluates the pairing of `α` with all coordinate frames and `samples`
/// seeded random unit frames.
pub fn sample_frames_test<S: Scalar>(alpha: &Form<S>, samples: usize, seed: u64, tol: f64) -> Result<PositivityVerdict> {
    sample_frames_test_with(alpha, samples, seed, tol, &[])
}

/// [`sample_frames_test`] with additional caller-supplied frames.
pub fn sample_frames_test_with<S: Scalar>(
    alpha: &Form<S>,
    samples: usize,
    seed: u64,
    tol: f64,
    extra: &[Frame],
) -> Result<PositivityVerdict> {
    let Some(p) = validate(alpha)? else {
        return Ok(PositivityVerdict::from_best(Some((0.0, Vec::new())), 0, seed, tol));
    };
    let n = alpha.n();
    let k = n - p;
    let alpha_f = alpha.to_float();
    let eval = |frame: &[CoVector<Complex64>]| positivity_pairing(&alpha_f, frame, PAIRING_IMAG_TOL);

    let mut best: Option<(f64, Vec<Complex64>)> = None;
    let consider = |best: &mut Option<(f64, Vec<Complex64>)>, value: f64, frame: &[CoVector<Complex64>]| {
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            *best = Some((value, flatten(frame)));
        }
    };

    let coords = IndexTable::get(k, n)?;
    for j in coords.entries() {
        let frame: Frame = j.entries().map(|e| CoVector::coordinate(e, n)).collect();
        let v = eval(&frame)?;
        consider(&mut best, v, &frame);
    }
    for frame in extra {
        if frame.len() != k {
            return Err(Error::WrongCovectorCount {
                expected: k,
                found: frame.len(),
            });
        }
        let v = eval(frame)?;
        consider(&mut best, v, frame);
    }

    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<Option<(f64, Vec<Complex64>)>> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Option<(f64, Vec<Complex64>)>> {
            let mut rng = stream_rng(seed, c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut local: Option<(f64, Vec<Complex64>)> = None;
            for _ in 0..count {
                let frame: Frame = (0..k).map(|_| random_covector(&mut rng, n)).collect();
                let v = eval(&frame)?;
                if local.as_ref().is_none_or(|(b, _)| v < *b) {
                    local = Some((v, flatten(&frame)));
                }
            }
            Ok(local)
        })
        .collect::<Result<_>>()?;
    for (v, w) in partial.into_iter().flatten() {
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, w));
        }
    }
    let total = coords.len() + extra.len() + samples;
    Ok(PositivityVerdict::from_best(best, total, seed, tol))
}
