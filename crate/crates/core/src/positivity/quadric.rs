//! Dinew's criterion: a `(2,2)`-form on `ℂ⁴` with Ω-matrix `A` is positive
//! iff `z̄ A zᵀ ≥ 0` on the quadric `z_1z_6 + z_2z_5 + z_3z_4 = 0`.
//!
//! The quadric is the image of the signed minors map `(b, c) ↦ b ∧ c`, so the
//! minimisation runs over `(b, c) ∈ ℂ⁸` and never leaves the quadric.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{stream_rng, PositivityVerdict, CHUNK};
use crate::combinatorics::omega_signs;
use crate::exterior::{Complex64, Scalar};
use crate::linalg::Matrix;
use crate::ppmatrix::Omega6Form;

/// Number of multistart descents.
pub const RESTARTS: usize = 32;
/// Iterations per descent.
pub const DESCENT_STEPS: usize = 200;

/// Index pairs `(p, q)` (0-based) of `Ω_1..Ω_6`.
const OMEGA_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `(b₁c₂−b₂c₁, b₁c₃−b₃c₁, b₁c₄−b₄c₁, b₂c₃−b₃c₂, −b₂c₄+b₄c₂, b₃c₄−b₄c₃)`.
pub fn minors_map<S: Scalar>(b: &[S; 4], c: &[S; 4]) -> [S; 6] {
    let s = omega_signs();
    std::array::from_fn(|k| {
        let (p, q) = OMEGA_PAIRS[k];
        (b[p].clone() * c[q].clone() - b[q].clone() * c[p].clone()).signed(s[k])
    })
}

/// `z_1z_6 + z_2z_5 + z_3z_4`.
pub fn dinew_quadric<S: Scalar>(z: &[S]) -> S {
    z[0].clone() * z[5].clone() + z[1].clone() * z[4].clone() + z[2].clone() * z[3].clone()
}

/// A pair `(b, c)` with `minors_map(b, c) = z` for a point on the quadric.
///
/// Uses the largest Plücker coordinate `m_{pq}`: `b_j = m_{jp}/m_{pq}`,
/// `c_j = m_{jq}`. Returns `None` for `z = 0`. Off the quadric the result is
/// only an approximate preimage.
pub fn minors_preimage<S: Scalar>(z: &[S; 6]) -> Option<([S; 4], [S; 4])> {
    let s = omega_signs();
    let mut m: [[S; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for (k, &(p, q)) in OMEGA_PAIRS.iter().enumerate() {
        let v = z[k].clone().signed(s[k]);
        m[q][p] = -v.clone();
        m[p][q] = v;
    }
    let (best, _) = OMEGA_PAIRS
        .iter()
        .map(|&(p, q)| ((p, q), m[p][q].pivot_weight()))
        .filter(|&(_, w)| w > 0.0)
        .fold(None, |acc: Option<((usize, usize), f64)>, x| match acc {
            Some(a) if a.1 >= x.1 => Some(a),
            _ => Some(x),
        })?;
    let (p, q) = best;
    let inv = m[p][q].inv()?;
    let b = std::array::from_fn(|j| m[j][p].clone() * inv.clone());
    let c = std::array::from_fn(|j| m[j][q].clone());
    Some((b, c))
}

fn normal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn normalize(z: &mut [Complex64]) -> f64 {
    let norm = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        z.iter_mut().for_each(|c| *c /= norm);
    }
    norm
}

/// Unit point on the quadric. Half the draws go through the minors map, the
/// other half through a chart: random coordinates (each zero with
/// probability 1/4) and one coordinate solved from the constraint.
pub(crate) fn sample_quadric_point(rng: &mut ChaCha8Rng) -> [Complex64; 6] {
    loop {
        let mut z = if rng.random_bool(0.5) {
            let b: [Complex64; 4] = std::array::from_fn(|_| normal(rng));
            let c: [Complex64; 4] = std::array::from_fn(|_| normal(rng));
            minors_map(&b, &c)
        } else {
            let mut z: [Complex64; 6] = std::array::from_fn(|_| normal(rng));
            for c in z.iter_mut() {
                if rng.random_bool(0.25) {
                    *c = Complex64::new(0.0, 0.0);
                }
            }
            let pair = rng.random_range(0..3);
            let (x, y) = if rng.random_bool(0.5) { (pair, 5 - pair) } else { (5 - pair, pair) };
            if z[y].norm_sqr() == 0.0 {
                z[y] = normal(rng);
            }
            z[x] = Complex64::new(0.0, 0.0);
            let rest = dinew_quadric(&z);
            z[x] = -rest / z[y];
            z
        };
        if normalize(&mut z) > 1e-8 {
            return z;
        }
    }
}

/// Seeded unit point on the quadric.
pub fn quadric_sample(seed: u64) -> [Complex64; 6] {
    sample_quadric_point(&mut stream_rng(seed, 0))
}

fn rayleigh(a: &Matrix<Complex64>, z: &[Complex64]) -> f64 {
    let num = crate::ppmatrix::quadratic_form(a, z).re;
    let den: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    num / den
}

/// Value and Wirtinger gradient `∂g/∂(b̄, c̄)` of `g(b, c) = R(minors_map(b, c))`.
fn value_and_gradient(a: &Matrix<Complex64>, b: &[Complex64; 4], c: &[Complex64; 4]) -> (f64, [Complex64; 8]) {
    let s = omega_signs();
    let m = minors_map(b, c);
    let den: f64 = m.iter().map(|x| x.norm_sqr()).sum();
    let am: Vec<Complex64> = (0..6).map(|j| (0..6).map(|k| a[(j, k)] * m[k]).sum()).collect();
    let num: f64 = m.iter().zip(&am).map(|(x, y)| (x.conj() * y).re).sum();
    let g = num / den;
    let r: Vec<Complex64> = (0..6).map(|k| (am[k] - m[k] * g) / den).collect();
    let mut grad = [Complex64::new(0.0, 0.0); 8];
    for (k, &(p, q)) in OMEGA_PAIRS.iter().enumerate() {
        let sk = f64::from(s[k]);
        // m_k = s_k (b_p c_q − b_q c_p)
        grad[p] += (c[q] * sk).conj() * r[k];
        grad[q] += (-c[p] * sk).conj() * r[k];
        grad[4 + q] += (b[p] * sk).conj() * r[k];
        grad[4 + p] += (-b[q] * sk).conj() * r[k];
    }
    (g, grad)
}

/// Orthonormalises `(b, c)`; `b ∧ c` changes only by a positive scale.
fn regauge(b: &mut [Complex64; 4], c: &mut [Complex64; 4]) {
    normalize(b);
    let proj: Complex64 = b.iter().zip(c.iter()).map(|(x, y)| x.conj() * y).sum();
    for (y, x) in c.iter_mut().zip(b.iter()) {
        *y -= proj * x;
    }
    normalize(c);
}

const DIM: usize = 16;

fn to_real(b: &[Complex64; 4], c: &[Complex64; 4]) -> [f64; DIM] {
    std::array::from_fn(|k| {
        let v = if k < 8 { b[k / 2] } else { c[(k - 8) / 2] };
        if k % 2 == 0 {
            v.re
        } else {
            v.im
        }
    })
}

fn from_real(x: &[f64; DIM]) -> ([Complex64; 4], [Complex64; 4]) {
    (
        std::array::from_fn(|j| Complex64::new(x[2 * j], x[2 * j + 1])),
        std::array::from_fn(|j| Complex64::new(x[8 + 2 * j], x[9 + 2 * j])),
    )
}

/// Value and real gradient in the 16 real coordinates of `(b, c)`.
fn real_gradient(a: &Matrix<Complex64>, x: &[f64; DIM]) -> (f64, [f64; DIM]) {
    let (b, c) = from_real(x);
    let (g, w) = value_and_gradient(a, &b, &c);
    let grad = std::array::from_fn(|k| {
        let v = w[k / 2];
        if k % 2 == 0 {
            2.0 * v.re
        } else {
            2.0 * v.im
        }
    });
    (g, grad)
}

/// Solves `(H + μI) d = r` by Cholesky; `None` unless `H + μI` is positive definite.
fn damped_solve(h: &[[f64; DIM]; DIM], mu: f64, r: &[f64; DIM]) -> Option<[f64; DIM]> {
    let mut l = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..=i {
            let mut sum = h[i][j] + if i == j { mu } else { 0.0 };
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[i][i] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    let mut y = [0.0; DIM];
    for i in 0..DIM {
        let s: f64 = (0..i).map(|k| l[i][k] * y[k]).sum();
        y[i] = (r[i] - s) / l[i][i];
    }
    let mut d = [0.0; DIM];
    for i in (0..DIM).rev() {
        let s: f64 = (i + 1..DIM).map(|k| l[k][i] * d[k]).sum();
        d[i] = (y[i] - s) / l[i][i];
    }
    Some(d)
}

/// Descent on `(b, c)` with damped Newton steps (finite-difference Hessian
/// of the analytic gradient) and an adaptive damping that shrinks the step
/// on failure; returns the final point on the quadric and its Rayleigh value.
fn descend(a: &Matrix<Complex64>, start: &[Complex64; 6], steps: usize) -> Option<(f64, [Complex64; 6])> {
    const H: f64 = 1e-5;
    let (mut b, mut c) = minors_preimage(start)?;
    regauge(&mut b, &mut c);
    let mut x = to_real(&b, &c);
    let (mut g, mut grad) = real_gradient(a, &x);
    let mut mu = 1.0;
    for _ in 0..steps {
        if grad.iter().map(|v| v * v).sum::<f64>() < 1e-30 {
            break;
        }
        let mut hess = [[0.0; DIM]; DIM];
        for k in 0..DIM {
            let (mut xp, mut xm) = (x, x);
            xp[k] += H;
            xm[k] -= H;
            let (gp, gm) = (real_gradient(a, &xp).1, real_gradient(a, &xm).1);
            for i in 0..DIM {
                hess[i][k] = (gp[i] - gm[i]) / (2.0 * H);
            }
        }
        for i in 0..DIM {
            for k in 0..i {
                let v = 0.5 * (hess[i][k] + hess[k][i]);
                hess[i][k] = v;
                hess[k][i] = v;
            }
        }
        let rhs = grad.map(|v| -v);
        let mut accepted = false;
        for _ in 0..60 {
            if let Some(d) = damped_solve(&hess, mu, &rhs) {
                let (mut nb, mut nc) = from_real(&std::array::from_fn(|k| x[k] + d[k]));
                regauge(&mut nb, &mut nc);
                let nx = to_real(&nb, &nc);
                let (ng, ngrad) = real_gradient(a, &nx);
                if ng < g {
                    x = nx;
                    g = ng;
                    grad = ngrad;
                    mu = (mu / 3.0).max(1e-12);
                    accepted = true;
                    break;
                }
            }
            mu *= 4.0;
        }
        if !accepted {
            break;
        }
    }
    let (b, c) = from_real(&x);
    let mut z = minors_map(&b, &c);
    normalize(&mut z);
    Some((rayleigh(a, &z), z))
}

/// Minimises the Rayleigh quotient `z̄Azᵀ / |z|²` over the quadric by seeded
/// sampling followed by [`RESTARTS`] descents of [`DESCENT_STEPS`] steps.
///
/// `min` and the witness are reported on the unit sphere.
pub fn dinew_test<S: Scalar>(a: &Omega6Form<S>, samples: usize, seed: u64, tol: f64) -> PositivityVerdict {
    let af = a.entries().map(Scalar::to_c64);

    let mut starts: Vec<(f64, [Complex64; 6])> = (0..6)
        .map(|k| {
            let z: [Complex64; 6] = std::array::from_fn(|j| Complex64::new(if j == k { 1.0 } else { 0.0 }, 0.0));
            (rayleigh(&af, &z), z)
        })
        .collect();

    let chunks = samples.div_ceil(CHUNK);
    let sampled: Vec<Vec<(f64, [Complex64; 6])>> = (0..chunks)
        .into_par_iter()
        .map(|ch| {
            let mut rng = stream_rng(seed, ch as u64);
            let count = CHUNK.min(samples - ch * CHUNK);
            let mut local: Vec<(f64, [Complex64; 6])> = (0..count)
                .map(|_| {
                    let z = sample_quadric_point(&mut rng);
                    (rayleigh(&af, &z), z)
                })
                .collect();
            local.sort_by(|x, y| x.0.total_cmp(&y.0));
            local.truncate(RESTARTS);
            local
        })
        .collect();
    starts.extend(sampled.into_iter().flatten());
    starts.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut best = starts.first().map(|(v, z)| (*v, z.to_vec()));
    let refined: Vec<Option<(f64, [Complex64; 6])>> = starts
        .par_iter()
        .take(RESTARTS)
        .map(|(_, z)| descend(&af, z, DESCENT_STEPS))
        .collect();
    for (v, z) in refined.into_iter().flatten() {
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, z.to_vec()));
        }
    }
    PositivityVerdict::from_best(best, 6 + samples, seed, tol)
}

/// Rayleigh quotient of a witness against an Ω-matrix.
pub fn quadric_witness_value<S: Scalar>(a: &Omega6Form<S>, z: &[Complex64]) -> f64 {
    rayleigh(&a.entries().map(Scalar::to_c64), z)
}
