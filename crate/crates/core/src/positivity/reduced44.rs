//! The 4×4 problem left after the basis reduction.
//!
//! A hermitian
//! ```text
//!     λ1   a    b    α
//!     ā    λ2   β   −c
//!     b̄    β̄    λ3  −d
//!     ᾱ   −c̄   −d̄    λ4
//! ```
//! is nonnegative on `z_1z_4 + z_2z_3 = 0` iff `λ_j ≥ 0`, the four bounds
//! `|a| ≤ √(λ1λ2)`, `|b| ≤ √(λ1λ3)`, `|c| ≤ √(λ2λ4)`, `|d| ≤ √(λ3λ4)` hold,
//! and for every `ζ ∈ ℂ`
//! `|b − αζ + βζ̄ + c|ζ|²|² ≤ (λ1 + 2Re(aζ) + λ2|ζ|²)(λ3 + 2Re(dζ) + λ4|ζ|²)`.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{stream_rng, PositivityVerdict};
use crate::error::{Error, Result};
use crate::exterior::{Complex64, Real, Scalar};
use crate::linalg::Matrix;
use crate::ppmatrix::{quadratic_form, Omega6Form, HERMITIAN_TOL};

pub const ZETA_RADII: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0];
pub const ZETA_ANGLES: usize = 24;
const REFINE_STARTS: usize = 8;
const REFINE_STEPS: usize = 60;

/// Relative tolerance for the float inequality checks.
pub const INEQUALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Reduced44<S: Scalar> {
    pub lambda: [S::Real; 4],
    pub a: S,
    pub b: S,
    pub alpha: S,
    pub beta: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Reduced44<S> {
    pub fn from_matrix(m: &Matrix<S>) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::BadShape {
                rows: m.rows(),
                cols: m.cols(),
                expected: 4,
            });
        }
        m.check_hermitian(HERMITIAN_TOL)?;
        Ok(Self {
            lambda: std::array::from_fn(|j| m[(j, j)].re()),
            a: m[(0, 1)].clone(),
            b: m[(0, 2)].clone(),
            alpha: m[(0, 3)].clone(),
            beta: m[(1, 2)].clone(),
            c: -m[(1, 3)].clone(),
            d: -m[(2, 3)].clone(),
        })
    }

    /// Central block `(a_jk)_{j,k=2..5}` of a reduced Ω-matrix.
    pub fn from_omega_core(omega: &Omega6Form<S>) -> Result<Self> {
        let m = Matrix::from_fn(4, 4, |j, k| omega.a(j + 2, k + 2).clone());
        Self::from_matrix(&m)
    }

    pub fn to_matrix(&self) -> Matrix<S> {
        let l = |j: usize| S::from_real(self.lambda[j].clone());
        let rows = vec![
            vec![l(0), self.a.clone(), self.b.clone(), self.alpha.clone()],
            vec![self.a.conj(), l(1), self.beta.clone(), -self.c.clone()],
            vec![self.b.conj(), self.beta.conj(), l(2), -self.d.clone()],
            vec![self.alpha.conj(), -self.c.conj(), -self.d.conj(), l(3)],
        ];
        Matrix::from_rows(rows).expect("4x4 by construction")
    }

    /// Largest entry magnitude, at least 1; scales float tolerances.
    fn scale(&self) -> f64 {
        let m = self.to_matrix();
        (0..4)
            .flat_map(|j| (0..4).map(move |k| (j, k)))
            .map(|(j, k)| m[(j, k)].to_c64().norm())
            .fold(1.0, f64::max)
    }

    pub fn lambdas_nonnegative(&self, tol: f64) -> bool {
        self.lambda.iter().all(|l| !l.is_negative_beyond(tol))
    }

    /// The four bounds `|a|² ≤ λ1λ2`, `|b|² ≤ λ1λ3`, `|c|² ≤ λ2λ4`,
    /// `|d|² ≤ λ3λ4` (exact for exact scalars).
    pub fn war1(&self, tol: f64) -> [bool; 4] {
        let l = &self.lambda;
        let check = |x: &S, i: usize, j: usize| !(l[i].clone() * l[j].clone() - x.norm_sqr()).is_negative_beyond(tol);
        [
            check(&self.a, 0, 1),
            check(&self.b, 0, 2),
            check(&self.c, 1, 3),
            check(&self.d, 2, 3),
        ]
    }

    fn float_parts(&self) -> FloatParts {
        FloatParts {
            l: std::array::from_fn(|j| self.lambda[j].to_f64()),
            a: self.a.to_c64(),
            b: self.b.to_c64(),
            alpha: self.alpha.to_c64(),
            beta: self.beta.to_c64(),
            c: self.c.to_c64(),
            d: self.d.to_c64(),
            scale: self.scale(),
        }
    }

    /// `(P, L, Q)` at `ζ`: `z̄Az = P + 2Re(L w) + Q|w|²` for `z = (1, ζ, w, −ζw)`.
    pub fn war2_terms(&self, zeta: Complex64) -> (f64, Complex64, f64) {
        self.float_parts().terms(zeta)
    }

    /// `(PQ − |L|²) / (scale² (1+|ζ|²)²)`; negative values violate the ζ condition.
    pub fn war2_slack(&self, zeta: Complex64) -> f64 {
        self.float_parts().slack(zeta)
    }
}

struct FloatParts {
    l: [f64; 4],
    a: Complex64,
    b: Complex64,
    alpha: Complex64,
    beta: Complex64,
    c: Complex64,
    d: Complex64,
    scale: f64,
}

impl FloatParts {
    fn terms(&self, z: Complex64) -> (f64, Complex64, f64) {
        let r2 = z.norm_sqr();
        let p = self.l[0] + 2.0 * (self.a * z).re + self.l[1] * r2;
        let q = self.l[2] + 2.0 * (self.d * z).re + self.l[3] * r2;
        let lin = self.b - self.alpha * z + self.beta * z.conj() + self.c * r2;
        (p, lin, q)
    }

    fn slack(&self, z: Complex64) -> f64 {
        let (p, lin, q) = self.terms(z);
        let w = (1.0 + z.norm_sqr()) * self.scale;
        (p * q - lin.norm_sqr()) / (w * w)
    }
}

/// Minimiser of `P + 2Re(L w) + Q|w|²` over `w` (or a point driving it
/// below `P − |P| − 1` when `Q ≤ 0`).
fn best_w(p: f64, lin: Complex64, q: f64) -> Complex64 {
    if q > 0.0 {
        -lin.conj() / q
    } else if lin.norm() > 0.0 {
        let t = (p.abs() + 1.0) / (2.0 * lin.norm());
        -lin.conj() / lin.norm() * t
    } else {
        Complex64::new(0.0, 0.0)
    }
}

fn rayleigh(a: &Matrix<Complex64>, z: &[Complex64; 4]) -> f64 {
    let den: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    quadratic_form(a, z).re / den
}

/// `z_1z_4 + z_2z_3`.
pub fn reduced_quadric(z: &[Complex64]) -> Complex64 {
    z[0] * z[3] + z[1] * z[2]
}

fn zeta_grid() -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0)];
    for &r in &ZETA_RADII[1..] {
        for k in 0..ZETA_ANGLES {
            out.push(Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / ZETA_ANGLES as f64));
        }
    }
    out
}

/// Smallest normalized ζ-slack found over the grid, `zeta_samples` seeded
/// random points and a compass refinement of the best ones.
pub fn war2_search<S: Scalar>(r: &Reduced44<S>, zeta_samples: usize, seed: u64) -> (f64, Complex64) {
    let fp = r.float_parts();
    let mut rng = stream_rng(seed, 0);
    let mut points = zeta_grid();
    for _ in 0..zeta_samples {
        let radius: f64 = (rng.sample::<f64, _>(StandardNormal)).exp();
        let angle = rng.random_range(0.0..std::f64::consts::TAU);
        points.push(Complex64::from_polar(radius, angle));
    }
    let mut scored: Vec<(f64, Complex64)> = points.into_iter().map(|z| (fp.slack(z), z)).collect();
    scored.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut best = scored[0];
    for &(v0, z0) in scored.iter().take(REFINE_STARTS) {
        let (mut v, mut z) = (v0, z0);
        let mut h = 0.25 * (1.0 + z.norm());
        for _ in 0..REFINE_STEPS {
            let moves = [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)];
            match moves.iter().map(|m| (fp.slack(z + m), z + m)).min_by(|x, y| x.0.total_cmp(&y.0)) {
                Some((nv, nz)) if nv < v => {
                    v = nv;
                    z = nz;
                }
                _ => h *= 0.5,
            }
        }
        if v < best.0 {
            best = (v, z);
        }
    }
    best
}

/// Searches for `z` on `z_1z_4 + z_2z_3 = 0` with `z̄Az < 0` along the
/// families behind the three groups of conditions: coordinate vectors
/// (`λ_j`), the four two-coordinate planes (the bounds on `|a|..|d|`), and
/// `z = (1, ζ, w, −ζw)` together with its `w → ∞` limit `(0, 0, 1, −ζ)`.
///
/// Values and witnesses are Rayleigh quotients on the unit sphere.
pub fn reduced44_check<S: Scalar>(r: &Reduced44<S>, zeta_samples: usize, seed: u64, tol: f64) -> PositivityVerdict {
    let fp = r.float_parts();
    let am = r.to_matrix().map(Scalar::to_c64);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut candidates: Vec<[Complex64; 4]> = (0..4)
        .map(|k| std::array::from_fn(|j| if j == k { one } else { zero }))
        .collect();

    let [l1, l2, l3, l4] = fp.l;
    let x = best_w(l1, fp.a, l2);
    candidates.push([one, x, zero, zero]);
    let x = best_w(l1, fp.b, l3);
    candidates.push([one, zero, x, zero]);
    let x = best_w(l2, -fp.c, l4);
    candidates.push([zero, one, zero, x]);
    let x = best_w(l3, -fp.d, l4);
    candidates.push([zero, zero, one, x]);

    let mut rng = stream_rng(seed, 1);
    let mut zetas = zeta_grid();
    for _ in 0..zeta_samples {
        zetas.push(Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * 2.0);
    }
    zetas.push(war2_search(r, zeta_samples, seed).1);
    for zeta in zetas {
        let (p, lin, q) = fp.terms(zeta);
        let w = best_w(p, lin, q);
        candidates.push([one, zeta, w, -zeta * w]);
        candidates.push([zero, zero, one, -zeta]);
    }

    let best = candidates
        .iter()
        .map(|z| (rayleigh(&am, z), z))
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(v, z)| (v, z.to_vec()));
    PositivityVerdict::from_best(best, candidates.len(), seed, tol)
}

/// Both sides of `4Re(a d̄ + b c̄) ≤ (√(λ1λ4) + √(λ2λ3))² + (|α| + |β|)²`
/// and the weaker `Σ a_jk a_{5−j,5−k} ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Aa2Report<S> {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// `Σ_{j,k=1..4} a_jk a_{5−j,5−k}`, exact for exact scalars.
    pub aa_sum: S,
    pub aa_holds: bool,
}

pub fn inequality_aa2<S: Scalar>(r: &Reduced44<S>) -> Result<Aa2Report<S>> {
    let fp = r.float_parts();
    let [l1, l2, l3, l4] = fp.l.map(|v| v.max(0.0));
    let lhs = 4.0 * ((fp.a * fp.d.conj()).re + (fp.b * fp.c.conj()).re);
    let rhs = ((l1 * l4).sqrt() + (l2 * l3).sqrt()).powi(2) + (fp.alpha.norm() + fp.beta.norm()).powi(2);
    let tol = INEQUALITY_TOL * fp.scale * fp.scale;
    let holds = lhs <= rhs + tol;

    let m = r.to_matrix();
    let mut aa_sum = S::zero();
    for j in 0..4 {
        for k in 0..4 {
            aa_sum = aa_sum + m[(j, k)].clone() * m[(3 - j, 3 - k)].clone();
        }
    }
    let aa_holds = !aa_sum.re().is_negative_beyond(tol);
    if holds && aa_sum.re().to_f64() < -tol {
        return Err(Error::Logic(format!(
            "aa2 holds (lhs {lhs}, rhs {rhs}) but the square sum is {}",
            aa_sum
        )));
    }
    Ok(Aa2Report {
        lhs,
        rhs,
        holds,
        aa_sum,
        aa_holds,
    })
}

/// For `0 ≤ a1 ≤ x`, `0 ≤ a2 ≤ x`, `a1 + a2 ≤ x + y`: is `a1² + a2² ≤ x² + y²`?
pub fn elementary_fact(a1: f64, a2: f64, x: f64, y: f64) -> Result<bool> {
    let ok = 0.0 <= a1 && a1 <= x && 0.0 <= a2 && a2 <= x && y >= 0.0 && a1 + a2 <= x + y;
    if !ok {
        return Err(Error::Precondition(format!(
            "need 0 ≤ a1, a2 ≤ x, y ≥ 0 and a1 + a2 ≤ x + y; got ({a1}, {a2}, {x}, {y})"
        )));
    }
    let slack = x * x + y * y - (a1 * a1 + a2 * a2);
    Ok(slack >= -1e-12 * (x * x + y * y).max(1.0))
}

/// [`reduced44_check`] applied to an Ω-matrix's central block.
pub fn reduced_core_check<S: Scalar>(omega: &Omega6Form<S>, zeta_samples: usize, seed: u64, tol: f64) -> Result<PositivityVerdict> {
    Ok(reduced44_check(&Reduced44::from_omega_core(omega)?, zeta_samples, seed, tol))
}

/// Re-evaluates a 4-vector witness: `(Rayleigh value, quadric residual)`.
pub fn reduced_witness_value<S: Scalar>(r: &Reduced44<S>, z: &[Complex64]) -> Result<(f64, f64)> {
    let z: [Complex64; 4] = z
        .try_into()
        .map_err(|_| Error::Parse(format!("witness has {} entries, expected 4", z.len())))?;
    let am = r.to_matrix().map(Scalar::to_c64);
    Ok((rayleigh(&am, &z), reduced_quadric(&z).norm()))
}
