//! Named forms with closed-form expected values.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::combinatorics::{IndexTable, MultiIndex};
use crate::error::{Error, Result};
use crate::exterior::{Complex64, Form, GaussianRational, Real, Scalar};
use crate::linalg::Matrix;
use crate::positivity::{plucker_embed, quad_p3, random_covector};
use crate::ppmatrix::{product22_coefficient, Omega6Form, PPMatrixForm};

/// Positions (1-based, lexicographic) carrying `μ` in the p = 3 form.
pub const THMP_MU_POSITIONS: [usize; 6] = [2, 5, 10, 11, 16, 19];

/// Ω-identity plus `a` at (1,6) and `ā` at (6,1).
pub fn alpha_a<S: Scalar>(a: S) -> Omega6Form<S> {
    let mut m = Matrix::identity(6);
    m[(0, 5)] = a.clone();
    m[(5, 0)] = a.conj();
    Omega6Form::new(m).expect("hermitian by construction")
}

/// Quadric point with `z̄ A_a z = 2|a|(2 − |a|)`: `z_1 = z_2 = √|a|`,
/// `z_5 = −z_6 = ā/√|a|`, `z_3 = z_4 = 0`.
pub fn prop_witness(a: Complex64) -> Result<[Complex64; 6]> {
    if a.norm() == 0.0 {
        return Err(Error::InvalidParameter("prop_witness needs a ≠ 0".into()));
    }
    let r = Complex64::new(a.norm().sqrt(), 0.0);
    let t = a.conj() / r;
    let zero = Complex64::new(0.0, 0.0);
    Ok([r, r, zero, zero, t, -t])
}

fn require_positive<R: Real>(name: &str, v: &R) -> Result<()> {
    if v.is_negative_beyond(0.0) || *v == R::zero() {
        return Err(Error::InvalidParameter(format!("{name} must be positive, got {}", v.to_repr())));
    }
    Ok(())
}

/// The p = 3 matrix: `λ` at positions 1 and 20, `μ` at
/// [`THMP_MU_POSITIONS`], `a` at (1,20) and (20,1).
pub fn thmp_form_p3<S: Scalar>(lambda: S::Real, mu: S::Real, a: S::Real) -> Result<PPMatrixForm<S>> {
    require_positive("lambda", &lambda)?;
    require_positive("mu", &mu)?;
    require_positive("a", &a)?;
    let mut m = Matrix::zeros(20, 20);
    m[(0, 0)] = S::from_real(lambda.clone());
    m[(19, 19)] = S::from_real(lambda);
    for k in THMP_MU_POSITIONS {
        m[(k - 1, k - 1)] = S::from_real(mu.clone());
    }
    m[(0, 19)] = S::from_real(a.clone());
    m[(19, 0)] = S::from_real(a);
    PPMatrixForm::new(3, m)
}

/// `Σ_{k=7}^{2p} i dz_k∧dz̄_k` on `ℂ^{2p}`.
pub fn beta_padding<S: Scalar>(p: usize) -> Result<Form<S>> {
    if p < 4 {
        return Err(Error::InvalidParameter(format!("beta_padding needs p ≥ 4, got {p}")));
    }
    let n = 2 * p;
    Form::from_terms(
        n,
        (7..=n).map(|k| (MultiIndex::singleton(k), MultiIndex::singleton(k), S::i())),
    )
}

/// `α ∧ β^{p−3}` on `ℂ^{2p}` for the p = 3 form `α`.
pub fn thmp_lift<S: Scalar>(p: usize, lambda: S::Real, mu: S::Real, a: S::Real) -> Result<Form<S>> {
    let beta = beta_padding::<S>(p)?;
    let alpha = thmp_form_p3::<S>(lambda, mu, a)?.to_exterior().extend_dimension(2 * p)?;
    alpha.wedge(&beta.wedge_power(p - 3)?)
}

/// Checks `z̄Az ≥ 2(λ+μ−a)|z_1z_20| − tol·|z|²` for `z` on the p = 3 quadric.
pub fn thmp_lower_bound_check(lambda: f64, mu: f64, a: f64, z: &[Complex64], tol: f64) -> Result<bool> {
    if z.len() != 20 {
        return Err(Error::DimensionMismatch(z.len(), 20));
    }
    let norm2: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    let residual = quad_p3(z).norm();
    if residual > tol * norm2.max(1.0) {
        return Err(Error::OffQuadric(residual));
    }
    let m = thmp_form_p3::<Complex64>(lambda, mu, a)?;
    let value = crate::ppmatrix::quadratic_form(m.entries(), z).re;
    let bound = 2.0 * (lambda + mu - a) * (z[0] * z[19]).norm();
    Ok(value >= bound - tol * norm2.max(1.0))
}

/// Unit point on `z_1z_20 − z_10z_11 + z_5z_16 − z_2z_19 = 0`: half from
/// Plücker vectors of random frames, half from solving one monomial pair
/// after zeroing random coordinates.
pub fn thmp_quadric_point(rng: &mut ChaCha8Rng) -> [Complex64; 20] {
    const PAIRS: [(usize, usize, f64); 4] = [(1, 20, 1.0), (10, 11, -1.0), (5, 16, 1.0), (2, 19, -1.0)];
    loop {
        let mut z: [Complex64; 20] = if rng.random_bool(0.5) {
            let frame: Vec<_> = (0..3).map(|_| random_covector(rng, 6)).collect();
            let v = plucker_embed(&frame).expect("three covectors on ℂ⁶");
            std::array::from_fn(|k| v[k])
        } else {
            let mut z: [Complex64; 20] = std::array::from_fn(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
            for c in z.iter_mut() {
                if rng.random_bool(0.2) {
                    *c = Complex64::new(0.0, 0.0);
                }
            }
            let (x, y, s) = PAIRS[rng.random_range(0..4)];
            let (x, y) = if rng.random_bool(0.5) { (x, y) } else { (y, x) };
            if z[y - 1].norm() == 0.0 {
                z[y - 1] = Complex64::new(1.0, 0.0);
            }
            z[x - 1] = Complex64::new(0.0, 0.0);
            let rest = quad_p3(&z);
            z[x - 1] = -rest / (z[y - 1] * s);
            z
        };
        let norm = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            z.iter_mut().for_each(|c| *c /= norm);
            return z;
        }
    }
}

/// Parses `"2"`, `"-1/2"`, `"3i"`, `"1/2+3i"`, `"1-2.5i"` or `"re,im"`.
pub fn parse_complex<S: Scalar>(s: &str) -> Result<S> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((re, im)) = s.split_once(',') {
        return S::parse_parts(re, im);
    }
    let Some(body) = s.strip_suffix('i') else {
        return S::parse_parts(&s, "0");
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.strip_prefix('+').unwrap_or(other),
    };
    S::parse_parts(re, im)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expected {
    pub name: &'static str,
    pub value: GaussianRational,
    pub note: &'static str,
}

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub parameters: BTreeMap<String, String>,
    pub form: Form<GaussianRational>,
    /// Ω-matrix for p = 2 entries, lexicographic matrix otherwise (when defined).
    pub matrix: Option<PPMatrixForm<GaussianRational>>,
    pub expected: Vec<Expected>,
}

pub struct GalleryInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub defaults: &'static [(&'static str, &'static str)],
}

pub const ENTRIES: [GalleryInfo; 4] = [
    GalleryInfo {
        name: "alpha_a",
        description: "(2,2)-form on C^4 with Omega-matrix I + a E_16 + conj(a) E_61; positive iff |a| <= 2",
        defaults: &[("a", "2"), ("b", "-2")],
    },
    GalleryInfo {
        name: "thmp_p3",
        description: "(3,3)-form on C^6, positive for a <= lambda + mu, with square 2(lambda^2 + 3mu^2 - a^2)",
        defaults: &[("lambda", "2"), ("mu", "1"), ("a", "3")],
    },
    GalleryInfo {
        name: "thmp_lift",
        description: "alpha ^ beta^(p-3) on C^(2p) built from thmp_p3",
        defaults: &[("p", "4"), ("lambda", "2"), ("mu", "1"), ("a", "3")],
    },
    GalleryInfo {
        name: "beta_padding",
        description: "(1,1)-form i(dz_7^dzbar_7 + ... + dz_2p^dzbar_2p) on C^(2p)",
        defaults: &[("p", "4")],
    },
];

pub fn info(name: &str) -> Result<&'static GalleryInfo> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown gallery entry {name:?}")))
}

type Q = GaussianRational;

fn real(v: &num_rational::BigRational) -> Q {
    Q::from_real(v.clone())
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

fn param_usize(params: &BTreeMap<String, String>, key: &str) -> Result<usize> {
    let raw = &params[key];
    raw.parse()
        .map_err(|_| Error::InvalidParameter(format!("{key} must be a nonnegative integer, got {raw:?}")))
}

fn param_real(params: &BTreeMap<String, String>, key: &str) -> Result<num_rational::BigRational> {
    let v: Q = parse_complex(&params[key])?;
    if !num_traits::Zero::is_zero(&v.im) {
        return Err(Error::InvalidParameter(format!("{key} must be real")));
    }
    Ok(v.re)
}

/// Builds entry `name`; missing parameters take their defaults.
pub fn build(name: &str, overrides: &BTreeMap<String, String>) -> Result<GalleryEntry> {
    let info = info(name)?;
    let mut params: BTreeMap<String, String> = info.defaults.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    for (k, v) in overrides {
        if !params.contains_key(k) {
            return Err(Error::InvalidParameter(format!("{name} has no parameter {k:?}")));
        }
        params.insert(k.clone(), v.clone());
    }
    let two = Q::from_ints(2, 0);
    let (form, matrix, expected) = match info.name {
        "alpha_a" => {
            let a: Q = parse_complex(&params["a"])?;
            let b: Q = parse_complex(&params["b"])?;
            let omega = alpha_a(a.clone());
            let square = two.clone() * (Q::from_ints(3, 0) + Q::from_real(a.norm_sqr()));
            let product = two * (Q::from_ints(3, 0) + Q::from_real((a * b.conj()).re));
            let expected = vec![
                Expected {
                    name: "square",
                    value: square,
                    note: "2(3 + |a|^2)",
                },
                Expected {
                    name: "product_with_alpha_b",
                    value: product,
                    note: "2(3 + Re(a conj(b)))",
                },
            ];
            (omega.to_exterior(), Some(omega.to_lex()), expected)
        }
        "thmp_p3" => {
            let (l, m, a) = (param_real(&params, "lambda")?, param_real(&params, "mu")?, param_real(&params, "a")?);
            let square = thmp_square(&l, &m, &a);
            let mat = thmp_form_p3::<Q>(l, m, a)?;
            let expected = vec![Expected {
                name: "square",
                value: square,
                note: "2(lambda^2 + 3mu^2 - a^2)",
            }];
            (mat.to_exterior(), Some(mat), expected)
        }
        "thmp_lift" => {
            let p = param_usize(&params, "p")?;
            let (l, m, a) = (param_real(&params, "lambda")?, param_real(&params, "mu")?, param_real(&params, "a")?);
            let square = thmp_square(&l, &m, &a) * Q::from_ints(factorial(2 * p.max(3) - 6), 0);
            let form = thmp_lift::<Q>(p, l, m, a)?;
            let matrix = PPMatrixForm::from_exterior(&form)?;
            let expected = vec![Expected {
                name: "square",
                value: square,
                note: "2(lambda^2 + 3mu^2 - a^2) (2p-6)!",
            }];
            (form, Some(matrix), expected)
        }
        "beta_padding" => {
            let p = param_usize(&params, "p")?;
            let form = beta_padding::<Q>(p)?;
            let expected = vec![Expected {
                name: "top_power",
                value: Q::from_ints(factorial(2 * p - 6), 0),
                note: "beta^(2p-6) ^ (i dz_1^dzbar_1) ^ ... ^ (i dz_6^dzbar_6) = (2p-6)! dV",
            }];
            (form, None, expected)
        }
        _ => unreachable!("ENTRIES and build cover the same names"),
    };
    Ok(GalleryEntry {
        name: info.name,
        parameters: params,
        form,
        matrix,
        expected,
    })
}

fn thmp_square(l: &num_rational::BigRational, m: &num_rational::BigRational, a: &num_rational::BigRational) -> Q {
    let (l, m, a) = (real(l), real(m), real(a));
    Q::from_ints(2, 0) * (l.clone() * l + Q::from_ints(3, 0) * m.clone() * m - a.clone() * a)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub path: &'static str,
    pub expected: GaussianRational,
    pub computed: GaussianRational,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.expected == self.computed
    }
}

/// Recomputes every expected value through the generic exterior engine
/// and, where one exists, the matrix formula.
pub fn verify(entry: &GalleryEntry) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for e in &entry.expected {
        let mut push = |path, computed| {
            out.push(Check {
                name: e.name,
                path,
                expected: e.value.clone(),
                computed,
            })
        };
        match e.name {
            "square" => {
                push("exterior", entry.form.wedge(&entry.form)?.volume_coefficient()?);
                if let Some(m) = &entry.matrix {
                    push("matrix", m.square_coefficient());
                }
            }
            "product_with_alpha_b" => {
                let b: Q = parse_complex(&entry.parameters["b"])?;
                let ob = alpha_a(b);
                push("exterior", entry.form.wedge(&ob.to_exterior())?.volume_coefficient()?);
                let oa = entry.matrix.as_ref().expect("alpha_a stores its matrix").to_omega6()?;
                push("matrix", product22_coefficient(&oa, &ob));
            }
            "top_power" => {
                let p = param_usize(&entry.parameters, "p")?;
                let n = 2 * p;
                let mut acc = entry.form.wedge_power(2 * p - 6)?;
                for k in 1..=6 {
                    let t = Form::monomial(n, MultiIndex::singleton(k), MultiIndex::singleton(k), Q::i())?;
                    acc = acc.wedge(&t)?;
                }
                push("exterior", acc.volume_coefficient()?);
            }
            other => return Err(Error::Logic(format!("no check for expected value {other}"))),
        }
    }
    Ok(out)
}

/// `true` when the lexicographic table pairs each quadric monomial with
/// complementary multi-indices: positions (1,20), (10,11), (5,16), (2,19).
pub fn thmp_positions_consistent() -> Result<bool> {
    let t = IndexTable::get(3, 6)?;
    Ok([(1, 20), (10, 11), (5, 16), (2, 19)]
        .iter()
        .all(|&(x, y)| t.complement_position(x - 1) == Some(y - 1)))
}
