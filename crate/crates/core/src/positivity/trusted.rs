//! Seeded generator of (2,2)-forms on `ℂ⁴` that are positive by construction.
//!
//! Recipes: nonnegative rational combinations of `decomposable_pp` terms,
//! `α_a` with `|a|² ≤ 4` pulled back by an integer basis change, and sums of
//! the two. This is a subset of the positive cone, possibly a proper one.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::stream_rng;
use crate::error::Result;
use crate::exterior::{decomposable_pp, CoVector, Form, GaussianRational, Scalar};
use crate::gallery::alpha_a;
use crate::linalg::Matrix;
use crate::ppmatrix::BasisChange;

const TRUSTED_STREAM: u64 = 0x7275;
const MAX_TERMS: usize = 6;
const PYTHAGOREAN: [(i64, i64, i64); 5] = [(1, 0, 1), (3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrustedRecipe {
    DecomposableSum,
    BasisChangedAlpha,
    Mixed,
}

impl TrustedRecipe {
    pub const ALL: [TrustedRecipe; 3] = [Self::DecomposableSum, Self::BasisChangedAlpha, Self::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            Self::DecomposableSum => "decomposable_sum",
            Self::BasisChangedAlpha => "basis_changed_alpha",
            Self::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrustedPositive {
    pub form: Form<GaussianRational>,
    pub recipe: TrustedRecipe,
    pub seed: u64,
    pub description: String,
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn positive_weight(rng: &mut ChaCha8Rng) -> (i64, i64) {
    (rng.random_range(1..=5), rng.random_range(1..=3))
}

fn gaussian_covector(rng: &mut ChaCha8Rng) -> CoVector<GaussianRational> {
    loop {
        let c: Vec<GaussianRational> = (0..4)
            .map(|_| GaussianRational::from_ints(rng.random_range(-3..=3), rng.random_range(-3..=3)))
            .collect();
        if c.iter().any(|x| !x.is_zero()) {
            return CoVector::new(c);
        }
    }
}

fn decomposable_sum(rng: &mut ChaCha8Rng, notes: &mut Vec<String>) -> Result<Form<GaussianRational>> {
    let terms = rng.random_range(1..=MAX_TERMS);
    let mut acc = Form::zero(4);
    for _ in 0..terms {
        let (num, den) = positive_weight(rng);
        let frame = [gaussian_covector(rng), gaussian_covector(rng)];
        let term = decomposable_pp(4, &frame)?;
        acc = acc.add(&term.scale(&GaussianRational::new(ratio(num, den), ratio(0, 1))))?;
    }
    notes.push(format!("{terms} decomposable terms"));
    Ok(acc)
}

/// `a` with `|a|² ≤ 4`; one draw in three lies on `|a| = 2`.
fn alpha_parameter(rng: &mut ChaCha8Rng) -> GaussianRational {
    if rng.random_range(0..3) == 0 {
        let (u, v, w) = PYTHAGOREAN[rng.random_range(0..PYTHAGOREAN.len())];
        let (u, v) = if rng.random_bool(0.5) { (v, u) } else { (u, v) };
        let su = if rng.random_bool(0.5) { -1 } else { 1 };
        let sv = if rng.random_bool(0.5) { -1 } else { 1 };
        GaussianRational::from_fractions(2 * su * u, w, 2 * sv * v, w)
    } else {
        let q = rng.random_range(1..=4);
        loop {
            let x = rng.random_range(-2 * q..=2 * q);
            let y = rng.random_range(-2 * q..=2 * q);
            if x * x + y * y <= 4 * q * q {
                return GaussianRational::from_fractions(x, q, y, q);
            }
        }
    }
}

fn integer_basis(rng: &mut ChaCha8Rng) -> BasisChange<GaussianRational> {
    loop {
        let m = Matrix::from_fn(4, 4, |_, _| GaussianRational::from_ints(rng.random_range(-2..=2), rng.random_range(-1..=1)));
        if let Ok(b) = BasisChange::new(m) {
            return b;
        }
    }
}

fn basis_changed_alpha(rng: &mut ChaCha8Rng, notes: &mut Vec<String>) -> Result<Form<GaussianRational>> {
    let a = alpha_parameter(rng);
    let basis = integer_basis(rng);
    let lex = alpha_a(a.clone()).to_lex().change_basis(&basis)?;
    notes.push(format!("alpha_a with a = {a} under an integer basis change"));
    Ok(lex.to_exterior())
}

fn build(recipe: TrustedRecipe, rng: &mut ChaCha8Rng, notes: &mut Vec<String>) -> Result<Form<GaussianRational>> {
    match recipe {
        TrustedRecipe::DecomposableSum => decomposable_sum(rng, notes),
        TrustedRecipe::BasisChangedAlpha => basis_changed_alpha(rng, notes),
        TrustedRecipe::Mixed => {
            let (num, den) = positive_weight(rng);
            let base = basis_changed_alpha(rng, notes)?.scale(&GaussianRational::new(ratio(num, den), ratio(0, 1)));
            base.add(&decomposable_sum(rng, notes)?)
        }
    }
}

/// Trusted positive form number `seed`; the recipe cycles with the seed.
pub fn trusted_positive(seed: u64) -> Result<TrustedPositive> {
    let recipe = TrustedRecipe::ALL[(seed % 3) as usize];
    trusted_positive_with(recipe, seed)
}

pub fn trusted_positive_with(recipe: TrustedRecipe, seed: u64) -> Result<TrustedPositive> {
    let mut rng = stream_rng(seed, TRUSTED_STREAM);
    let mut notes = Vec::new();
    let form = build(recipe, &mut rng, &mut notes)?;
    Ok(TrustedPositive {
        form,
        recipe,
        seed,
        description: format!("{} (seed {seed}): {}", recipe.name(), notes.join("; ")),
    })
}
