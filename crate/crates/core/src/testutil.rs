use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::combinatorics::MultiIndex;
use crate::exterior::{CoVector, Form, GaussianRational, Scalar};

pub type Q = GaussianRational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(re: i64, im: i64) -> Q {
    Q::from_ints(re, im)
}

pub fn gaussian(rng: &mut ChaCha8Rng, r: i64) -> Q {
    q(rng.random_range(-r..=r), rng.random_range(-r..=r))
}

pub fn random_index(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> MultiIndex {
    let mut v: Vec<usize> = sample(rng, n, deg).into_iter().map(|k| k + 1).collect();
    v.sort_unstable();
    MultiIndex::new(&v, n).unwrap()
}

/// Up to `terms` random monomials of bidegree `(p, q)`.
pub fn random_form(rng: &mut ChaCha8Rng, n: usize, p: usize, qd: usize, terms: usize) -> Form<Q> {
    let t: Vec<_> = (0..terms)
        .map(|_| (random_index(rng, n, p), random_index(rng, n, qd), gaussian(rng, 3)))
        .collect();
    Form::from_terms(n, t).unwrap()
}

pub fn random_covector(rng: &mut ChaCha8Rng, n: usize) -> CoVector<Q> {
    CoVector::new((0..n).map(|_| gaussian(rng, 3)).collect())
}
