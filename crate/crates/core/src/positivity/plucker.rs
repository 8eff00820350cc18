use crate::combinatorics::{IndexTable, MultiIndex};
use crate::error::Result;
use crate::exterior::{wedge_covectors, CoVector, Form, Scalar};

/// Plücker coordinates `(γ_1∧⋯∧γ_p∧dz_J) / (dz_1∧⋯∧dz_{2p})` for `J` in
/// lexicographic order, computed with the exterior engine.
pub fn plucker_embed<S: Scalar>(gammas: &[CoVector<S>]) -> Result<Vec<S>> {
    let p = gammas.len();
    let n = 2 * p;
    let g = wedge_covectors(n, gammas)?;
    let table = IndexTable::get(p, n)?;
    let full = MultiIndex::full(n);
    table
        .entries()
        .iter()
        .map(|&j| {
            let dz_j = Form::monomial(n, j, MultiIndex::empty(), S::one())?;
            Ok(g.wedge(&dz_j)?.coefficient(full, MultiIndex::empty()))
        })
        .collect()
}

/// `z_1z_20 − z_10z_11 + z_5z_16 − z_2z_19` (1-based positions in the
/// lexicographic order of degree-3 multi-indices of `{1,…,6}`).
pub fn quad_p3<S: Scalar>(z: &[S]) -> S {
    let at = |k: usize| z[k - 1].clone();
    at(1) * at(20) - at(10) * at(11) + at(5) * at(16) - at(2) * at(19)
}
