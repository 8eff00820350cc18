use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::scalar::{Complex64, Real, Scalar};
use crate::combinatorics::{merge_sign, MultiIndex, MAX_DIMENSION};
use crate::error::{Error, Result};

/// Key `(J, K)` of the monomial `dz_J ∧ dz̄_K`.
pub type TermKey = (MultiIndex, MultiIndex);

/// Complex exterior form on `ℂ^n`, stored as a sparse map from monomials
/// `dz_J ∧ dz̄_K` (both multi-indices sorted) to coefficients.
///
/// Zero coefficients are never stored, so two forms are equal exactly when
/// their term maps are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<S> {
    n: usize,
    terms: BTreeMap<TermKey, S>,
}

impl<S: Scalar> Form<S> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a form from `(J, K, coefficient)` triples; repeated keys add up.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiIndex, MultiIndex, S)>) -> Result<Self> {
        if n > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge(n));
        }
        let mut form = Self::zero(n);
        for (j, k, c) in terms {
            if j.max_entry() > n || k.max_entry() > n {
                return Err(Error::InvalidMultiIndex {
                    entries: j.to_vec().into_iter().chain(k.to_vec()).collect(),
                    n,
                    reason: "entry exceeds the ambient dimension",
                });
            }
            form.add_term(j, k, c);
        }
        Ok(form)
    }

    /// The monomial `c · dz_J ∧ dz̄_K`.
    pub fn monomial(n: usize, j: MultiIndex, k: MultiIndex, c: S) -> Result<Self> {
        Self::from_terms(n, [(j, k, c)])
    }

    /// Standard volume form `dV = i dz_1∧dz̄_1 ∧ ⋯ ∧ i dz_n∧dz̄_n`.
    pub fn volume(n: usize) -> Self {
        let full = MultiIndex::full(n);
        let mut f = Self::zero(n);
        f.add_term(full, full, S::i_pow(n * n));
        f
    }

    pub(crate) fn add_term(&mut self, j: MultiIndex, k: MultiIndex, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((j, k)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, j: MultiIndex, k: MultiIndex) -> S {
        self.terms.get(&(j, k)).cloned().unwrap_or_else(S::zero)
    }

    /// `Some((p, q))` when every term has bidegree `(p, q)`; the zero form
    /// has no bidegree and returns `None`, as does a mixed form.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let (j, k) = it.next()?;
        let bd = (j.degree(), k.degree());
        it.all(|(j, k)| (j.degree(), k.degree()) == bd).then_some(bd)
    }

    /// Pure bidegree or zero.
    pub fn is_pure(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    /// Checks that the form is zero or of bidegree `(p, q)`.
    pub fn expect_bidegree(&self, p: usize, q: usize) -> Result<()> {
        if self.is_zero() {
            return Ok(());
        }
        match self.bidegree() {
            Some(bd) if bd == (p, q) => Ok(()),
            Some(found) => Err(Error::WrongBidegree {
                expected: (p, q),
                found,
            }),
            None => Err(Error::MixedBidegree),
        }
    }

    fn check_pure(&self) -> Result<()> {
        if self.is_pure() {
            Ok(())
        } else {
            Err(Error::MixedBidegree)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for ((j, k), c) in &other.terms {
            out.add_term(*j, *k, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n);
        for ((j, k), v) in &self.terms {
            out.add_term(*j, *k, v.clone() * c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(key, c)| (*key, -c.clone())).collect(),
        }
    }

    /// Exterior product.
    ///
    /// For monomials, `dz_J∧dz̄_K ∧ dz_L∧dz̄_M = (−1)^{|K||L|} σ(J,L) σ(K,M)
    /// dz_{J∪L}∧dz̄_{K∪M}` where `σ` is the merge sign; repeated indices give 0.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        self.check_pure()?;
        other.check_pure()?;
        let mut out = Self::zero(self.n);
        for ((j1, k1), c1) in &self.terms {
            for ((j2, k2), c2) in &other.terms {
                if !j1.is_disjoint(*j2) || !k1.is_disjoint(*k2) {
                    continue;
                }
                let mut sign = merge_sign(*j1, *j2) * merge_sign(*k1, *k2);
                if (k1.degree() * j2.degree()) % 2 == 1 {
                    sign = -sign;
                }
                out.add_term(j1.union(*j2), k1.union(*k2), (c1.clone() * c2.clone()).signed(sign));
            }
        }
        Ok(out)
    }

    /// `self ∧ self ∧ ⋯` (`k` factors); `k = 0` gives the constant 1.
    pub fn wedge_power(&self, k: usize) -> Result<Self> {
        let mut out = Self::from_terms(self.n, [(MultiIndex::empty(), MultiIndex::empty(), S::one())])?;
        for _ in 0..k {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    /// Complex conjugate: `conj(c dz_J∧dz̄_K) = (−1)^{|J||K|} c̄ dz_K∧dz̄_J`.
    pub fn conjugate(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|((j, k), c)| {
                    let sign = if (j.degree() * k.degree()) % 2 == 1 { -1 } else { 1 };
                    ((*k, *j), c.conj().signed(sign))
                })
                .collect(),
        }
    }

    /// `conjugate(self) == self`, exactly for exact scalars and up to the
    /// relative tolerance `tol` for floats.
    pub fn is_real(&self, tol: f64) -> bool {
        let conj = self.conjugate();
        if S::EXACT {
            return conj == *self;
        }
        let zero = S::zero();
        let keys = self.terms.keys().chain(conj.terms.keys());
        for key in keys {
            let a = self.terms.get(key).unwrap_or(&zero);
            let b = conj.terms.get(key).unwrap_or(&zero);
            if !a.approx_eq(b, tol) {
                return false;
            }
        }
        true
    }

    /// Coefficient `c` with `self = c · dV` for a top-degree form.
    ///
    /// `dV` equals `i^{n²} dz_1∧⋯∧dz_n∧dz̄_1∧⋯∧dz̄_n`; for even `n` the
    /// factor is 1.
    pub fn volume_coefficient(&self) -> Result<S> {
        self.expect_bidegree(self.n, self.n)?;
        let full = MultiIndex::full(self.n);
        // dV = i^{n²} dz_full ∧ dz̄_full, so divide by i^{n²}, i.e. multiply by i^{-n²}
        let inv = S::i_pow((4 - (self.n * self.n) % 4) % 4);
        Ok(self.coefficient(full, full) * inv)
    }

    /// Same terms viewed on `ℂ^m` for `m ≥ n`.
    pub fn extend_dimension(&self, m: usize) -> Result<Self> {
        if m < self.n {
            return Err(Error::DimensionMismatch(self.n, m));
        }
        if m > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge(m));
        }
        Ok(Self {
            n: m,
            terms: self.terms.clone(),
        })
    }

    pub fn to_float(&self) -> Form<Complex64> {
        let mut out = Form::zero(self.n);
        for ((j, k), c) in &self.terms {
            out.add_term(*j, *k, c.to_c64());
        }
        out
    }
}

/// Holomorphic covector `γ = Σ c_j dz_j` on `ℂ^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoVector<S> {
    coefficients: Vec<S>,
}

impl<S: Scalar> CoVector<S> {
    pub fn new(coefficients: Vec<S>) -> Self {
        Self { coefficients }
    }

    /// `dz_k` (1-based) on `ℂ^n`.
    pub fn coordinate(k: usize, n: usize) -> Self {
        Self::new((1..=n).map(|i| if i == k { S::one() } else { S::zero() }).collect())
    }

    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    /// `γ` as a (1,0)-form.
    pub fn to_form(&self) -> Form<S> {
        let mut f = Form::zero(self.n());
        for (i, c) in self.coefficients.iter().enumerate() {
            f.add_term(MultiIndex::singleton(i + 1), MultiIndex::empty(), c.clone());
        }
        f
    }

    pub fn to_float(&self) -> CoVector<Complex64> {
        CoVector::new(self.coefficients.iter().map(Scalar::to_c64).collect())
    }
}

fn common_dimension<S: Scalar>(gammas: &[CoVector<S>]) -> Result<Option<usize>> {
    let Some(first) = gammas.first() else {
        return Ok(None);
    };
    for g in gammas {
        if g.n() != first.n() {
            return Err(Error::DimensionMismatch(first.n(), g.n()));
        }
    }
    Ok(Some(first.n()))
}

/// `γ_1 ∧ ⋯ ∧ γ_k` as a (k,0)-form.
pub fn wedge_covectors<S: Scalar>(n: usize, gammas: &[CoVector<S>]) -> Result<Form<S>> {
    if let Some(m) = common_dimension(gammas)? {
        if m != n {
            return Err(Error::DimensionMismatch(n, m));
        }
    }
    let mut out = Form::from_terms(n, [(MultiIndex::empty(), MultiIndex::empty(), S::one())])?;
    for g in gammas {
        out = out.wedge(&g.to_form())?;
    }
    Ok(out)
}

/// The decomposable form `iγ_1∧γ̄_1 ∧ ⋯ ∧ iγ_k∧γ̄_k` on `ℂ^n`.
///
/// Computed as `i^{k²} (γ_1∧⋯∧γ_k) ∧ conj(γ_1∧⋯∧γ_k)`; reordering the
/// factors contributes `(−1)^{k(k−1)/2} i^k = i^{k²}`.
pub fn decomposable_pp<S: Scalar>(n: usize, gammas: &[CoVector<S>]) -> Result<Form<S>> {
    let g = wedge_covectors(n, gammas)?;
    let k = gammas.len();
    Ok(g.wedge(&g.conjugate())?.scale(&S::i_pow(k * k)))
}

/// Real part of the volume coefficient of `α ∧ iγ_1∧γ̄_1 ∧ ⋯ ∧ iγ_{n−p}∧γ̄_{n−p}`.
///
/// For exact scalars the imaginary part must vanish exactly; floats allow
/// `tol` relative to the magnitude of the result.
pub fn positivity_pairing<S: Scalar>(alpha: &Form<S>, gammas: &[CoVector<S>], tol: f64) -> Result<S::Real> {
    let n = alpha.n();
    let p = match alpha.bidegree() {
        Some((p, q)) if p == q => p,
        Some((p, q)) => {
            return Err(Error::WrongBidegree {
                expected: (p, p),
                found: (p, q),
            })
        }
        None if alpha.is_zero() => n - gammas.len().min(n),
        None => return Err(Error::MixedBidegree),
    };
    if gammas.len() + p != n {
        return Err(Error::WrongCovectorCount {
            expected: n - p,
            found: gammas.len(),
        });
    }
    let test = decomposable_pp(n, gammas)?;
    let value = alpha.wedge(&test)?.volume_coefficient()?;
    let im = value.im().to_f64();
    let imaginary = if S::EXACT {
        !value.im().eq(&<S::Real as Real>::zero())
    } else {
        im.abs() > tol * value.re().to_f64().abs().max(1.0)
    };
    if imaginary {
        return Err(Error::ImaginaryPairing(im));
    }
    Ok(value.re())
}
