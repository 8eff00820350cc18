//! Multi-indices, complements, the signs `ε_J` and the signed six-element
//! basis of `Λ²(ℂ⁴)*` used by the 6×6 matrix representation.
//!
//! Multi-indices are 1-based in every public surface. Internally they are
//! stored as a bit set (bit `k-1` for entry `k`), which limits the ambient
//! dimension to 64.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

pub const MAX_DIMENSION: usize = 64;

/// Strictly increasing tuple of coordinate indices.
///
/// Ordering is lexicographic on the sorted tuple (shorter prefixes first),
/// matching tuple comparison.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u64);

impl MultiIndex {
    /// Builds a multi-index from strictly increasing 1-based entries in `[1, n]`.
    pub fn new(entries: &[usize], n: usize) -> Result<Self> {
        check_dimension(n)?;
        let err = |reason| Error::InvalidMultiIndex {
            entries: entries.to_vec(),
            n,
            reason,
        };
        let mut bits = 0u64;
        let mut last = 0usize;
        for &e in entries {
            if e == 0 || e > n {
                return Err(err("entry out of range"));
            }
            if e <= last {
                return Err(err("entries not strictly increasing"));
            }
            last = e;
            bits |= 1 << (e - 1);
        }
        Ok(Self(bits))
    }

    pub const fn empty() -> Self {
        Self(0)
    }

    /// `(k)` for a 1-based coordinate `k`.
    pub fn singleton(k: usize) -> Self {
        debug_assert!((1..=MAX_DIMENSION).contains(&k));
        Self(1 << (k - 1))
    }

    /// `(1, 2, …, n)`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_DIMENSION);
        if n == MAX_DIMENSION {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Largest entry, 0 for the empty index.
    pub fn max_entry(self) -> usize {
        MAX_DIMENSION - self.0.leading_zeros() as usize
    }

    pub fn contains(self, k: usize) -> bool {
        k >= 1 && k <= MAX_DIMENSION && self.0 & (1 << (k - 1)) != 0
    }

    /// 1-based entries in increasing order.
    pub fn entries(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.entries().collect()
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    /// Set difference `{1,…,n} \ self`.
    pub fn complement(self, n: usize) -> Self {
        Self(Self::full(n).0 & !self.0)
    }

    pub(crate) fn bits(self) -> u64 {
        self.0
    }

    pub(crate) fn from_bits(bits: u64) -> Self {
        Self(bits)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries().cmp(other.entries())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n > MAX_DIMENSION {
        Err(Error::DimensionTooLarge(n))
    } else {
        Ok(())
    }
}

/// Sign of the shuffle that sorts the concatenation `(a, b)` of two disjoint
/// multi-indices: `(-1)^{#{(x, y) : x ∈ a, y ∈ b, x > y}}`.
pub fn merge_sign(a: MultiIndex, b: MultiIndex) -> i8 {
    debug_assert!(a.is_disjoint(b));
    let mut inversions = 0u32;
    let mut rest = b.bits();
    while rest != 0 {
        let k = rest.trailing_zeros();
        rest &= rest - 1;
        // entries of `a` strictly above position k
        inversions += (a.bits() >> k >> 1).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `ε_J`: the sign with `dz_J ∧ dz_{J'} = ε_J dz_1 ∧ ⋯ ∧ dz_n`, where `J'`
/// is the complement of `J` in `{1,…,n}`.
pub fn epsilon_in(j: MultiIndex, n: usize) -> i8 {
    merge_sign(j, j.complement(n))
}

/// `ε_J` for `J` of degree `p` living in `ℂ^{2p}`.
pub fn epsilon(j: MultiIndex) -> i8 {
    epsilon_in(j, 2 * j.degree())
}

pub fn complement(j: MultiIndex, n: usize) -> MultiIndex {
    j.complement(n)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All degree-`p` multi-indices of `{1,…,n}` in lexicographic order, with
/// complements and signs.
#[derive(Debug, PartialEq)]
pub struct IndexTable {
    p: usize,
    n: usize,
    entries: Vec<MultiIndex>,
    complements: Vec<MultiIndex>,
    signs: Vec<i8>,
    positions: HashMap<MultiIndex, usize>,
}

impl IndexTable {
    fn build(p: usize, n: usize) -> Result<Self> {
        check_dimension(n)?;
        if p > n {
            return Err(Error::InvalidDegree { p, n });
        }
        let mut entries = Vec::with_capacity(binomial(n, p));
        let mut current: Vec<usize> = (1..=p).collect();
        loop {
            entries.push(MultiIndex::new(&current, n)?);
            // advance to the next combination in lexicographic order
            let Some(i) = (0..p).rev().find(|&i| current[i] < n - p + i + 1) else {
                break;
            };
            current[i] += 1;
            for j in i + 1..p {
                current[j] = current[j - 1] + 1;
            }
        }
        let complements: Vec<_> = entries.iter().map(|j| j.complement(n)).collect();
        let signs = entries.iter().map(|&j| epsilon_in(j, n)).collect();
        let positions = entries.iter().enumerate().map(|(i, &j)| (j, i)).collect();
        Ok(Self {
            p,
            n,
            entries,
            complements,
            signs,
            positions,
        })
    }

    /// Cached table for `(p, n)`.
    pub fn get(p: usize, n: usize) -> Result<Arc<IndexTable>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<IndexTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().expect("index table cache poisoned").get(&(p, n)) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(Self::build(p, n)?);
        cache
            .lock()
            .expect("index table cache poisoned")
            .insert((p, n), Arc::clone(&table));
        Ok(table)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[MultiIndex] {
        &self.entries
    }

    pub fn entry(&self, pos: usize) -> MultiIndex {
        self.entries[pos]
    }

    pub fn complement_of(&self, pos: usize) -> MultiIndex {
        self.complements[pos]
    }

    pub fn sign(&self, pos: usize) -> i8 {
        self.signs[pos]
    }

    /// 0-based position of `j`, if it belongs to the table.
    pub fn position(&self, j: MultiIndex) -> Option<usize> {
        self.positions.get(&j).copied()
    }

    /// Position of the complement of entry `pos`; only meaningful when `n = 2p`.
    pub fn complement_position(&self, pos: usize) -> Option<usize> {
        self.position(self.complements[pos])
    }
}

pub fn enumerate_multiindices(p: usize, n: usize) -> Result<Arc<IndexTable>> {
    IndexTable::get(p, n)
}

/// One element `Ω_j = sign · ω_{multiindex}` of the signed basis of
/// `Λ²(ℂ⁴)*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaBasisEntry {
    /// 1-based position `j` in `1..=6`.
    pub position: usize,
    pub multiindex: MultiIndex,
    pub sign: i8,
}

/// `Ω_1..Ω_6 = ω₁₂, ω₁₃, ω₁₄, ω₂₃, −ω₂₄, ω₃₄`.
///
/// The multi-indices follow the lexicographic order of `IndexTable(2, 4)`;
/// only `Ω_5` carries a sign, which makes `Ω_j ∧ Ω_{7−j}` equal to
/// `ω_1 ∧ ω_2 ∧ ω_3 ∧ ω_4` for every `j`.
pub fn section1_basis() -> [OmegaBasisEntry; 6] {
    const PAIRS: [(usize, usize, i8); 6] = [
        (1, 2, 1),
        (1, 3, 1),
        (1, 4, 1),
        (2, 3, 1),
        (2, 4, -1),
        (3, 4, 1),
    ];
    std::array::from_fn(|i| {
        let (a, b, sign) = PAIRS[i];
        OmegaBasisEntry {
            position: i + 1,
            multiindex: MultiIndex::from_bits((1 << (a - 1)) | (1 << (b - 1))),
            sign,
        }
    })
}

/// Sign vector `(s_1, …, s_6)` of [`section1_basis`].
pub fn omega_signs() -> [i8; 6] {
    section1_basis().map(|e| e.sign)
}
