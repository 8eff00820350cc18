use proptest::prelude::*;

use super::*;
use crate::combinatorics::{section1_basis, MultiIndex};
use crate::linalg::Matrix;
use crate::testutil::{gaussian, q, random_covector, random_form, rng, Q};

fn mi(v: &[usize], n: usize) -> MultiIndex {
    MultiIndex::new(v, n).unwrap()
}

fn hol(v: &[usize], n: usize) -> Form<Q> {
    Form::monomial(n, mi(v, n), MultiIndex::empty(), q(1, 0)).unwrap()
}

fn idzdzbar(k: usize, n: usize) -> Form<Q> {
    Form::monomial(n, MultiIndex::singleton(k), MultiIndex::singleton(k), q(0, 1)).unwrap()
}

/// Sign and sorted word of a concatenation of symbol words, by bubble sort.
/// Holomorphic `dz_j` is symbol `j`, `dz̄_k` is symbol `n + k`.
fn word_sort(mut w: Vec<usize>) -> Option<(i8, Vec<usize>)> {
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] == w[j + 1] {
                return None;
            }
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((sign, w))
}

fn word(j: MultiIndex, k: MultiIndex, n: usize) -> Vec<usize> {
    j.entries().chain(k.entries().map(|e| n + e)).collect()
}

#[test]
fn anticommuting_covectors() {
    let a = hol(&[1], 2).wedge(&hol(&[2], 2)).unwrap();
    let b = hol(&[2], 2).wedge(&hol(&[1], 2)).unwrap();
    assert_eq!(a, b.neg());
    assert!(hol(&[1], 2).wedge(&hol(&[1], 2)).unwrap().is_zero());
}

#[test]
fn product_of_unit_forms_is_volume() {
    let v = idzdzbar(1, 2).wedge(&idzdzbar(2, 2)).unwrap();
    assert_eq!(v, Form::volume(2));
    assert_eq!(v.volume_coefficient().unwrap(), q(1, 0));
    for n in 1..=6 {
        let mut acc = idzdzbar(1, n);
        for k in 2..=n {
            acc = acc.wedge(&idzdzbar(k, n)).unwrap();
        }
        assert_eq!(acc, Form::volume(n), "n = {n}");
    }
}

#[test]
fn omega_products() {
    let basis = section1_basis();
    let omega: Vec<Form<Q>> = basis
        .iter()
        .map(|e| Form::monomial(4, e.multiindex, MultiIndex::empty(), q(e.sign as i64, 0)).unwrap())
        .collect();
    let top = hol(&[1, 2, 3, 4], 4);
    for j in 0..6 {
        for k in 0..6 {
            let w = omega[j].wedge(&omega[k]).unwrap();
            if k == 5 - j {
                assert_eq!(w, top, "Ω_{} ∧ Ω_{}", j + 1, k + 1);
            } else {
                assert!(w.is_zero(), "Ω_{} ∧ Ω_{}", j + 1, k + 1);
            }
        }
    }
}

#[test]
fn wedge_sign_matches_word_sorting() {
    let mut r = rng(1);
    for _ in 0..400 {
        let n = r.random_range(2..=7usize);
        let (p1, q1) = (r.random_range(0..=n.min(3)), r.random_range(0..=n.min(3)));
        let (p2, q2) = (r.random_range(0..=n.min(3)), r.random_range(0..=n.min(3)));
        let f = random_form(&mut r, n, p1, q1, 1);
        let g = random_form(&mut r, n, p2, q2, 1);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let ((&(j1, k1), c1), (&(j2, k2), c2)) = (f.terms().next().unwrap(), g.terms().next().unwrap());
        let mut w = word(j1, k1, n);
        w.extend(word(j2, k2, n));
        let expected = match word_sort(w) {
            None => Form::zero(n),
            Some((sign, sorted)) => {
                let j: Vec<usize> = sorted.iter().copied().filter(|&s| s <= n).collect();
                let k: Vec<usize> = sorted.iter().filter(|&&s| s > n).map(|s| s - n).collect();
                Form::monomial(n, mi(&j, n), mi(&k, n), (c1.clone() * c2.clone()).signed(sign)).unwrap()
            }
        };
        assert_eq!(f.wedge(&g).unwrap(), expected);
    }
}

#[test]
fn wedge_dimension_mismatch() {
    assert!(matches!(hol(&[1], 2).wedge(&hol(&[1], 3)), Err(crate::Error::DimensionMismatch(..))));
}

#[test]
fn conjugate_examples() {
    let f = idzdzbar(1, 3);
    assert_eq!(f.conjugate(), f);
    assert!(f.is_real(0.0));
    let g = Form::monomial(3, MultiIndex::singleton(1), MultiIndex::singleton(2), q(0, 1)).unwrap();
    assert!(!g.is_real(0.0));
    let h = g.add(&Form::monomial(3, MultiIndex::singleton(2), MultiIndex::singleton(1), q(0, 1)).unwrap()).unwrap();
    assert!(h.is_real(0.0));
}

#[test]
fn hermitian_matrices_give_real_forms() {
    let mut r = rng(2);
    for _ in 0..20 {
        let m = crate::ppmatrix::random_hermitian::<Q>(&mut r, 6, 4, 0.7);
        let f = crate::ppmatrix::PPMatrixForm::new(2, m).unwrap().to_exterior();
        assert_eq!(f.conjugate(), f);
    }
}

#[test]
fn volume_coefficient_examples() {
    for n in 1..=6 {
        assert_eq!(Form::<Q>::volume(n).volume_coefficient().unwrap(), q(1, 0));
    }
    for p in 1..=3 {
        let n = 2 * p;
        let full = MultiIndex::full(n);
        let f = Form::monomial(n, full, full, q(1, 0)).unwrap();
        assert_eq!(f.volume_coefficient().unwrap(), q(1, 0));
    }
    assert_eq!(Form::<Q>::zero(4).volume_coefficient().unwrap(), q(0, 0));
    assert!(idzdzbar(1, 2).volume_coefficient().is_err());
}

#[test]
fn decomposable_examples() {
    let e = |k| CoVector::<Q>::coordinate(k, 4);
    let d = decomposable_pp(4, &[e(1), e(2)]).unwrap();
    assert_eq!(d, idzdzbar(1, 4).wedge(&idzdzbar(2, 4)).unwrap());
    let g = CoVector::new(vec![q(1, 2), q(0, -1), q(3, 0), q(1, 1)]);
    let g2 = CoVector::new(g.coefficients().iter().map(|c| c.clone() * q(2, -1)).collect());
    assert!(decomposable_pp(4, &[g, g2]).unwrap().is_zero());
}

#[test]
fn decomposable_is_rank_one_in_omega_basis() {
    let mut r = rng(3);
    for _ in 0..30 {
        let gs = [random_covector(&mut r, 4), random_covector(&mut r, 4)];
        let f = decomposable_pp(4, &gs).unwrap();
        assert!(f.is_real(0.0));
        let a = crate::ppmatrix::Omega6Form::from_exterior(&f).unwrap();
        let m = a.entries();
        for j in 0..6 {
            assert!(!m[(j, j)].re().is_negative_beyond(0.0));
            for k in 0..6 {
                for s in 0..6 {
                    for t in 0..6 {
                        let minor = m[(j, s)].clone() * m[(k, t)].clone() - m[(j, t)].clone() * m[(k, s)].clone();
                        assert!(minor.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn pairing_of_decomposables_is_squared_determinant() {
    let mut r = rng(4);
    for (n, p) in [(2, 1), (3, 1), (4, 2), (5, 2), (6, 3)] {
        for _ in 0..6 {
            let gs: Vec<CoVector<Q>> = (0..n).map(|_| random_covector(&mut r, n)).collect();
            let alpha = decomposable_pp(n, &gs[..p]).unwrap();
            let v = positivity_pairing(&alpha, &gs[p..], 0.0).unwrap();
            let m = Matrix::from_rows(gs.iter().map(|g| g.coefficients().to_vec()).collect()).unwrap();
            assert_eq!(v, m.determinant().unwrap().norm_sqr());
        }
    }
}

#[test]
fn pairing_errors() {
    let alpha = idzdzbar(1, 3);
    assert!(matches!(
        positivity_pairing(&alpha, &[CoVector::coordinate(2, 3)], 0.0),
        Err(crate::Error::WrongCovectorCount { expected: 2, found: 1 })
    ));
    let non_real = Form::monomial(2, MultiIndex::singleton(1), MultiIndex::singleton(2), q(1, 0)).unwrap();
    assert!(matches!(
        positivity_pairing(&non_real, &[CoVector::new(vec![q(1, 0), q(1, 0)])], 0.0),
        Err(crate::Error::ImaginaryPairing(_))
    ));
}

#[test]
fn products_with_positive_one_one_forms_stay_positive() {
    let mut r = rng(5);
    for _ in 0..10 {
        let mut alpha = Form::zero(4);
        for _ in 0..3 {
            alpha = alpha.add(&decomposable_pp(4, &[random_covector(&mut r, 4)]).unwrap()).unwrap();
        }
        let mut beta = Form::zero(4);
        for _ in 0..2 {
            beta = beta.add(&decomposable_pp(4, &[random_covector(&mut r, 4)]).unwrap()).unwrap();
        }
        let ab = alpha.wedge(&beta).unwrap();
        assert!(ab.is_real(0.0));
        for _ in 0..20 {
            let frame = [random_covector(&mut r, 4), random_covector(&mut r, 4)];
            assert!(!positivity_pairing(&ab, &frame, 0.0).unwrap().is_negative_beyond(0.0));
        }
    }
}

#[test]
fn float_conversion_agrees() {
    let mut r = rng(6);
    let f = random_form(&mut r, 4, 2, 2, 5);
    let g = random_form(&mut r, 4, 2, 2, 5);
    let exact = f.wedge(&g).unwrap().volume_coefficient().unwrap().to_c64();
    let float = f.to_float().wedge(&g.to_float()).unwrap().volume_coefficient().unwrap();
    assert!((exact - float).norm() < 1e-9);
}

#[test]
fn json_round_trip_and_mode() {
    let mut r = rng(7);
    let f = random_form(&mut r, 5, 2, 1, 6).scale(&Q::from_fractions(1, 3, -2, 7));
    let s = f.to_json_string();
    assert_eq!(Form::<Q>::from_json_str(&s).unwrap(), f);
    let fl = f.to_float();
    let s = fl.to_json_string();
    assert!(Form::<Q>::from_json_str(&s).is_err());
    let back = Form::<Complex64>::from_json_str(&s).unwrap();
    assert_eq!(back, fl);
    let untagged = r#"{"n":2,"terms":[{"J":[1],"K":[2],"re":"1/2","im":"0"}]}"#;
    let g = Form::<Q>::from_json_str(untagged).unwrap();
    assert_eq!(g.coefficient(MultiIndex::singleton(1), MultiIndex::singleton(2)), Q::from_fractions(1, 2, 0, 1));
    assert!(Form::<Q>::from_json_str(r#"{"n":2,"terms":[{"J":[3],"K":[],"re":"1","im":"0"}]}"#).is_err());
    assert!(Form::<Q>::from_json_str("not json").is_err());
}

#[test]
fn scaling_by_zero_prunes() {
    let mut r = rng(8);
    let f = random_form(&mut r, 4, 1, 1, 4);
    assert!(f.scale(&q(0, 0)).is_zero());
    assert!(f.add(&f.neg()).unwrap().is_empty());
}

fn arb_form(n: usize) -> impl Strategy<Value = Form<Q>> {
    (0usize..=3, 0usize..=3, 1usize..=4, any::<u64>()).prop_map(move |(p, qd, t, seed)| {
        let mut r = rng(seed);
        random_form(&mut r, n, p.min(n), qd.min(n), t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_associative(n in 2usize..=8, seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_form(&mut r, n, 1, 1, 3);
        let g = random_form(&mut r, n, 1, 0, 3);
        let h = random_form(&mut r, n, 0, 1, 3);
        prop_assert_eq!(f.wedge(&g).unwrap().wedge(&h).unwrap(), f.wedge(&g.wedge(&h).unwrap()).unwrap());
    }

    #[test]
    fn wedge_is_graded_commutative(f in arb_form(6), g in arb_form(6)) {
        let (p1, q1) = f.bidegree().unwrap_or((0, 0));
        let (p2, q2) = g.bidegree().unwrap_or((0, 0));
        let sign = if ((p1 + q1) * (p2 + q2)) % 2 == 1 { -1 } else { 1 };
        let lhs = f.wedge(&g).unwrap();
        let rhs = g.wedge(&f).unwrap().scale(&q(sign, 0));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_is_an_involution(f in arb_form(5)) {
        prop_assert_eq!(f.conjugate().conjugate(), f);
    }

    #[test]
    fn conjugation_is_multiplicative(f in arb_form(6), g in arb_form(6)) {
        prop_assert_eq!(f.wedge(&g).unwrap().conjugate(), f.conjugate().wedge(&g.conjugate()).unwrap());
    }

    #[test]
    fn products_of_real_forms_are_real(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_form(&mut r, 5, 2, 2, 3);
        let g = random_form(&mut r, 5, 1, 1, 3);
        let (f, g) = (f.add(&f.conjugate()).unwrap(), g.add(&g.conjugate()).unwrap());
        prop_assert!(f.wedge(&g).unwrap().is_real(0.0));
    }

    #[test]
    fn nonzero_coefficients_only(f in arb_form(5), c in (-2i64..=2, -2i64..=2)) {
        let s = f.scale(&q(c.0, c.1));
        prop_assert!(s.terms().all(|(_, v)| !v.is_zero()));
        let _ = gaussian;
    }
}
