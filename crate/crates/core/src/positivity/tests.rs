use super::*;
use crate::combinatorics::MultiIndex;
use crate::exterior::{decomposable_pp, CoVector, Complex64, Form, GaussianRational, Scalar};
use crate::gallery::{alpha_a, prop_witness};
use crate::linalg::Matrix;
use crate::ppmatrix::{quadratic_form, Omega6Form, PPMatrixForm};
use crate::testutil::{gaussian, q, random_covector, rng, Q};

const TOL: f64 = DEFAULT_SIGN_TOL;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Frame whose pairing with an Ω-matrix equals `w̄ A w`.
fn frame_for(w: &[Complex64; 6]) -> Frame {
    let z: [Complex64; 6] = std::array::from_fn(|k| w[5 - k].conj());
    let (b, cc) = minors_preimage(&z).unwrap();
    vec![CoVector::new(b.to_vec()), CoVector::new(cc.to_vec())]
}

fn unit_alpha(a: f64) -> Form<Complex64> {
    alpha_a(c(a)).to_exterior()
}

#[test]
fn frames_alpha_one_positive() {
    let v = sample_frames_test(&alpha_a(q(1, 0)).to_exterior(), 2000, 0, TOL).unwrap();
    assert_eq!(v.status, Status::NoViolationFound);
    assert!(v.min >= 0.0);
    assert_eq!(v.samples, 6 + 2000);
}

#[test]
fn frames_alpha_three_with_witness() {
    let w = prop_witness(c(3.0)).unwrap();
    let v = sample_frames_test_with(&alpha_a(q(3, 0)).to_exterior(), 500, 1, TOL, &[frame_for(&w)]).unwrap();
    assert!(v.is_violated());
    assert!((v.min + 6.0).abs() < 1e-9, "{}", v.min);
    let again = frame_witness_value(&alpha_a(q(3, 0)).to_exterior(), v.witness.as_ref().unwrap()).unwrap();
    assert!((again - v.min).abs() < 1e-12);
}

#[test]
fn frames_zero_form() {
    let v = sample_frames_test(&Form::<Q>::zero(4), 100, 0, TOL).unwrap();
    assert_eq!(v.status, Status::NoViolationFound);
    assert_eq!(v.min, 0.0);
}

#[test]
fn frames_reject_non_real() {
    let f = Form::monomial(4, MultiIndex::new(&[1, 2], 4).unwrap(), MultiIndex::new(&[1, 3], 4).unwrap(), q(1, 0)).unwrap();
    assert!(matches!(sample_frames_test(&f, 10, 0, TOL), Err(crate::Error::NotReal)));
}

#[test]
fn frames_are_reproducible() {
    let f = unit_alpha(2.5);
    let a = sample_frames_test(&f, 1500, 9, TOL).unwrap();
    let b = sample_frames_test(&f, 1500, 9, TOL).unwrap();
    assert_eq!(a, b);
}

#[test]
fn frame_pairing_is_the_quadratic_form() {
    let mut r = rng(20);
    for _ in 0..20 {
        let a = PPMatrixForm::new(2, crate::ppmatrix::random_hermitian::<Q>(&mut r, 6, 3, 0.8)).unwrap().to_omega6().unwrap();
        let b: [Q; 4] = std::array::from_fn(|_| gaussian(&mut r, 3));
        let cc: [Q; 4] = std::array::from_fn(|_| gaussian(&mut r, 3));
        let z = minors_map(&b, &cc);
        let u: Vec<Q> = (0..6).map(|k| z[5 - k].conj()).collect();
        let frame = [CoVector::new(b.to_vec()), CoVector::new(cc.to_vec())];
        let pairing = crate::exterior::positivity_pairing(&a.to_exterior(), &frame, 0.0).unwrap();
        assert_eq!(Q::from_real(pairing), a.quadratic(&u));
    }
}

#[test]
fn minors_map_examples() {
    let e = |k: usize| -> [Q; 4] { std::array::from_fn(|j| if j == k { q(1, 0) } else { q(0, 0) }) };
    let z = minors_map(&e(0), &e(1));
    assert_eq!(z, [q(1, 0), q(0, 0), q(0, 0), q(0, 0), q(0, 0), q(0, 0)]);
    let mut r = rng(21);
    for _ in 0..50 {
        let b: [Q; 4] = std::array::from_fn(|_| gaussian(&mut r, 5));
        let cc: [Q; 4] = std::array::from_fn(|_| gaussian(&mut r, 5));
        assert!(dinew_quadric(&minors_map(&b, &cc)).is_zero());
        assert!(minors_map(&b, &b).iter().all(Scalar::is_zero));
    }
}

#[test]
fn minors_map_matches_displayed_formula() {
    let mut r = rng(22);
    let b: [Q; 4] = std::array::from_fn(|_| gaussian(&mut r, 5));
    let cc: [Q; 4] = std::array::from_fn(|_| gaussian(&mut r, 5));
    let m = |i: usize, j: usize| b[i - 1].clone() * cc[j - 1].clone() - b[j - 1].clone() * cc[i - 1].clone();
    let expected = [m(1, 2), m(1, 3), m(1, 4), m(2, 3), -m(2, 4), m(3, 4)];
    assert_eq!(minors_map(&b, &cc), expected);
}

#[test]
fn preimage_is_exact_on_the_quadric() {
    let mut r = rng(23);
    for _ in 0..50 {
        let b: [Q; 4] = std::array::from_fn(|_| gaussian(&mut r, 3));
        let cc: [Q; 4] = std::array::from_fn(|_| gaussian(&mut r, 3));
        let z = minors_map(&b, &cc);
        match minors_preimage(&z) {
            Some((b2, c2)) => assert_eq!(minors_map(&b2, &c2), z),
            None => assert!(z.iter().all(Scalar::is_zero)),
        }
    }
    for seed in 0..300 {
        let z = quadric_sample(seed);
        let (b, cc) = minors_preimage(&z).unwrap();
        let back = minors_map(&b, &cc);
        assert!(z.iter().zip(&back).all(|(x, y)| (x - y).norm() < 1e-9), "seed {seed}");
    }
}

#[test]
fn quadric_samples_lie_on_the_quadric() {
    let mut zero_first = 0;
    for seed in 0..10_000u64 {
        let z = quadric_sample(seed);
        assert!(dinew_quadric(&z).norm() < 1e-12, "seed {seed}");
        let norm: f64 = z.iter().map(|x| x.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        let scaled: Vec<Complex64> = z.iter().map(|x| x * 3.7).collect();
        assert!(dinew_quadric(&scaled).norm() < 1e-11);
        zero_first += usize::from(z[0].norm() == 0.0);
    }
    assert!(zero_first > 100, "z_1 = 0 in {zero_first} of 10^4 samples");
}

#[test]
fn dinew_boundary_and_identity() {
    let v = dinew_test(&alpha_a(q(2, 0)), 4000, 0, TOL);
    assert_eq!(v.status, Status::NoViolationFound);
    assert!(v.min.abs() < TOL, "{}", v.min);
    let v = dinew_test(&Omega6Form::<Q>::identity(), 2000, 0, TOL);
    assert_eq!(v.status, Status::NoViolationFound);
    assert!((v.min - 1.0).abs() < 1e-12);
}

#[test]
fn dinew_finds_the_witness_value() {
    for a in [2.5, 3.0] {
        let v = dinew_test(&alpha_a(Q::from_fractions((a * 2.0) as i64, 2, 0, 1)), 4000, 3, TOL);
        assert!(v.is_violated());
        let w = v.witness.clone().unwrap();
        assert!(dinew_quadric(&w).norm() < 1e-9);
        let omega = alpha_a(c(a));
        assert!((quadric_witness_value(&omega, &w) - v.min).abs() < 1e-12);
        let s2 = a / (w[0] * w[5]).norm();
        let scaled: Vec<Complex64> = w.iter().map(|x| x * s2.sqrt()).collect();
        let value = quadratic_form(omega.entries(), &scaled).re;
        let expected = 2.0 * a * (2.0 - a);
        assert!((value - expected).abs() < 1e-6, "a = {a}: {value} vs {expected}");
    }
}

#[test]
fn dinew_and_frames_agree_on_alpha_family() {
    for a in [0.0, 1.0, 2.0, 2.1, 3.0] {
        let omega = alpha_a(c(a));
        let d = dinew_test(&omega, 3000, 4, TOL);
        let extra: Vec<Frame> = d
            .witness
            .iter()
            .map(|w| frame_for(&std::array::from_fn(|k| w[k])))
            .collect();
        let f = sample_frames_test_with(&omega.to_exterior(), 3000, 4, TOL, &extra).unwrap();
        assert_eq!(d.is_violated(), a > 2.0, "dinew at a = {a}: {}", d.min);
        assert_eq!(f.is_violated(), a > 2.0, "frames at a = {a}: {}", f.min);
    }
}

#[test]
fn plucker_examples() {
    let e = |k| CoVector::<Q>::coordinate(k, 4);
    let z = plucker_embed(&[e(1), e(2)]).unwrap();
    let table = crate::combinatorics::IndexTable::get(2, 4).unwrap();
    for (k, v) in z.iter().enumerate() {
        let expected = if table.entry(k) == MultiIndex::new(&[3, 4], 4).unwrap() { q(1, 0) } else { q(0, 0) };
        assert_eq!(v, &expected);
    }
}

#[test]
fn plucker_p2_relates_to_minors() {
    let mut r = rng(24);
    for _ in 0..30 {
        let (g1, g2) = (random_covector(&mut r, 4), random_covector(&mut r, 4));
        let p = plucker_embed(&[g1.clone(), g2.clone()]).unwrap();
        let b: [Q; 4] = std::array::from_fn(|j| g1.coefficients()[j].clone());
        let cc: [Q; 4] = std::array::from_fn(|j| g2.coefficients()[j].clone());
        let z = minors_map(&b, &cc);
        let expected = [z[5].clone(), z[4].clone(), z[3].clone(), z[2].clone(), -z[1].clone(), z[0].clone()];
        assert_eq!(p, expected);
        let s = crate::combinatorics::omega_signs();
        let omega: Vec<Q> = (0..6).map(|k| p[k].clone().signed(s[k])).collect();
        assert!(dinew_quadric(&omega).is_zero());
    }
}

#[test]
fn plucker_p3_satisfies_quadric() {
    let mut r = rng(25);
    for _ in 0..40 {
        let gs: Vec<CoVector<Q>> = (0..3).map(|_| random_covector(&mut r, 6)).collect();
        assert!(quad_p3(&plucker_embed(&gs).unwrap()).is_zero());
    }
}

#[test]
fn alpha_a_is_already_reduced() {
    for a in [q(0, 0), q(1, 0), q(3, -2)] {
        let red = reduce_basis_22(&alpha_a(a.clone()).to_exterior()).unwrap();
        assert!(has_reduced_zeros(&red.omega));
        assert_eq!(red.attempts, 1);
        let m = red.basis.matrix();
        for k in 0..4 {
            assert_eq!(m[(0, k)], if k == 0 { q(1, 0) } else { q(0, 0) });
            assert_eq!(m[(1, k)], if k == 1 { q(1, 0) } else { q(0, 0) });
        }
        let split = square_split(&red.omega);
        assert_eq!(split.total, split.core.clone() + split.corner.clone());
    }
}

#[test]
fn reduction_of_decomposables() {
    let mut r = rng(26);
    for _ in 0..25 {
        let gs = [random_covector(&mut r, 4), random_covector(&mut r, 4)];
        let alpha = decomposable_pp(4, &gs).unwrap();
        if alpha.is_zero() {
            continue;
        }
        let red = reduce_basis_22(&alpha).unwrap();
        assert!(has_reduced_zeros(&red.omega));
        let back = red.omega.to_lex().change_basis(&crate::ppmatrix::BasisChange::new(red.basis.inverse().unwrap()).unwrap()).unwrap();
        assert_eq!(back.to_exterior(), alpha);
        let split = square_split(&red.omega);
        assert_eq!(split.total, split.core + split.corner);
    }
}

#[test]
fn reduction_of_zero() {
    let red = reduce_basis_22(&Form::<Q>::zero(4)).unwrap();
    assert_eq!(red.basis.matrix(), &Matrix::identity(4));
    assert_eq!(red.omega.entries(), &Matrix::zeros(6, 6));
}

#[test]
fn reduction_rejects_bad_input() {
    assert!(reduce_basis_22(&Form::<Q>::zero(3)).is_err());
    let f = Form::monomial(4, MultiIndex::new(&[1, 2], 4).unwrap(), MultiIndex::new(&[1, 3], 4).unwrap(), q(1, 0)).unwrap();
    assert!(reduce_basis_22(&f).is_err());
}

fn r44(lambda: [i64; 4], a: Q, b: Q, alpha: Q, beta: Q, cc: Q, d: Q) -> Reduced44<Q> {
    Reduced44 {
        lambda: lambda.map(<num_rational::BigRational as crate::exterior::Real>::from_i64),
        a,
        b,
        alpha,
        beta,
        c: cc,
        d,
    }
}

#[test]
fn reduced44_layout_round_trip() {
    let mut r = rng(27);
    let m = crate::ppmatrix::random_hermitian::<Q>(&mut r, 4, 3, 1.0);
    let red = Reduced44::from_matrix(&m).unwrap();
    assert_eq!(red.to_matrix(), m);
    assert_eq!(red.c, -m[(1, 3)].clone());
    assert_eq!(red.d, -m[(2, 3)].clone());
}

#[test]
fn war2_terms_expand_the_quadratic_form() {
    let mut r = rng(28);
    let red = Reduced44::from_matrix(&crate::ppmatrix::random_hermitian::<Q>(&mut r, 4, 3, 1.0)).unwrap();
    let am = red.to_matrix().map(Scalar::to_c64);
    for _ in 0..20 {
        let zeta = Complex64::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
        let w = Complex64::new(r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
        let (p, lin, qq) = red.war2_terms(zeta);
        let z = [c(1.0), zeta, w, -zeta * w];
        assert!(reduced_quadric(&z).norm() < 1e-12);
        let direct = quadratic_form(&am, &z).re;
        let expanded = p + 2.0 * (lin * w).re + qq * w.norm_sqr();
        assert!((direct - expanded).abs() < 1e-9, "{direct} vs {expanded}");
    }
}

use rand::Rng;

#[test]
fn reduced44_identity_block_passes() {
    let red = reduce_basis_22(&alpha_a(q(0, 0)).to_exterior()).unwrap();
    let v = reduced_core_check(&red.omega, 200, 0, TOL).unwrap();
    assert_eq!(v.status, Status::NoViolationFound);
    let core = Reduced44::from_omega_core(&red.omega).unwrap();
    assert_eq!(core.war1(0.0), [true; 4]);
}

#[test]
fn reduced44_war1_violation() {
    let z = q(0, 0);
    let red = r44([1, 1, 0, 0], q(2, 0), z.clone(), z.clone(), z.clone(), z.clone(), z);
    assert_eq!(red.war1(0.0), [false, true, true, true]);
    let v = reduced44_check(&red, 100, 0, TOL);
    assert!(v.is_violated());
    let (value, residual) = reduced_witness_value(&red, v.witness.as_ref().unwrap()).unwrap();
    assert!(residual < 1e-12);
    assert!(value <= -TOL);
}

#[test]
fn reduced44_war2_violation_only() {
    // War1 holds but b − αζ + … dominates near ζ = 0 only through ζ-terms.
    let red = r44([1, 1, 1, 1], q(0, 0), q(0, 0), q(3, 0), q(0, 0), q(0, 0), q(0, 0));
    assert_eq!(red.war1(0.0), [true; 4]);
    let (slack, _) = war2_search(&red, 100, 0);
    assert!(slack < 0.0);
    assert!(reduced44_check(&red, 100, 0, TOL).is_violated());
}

#[test]
fn reduced44_pipeline_on_decomposables() {
    let mut r = rng(29);
    for _ in 0..15 {
        let mut alpha = Form::zero(4);
        for _ in 0..3 {
            let gs = [random_covector(&mut r, 4), random_covector(&mut r, 4)];
            alpha = alpha.add(&decomposable_pp(4, &gs).unwrap()).unwrap();
        }
        let red = reduce_basis_22(&alpha).unwrap();
        let core = Reduced44::from_omega_core(&red.omega).unwrap();
        assert!(core.lambdas_nonnegative(0.0));
        assert_eq!(core.war1(0.0), [true; 4]);
        let v = reduced44_check(&core, 200, 1, TOL);
        assert_eq!(v.status, Status::NoViolationFound, "min {}", v.min);
        assert!(war2_search(&core, 200, 1).0 >= -INEQUALITY_TOL);
        let aa = inequality_aa2(&core).unwrap();
        assert!(aa.holds && aa.aa_holds);
    }
}

#[test]
fn aa2_examples() {
    let z = q(0, 0);
    let diag = r44([1, 2, 3, 4], z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone());
    let rep = inequality_aa2(&diag).unwrap();
    assert_eq!(rep.lhs, 0.0);
    assert!(rep.rhs >= 0.0 && rep.holds);

    let edge = r44([1, 1, 1, 1], q(1, 0), z.clone(), z.clone(), z.clone(), z, q(1, 0));
    assert_eq!(reduced44_check(&edge, 200, 0, TOL).status, Status::NoViolationFound);
    let rep = inequality_aa2(&edge).unwrap();
    assert_eq!((rep.lhs, rep.rhs), (4.0, 4.0));
    assert!(rep.holds);
    // 2(λ1λ4+λ2λ3) + 2(|α|²+|β|²) − 4Re(a d̄ + b c̄) = 4 − 4
    assert_eq!(rep.aa_sum, q(0, 0));
}

#[test]
fn aa_sum_closed_form() {
    let mut r = rng(30);
    for _ in 0..20 {
        let red = Reduced44::from_matrix(&crate::ppmatrix::random_hermitian::<Q>(&mut r, 4, 3, 1.0)).unwrap();
        let l = |j: usize| Q::from_real(red.lambda[j].clone());
        let two = q(2, 0);
        let expected = two.clone() * (l(0) * l(3) + l(1) * l(2))
            + two * Q::from_real(red.alpha.norm_sqr() + red.beta.norm_sqr())
            - q(4, 0) * Q::from_real((red.a.clone() * red.d.conj() + red.b.clone() * red.c.conj()).re);
        assert_eq!(inequality_aa2(&red).map(|x| x.aa_sum).unwrap_or(expected.clone()), expected);
    }
}

#[test]
fn elementary_fact_examples() {
    assert!(elementary_fact(1.0, 1.0, 1.0, 1.0).unwrap());
    assert!(elementary_fact(0.0, 0.0, 5.0, 0.0).unwrap());
    assert!(elementary_fact(2.0, 0.0, 1.0, 0.0).is_err());
    let mut r = rng(31);
    let mut checked = 0;
    while checked < 100_000 {
        let x: f64 = r.random_range(0.0..10.0);
        let y: f64 = r.random_range(0.0..10.0);
        let a1: f64 = r.random_range(0.0..=x);
        let a2: f64 = r.random_range(0.0..=x);
        if a1 + a2 > x + y {
            continue;
        }
        assert!(elementary_fact(a1, a2, x, y).unwrap(), "{a1} {a2} {x} {y}");
        checked += 1;
    }
}

#[test]
fn theorem1_examples() {
    let v = verify_theorem1(&alpha_a(q(2, 0)).to_exterior(), 0.0).unwrap();
    assert_eq!(GaussianRational::from_real(v), q(14, 0));
    assert_eq!(GaussianRational::from_real(verify_theorem1(&Form::<Q>::zero(4), 0.0).unwrap()), q(0, 0));
    let mut r = rng(32);
    for _ in 0..20 {
        let gs = [random_covector(&mut r, 4), random_covector(&mut r, 4)];
        let hs = [random_covector(&mut r, 4), random_covector(&mut r, 4)];
        let alpha = decomposable_pp(4, &gs).unwrap().add(&decomposable_pp(4, &hs).unwrap()).unwrap();
        let v = verify_theorem1(&alpha, 0.0).unwrap();
        assert!(!crate::exterior::Real::is_negative_beyond(&v, 0.0));
    }
    assert!(matches!(
        verify_theorem1(&alpha_a(q(3, 0)).to_exterior().scale(&q(1, 0)), 0.0),
        Ok(_)
    ));
}

#[test]
fn theorem1_reports_negative_squares() {
    let thmp_like = alpha_a(q(2, 0)).to_exterior().add(&alpha_a(q(-2, 0)).to_exterior()).unwrap();
    assert!(verify_theorem1(&thmp_like, 0.0).is_ok());
    let mut m = Matrix::<Q>::zeros(6, 6);
    m[(0, 0)] = q(1, 0);
    m[(5, 5)] = q(-1, 0);
    let neg = Omega6Form::new(m).unwrap().to_exterior();
    assert!(matches!(verify_theorem1(&neg, 0.0), Err(crate::Error::TheoremViolation(_))));
}

#[test]
fn trusted_pipeline_smoke() {
    for seed in 0..30 {
        let t = trusted_positive(seed).unwrap();
        let v = verify_theorem1(&t.form, 0.0).unwrap();
        assert!(!crate::exterior::Real::is_negative_beyond(&v, 0.0), "{}", t.description);
        let red = reduce_basis_22(&t.form).unwrap();
        assert!(has_reduced_zeros(&red.omega));
    }
}

#[test]
fn verdict_merge_is_associative() {
    let f = unit_alpha(2.5);
    let parts: Vec<PositivityVerdict> = (0..3).map(|s| sample_frames_test(&f, 300, s, TOL).unwrap()).collect();
    let left = parts[0].clone().merge(parts[1].clone()).merge(parts[2].clone());
    let right = parts[0].clone().merge(parts[1].clone().merge(parts[2].clone()));
    assert_eq!(left.min, right.min);
    assert_eq!(left.witness, right.witness);
}
