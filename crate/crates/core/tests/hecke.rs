mod common;

use std::io::Cursor;

use num_complex::Complex64;
use proptest::prelude::*;
use symsq_core::arith::{divisors, gcd};
use symsq_core::hecke::*;

use common::{form, lift};

fn parse(text: &str) -> Result<MaassGL2Form, HeckeError> {
    MaassGL2Form::parse(Cursor::new(text), IngestOptions::default())
}

// h_k(α², 1, β²): the trace of Sym^k on the symmetric-square Satake parameters
fn complete_homogeneous(lambda: f64, k: u32) -> f64 {
    let s = satake(lambda);
    let xs = [s.alpha * s.alpha, Complex64::new(1.0, 0.0), s.beta * s.beta];
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=k {
        for j in 0..=k - i {
            acc += xs[0].powu(i) * xs[1].powu(j) * xs[2].powu(k - i - j);
        }
    }
    acc.re
}

#[test]
fn fixture_header_and_range() {
    let f = form();
    let header = std::fs::read_to_string(common::FIXTURE).unwrap();
    let tj: f64 = header.lines().next().unwrap().split_whitespace().nth(1).unwrap().parse().unwrap();
    assert_eq!(f.t_j(), tj);
    assert!(f.p_max() >= 1 << 19);
    assert!(!f.is_synthetic());
    assert!(f.prime_eigenvalues().iter().all(|l| l.abs() <= 2.0 + f.data_precision()));
}

#[test]
fn fixture_eigenvalues_satisfy_hecke_relations() {
    // λ(p)λ(q) = λ(pq) is built in; the real test is that the data came from a
    // form: the Rankin-Selberg mean of λ(n)² is ~ a constant times x.
    let h = lift().hecke();
    let s1: f64 = h.values()[1..=50_000].iter().map(|l| l * l).sum();
    let s2: f64 = h.values()[1..=500_000].iter().map(|l| l * l).sum();
    let (m1, m2) = (s1 / 50_000.0, s2 / 500_000.0);
    assert!((m1 / m2 - 1.0).abs() < 0.05, "{m1} vs {m2}");
}

#[test]
fn write_read_round_trip() {
    let f = MaassGL2Form::synthetic(9.5, 2000, 5);
    let mut buf = Vec::new();
    f.write(&mut buf).unwrap();
    let g = MaassGL2Form::parse(Cursor::new(&buf), IngestOptions::default()).unwrap();
    assert_eq!(g.t_j(), f.t_j());
    assert_eq!(g.primes(), f.primes());
    assert_eq!(g.prime_eigenvalues(), f.prime_eigenvalues());
    let mut again = Vec::new();
    g.write(&mut again).unwrap();
    assert_eq!(buf, again);
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(matches!(parse("2 0.5\n"), Err(HeckeError::Parse { .. })));
    assert!(matches!(parse("tj x\n"), Err(HeckeError::Parse { .. })));
    assert!(matches!(parse("tj 5\n2 0.5 7\n"), Err(HeckeError::Parse { .. })));
    assert!(matches!(parse("tj 5\n2 0.5\n4 0.1\n"), Err(HeckeError::NotPrime { .. })));
    assert!(matches!(parse("tj 5\n2 0.5\n2 0.1\n"), Err(HeckeError::Duplicate { .. })));
    assert!(matches!(parse("tj 5\n2 0.5\n3 0.1\n2 0.1\n"), Err(HeckeError::OutOfOrder { .. })));
    assert!(matches!(parse("tj 5\n2 0.5\n5 0.1\n"), Err(HeckeError::MissingPrime { p: 3 })));
    assert!(parse("tj 5\n2 0.5\n3 0.2\n").is_ok());
}

#[test]
fn ramanujan_gates() {
    let text = "tj 5\nprecision 1e-9\n2 2.1\n3 0.2\n5 -2.3\n";
    let lax = parse(text).unwrap();
    // inside Kim-Sarnak: 2·2^{7/64} ≈ 2.157 and 2·5^{7/64} ≈ 2.384
    assert!(lax.warnings().is_empty());
    let strict = MaassGL2Form::parse(Cursor::new(text), IngestOptions { strict_ramanujan: true });
    assert!(matches!(strict, Err(HeckeError::BoundViolation { p: 2, .. })));
    let wild = parse("tj 5\n2 2.5\n").unwrap();
    assert_eq!(wild.warnings().len(), 1);
    assert_eq!(wild.warnings()[0].p, 2);
}

#[test]
fn synthetic_forms_are_seeded_and_flagged() {
    let a = MaassGL2Form::synthetic(13.0, 1000, 42);
    let b = MaassGL2Form::synthetic(13.0, 1000, 42);
    let c = MaassGL2Form::synthetic(13.0, 1000, 43);
    assert_eq!(a.prime_eigenvalues(), b.prime_eigenvalues());
    assert_ne!(a.prime_eigenvalues(), c.prime_eigenvalues());
    assert!(a.is_synthetic());
    assert!(SymSquareForm::new(&a, 1000).unwrap().is_synthetic());
}

#[test]
fn out_of_range_lookups_fail() {
    let s = SymSquareForm::new(form(), 100).unwrap();
    assert!(matches!(s.a1(101), Err(HeckeError::OutOfRange { .. })));
    assert!(matches!(s.hecke().lambda(0), Err(HeckeError::OutOfRange { .. })));
    let next_prime = (form().p_max() + 1..).find(|&n| symsq_core::arith::is_prime(n)).unwrap();
    assert!(SymSquareForm::new(form(), next_prime - 1).is_ok());
    assert!(SymSquareForm::new(form(), next_prime).is_err());
}

#[test]
fn lift_parameters() {
    let s = lift();
    assert_eq!(s.t(), 2.0 * form().t_j());
    assert!((s.laplace_eigenvalue() - (1.0 + s.t() * s.t())).abs() < 1e-9);
    let alpha = s.langlands();
    let t = s.t();
    let want = [Complex64::new(0.0, t), Complex64::new(0.0, 0.0), Complex64::new(0.0, -t)];
    for (a, w) in alpha.iter().zip(want) {
        assert!((a - w).norm() < 1e-12, "{alpha:?}");
    }
    let (nu1, nu2) = s.type_params();
    assert!((langlands_from_type(nu1, nu2)[0] - alpha[0]).norm() < 1e-12);
}

#[test]
fn closed_form_euler_cases() {
    assert!(verify_local_euler_identity(2.0) < 1e-12);
    assert!(verify_local_euler_identity(0.0) < 1e-12);
    let s = satake(2.0);
    assert!((s.symmetric_power_trace(2).powu(4).re - 81.0).abs() < 1e-12);
}

#[test]
fn convolution_matches_multiplicative_build() {
    let s = lift();
    for n in (1..=3000u64).chain([65_536, 65_537, 720_720, 1_000_000]) {
        let conv = sym_square_coeff(s.hecke(), n).unwrap();
        let table = s.a1(n).unwrap();
        assert!((conv - table).abs() < 1e-9 * (1.0 + table.abs()), "n = {n}: {conv} vs {table}");
    }
}

#[test]
fn prime_powers_match_satake_traces() {
    let s = lift();
    for p in [2u64, 3, 5, 7, 101, 997] {
        let l = form().lambda_p(p).unwrap();
        let mut pk = 1u64;
        for k in 1..=6 {
            pk *= p;
            if pk > s.n_max() {
                break;
            }
            let want = complete_homogeneous(l, k);
            assert!((s.a1(pk).unwrap() - want).abs() < 1e-9 * (1.0 + want.abs()), "p^{k} with p = {p}");
        }
    }
}

#[test]
fn gl3_coefficients_are_self_dual_and_hecke_compatible() {
    let s = lift();
    for n in 1..=200u64 {
        assert!((gl3_coeff(s, n, 1).unwrap() - s.a1(n).unwrap()).abs() < 1e-12);
        assert!((gl3_coeff(s, 1, n).unwrap() - s.a1(n).unwrap()).abs() < 1e-12);
    }
    for p in [2u64, 3, 5, 7, 11] {
        let a = s.a1(p).unwrap();
        assert!((gl3_coeff(s, p, p).unwrap() - (a * a - 1.0)).abs() < 1e-12);
    }
    // coprime arguments factor
    assert!((gl3_coeff(s, 4, 9).unwrap() - s.a1(4).unwrap() * s.a1(9).unwrap()).abs() < 1e-12);
}

#[test]
fn moments_are_monotone_and_consistent() {
    let s = lift();
    for kind in [MomentKind::A2, MomentKind::A4, MomentKind::Sym2Fourth, MomentKind::Eighth] {
        let mut prev = 0.0;
        for x in [1u64, 10, 100, 1000, 10_000] {
            let v = moment_sum(s, x, kind).unwrap();
            assert!(v >= prev, "{kind} at {x}");
            prev = v;
        }
        assert_eq!(kind.to_string().parse::<MomentKind>().unwrap(), kind);
    }
    let direct: f64 = (1..=500u64).map(|n| s.a1(n).unwrap().powi(2)).sum();
    assert!((moment_sum(s, 500, MomentKind::A2).unwrap() - direct).abs() < 1e-9 * direct);
    let direct: f64 = (1..=500u64).map(|n| s.hecke().lambda_of_square(n).unwrap().powi(4)).sum();
    assert!((moment_sum(s, 500, MomentKind::Sym2Fourth).unwrap() - direct).abs() < 1e-9 * direct);
    assert!("bogus".parse::<MomentKind>().is_err());
}

#[test]
fn short_interval_ratios() {
    let r = short_interval_sum(lift(), 2e4, 1e4).unwrap();
    assert!(r.sum > 0.0);
    assert!(r.ratios.iter().all(|&(_, x)| x.is_finite()));
}

proptest! {
    #[test]
    fn euler_identity_is_exact(l in -2.0f64..=2.0) {
        prop_assert!(verify_local_euler_identity(l) < 1e-10);
    }

    #[test]
    fn satake_roots_multiply_to_one(l in -2.5f64..2.5) {
        let s = satake(l);
        prop_assert!((s.alpha * s.beta - 1.0).norm() < 1e-12);
        prop_assert!((s.alpha + s.beta - l).norm() < 1e-12);
    }

    #[test]
    fn hecke_power_is_chebyshev(theta in 0.01f64..3.13, k in 0u32..30) {
        let want = ((k + 1) as f64 * theta).sin() / theta.sin();
        prop_assert!((hecke_power(2.0 * theta.cos(), k) - want).abs() < 1e-9 * (1.0 + want.abs()));
    }

    #[test]
    fn hecke_multiplication(m in 1u64..1000, n in 1u64..1000) {
        let h = lift().hecke();
        let lhs = h.lambda(m).unwrap() * h.lambda(n).unwrap();
        let rhs: f64 = divisors(gcd(m, n)).into_iter().map(|d| h.lambda(m * n / (d * d)).unwrap()).sum();
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + lhs.abs()));
    }

    #[test]
    fn lift_is_multiplicative(m in 1u64..1000, n in 1u64..1000) {
        prop_assume!(gcd(m, n) == 1);
        let s = lift();
        let lhs = s.a1(m * n).unwrap();
        prop_assert!((lhs - s.a1(m).unwrap() * s.a1(n).unwrap()).abs() < 1e-9 * (1.0 + lhs.abs()));
    }
}
