use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;
use symsq_core::arith::*;

// straight from the definition, no tables
fn kloosterman_brute(a: i64, b: i64, c: u64) -> f64 {
    let mut s = Complex64::new(0.0, 0.0);
    for x in 0..c {
        if gcd(x, c) != 1 {
            continue;
        }
        let xb = (1..=c.max(1)).find(|y| (x * y) % c == 1 % c).unwrap_or(0);
        let num = (a as i128 * x as i128 + b as i128 * xb as i128).rem_euclid(c as i128) as f64;
        s += Complex64::from_polar(1.0, TAU * num / c as f64);
    }
    s.re
}

fn ramanujan_sum(a: i64, c: u64) -> f64 {
    let g = gcd(rem(a, c), c);
    divisors(g).into_iter().map(|d| mobius(c / d) as f64 * d as f64).sum()
}

#[test]
fn kloosterman_small_moduli_match_definition() {
    for c in 1..=40u64 {
        for a in -3..=5i64 {
            for b in [0i64, 1, 2, 7, -5] {
                let got = kloosterman(a, b, c);
                let want = kloosterman_brute(a, b, c);
                assert!((got - want).abs() < 1e-9, "S({a},{b};{c}) = {got}, want {want}");
            }
        }
    }
}

#[test]
fn kloosterman_with_zero_is_ramanujan_sum() {
    for c in 1..=300u64 {
        for a in [1i64, 2, 6, 12, 30] {
            assert!((kloosterman(a, 0, c) - ramanujan_sum(a, c)).abs() < 1e-8, "c = {c}, a = {a}");
        }
    }
}

#[test]
fn mobius_matches_factorization() {
    let sieve = Sieve::new(5000);
    for n in 1..=5000u64 {
        let f = factorize(n);
        let want = if f.iter().any(|&(_, e)| e > 1) {
            0
        } else if f.len() % 2 == 0 {
            1
        } else {
            -1
        };
        assert_eq!(mobius(n), want, "n = {n}");
        assert_eq!(sieve.mobius(n as usize), want, "n = {n}");
    }
}

#[test]
fn divisor_helpers_agree() {
    for n in 1..=2000u64 {
        let d = divisors(n);
        assert_eq!(d.len() as u64, divisor_count(n));
        assert!(d.windows(2).all(|w| w[0] < w[1]));
        assert!(d.iter().all(|x| n % x == 0));
    }
}

#[test]
fn continued_fraction_examples() {
    let r = dirichlet_approx(std::f64::consts::PI, 10.0);
    assert_eq!((r.a, r.q), (22, 7));
    let r = dirichlet_approx(0.5, 100.0);
    assert_eq!((r.a, r.q), (1, 2));
    assert_eq!(r.theta, 0.0);
}

proptest! {
    #[test]
    fn weil_bound_holds(a in -1000i64..1000, b in -1000i64..1000, c in 1u64..400) {
        let w = weil_check(a, b, c);
        prop_assert!(w.ok, "S({a},{b};{c}) = {} above {}", w.value, w.bound);
    }

    #[test]
    fn kloosterman_symmetries(a in 1i64..500, b in 1i64..500, c in 1u64..200) {
        let s = kloosterman(a, b, c);
        prop_assert!((s - kloosterman(b, a, c)).abs() < 1e-8);
        prop_assert!((s - kloosterman(-a, -b, c)).abs() < 1e-8);
        if gcd(rem(a, c), c) == 1 {
            prop_assert!((s - kloosterman(1, a * b, c)).abs() < 1e-8);
        }
    }

    #[test]
    fn kloosterman_twisted_multiplicativity(a in 1i64..100, b in 1i64..100, c1 in 1u64..40, c2 in 1u64..40) {
        prop_assume!(gcd(c1, c2) == 1);
        let i1 = mod_inverse(c1 as i64, c2).unwrap() as i64;
        let i2 = mod_inverse(c2 as i64, c1).unwrap() as i64;
        let lhs = kloosterman(a, b, c1 * c2);
        let rhs = kloosterman(a * i2, b * i2, c1) * kloosterman(a * i1, b * i1, c2);
        prop_assert!((lhs - rhs).abs() < 1e-7, "{lhs} vs {rhs}");
    }

    #[test]
    fn mod_inverse_inverts(d in -10_000i64..10_000, c in 1u64..5000) {
        match mod_inverse(d, c) {
            Some(inv) => prop_assert_eq!((rem(d, c) as u128 * inv as u128) % c as u128, 1 % c as u128),
            None => prop_assert!(gcd(rem(d, c), c) != 1),
        }
    }

    #[test]
    fn dirichlet_approx_is_within_one_over_q_big_q(alpha in -10.0f64..10.0, big_q in 1.0f64..1e5) {
        let r = dirichlet_approx(alpha, big_q);
        prop_assert!(r.q >= 1 && r.q as f64 <= big_q);
        prop_assert_eq!(gcd(r.a.unsigned_abs(), r.q), 1);
        prop_assert!((alpha - r.a as f64 / r.q as f64 - r.offset()).abs() < 1e-12);
        prop_assert!(r.offset().abs() <= 1.0 / (r.q as f64 * big_q) * (1.0 + 1e-9));
    }
}
