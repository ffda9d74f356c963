//! Elementary arithmetic: multiplicative functions, modular inverses,
//! Kloosterman sums and Dirichlet rational approximation.

use std::f64::consts::TAU;

use crate::numerics::CompensatedSum;

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduce `a` into `[0, c)`.
#[inline]
pub fn rem(a: i64, c: u64) -> u64 {
    a.rem_euclid(c as i64) as u64
}

/// Inverse of `d` modulo `c`, or `None` when `gcd(d, c) != 1`.
/// Modulo 1 every residue is its own inverse (0).
pub fn mod_inverse(d: i64, c: u64) -> Option<u64> {
    assert!(c >= 1, "modulus must be positive");
    if c == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (c as i128, rem(d, c) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(c as i128) as u64)
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).first().is_some_and(|&(p, e)| p == n && e == 1)
}

pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1);
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisor_count(n: u64) -> u64 {
    assert!(n >= 1);
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Sieve of smallest prime factors up to `n`, with a Möbius table.
pub struct Sieve {
    spf: Vec<u32>,
    mu: Vec<i8>,
}

impl Sieve {
    pub fn new(n: usize) -> Self {
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        let mut mu = vec![0i8; n + 1];
        if n >= 1 {
            mu[1] = 1;
        }
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                mu[i] = -1;
                primes.push(i as u32);
            }
            for &p in &primes {
                let m = i * p as usize;
                if p > spf[i] || m > n {
                    break;
                }
                spf[m] = p;
                mu[m] = if p == spf[i] { 0 } else { -mu[i] };
            }
        }
        Self { spf, mu }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    pub fn smallest_prime_factor(&self, n: usize) -> usize {
        self.spf[n] as usize
    }

    pub fn mobius(&self, n: usize) -> i8 {
        self.mu[n]
    }

    pub fn primes(&self) -> impl Iterator<Item = usize> + '_ {
        (2..self.spf.len()).filter(|&n| self.is_prime(n))
    }
}

/// Precomputed inverses and cosines for a fixed modulus; evaluating
/// `S(a, b; c)` is then `φ(c)` table lookups.
pub struct KloostermanTable {
    c: u64,
    units: Vec<(u64, u64)>,
    cos: Vec<f64>,
}

impl KloostermanTable {
    pub fn new(c: u64) -> Self {
        assert!(c >= 1, "modulus must be positive");
        let units = (0..c).filter(|&x| gcd(x, c) == 1).map(|x| (x, mod_inverse(x as i64, c).expect("unit"))).collect();
        let cos = (0..c).map(|k| (TAU * k as f64 / c as f64).cos()).collect();
        Self { c, units, cos }
    }

    pub fn modulus(&self) -> u64 {
        self.c
    }

    pub fn eval(&self, a: i64, b: i64) -> f64 {
        let c = self.c;
        let (a, b) = (rem(a, c), rem(b, c));
        let mut s = CompensatedSum::new();
        for &(x, xi) in &self.units {
            let k = (a * x + b * xi) % c;
            s.add(self.cos[k as usize]);
        }
        s.value()
    }
}

/// `S(a, b; c) = Σ_{x mod c, (x,c)=1} e((a x + b x̄)/c)`; real by symmetry x ↦ −x.
pub fn kloosterman(a: i64, b: i64, c: u64) -> f64 {
    KloostermanTable::new(c).eval(a, b)
}

/// The Weil-type bound `d(c) √c √gcd(a, b, c)`.
pub fn weil_bound(a: i64, b: i64, c: u64) -> f64 {
    let g = gcd(gcd(rem(a, c), rem(b, c)), c);
    divisor_count(c) as f64 * (c as f64).sqrt() * (g as f64).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeilCheck {
    pub value: f64,
    pub bound: f64,
    pub ok: bool,
}

pub fn weil_check(a: i64, b: i64, c: u64) -> WeilCheck {
    weil_check_with(&KloostermanTable::new(c), a, b)
}

pub fn weil_check_with(table: &KloostermanTable, a: i64, b: i64) -> WeilCheck {
    let value = table.eval(a, b);
    let bound = weil_bound(a, b, table.modulus());
    WeilCheck { value, bound, ok: value.abs() <= bound + 1e-9 }
}

/// α = a/q + θ/2π with `gcd(a, q) = 1`, `1 ≤ q ≤ Q` and `|θ/2π| ≤ 1/(qQ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RationalApprox {
    pub a: i64,
    pub q: u64,
    pub theta: f64,
}

impl RationalApprox {
    /// Distance from α to a/q, i.e. θ/2π.
    pub fn offset(&self) -> f64 {
        self.theta / TAU
    }
}

/// Dirichlet approximation of `alpha` at level `big_q` via continued-fraction
/// convergents: the last convergent with denominator at most `big_q`.
pub fn dirichlet_approx(alpha: f64, big_q: f64) -> RationalApprox {
    assert!(big_q >= 1.0 && alpha.is_finite(), "need Q >= 1 and finite alpha");
    let a0 = alpha.floor();
    // convergents p/q, starting from p_{-1}/q_{-1} = 1/0 and p_0/q_0 = a0/1
    let (mut p_prev, mut q_prev) = (1i128, 0i128);
    let (mut p, mut q) = (a0 as i128, 1i128);
    let mut frac = alpha - a0;
    loop {
        if frac.abs() < 1e-15 * alpha.abs().max(1.0) {
            break;
        }
        let x = 1.0 / frac;
        let ak = x.floor();
        if !ak.is_finite() || ak > 1e15 {
            break;
        }
        let (pn, qn) = (ak as i128 * p + p_prev, ak as i128 * q + q_prev);
        if qn as f64 > big_q {
            break;
        }
        (p_prev, q_prev, p, q) = (p, q, pn, qn);
        frac = x - ak;
    }
    let (a, q) = (p as i64, q as u64);
    RationalApprox { a, q, theta: TAU * (alpha - a as f64 / q as f64) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn small_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(divisor_count(1), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(mobius(30), -1);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(4, 8), None);
        assert_eq!(mod_inverse(-1, 5), Some(4));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let s = Sieve::new(5000);
        for n in 1..=5000u64 {
            assert_eq!(s.mobius(n as usize), mobius(n), "n={n}");
            assert_eq!(s.is_prime(n as usize), is_prime(n), "n={n}");
        }
    }

    #[test]
    fn kloosterman_examples() {
        assert!((kloosterman(1, 1, 1) - 1.0).abs() < 1e-15);
        assert!((kloosterman(1, 1, 3) + 1.0).abs() < 1e-14);
        let w = weil_check(1, 1, 3);
        assert!(w.ok);
        assert!((w.bound - 2.0 * 3f64.sqrt()).abs() < 1e-14);
        assert_eq!(weil_check(1, 1, 1), WeilCheck { value: 1.0, bound: 1.0, ok: true });
    }

    #[test]
    fn ramanujan_sum_is_mobius() {
        for c in 1..=500u64 {
            assert!((kloosterman(1, 0, c) - mobius(c) as f64).abs() < 1e-8, "c={c}");
        }
    }

    #[test]
    fn dirichlet_examples() {
        let r = dirichlet_approx(1.0 / 3.0, 10.0);
        assert_eq!((r.a, r.q), (1, 3));
        assert!(r.theta.abs() < 1e-14);
        let r = dirichlet_approx(0.0, 5.0);
        assert_eq!(r, RationalApprox { a: 0, q: 1, theta: 0.0 });
        let r = dirichlet_approx(PI, 10.0);
        assert_eq!((r.a, r.q), (22, 7));
        assert!((r.offset().abs() - 0.00126).abs() < 1e-5);
        assert!(r.offset().abs() <= 1.0 / 70.0);
    }

    #[test]
    fn dirichlet_negative_alpha() {
        let r = dirichlet_approx(-0.3, 100.0);
        assert_eq!((r.a, r.q), (-3, 10));
    }
}
