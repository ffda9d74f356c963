use super::{HeckeError, MaassGL2Form};
use crate::arith::Sieve;

/// Dense table of λ(n) for 1 ≤ n ≤ n_max.
#[derive(Clone, Debug)]
pub struct HeckeTable {
    values: Vec<f64>,
    // λ(p) for every prime p ≤ n_max, indexed by p (zero elsewhere)
    sieve_spf: Vec<u32>,
}

/// λ(p^k) from λ(p) by the Hecke recurrence λ(p^{k+1}) = λ(p)λ(p^k) − λ(p^{k−1}).
pub fn hecke_power(lambda_p: f64, k: u32) -> f64 {
    let (mut prev, mut cur) = (1.0, lambda_p);
    if k == 0 {
        return 1.0;
    }
    for _ in 1..k {
        (prev, cur) = (cur, lambda_p * cur - prev);
    }
    cur
}

pub fn extend_hecke(form: &MaassGL2Form, n_max: u64) -> Result<HeckeTable, HeckeError> {
    HeckeTable::new(form, n_max)
}

impl HeckeTable {
    pub fn new(form: &MaassGL2Form, n_max: u64) -> Result<Self, HeckeError> {
        let n = n_max as usize;
        let sieve = Sieve::new(n);
        let mut values = vec![0.0; n + 1];
        if n >= 1 {
            values[1] = 1.0;
        }
        let mut primes = form.primes().iter().zip(form.prime_eigenvalues());
        for m in 2..=n {
            let p = sieve.smallest_prime_factor(m);
            if p == m {
                match primes.next() {
                    Some((&q, &l)) if q as usize == m => values[m] = l,
                    _ => return Err(HeckeError::MissingPrime { p: m as u64 }),
                }
                continue;
            }
            let mut r = m;
            while r % p == 0 {
                r /= p;
            }
            values[m] = if r > 1 {
                values[m / r] * values[r]
            } else {
                // m = p^k with k ≥ 2
                values[p] * values[m / p] - values[m / (p * p)]
            };
        }
        let sieve_spf = (0..=n).map(|m| if m < 2 { 0 } else { sieve.smallest_prime_factor(m) as u32 }).collect();
        Ok(Self { values, sieve_spf })
    }

    pub fn n_max(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn lambda(&self, n: u64) -> Result<f64, HeckeError> {
        if n == 0 || n > self.n_max() {
            return Err(HeckeError::OutOfRange { n, n_max: self.n_max() });
        }
        Ok(self.values[n as usize])
    }

    /// Raw slice indexed by n (entry 0 is unused and zero).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// λ(m²) for m ≤ n_max, by multiplicativity from prime-power values.
    pub fn lambda_of_square(&self, m: u64) -> Result<f64, HeckeError> {
        if m == 0 || m > self.n_max() {
            return Err(HeckeError::OutOfRange { n: m, n_max: self.n_max() });
        }
        let mut r = m as usize;
        let mut acc = 1.0;
        while r > 1 {
            let p = self.sieve_spf[r] as usize;
            let mut k = 0;
            while r % p == 0 {
                r /= p;
                k += 1;
            }
            acc *= hecke_power(self.values[p], 2 * k);
        }
        Ok(acc)
    }
}
