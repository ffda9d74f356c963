use num_complex::Complex64;

use super::{hecke_power, HeckeError, HeckeTable, MaassGL2Form};
use crate::arith::Sieve;

/// Langlands parameters from the type (ν1, ν2) of a GL(3) form.
pub fn langlands_from_type(nu1: Complex64, nu2: Complex64) -> [Complex64; 3] {
    [-nu1 - 2.0 * nu2 + 1.0, -nu1 + nu2, 2.0 * nu1 + nu2 - 1.0]
}

/// Langlands parameters of the contragredient form.
pub fn dual_langlands(alpha: [Complex64; 3]) -> [Complex64; 3] {
    [-alpha[2], -alpha[1], -alpha[0]]
}

/// The symmetric-square lift of a Maass form, with its coefficients A(1, n)
/// tabulated for n ≤ n_max.
#[derive(Clone, Debug)]
pub struct SymSquareForm {
    t: f64,
    a1n: Vec<f64>,
    hecke: HeckeTable,
    data_precision: f64,
    synthetic: bool,
}

impl SymSquareForm {
    /// Builds λ(n) and A(1, n) for n ≤ n_max. A(1, ·) is assembled
    /// multiplicatively from A(1, p^k) = Σ_{2j ≤ k} λ(p^{2(k−2j)}).
    pub fn new(form: &MaassGL2Form, n_max: u64) -> Result<Self, HeckeError> {
        let hecke = HeckeTable::new(form, n_max)?;
        let n = n_max as usize;
        let sieve = Sieve::new(n);
        let lam = hecke.values();
        let mut a1n = vec![0.0; n + 1];
        if n >= 1 {
            a1n[1] = 1.0;
        }
        for m in 2..=n {
            let p = sieve.smallest_prime_factor(m);
            let mut r = m;
            let mut k = 0u32;
            while r % p == 0 {
                r /= p;
                k += 1;
            }
            a1n[m] = if r > 1 {
                a1n[m / r] * a1n[r]
            } else {
                let lp = lam[p];
                (0..=k / 2).map(|j| hecke_power(lp, 2 * (k - 2 * j))).sum()
            };
        }
        Ok(Self {
            t: 2.0 * form.t_j(),
            a1n,
            hecke,
            data_precision: form.data_precision(),
            synthetic: form.is_synthetic(),
        })
    }

    /// T = 2 t_j.
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn langlands(&self) -> [Complex64; 3] {
        [Complex64::new(0.0, self.t), Complex64::new(0.0, 0.0), Complex64::new(0.0, -self.t)]
    }

    /// The type (ν1, ν2) = ((1 − iT)/3, (1 − iT)/3) realizing (iT, 0, −iT).
    pub fn type_params(&self) -> (Complex64, Complex64) {
        let nu = Complex64::new(1.0, -self.t) / 3.0;
        (nu, nu)
    }

    /// λ_F(Δ) = 1 + T².
    pub fn laplace_eigenvalue(&self) -> f64 {
        1.0 + self.t * self.t
    }

    pub fn n_max(&self) -> u64 {
        (self.a1n.len() - 1) as u64
    }

    pub fn data_precision(&self) -> f64 {
        self.data_precision
    }

    pub fn is_synthetic(&self) -> bool {
        self.synthetic
    }

    pub fn hecke(&self) -> &HeckeTable {
        &self.hecke
    }

    /// A(1, n).
    pub fn a1(&self, n: u64) -> Result<f64, HeckeError> {
        if n == 0 || n > self.n_max() {
            return Err(HeckeError::OutOfRange { n, n_max: self.n_max() });
        }
        Ok(self.a1n[n as usize])
    }

    /// Raw coefficient slice indexed by n (entry 0 is unused and zero).
    pub fn a1n(&self) -> &[f64] {
        &self.a1n
    }

    /// Replace the coefficient table, keeping T. Used to build controls whose
    /// coefficients are not those of an automorphic form.
    pub fn with_coefficients(&self, a1n: Vec<f64>) -> Self {
        assert!(a1n.len() >= 2 && a1n[0] == 0.0);
        Self { a1n, synthetic: true, ..self.clone() }
    }
}

/// A(1, n) = Σ_{m l² = n} λ(m²), straight from the defining convolution.
pub fn sym_square_coeff(table: &HeckeTable, n: u64) -> Result<f64, HeckeError> {
    if n == 0 || n > table.n_max() {
        return Err(HeckeError::OutOfRange { n, n_max: table.n_max() });
    }
    let mut acc = 0.0;
    let mut l = 1u64;
    while l * l <= n {
        if n % (l * l) == 0 {
            acc += table.lambda_of_square(n / (l * l))?;
        }
        l += 1;
    }
    Ok(acc)
}

/// A(n2, n1) = Σ_{d | (n2, n1)} μ(d) A(n2/d, 1) A(1, n1/d), using A(n, 1) = A(1, n).
pub fn gl3_coeff(form: &SymSquareForm, n2: u64, n1: u64) -> Result<f64, HeckeError> {
    let g = crate::arith::gcd(n2, n1);
    let mut acc = 0.0;
    for d in crate::arith::divisors(g) {
        let mu = crate::arith::mobius(d);
        if mu != 0 {
            acc += mu as f64 * form.a1(n2 / d)? * form.a1(n1 / d)?;
        }
    }
    Ok(acc)
}
