use num_complex::Complex64;

/// Roots of z² − λ(p) z + 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SatakePair {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl SatakePair {
    /// Σ_{m=0}^{k} α^m β^{k−m}, which equals λ(p^k).
    pub fn symmetric_power_trace(&self, k: u32) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut a = Complex64::new(1.0, 0.0);
        for m in 0..=k {
            acc += a * self.beta.powu(k - m);
            a *= self.alpha;
        }
        acc
    }
}

pub fn satake(lambda_p: f64) -> SatakePair {
    let disc = lambda_p * lambda_p - 4.0;
    if disc <= 0.0 {
        let im = 0.5 * (-disc).sqrt();
        let alpha = Complex64::new(0.5 * lambda_p, im);
        SatakePair { alpha, beta: alpha.conj() }
    } else {
        // larger root first, smaller from the product to avoid cancellation
        let big = 0.5 * (lambda_p + lambda_p.signum() * disc.sqrt());
        SatakePair { alpha: Complex64::new(big, 0.0), beta: Complex64::new(1.0 / big, 0.0) }
    }
}

/// |λ(p²)⁴ − (e₄² + 2e₃² + 3e₄ + 3e₂)| with e_r = Σ α^{r−m} β^m.
pub fn verify_local_euler_identity(lambda_p: f64) -> f64 {
    let s = satake(lambda_p);
    let e: Vec<Complex64> = (0..=4).map(|r| s.symmetric_power_trace(r)).collect();
    let lhs = e[2].powu(4);
    let rhs = e[4] * e[4] + 2.0 * e[3] * e[3] + 3.0 * e[4] + 3.0 * e[2];
    (lhs - rhs).norm()
}
