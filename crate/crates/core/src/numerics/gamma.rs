use num_complex::Complex64;

// B_{2k} / (2k(2k-1)) for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Complex log-gamma, valid for any `z` that is not a pole.
///
/// The imaginary part is a continuous-enough branch for use inside `exp`; it
/// is *not* normalized to the principal branch. At a pole the real part is
/// `+inf`, so `exp(-ln_gamma(z))` returns the correct zero.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut shifted = false;
    while w.re < 1.0 || w.norm_sqr() < 100.0 {
        prod *= w;
        w += 1.0;
        shifted = true;
        // keep the running product bounded
        if prod.norm_sqr() > 1e200 {
            break;
        }
    }
    let mut out = stirling(w);
    if prod.norm_sqr() > 1e200 {
        // Extremely unlikely in practice; fall back to summing logs.
        return ln_gamma_by_logs(z);
    }
    if shifted {
        out -= prod.ln();
    }
    out
}

fn ln_gamma_by_logs(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < 1.0 || w.norm_sqr() < 100.0 {
        acc += w.ln();
        w += 1.0;
    }
    stirling(w) - acc
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_factorials() {
        let mut fact = 1.0f64;
        for n in 1..30 {
            let lg = ln_gamma(c(n as f64, 0.0));
            assert!((lg.re - fact.ln()).abs() < 1e-13 * fact.ln().max(1.0), "n={n}");
            assert!(lg.im.abs() < 1e-14);
            fact *= n as f64;
        }
    }

    #[test]
    fn half_integer() {
        let lg = ln_gamma(c(0.5, 0.0));
        assert!((lg.re - 0.5 * PI.ln()).abs() < 1e-14);
    }

    #[test]
    fn modulus_on_critical_line() {
        // |Γ(1/2 + it)|² = π / cosh(πt)
        for &t in &[0.3, 1.0, 5.0, 17.0, 80.0, 400.0] {
            let lg = ln_gamma(c(0.5, t));
            let y = PI * t;
            let ln_cosh = y + (-2.0 * y).exp().ln_1p() - 2f64.ln();
            let expect = 0.5 * (PI.ln() - ln_cosh);
            assert!((lg.re - expect).abs() < 1e-12 * expect.abs().max(1.0), "t={t}");
        }
    }

    #[test]
    fn recurrence_in_exponent() {
        // Γ(z+1) = zΓ(z), checked through exp so the branch does not matter
        for &(x, y) in &[(-3.7, 0.2), (0.1, -9.0), (2.5, 40.0), (-0.5, 13.0)] {
            let z = c(x, y);
            let lhs = (ln_gamma(z + 1.0) - ln_gamma(z)).exp();
            assert!((lhs - z).norm() < 1e-12 * z.norm(), "z={z}");
        }
    }

    #[test]
    fn reflection() {
        // Γ(z)Γ(1-z) = π / sin(πz)
        for &(x, y) in &[(0.3, 0.7), (-2.2, 1.5), (0.5, 6.0)] {
            let z = c(x, y);
            let lhs = (ln_gamma(z) + ln_gamma(1.0 - z)).exp();
            let rhs = PI / (z * PI).sin();
            assert!((lhs - rhs).norm() < 1e-11 * rhs.norm(), "z={z}");
        }
    }

    #[test]
    fn pole_gives_zero_reciprocal() {
        let r = (-ln_gamma(c(-2.0, 0.0))).exp();
        assert_eq!(r.norm(), 0.0);
    }
}
