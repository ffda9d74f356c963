use std::f64::consts::{FRAC_PI_4, PI, TAU};

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{TestFunction, TransformError};
use crate::numerics::{gauss_kronrod_adaptive, QuadOptions};

/// ∫ w(x) x^{−σ} e^{iθx} x^{iτ} dx/x by adaptive Gauss–Kronrod, with panels no
/// wider than π over the local frequency |θ + τ/x|.
///
/// `tol` is relative to the L¹ mass of the integrand, so tiny (decayed) values
/// are resolved to an absolute accuracy of `tol · ∫ w x^{−σ} dx/x`.
pub fn mellin_fourier(tf: &TestFunction, sigma: f64, tau: f64, tol: f64) -> Result<Complex64, TransformError> {
    let (a, b) = tf.support();
    let theta = tf.theta();
    let freq = (theta + tau / a).abs().max((theta + tau / b).abs());
    let max_width = ((b - a) / 16.0).min(if freq > 0.0 { PI / freq } else { f64::INFINITY });
    let mass = gauss_kronrod_adaptive(
        |x| Complex64::new(tf.w(x) * x.powf(-sigma - 1.0), 0.0),
        a,
        b,
        &QuadOptions { rel_tol: 1e-10, max_width: Some((b - a) / 16.0), ..Default::default() },
    )?
    .value
    .re;
    let opts = QuadOptions { abs_tol: tol * mass, rel_tol: tol, max_width: Some(max_width), max_panels: 2_000_000 };
    let r = gauss_kronrod_adaptive(
        |x| tf.eval(x) * Complex64::from_polar(x.powf(-sigma - 1.0), tau * x.ln()),
        a,
        b,
        &opts,
    )?;
    Ok(r.value)
}

/// I(τ) = ∫ w(x) e^{iθx} x^{iτ} dx/x.
#[allow(non_snake_case)]
pub fn mellin_fourier_I(tf: &TestFunction, tau: f64, tol: f64) -> Result<Complex64, TransformError> {
    mellin_fourier(tf, 0.0, tau, tol)
}

/// √(2π) w(−τ/θ) |τ|^{−1/2} e^{iτ log|τ/(eθ)|} e^{iπ/4 · sgn θ}.
pub fn stationary_main_term(tf: &TestFunction, tau: f64) -> Result<Complex64, TransformError> {
    let theta = tf.theta();
    if theta == 0.0 || tau.abs() < 1.0 || (theta * tf.n()).abs() < 1.0 {
        return Err(TransformError::Domain(format!(
            "need |tau| >= 1 and |theta N| >= 1, got tau={tau}, theta={theta}"
        )));
    }
    let x0 = -tau / theta;
    let w = if x0 > 0.0 { tf.w(x0) } else { 0.0 };
    if w == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let phase = tau * ((tau / theta).abs().ln() - 1.0) + FRAC_PI_4 * theta.signum();
    Ok(Complex64::from_polar((TAU).sqrt() * w / tau.abs().sqrt(), phase))
}

/// ψ̃(−σ − iτ) = ∫ ψ(y) y^{−σ−iτ} dy/y on the grid τ_j = j·h, |j| ≤ J.
///
/// All values come from one FFT of ψ sampled in v = log y. Where the plain
/// transform has decayed into the rounding floor, the value is instead taken
/// from the transform of (y d/dy)⁴ψ divided by s⁴, whose floor is lower by |s|⁴.
#[derive(Clone, Debug)]
pub struct MellinGrid {
    h: f64,
    j_max: usize,
    sigma: f64,
    values: Vec<Complex64>,
    plain: Vec<Complex64>,
    l1_plain: f64,
    l1_parts: f64,
}

const PARTS: i32 = 4;

impl MellinGrid {
    pub fn new(tf: &TestFunction, sigma: f64, h: f64, tau_max: f64) -> Self {
        assert!(h > 0.0 && tau_max > 0.0);
        let j_max = (tau_max / h).ceil() as usize;
        let (a, b) = tf.support();
        let band = 2.0 * tau_max + 2.0 * tf.theta().abs() * b + 6000.0;
        let m = ((band / h).ceil() as usize).max(2 * (2 * j_max + 1)).next_power_of_two();
        let hv = TAU / (m as f64 * h);
        let (v0, v1) = (a.ln(), b.ln());
        let count = ((v1 - v0) / hv).floor() as usize + 1;
        assert!(count < m, "FFT too small for the support");
        let mut g0 = vec![Complex64::new(0.0, 0.0); m];
        let mut g4 = vec![Complex64::new(0.0, 0.0); m];
        let (mut l1_plain, mut l1_parts) = (0.0, 0.0);
        for i in 0..count {
            let v = v0 + hv * i as f64;
            let y = v.exp();
            let d = tf.euler_derivatives(y);
            let s = (-sigma * v).exp();
            g0[i] = d[0] * s;
            g4[i] = d[PARTS as usize] * s;
            l1_plain += g0[i].norm();
            l1_parts += g4[i].norm();
        }
        l1_plain *= hv;
        l1_parts *= hv;
        let fft = FftPlanner::new().plan_fft_forward(m);
        fft.process(&mut g0);
        fft.process(&mut g4);
        let n = 2 * j_max + 1;
        let mut values = Vec::with_capacity(n);
        let mut plain = Vec::with_capacity(n);
        for idx in 0..n {
            let j = idx as i64 - j_max as i64;
            let tau = j as f64 * h;
            let slot = j.rem_euclid(m as i64) as usize;
            let rot = Complex64::from_polar(hv, -tau * v0);
            let p = g0[slot] * rot;
            let s = Complex64::new(sigma, tau);
            let snorm = s.norm();
            plain.push(p);
            if snorm > 0.0 && l1_parts < l1_plain * snorm.powi(PARTS) {
                values.push(g4[slot] * rot / s.powi(PARTS));
            } else {
                values.push(p);
            }
        }
        Self { h, j_max, sigma, values, plain, l1_plain, l1_parts }
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn tau(&self, idx: usize) -> f64 {
        (idx as f64 - self.j_max as f64) * self.h
    }

    /// Values indexed by idx = j + J.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// The plain (non-integrated-by-parts) values, for cross-checking.
    pub fn plain_values(&self) -> &[Complex64] {
        &self.plain
    }

    /// ∫ |ψ(y)| y^{−σ} dy/y.
    pub fn l1_norm(&self) -> f64 {
        self.l1_plain
    }

    /// Absolute rounding floor of the value at τ.
    pub fn noise_floor(&self, tau: f64) -> f64 {
        let s = Complex64::new(self.sigma, tau).norm();
        let parts = if s > 0.0 { self.l1_parts / s.powi(PARTS) } else { f64::INFINITY };
        1e-15 * self.l1_plain.min(parts)
    }
}
