use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::{MellinGrid, TestFunction, TransformError};
use crate::numerics::{ln_gamma, ComplexSum};

/// Parameters of the line integral defining Ψ_k.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiTransformConfig {
    /// Contour abscissa Re s.
    pub sigma: f64,
    /// The integral over s = σ + iτ is truncated to |τ| ≤ tau_max.
    pub tau_max: f64,
    /// Trapezoid step in τ.
    pub tau_step: f64,
    pub quad_tol: f64,
    /// Langlands parameters are (iT, 0, −iT).
    pub t: f64,
    /// Parity of the additive character, 0 or 1.
    pub k: u8,
}

pub const DEFAULT_SIGMA: f64 = -0.5;
pub const DEFAULT_TAU_STEP: f64 = 0.05;
pub const DEFAULT_QUAD_TOL: f64 = 1e-8;

impl PsiTransformConfig {
    /// Defaults: σ = −1/2 and a truncation height from [`Self::auto_tau_max`].
    pub fn new(tf: &TestFunction, t: f64) -> Self {
        Self::with_sigma(tf, t, DEFAULT_SIGMA)
    }

    pub fn with_sigma(tf: &TestFunction, t: f64, sigma: f64) -> Self {
        Self {
            sigma,
            tau_max: Self::auto_tau_max(tf, sigma),
            tau_step: DEFAULT_TAU_STEP,
            quad_tol: DEFAULT_QUAD_TOL,
            t,
            k: 0,
        }
    }

    /// Height past which |G_k ψ̃| is below ~1e-17 of its peak, from the
    /// observed e^{−c√τ} decay of ψ̃ for the standard bump and the |τ|^{3σ+3/2}
    /// growth of the gamma ratio.
    pub fn auto_tau_max(tf: &TestFunction, sigma: f64) -> f64 {
        let shift = 2.0 * (tf.theta() * tf.support().1).abs();
        let grow = 3.0 * sigma + 1.5;
        let floor = 4.0 * (1.0 + (tf.theta() * tf.n()).abs()).powf(1.2);
        let mut tau: f64 = 100.0;
        loop {
            let r = tau;
            let log_mag = grow.max(0.0) * (1.0 + r).ln() - 0.5 * r.sqrt() + 2.0;
            if log_mag < -17.0 * std::f64::consts::LN_10 || tau > 1e6 {
                break;
            }
            tau *= 1.05;
        }
        (tau + shift).max(floor)
    }

    pub fn validate(&self, tf: &TestFunction) -> Result<(), TransformError> {
        let tn = (tf.theta() * tf.n()).abs();
        if !(self.sigma > -1.0) {
            return Err(TransformError::Config(format!("sigma must exceed -1, got {}", self.sigma)));
        }
        if self.tau_max < 4.0 * (1.0 + tn).powf(1.2) {
            return Err(TransformError::Config(format!("tau_max {} below 4(1+|theta N|)^1.2", self.tau_max)));
        }
        if !(self.quad_tol > 0.0 && self.quad_tol <= 1e-4) {
            return Err(TransformError::Config(format!("quad_tol {} outside (0, 1e-4]", self.quad_tol)));
        }
        if self.k > 1 {
            return Err(TransformError::Config(format!("k must be 0 or 1, got {}", self.k)));
        }
        if !(self.tau_step > 0.0 && self.tau_step <= 0.2) {
            return Err(TransformError::Config(format!("tau_step {} outside (0, 0.2]", self.tau_step)));
        }
        if !(self.t >= 0.0 && self.t.is_finite()) {
            return Err(TransformError::Config(format!("invalid T {}", self.t)));
        }
        Ok(())
    }
}

/// G_k(s) = Π_j Γ((1 + s + α_j + k)/2) / Γ((−s − α_j + k)/2) for (α_j) = (iT, 0, −iT).
pub fn gamma_ratio(k: u8, s: Complex64, t: f64) -> Complex64 {
    let k = k as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in [Complex64::new(0.0, t), Complex64::new(0.0, 0.0), Complex64::new(0.0, -t)] {
        acc += ln_gamma((1.0 + s + a + k) * 0.5) - ln_gamma((-s - a + k) * 0.5);
    }
    acc.exp()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiValue {
    pub value: Complex64,
    /// Estimated size of the discarded |τ| > tau_max part plus rounding.
    pub tail: f64,
}

/// Ψ_0, Ψ_1 and the derived Ψ± at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiPair {
    pub psi0: Complex64,
    pub psi1: Complex64,
    pub tail: f64,
}

impl PsiPair {
    /// (Ψ₀ + Ψ₁/i) / (2π^{3/2}).
    pub fn plus(&self) -> Complex64 {
        (self.psi0 - Complex64::i() * self.psi1) / (2.0 * PI.powf(1.5))
    }

    /// (Ψ₀ − Ψ₁/i) / (2π^{3/2}).
    pub fn minus(&self) -> Complex64 {
        (self.psi0 + Complex64::i() * self.psi1) / (2.0 * PI.powf(1.5))
    }
}

/// Precomputed integrand F_k(τ) = G_k(σ + iτ) ψ̃(−σ − iτ) on the τ grid,
/// for both parities.
#[derive(Clone, Debug)]
pub struct PsiEngine {
    cfg: PsiTransformConfig,
    j_max: usize,
    f: [Vec<Complex64>; 2],
    // ∫|F_k| over the outer tenth of the grid, and over all of it
    edge_mass: [f64; 2],
    total_mass: [f64; 2],
}

impl PsiEngine {
    pub fn new(tf: &TestFunction, cfg: &PsiTransformConfig) -> Result<Self, TransformError> {
        cfg.validate(tf)?;
        let grid = MellinGrid::new(tf, cfg.sigma, cfg.tau_step, cfg.tau_max);
        let j_max = grid.j_max();
        let h = grid.step();
        // G_k(σ − iτ) = conj G_k(σ + iτ): evaluate τ ≥ 0 only
        let half: Vec<[Complex64; 2]> = (0..=j_max)
            .into_par_iter()
            .map(|j| {
                let s = Complex64::new(cfg.sigma, j as f64 * h);
                [gamma_ratio(0, s, cfg.t), gamma_ratio(1, s, cfg.t)]
            })
            .collect();
        let psi = grid.values();
        let mut f = [Vec::with_capacity(psi.len()), Vec::with_capacity(psi.len())];
        for (idx, p) in psi.iter().enumerate() {
            let j = idx as i64 - j_max as i64;
            let g = half[j.unsigned_abs() as usize];
            for k in 0..2 {
                let gk = if j >= 0 { g[k] } else { g[k].conj() };
                f[k].push(gk * p);
            }
        }
        let edge_start = (0.9 * j_max as f64) as usize;
        let mut edge_mass = [0.0; 2];
        let mut total_mass = [0.0; 2];
        for k in 0..2 {
            for (idx, v) in f[k].iter().enumerate() {
                let j = (idx as i64 - j_max as i64).unsigned_abs() as usize;
                total_mass[k] += v.norm() * h;
                if j >= edge_start {
                    edge_mass[k] += v.norm() * h;
                }
            }
        }
        Ok(Self { cfg: *cfg, j_max, f, edge_mass, total_mass })
    }

    pub fn config(&self) -> &PsiTransformConfig {
        &self.cfg
    }

    fn prefactor(&self, x: f64) -> f64 {
        (PI.powi(3) * x).powf(-self.cfg.sigma) / TAU
    }

    fn tail(&self, k: usize, x: f64) -> f64 {
        self.prefactor(x) * (self.edge_mass[k] + 1e-15 * self.total_mass[k])
    }

    /// Ψ_k(x) by direct trapezoid summation over the τ grid.
    pub fn psi_k(&self, k: u8, x: f64) -> PsiValue {
        assert!(x > 0.0 && k <= 1);
        let k = k as usize;
        let h = self.cfg.tau_step;
        let l = (PI.powi(3) * x).ln();
        let mut acc = ComplexSum::new();
        let step = Complex64::from_polar(1.0, -h * l);
        let mut rot = Complex64::new(0.0, 0.0);
        for (idx, v) in self.f[k].iter().enumerate() {
            if idx % 512 == 0 {
                let j = idx as f64 - self.j_max as f64;
                rot = Complex64::from_polar(1.0, -j * h * l);
            }
            acc.add(v * rot);
            rot *= step;
        }
        PsiValue { value: acc.value() * (h * self.prefactor(x)), tail: self.tail(k, x) }
    }

    pub fn psi_pair(&self, x: f64) -> PsiPair {
        let a = self.psi_k(0, x);
        let b = self.psi_k(1, x);
        PsiPair { psi0: a.value, psi1: b.value, tail: a.tail.max(b.tail) }
    }

    /// Tabulate Ψ_0, Ψ_1 on [x_min, x_max] for fast interpolated evaluation.
    pub fn table(&self, x_min: f64, x_max: f64) -> PsiTable {
        PsiTable::build(self, x_min, x_max)
    }
}

/// Ψ_k(x) with its truncation tail; errors if the tail exceeds quad_tol·|Ψ_k(x)|.
pub fn psi_k(x: f64, cfg: &PsiTransformConfig, tf: &TestFunction) -> Result<PsiValue, TransformError> {
    let engine = PsiEngine::new(tf, cfg)?;
    let v = engine.psi_k(cfg.k, x);
    check_tail(v.value, v.tail, cfg)?;
    Ok(v)
}

/// (Ψ₊(x), Ψ₋(x)).
pub fn psi_plus_minus(
    x: f64,
    cfg: &PsiTransformConfig,
    tf: &TestFunction,
) -> Result<(Complex64, Complex64), TransformError> {
    let engine = PsiEngine::new(tf, cfg)?;
    let p = engine.psi_pair(x);
    check_tail(p.psi0.norm().max(p.psi1.norm()).into(), p.tail, cfg)?;
    Ok((p.plus(), p.minus()))
}

fn check_tail(value: Complex64, tail: f64, cfg: &PsiTransformConfig) -> Result<(), TransformError> {
    if tail > cfg.quad_tol * value.norm() {
        return Err(TransformError::Truncation { value, tail, suggested_tau_max: 1.5 * cfg.tau_max });
    }
    Ok(())
}

const OVERSAMPLE: usize = 8;
const STENCIL: usize = 12;

/// Ψ_0 and Ψ_1 sampled on a fine uniform grid in L = log(π³x), evaluated by
/// local Lagrange interpolation.
#[derive(Clone, Debug)]
pub struct PsiTable {
    sigma: f64,
    l0: f64,
    dl: f64,
    s: [Vec<Complex64>; 2],
    x_range: (f64, f64),
    tail: [f64; 2],
    bary: [f64; STENCIL],
}

impl PsiTable {
    fn build(engine: &PsiEngine, x_min: f64, x_max: f64) -> Self {
        assert!(0.0 < x_min && x_min <= x_max);
        let h = engine.cfg.tau_step;
        let n = 2 * engine.j_max + 1;
        let p = (OVERSAMPLE * n).next_power_of_two();
        let dl = TAU / (p as f64 * h);
        let pad = (STENCIL as f64 + 2.0) * dl;
        let lmin = (PI.powi(3) * x_min).ln() - pad;
        let lmax = (PI.powi(3) * x_max).ln() + pad;
        assert!(lmax - lmin < 0.9 * TAU / h, "x range too wide for the tau step");
        let count = ((lmax - lmin) / dl).ceil() as usize + 1;
        let fft = FftPlanner::new().plan_fft_forward(p);
        let jm = engine.j_max as f64;
        let s = [0usize, 1].map(|k| {
            // S(L_m) = h e^{iJhL_m} Σ_j' [F_j' e^{−ij'hL0}] e^{−2πi j'm/P}
            let mut buf = vec![Complex64::new(0.0, 0.0); p];
            for (idx, v) in engine.f[k].iter().enumerate() {
                buf[idx] = v * Complex64::from_polar(1.0, -(idx as f64) * h * lmin);
            }
            fft.process(&mut buf);
            (0..count).map(|m| buf[m] * Complex64::from_polar(h, jm * h * (lmin + m as f64 * dl))).collect::<Vec<_>>()
        });
        let mut bary = [0.0; STENCIL];
        for (i, b) in bary.iter_mut().enumerate() {
            // (−1)^i C(n−1, i)
            let mut c = 1.0;
            for t in 0..i {
                c = c * (STENCIL - 1 - t) as f64 / (t + 1) as f64;
            }
            *b = if i % 2 == 0 { c } else { -c };
        }
        let tail = [0, 1].map(|k| engine.edge_mass[k] + 1e-15 * engine.total_mass[k]);
        Self { sigma: engine.cfg.sigma, l0: lmin, dl, s, x_range: (x_min, x_max), tail, bary }
    }

    pub fn x_range(&self) -> (f64, f64) {
        self.x_range
    }

    fn interp(&self, k: usize, l: f64) -> Complex64 {
        let pos = (l - self.l0) / self.dl;
        let start =
            (pos.floor() as i64 - (STENCIL as i64 / 2 - 1)).clamp(0, (self.s[k].len() - STENCIL) as i64) as usize;
        let t = pos - start as f64;
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for i in 0..STENCIL {
            let d = t - i as f64;
            if d.abs() < 1e-14 {
                return self.s[k][start + i];
            }
            let wi = self.bary[i] / d;
            num += self.s[k][start + i] * wi;
            den += wi;
        }
        num / den
    }

    pub fn psi_pair(&self, x: f64) -> PsiPair {
        debug_assert!(x >= self.x_range.0 * (1.0 - 1e-12) && x <= self.x_range.1 * (1.0 + 1e-12));
        let l = (PI.powi(3) * x).ln();
        let pre = (PI.powi(3) * x).powf(-self.sigma) / TAU;
        PsiPair {
            psi0: self.interp(0, l) * pre,
            psi1: self.interp(1, l) * pre,
            tail: pre * self.tail[0].max(self.tail[1]),
        }
    }
}
