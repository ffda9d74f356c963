use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{balanced_q, sharp_sums_at, ExperimentError};
use crate::arith::gcd;
use crate::hecke::SymSquareForm;
use crate::numerics::ols_slope;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Debug, PartialEq)]
pub enum AlphaRule {
    /// Half a Kronecker sequence, half points a/q ± 1/(qQ) with log-uniform q ≤ Q.
    Mixed {
        count: usize,
    },
    Fixed(Vec<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QRule {
    /// Q = N^{1/2} T^{−1/3}.
    Balanced,
    Explicit(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub n_grid: Vec<u64>,
    pub alphas: AlphaRule,
    pub q_rule: QRule,
    pub p_exponent: f64,
    pub d_exponent: f64,
    pub seed: u64,
}

impl ScanConfig {
    /// N = 2^lo, ..., 2^hi with the mixed α rule.
    pub fn dyadic(lo: u32, hi: u32, alpha_count: usize, seed: u64) -> Self {
        Self {
            n_grid: (lo..=hi).map(|k| 1u64 << k).collect(),
            alphas: AlphaRule::Mixed { count: alpha_count },
            q_rule: QRule::Balanced,
            p_exponent: 1.0,
            d_exponent: 0.25,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let err = |m: String| Err(ExperimentError::Config(m));
        if self.n_grid.is_empty() {
            return err("empty N grid".into());
        }
        if self.n_grid.iter().any(|n| !n.is_power_of_two()) || self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return err(format!("N grid must be ascending powers of two, got {:?}", self.n_grid));
        }
        match &self.alphas {
            AlphaRule::Mixed { count: 0 } => return err("need at least one alpha sample".into()),
            AlphaRule::Fixed(v) if v.is_empty() => return err("need at least one alpha sample".into()),
            AlphaRule::Fixed(v) if v.iter().any(|a| !a.is_finite()) => {
                return err("alpha samples must be finite".into())
            }
            _ => {}
        }
        if ![0.5, 0.75, 1.0].contains(&self.p_exponent) {
            return err(format!("p must be 1/2, 3/4 or 1, got {}", self.p_exponent));
        }
        if (self.d_exponent - 0.25).abs() > 1e-12 && (self.d_exponent - 1.0 / 3.0).abs() > 1e-12 {
            return err(format!("D must be 1/4 or 1/3, got {}", self.d_exponent));
        }
        Ok(())
    }

    fn q_for(&self, n: u64, t: f64) -> Result<f64, ExperimentError> {
        let q = match self.q_rule {
            QRule::Balanced => balanced_q(n as f64, t),
            QRule::Explicit(q) => q,
        };
        if !(q >= 1.0) {
            return Err(ExperimentError::Config(format!("Q = {q} < 1 at N = {n}; the bound is trivial there")));
        }
        Ok(q)
    }
}

/// The α samples used at one scale, deterministic in (seed, N).
pub fn alpha_samples(rule: &AlphaRule, big_q: f64, n: u64, seed: u64) -> Vec<f64> {
    let count = match rule {
        AlphaRule::Fixed(v) => return v.clone(),
        AlphaRule::Mixed { count } => *count,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let shift: f64 = rng.gen();
    let n_low = count.div_ceil(2);
    let mut out: Vec<f64> = (1..=n_low).map(|k| (shift + k as f64 * GOLDEN).fract()).collect();
    while out.len() < count {
        let q = (big_q.ln() * rng.gen::<f64>()).exp().floor().max(1.0) as u64;
        let a = loop {
            let a = rng.gen_range(0..q);
            if gcd(a, q) == 1 {
                break a;
            }
        };
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        out.push((a as f64 / q as f64 + sign / (q as f64 * big_q)).rem_euclid(1.0));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub n: u64,
    pub big_q: f64,
    pub max_abs: f64,
    pub argmax_alpha: f64,
    /// max|S| / (N^{3/4} (1+T²)^D).
    pub normalized: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    /// Slope of log max|S| against log N.
    pub slope: f64,
    /// Slope of log normalized against log N.
    pub normalized_slope: f64,
}

pub fn exponent_scan(form: &SymSquareForm, cfg: &ScanConfig) -> Result<ScanResult, ExperimentError> {
    cfg.validate()?;
    let t = form.t();
    let lambda = (1.0 + t * t).powf(cfg.d_exponent);
    let rows = cfg
        .n_grid
        .par_iter()
        .map(|&n| {
            let big_q = cfg.q_for(n, t)?;
            let alphas = alpha_samples(&cfg.alphas, big_q, n, cfg.seed);
            let mut best = (f64::NEG_INFINITY, 0.0);
            for &a in &alphas {
                let s: Complex64 = sharp_sums_at(form, &[n], a)?[0];
                if s.norm() > best.0 {
                    best = (s.norm(), a);
                }
            }
            Ok(ScanRow {
                n,
                big_q,
                max_abs: best.0,
                argmax_alpha: best.1,
                normalized: best.0 / ((n as f64).powf(0.75) * lambda),
            })
        })
        .collect::<Result<Vec<_>, ExperimentError>>()?;
    let (slope, normalized_slope) = if rows.len() >= 2 {
        let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.max_abs.ln()).collect();
        let zs: Vec<f64> = rows.iter().map(|r| r.normalized.ln()).collect();
        (ols_slope(&xs, &ys), ols_slope(&xs, &zs))
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(ScanResult { rows, slope, normalized_slope })
}
