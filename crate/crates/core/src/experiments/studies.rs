use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::ExperimentError;
use crate::hecke::{moment_sum, MomentKind, SymSquareForm};
use crate::numerics::ols_slope;
use crate::transforms::{
    envelope, mellin_fourier_I, stationary_main_term, EnvelopeParams, PsiEngine, PsiTransformConfig, TestFunction,
};

#[derive(Clone, Debug, PartialEq)]
pub struct MomentGrowth {
    pub kind: MomentKind,
    pub exponent: f64,
    /// (x, moment, moment / x^exponent)
    pub rows: Vec<(u64, f64, f64)>,
    /// Slope of log(moment / x^exponent) against log x.
    pub slope: f64,
}

pub fn moment_growth(
    form: &SymSquareForm,
    xs: &[u64],
    kind: MomentKind,
    exponent: f64,
) -> Result<MomentGrowth, ExperimentError> {
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        let v = moment_sum(form, x, kind)?;
        rows.push((x, v, v / (x as f64).powf(exponent)));
    }
    let slope = if rows.len() >= 2 {
        let lx: Vec<f64> = rows.iter().map(|r| (r.0 as f64).ln()).collect();
        let ly: Vec<f64> = rows.iter().map(|r| r.2.ln()).collect();
        ols_slope(&lx, &ly)
    } else {
        f64::NAN
    };
    Ok(MomentGrowth { kind, exponent, rows, slope })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StationarySweep {
    pub n: f64,
    pub theta: f64,
    /// (τ, |I(τ) − main(τ)|)
    pub points: Vec<(f64, f64)>,
    /// sup |I − main| · |τ|^{3/2}
    pub constant: f64,
}

/// |I(τ) − main(τ)| on `count` log-spaced |τ| in [lo, hi], with τ of the sign
/// that puts the stationary point −τ/θ on the positive axis.
pub fn stationary_phase_sweep(
    n: f64,
    theta: f64,
    lo: f64,
    hi: f64,
    count: usize,
    tol: f64,
) -> Result<StationarySweep, ExperimentError> {
    if theta == 0.0 || !(lo >= 1.0 && hi >= lo) || count == 0 {
        return Err(ExperimentError::Config(format!("bad sweep: theta={theta}, range [{lo}, {hi}], count={count}")));
    }
    let tf = TestFunction::standard(n, theta);
    let taus: Vec<f64> = (0..count)
        .map(|i| {
            let f = if count == 1 { 0.0 } else { i as f64 / (count - 1) as f64 };
            -theta.signum() * lo * (hi / lo).powf(f)
        })
        .collect();
    let points = taus
        .par_iter()
        .map(|&tau| {
            let i = mellin_fourier_I(&tf, tau, tol)?;
            let m = stationary_main_term(&tf, tau)?;
            Ok((tau, (i - m).norm()))
        })
        .collect::<Result<Vec<_>, ExperimentError>>()?;
    let constant = points.iter().map(|&(t, e)| e * t.abs().powf(1.5)).fold(0.0, f64::max);
    Ok(StationarySweep { n, theta, points, constant })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeGrid {
    pub ts: Vec<f64>,
    pub ns: Vec<f64>,
    /// |θN| = T^e for each e; `None` is θ = 0.
    pub theta_n_exponents: Vec<Option<f64>>,
    /// x = f·U/N for each f.
    pub x_factors: Vec<f64>,
    /// Split point for the stability comparison.
    pub t_split: f64,
}

impl Default for EnvelopeGrid {
    fn default() -> Self {
        Self {
            ts: vec![10.0, 20.0, 27.56, 40.0, 60.0],
            ns: vec![500.0, 2000.0],
            theta_n_exponents: vec![None, Some(0.5), Some(1.0)],
            x_factors: vec![0.003, 0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0],
            t_split: 30.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeCell {
    pub x: f64,
    pub theta: f64,
    pub n: f64,
    pub t: f64,
    pub psi_plus: Complex64,
    pub psi_minus: Complex64,
    /// 𝓜 + 𝓔_Δ
    pub envelope: f64,
    /// max(|Ψ₊|, |Ψ₋|) / envelope
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeFit {
    pub cells: Vec<EnvelopeCell>,
    /// max ratio over all cells
    pub constant: f64,
    /// max ratio over cells with T ≤ t_split
    pub constant_low: f64,
    pub worst: EnvelopeCell,
    pub stable: bool,
}

/// Fits the single constant C with |Ψ±| ≤ C(𝓜 + 𝓔_Δ) over the grid.
/// With θ ≠ 0 the localization point |θN|T²/((2π)³N) is added to the x values.
pub fn envelope_fit(grid: &EnvelopeGrid, params: &EnvelopeParams) -> Result<EnvelopeFit, ExperimentError> {
    let mut configs = Vec::new();
    for &t in &grid.ts {
        for &n in &grid.ns {
            for &e in &grid.theta_n_exponents {
                configs.push((t, n, e.map_or(0.0, |e| t.powf(e) / n)));
            }
        }
    }
    let per_config = configs
        .par_iter()
        .map(|&(t, n, theta)| {
            let tf = TestFunction::standard(n, theta);
            let engine = PsiEngine::new(&tf, &PsiTransformConfig::new(&tf, t))?;
            let tn = (theta * n).abs();
            let u = (1.0 + t * t).max(t * t * tn).max(tn.powi(3));
            let mut xs: Vec<f64> = grid.x_factors.iter().map(|f| f * u / n).collect();
            if tn > 0.0 {
                xs.push(tn * t * t / (TAU.powi(3) * n));
            }
            let cells: Vec<EnvelopeCell> = xs
                .into_iter()
                .map(|x| {
                    let pair = engine.psi_pair(x);
                    let env = envelope(x, theta, n, t, params);
                    let total = env.m + env.e_delta;
                    let (p, m) = (pair.plus(), pair.minus());
                    EnvelopeCell {
                        x,
                        theta,
                        n,
                        t,
                        psi_plus: p,
                        psi_minus: m,
                        envelope: total,
                        ratio: p.norm().max(m.norm()) / total,
                    }
                })
                .collect();
            Ok(cells)
        })
        .collect::<Result<Vec<_>, ExperimentError>>()?;
    let cells: Vec<EnvelopeCell> = per_config.into_iter().flatten().collect();
    let worst = *cells
        .iter()
        .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
        .ok_or_else(|| ExperimentError::Config("empty envelope grid".into()))?;
    let constant = worst.ratio;
    let constant_low = cells.iter().filter(|c| c.t <= grid.t_split).map(|c| c.ratio).fold(0.0, f64::max);
    let stable = constant_low > 0.0 && constant <= 2.0 * constant_low;
    Ok(EnvelopeFit { cells, constant, constant_low, worst, stable })
}
