//! Experiment drivers: twisted sums, exponent scans, the predicted-bound
//! calculator, unsmoothing, and the numerical studies behind the CLI.

mod bounds;
mod scan;
mod studies;
mod sums;
mod unsmooth;

pub use bounds::{balanced_q, predicted_bounds, predicted_bounds_with, PredictedBounds, GATE_EPSILON};
pub use scan::{alpha_samples, exponent_scan, AlphaRule, QRule, ScanConfig, ScanResult, ScanRow};
pub use studies::{
    envelope_fit, moment_growth, stationary_phase_sweep, EnvelopeCell, EnvelopeFit, EnvelopeGrid, MomentGrowth,
    StationarySweep,
};
pub use sums::{sharp_sum, sharp_sums_at, smooth_sum};
pub use unsmooth::{
    dyadic_windows, sharp_via_windows, unsmooth_decompose, unsmooth_window, unsmoothing_kernel, Unsmoothed,
    UnsmoothingKernel,
};

use thiserror::Error;

use crate::hecke::HeckeError;
use crate::transforms::TransformError;
use crate::voronoi::VoronoiError;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Voronoi(#[from] VoronoiError),
    #[error("invalid configuration: {0}")]
    Config(String),
}
