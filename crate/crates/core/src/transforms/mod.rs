//! Archimedean analysis: test functions, the Fourier–Mellin integral and its
//! stationary-phase main term, the contour integrals Ψ_k and Ψ±, and the
//! piecewise bound envelope for Ψ±.

mod envelope;
mod mellin;
mod psi;
mod weight;

pub use envelope::{envelope, Envelope, EnvelopeParams};
pub use mellin::{mellin_fourier, mellin_fourier_I, stationary_main_term, MellinGrid};
pub use psi::{
    gamma_ratio, psi_k, psi_plus_minus, PsiEngine, PsiPair, PsiTable, PsiTransformConfig, PsiValue, DEFAULT_QUAD_TOL,
    DEFAULT_SIGMA, DEFAULT_TAU_STEP,
};
pub use weight::{PlateauBump, SmoothWeight, StandardBump, TestFunction, Weight};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Quadrature(#[from] crate::numerics::QuadError),
    #[error("truncation tail {tail:e} exceeds tolerance for value {value}; try tau_max >= {suggested_tau_max}")]
    Truncation { value: num_complex::Complex64, tail: f64, suggested_tau_max: f64 },
}
