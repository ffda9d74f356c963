//! Numerical building blocks shared by the transform and experiment code.

mod gamma;
mod quad;
mod sum;

pub use gamma::ln_gamma;
pub use quad::{gauss_kronrod_adaptive, QuadError, QuadOptions, QuadResult};
pub use sum::{CompensatedSum, ComplexSum};

/// Ordinary least-squares slope of `ys` against `xs`.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}
