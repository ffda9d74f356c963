use std::f64::consts::TAU;

use num_complex::Complex64;

use super::ExperimentError;
use crate::hecke::{HeckeError, SymSquareForm};
use crate::numerics::ComplexSum;
use crate::transforms::Weight;

// e(αn) with the integer part of α removed first
fn e_alpha(alpha: f64, n: u64) -> Complex64 {
    let frac = alpha - alpha.floor();
    let t = (frac * n as f64).fract();
    Complex64::from_polar(1.0, TAU * t)
}

fn check_range(form: &SymSquareForm, n: u64) -> Result<(), ExperimentError> {
    if n > form.n_max() {
        return Err(HeckeError::OutOfRange { n, n_max: form.n_max() }.into());
    }
    Ok(())
}

/// Σ_{n ≤ N} A(1,n) e(αn).
pub fn sharp_sum(form: &SymSquareForm, n: u64, alpha: f64) -> Result<Complex64, ExperimentError> {
    check_range(form, n)?;
    let a = form.a1n();
    let mut acc = ComplexSum::new();
    for m in 1..=n {
        acc.add(e_alpha(alpha, m) * a[m as usize]);
    }
    Ok(acc.value())
}

/// The partial sums Σ_{n ≤ N} A(1,n) e(αn) at every N in `ns` (ascending),
/// from a single pass.
pub fn sharp_sums_at(form: &SymSquareForm, ns: &[u64], alpha: f64) -> Result<Vec<Complex64>, ExperimentError> {
    let Some(&top) = ns.last() else { return Ok(Vec::new()) };
    check_range(form, top)?;
    let a = form.a1n();
    let mut out = Vec::with_capacity(ns.len());
    let mut acc = ComplexSum::new();
    let mut next = ns.iter().peekable();
    while next.peek().is_some_and(|&&n| n == 0) {
        out.push(acc.value());
        next.next();
    }
    for m in 1..=top {
        acc.add(e_alpha(alpha, m) * a[m as usize]);
        while next.peek().is_some_and(|&&n| n == m) {
            out.push(acc.value());
            next.next();
        }
    }
    Ok(out)
}

/// Σ_n A(1,n) e(αn) w(n) over the support of w.
pub fn smooth_sum(form: &SymSquareForm, w: &dyn Weight, alpha: f64) -> Result<Complex64, ExperimentError> {
    let (lo, hi) = w.support();
    let lo = lo.ceil().max(1.0) as u64;
    let hi = hi.floor() as u64;
    check_range(form, hi)?;
    let a = form.a1n();
    let mut acc = ComplexSum::new();
    for m in lo..=hi {
        let wm = w.eval(m as f64);
        if wm != 0.0 {
            acc.add(e_alpha(alpha, m) * (a[m as usize] * wm));
        }
    }
    Ok(acc.value())
}
