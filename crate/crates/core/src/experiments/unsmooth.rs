use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::ExperimentError;
use crate::hecke::{HeckeError, SymSquareForm};
use crate::numerics::{gauss_kronrod_adaptive, CompensatedSum, QuadOptions};
use crate::transforms::{PlateauBump, Weight};

/// h(t) = Σ_{|m| ≤ x} e(−mt) on [0, 1]: the Dirichlet kernel, whose Fourier
/// coefficients are the indicator of |n| ≤ x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnsmoothingKernel {
    x: u64,
    l1_norm: f64,
}

pub fn unsmoothing_kernel(x: u64) -> UnsmoothingKernel {
    assert!(x >= 1, "kernel length must be positive");
    UnsmoothingKernel { x, l1_norm: dirichlet_l1(x) }
}

impl UnsmoothingKernel {
    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn eval(&self, t: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        dirichlet(self.x, t)
    }

    /// ∫₀¹ h(t) e(nt) dt, by orthogonality.
    pub fn fourier_coefficient(&self, n: i64) -> f64 {
        if n.unsigned_abs() <= self.x {
            1.0
        } else {
            0.0
        }
    }

    /// ∫₀¹ |h(t)| dt.
    pub fn l1_norm(&self) -> f64 {
        self.l1_norm
    }

    /// max over |n| ≤ 2x of the gap between the closed-form coefficient and
    /// the trapezoid sum (1/K) Σ_j h(j/K) e(nj/K), K > 3x, which is exact for
    /// this trigonometric polynomial.
    pub fn indicator_defect(&self) -> f64 {
        let x = self.x as usize;
        let k = (3 * x + 1).next_power_of_two();
        let mut buf: Vec<Complex64> =
            (0..k).map(|j| Complex64::new(dirichlet(self.x, j as f64 / k as f64), 0.0)).collect();
        FftPlanner::new().plan_fft_inverse(k).process(&mut buf);
        let x = x as i64;
        (-2 * x..=2 * x)
            .map(|n| (buf[n.rem_euclid(k as i64) as usize] / k as f64 - self.fourier_coefficient(n)).norm())
            .fold(0.0, f64::max)
    }

    /// The majorant 7 + log x.
    pub fn l1_bound(&self) -> f64 {
        7.0 + (self.x as f64).ln()
    }
}

fn dirichlet(x: u64, t: f64) -> f64 {
    let den = (PI * t).sin();
    if den.abs() < 1e-9 {
        // every term is 1 at an integer
        return (2 * x + 1) as f64;
    }
    ((2 * x + 1) as f64 * PI * t).sin() / den
}

// 2 ∫₀^{1/2} |h|, integrated between consecutive zeros k/(2x+1)
fn dirichlet_l1(x: u64) -> f64 {
    let m = (2 * x + 1) as f64;
    let opts = QuadOptions { rel_tol: 1e-12, abs_tol: 0.0, ..Default::default() };
    let mut acc = CompensatedSum::new();
    for k in 0..=x {
        let a = k as f64 / m;
        let b = ((k + 1) as f64 / m).min(0.5);
        let r = gauss_kronrod_adaptive(|t| Complex64::new(dirichlet(x, t), 0.0), a, b, &opts)
            .expect("smooth integrand between zeros");
        acc.add(r.value.re.abs());
    }
    2.0 * acc.value()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unsmoothed {
    /// S_w(hi) − S_w(lo), reconstructed through the kernel.
    pub value: Complex64,
    pub window: (u64, u64),
    /// Scale of the plateau weight used.
    pub scale: f64,
    pub upper: Complex64,
    pub lower: Complex64,
    /// ∫|h_hi(t)| |F(α+t)| dt, which bounds |S_w(hi)|.
    pub l1_majorant: f64,
}

/// Σ_{lo < n ≤ hi} A(1,n) e(αn) as S_w(hi) − S_w(lo), where w is a plateau
/// weight equal to 1 on (lo, hi] and S_w(x) = ∫₀¹ h_x(t) F(α+t) dt with
/// F(β) = Σ_n A(1,n) e(nβ) w(n).
///
/// The integral is taken by the K-point trapezoid rule, K > 2N + x, which is
/// exact for the trigonometric polynomial h_x·F.
pub fn unsmooth_window(form: &SymSquareForm, lo: u64, hi: u64, alpha: f64) -> Result<Unsmoothed, ExperimentError> {
    if hi == 0 || lo >= hi || 3 * lo + 3 < 2 * hi {
        return Err(ExperimentError::Config(format!("window ({lo}, {hi}] is not of the form (2M/3, M]")));
    }
    let scale = 8.0 * hi as f64 / 15.0;
    let w = PlateauBump::new(scale);
    let (plat_lo, plat_hi) = w.plateau();
    debug_assert!((lo + 1) as f64 >= plat_lo - 1e-9 && hi as f64 <= plat_hi + 1e-9);
    let (s_lo, s_hi) = w.support();
    let n_lo = s_lo.ceil().max(1.0) as u64;
    let n_hi = s_hi.floor() as u64;
    if n_hi > form.n_max() {
        return Err(HeckeError::OutOfRange { n: n_hi, n_max: form.n_max() }.into());
    }
    let k = (n_hi + hi + 1).next_power_of_two() as usize;
    let a = form.a1n();
    let frac = alpha - alpha.floor();
    let mut f = vec![Complex64::new(0.0, 0.0); k];
    for n in n_lo..=n_hi {
        let wn = w.eval(n as f64);
        if wn != 0.0 {
            f[n as usize % k] += Complex64::from_polar(a[n as usize] * wn, TAU * (frac * n as f64).fract());
        }
    }
    // F(α + j/K) = Σ_n c_n e(nj/K)
    FftPlanner::new().plan_fft_inverse(k).process(&mut f);
    let mut upper = (CompensatedSum::new(), CompensatedSum::new());
    let mut lower = (CompensatedSum::new(), CompensatedSum::new());
    let mut maj = CompensatedSum::new();
    for (j, fj) in f.iter().enumerate() {
        let t = j as f64 / k as f64;
        let (hu, hl) = (dirichlet(hi, t), dirichlet(lo, t));
        upper.0.add(hu * fj.re);
        upper.1.add(hu * fj.im);
        lower.0.add(hl * fj.re);
        lower.1.add(hl * fj.im);
        maj.add(hu.abs() * fj.norm());
    }
    let kf = k as f64;
    let upper = Complex64::new(upper.0.value(), upper.1.value()) / kf;
    let lower = Complex64::new(lower.0.value(), lower.1.value()) / kf;
    Ok(Unsmoothed { value: upper - lower, window: (lo, hi), scale, upper, lower, l1_majorant: maj.value() / kf })
}

/// The window (⌊5N/4⌋, ⌊15N/8⌋] = (2M/3, M] with M = 15N/8.
pub fn unsmooth_decompose(form: &SymSquareForm, n: f64, alpha: f64) -> Result<Unsmoothed, ExperimentError> {
    if !(n >= 1.0) {
        return Err(ExperimentError::Config(format!("scale must be at least 1, got {n}")));
    }
    let m = 15.0 * n / 8.0;
    unsmooth_window(form, (2.0 * m / 3.0).floor() as u64, m.floor() as u64, alpha)
}

/// Windows (lo, hi] with lo ≥ ⌈2hi/3⌉ covering (n0, n] exactly once, top down.
pub fn dyadic_windows(n0: u64, n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut hi = n;
    while hi > n0 {
        let lo = (2 * hi).div_ceil(3).max(n0).min(hi - 1);
        out.push((lo, hi));
        hi = lo;
    }
    out
}

/// Σ_{n0 < n ≤ n1} A(1,n) e(αn) stitched from unsmoothed windows.
pub fn sharp_via_windows(form: &SymSquareForm, n0: u64, n1: u64, alpha: f64) -> Result<Complex64, ExperimentError> {
    dyadic_windows(n0, n1)
        .into_iter()
        .try_fold(Complex64::new(0.0, 0.0), |acc, (lo, hi)| Ok(acc + unsmooth_window(form, lo, hi, alpha)?.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l1_at_one() {
        let exact = 1.0 / 3.0 + 2.0 * 3f64.sqrt() / PI;
        assert!((unsmoothing_kernel(1).l1_norm() - exact).abs() < 1e-10);
    }

    #[test]
    fn kernel_matches_its_sum() {
        let h = unsmoothing_kernel(7);
        for &t in &[0.0, 0.013, 0.25, 0.5, 0.77, 1.0] {
            let direct: f64 = (-7i64..=7).map(|m| (TAU * m as f64 * t).cos()).sum();
            assert!((h.eval(t) - direct).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn windows_tile() {
        for &(n0, n) in &[(0, 1), (0, 10), (300, 1000), (999, 1000), (5, 100_000)] {
            let w = dyadic_windows(n0, n);
            assert_eq!(w.first().unwrap().1, n);
            assert_eq!(w.last().unwrap().0, n0);
            for pair in w.windows(2) {
                assert_eq!(pair[0].0, pair[1].1);
            }
            for &(lo, hi) in &w {
                assert!(lo < hi && 3 * lo + 3 >= 2 * hi);
            }
        }
    }
}
