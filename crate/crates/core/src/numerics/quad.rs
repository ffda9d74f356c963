use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use thiserror::Error;

use super::ComplexSum;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Upper bound on the width of the initial panels.
    pub max_width: Option<f64>,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 0.0, rel_tol: 1e-8, max_width: None, max_panels: 200_000 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    /// Integral of |f| as seen by the Kronrod rule.
    pub abs_mass: f64,
    pub panels: usize,
}

#[derive(Clone, Copy, Debug, Error)]
#[error("quadrature did not converge: estimated error {achieved:e} after {panels} panels")]
pub struct QuadError {
    pub achieved: f64,
    pub value: Complex64,
    pub panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs_mass: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut mass = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        kron += (f1 + f2) * WGK[j];
        mass += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kron * h;
    let raw = ((kron - gauss) * h).norm();
    // QUADPACK-style pessimistic scaling of the embedded estimate
    let error = if raw > 0.0 {
        let scale = mass * h.abs();
        let r = (200.0 * raw / scale.max(f64::MIN_POSITIVE)).powf(1.5);
        (scale * r.min(1.0)).max(raw).max(50.0 * f64::EPSILON * scale)
    } else {
        0.0
    };
    Panel { a, b, value, error, abs_mass: mass * h.abs() }
}

/// Globally adaptive 15-point Gauss–Kronrod quadrature of a complex integrand on `[a, b]`.
///
/// Stops when the summed error estimate is below `max(abs_tol, rel_tol * |I|)`.
pub fn gauss_kronrod_adaptive<F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> Complex64,
{
    let n0 = match opts.max_width {
        Some(w) if w > 0.0 => ((b - a).abs() / w).ceil().max(1.0) as usize,
        _ => 1,
    };
    let mut heap = BinaryHeap::with_capacity(2 * n0);
    let step = (b - a) / n0 as f64;
    for i in 0..n0 {
        let lo = a + step * i as f64;
        let hi = if i + 1 == n0 { b } else { a + step * (i + 1) as f64 };
        heap.push(gk15(&f, lo, hi));
    }
    let mut total_err: f64 = heap.iter().map(|p| p.error).sum();
    let mut total: Complex64 = heap.iter().map(|p| p.value).sum();
    let mut refreshes = 0usize;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.norm());
        if total_err <= target {
            break;
        }
        if heap.len() >= opts.max_panels {
            let (value, error, _) = summarize(&heap);
            return Err(QuadError { achieved: error, value, panels: heap.len() });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // panel cannot be split further in floating point
            let (value, error, _) = summarize(&heap);
            return Err(QuadError {
                achieved: error + worst.error,
                value: value + worst.value,
                panels: heap.len() + 1,
            });
        }
        let left = gk15(&f, worst.a, mid);
        let right = gk15(&f, mid, worst.b);
        total_err += left.error + right.error - worst.error;
        total += left.value + right.value - worst.value;
        heap.push(left);
        heap.push(right);
        refreshes += 1;
        if refreshes % 1024 == 0 {
            let (v, e, _) = summarize(&heap);
            total = v;
            total_err = e;
        }
    }
    let (value, error, abs_mass) = summarize(&heap);
    Ok(QuadResult { value, error, abs_mass, panels: heap.len() })
}

fn summarize(heap: &BinaryHeap<Panel>) -> (Complex64, f64, f64) {
    let mut v = ComplexSum::new();
    let mut e = 0.0;
    let mut m = 0.0;
    for p in heap.iter() {
        v.add(p.value);
        e += p.error;
        m += p.abs_mass;
    }
    (v.value(), e, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn real<F: Fn(f64) -> f64>(f: F) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn polynomial_exact() {
        let r = gauss_kronrod_adaptive(real(|x| x.powi(7) - 3.0 * x * x), 0.0, 2.0, &QuadOptions::default()).unwrap();
        assert!((r.value.re - (32.0 - 8.0)).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_exponential() {
        // ∫_0^1 e^{iωx} dx = (e^{iω} - 1)/(iω)
        let w = 400.0;
        let opts = QuadOptions { rel_tol: 1e-12, max_width: Some(PI / w), ..Default::default() };
        let r = gauss_kronrod_adaptive(|x| Complex64::new(0.0, w * x).exp(), 0.0, 1.0, &opts).unwrap();
        let exact = (Complex64::new(0.0, w).exp() - 1.0) / Complex64::new(0.0, w);
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn endpoint_singularity_adapts() {
        let r = gauss_kronrod_adaptive(
            real(|x: f64| x.sqrt().recip()),
            0.0,
            1.0,
            &QuadOptions { rel_tol: 1e-9, ..Default::default() },
        )
        .unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-8);
    }

    #[test]
    fn reports_failure() {
        let opts = QuadOptions { rel_tol: 1e-14, max_panels: 4, ..Default::default() };
        let e = gauss_kronrod_adaptive(real(|x: f64| (50.0 * x).sin().abs()), 0.0, 1.0, &opts).unwrap_err();
        assert!(e.achieved > 0.0);
    }
}
