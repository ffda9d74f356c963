use std::fmt::Debug;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

/// A compactly supported weight function.
pub trait Weight: Send + Sync + Debug {
    /// Closed interval outside of which the weight vanishes.
    fn support(&self) -> (f64, f64);
    fn eval(&self, y: f64) -> f64;
}

/// A weight usable in integral transforms: it must also supply its
/// Euler-operator derivatives (y d/dy)^j w for j = 0..=4.
pub trait SmoothWeight: Weight {
    fn euler_derivatives(&self, y: f64) -> [f64; 5];
}

/// w(y) = exp(1 − 1/(1 − u²)), u = (2y − 3N)/N, supported on [N, 2N].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StandardBump {
    n: f64,
}

impl StandardBump {
    pub fn new(n: f64) -> Self {
        assert!(n > 0.0, "scale must be positive");
        Self { n }
    }

    pub fn scale(&self) -> f64 {
        self.n
    }

    fn u(&self, y: f64) -> f64 {
        (2.0 * y - 3.0 * self.n) / self.n
    }

    /// w^{(j)}(y) for j = 0..=4.
    pub fn derivatives(&self, y: f64) -> [f64; 5] {
        let d = profile_derivatives(self.u(y));
        let s = 2.0 / self.n;
        [d[0], d[1] * s, d[2] * s * s, d[3] * s.powi(3), d[4] * s.powi(4)]
    }

    /// c_j = sup |w^{(j)}| N^j for j = 0..=4; independent of N.
    pub fn derivative_constants() -> [f64; 5] {
        static C: OnceLock<[f64; 5]> = OnceLock::new();
        *C.get_or_init(|| {
            let mut c = [0.0f64; 5];
            let n = 200_000;
            let mut best_u = [0.0f64; 5];
            for i in 1..n {
                let u = -1.0 + 2.0 * i as f64 / n as f64;
                let d = profile_derivatives(u);
                for j in 0..5 {
                    let v = d[j].abs() * 2f64.powi(j as i32);
                    if v > c[j] {
                        c[j] = v;
                        best_u[j] = u;
                    }
                }
            }
            // polish each maximum on a finer local grid
            for j in 0..5 {
                let h = 2.0 / n as f64;
                for i in -1000..=1000 {
                    let u = best_u[j] + h * i as f64 / 1000.0;
                    if u.abs() < 1.0 {
                        c[j] = c[j].max(profile_derivatives(u)[j].abs() * 2f64.powi(j as i32));
                    }
                }
            }
            c
        })
    }
}

// φ(u) = exp(1 − 1/(1 − u²)) and its first four derivatives.
fn profile_derivatives(u: f64) -> [f64; 5] {
    if u.abs() >= 1.0 {
        return [0.0; 5];
    }
    let a = 1.0 - u;
    let b = 1.0 + u;
    let phi = (1.0 - 1.0 / (a * b)).exp();
    if phi == 0.0 {
        return [0.0; 5];
    }
    // g = 1 − 1/(1−u²), g^{(j)} = −(j!/2)[(1−u)^{−j−1} + (−1)^j (1+u)^{−j−1}]
    let (ia, ib) = (1.0 / a, 1.0 / b);
    let g1 = -0.5 * (ia * ia - ib * ib);
    let g2 = -(ia.powi(3) + ib.powi(3));
    let g3 = -3.0 * (ia.powi(4) - ib.powi(4));
    let g4 = -12.0 * (ia.powi(5) + ib.powi(5));
    [
        phi,
        g1 * phi,
        (g2 + g1 * g1) * phi,
        (g3 + 3.0 * g1 * g2 + g1.powi(3)) * phi,
        (g4 + 4.0 * g1 * g3 + 3.0 * g2 * g2 + 6.0 * g1 * g1 * g2 + g1.powi(4)) * phi,
    ]
}

impl Weight for StandardBump {
    fn support(&self) -> (f64, f64) {
        (self.n, 2.0 * self.n)
    }

    fn eval(&self, y: f64) -> f64 {
        let u = self.u(y);
        if u.abs() >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - u * u)).exp()
        }
    }
}

impl SmoothWeight for StandardBump {
    fn euler_derivatives(&self, y: f64) -> [f64; 5] {
        let d = self.derivatives(y);
        let (y2, y3) = (y * y, y * y * y);
        let (t1, t2, t3, t4) = (y * d[1], y2 * d[2], y3 * d[3], y2 * y2 * d[4]);
        [d[0], t1, t1 + t2, t1 + 3.0 * t2 + t3, t1 + 7.0 * t2 + 6.0 * t3 + t4]
    }
}

/// Smooth weight supported on [N, 2N] and identically 1 on [5N/4, 15N/8].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlateauBump {
    n: f64,
}

impl PlateauBump {
    pub fn new(n: f64) -> Self {
        assert!(n > 0.0, "scale must be positive");
        Self { n }
    }

    /// The plateau [5N/4, 15N/8] on which the weight is exactly 1.
    pub fn plateau(&self) -> (f64, f64) {
        (1.25 * self.n, 1.875 * self.n)
    }
}

// smooth step: 0 for t ≤ 0, 1 for t ≥ 1
fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let e = |s: f64| (-1.0 / s).exp();
    let (a, b) = (e(t), e(1.0 - t));
    a / (a + b)
}

impl Weight for PlateauBump {
    fn support(&self) -> (f64, f64) {
        (self.n, 2.0 * self.n)
    }

    fn eval(&self, y: f64) -> f64 {
        let n = self.n;
        smooth_step((y - n) / (0.25 * n)) * smooth_step((2.0 * n - y) / (0.125 * n))
    }
}

/// ψ(y) = e^{iθy} w(y).
#[derive(Clone, Debug)]
pub struct TestFunction {
    theta: f64,
    weight: Arc<dyn SmoothWeight>,
}

impl TestFunction {
    pub fn new(theta: f64, weight: Arc<dyn SmoothWeight>) -> Self {
        Self { theta, weight }
    }

    /// Standard bump on [N, 2N] with frequency θ.
    pub fn standard(n: f64, theta: f64) -> Self {
        Self::new(theta, Arc::new(StandardBump::new(n)))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// N, the left end of the support.
    pub fn n(&self) -> f64 {
        self.weight.support().0
    }

    pub fn support(&self) -> (f64, f64) {
        self.weight.support()
    }

    pub fn weight(&self) -> &dyn SmoothWeight {
        self.weight.as_ref()
    }

    pub fn w(&self, y: f64) -> f64 {
        self.weight.eval(y)
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        Complex64::from_polar(self.weight.eval(y), self.theta * y)
    }

    /// (y d/dy)^j ψ(y) for j = 0..=4.
    pub fn euler_derivatives(&self, y: f64) -> [Complex64; 5] {
        let wd = self.weight.euler_derivatives(y);
        let c = Complex64::new(0.0, self.theta * y);
        // (y d/dy)^n e^{cy} = e^{cy} Σ_i S(n, i) (cy)^i
        const S2: [[f64; 5]; 5] = [
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 1.0, 0.0, 0.0],
            [0.0, 1.0, 3.0, 1.0, 0.0],
            [0.0, 1.0, 7.0, 6.0, 1.0],
        ];
        const BINOM: [[f64; 5]; 5] = [
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0, 0.0],
            [1.0, 2.0, 1.0, 0.0, 0.0],
            [1.0, 3.0, 3.0, 1.0, 0.0],
            [1.0, 4.0, 6.0, 4.0, 1.0],
        ];
        let pows = [Complex64::new(1.0, 0.0), c, c * c, c * c * c, c * c * c * c];
        let e: [Complex64; 5] = std::array::from_fn(|n| (0..=n).map(|i| pows[i] * S2[n][i]).sum());
        let phase = Complex64::from_polar(1.0, self.theta * y);
        std::array::from_fn(|n| phase * (0..=n).map(|j| e[j] * BINOM[n][j] * wd[n - j]).sum::<Complex64>())
    }
}
