use std::f64::consts::TAU;

/// Free parameters of the envelope: ε, the decay exponent A and the
/// multiplier K used to read "≪" in the regime conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopeParams {
    pub epsilon: f64,
    pub decay: f64,
    pub threshold: f64,
}

impl Default for EnvelopeParams {
    fn default() -> Self {
        Self { epsilon: 0.1, decay: 2.0, threshold: 100.0 }
    }
}

/// The profile 𝓜 + 𝓔_Δ bounding |Ψ±(x)| up to a constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub u: f64,
    pub delta: f64,
    pub m: f64,
    pub e_delta: f64,
    pub epsilon: f64,
    /// Multiplies `m + e_delta`; 1 until a fit supplies one.
    pub fitted_constant: f64,
}

impl Envelope {
    pub fn total(&self) -> f64 {
        self.fitted_constant * (self.m + self.e_delta)
    }

    pub fn with_constant(self, c: f64) -> Self {
        Self { fitted_constant: c, ..self }
    }
}

pub fn envelope(x: f64, theta: f64, n: f64, t: f64, params: &EnvelopeParams) -> Envelope {
    assert!(t > 0.0 && n > 0.0, "need T > 0 and N > 0");
    let eps = params.epsilon;
    let k = params.threshold;
    let tn = (theta * n).abs();
    let u = (1.0 + t * t).max(t * t * tn).max(tn.powi(3));
    let delta = (x * n - tn * t * t / TAU.powi(3)).abs();
    let nt_eps = (n * t).powf(eps);
    let m = (1.0 + t).max(tn.powf(1.5)) * nt_eps * (1.0 + x * n / (u * nt_eps)).powf(-params.decay);
    let upper_window = (t.powf(2.0 / 3.0)..=t.powf(1.0 - eps)).contains(&tn);
    let lower_window = (t.powf(eps)..=t.powf(2.0 / 3.0)).contains(&tn);
    let e_delta = if upper_window && delta <= k * tn.powi(3) {
        t * t / tn.sqrt()
    } else if upper_window && delta <= k * tn * t * t {
        t.powi(3) * tn / delta
    } else if lower_window && delta <= k * tn * t * t {
        tn * t * (t * t / delta).min(1.0)
    } else {
        0.0
    };
    Envelope { u, delta, m, e_delta, epsilon: eps, fitted_constant: 1.0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_zero_is_otherwise_branch() {
        let e = envelope(3.0, 0.0, 1000.0, 27.56, &EnvelopeParams::default());
        assert_eq!(e.u, 1.0 + 27.56f64.powi(2));
        assert_eq!(e.delta, 3000.0);
        assert_eq!(e.e_delta, 0.0);
        assert!(e.m > 0.0);
    }

    #[test]
    fn first_branch_boundary() {
        let t: f64 = 1000.0;
        let n = 100.0;
        let tn = t.powf(2.0 / 3.0);
        let theta = tn / n;
        // choose x so that Δ = 0
        let x = tn * t * t / TAU.powi(3) / n;
        let e = envelope(x, theta, n, t, &EnvelopeParams::default());
        assert!(e.delta < 1e-6 * tn * t * t);
        assert!((e.e_delta - t.powf(5.0 / 3.0)).abs() < 1e-9 * t.powf(5.0 / 3.0));
    }
}
