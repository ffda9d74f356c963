/// ε used in the regime gates T^ε and T^{1−ε}.
pub const GATE_EPSILON: f64 = 0.1;

/// Q = N^{1/2} T^{−1/3}, where the two main terms Q^{3/2}T and N^{3/2}Q^{−3/2} meet.
pub fn balanced_q(n: f64, t: f64) -> f64 {
    n.sqrt() / t.cbrt()
}

/// Bound terms with all implied constants and ε-powers dropped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PredictedBounds {
    pub s_m: f64,
    pub s_e1: f64,
    pub s_e2: f64,
    pub total: f64,
}

pub fn predicted_bounds(q: f64, theta: f64, n: f64, t: f64, p: f64, big_q: f64) -> PredictedBounds {
    predicted_bounds_with(q, theta, n, t, p, big_q, GATE_EPSILON)
}

/// S_M = Q^{3/2}T + N^{3/2}Q^{−3/2};
/// S_E1 = q^{3/2} T² |θN|^{−1/2} (|θN|²/T²)^p on T^{2/3} ≤ |θN| ≤ T^{1−ε};
/// S_E2 = q^{3/2} |θN|^{1−p} T on T^ε ≤ |θN| ≤ T^{2/3}.
pub fn predicted_bounds_with(q: f64, theta: f64, n: f64, t: f64, p: f64, big_q: f64, eps: f64) -> PredictedBounds {
    let s_m = big_q.powf(1.5) * t + n.powf(1.5) / big_q.powf(1.5);
    let tn = (theta * n).abs();
    let q32 = q.powf(1.5);
    let s_e1 = if tn >= t.powf(2.0 / 3.0) && tn <= t.powf(1.0 - eps) {
        q32 * t * t / tn.sqrt() * (tn * tn / (t * t)).powf(p)
    } else {
        0.0
    };
    let s_e2 = if tn >= t.powf(eps) && tn <= t.powf(2.0 / 3.0) { q32 * tn.powf(1.0 - p) * t } else { 0.0 };
    PredictedBounds { s_m, s_e1, s_e2, total: s_m + s_e1 + s_e2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_zero_is_main_term_only() {
        let b = predicted_bounds(3.0, 0.0, 1e6, 50.0, 1.0, balanced_q(1e6, 50.0));
        assert_eq!(b.s_e1, 0.0);
        assert_eq!(b.s_e2, 0.0);
        assert_eq!(b.total, b.s_m);
    }

    #[test]
    fn optimal_q_balances_main_terms() {
        let (n, t) = (1e8, 1e3);
        let b = predicted_bounds(1.0, 0.0, n, t, 1.0, balanced_q(n, t));
        let target = 2.0 * n.powf(0.75) * t.sqrt();
        assert!((b.s_m / target - 1.0).abs() < 1e-12);
    }
}
