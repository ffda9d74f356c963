use super::{HeckeError, SymSquareForm};
use crate::numerics::CompensatedSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentKind {
    /// S_{4,2}(x) = Σ |λ(n²)|⁴
    Sym2Fourth,
    /// Σ |λ(n)|⁸
    Eighth,
    /// Σ |A(1, n)|²
    A2,
    /// Σ |A(1, n)|⁴
    A4,
}

impl std::str::FromStr for MomentKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sym2-4th" => Ok(Self::Sym2Fourth),
            "8th" => Ok(Self::Eighth),
            "A2" | "a2" => Ok(Self::A2),
            "A4" | "a4" => Ok(Self::A4),
            _ => Err(format!("unknown moment kind {s:?} (expected sym2-4th, 8th, A2, A4)")),
        }
    }
}

impl std::fmt::Display for MomentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Sym2Fourth => "sym2-4th",
            Self::Eighth => "8th",
            Self::A2 => "A2",
            Self::A4 => "A4",
        })
    }
}

/// Partial sum over 1 ≤ n ≤ x.
pub fn moment_sum(form: &SymSquareForm, x: u64, kind: MomentKind) -> Result<f64, HeckeError> {
    if x == 0 {
        return Ok(0.0);
    }
    if x > form.n_max() {
        return Err(HeckeError::OutOfRange { n: x, n_max: form.n_max() });
    }
    let x = x as usize;
    let s: CompensatedSum = match kind {
        MomentKind::A2 => form.a1n()[1..=x].iter().map(|a| a * a).collect(),
        MomentKind::A4 => form.a1n()[1..=x].iter().map(|a| (a * a) * (a * a)).collect(),
        MomentKind::Eighth => form.hecke().values()[1..=x].iter().map(|l| (l * l).powi(4)).collect(),
        MomentKind::Sym2Fourth => {
            let h = form.hecke();
            (1..=x as u64).map(|n| h.lambda_of_square(n).expect("n ≤ n_max").powi(4)).collect()
        }
    };
    Ok(s.value())
}

pub const SHORT_INTERVAL_EPS: f64 = 0.1;

#[derive(Clone, Debug, PartialEq)]
pub struct ShortInterval {
    pub sum: f64,
    /// (p, sum / ((B/A)^p A^ε)) for p ∈ {1/2, 3/4, 1}.
    pub ratios: [(f64, f64); 3],
}

/// Σ |A(1, n)|/n over integers n ∈ [A − B, A + B].
pub fn short_interval_sum(form: &SymSquareForm, a: f64, b: f64) -> Result<ShortInterval, HeckeError> {
    assert!(a > 0.0 && (0.0..=a).contains(&b), "need 0 <= B <= A");
    let lo = (a - b).ceil().max(1.0) as u64;
    let hi = (a + b).floor() as u64;
    if hi > form.n_max() {
        return Err(HeckeError::OutOfRange { n: hi, n_max: form.n_max() });
    }
    let s: CompensatedSum = (lo..=hi).map(|n| form.a1n()[n as usize].abs() / n as f64).collect();
    let sum = s.value();
    let ratios = [0.5, 0.75, 1.0].map(|p| (p, sum / ((b / a).powf(p) * a.powf(SHORT_INTERVAL_EPS))));
    Ok(ShortInterval { sum, ratios })
}
