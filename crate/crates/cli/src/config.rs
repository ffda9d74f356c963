use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use symsq_core::experiments::{AlphaRule, QRule, ScanConfig};

/// On-disk form of an exponent scan.
///
/// ```toml
/// n_grid = [256, 512, 1024]       # or: n_min_exp = 8, n_max_exp = 16
/// alpha_samples = 64              # mixed low-discrepancy + near-rational
/// # alphas = [0.4142135623730951] # fixed list instead
/// q = "balanced"                  # or a number
/// p = 1.0
/// d = 0.25
/// seed = 7
/// ```
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanFile {
    pub n_grid: Option<Vec<u64>>,
    pub n_min_exp: Option<u32>,
    pub n_max_exp: Option<u32>,
    pub alpha_samples: Option<usize>,
    pub alphas: Option<Vec<f64>>,
    #[serde(default)]
    pub q: QSetting,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default = "default_d")]
    pub d: f64,
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(untagged)]
pub enum QSetting {
    #[default]
    #[serde(skip)]
    Balanced,
    Named(String),
    Value(f64),
}

fn default_p() -> f64 {
    1.0
}

fn default_d() -> f64 {
    0.25
}

impl ScanFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// `seed` overrides the file's seed when given.
    pub fn into_config(self, seed: Option<u64>) -> Result<ScanConfig> {
        let n_grid = match (self.n_grid, self.n_min_exp, self.n_max_exp) {
            (Some(g), None, None) => g,
            (None, Some(lo), Some(hi)) if lo <= hi && hi < 63 => (lo..=hi).map(|k| 1u64 << k).collect(),
            _ => bail!("give either n_grid or both n_min_exp <= n_max_exp"),
        };
        let alphas = match (self.alpha_samples, self.alphas) {
            (Some(count), None) => AlphaRule::Mixed { count },
            (None, Some(v)) => AlphaRule::Fixed(v),
            (None, None) => AlphaRule::Mixed { count: 64 },
            _ => bail!("give at most one of alpha_samples and alphas"),
        };
        let q_rule = match self.q {
            QSetting::Balanced => QRule::Balanced,
            QSetting::Named(s) if s == "balanced" => QRule::Balanced,
            QSetting::Named(s) => bail!("unknown Q rule {s:?}; use \"balanced\" or a number"),
            QSetting::Value(q) => QRule::Explicit(q),
        };
        let cfg = ScanConfig {
            n_grid,
            alphas,
            q_rule,
            p_exponent: self.p,
            d_exponent: self.d,
            seed: seed.or(self.seed).unwrap_or(0),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
