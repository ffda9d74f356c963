use std::path::Path;

use anyhow::{bail, Context, Result};
use symsq_core::arith::{gcd, rem};
use symsq_core::experiments::{
    exponent_scan as run_scan, moment_growth, predicted_bounds, sharp_sum, smooth_sum, unsmoothing_kernel,
    ExperimentError,
};
use symsq_core::hecke::{IngestOptions, MaassGL2Form, MomentKind, SymSquareForm};
use symsq_core::transforms::{
    envelope, EnvelopeParams, PsiEngine, PsiTransformConfig, StandardBump, TestFunction, TransformError,
    DEFAULT_QUAD_TOL,
};
use symsq_core::voronoi::{VoronoiContext, VoronoiError, VoronoiOptions};

use crate::config::ScanFile;
use crate::output::{num, CsvOut};
use crate::Global;

/// The default residual threshold for `voronoi-check`.
const VORONOI_TOL: f64 = 1e-3;
const KERNEL_TOL: f64 = 1e-9;
const MOMENT_EXPONENT: f64 = 1.05;

pub enum Outcome {
    Pass,
    ToleranceFailure(String),
}

/// 3 for errors that mean a numerical tolerance could not be met, else 2.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    fn transform(e: &TransformError) -> bool {
        matches!(e, TransformError::Truncation { .. } | TransformError::Quadrature(_))
    }
    fn voronoi(e: &VoronoiError) -> bool {
        match e {
            VoronoiError::Truncation { .. } => true,
            VoronoiError::Transform(t) => transform(t),
            _ => false,
        }
    }
    for cause in err.chain() {
        let tolerance = if let Some(e) = cause.downcast_ref::<TransformError>() {
            transform(e)
        } else if let Some(e) = cause.downcast_ref::<VoronoiError>() {
            voronoi(e)
        } else if let Some(e) = cause.downcast_ref::<ExperimentError>() {
            match e {
                ExperimentError::Transform(t) => transform(t),
                ExperimentError::Voronoi(v) => voronoi(v),
                _ => false,
            }
        } else {
            false
        };
        if tolerance {
            return 3;
        }
    }
    2
}

fn load(g: &Global) -> Result<MaassGL2Form> {
    let form = MaassGL2Form::from_path(&g.data, IngestOptions { strict_ramanujan: g.strict_ramanujan })
        .with_context(|| format!("loading {}", g.data.display()))?;
    if !form.warnings().is_empty() {
        eprintln!("symsq: {} eigenvalue(s) exceed the Kim-Sarnak bound", form.warnings().len());
    }
    Ok(form)
}

fn lift(form: &MaassGL2Form, n_max: u64) -> Result<SymSquareForm> {
    if n_max > form.p_max() {
        bail!("need coefficients up to {n_max}, data covers primes up to {}", form.p_max());
    }
    Ok(SymSquareForm::new(form, n_max.max(1))?)
}

fn tol_or(g: &Global, default: f64) -> Result<f64> {
    let t = g.tol.unwrap_or(default);
    if !(t > 0.0 && t.is_finite()) {
        bail!("tolerance must be positive, got {t}");
    }
    Ok(t)
}

pub fn ingest(g: &Global) -> Result<Outcome> {
    let form = load(g)?;
    let mut out = CsvOut::open(g.out.as_deref(), "ingest", &["p", "lambda_p", "kim_sarnak_violation"])?;
    let flagged: std::collections::HashSet<u64> = form.warnings().iter().map(|w| w.p).collect();
    for (&p, &l) in form.primes().iter().zip(form.prime_eigenvalues()) {
        out.row([p.to_string(), num(l), flagged.contains(&p).to_string()])?;
    }
    out.finish(&[
        ("t_j", num(form.t_j())),
        ("p_max", form.p_max().to_string()),
        ("precision", num(form.data_precision())),
        ("primes", form.primes().len().to_string()),
    ])?;
    Ok(Outcome::Pass)
}

pub fn coeffs(g: &Global, n: u64) -> Result<Outcome> {
    let sym = lift(&load(g)?, n)?;
    let mut out = CsvOut::open(g.out.as_deref(), "coeffs", &["n", "lambda_n", "a_1n"])?;
    for m in 1..=n {
        out.row([m.to_string(), num(sym.hecke().lambda(m)?), num(sym.a1(m)?)])?;
    }
    out.finish(&[("T", num(sym.t()))])?;
    Ok(Outcome::Pass)
}

pub fn sum(g: &Global, n: u64, alpha: f64, smooth: bool) -> Result<Outcome> {
    if n == 0 || !alpha.is_finite() {
        bail!("need N >= 1 and finite alpha");
    }
    let form = load(g)?;
    let s = if smooth {
        smooth_sum(&lift(&form, 2 * n)?, &StandardBump::new(n as f64), alpha)?
    } else {
        sharp_sum(&lift(&form, n)?, n, alpha)?
    };
    let mut out = CsvOut::open(g.out.as_deref(), "sum", &["N", "alpha", "smooth", "re", "im", "abs"])?;
    out.row([n.to_string(), num(alpha), smooth.to_string(), num(s.re), num(s.im), num(s.norm())])?;
    out.finish(&[])?;
    Ok(Outcome::Pass)
}

pub fn voronoi_check(g: &Global, cs: &[u64], as_: &[i64], n: f64, theta: f64, synthetic: bool) -> Result<Outcome> {
    let tol = tol_or(g, VORONOI_TOL)?;
    if !(n >= 1.0) || !theta.is_finite() {
        bail!("need N >= 1 and finite theta");
    }
    if cs.contains(&0) {
        bail!("moduli must be positive");
    }
    let mut form = load(g)?;
    if synthetic {
        form = MaassGL2Form::synthetic(form.t_j(), form.p_max(), g.seed.unwrap_or(0));
    }
    let sym = lift(&form, form.p_max())?;
    let tf = TestFunction::standard(n, theta);
    let c_max = *cs.iter().max().expect("clap requires at least one modulus");
    let ctx = VoronoiContext::new(&sym, &tf, c_max, VoronoiOptions::default())?;
    let mut out = CsvOut::open(
        g.out.as_deref(),
        "voronoi-check",
        &[
            "a",
            "c",
            "d",
            "N",
            "theta",
            "T",
            "lhs_re",
            "lhs_im",
            "rhs_re",
            "rhs_im",
            "n2_max",
            "tail_bound",
            "suggested_n2_max",
            "relative_residual",
        ],
    )?;
    let mut worst: f64 = 0.0;
    let mut rows = 0;
    for &c in cs {
        for &a in as_ {
            if gcd(rem(a, c), c) != 1 {
                eprintln!("symsq: skipping a={a}, c={c}: not coprime");
                continue;
            }
            let r = ctx.residual(a, c)?;
            if let Some(s) = r.suggested_n2_max {
                eprintln!(
                    "symsq: a={a}, c={c}: dual tail {:.2e} above target; n2_max >= {s} needs more data",
                    r.tail_bound
                );
            }
            worst = worst.max(r.relative_residual);
            rows += 1;
            out.row([
                a.to_string(),
                c.to_string(),
                r.d.to_string(),
                num(r.n),
                num(r.theta),
                num(r.t),
                num(r.lhs.re),
                num(r.lhs.im),
                num(r.rhs.re),
                num(r.rhs.im),
                r.n2_max.to_string(),
                num(r.tail_bound),
                r.suggested_n2_max.map_or(String::new(), |s| s.to_string()),
                num(r.relative_residual),
            ])?;
        }
    }
    if rows == 0 {
        bail!("no coprime (a, c) pairs given");
    }
    out.finish(&[("max_relative_residual", num(worst)), ("synthetic", synthetic.to_string())])?;
    Ok(if worst <= tol {
        Outcome::Pass
    } else {
        Outcome::ToleranceFailure(format!("relative residual {worst:.3e} > {tol:e}"))
    })
}

pub fn psi(g: &Global, xs: &[f64], theta: f64, n: f64, t: f64, sigma: f64) -> Result<Outcome> {
    let tol = tol_or(g, DEFAULT_QUAD_TOL)?;
    if xs.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        bail!("x values must be positive");
    }
    if !(n > 0.0 && t > 0.0) || !theta.is_finite() {
        bail!("need N > 0, T > 0 and finite theta");
    }
    let tf = TestFunction::standard(n, theta);
    let cfg = PsiTransformConfig::with_sigma(&tf, t, sigma);
    cfg.validate(&tf)?;
    let engine = PsiEngine::new(&tf, &cfg)?;
    let params = EnvelopeParams::default();
    let mut out = CsvOut::open(
        g.out.as_deref(),
        "psi",
        &[
            "x",
            "theta",
            "N",
            "T",
            "sigma",
            "psi_plus_re",
            "psi_plus_im",
            "psi_minus_re",
            "psi_minus_im",
            "envelope_M",
            "envelope_E",
            "tail_estimate",
        ],
    )?;
    let mut failed = None;
    for &x in xs {
        let pair = engine.psi_pair(x);
        let env = envelope(x, theta, n, t, &params);
        let (p, m) = (pair.plus(), pair.minus());
        let scale = pair.psi0.norm().max(pair.psi1.norm());
        if pair.tail > tol * scale && failed.is_none() {
            failed = Some(format!("x={x}: tail {:.2e} exceeds {tol:e} of |Psi| = {scale:.3e}", pair.tail));
        }
        out.row([x, theta, n, t, sigma, p.re, p.im, m.re, m.im, env.m, env.e_delta, pair.tail].map(num))?;
    }
    out.finish(&[("tau_max", num(cfg.tau_max)), ("tau_step", num(cfg.tau_step))])?;
    Ok(failed.map_or(Outcome::Pass, Outcome::ToleranceFailure))
}

pub fn exponent_scan(g: &Global, config: &Path) -> Result<Outcome> {
    let cfg = ScanFile::load(config)?.into_config(g.seed)?;
    let form = load(g)?;
    let sym = lift(&form, *cfg.n_grid.last().expect("validated non-empty"))?;
    let r = run_scan(&sym, &cfg)?;
    let mut out = CsvOut::open(
        g.out.as_deref(),
        "exponent-scan",
        &["N", "Q", "max_abs", "argmax_alpha", "normalized", "predicted_main"],
    )?;
    for row in &r.rows {
        let pred = predicted_bounds(1.0, 0.0, row.n as f64, sym.t(), cfg.p_exponent, row.big_q);
        out.row([
            row.n.to_string(),
            num(row.big_q),
            num(row.max_abs),
            num(row.argmax_alpha),
            num(row.normalized),
            num(pred.s_m),
        ])?;
    }
    out.finish(&[
        ("slope", num(r.slope)),
        ("normalized_slope", num(r.normalized_slope)),
        ("seed", cfg.seed.to_string()),
    ])?;
    Ok(match g.tol {
        Some(max) if !(r.slope <= max) => Outcome::ToleranceFailure(format!("fitted slope {:.4} > {max}", r.slope)),
        _ => Outcome::Pass,
    })
}

pub fn moments(g: &Global, xs: &[u64], kind: &str) -> Result<Outcome> {
    let kind: MomentKind = kind.parse().map_err(anyhow::Error::msg)?;
    if xs.contains(&0) {
        bail!("x values must be positive");
    }
    let form = load(g)?;
    let sym = lift(&form, *xs.iter().max().expect("clap requires at least one x"))?;
    let growth = moment_growth(&sym, xs, kind, MOMENT_EXPONENT)?;
    let mut out = CsvOut::open(g.out.as_deref(), "moments", &["x", "kind", "value", "normalized"])?;
    for &(x, v, nv) in &growth.rows {
        out.row([x.to_string(), kind.to_string(), num(v), num(nv)])?;
    }
    out.finish(&[("exponent", num(MOMENT_EXPONENT)), ("slope", num(growth.slope))])?;
    Ok(match g.tol {
        Some(max) if !(growth.slope <= max) => {
            Outcome::ToleranceFailure(format!("normalized moment slope {:.4} > {max}", growth.slope))
        }
        _ => Outcome::Pass,
    })
}

pub fn kernel_check(g: &Global, xs: &[u64]) -> Result<Outcome> {
    let tol = tol_or(g, KERNEL_TOL)?;
    if xs.contains(&0) {
        bail!("x values must be positive");
    }
    let mut out =
        CsvOut::open(g.out.as_deref(), "kernel-check", &["x", "l1_norm", "l1_bound", "indicator_defect", "ok"])?;
    let mut failed = None;
    for &x in xs {
        let h = unsmoothing_kernel(x);
        let defect = h.indicator_defect();
        let ok = h.l1_norm() <= h.l1_bound() && defect <= tol;
        if !ok && failed.is_none() {
            failed =
                Some(format!("x={x}: L1 {:.4} vs {:.4}, indicator defect {defect:.2e}", h.l1_norm(), h.l1_bound()));
        }
        out.row([x.to_string(), num(h.l1_norm()), num(h.l1_bound()), num(defect), ok.to_string()])?;
    }
    out.finish(&[])?;
    Ok(failed.map_or(Outcome::Pass, Outcome::ToleranceFailure))
}
