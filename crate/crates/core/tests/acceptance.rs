//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout. Exits
//! non-zero if a criterion fails that is not listed in `KNOWN_RED`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symsq_core::arith::{kloosterman, mobius, weil_check_with, KloostermanTable};
use symsq_core::experiments::*;
use symsq_core::hecke::{verify_local_euler_identity, MaassGL2Form, MomentKind, SymSquareForm};
use symsq_core::transforms::{EnvelopeParams, PsiEngine, PsiTransformConfig, TestFunction};
use symsq_core::voronoi::{VoronoiContext, VoronoiOptions};

use common::{form, lift};

/// Criteria expected to fail; see the moment discussion in the README.
const KNOWN_RED: &[u32] = &[7];
/// Reported, never fatal.
const REPORT_ONLY: &[u32] = &[9];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn euler_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cases: Vec<f64> = (0..100).map(|_| rng.gen_range(-2.0..=2.0)).collect();
    cases.extend([2.0, 0.0]);
    let worst = cases.iter().map(|&l| verify_local_euler_identity(l)).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-10 && elapsed < Duration::from_secs(1),
        format!("max residual {worst:.1e} over {} cases in {elapsed:.2?}", cases.len()),
    )
}

fn kloosterman_sums() -> Outcome {
    let start = Instant::now();
    let mu_err = (1..=500u64).map(|c| (kloosterman(1, 0, c) - mobius(c) as f64).abs()).fold(0.0, f64::max);
    let mut checked = 0u64;
    let mut violation = None;
    for c in 1..=200u64 {
        let table = KloostermanTable::new(c);
        for a in 0..c as i64 {
            for b in 0..c as i64 {
                checked += 1;
                let w = weil_check_with(&table, a, b);
                if !w.ok && violation.is_none() {
                    violation = Some((a, b, c, w.value, w.bound));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mu_err < 1e-8 && violation.is_none() && elapsed < Duration::from_secs(30);
    outcome(pass, format!("|S(1,0;c) - mu(c)| <= {mu_err:.1e} for c <= 500; Weil checked on {checked} sums, violation {violation:?}; {elapsed:.2?}"))
}

fn stationary_phase() -> Outcome {
    let n = 1000.0;
    let mut cs = Vec::new();
    for tn in [1e2f64, 1e3, 1e4] {
        match stationary_phase_sweep(n, tn / n, tn.powf(0.95), tn.powf(1.05), 200, 1e-12) {
            Ok(s) => cs.push((tn, s.constant)),
            Err(e) => return outcome(false, format!("|θN| = {tn}: {e}")),
        }
    }
    // growth per decade of |θN|; an error of order |τ|^{-1} would show 10^{1/2}
    let growth: Vec<f64> = cs.windows(2).map(|w| (w[1].1 / w[0].1).log10()).collect();
    let last = *growth.last().unwrap();
    let settling = growth.windows(2).all(|g| g[1] < g[0]);
    let fitted = cs.iter().map(|c| c.1).fold(0.0, f64::max);
    let table: Vec<String> = cs.iter().map(|(tn, c)| format!("{tn:.0e}:{c:.1}")).collect();
    outcome(
        last < 0.25 && settling,
        format!(
            "sup|I - main||τ|^1.5 by |θN| = [{}]; growth exponents {growth:.3?}; fitted C = {fitted:.1}",
            table.join(", ")
        ),
    )
}

fn contour_shift() -> Outcome {
    let n = 1000.0;
    let mut worst = (0.0f64, 0.0, 0.0, 0u8);
    for (t, theta) in [10.0f64, 27.56, 60.0].into_iter().flat_map(|t| [(t, 0.0), (t, 0.02)]) {
        let tf = TestFunction::standard(n, theta);
        let engines: Result<Vec<PsiEngine>, _> =
            [-0.5, 0.0, 0.5].iter().map(|&s| PsiEngine::new(&tf, &PsiTransformConfig::with_sigma(&tf, t, s))).collect();
        let engines = match engines {
            Ok(e) => e,
            Err(e) => return outcome(false, format!("T = {t}: {e}")),
        };
        let tn = theta * n;
        let u = (1.0 + t * t).max(t * t * tn).max(tn.powi(3));
        for i in 0..20 {
            let x = 1e-2 * u / n * 1000f64.powf(i as f64 / 19.0);
            for k in [0u8, 1] {
                let v: Vec<Complex64> = engines.iter().map(|e| e.psi_k(k, x).value).collect();
                for w in &v[1..] {
                    let r = (w - v[0]).norm() / v[0].norm();
                    if r > worst.0 {
                        worst = (r, t, x, k);
                    }
                }
            }
        }
    }
    let (r, t, x, k) = worst;
    outcome(r < 1e-6, format!("max relative spread {r:.1e} (T = {t}, x = {x:.3e}, k = {k}) over T in {{10, 27.56, 60}}, θN in {{0, 20}}, 20 x, k in {{0, 1}}"))
}

fn voronoi_identity() -> Outcome {
    let s = lift();
    let pairs = [(1i64, 1u64), (1, 2), (1, 3), (1, 4), (2, 5)];
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for theta in [0.0, 0.02] {
        let tf = TestFunction::standard(1000.0, theta);
        let ctx = match VoronoiContext::new(s, &tf, 5, VoronoiOptions::default()) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("θ = {theta}: {e}")),
        };
        for &(a, c) in &pairs {
            match ctx.residual(a, c) {
                Ok(r) => worst = worst.max(r.relative_residual),
                Err(e) => return outcome(false, format!("θ = {theta}, a/c = {a}/{c}: {e}")),
            }
        }
    }
    notes.push(format!("fixture max residual {worst:.1e} (θN = 0, 20)"));
    let syn = MaassGL2Form::synthetic(form().t_j(), form().p_max(), 11);
    let ss = SymSquareForm::new(&syn, syn.p_max()).expect("synthetic lift");
    let tf = TestFunction::standard(1000.0, 0.0);
    let ctx = VoronoiContext::new(&ss, &tf, 5, VoronoiOptions::default()).expect("synthetic context");
    let control = [(1i64, 1u64), (1, 3), (2, 5)]
        .iter()
        .map(|&(a, c)| ctx.residual(a, c).map(|r| r.relative_residual).unwrap_or(f64::INFINITY))
        .fold(f64::INFINITY, f64::min);
    notes.push(format!("synthetic control min residual {control:.2}"));
    outcome(worst < 1e-3 && control > 0.1, notes.join("; "))
}

fn exponent_scan_slope() -> Outcome {
    let start = Instant::now();
    match exponent_scan(lift(), &ScanConfig::dyadic(8, 16, 64, 2024)) {
        Ok(r) => {
            let elapsed = start.elapsed();
            outcome(
                r.slope <= 0.85 && elapsed < Duration::from_secs(600),
                format!(
                    "slope {:.3} (normalized {:.3}) over N = 2^8..2^16, 64 alphas, {elapsed:.2?}",
                    r.slope, r.normalized_slope
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn moment_growth_trend() -> Outcome {
    let xs = [1000u64, 10_000, 100_000];
    let mut parts = Vec::new();
    let mut pass = true;
    for kind in [MomentKind::A2, MomentKind::Sym2Fourth] {
        match moment_growth(lift(), &xs, kind, 1.05) {
            Ok(g) => {
                pass &= g.slope <= 0.0;
                let norm: Vec<String> = g.rows.iter().map(|r| format!("{:.3}", r.2)).collect();
                parts.push(format!("{kind}/x^1.05 = [{}] slope {:+.3}", norm.join(", "), g.slope));
            }
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(pass, parts.join("; "))
}

fn unsmoothing() -> Outcome {
    let defect = unsmoothing_kernel(100).indicator_defect();
    let mut l1 = Vec::new();
    let mut l1_ok = true;
    for x in [1u64, 10, 100, 1000, 10_000] {
        let h = unsmoothing_kernel(x);
        l1_ok &= h.l1_norm() <= h.l1_bound();
        l1.push(format!("{:.3}", h.l1_norm()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s = lift();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n: f64 = rng.gen_range(1.0..=1e4);
        let alpha: f64 = rng.gen();
        let r = unsmooth_decompose(s, n, alpha).and_then(|u| {
            let (lo, hi) = u.window;
            Ok((u.value - (sharp_sum(s, hi, alpha)? - sharp_sum(s, lo, alpha)?)).norm())
        });
        match r {
            Ok(e) => worst = worst.max(e),
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(
        defect < 1e-12 && l1_ok && worst < 1e-8,
        format!("indicator defect {defect:.1e} at x = 100; L1 = [{}] for x = 1..1e4; decomposition max error {worst:.1e} over 50 draws", l1.join(", ")),
    )
}

fn envelope_soundness() -> Outcome {
    match envelope_fit(&EnvelopeGrid::default(), &EnvelopeParams::default()) {
        Ok(fit) => {
            let w = fit.worst;
            outcome(
                fit.stable,
                format!(
                    "{} cells, C = {:.3} (T <= 30: {:.3}); binding cell x = {:.3e}, θ = {:.3e}, N = {}, T = {}",
                    fit.cells.len(),
                    fit.constant,
                    fit.constant_low,
                    w.x,
                    w.theta,
                    w.n,
                    w.t
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "euler-identity", euler_identity),
        (2, "kloosterman", kloosterman_sums),
        (3, "stationary-phase", stationary_phase),
        (4, "contour-shift", contour_shift),
        (5, "voronoi-identity", voronoi_identity),
        (6, "exponent-scan", exponent_scan_slope),
        (7, "moment-growth", moment_growth_trend),
        (8, "unsmoothing", unsmoothing),
        (9, "envelope", envelope_soundness),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let tag = match (o.pass, KNOWN_RED.contains(&id), REPORT_ONLY.contains(&id)) {
            (true, _, _) => "PASS",
            (false, true, _) => "FAIL (known)",
            (false, _, true) => "FAIL (report-only)",
            (false, false, false) => {
                unexpected.push(id);
                "FAIL"
            }
        };
        println!("{tag} {id} {name}: {} [{:.1?}]", o.detail, start.elapsed());
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
