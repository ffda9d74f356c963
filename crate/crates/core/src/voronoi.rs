//! Both sides of the GL(3) Voronoi formula for the symmetric-square lift,
//! with controlled truncation of the dual sum, and the post-Voronoi majorant.

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::arith::{divisors, gcd, mobius, mod_inverse, rem, weil_bound, KloostermanTable};
use crate::hecke::{HeckeError, SymSquareForm};
use crate::numerics::{CompensatedSum, ComplexSum};
use crate::transforms::{
    envelope, EnvelopeParams, PsiEngine, PsiTable, PsiTransformConfig, TestFunction, TransformError,
};

#[derive(Debug, Error)]
pub enum VoronoiError {
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("{0}")]
    Domain(String),
    #[error("dual-sum tail bound {tail_bound:e} exceeds tolerance {tol:e}; suggested n2_max {suggested_n2_max}")]
    Truncation { tail_bound: f64, tol: f64, suggested_n2_max: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VoronoiOptions {
    /// Tolerance on the discarded dual tail, absolute after scaling by max(|lhs|, 1).
    pub tol: f64,
    /// Fixed truncation; `None` picks the smallest admissible value.
    pub n2_max: Option<u64>,
    pub sigma: f64,
    pub epsilon: f64,
}

impl Default for VoronoiOptions {
    fn default() -> Self {
        Self { tol: 1e-4, n2_max: None, sigma: -0.5, epsilon: 0.1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VoronoiReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub n2_max: u64,
    pub tail_bound: f64,
    /// Set when the tail bound exceeds the tolerance.
    pub suggested_n2_max: Option<u64>,
    pub relative_residual: f64,
    pub a: i64,
    pub c: u64,
    pub d: u64,
    pub n: f64,
    pub theta: f64,
    pub t: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualSum {
    pub value: Complex64,
    pub n2_max: u64,
    pub tail_bound: f64,
    pub suggested_n2_max: Option<u64>,
}

/// Σ_{n} A(1, n) e(n d̄ / c) ψ(n), over the support of ψ.
pub fn voronoi_lhs(form: &SymSquareForm, tf: &TestFunction, dbar: i64, c: u64) -> Result<Complex64, VoronoiError> {
    if c == 0 || gcd(rem(dbar, c), c) != 1 {
        return Err(VoronoiError::Domain(format!("need gcd(dbar, c) = 1 with c >= 1, got dbar={dbar}, c={c}")));
    }
    let (a, b) = tf.support();
    let lo = a.ceil().max(1.0) as u64;
    let hi = b.floor() as u64;
    if hi > form.n_max() {
        return Err(HeckeError::OutOfRange { n: hi, n_max: form.n_max() }.into());
    }
    let db = rem(dbar, c);
    let coeffs = form.a1n();
    let mut acc = ComplexSum::new();
    for n in lo..=hi {
        let frac = ((n % c) * db % c) as f64 / c as f64;
        acc.add(tf.eval(n as f64) * Complex64::from_polar(coeffs[n as usize], TAU * frac));
    }
    Ok(acc.value())
}

/// Reusable state for evaluating dual sums at fixed (form, ψ, T): the
/// tabulated Ψ± transforms.
pub struct VoronoiContext<'a> {
    form: &'a SymSquareForm,
    tf: TestFunction,
    table: PsiTable,
    opts: VoronoiOptions,
    c_max: u64,
}

impl<'a> VoronoiContext<'a> {
    /// Prepare for moduli up to `c_max`.
    pub fn new(
        form: &'a SymSquareForm,
        tf: &TestFunction,
        c_max: u64,
        opts: VoronoiOptions,
    ) -> Result<Self, VoronoiError> {
        let cfg = PsiTransformConfig::with_sigma(tf, form.t(), opts.sigma);
        let engine = PsiEngine::new(tf, &cfg)?;
        let c3 = (c_max as f64).powi(3);
        let table = engine.table(1.0 / c3, form.n_max() as f64);
        Ok(Self { form, tf: tf.clone(), table, opts, c_max })
    }

    pub fn test_function(&self) -> &TestFunction {
        &self.tf
    }

    /// The smallest truncation allowed by the localization rule:
    /// x N ≥ 10 U (N T)^ε at x = n2/c³.
    pub fn rule_n2_min(&self, c: u64) -> u64 {
        let n = self.tf.n();
        let t = self.form.t();
        let env =
            envelope(0.0, self.tf.theta(), n, t, &EnvelopeParams { epsilon: self.opts.epsilon, ..Default::default() });
        let x0 = 10.0 * env.u * (n * t).powf(self.opts.epsilon) / n;
        (x0 * (c as f64).powi(3)).ceil() as u64
    }

    /// Per-n2 terms of the dual sum (summed over n1 | c) and the matching
    /// absolute bounds 2c|A(n2,n1)| d(c/n1)√(c/n1) (|Ψ₊| + |Ψ₋|)/(n1 n2).
    fn dual_terms(&self, d: u64, c: u64, n2_cap: u64) -> (Vec<Complex64>, Vec<f64>) {
        let a = self.form.a1n();
        let c3 = (c as f64).powi(3);
        let mut terms = vec![Complex64::new(0.0, 0.0); n2_cap as usize + 1];
        let mut bounds = vec![0.0; n2_cap as usize + 1];
        for n1 in divisors(c) {
            let m = c / n1;
            let kt = KloostermanTable::new(m);
            let s_plus: Vec<f64> = (0..m).map(|r| kt.eval(d as i64, r as i64)).collect();
            let s_minus: Vec<f64> = (0..m).map(|r| kt.eval(d as i64, -(r as i64))).collect();
            let weil = weil_bound(1, 0, m).max(1.0);
            let mus: Vec<(u64, f64)> =
                divisors(n1).into_iter().map(|e| (e, mobius(e) as f64)).filter(|&(_, mu)| mu != 0.0).collect();
            let xs = (n1 * n1) as f64 / c3;
            let cap = n2_cap.min(self.form.n_max()) as usize;
            for n2 in 1..=cap {
                // A(n2, n1) via the Hecke relation
                let mut coeff = 0.0;
                for &(e, mu) in &mus {
                    if n2 as u64 % e == 0 {
                        coeff += mu * a[n2 / e as usize] * a[(n1 / e) as usize];
                    }
                }
                if coeff == 0.0 {
                    continue;
                }
                let p = self.table.psi_pair(n2 as f64 * xs);
                let (pp, pm) = (p.plus(), p.minus());
                let r = n2 % m as usize;
                let scale = c as f64 * coeff / (n1 as f64 * n2 as f64);
                terms[n2] += (pp * s_plus[r] + pm * s_minus[r]) * scale;
                bounds[n2] += 2.0 * scale.abs() * weil * (pp.norm() + pm.norm());
            }
        }
        (terms, bounds)
    }

    /// The dual side, truncated at n2 ≤ n2_max, with the bound on what was
    /// dropped. Never fails on truncation; see `suggested_n2_max`.
    pub fn rhs_report(&self, d: i64, c: u64) -> Result<DualSum, VoronoiError> {
        if c == 0 || c > self.c_max || gcd(rem(d, c), c) != 1 {
            return Err(VoronoiError::Domain(format!(
                "need gcd(d, c) = 1 and 1 <= c <= {}, got d={d}, c={c}",
                self.c_max
            )));
        }
        let d = rem(d, c);
        let cap = self.form.n_max();
        let (terms, bounds) = self.dual_terms(d, c, cap);
        // suffix sums of the bounds, plus an extrapolation past the table
        let octave = |lo: u64, hi: u64| -> f64 { bounds[(lo as usize + 1)..=(hi as usize)].iter().sum() };
        let last = octave(cap / 2, cap);
        let prev = octave(cap / 4, cap / 2);
        let beyond =
            if prev > 0.0 && last / prev < 0.5 { last * (last / prev) / (1.0 - last / prev) } else { 20.0 * last };
        let mut suffix = vec![0.0; cap as usize + 2];
        suffix[cap as usize + 1] = beyond;
        for n2 in (1..=cap as usize).rev() {
            suffix[n2] = suffix[n2 + 1] + bounds[n2];
        }
        let tail_at = |n2_max: u64| suffix[(n2_max as usize + 1).min(cap as usize + 1)];
        let tol = self.opts.tol;
        let n2_max = match self.opts.n2_max {
            Some(n) => n.clamp(1, cap),
            None => {
                let mut n = self.rule_n2_min(c).clamp(1, cap);
                while n < cap && tail_at(n) > tol {
                    n = (2 * n).min(cap);
                }
                n
            }
        };
        let tail_bound = tail_at(n2_max);
        let suggested_n2_max = if tail_bound > tol {
            Some((n2_max..=cap).find(|&n| tail_at(n) <= tol).unwrap_or(cap.saturating_mul(2)))
        } else {
            None
        };
        let mut acc = ComplexSum::new();
        for t in &terms[1..=n2_max as usize] {
            acc.add(*t);
        }
        Ok(DualSum { value: acc.value(), n2_max, tail_bound, suggested_n2_max })
    }

    /// Like [`Self::rhs_report`], but a tail above tolerance is an error.
    pub fn rhs(&self, d: i64, c: u64) -> Result<DualSum, VoronoiError> {
        let r = self.rhs_report(d, c)?;
        match r.suggested_n2_max {
            Some(s) => {
                Err(VoronoiError::Truncation { tail_bound: r.tail_bound, tol: self.opts.tol, suggested_n2_max: s })
            }
            None => Ok(r),
        }
    }

    pub fn residual(&self, a: i64, c: u64) -> Result<VoronoiReport, VoronoiError> {
        let d = mod_inverse(a, c).ok_or_else(|| VoronoiError::Domain(format!("gcd({a}, {c}) != 1")))?;
        let lhs = voronoi_lhs(self.form, &self.tf, a, c)?;
        let rhs = self.rhs_report(d as i64, c)?;
        let relative_residual = (lhs - rhs.value).norm() / lhs.norm().max(rhs.value.norm()).max(1.0);
        Ok(VoronoiReport {
            lhs,
            rhs: rhs.value,
            n2_max: rhs.n2_max,
            tail_bound: rhs.tail_bound,
            suggested_n2_max: rhs.suggested_n2_max,
            relative_residual,
            a,
            c,
            d,
            n: self.tf.n(),
            theta: self.tf.theta(),
            t: self.form.t(),
        })
    }

    /// max_± max_{r | q} max_{n1 | r} Σ_n |A(n,1)|/n |Ψ±(n n1²/r³)|, without
    /// the q^{3/2} factor.
    pub fn majorant_inner(&self, q: u64) -> f64 {
        assert!(q >= 1 && q <= self.c_max);
        let a = self.form.a1n();
        let cap = self.form.n_max() as usize;
        let mut best = 0.0f64;
        for r in divisors(q) {
            for n1 in divisors(r) {
                let xs = (n1 * n1) as f64 / (r as f64).powi(3);
                let (mut sp, mut sm) = (CompensatedSum::new(), CompensatedSum::new());
                for n in 1..=cap {
                    let p = self.table.psi_pair(n as f64 * xs);
                    let w = a[n].abs() / n as f64;
                    sp.add(w * p.plus().norm());
                    sm.add(w * p.minus().norm());
                }
                best = best.max(sp.value()).max(sm.value());
            }
        }
        best
    }
}

/// Dual side with an explicit or automatic truncation.
pub fn voronoi_rhs(
    form: &SymSquareForm,
    tf: &TestFunction,
    d: i64,
    c: u64,
    n2_max: Option<u64>,
) -> Result<DualSum, VoronoiError> {
    let ctx = VoronoiContext::new(form, tf, c, VoronoiOptions { n2_max, ..Default::default() })?;
    ctx.rhs(d, c)
}

/// Both sides with d = ā (mod c).
pub fn voronoi_residual(
    form: &SymSquareForm,
    tf: &TestFunction,
    a: i64,
    c: u64,
) -> Result<VoronoiReport, VoronoiError> {
    VoronoiContext::new(form, tf, c, VoronoiOptions::default())?.residual(a, c)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Majorant {
    pub q: u64,
    /// q^{3/2}
    pub prefactor: f64,
    pub inner: f64,
    pub value: f64,
}

/// q^{3/2} max_± max_{d|q} max_{n1|q/d} Σ_n |A(n,1)|/n |Ψ±(n n1²/(q/d)³)|.
pub fn post_voronoi_majorant(form: &SymSquareForm, tf: &TestFunction, q: u64) -> Result<Majorant, VoronoiError> {
    let ctx = VoronoiContext::new(form, tf, q, VoronoiOptions::default())?;
    Ok(majorant_with(&ctx, q))
}

pub fn majorant_with(ctx: &VoronoiContext<'_>, q: u64) -> Majorant {
    let inner = ctx.majorant_inner(q);
    let prefactor = (q as f64).powf(1.5);
    Majorant { q, prefactor, inner, value: prefactor * inner }
}
