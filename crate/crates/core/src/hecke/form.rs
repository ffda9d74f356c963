use std::io::{BufRead, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HeckeError;
use crate::arith::Sieve;

pub const DEFAULT_PRECISION: f64 = 1e-9;

/// A level-one Maass cusp form given by its spectral parameter and its Hecke
/// eigenvalues at every prime up to `p_max`.
#[derive(Clone, Debug)]
pub struct MaassGL2Form {
    t_j: f64,
    primes: Vec<u64>,
    lambdas: Vec<f64>,
    data_precision: f64,
    synthetic: bool,
    warnings: Vec<RamanujanWarning>,
}

/// A prime whose eigenvalue fails the Kim–Sarnak sanity gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RamanujanWarning {
    pub p: u64,
    pub lambda: f64,
    pub bound: f64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IngestOptions {
    /// Reject data violating the Ramanujan bound |λ(p)| ≤ 2 (plus precision)
    /// instead of only warning on Kim–Sarnak violations.
    pub strict_ramanujan: bool,
}

fn kim_sarnak_bound(p: u64, precision: f64) -> f64 {
    2.0 * (p as f64).powf(7.0 / 64.0) + precision
}

impl MaassGL2Form {
    /// Build a form from parallel prime/eigenvalue lists. The primes must be
    /// exactly the primes up to the last one, in order.
    pub fn new(
        t_j: f64,
        primes: Vec<u64>,
        lambdas: Vec<f64>,
        data_precision: f64,
        opts: IngestOptions,
    ) -> Result<Self, HeckeError> {
        if !(t_j > 0.0 && t_j.is_finite()) {
            return Err(HeckeError::Parse { line: 1, msg: format!("t_j must be positive, got {t_j}") });
        }
        assert_eq!(primes.len(), lambdas.len());
        let p_max = primes.last().copied().unwrap_or(1);
        let sieve = Sieve::new(p_max as usize);
        let mut expected = sieve.primes();
        for &p in &primes {
            match expected.next() {
                Some(q) if q as u64 == p => {}
                Some(q) => return Err(HeckeError::MissingPrime { p: q as u64 }),
                None => unreachable!("primes bounded by p_max"),
            }
        }
        let mut warnings = Vec::new();
        for (&p, &l) in primes.iter().zip(&lambdas) {
            if !l.is_finite() {
                return Err(HeckeError::Parse { line: 0, msg: format!("non-finite eigenvalue at p={p}") });
            }
            if opts.strict_ramanujan && l.abs() > 2.0 + data_precision {
                return Err(HeckeError::BoundViolation { p, value: l, bound: 2.0 + data_precision, gate: "Ramanujan" });
            }
            let ks = kim_sarnak_bound(p, data_precision);
            if l.abs() > ks {
                warnings.push(RamanujanWarning { p, lambda: l, bound: ks });
            }
        }
        Ok(Self { t_j, primes, lambdas, data_precision, synthetic: false, warnings })
    }

    /// Parse the line-oriented data format:
    ///
    /// ```text
    /// tj 13.779751351890738
    /// precision 1e-9
    /// 2 1.5493044778934
    /// 3 0.2468997724855
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse<R: BufRead>(reader: R, opts: IngestOptions) -> Result<Self, HeckeError> {
        let mut t_j = None;
        let mut precision = None;
        let mut primes: Vec<u64> = Vec::new();
        let mut lambdas = Vec::new();
        let mut sieve = Sieve::new(1 << 16);
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let body = line.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let mut fields = body.split_whitespace();
            let (k, v) = match (fields.next(), fields.next(), fields.next()) {
                (Some(k), Some(v), None) => (k, v),
                _ => {
                    return Err(HeckeError::Parse { line: line_no, msg: format!("expected two fields, got {body:?}") })
                }
            };
            let parse_f64 = |s: &str| {
                s.parse::<f64>().map_err(|e| HeckeError::Parse { line: line_no, msg: format!("bad number {s:?}: {e}") })
            };
            match k {
                "tj" => {
                    if t_j.is_some() || !primes.is_empty() {
                        return Err(HeckeError::Parse {
                            line: line_no,
                            msg: "tj header must appear once, first".into(),
                        });
                    }
                    t_j = Some(parse_f64(v)?);
                }
                "precision" => {
                    if t_j.is_none() || precision.is_some() || !primes.is_empty() {
                        return Err(HeckeError::Parse {
                            line: line_no,
                            msg: "precision must directly follow the tj header".into(),
                        });
                    }
                    let p = parse_f64(v)?;
                    if !(p >= 0.0 && p.is_finite()) {
                        return Err(HeckeError::Parse { line: line_no, msg: format!("invalid precision {p}") });
                    }
                    precision = Some(p);
                }
                _ => {
                    if t_j.is_none() {
                        return Err(HeckeError::Parse { line: line_no, msg: "missing tj header".into() });
                    }
                    let p: u64 = k
                        .parse()
                        .map_err(|e| HeckeError::Parse { line: line_no, msg: format!("bad prime {k:?}: {e}") })?;
                    let l = parse_f64(v)?;
                    while (p as usize) > sieve.limit() {
                        sieve = Sieve::new(2 * sieve.limit().max(p as usize));
                    }
                    if !sieve.is_prime(p as usize) {
                        return Err(HeckeError::NotPrime { line: line_no, p });
                    }
                    let prev = primes.last().copied().unwrap_or(1);
                    if p == prev {
                        return Err(HeckeError::Duplicate { line: line_no, p });
                    }
                    if p < prev {
                        return Err(HeckeError::OutOfOrder { line: line_no, p, prev });
                    }
                    // the next expected prime after prev
                    let next = (prev as usize + 1..).find(|&n| sieve.is_prime(n)).expect("primes are infinite") as u64;
                    if p != next {
                        return Err(HeckeError::MissingPrime { p: next });
                    }
                    primes.push(p);
                    lambdas.push(l);
                }
            }
        }
        let t_j = t_j.ok_or(HeckeError::Parse { line: 1, msg: "missing tj header".into() })?;
        Self::new(t_j, primes, lambdas, precision.unwrap_or(DEFAULT_PRECISION), opts)
    }

    pub fn from_path<P: AsRef<Path>>(path: P, opts: IngestOptions) -> Result<Self, HeckeError> {
        let f = std::fs::File::open(path)?;
        Self::parse(std::io::BufReader::new(f), opts)
    }

    /// Write in the format accepted by [`MaassGL2Form::parse`]; values use the
    /// shortest round-tripping representation.
    pub fn write<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "tj {}", self.t_j)?;
        writeln!(w, "precision {}", self.data_precision)?;
        for (p, l) in self.primes.iter().zip(&self.lambdas) {
            writeln!(w, "{p} {l}")?;
        }
        Ok(())
    }

    /// A non-automorphic stand-in: λ(p) = 2cos(θ_p) with θ_p drawn from the
    /// Sato–Tate distribution. Hecke relations hold by construction, but no
    /// Voronoi formula does.
    pub fn synthetic(t_j: f64, p_max: u64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sieve = Sieve::new(p_max as usize);
        let primes: Vec<u64> = sieve.primes().map(|p| p as u64).collect();
        let lambdas = primes
            .iter()
            .map(|_| {
                // rejection sampling from (2/π) sin²θ on [0, π]
                loop {
                    let th = rng.gen::<f64>() * std::f64::consts::PI;
                    if rng.gen::<f64>() <= th.sin().powi(2) {
                        break 2.0 * th.cos();
                    }
                }
            })
            .collect();
        Self { t_j, primes, lambdas, data_precision: 0.0, synthetic: true, warnings: Vec::new() }
    }

    pub fn t_j(&self) -> f64 {
        self.t_j
    }

    pub fn p_max(&self) -> u64 {
        self.primes.last().copied().unwrap_or(1)
    }

    pub fn data_precision(&self) -> f64 {
        self.data_precision
    }

    pub fn is_synthetic(&self) -> bool {
        self.synthetic
    }

    pub fn warnings(&self) -> &[RamanujanWarning] {
        &self.warnings
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn prime_eigenvalues(&self) -> &[f64] {
        &self.lambdas
    }

    /// λ(p), or `None` if `p` is not a supplied prime.
    pub fn lambda_p(&self, p: u64) -> Option<f64> {
        self.primes.binary_search(&p).ok().map(|i| self.lambdas[i])
    }
}
