//! Hecke eigenvalue data for a level-one Maass form and the derived
//! symmetric-square coefficients.

mod form;
mod moments;
mod satake;
mod sym;
mod table;

pub use form::{IngestOptions, MaassGL2Form, RamanujanWarning, DEFAULT_PRECISION};
pub use moments::{moment_sum, short_interval_sum, MomentKind, ShortInterval, SHORT_INTERVAL_EPS};
pub use satake::{satake, verify_local_euler_identity, SatakePair};
pub use sym::{dual_langlands, gl3_coeff, langlands_from_type, sym_square_coeff, SymSquareForm};
pub use table::{extend_hecke, hecke_power, HeckeTable};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {p} is not prime")]
    NotPrime { line: usize, p: u64 },
    #[error("line {line}: duplicate entry for prime {p}")]
    Duplicate { line: usize, p: u64 },
    #[error("line {line}: prime {p} is out of order (previous entry {prev})")]
    OutOfOrder { line: usize, p: u64, prev: u64 },
    #[error("missing eigenvalue for prime {p}")]
    MissingPrime { p: u64 },
    #[error("|lambda({p})| = {value} exceeds the {gate} bound {bound}")]
    BoundViolation { p: u64, value: f64, bound: f64, gate: &'static str },
    #[error("index {n} outside table range 1..={n_max}")]
    OutOfRange { n: u64, n_max: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
