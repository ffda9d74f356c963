#![allow(dead_code)]

use std::sync::OnceLock;

use symsq_core::hecke::{IngestOptions, MaassGL2Form, SymSquareForm};

pub const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/maass_even_r13.7798.txt");

pub fn form() -> &'static MaassGL2Form {
    static F: OnceLock<MaassGL2Form> = OnceLock::new();
    F.get_or_init(|| MaassGL2Form::from_path(FIXTURE, IngestOptions::default()).expect("fixture loads"))
}

/// The lift with coefficients up to the full data range.
pub fn lift() -> &'static SymSquareForm {
    static S: OnceLock<SymSquareForm> = OnceLock::new();
    S.get_or_init(|| SymSquareForm::new(form(), form().p_max()).expect("lift builds"))
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
