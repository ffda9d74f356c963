//! Numerical toolkit for additive twists of the coefficients of symmetric-square
//! lifts of level-one Maass forms: Hecke data, the GL(3) Voronoi formula and
//! its integral transforms, and exponent experiments.

// `!(x >= y)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod arith;
pub mod experiments;
pub mod hecke;
pub mod numerics;
pub mod transforms;
pub mod voronoi;
