//! Minimal polynomials and linear-complexity profiles of finite sequences
//! over prime fields, computed with a division-free 2x2 matrix recursion,
//! together with the structural analyses built on it: perfect profiles,
//! Wang-Massey stability, sequence height, LC sums, and the Rueppel
//! sequence.

pub mod checks;
pub mod coeff_poly;
pub mod error;
pub mod mp_engine;
pub mod rueppel;
pub mod seq_analysis;

pub use error::{Error, Result};
