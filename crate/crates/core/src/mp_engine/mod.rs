//! The incremental minimal-polynomial recursion.
//!
//! A state holds the MP matrix `M^(j)` as the two rows `(mu, [mu])` and
//! `(mu', [mu'])`, the exponent `e_j = j + 1 - 2 LC_j`, the discrepancy
//! `Delta'` of the last jump, and the determinant accumulator `nabla`.
//! Each term either leaves the matrix alone (zero discrepancy) or
//! left-multiplies it by an updating matrix. No step divides.

mod backend;
mod lfsr;
mod matrix;
mod oracle;
mod report;
mod run;
mod state;

pub use backend::{Backend, BitTerms, Dense, Gf2};
pub use lfsr::{annihilates, feedback_polynomial, lfsr_generate};
pub use matrix::PolyMatrix;
pub use oracle::{bezout_check, brute_force_minpoly, mp_alternatives, state_det, BRUTE_FORCE_LIMIT};
pub use report::ProfileJson;
pub use run::{
    gf2_run, gf2_state_matrix, mp_init, mp_run, mp_run_streaming, mp_step, mp_trace, state_matrix,
    updating_matrix, BackendChoice, DenseState, Gf2State, MpConfig, ProfileReport,
};
pub use state::{MpState, StepOptions, StepRecord};
