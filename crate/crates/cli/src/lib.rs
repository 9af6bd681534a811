//! Input parsing and table rendering behind the `lcprof` binary.

pub mod input;
pub mod render;
