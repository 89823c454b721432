//! Exact coloring zeta functions of polynomial-count varieties over finite
//! fields, computed through four equivalent product formulas and checked
//! against brute-force counts over small finite fields.

pub mod arith;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod oracle;
pub mod partitions;
pub mod series;
pub mod variety;
pub mod verify;

pub use error::{Error, Result};
