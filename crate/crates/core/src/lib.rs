//! Exact workbench for local Lie algebras Γ(g₀, B₀, ρ) and the minimal graded
//! Lie algebras they generate.

// Index loops read more naturally than iterator chains in matrix code.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exactla;
pub mod generators;
pub mod liecore;
pub mod localg;
pub mod par;
pub mod poly;
pub mod sl2;
pub mod tower;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
