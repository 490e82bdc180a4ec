//! Exact arithmetic for the logarithmic matrix of signed p-adic L-functions.
//!
//! The crate builds the matrices `C`, `A`, `C_n` and `M_n = C_1 ... C_n C^{-n-2} A`
//! exactly, evaluates `M_log` at the cyclotomic points `zeta_{p^n} - 1`, and checks
//! the resulting valuation matrices against a closed form and a min-plus induction.
//! The [`iwasawa`] module replays the algebraic derivations relating the
//! two-variable and one-variable signed L-functions on synthetic truncated data.

pub mod arith;
pub mod cli;
pub mod cyclo;
pub mod error;
pub mod hecke;
pub mod iwasawa;
pub mod logmatrix;
pub mod tropical;

pub use error::{Error, Result};
