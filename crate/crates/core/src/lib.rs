//! Exact computations with derivations of Q[X, Y1, ..., Yn]: Lequain's
//! simplicity criterion for Shamsuddin derivations, polynomial solutions of
//! Z' = aZ + b, isotropy groups, and brute-force oracles.

pub mod cli;
pub mod derivop;
pub mod error;
pub mod exactalg;
pub mod isotropy;
pub mod lequain;
pub mod oracle;
pub mod text;

pub use error::{Error, Result};
