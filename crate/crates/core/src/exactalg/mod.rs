//! Exact rational arithmetic and polynomial algebra.
//!
//! Everything downstream works over ℚ with arbitrary-precision coefficients.
//! Univariate polynomials in `X` are stored densely ([`UniPoly`]); polynomials
//! in several variables are sparse maps from exponent vectors to coefficients
//! ([`MultiPoly`]), interpreted against a [`Ring`] that names the variables.

mod degree;
pub mod linalg;
mod multipoly;
mod ratfunc;
mod rational;
mod ring;
mod roots;
mod unipoly;

pub use degree::Degree;
pub use multipoly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use rational::{clear_denominators, rat, Rational};
pub use ring::{Ring, VarId};
pub use roots::rational_roots;
pub use unipoly::UniPoly;
