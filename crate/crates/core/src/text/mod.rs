//! Text format for polynomials, derivations and automorphisms.
//!
//! ```text
//! vars: X, Y, Z        # the first variable plays the role of X
//! d(X) = 1
//! d(Y) = 1 + X*Y
//! d(Z) = 1 + X*Z
//! ```
//!
//! Expressions use `+ - * ^`, parentheses and integer or rational literals
//! (`3/2`). Products must be written with `*`.

mod error;
mod lexer;
mod parser;

pub use error::{ParseError, Position};
pub use parser::{
    parse_automorphism, parse_derivation, parse_expr, parse_uni, print_automorphism, print_derivation,
    print_polynomial, MAX_EXPONENT, MAX_TERMS, MAX_VARS,
};
