use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{linalg, rat, Rational, UniPoly};

/// Solves `Z' = aZ + b` by undetermined coefficients: `Z = Σ_{i ≤ max_degree}
/// z_i X^i` turns the equation into a linear system in the `z_i`.
///
/// Any solution has degree at most `deg b − deg a` when `a ∉ ℚ` and at most
/// `deg b` otherwise, so with at least that bound `None` means no solution.
pub fn oracle_psolve(a: &UniPoly, b: &UniPoly, max_degree: usize) -> Result<Option<UniPoly>> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let unknowns = max_degree + 1;
    let deg_a = a.degree().finite().expect("nonzero");
    let deg_b = b.degree().finite().unwrap_or(0);
    let rows = (max_degree + deg_a).max(deg_b) + 1;
    // Column i holds the coefficients of (X^i)' − a·X^i.
    let mut matrix = vec![vec![Rational::zero(); unknowns]; rows];
    for i in 0..unknowns {
        if i > 0 {
            matrix[i - 1][i] += rat(i as i64);
        }
        for (k, ak) in a.coeffs().iter().enumerate() {
            matrix[i + k][i] -= ak;
        }
    }
    let rhs: Vec<Rational> = (0..rows).map(|r| b.coeff(r)).collect();
    let Some(sol) = linalg::solve(&matrix, &rhs, unknowns) else {
        return Ok(None);
    };
    if sol.dimension() > 0 {
        return Err(Error::InvariantViolation("Z' = aZ has a nonzero polynomial solution".into()));
    }
    Ok(Some(UniPoly::from_coeffs(sol.particular)))
}

/// A degree bound under which `oracle_psolve` is complete.
pub fn sufficient_degree(a: &UniPoly, b: &UniPoly) -> usize {
    let deg_b = b.degree().finite().unwrap_or(0);
    if a.is_constant() {
        deg_b
    } else {
        deg_b.saturating_sub(a.degree().finite().expect("nonconstant"))
    }
}
