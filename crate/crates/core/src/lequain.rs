//! Lequain's effective criterion for Shamsuddin derivations.
//!
//! For `a ≠ 0` the equation `Z' = aZ + b` is decided by a chain of divisions
//! by `a`: divide `b`, then repeatedly divide the derivative of the last
//! quotient, until a quotient vanishes. The sum of the remainders, `𝒫(a, b)`,
//! is zero exactly when a polynomial solution exists, and then the solution is
//! minus the sum of the quotients. A component `(a, [b_1 … b_r])` is simple
//! iff `a ≠ 0` and the `𝒫(a, b_j)` are linearly independent over ℚ, and a
//! Shamsuddin derivation is simple iff all its canonical components are.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::derivop::ShamsuddinForm;
use crate::error::{Error, Result};
use crate::exactalg::{linalg, Rational, UniPoly};

/// The division chain `b = a·q₁ + r₁`, `q_i' = a·q_{i+1} + r_{i+1}`,
/// `q_t' = a·0 + r_{t+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionSequence {
    pub quotients: Vec<UniPoly>,
    pub remainders: Vec<UniPoly>,
}

impl DivisionSequence {
    /// Number of quotients `t`; there are always `t + 1` remainders.
    pub fn t(&self) -> usize {
        self.quotients.len()
    }
}

pub fn division_sequence(a: &UniPoly, b: &UniPoly) -> Result<DivisionSequence> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q1, r1) = b.divmod(a)?;
    let mut quotients = vec![q1];
    let mut remainders = vec![r1];
    loop {
        let last = quotients.last().expect("at least q1").derivative();
        let (q, r) = last.divmod(a)?;
        remainders.push(r);
        if q.is_zero() {
            break;
        }
        quotients.push(q);
    }
    Ok(DivisionSequence { quotients, remainders })
}

/// `𝒫(a, b)`, the sum of the remainders of the division sequence.
pub fn pab(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    let seq = division_sequence(a, b)?;
    Ok(seq.remainders.iter().fold(UniPoly::zero(), |acc, r| &acc + r))
}

/// The polynomial solution of `Z' = aZ + b`, or `None` when there is none.
pub fn psolve(a: &UniPoly, b: &UniPoly) -> Result<Option<UniPoly>> {
    let seq = division_sequence(a, b)?;
    let p = seq.remainders.iter().fold(UniPoly::zero(), |acc, r| &acc + r);
    if !p.is_zero() {
        return Ok(None);
    }
    let f = -seq.quotients.iter().fold(UniPoly::zero(), |acc, q| &acc + q);
    if f.derivative() != &(a * &f) + b {
        return Err(Error::InvariantViolation(format!("constructed solution {f} does not solve Z' = ({a})Z + ({b})")));
    }
    Ok(Some(f))
}

/// Outcome for one canonical component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentVerdict {
    /// `a ≠ 0` and the `𝒫(a, b_j)` have full rank.
    Independent { rank: usize },
    /// Coprime integers `k` (not all zero) and `f` with
    /// `f' = a·f + Σ k_j b_j`. Either `a = 0` or the `𝒫(a, b_j)` are dependent.
    Dependent { kernel: Vec<BigInt>, solution: UniPoly },
}

impl ComponentVerdict {
    pub fn is_simple(&self) -> bool {
        matches!(self, ComponentVerdict::Independent { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub simple: bool,
    /// One verdict per canonical component, in canonical order.
    pub components: Vec<ComponentVerdict>,
}

impl SimplicityVerdict {
    /// Index of the first non-simple component.
    pub fn first_failure(&self) -> Option<usize> {
        self.components.iter().position(|c| !c.is_simple())
    }
}

fn combination(kernel: &[BigInt], bs: &[UniPoly]) -> UniPoly {
    kernel.iter().zip(bs).fold(UniPoly::zero(), |acc, (k, b)| &acc + &b.scale(&Rational::from_integer(k.clone())))
}

pub fn component_simple(a: &UniPoly, bs: &[UniPoly]) -> Result<ComponentVerdict> {
    if bs.is_empty() {
        return Err(Error::Precondition("a component has at least one variable".into()));
    }
    let unit = |j: usize| -> Vec<BigInt> { (0..bs.len()).map(|i| BigInt::from(u8::from(i == j))).collect() };
    if a.is_zero() {
        // Z' = b_1 always has the antiderivative as a solution.
        return Ok(ComponentVerdict::Dependent { kernel: unit(0), solution: bs[0].integral() });
    }
    let ps = bs.iter().map(|b| pab(a, b)).collect::<Result<Vec<_>>>()?;
    let kernel = if let Some(j) = ps.iter().position(UniPoly::is_zero) {
        unit(j)
    } else {
        let rows = a.degree().finite().expect("a is nonzero");
        let matrix: Vec<Vec<Rational>> = (0..rows).map(|i| ps.iter().map(|p| p.coeff(i)).collect()).collect();
        let rank = linalg::rank_fraction_free(&matrix);
        if rank == bs.len() {
            return Ok(ComponentVerdict::Independent { rank });
        }
        linalg::kernel_vector(&matrix, bs.len())
            .ok_or_else(|| Error::InvariantViolation("rank deficiency without a kernel vector".into()))?
    };
    let rhs = combination(&kernel, bs);
    let solution = psolve(a, &rhs)?
        .ok_or_else(|| Error::InvariantViolation("dependent 𝒫 values without a polynomial solution".into()))?;
    Ok(ComponentVerdict::Dependent { kernel, solution })
}

/// Simplicity of a Shamsuddin derivation, component by component.
pub fn shamsuddin_simple(form: &ShamsuddinForm) -> Result<SimplicityVerdict> {
    let components = form.components().iter().map(|c| component_simple(&c.a, &c.bs)).collect::<Result<Vec<_>>>()?;
    let simple = components.iter().all(ComponentVerdict::is_simple);
    Ok(SimplicityVerdict { simple, components })
}

/// Checks a dependency witness: `f' = a·f + Σ k_j b_j` with some `k_j ≠ 0`.
pub fn check_dependency(a: &UniPoly, bs: &[UniPoly], kernel: &[BigInt], f: &UniPoly) -> bool {
    kernel.iter().any(|k| !k.is_zero()) && f.derivative() == &(a * f) + &combination(kernel, bs)
}
