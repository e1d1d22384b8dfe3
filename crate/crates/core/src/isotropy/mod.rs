//! Isotropy groups `{ρ : ρ d ρ⁻¹ = d}`.
//!
//! Three entry points, by input class:
//! * [`isotropy_two_var`]: complete for `d = ∂_X + h(X, Y)∂_Y` with
//!   `deg_Y h ≥ 2`; the group is a subgroup of the rational roots of unity.
//! * [`isotropy_shamsuddin`]: trivial for simple Shamsuddin derivations,
//!   otherwise falls back to the affine search.
//! * [`affine_isotropy_search`]: every isotropy element of the shape
//!   `X ↦ X + α`, `Y ↦ CY + e(X)` with bounded `deg e`.

mod affine;
mod group;
mod two_var;

pub use affine::{affine_isotropy_search, AffineFamily, AlphaChoice, FamilyBranch, LinearEquation};
pub use group::{group_table, GroupCertificate};
pub use two_var::{isotropy_two_var, YDegreeDerivation};

use num_traits::One;

use crate::derivop::{Automorphism, ShamsuddinForm};
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::lequain::shamsuddin_simple;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// The whole isotropy group.
    Complete,
    /// Only the elements inside the affine ansatz.
    AnsatzOnly,
}

impl Completeness {
    pub fn as_str(self) -> &'static str {
        match self {
            Completeness::Complete => "complete",
            Completeness::AnsatzOnly => "ansatz-only",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsotropyResult {
    /// An explicit finite list, identity first.
    Finite { elements: Vec<Automorphism>, completeness: Completeness },
    /// An infinite family of affine automorphisms.
    Family(AffineFamily),
}

impl IsotropyResult {
    pub fn completeness(&self) -> Completeness {
        match self {
            IsotropyResult::Finite { completeness, .. } => *completeness,
            IsotropyResult::Family(family) => family.completeness,
        }
    }

    /// Number of elements for finite results.
    pub fn order(&self) -> Option<usize> {
        match self {
            IsotropyResult::Finite { elements, .. } => Some(elements.len()),
            IsotropyResult::Family(_) => None,
        }
    }

    pub fn elements(&self) -> Option<&[Automorphism]> {
        match self {
            IsotropyResult::Finite { elements, .. } => Some(elements),
            IsotropyResult::Family(_) => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(1)
    }
}

/// The `m`-th roots of unity in ℚ: `{1}` for odd `m`, `{1, −1}` for even `m`.
pub fn roots_of_unity_rational(m: u32) -> Result<Vec<Rational>> {
    match m {
        0 => Err(Error::Precondition("roots of unity need m ≥ 1".into())),
        m if m % 2 == 1 => Ok(vec![Rational::one()]),
        _ => Ok(vec![Rational::one(), -Rational::one()]),
    }
}

/// Isotropy of a Shamsuddin derivation: `{id}` (complete) when it is simple
/// and has at least one `Y` variable, otherwise the affine search with
/// translations of degree ≤ `deg_bound`. Without `Y` variables `d = ∂_X` is
/// simple but every `X ↦ X + α` commutes with it.
pub fn isotropy_shamsuddin(form: &ShamsuddinForm, deg_bound: usize) -> Result<IsotropyResult> {
    if form.s() > 0 && shamsuddin_simple(form)?.simple {
        return Ok(IsotropyResult::Finite {
            elements: vec![Automorphism::identity(form.ring().clone())],
            completeness: Completeness::Complete,
        });
    }
    affine_isotropy_search(&form.to_derivation(), deg_bound)
}
