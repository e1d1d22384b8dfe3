use num_traits::{One, Zero};

use super::affine::sort_elements;
use super::{roots_of_unity_rational, AffineFamily, AlphaChoice, Completeness, FamilyBranch, IsotropyResult};
use crate::derivop::{commutes, AffineData, Automorphism, Derivation};
use crate::error::{Error, Result};
use crate::exactalg::{rational_roots, MultiPoly, RatFunc, Rational, Ring, UniPoly, VarId};

/// `d = ∂_X + (h_0 + h_1 Y + … + h_n Y^n) ∂_Y` with `n ≥ 2`, `h_n ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YDegreeDerivation {
    h: Vec<UniPoly>,
}

impl YDegreeDerivation {
    pub fn new(mut h: Vec<UniPoly>) -> Result<Self> {
        while h.last().is_some_and(UniPoly::is_zero) {
            h.pop();
        }
        if h.len() < 3 {
            return Err(Error::Precondition("the Y-degree of d(Y) must be at least 2".into()));
        }
        Ok(YDegreeDerivation { h })
    }

    /// Reads `d` on `K[X, Y]` with `d(X) = 1`.
    pub fn from_derivation(d: &Derivation) -> Result<Self> {
        if d.nvars() != 2 || !d.has_unit_x() {
            return Err(Error::Unsupported("the two-variable solver needs K[X, Y] with d(X) = 1".into()));
        }
        let h = d.image(VarId(1)).coeffs_in(VarId(1));
        let h = h.iter().map(|c| c.to_uni(VarId::X).expect("only X remains")).collect();
        YDegreeDerivation::new(h).map_err(|_| Error::Unsupported("the Y-degree of d(Y) is below 2".into()))
    }

    pub fn n(&self) -> usize {
        self.h.len() - 1
    }

    /// `h_0 … h_n`.
    pub fn h(&self) -> &[UniPoly] {
        &self.h
    }

    pub fn to_derivation(&self) -> Derivation {
        let y = MultiPoly::var(2, VarId(1));
        let image = self.h.iter().enumerate().fold(MultiPoly::zero(2), |acc, (k, hk)| {
            &acc + &(&MultiPoly::from_uni(2, VarId::X, hk) * &y.pow(k as u32))
        });
        Derivation::with_unit_x(Ring::xy(), vec![image]).expect("two variables")
    }
}

/// The full isotropy group.
///
/// Every element has the form `X ↦ X + α`, `Y ↦ b_0 + b_1 Y` with
/// `b_1^(n−1) = 1`. Comparing `Y^n` coefficients of
/// `h(X + α, b_0 + b_1 Y) = b_0' + b_1 h(X, Y)` gives `h_n(X + α) = h_n(X)`,
/// so `α = 0` unless `h_n` is constant, and the `Y^(n−1)` coefficients give
/// `n h_n b_0 = b_1 h_(n−1)(X) − h_(n−1)(X + α)`, so `b_0` is forced by
/// `(α, b_1)`. With `h_n` constant the remaining conditions are polynomials
/// in α; either they vanish identically (every translation survives and the
/// group is infinite) or α ranges over their common rational roots.
pub fn isotropy_two_var(d: &YDegreeDerivation) -> Result<IsotropyResult> {
    let n = d.n();
    let h = d.h();
    let der = d.to_derivation();
    let mut fixed = Vec::new();
    let mut generic: Vec<(Rational, Vec<UniPoly>)> = Vec::new();
    for b1 in roots_of_unity_rational((n - 1) as u32)? {
        if !h[n].is_constant() {
            let rhs = h[n - 1].scale(&(&b1 - Rational::one()));
            let lead = h[n].scale(&Rational::from_integer(n.into()));
            if let Some(b0) = rhs.div_exact(&lead)? {
                fixed.extend(verified(h, &der, Rational::zero(), &b1, b0)?);
            }
            continue;
        }
        let b0 = symbolic_b0(h, &b1);
        let conditions = alpha_conditions(h, &b1, &b0);
        let Some(g) = conditions else {
            generic.push((b1, b0.coeffs_in(VarId::X).iter().map(|c| c.to_uni(ALPHA).expect("α only")).collect()));
            continue;
        };
        for alpha in rational_roots(&g)? {
            let at = substitute_alpha(&b0, &alpha);
            fixed.extend(verified(h, &der, alpha, &b1, at)?);
        }
    }
    sort_elements(&mut fixed);
    if generic.is_empty() {
        if !fixed.first().is_some_and(Automorphism::is_identity) {
            return Err(Error::InvariantViolation("the identity was not found".into()));
        }
        return Ok(IsotropyResult::Finite { elements: fixed, completeness: Completeness::Complete });
    }
    translation_family(&der, fixed, generic)
}

const ALPHA: VarId = VarId(2);

/// Polynomials in `X, Y, α`.
fn lift(p: &UniPoly) -> MultiPoly {
    MultiPoly::from_uni(3, VarId::X, p)
}

fn shift_x(p: &MultiPoly) -> MultiPoly {
    let images = [
        &MultiPoly::var(3, VarId::X) + &MultiPoly::var(3, ALPHA),
        MultiPoly::var(3, VarId(1)),
        MultiPoly::var(3, ALPHA),
    ];
    p.substitute(&images).expect("three images")
}

/// `b_0(X, α) = (b_1 h_(n−1)(X) − h_(n−1)(X + α)) / (n h_n)` for constant `h_n`.
fn symbolic_b0(h: &[UniPoly], b1: &Rational) -> MultiPoly {
    let n = h.len() - 1;
    let prev = lift(&h[n - 1]);
    let num = &prev.scale(b1) - &shift_x(&prev);
    num.scale(&(Rational::one() / (h[n].coeff(0) * Rational::from_integer(n.into()))))
}

/// The gcd of all coefficients (as polynomials in α) of
/// `h(X + α, b_0 + b_1 Y) − b_0' − b_1 h(X, Y)`, or `None` if they all vanish.
fn alpha_conditions(h: &[UniPoly], b1: &Rational, b0: &MultiPoly) -> Option<UniPoly> {
    let y = MultiPoly::var(3, VarId(1));
    let image = &b0.clone() + &y.scale(b1);
    let mut residual = -&b0.partial(VarId::X);
    for (k, hk) in h.iter().enumerate() {
        let hk = lift(hk);
        residual = &residual + &(&shift_x(&hk) * &image.pow(k as u32));
        residual = &residual - &(&hk * &y.pow(k as u32)).scale(b1);
    }
    if residual.is_zero() {
        return None;
    }
    let mut g = UniPoly::zero();
    for c in residual.coeffs_in(VarId::X) {
        for cc in c.coeffs_in(VarId(1)) {
            g = g.gcd(&cc.to_uni(ALPHA).expect("α only"));
        }
    }
    Some(g)
}

fn substitute_alpha(b0: &MultiPoly, alpha: &Rational) -> UniPoly {
    let images = [MultiPoly::var(3, VarId::X), MultiPoly::var(3, VarId(1)), MultiPoly::constant(3, alpha.clone())];
    b0.substitute(&images).expect("three images").to_uni(VarId::X).expect("X only")
}

/// The element `(α, b_0, b_1)` if it commutes with `d`, after checking the
/// constant-coefficient equation and the `h_0 ≠ 0, b_0 = 0 ⇒ b_1 = 1` rule.
fn verified(
    h: &[UniPoly],
    der: &Derivation,
    alpha: Rational,
    b1: &Rational,
    b0: UniPoly,
) -> Result<Option<Automorphism>> {
    let data = AffineData { alpha: alpha.clone(), matrix: vec![vec![b1.clone()]], translations: vec![b0.clone()] };
    let rho = Automorphism::affine(Ring::xy(), &data)?;
    if !commutes(&rho, der)? {
        return Ok(None);
    }
    check_constant_equation(h, &alpha, &b0, b1)?;
    if !h[0].is_zero() && b0.is_zero() && !b1.is_one() {
        return Err(Error::InvariantViolation("h_0 ≠ 0 and b_0 = 0 but b_1 ≠ 1".into()));
    }
    Ok(Some(rho))
}

/// `Σ_(k≥1) h_k(X + α) b_0^k + h_0(X + α) − b_1 h_0(X) = b_0'`; for `α = 0`
/// this is `Σ_(k≥1) h_k b_0^k + h_0 (1 − b_1) = b_0'`.
fn check_constant_equation(h: &[UniPoly], alpha: &Rational, b0: &UniPoly, b1: &Rational) -> Result<()> {
    let mut lhs = &h[0].shift(alpha) - &h[0].scale(b1);
    for (k, hk) in h.iter().enumerate().skip(1) {
        lhs = &lhs + &(&hk.shift(alpha) * &b0.pow(k as u32));
    }
    if lhs != b0.derivative() {
        return Err(Error::InvariantViolation("the constant-coefficient equation fails".into()));
    }
    Ok(())
}

/// Every `b_1` in `generic` admits all translations; the remaining elements
/// become fixed-α branches.
fn translation_family(
    der: &Derivation,
    fixed: Vec<Automorphism>,
    generic: Vec<(Rational, Vec<UniPoly>)>,
) -> Result<IsotropyResult> {
    let ring = Ring::xy();
    let fixed: Vec<AffineData> = fixed
        .iter()
        .map(|rho| rho.as_affine().expect("affine"))
        .filter(|data| !generic.iter().any(|(b1, _)| *b1 == data.matrix[0][0]))
        .collect();
    let deg_bound = generic
        .iter()
        .map(|(_, b0)| b0.len().saturating_sub(1))
        .chain(fixed.iter().map(|data| data.translations[0].degree().finite().unwrap_or(0)))
        .max()
        .unwrap_or(0);
    let mut branches = Vec::new();
    for (b1, b0) in &generic {
        let mut values = vec![RatFunc::constant(b1.clone())];
        values.extend((0..=deg_bound).map(|k| RatFunc::from_poly(b0.get(k).cloned().unwrap_or_else(UniPoly::zero))));
        branches.push(FamilyBranch::determined(
            ring.clone(),
            deg_bound,
            AlphaChoice::Generic { excluded: vec![] },
            values,
        ));
    }
    for data in &fixed {
        let mut values = vec![RatFunc::constant(data.matrix[0][0].clone())];
        values.extend((0..=deg_bound).map(|k| RatFunc::constant(data.translations[0].coeff(k))));
        branches.push(FamilyBranch::determined(
            ring.clone(),
            deg_bound,
            AlphaChoice::Fixed(data.alpha.clone()),
            values,
        ));
    }
    for branch in &branches {
        for alpha in [Rational::zero(), Rational::one()] {
            if let Some(rho) = branch.member(&[], Some(&alpha))? {
                if !commutes(&rho, der)? {
                    return Err(Error::InvariantViolation("a translation member does not commute".into()));
                }
            }
        }
    }
    Ok(IsotropyResult::Family(AffineFamily::new(ring, deg_bound, branches, Completeness::Complete)))
}
