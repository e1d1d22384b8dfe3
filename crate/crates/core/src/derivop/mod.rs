//! Derivations and automorphisms of `ℚ[X; Y…]`: the Leibniz action,
//! conjugation `ρ d ρ⁻¹`, Shamsuddin recognition and principal d-ideals.

mod automorphism;
mod derivation;
mod shamsuddin;

pub use automorphism::{AffineData, Automorphism};
pub use derivation::Derivation;
pub use shamsuddin::{recognize_shamsuddin, Component, ShamsuddinForm};

use crate::error::{Error, Result};
use crate::exactalg::MultiPoly;

/// Certificate that the principal ideal `(generator)` is `d`-stable:
/// `d(generator) = cofactor · generator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealWitness {
    pub generator: MultiPoly,
    pub cofactor: MultiPoly,
}

/// The derivation `ρ d ρ⁻¹`, i.e. `v ↦ ρ(d(ρ⁻¹(v)))` on generators.
pub fn conjugate(rho: &Automorphism, d: &Derivation) -> Result<Derivation> {
    if rho.ring() != d.ring() {
        return Err(Error::RingMismatch);
    }
    let images = rho.inverse_images().iter().map(|pre| rho.apply(&d.apply(pre)?)).collect::<Result<Vec<_>>>()?;
    Derivation::new(d.ring().clone(), images)
}

/// Whether `ρ d = d ρ` on every generator, which is equivalent to
/// `ρ d ρ⁻¹ = d`.
pub fn commutes(rho: &Automorphism, d: &Derivation) -> Result<bool> {
    if rho.ring() != d.ring() {
        return Err(Error::RingMismatch);
    }
    for v in d.ring().vars() {
        if rho.apply(d.image(v))? != d.apply(rho.image(v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides whether `(g)` is a `d`-ideal by exact division of `d(g)` by `g`.
pub fn ideal_stable(d: &Derivation, g: &MultiPoly) -> Result<Option<IdealWitness>> {
    if g.is_zero() {
        return Err(Error::ZeroGenerator);
    }
    let dg = d.apply(g)?;
    Ok(dg.div_exact(g)?.map(|cofactor| IdealWitness { generator: g.clone(), cofactor }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Rational, Ring, UniPoly, VarId};
    use proptest::prelude::*;

    fn xy(i: usize) -> MultiPoly {
        MultiPoly::var(2, VarId(i))
    }

    fn two_var(dy: MultiPoly) -> Derivation {
        Derivation::with_unit_x(Ring::xy(), vec![dy]).unwrap()
    }

    fn flip() -> Automorphism {
        let (x, y) = (xy(0), xy(1));
        Automorphism::new(Ring::xy(), vec![x.clone(), -&y], vec![x, -y]).unwrap()
    }

    #[test]
    fn conjugation_examples() {
        let d = two_var(xy(1));
        let id = Automorphism::identity(Ring::xy());
        assert_eq!(conjugate(&id, &d).unwrap(), d);

        // ρ: Y ↦ Y + 1 gives ρ(d(Y − 1)) = Y + 1.
        let (x, y) = (xy(0), xy(1));
        let one = MultiPoly::one(2);
        let shift = Automorphism::new(Ring::xy(), vec![x.clone(), &y + &one], vec![x.clone(), &y - &one]).unwrap();
        assert_eq!(conjugate(&shift, &d).unwrap().image(VarId(1)), &(&y + &one));

        // ρ: Y ↦ 2Y fixes the homogeneous image Y.
        let scale = Automorphism::new(
            Ring::xy(),
            vec![x.clone(), y.scale(&rat(2))],
            vec![x, y.scale(&Rational::new(1.into(), 2.into()))],
        )
        .unwrap();
        assert_eq!(conjugate(&scale, &d).unwrap(), d);
    }

    #[test]
    fn commutation_examples() {
        let odd = two_var(&xy(1) + &xy(1).pow(3));
        assert!(commutes(&Automorphism::identity(Ring::xy()), &odd).unwrap());
        assert!(commutes(&flip(), &odd).unwrap());
        let shifted = two_var(&xy(1).pow(3) + &xy(0));
        assert!(!commutes(&flip(), &shifted).unwrap());
    }

    #[test]
    fn ideal_stability_examples() {
        let ring = Ring::new(["X", "Y", "Z"]).unwrap();
        let v = |i| MultiPoly::var(3, VarId(i));
        let one = MultiPoly::one(3);
        let d = Derivation::with_unit_x(ring, vec![&one + &(&v(0) * &v(1)), &one + &(&v(0) * &v(2))]).unwrap();
        let w = ideal_stable(&d, &(&v(1) - &v(2))).unwrap().unwrap();
        assert_eq!(w.cofactor, v(0));

        let d = two_var(&(&xy(0) * &xy(1)) + &MultiPoly::one(2));
        assert_eq!(ideal_stable(&d, &xy(1)).unwrap(), None);
        let d = two_var(&xy(0) * &xy(1));
        assert_eq!(ideal_stable(&d, &xy(1)).unwrap().unwrap().cofactor, xy(0));
        assert_eq!(ideal_stable(&d, &MultiPoly::zero(2)), Err(Error::ZeroGenerator));
    }

    fn arb_uni() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-3i64..=3, 0..3).prop_map(|c| UniPoly::from_ints(&c))
    }

    fn arb_xy_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 0..4)
            .prop_map(|ts| MultiPoly::from_terms(2, ts.into_iter().map(|((a, b), c)| (vec![a, b], rat(c)))))
    }

    fn arb_affine() -> impl Strategy<Value = Automorphism> {
        (-2i64..=2, prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)], arb_uni()).prop_map(|(alpha, c, e)| {
            Automorphism::affine(
                Ring::xy(),
                &AffineData { alpha: rat(alpha), matrix: vec![vec![rat(c)]], translations: vec![e] },
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn apply_is_a_derivation(dy in arb_xy_poly(), p in arb_xy_poly(), q in arb_xy_poly()) {
            let d = two_var(dy);
            let lhs = d.apply(&(&p * &q)).unwrap();
            let rhs = &(&p * &d.apply(&q).unwrap()) + &(&q * &d.apply(&p).unwrap());
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(d.apply(&(&p + &q)).unwrap(), &d.apply(&p).unwrap() + &d.apply(&q).unwrap());
        }

        #[test]
        fn conjugation_is_a_group_action(dy in arb_xy_poly(), rho in arb_affine(), sigma in arb_affine()) {
            let d = two_var(dy);
            let composed = sigma.compose(&rho).unwrap();
            prop_assert_eq!(conjugate(&composed, &d).unwrap(),
                            conjugate(&sigma, &conjugate(&rho, &d).unwrap()).unwrap());
        }

        #[test]
        fn commutes_iff_conjugation_fixes(dy in arb_xy_poly(), rho in arb_affine()) {
            let d = two_var(dy);
            prop_assert_eq!(commutes(&rho, &d).unwrap(), conjugate(&rho, &d).unwrap() == d);
        }

        #[test]
        fn isotropy_groups_are_conjugate(h1 in arb_uni(), h3 in arb_uni(), rho in arb_affine()) {
            prop_assume!(!h3.is_zero());
            let (x, y) = (xy(0), xy(1));
            let dy = &(&MultiPoly::from_uni(2, VarId::X, &h1) * &y)
                + &(&MultiPoly::from_uni(2, VarId::X, &h3) * &y.pow(3));
            let d = two_var(dy);
            let tau = flip();
            prop_assert!(commutes(&tau, &d).unwrap());
            let d2 = conjugate(&rho, &d).unwrap();
            let tau2 = rho.compose(&tau).unwrap().compose(&rho.inverse()).unwrap();
            prop_assert!(commutes(&tau2, &d2).unwrap());
            let _ = x;
        }

        #[test]
        fn stable_ideals_absorb_multiples(h in arb_xy_poly()) {
            let d = two_var(&xy(0) * &xy(1));
            let g = xy(1);
            prop_assert!(ideal_stable(&d, &g).unwrap().is_some());
            let dgh = d.apply(&(&g * &h)).unwrap();
            prop_assert!(dgh.div_exact(&g).unwrap().is_some());
        }
    }
}
