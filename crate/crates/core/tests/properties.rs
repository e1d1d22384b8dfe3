mod common;

use common::{random_affine, random_derivation, random_form, random_h};
use derivkit::derivop::{commutes, conjugate, Automorphism};
use derivkit::exactalg::{rat, Rational};
use derivkit::isotropy::{isotropy_two_var, IsotropyResult, YDegreeDerivation};
use derivkit::lequain::shamsuddin_simple;
use derivkit::oracle::{oracle_ideal_search, oracle_isotropy_enum, AnsatzConfig};
use derivkit::text::{parse_derivation, print_derivation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_grid() -> AnsatzConfig {
    AnsatzConfig::new(2, (-2..=2).map(rat)).unwrap()
}

/// True when every coefficient of the affine data lies in the oracle's ansatz.
fn in_ansatz(rho: &Automorphism, cfg: &AnsatzConfig) -> bool {
    let data = rho.as_affine().expect("affine");
    let ok = |c: &Rational| cfg.grid.contains(c);
    ok(&data.alpha)
        && data.matrix.iter().flatten().all(ok)
        && data.translations.iter().all(|t| {
            t.degree().finite().is_none_or(|d| d <= cfg.max_degree) && (0..=cfg.max_degree).all(|i| ok(&t.coeff(i)))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_print_round_trip(seed in any::<u64>()) {
        let d = random_derivation(&mut ChaCha8Rng::seed_from_u64(seed));
        let text = print_derivation(&d);
        let back = parse_derivation(&text).expect("printed text parses");
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(print_derivation(&back), text);
    }

    #[test]
    fn two_var_solver_matches_oracle(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut h = random_h(&mut rng, n, 2);
        if h[n].is_constant() {
            h[n] = &h[n] + &derivkit::exactalg::UniPoly::x();
        }
        let yd = YDegreeDerivation::new(h).unwrap();
        let d = yd.to_derivation();
        let IsotropyResult::Finite { elements, .. } = isotropy_two_var(&yd).unwrap() else {
            return Err(TestCaseError::fail("nonconstant leading coefficient gives a finite group"));
        };
        let cfg = small_grid();
        let found = oracle_isotropy_enum(&d, &cfg).unwrap();
        for rho in &found {
            prop_assert!(elements.contains(rho), "oracle element outside the solver's group");
        }
        for rho in elements.iter().filter(|r| in_ansatz(r, &cfg)) {
            prop_assert!(found.contains(rho), "solver element inside the grid missed by the oracle");
        }
    }

    #[test]
    fn conjugation_is_an_action(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_derivation(&mut rng);
        let ring = d.ring().clone();
        if ring.len() < 2 {
            return Ok(());
        }
        let rho = random_affine(&mut rng, &ring);
        let sigma = random_affine(&mut rng, &ring);
        prop_assert_eq!(conjugate(&Automorphism::identity(ring.clone()), &d).unwrap(), d.clone());
        let lhs = conjugate(&sigma.compose(&rho).unwrap(), &d).unwrap();
        let rhs = conjugate(&sigma, &conjugate(&rho, &d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = conjugate(&rho.inverse(), &conjugate(&rho, &d).unwrap()).unwrap();
        prop_assert_eq!(back, d.clone());
        prop_assert!(commutes(&Automorphism::identity(ring), &d).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn simple_forms_have_no_small_stable_ideal(seed in any::<u64>()) {
        let form = random_form(&mut ChaCha8Rng::seed_from_u64(seed), 2, 2, 3);
        let d = form.to_derivation();
        let cfg = AnsatzConfig::new(1, (-1..=1).map(rat)).unwrap();
        let witness = oracle_ideal_search(&d, &cfg).unwrap();
        if shamsuddin_simple(&form).unwrap().simple {
            prop_assert!(witness.is_none(), "stable ideal for a simple derivation");
        }
    }
}
