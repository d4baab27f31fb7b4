mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use qpp_core::patterns::fig45_check;
use qpp_core::permpoly::ModPolynomial;
use qpp_core::{exact_dmin, ConstituentSpec, ExactConfig, Qpp, TerminationMode, TurboCode};

fn bits(len: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), len)
}

fn pass(check: Check) -> Result<(), TestCaseError> {
    check.map_err(TestCaseError::fail)
}

proptest! {
    #[test]
    fn permutation_test_agrees_with_brute_force(
        (n, f1, f2) in (2u64..=512).prop_flat_map(|n| (Just(n), 0..n, 0..n))
    ) {
        pass(check_bijectivity(n, f1, f2))?;
    }

    #[test]
    fn inverse_composes_to_identity(n in 8u64..=512, s1 in 0u64..512, s2 in 0u64..512) {
        let Some(q) = qpp_near(n, s1, s2) else { return Ok(()) };
        let g = q.inverse();
        prop_assert_eq!(g.degree() as u32, q.least_inverse_degree().degree);
        for x in 0..n {
            prop_assert_eq!(g.eval(q.eval(x)), x);
            prop_assert_eq!(q.eval(g.eval(x)), x);
        }
    }

    #[test]
    fn constituent_encoder_is_linear(nu in 2u32..=4, (a, b) in (1usize..80).prop_flat_map(|l| (bits(l), bits(l)))) {
        pass(check_encoder_linearity(nu, &a, &b))?;
    }

    #[test]
    fn turbo_encoder_is_linear(
        (n, s1, s2, a, b) in (16u64..=96).prop_flat_map(|n| (Just(n), 0..n, 0..n, bits(n as usize), bits(n as usize)))
    ) {
        let Some(q) = qpp_near(n, s1, s2) else { return Ok(()) };
        pass(check_turbo_linearity(q, &a, &b))?;
    }

    #[test]
    fn weight_two_detour_parity(nu in 2u32..=4, k in 1u32..=4) {
        pass(check_weight2_parity(nu, k))?;
    }

    #[test]
    fn tailbiting_weight_is_invariant_under_period_shifts(
        (n, s1, s2, positions) in (16u64..=400).prop_flat_map(|n| {
            (Just(n), 0..n, 0..n, proptest::collection::btree_set(0..n as usize, 1..7))
        })
    ) {
        let Some(q) = qpp_near(n, s1, s2) else { return Ok(()) };
        pass(check_qc_shift(q, &positions))?;
    }

    #[test]
    fn pattern_congruences_do_not_depend_on_the_start(
        n in 64u64..=4096,
        s1 in 0u64..4096,
        s2 in 0u64..4096,
        xs in proptest::collection::vec(any::<u64>(), 10),
    ) {
        let Some(q) = qpp_near(n, s1, s2) else { return Ok(()) };
        pass(check_x_independence(q, &xs))?;
    }

    #[test]
    fn placed_patterns_encode_to_their_predicted_weight(n in 64u64..=4096, s1 in 0u64..4096, s2 in 0u64..4096) {
        let Some(q) = qpp_near(n, s1, s2) else { return Ok(()) };
        pass(check_placed_patterns(q))?;
    }

    #[test]
    fn quadratic_inverse_always_yields_the_fig45_codeword(n in 64u64..=1024, s1 in 0u64..1024, s2 in 0u64..1024) {
        let Some(q) = quadratic_inverse_qpp(n, s1, s2) else { return Ok(()) };
        let p = fig45_check(&q, &q.inverse(), &ConstituentSpec::lte()).unwrap();
        prop_assert!(p.congruence_holds);
        prop_assert!(p.predicted_weight_cap <= 50);
    }
}

/// Shifting a minimum-weight tailbiting codeword by the period gives another one.
#[test]
fn tailbiting_witnesses_shift_to_witnesses() {
    for (n, f1, f2) in [(40, 3, 10), (64, 7, 16), (80, 11, 20), (96, 11, 24)] {
        let q = Qpp::new(n, f1, f2).unwrap();
        let code = TurboCode::lte(q).unwrap();
        let config = ExactConfig {
            quasi_cyclic: false,
            max_witnesses: usize::MAX,
            ..ExactConfig::default()
        };
        let r = exact_dmin(&code, TerminationMode::Tailbiting, &config).unwrap();
        let witnesses: BTreeSet<Vec<u32>> = r.witnesses.iter().cloned().collect();
        assert_eq!(witnesses.len() as u64, r.multiplicity);
        let p = q.qc_period();
        for w in &witnesses {
            let mut moved: Vec<u32> = w.iter().map(|&i| ((i as u64 + p) % n) as u32).collect();
            moved.sort_unstable();
            assert!(witnesses.contains(&moved), "N={n}");
        }
        assert_eq!(r.multiplicity % (n / p), 0, "N={n}");
    }
}
