mod common;

use num_bigint::BigInt;
use pmaximal::criteria::{self, CriteriaError, WitnessInput};
use pmaximal::fppoly;
use pmaximal::intpoly::IntPoly;
use pmaximal::numtheory::valuation;
use proptest::prelude::*;
use rand::Rng;

fn corpus_poly() -> impl Strategy<Value = IntPoly> {
    (2usize..=8, any::<u64>(), 0usize..6, 1u32..=2).prop_filter_map("squarefree", |(deg, seed, pi, k)| {
        let mut rng = common::rng(seed);
        let f = if seed % 2 == 0 {
            common::random_monic(&mut rng, deg, 50)
        } else {
            common::near_square(&mut rng, deg, common::SMALL_PRIMES[pi], k, 50)
        };
        common::squarefree(&f).then_some(f)
    })
}

fn prime() -> impl Strategy<Value = u64> {
    proptest::sample::select(common::SMALL_PRIMES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Replacing the canonical lifts by other monic lifts never changes the
    /// offending set.
    #[test]
    fn offending_set_is_lift_independent(f in corpus_poly(), p in prime(), seed in any::<u64>()) {
        let report = criteria::dedekind_p_maximal(&f, p).unwrap();
        let mut rng = common::rng(seed);
        let lifts: Vec<IntPoly> = report
            .lifts
            .iter()
            .map(|mu| {
                let d = mu.degree().unwrap();
                if d == 0 {
                    return mu.clone();
                }
                let r = common::random_poly(&mut rng, d - 1, 5);
                mu + &r.scale(&BigInt::from(p))
            })
            .collect();
        let perturbed =
            criteria::dedekind_offending_with_lifts(&f, p, &report.factorization, &lifts).unwrap();
        prop_assert_eq!(perturbed, report.offending);
    }

    /// Every witness leg converts back to the same triple.
    #[test]
    fn witness_round_trips(f in corpus_poly(), p in prime()) {
        let report = criteria::dedekind_p_maximal(&f, p).unwrap();
        for &index in &report.offending {
            let w = criteria::convert_witness(&f, &WitnessInput::Dedekind { p, index }).unwrap();
            let via_u = criteria::convert_witness(&f, &WitnessInput::Uchida { p, big_f: w.uchida.clone() }).unwrap();
            let via_l = criteria::convert_witness(&f, &WitnessInput::Lueneburg { p, phi: w.phi.clone() }).unwrap();
            let back = criteria::convert_witness(&f, &WitnessInput::Dedekind { p, index: via_l.dedekind_index }).unwrap();
            prop_assert_eq!(&via_u, &w);
            prop_assert_eq!(&via_l, &w);
            prop_assert_eq!(&back, &w);
        }
    }

    /// Non-offending factors are rejected as witnesses, with the local
    /// verdict attached.
    #[test]
    fn non_witnesses_are_rejected(f in corpus_poly(), p in prime()) {
        let report = criteria::dedekind_p_maximal(&f, p).unwrap();
        for index in (0..report.factorization.len()).filter(|i| !report.offending.contains(i)) {
            match criteria::convert_witness(&f, &WitnessInput::Dedekind { p, index }) {
                Err(CriteriaError::NotAWitness { verdict: Some(v), .. }) => prop_assert!(v.dvr),
                other => prop_assert!(false, "expected NotAWitness, got {:?}", other),
            }
        }
    }

    /// The shortcuts that need no decomposition agree with the full test.
    #[test]
    fn remark_fast_paths(f in corpus_poly(), p in prime()) {
        let disc = f.discriminant().unwrap();
        let local = criteria::p_maximal_local(&f, p).unwrap();
        if valuation(&disc, p).unwrap() < 2 {
            prop_assert!(local.p_maximal);
        }
        let f_bar = fppoly::reduce(&f, p).unwrap();
        let sqf = f_bar.squarefree_part().unwrap();
        for r in &local.reports {
            let phi = fppoly::reduce(&r.mu, p).unwrap();
            if r.multiplicity == 1 {
                prop_assert!(phi.divides(&sqf));
                prop_assert!(r.dvr);
            }
            let g_bar = fppoly::reduce(&r.g, p).unwrap();
            if g_bar.is_constant() && !g_bar.is_zero() {
                prop_assert!(r.dvr);
            }
        }
    }

    /// Gcd invariance over random decompositions (the acceptance run does a
    /// fixed 1000; this one varies the seed).
    #[test]
    fn gcd_triple_is_decomposition_invariant(f in corpus_poly(), p in prime(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let mu = common::random_factor_lift(&mut rng, &f, p).unwrap();
        let (h, g) = criteria::canonical_decomposition(&f, p, &mu).unwrap();
        let max_deg = rng.gen_range(0..8);
        let delta = common::random_poly(&mut rng, max_deg, 20);
        let pp = IntPoly::constant(p);
        let h2 = &h + &(&pp * &delta);
        let g2 = &g - &(&mu * &delta);
        prop_assert_eq!(&(&mu * &h2) + &(&pp * &g2), f.clone());
        prop_assert_eq!(criteria::gcd_triple(p, &mu, &h2, &g2), criteria::gcd_triple(p, &mu, &h, &g));
    }
}

#[test]
fn classical_witness_renderings() {
    let f = IntPoly::from_i64s(&[-5, 0, 1]);
    let w = criteria::convert_witness(&f, &WitnessInput::Dedekind { p: 2, index: 0 }).unwrap();
    assert_eq!(w.uchida_ideal(), "(2, t + 1)");
    assert_eq!(w.lueneburg_ideal(), "(2, θ + 1)");
    // t + 3 names the same maximal ideal of Z[t] as t + 1
    let via_other_lift =
        criteria::convert_witness(&f, &WitnessInput::Uchida { p: 2, big_f: IntPoly::from_i64s(&[3, 1]) }).unwrap();
    assert_eq!(via_other_lift, w);
}

#[test]
fn maximal_order_check_on_tower_polynomial() {
    // P_2 for ν = 3 has disc 2^9 · 3^3 and is maximal at both primes
    let f = IntPoly::from_i64s(&[6, 0, -6, 0, 1]);
    let r = criteria::maximal_order_check(&f, &criteria::PrimeSelection::Auto).unwrap();
    assert_eq!(r.verdict(), Some(true));
    let ps: Vec<u64> = r.checked_primes.iter().map(|c| c.p).collect();
    assert_eq!(ps, vec![2, 3]);
}
