use num_traits::Signed;
use qpa_core::lasso::{j0_horizon, lasso_acceptance_probability, lasso_jet_decomposition, lasso_qualitative, simulate_runs};
use qpa_core::prob::{ratio, to_f64};
use qpa_core::random::{random_acceptance, random_automaton, random_lasso, random_set};
use qpa_core::semantics::support_step;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn simulation_agrees_with_exact_probability() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut outside = 0;
    let mut strict = 0;
    for seed in 0..60 {
        let n = rng.gen_range(2..=4);
        let acc = random_acceptance(&mut rng, n, 3);
        let f = random_set(&mut rng, n);
        let a = random_automaton(&mut rng, n, 2, 2).absorbing(f).with_acceptance(Some(acc));
        let w = random_lasso(&mut rng, 2, 3, 4);
        let exact = to_f64(&lasso_acceptance_probability(&a, &w).unwrap());
        if exact > 0.0 && exact < 1.0 {
            strict += 1;
        }
        let est = simulate_runs(&a, &w, 2000, seed).unwrap();
        if (est.accept_fraction - exact).abs() > 4.0 * est.half_width_95 {
            outside += 1;
        }
    }
    assert_eq!(outside, 0);
    assert!(strict > 0);
}

#[test]
fn qualitative_reading_matches_exact_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let acc = random_acceptance(&mut rng, n, 3);
        let a = random_automaton(&mut rng, n, 2, 3).with_acceptance(Some(acc));
        let w = random_lasso(&mut rng, 2, 3, 4);
        let p = lasso_acceptance_probability(&a, &w).unwrap();
        let (almost, positive) = lasso_qualitative(&a, &w).unwrap();
        assert_eq!(almost, p == qpa_core::prob::one());
        assert_eq!(positive, p.is_positive());
    }
}

#[test]
fn jets_are_closed_and_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..40 {
        let n = rng.gen_range(1..=4);
        let a = random_automaton(&mut rng, n, 2, 3);
        let w = random_lasso(&mut rng, 2, 3, 4);
        let d = lasso_jet_decomposition(&a, &w).unwrap();
        assert!(d.lambda_bound.is_positive());
        let start = d.stabilization_index;
        for t in start..start + 2 * d.period {
            assert!(d.partitions(n, t));
            for jet in &d.jets {
                let next = support_step(&a, *jet.get(t), &[w.letter(t)]).unwrap();
                assert!(next.is_subset(*jet.get(t + 1)));
            }
        }
        assert!(j0_horizon(&a, &w, &d, &ratio(1, 1_000_000), 200).is_some());
    }
}
