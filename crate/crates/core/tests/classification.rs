use qpa_core::classify::{
    check_lemma5_bound, is_chain_recurrent, is_hierarchical, is_structurally_simple, product, reduce_dfa_intersection,
    union_structure,
};
use qpa_core::format::{parse_automaton, parse_dfa};
use qpa_core::lasso::lasso_qualitative;
use qpa_core::oracle::{rank_function_exists, words};
use qpa_core::qualitative::decide_almost_simple;
use qpa_core::random::{random_automaton, random_deterministic, random_dfa, random_hpa, random_lasso, random_parity};
use qpa_core::supportgraph::{is_sharp_acyclic, SelfLoops};
use qpa_core::{prob, Budgets, Dfa, StateSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EX1: &str = "states: s t u\nalphabet: a b\ninit: s=1\n\
    trans: s a s 1/2\ntrans: s a t 1/2\ntrans: s b s 1\n\
    trans: t a s 1/2\ntrans: t a u 1/2\ntrans: t b u 1\n\
    trans: u a t 1\ntrans: u b t 1\n";

const EX2: &str = "states: 1 2 3 4\nalphabet: a b\ninit: 1=1\n\
    trans: 1 a 1 1/2\ntrans: 1 a 3 1/2\ntrans: 1 b 2 1\n\
    trans: 2 a 2 1\ntrans: 2 b 2 1\n\
    trans: 3 a 3 1\ntrans: 3 b 1 1/2\ntrans: 3 b 4 1/2\n\
    trans: 4 a 4 1\ntrans: 4 b 4 1\n";

const A1: &str = "states: 1 2\nalphabet: a b\ninit: 2\naccept: 1\n\
    trans: 1 a 1\ntrans: 1 b 2\ntrans: 2 a 1\ntrans: 2 b 2\n";
const A2: &str = "states: 3 4 5\nalphabet: a b\ninit: 3\naccept: 4\n\
    trans: 3 a 4\ntrans: 3 b 3\ntrans: 4 a 4\ntrans: 4 b 5\ntrans: 5 a 5\ntrans: 5 b 5\n";

#[test]
fn hierarchical_matches_rank_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut seen = [0, 0];
    for _ in 0..150 {
        let n = rng.gen_range(1..=4);
        let a = if rng.gen_bool(0.5) { random_hpa(&mut rng, n, 2) } else { random_automaton(&mut rng, n, 2, 2) };
        let v = is_hierarchical(&a);
        assert_eq!(v.is_yes(), rank_function_exists(&a).is_some());
        seen[usize::from(v.is_yes())] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn fixed_examples() {
    let b = Budgets::default();
    let ex2 = parse_automaton(EX2).unwrap();
    assert!(is_structurally_simple(&ex2, &b).unwrap().is_yes());
    assert!(!is_hierarchical(&ex2).is_yes());
    let ex1 = parse_automaton(EX1).unwrap();
    assert!(!is_sharp_acyclic(&ex1, SelfLoops::Ignore, &b).unwrap());
    let hrd = reduce_dfa_intersection(&[parse_dfa(A1).unwrap(), parse_dfa(A2).unwrap()]).unwrap();
    assert!(!is_hierarchical(&hrd).is_yes());
    assert!(rank_function_exists(&hrd).is_none());
}

#[test]
fn subsumption() {
    let b = Budgets::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let n = rng.gen_range(1..=4);
        let d = random_deterministic(&mut rng, n, 2);
        assert!(is_structurally_simple(&d, &b).unwrap().is_yes());
        let h = random_hpa(&mut rng, n, 2);
        assert!(is_structurally_simple(&h, &b).unwrap().is_yes());
        let r = random_automaton(&mut rng, n, 2, 2);
        if is_sharp_acyclic(&r, SelfLoops::Ignore, &b).unwrap() {
            assert!(is_structurally_simple(&r, &b).unwrap().is_yes());
        }
    }
}

#[test]
fn entry_bound_on_chain_recurrent_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut checked = 0;
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let a = random_automaton(&mut rng, n, 2, 3);
        for q in 0..n {
            for w in words(2, 1, 6) {
                if is_chain_recurrent(&a, StateSet::singleton(q), &w).unwrap() {
                    assert!(check_lemma5_bound(&a, q, &w).unwrap());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn product_of_simple_automata_is_simple() {
    let b = Budgets::default();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut pairs = 0;
    while pairs < 10 {
        let (n1, n2) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
        let a1 = random_automaton(&mut rng, n1, 2, 2);
        let a2 = random_automaton(&mut rng, n2, 2, 2);
        if !is_structurally_simple(&a1, &b).unwrap().is_yes() || !is_structurally_simple(&a2, &b).unwrap().is_yes() {
            continue;
        }
        pairs += 1;
        let p = product(&a1, &a2).unwrap();
        assert_eq!(p.num_states(), a1.num_states() * a2.num_states());
        assert!(is_structurally_simple(&p, &b).unwrap().is_yes());
    }
}

#[test]
fn union_languages() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let b = Budgets::default();
    for _ in 0..10 {
        let n1 = rng.gen_range(1..=3);
        let n2 = rng.gen_range(1..=3);
        let a1 = random_automaton(&mut rng, n1, 2, 2).with_acceptance(Some(random_parity(&mut rng, n1, 3)));
        let a2 = random_automaton(&mut rng, n2, 2, 2).with_acceptance(Some(random_parity(&mut rng, n2, 3)));
        let u = union_structure(&a1, &a2, &prob::ratio(1, 3)).unwrap();
        for _ in 0..20 {
            let w = random_lasso(&mut rng, 2, 3, 3);
            let (_, p1) = lasso_qualitative(&a1, &w).unwrap();
            let (_, p2) = lasso_qualitative(&a2, &w).unwrap();
            let (_, pu) = lasso_qualitative(&u, &w).unwrap();
            assert_eq!(pu, p1 || p2);
        }
        if is_structurally_simple(&a1, &b).unwrap().is_yes() && is_structurally_simple(&a2, &b).unwrap().is_yes() {
            assert!(is_structurally_simple(&u, &b).unwrap().is_yes());
        }
    }
}

#[test]
fn reduction_matches_dfa_emptiness() {
    let b = Budgets::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut seen = [0, 0];
    for _ in 0..25 {
        let (n1, n2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let d1 = random_dfa(&mut rng, n1, 2);
        let d2 = random_dfa(&mut rng, n2, 2);
        let nonempty = Dfa::intersection_witness(&[d1.clone(), d2.clone()]).unwrap().is_some();
        let a = reduce_dfa_intersection(&[d1, d2]).unwrap();
        assert_eq!(decide_almost_simple(&a, &b).unwrap().is_yes(), nonempty);
        seen[usize::from(nonempty)] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}
