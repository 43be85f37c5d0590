use std::collections::BTreeSet;

use proptest::prelude::*;
use qpa_core::format::{parse_automaton, write_automaton};
use qpa_core::random::{random_automaton, random_parity, random_word};
use qpa_core::semantics::{propagate, support_step};
use qpa_core::supportgraph::{border_action, linked_graph_of_word, Border};
use qpa_core::{Relation, StateSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #[test]
    fn stateset_matches_btreeset(x in 0u64..1 << 12, y in 0u64..1 << 12) {
        let (a, b) = (StateSet(x), StateSet(y));
        let sa: BTreeSet<usize> = a.iter().collect();
        let sb: BTreeSet<usize> = b.iter().collect();
        prop_assert_eq!(a.union(b).iter().collect::<BTreeSet<_>>(), &sa | &sb);
        prop_assert_eq!(a.intersection(b).iter().collect::<BTreeSet<_>>(), &sa & &sb);
        prop_assert_eq!(a.difference(b).iter().collect::<BTreeSet<_>>(), &sa - &sb);
        prop_assert_eq!(a.is_subset(b), sa.is_subset(&sb));
        prop_assert_eq!(a.len(), sa.len());
    }

    #[test]
    fn relation_composition_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_automaton(&mut r, 4, 3, 3);
        let (x, y, z) = (a.letter_relation(0), a.letter_relation(1), a.letter_relation(2));
        prop_assert_eq!(x.compose(y).compose(z), x.compose(&y.compose(z)));
        let s = StateSet(seed & 0xf);
        prop_assert_eq!(x.compose(y).image(s), y.image(x.image(s)));
    }

    #[test]
    fn compaction_is_a_morphism(seed in any::<u64>(), split in 1usize..6) {
        let mut r = rng(seed);
        let a = random_automaton(&mut r, 4, 2, 3);
        let w = random_word(&mut r, 2, 6);
        let org = a.all_states();
        let whole = linked_graph_of_word(&a, org, &w).unwrap();
        let left = linked_graph_of_word(&a, org, &w[..split]).unwrap();
        let right = linked_graph_of_word(&a, left.dest(), &w[split..]).unwrap();
        prop_assert_eq!(whole.compaction(), left.compaction().compose(&right.compaction()));
        prop_assert_eq!(left.concat(&right).unwrap(), whole);
    }

    #[test]
    fn borders_never_enlarge(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_automaton(&mut r, 4, 2, 3);
        let w = random_word(&mut r, 2, 7);
        let lg = linked_graph_of_word(&a, a.all_states(), &w).unwrap();
        for start in 1..lg.len() {
            for end in start + 1..=lg.len() {
                let b = Border::new(start, end);
                if !lg.is_border(b) {
                    continue;
                }
                let g = border_action(&lg, b).unwrap();
                for k in 1..=lg.len() {
                    if k != start {
                        prop_assert!(g.layer(k).is_subrelation(lg.layer(k)));
                    }
                }
                let rec = lg.segment(start + 1, end);
                let rec = qpa_core::graph::recurrent(&rec, lg.node(start));
                prop_assert!(g.node(start).is_subset(rec));
                prop_assert!(g.dest().is_subset(lg.dest()));
                prop_assert!(!g.dest().is_empty());
            }
        }
    }

    #[test]
    fn format_round_trip(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let a = random_automaton(&mut r, n, 2, 3).with_acceptance(Some(random_parity(&mut r, n, 4)));
        let text = write_automaton(&a);
        prop_assert_eq!(parse_automaton(&text).unwrap(), a);
    }

    #[test]
    fn support_of_propagation_is_support_step(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_automaton(&mut r, 4, 2, 3);
        let w = random_word(&mut r, 2, 5);
        let d = propagate(&a, a.initial(), &w).unwrap();
        prop_assert_eq!(d.support(), support_step(&a, a.initial_support(), &w).unwrap());
        prop_assert_eq!(d.total(), qpa_core::prob::one());
    }
}

#[test]
fn identity_relation_is_neutral() {
    let r = Relation::from_pairs(3, [(0, 1), (1, 2), (2, 2)]);
    let id = Relation::identity(3, StateSet::full(3));
    assert_eq!(id.compose(&r), r);
    assert_eq!(r.compose(&id), r);
}
