use std::collections::HashMap;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::qualitative::subset_construction;
use crate::stateset::StateSet;
use crate::supportgraph::{build_extended_support_graph, ExtendedSupportGraph};
use crate::verdict::{Answer, Budgets, Verdict, Witness};

fn closure_on_all_subsets(a: &Automaton, raw: bool, budgets: &Budgets) -> Result<ExtendedSupportGraph> {
    let n = a.num_states();
    if n >= 32 || (1usize << n) > budgets.subsets {
        return Err(Error::Budget { what: "subset", limit: budgets.subsets });
    }
    let seeds: Vec<StateSet> = StateSet::nonempty_subsets(n).collect();
    build_extended_support_graph(a, &seeds, raw, budgets.extended)
}

fn minimal_in(g: &ExtendedSupportGraph, n: usize) -> Vec<StateSet> {
    StateSet::nonempty_subsets(n)
        .filter(|&c| !g.reachable_from(c).into_iter().any(|d| d.is_proper_subset(c)))
        .collect()
}

/// Nonempty sets with no proper subset #-reachable from them.
pub fn minimal_sets(a: &Automaton, budgets: &Budgets) -> Result<Vec<StateSet>> {
    let g = closure_on_all_subsets(a, false, budgets)?;
    Ok(minimal_in(&g, a.num_states()))
}

/// Decides structural simplicity through minimal sets: the automaton is
/// simple iff from no minimal `C` a plain support lies in `S(C)`, the sets
/// that #-reach `C` along a word whose plain support differs from `C`.
pub fn is_structurally_simple(a: &Automaton, budgets: &Budgets) -> Result<Verdict> {
    let g = closure_on_all_subsets(a, true, budgets)?;
    let mut into: HashMap<StateSet, Vec<(StateSet, usize, StateSet)>> = HashMap::new();
    for (id, e) in g.elements().iter().enumerate() {
        let raw = e.raw.as_ref().expect("raw tracking enabled").image(e.left);
        if raw != e.right {
            into.entry(e.right).or_default().push((e.left, id, raw));
        }
    }
    for c in minimal_in(&g, a.num_states()) {
        let Some(sources) = into.get(&c) else { continue };
        for (s, path) in subset_construction(a, c, budgets.subsets)? {
            if let Some(&(_, id, raw)) = sources.iter().find(|(l, ..)| *l == s) {
                return Ok(Verdict {
                    answer: Answer::No,
                    witness: Some(Witness::NotSimple {
                        minimal: c,
                        path,
                        source: s,
                        word: g.word(id),
                        borders: g.borders(id),
                        raw_support: raw,
                    }),
                    diagnostics: format!(
                        "{} is reachable from the minimal set {} and #-reaches it with plain support {}",
                        a.render_set(s),
                        a.render_set(c),
                        a.render_set(raw)
                    ),
                });
            }
        }
    }
    Ok(Verdict {
        answer: Answer::Yes,
        witness: None,
        diagnostics: "no minimal set reaches a reducible predecessor".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_automaton;
    use crate::supportgraph::replay;

    const EX1: &str = "states: s t u\nalphabet: a b\ninit: s=1\n\
        trans: s a s 1/2\ntrans: s a t 1/2\ntrans: s b s 1\n\
        trans: t a s 1/2\ntrans: t a u 1/2\ntrans: t b u 1\n\
        trans: u a t 1\ntrans: u b t 1\n";

    const EX2: &str = "states: 1 2 3 4\nalphabet: a b\ninit: 1=1\n\
        trans: 1 a 1 1/2\ntrans: 1 a 3 1/2\ntrans: 1 b 2 1\n\
        trans: 2 a 2 1\ntrans: 2 b 2 1\n\
        trans: 3 a 3 1\ntrans: 3 b 1 1/2\ntrans: 3 b 4 1/2\n\
        trans: 4 a 4 1\ntrans: 4 b 4 1\n";

    #[test]
    fn ex2_is_simple() {
        let a = parse_automaton(EX2).unwrap();
        let v = is_structurally_simple(&a, &Budgets::default()).unwrap();
        assert_eq!(v.answer, Answer::Yes, "{}", v.diagnostics);
    }

    #[test]
    fn ex1_is_not_simple() {
        let a = parse_automaton(EX1).unwrap();
        let v = is_structurally_simple(&a, &Budgets::default()).unwrap();
        assert_eq!(v.answer, Answer::No);
        let Some(Witness::NotSimple { minimal, path, source, word, borders, raw_support }) = v.witness else {
            panic!()
        };
        assert_eq!(crate::semantics::support_step(&a, minimal, &path).unwrap(), source);
        assert_eq!(replay(&a, source, &word, &borders).unwrap(), minimal);
        assert_eq!(crate::semantics::support_step(&a, source, &word).unwrap(), raw_support);
        assert_ne!(raw_support, minimal);
    }

    #[test]
    fn deterministic_is_simple() {
        let a = parse_automaton(
            "states: p q r\nalphabet: a b\ninit: p\ntrans: p a q 1\ntrans: p b r 1\n\
             trans: q a r 1\ntrans: q b p 1\ntrans: r a r 1\ntrans: r b q 1\n",
        )
        .unwrap();
        assert!(is_structurally_simple(&a, &Budgets::default()).unwrap().is_yes());
    }

    #[test]
    fn singletons_are_minimal() {
        let a = parse_automaton(EX1).unwrap();
        let m = minimal_sets(&a, &Budgets::default()).unwrap();
        for q in 0..3 {
            assert!(m.contains(&StateSet::singleton(q)));
        }
        assert!(!m.contains(&a.all_states()));
    }
}
