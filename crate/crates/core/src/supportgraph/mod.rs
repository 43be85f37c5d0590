//! Support graphs, linked graphs with borders, and the extended support
//! graph with the limit procedures built on it.

mod extended;
mod limit;
mod linked;

pub use extended::{
    build_extended_support_graph, sharp_reachable, Derivation, ExtendedSupportGraph, SharpWitness,
};
pub use limit::{
    decide_limit_parity_structsimple, decide_limit_reach_structsimple, pump_word, synthesize_limit_word,
    Synthesis,
};
pub use linked::{apply_borders, border_action, linked_graph_of_word, replay, Border, LinkedGraph};

use std::collections::{HashMap, VecDeque};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph;
use crate::semantics::sharp_power;
use crate::stateset::StateSet;
use crate::verdict::Budgets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Letter(usize),
    Sharp(usize),
}

#[derive(Clone, Debug)]
pub struct SupportGraph {
    pub nodes: Vec<StateSet>,
    pub edges: Vec<(usize, usize, EdgeKind)>,
    index: HashMap<StateSet, usize>,
}

impl SupportGraph {
    pub fn contains(&self, s: StateSet) -> bool {
        self.index.contains_key(&s)
    }

    pub fn node(&self, s: StateSet) -> Option<usize> {
        self.index.get(&s).copied()
    }
}

/// Support graph on the sets reachable from the initial support.
pub fn build_support_graph(a: &Automaton, budgets: &Budgets) -> Result<SupportGraph> {
    support_graph_from(a, &[a.initial_support()], budgets.subsets)
}

/// Support graph on every nonempty subset of `Q`.
pub fn full_support_graph(a: &Automaton, budgets: &Budgets) -> Result<SupportGraph> {
    let n = a.num_states();
    if n >= 32 || (1usize << n) > budgets.subsets {
        return Err(Error::Budget { what: "subset", limit: budgets.subsets });
    }
    let seeds: Vec<StateSet> = StateSet::nonempty_subsets(n).collect();
    support_graph_from(a, &seeds, budgets.subsets)
}

/// Edges `S → S·a` for every letter, plus `S → S·a^#` whenever `S·a = S`.
pub fn support_graph_from(a: &Automaton, seeds: &[StateSet], budget: usize) -> Result<SupportGraph> {
    let mut g = SupportGraph {
        nodes: Vec::new(),
        edges: Vec::new(),
        index: HashMap::new(),
    };
    let mut queue = VecDeque::new();
    let add = |g: &mut SupportGraph, s: StateSet, queue: &mut VecDeque<usize>| -> Result<usize> {
        if let Some(&i) = g.index.get(&s) {
            return Ok(i);
        }
        if g.nodes.len() >= budget {
            return Err(Error::Budget { what: "subset", limit: budget });
        }
        g.nodes.push(s);
        g.index.insert(s, g.nodes.len() - 1);
        queue.push_back(g.nodes.len() - 1);
        Ok(g.nodes.len() - 1)
    };
    for &s in seeds {
        add(&mut g, s, &mut queue)?;
    }
    while let Some(i) = queue.pop_front() {
        let s = g.nodes[i];
        for l in 0..a.num_letters() {
            let t = a.letter_relation(l).image(s);
            let j = add(&mut g, t, &mut queue)?;
            g.edges.push((i, j, EdgeKind::Letter(l)));
            if t == s {
                let r = sharp_power(a, s, &[l])?;
                let k = add(&mut g, r, &mut queue)?;
                g.edges.push((i, k, EdgeKind::Sharp(l)));
            }
        }
    }
    Ok(g)
}

/// How identity edges `S → S` count when looking for cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfLoops {
    Ignore,
    Count,
}

/// Whether the full support graph is acyclic.
pub fn is_sharp_acyclic(a: &Automaton, self_loops: SelfLoops, budgets: &Budgets) -> Result<bool> {
    let g = full_support_graph(a, budgets)?;
    let pairs: Vec<(usize, usize)> = g.edges.iter().map(|&(i, j, _)| (i, j)).collect();
    if self_loops == SelfLoops::Count && pairs.iter().any(|(i, j)| i == j) {
        return Ok(false);
    }
    Ok(!graph::has_cycle(g.nodes.len(), &pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_automaton;

    const EX1: &str = "states: s t u\nalphabet: a b\ninit: s=1\n\
        trans: s a s 1/2\ntrans: s a t 1/2\ntrans: s b s 1\n\
        trans: t a s 1/2\ntrans: t a u 1/2\ntrans: t b u 1\n\
        trans: u a t 1\ntrans: u b t 1\n";

    pub(crate) const EX2: &str = "states: 1 2 3 4\nalphabet: a b\ninit: 1=1\n\
        trans: 1 a 1 1/2\ntrans: 1 a 3 1/2\ntrans: 1 b 2 1\n\
        trans: 2 a 2 1\ntrans: 2 b 2 1\n\
        trans: 3 a 3 1\ntrans: 3 b 1 1/2\ntrans: 3 b 4 1/2\n\
        trans: 4 a 4 1\ntrans: 4 b 4 1\n";

    #[test]
    fn ex2_support_graph_misses_4() {
        let a = parse_automaton(EX2).unwrap();
        let g = build_support_graph(&a, &Budgets::default()).unwrap();
        for s in ["1", "1 3", "2", "3", "1 4", "1 3 4", "3 4", "2 4"] {
            assert!(g.contains(a.parse_states(s).unwrap()), "{s}");
        }
        assert!(!g.contains(a.parse_states("4").unwrap()));
    }

    #[test]
    fn ex1_sharp_self_loops_on_q() {
        let a = parse_automaton(EX1).unwrap();
        let g = support_graph_from(&a, &[a.all_states()], 100).unwrap();
        let q = g.node(a.all_states()).unwrap();
        assert!(g.edges.contains(&(q, q, EdgeKind::Sharp(0))));
        assert!(g.edges.contains(&(q, q, EdgeKind::Sharp(1))));
    }

    #[test]
    fn deterministic_nodes_are_singletons() {
        let a = parse_automaton(
            "states: p q r\nalphabet: a b\ninit: p\ntrans: p a q 1\ntrans: p b r 1\n\
             trans: q a r 1\ntrans: q b p 1\ntrans: r a r 1\ntrans: r b q 1\n",
        )
        .unwrap();
        let g = build_support_graph(&a, &Budgets::default()).unwrap();
        assert!(g.nodes.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn sharp_acyclicity() {
        let b = Budgets::default();
        let ex1 = parse_automaton(EX1).unwrap();
        assert!(!is_sharp_acyclic(&ex1, SelfLoops::Ignore, &b).unwrap());
        let ex2 = parse_automaton(EX2).unwrap();
        assert!(!is_sharp_acyclic(&ex2, SelfLoops::Ignore, &b).unwrap());
        assert!(!is_sharp_acyclic(&ex2, SelfLoops::Count, &b).unwrap());
        let id = parse_automaton("states: p q\nalphabet: a\ninit: p\ntrans: p a p 1\ntrans: q a q 1\n").unwrap();
        assert!(is_sharp_acyclic(&id, SelfLoops::Ignore, &b).unwrap());
        assert!(!is_sharp_acyclic(&id, SelfLoops::Count, &b).unwrap());
        let swap = parse_automaton("states: p q\nalphabet: a\ninit: p\ntrans: p a q 1\ntrans: q a p 1\n").unwrap();
        assert!(!is_sharp_acyclic(&swap, SelfLoops::Ignore, &b).unwrap());
    }
}
