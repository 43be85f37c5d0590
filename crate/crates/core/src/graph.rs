//! Strongly connected components of relations over state sets.

use petgraph::algo::tarjan_scc;
use petgraph::graphmap::DiGraphMap;

use crate::stateset::{Relation, StateSet};

/// SCCs of `rel` restricted to `within`, each as a state set, sorted by
/// smallest member.
pub fn sccs(rel: &Relation, within: StateSet) -> Vec<StateSet> {
    let mut g: DiGraphMap<usize, ()> = DiGraphMap::new();
    for q in within {
        g.add_node(q);
    }
    for q in within {
        for r in rel.row(q).intersection(within) {
            g.add_edge(q, r, ());
        }
    }
    let mut out: Vec<StateSet> = tarjan_scc(&g)
        .into_iter()
        .map(StateSet::from_indices)
        .collect();
    out.sort_by_key(|s| s.first());
    out
}

/// Bottom SCCs: components with no edge leaving them inside `within`.
pub fn bottom_sccs(rel: &Relation, within: StateSet) -> Vec<StateSet> {
    sccs(rel, within)
        .into_iter()
        .filter(|c| rel.image(*c).intersection(within).is_subset(*c))
        .collect()
}

/// Union of the bottom SCCs.
pub fn recurrent(rel: &Relation, within: StateSet) -> StateSet {
    bottom_sccs(rel, within)
        .into_iter()
        .fold(StateSet::EMPTY, StateSet::union)
}

/// Bottom SCCs of the subgraph induced by `nodes` in an adjacency-list graph
/// too large for a bitset. Components come sorted by smallest member.
pub fn bottom_sccs_dense(succ: &[Vec<usize>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut inside = vec![false; succ.len()];
    let mut g: DiGraphMap<usize, ()> = DiGraphMap::new();
    for &v in nodes {
        inside[v] = true;
        g.add_node(v);
    }
    for &v in nodes {
        for &t in &succ[v] {
            if inside[t] {
                g.add_edge(v, t, ());
            }
        }
    }
    let mut comp = vec![usize::MAX; succ.len()];
    let all = tarjan_scc(&g);
    for (i, c) in all.iter().enumerate() {
        for &v in c {
            comp[v] = i;
        }
    }
    let mut out: Vec<Vec<usize>> = all
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            c.iter()
                .all(|&v| succ[v].iter().all(|&t| !inside[t] || comp[t] == *i))
        })
        .map(|(_, c)| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out
}

/// Period of a strongly connected component: the gcd of its cycle lengths.
pub fn period(succ: &[Vec<usize>], class: &[usize]) -> usize {
    let mut level = vec![usize::MAX; succ.len()];
    let mut inside = vec![false; succ.len()];
    for &v in class {
        inside[v] = true;
    }
    let root = class[0];
    level[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut g = 0usize;
    while let Some(v) = queue.pop_front() {
        for &t in &succ[v] {
            if !inside[t] {
                continue;
            }
            if level[t] == usize::MAX {
                level[t] = level[v] + 1;
                queue.push_back(t);
            } else {
                g = num_integer::gcd(g, (level[v] + 1).abs_diff(level[t]));
            }
        }
    }
    g.max(1)
}

/// Whether a digraph on indices `0..n` has a cycle, ignoring self-loops.
pub fn has_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut g: DiGraphMap<usize, ()> = DiGraphMap::new();
    for i in 0..n {
        g.add_node(i);
    }
    for &(a, b) in edges {
        if a != b {
            g.add_edge(a, b, ());
        }
    }
    tarjan_scc(&g).iter().any(|c| c.len() > 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bottom_components() {
        // 0 -> 1 <-> 2, 0 -> 3 (self loop)
        let r = Relation::from_pairs(4, [(0, 1), (1, 2), (2, 1), (0, 3), (3, 3)]);
        let b = bottom_sccs(&r, StateSet::full(4));
        assert_eq!(b, vec![StateSet::from_indices([1, 2]), StateSet::singleton(3)]);
        assert_eq!(recurrent(&r, StateSet::full(4)), StateSet::from_indices([1, 2, 3]));
        // restricted to {0}, the lone state is bottom
        assert_eq!(bottom_sccs(&r, StateSet::singleton(0)), vec![StateSet::singleton(0)]);
    }

    #[test]
    fn dense_bottom_and_period() {
        // 0 -> 1 -> 2 -> 1, 3 -> 3
        let succ = vec![vec![1], vec![2], vec![1], vec![3]];
        assert_eq!(bottom_sccs_dense(&succ, &[0, 1, 2, 3]), vec![vec![1, 2], vec![3]]);
        assert_eq!(period(&succ, &[1, 2]), 2);
        assert_eq!(period(&succ, &[3]), 1);
        let tri = vec![vec![1], vec![2], vec![0, 1]];
        assert_eq!(period(&tri, &[0, 1, 2]), 1);
    }

    #[test]
    fn cycles_ignore_self_loops() {
        assert!(!has_cycle(2, &[(0, 0), (0, 1)]));
        assert!(has_cycle(2, &[(0, 1), (1, 0)]));
    }
}
