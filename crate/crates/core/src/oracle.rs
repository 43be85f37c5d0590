//! Brute-force reference procedures used to cross-check the decision
//! procedures. Everything here enumerates words up to a length bound, so it is
//! exponential and only meant for tiny automata.

use std::collections::{BTreeSet, HashSet};

use crate::automaton::{Automaton, LassoWord, Word};
use crate::classify::{chain_recurrence_split, check_rank, minimal_sets};
use crate::error::Result;
use crate::lasso::lasso_qualitative;
use crate::stateset::StateSet;
use crate::supportgraph::{border_action, linked_graph_of_word, Border, LinkedGraph};
use crate::verdict::Budgets;

/// All words over `k` letters with length in `min..=max`, shortest first.
pub fn words(k: usize, min: usize, max: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for len in 0..=max {
        if len >= min {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// What exhaustive lasso enumeration finds.
#[derive(Clone, Debug, Default)]
pub struct LassoSearch {
    pub almost: Option<LassoWord>,
    pub positive: Option<LassoWord>,
}

/// Enumerates every lasso with `|prefix| ≤ max_prefix` and
/// `1 ≤ |period| ≤ max_period`, remembering the first almost-sure and the
/// first positive one.
pub fn lasso_search(a: &Automaton, max_prefix: usize, max_period: usize) -> Result<LassoSearch> {
    let k = a.num_letters();
    let periods = words(k, 1, max_period);
    let mut found = LassoSearch::default();
    for prefix in words(k, 0, max_prefix) {
        for period in &periods {
            let w = LassoWord::new(prefix.clone(), period.clone())?;
            let (almost, positive) = lasso_qualitative(a, &w)?;
            if almost && found.almost.is_none() {
                found.almost = Some(w.clone());
            }
            if positive && found.positive.is_none() {
                found.positive = Some(w);
            }
            if found.almost.is_some() && found.positive.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(found)
}

/// Destinations of every border chain of at most `max_borders` borders on
/// the linked graphs of words of length `1..=max_len` from `c`, plus `c`.
pub fn literal_sharp_reach(a: &Automaton, c: StateSet, max_len: usize, max_borders: usize) -> Result<BTreeSet<StateSet>> {
    let mut out = BTreeSet::from([c]);
    for w in words(a.num_letters(), 1, max_len) {
        out.extend(word_sharp_reach(a, c, &w, max_borders)?);
    }
    Ok(out)
}

/// Destinations `D` with `c →#-w D` using at most `max_borders` borders.
pub fn word_sharp_reach(a: &Automaton, c: StateSet, w: &[usize], max_borders: usize) -> Result<BTreeSet<StateSet>> {
    let lg = linked_graph_of_word(a, c, w)?;
    let mut seen = HashSet::new();
    let mut out = BTreeSet::new();
    chains(&lg, max_borders, &mut seen, &mut out)?;
    Ok(out)
}

fn chains(
    lg: &LinkedGraph,
    budget: usize,
    seen: &mut HashSet<(LinkedGraph, usize)>,
    out: &mut BTreeSet<StateSet>,
) -> Result<()> {
    if !seen.insert((lg.clone(), budget)) {
        return Ok(());
    }
    out.insert(lg.dest());
    if budget == 0 {
        return Ok(());
    }
    for start in 1..lg.len() {
        for end in start + 1..=lg.len() {
            let b = Border::new(start, end);
            if lg.is_border(b) {
                let next = border_action(lg, b)?;
                if next != *lg {
                    chains(&next, budget - 1, seen, out)?;
                }
            }
        }
    }
    Ok(())
}

/// Structural simplicity read off its definition, for words of length at
/// most `max_len` and chains of at most `max_borders` borders: whenever
/// `C →#-ρ D` with `D ⊆ C` and `D` minimal, the execution tree of `D` along
/// `ρ` must be chain recurrent. Minimality is global: no proper subset of `D`
/// is #-reachable from `D`. Returns the first offending `(C, D, ρ)`.
pub fn definitional_not_simple(
    a: &Automaton,
    max_len: usize,
    max_borders: usize,
    budgets: &Budgets,
) -> Result<Option<(StateSet, StateSet, Word)>> {
    let minimal = minimal_sets(a, budgets)?;
    for c in StateSet::nonempty_subsets(a.num_states()) {
        for w in words(a.num_letters(), 1, max_len) {
            for d in word_sharp_reach(a, c, &w, max_borders)? {
                if d.is_subset(c) && minimal.contains(&d) && chain_recurrence_split(a, d, &w)?.is_some() {
                    return Ok(Some((c, d, w)));
                }
            }
        }
    }
    Ok(None)
}

/// Whether some rank function `Q → {0..|Q|-1}` witnesses the hierarchical
/// condition, by trying all of them.
pub fn rank_function_exists(a: &Automaton) -> Option<Vec<u32>> {
    let n = a.num_states();
    let mut rk = vec![0u32; n];
    loop {
        if check_rank(a, &rk) {
            return Some(rk);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            rk[i] += 1;
            if (rk[i] as usize) < n {
                break;
            }
            rk[i] = 0;
            i += 1;
        }
    }
}
