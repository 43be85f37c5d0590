//! Positive and almost-sure emptiness for lasso-definable behaviour, via a
//! finite monoid of min-priority profiles.

pub mod monoid;
pub mod profile;

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Signed};

pub use monoid::{Element, ProfileMonoid};
pub use profile::{PriorityProfile, SafeProfile};

use crate::automaton::{Acceptance, Automaton, LassoWord, Word};
use crate::error::{Error, Result};
use crate::graph;
use crate::lasso::lasso_acceptance_probability;
use crate::stateset::StateSet;
use crate::supportgraph;
use crate::verdict::{Budgets, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    Positive,
    Almost,
    Limit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Simple,
    General,
    Lasso,
    StructSimple,
}

/// Makes every state of `f` absorbing. Reachability of `f` has the same
/// probability before and after on every word.
pub fn make_accepting_absorbing(a: &Automaton, f: StateSet) -> Automaton {
    a.absorbing(f)
}

pub fn build_profile_monoid(a: &Automaton, p: &[u32], budget: usize) -> Result<ProfileMonoid<PriorityProfile>> {
    let gens = (0..a.num_letters())
        .map(|l| PriorityProfile::letter(a, p, l))
        .collect();
    ProfileMonoid::build(gens, budget)
}

pub fn build_safe_monoid(a: &Automaton, f: StateSet, budget: usize) -> Result<ProfileMonoid<SafeProfile>> {
    let gens = (0..a.num_letters())
        .map(|l| SafeProfile::letter(a, f, l))
        .collect();
    ProfileMonoid::build(gens, budget)
}

/// Supports reachable from `from` letter by letter, each with a shortest word,
/// in breadth-first order.
pub fn subset_construction(a: &Automaton, from: StateSet, budget: usize) -> Result<Vec<(StateSet, Word)>> {
    subset_graph(a, from, budget, |_| true).map(|(nodes, _)| nodes)
}

/// Nodes with their shortest words, and edges `(from, to, letter)`.
type SubsetGraph = (Vec<(StateSet, Word)>, Vec<(usize, usize, usize)>);

fn subset_graph(
    a: &Automaton,
    from: StateSet,
    budget: usize,
    keep: impl Fn(StateSet) -> bool,
) -> Result<SubsetGraph> {
    let mut nodes = vec![(from, Vec::new())];
    let mut index = HashMap::from([(from, 0usize)]);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (s, w) = nodes[i].clone();
        for l in 0..a.num_letters() {
            let t = a.letter_relation(l).image(s);
            if !keep(t) {
                continue;
            }
            let j = match index.get(&t) {
                Some(&j) => j,
                None => {
                    if nodes.len() >= budget {
                        return Err(Error::Budget { what: "subset", limit: budget });
                    }
                    let mut w2 = w.clone();
                    w2.push(l);
                    nodes.push((t, w2));
                    index.insert(t, nodes.len() - 1);
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            edges.push((i, j, l));
        }
    }
    Ok((nodes, edges))
}

fn checked_lasso(a: &Automaton, prefix: Word, period: Word, almost: bool) -> Result<Verdict> {
    let word = LassoWord::new(prefix, period)?;
    let probability = lasso_acceptance_probability(a, &word)?;
    let ok = if almost { probability.is_one() } else { probability.is_positive() };
    if !ok {
        return Err(Error::Internal(format!(
            "lasso witness has probability {probability}"
        )));
    }
    Ok(Verdict::yes(
        Witness::Lasso { word, probability },
        if almost { "lasso accepted with probability 1" } else { "lasso accepted with positive probability" },
    ))
}

fn acceptance(a: &Automaton) -> Result<&Acceptance> {
    a.acceptance().ok_or(Error::NoAcceptance)
}

/// Is there a word accepted with probability 1?
///
/// Searches for an exact support `G` reached by some `ρ1` and a profile of
/// some `ρ2` that keeps `G` closed with every recurrent class even.
pub fn decide_almost_simple(a: &Automaton, budgets: &Budgets) -> Result<Verdict> {
    if let Acceptance::Safety(_) = acceptance(a)? {
        return decide_safety(a, Problem::Almost, budgets);
    }
    let (view, p) = a.parity_view()?;
    let supports = subset_construction(&view, view.initial_support(), budgets.subsets)?;
    let monoid = build_profile_monoid(&view, &p, budgets.monoid)?;
    let relations: Vec<_> = monoid.iter().map(|(e, _)| e.relation()).collect();
    for (g, w1) in &supports {
        for (i, (prof, w2)) in monoid.iter().enumerate() {
            let rel = &relations[i];
            if !rel.image(*g).is_subset(*g) {
                continue;
            }
            let even = graph::bottom_sccs(rel, *g)
                .into_iter()
                .all(|c| prof.class_minimum(c).is_some_and(|x| x % 2 == 0));
            if even {
                return checked_lasso(a, w1.clone(), w2.clone(), true);
            }
        }
    }
    Ok(Verdict::no(format!(
        "no closed recurrent structure among {} supports and {} profiles",
        supports.len(),
        monoid.len()
    )))
}

/// Is there a word accepted with positive probability?
pub fn decide_positive_simple(a: &Automaton, budgets: &Budgets) -> Result<Verdict> {
    if let Acceptance::Safety(_) = acceptance(a)? {
        return decide_safety(a, Problem::Positive, budgets);
    }
    let (view, p) = a.parity_view()?;
    let supports = subset_construction(&view, view.initial_support(), budgets.subsets)?;
    let monoid = build_profile_monoid(&view, &p, budgets.monoid)?;
    let all = view.all_states();
    let even: Vec<Vec<StateSet>> = monoid
        .iter()
        .map(|(prof, _)| {
            graph::bottom_sccs(&prof.relation(), all)
                .into_iter()
                .filter(|c| prof.class_minimum(*c).is_some_and(|x| x % 2 == 0))
                .collect()
        })
        .collect();
    for (s, w1) in &supports {
        for (i, (_, w2)) in monoid.iter().enumerate() {
            if even[i].iter().any(|c| c.is_subset(*s)) {
                return checked_lasso(a, w1.clone(), w2.clone(), false);
            }
        }
    }
    Ok(Verdict::no(format!(
        "no even recurrent class inside {} supports under {} profiles",
        supports.len(),
        monoid.len()
    )))
}

pub fn decide_safety(a: &Automaton, problem: Problem, budgets: &Budgets) -> Result<Verdict> {
    let Acceptance::Safety(f) = *acceptance(a)? else {
        return Err(Error::Precondition("safety acceptance required".into()));
    };
    match problem {
        Problem::Almost | Problem::Limit => almost_safety(a, f, budgets),
        Problem::Positive => positive_safety(a, f, budgets),
    }
}

fn almost_safety(a: &Automaton, f: StateSet, budgets: &Budgets) -> Result<Verdict> {
    let init = a.initial_support();
    if !init.is_subset(f) {
        return Ok(Verdict::no("initial support leaves the safe set"));
    }
    let (nodes, edges) = subset_graph(a, init, budgets.subsets, |t| t.is_subset(f))?;
    let mut succ = vec![Vec::new(); nodes.len()];
    for &(i, j, l) in &edges {
        succ[i].push((j, l));
    }
    for i in 0..nodes.len() {
        if let Some(cycle) = shortest_cycle(&succ, i) {
            return checked_lasso(a, nodes[i].1.clone(), cycle, true);
        }
    }
    Ok(Verdict::no("every word eventually leaves the safe set"))
}

/// Letters of a shortest nonempty path from `i` back to `i`.
fn shortest_cycle(succ: &[Vec<(usize, usize)>], i: usize) -> Option<Word> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; succ.len()];
    let mut queue = VecDeque::from([i]);
    let mut visited = vec![false; succ.len()];
    while let Some(v) = queue.pop_front() {
        for &(j, l) in &succ[v] {
            if j == i {
                let mut word = vec![l];
                let mut cur = v;
                while cur != i {
                    let (p, pl) = prev[cur].unwrap();
                    word.push(pl);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            if !visited[j] {
                visited[j] = true;
                prev[j] = Some((v, l));
                queue.push_back(j);
            }
        }
    }
    None
}

fn positive_safety(a: &Automaton, f: StateSet, budgets: &Budgets) -> Result<Verdict> {
    let start = a.initial_support().intersection(f);
    if start.is_empty() {
        return Ok(Verdict::no("no initial mass inside the safe set"));
    }
    let monoid = build_safe_monoid(a, f, budgets.monoid)?;
    for (e2, w2) in monoid.iter() {
        let mut c = e2.full;
        loop {
            let next: StateSet = c.iter().filter(|&q| e2.relation.row(q).is_subset(c)).collect();
            if next == c {
                break;
            }
            c = next;
        }
        if c.is_empty() {
            continue;
        }
        if start.intersects(c) {
            return checked_lasso(a, Vec::new(), w2.clone(), false);
        }
        if let Some((_, w1)) = monoid.iter().find(|(e1, _)| e1.relation.image(start).intersects(c)) {
            return checked_lasso(a, w1.clone(), w2.clone(), false);
        }
    }
    Ok(Verdict::no("no safe set is invariant under any period"))
}

/// Dispatches a problem to the procedure that decides it in the given mode,
/// or reports it undecidable.
pub fn decide(a: &Automaton, problem: Problem, mode: Mode, budgets: &Budgets) -> Result<Verdict> {
    let acc = acceptance(a)?;
    if let Acceptance::Safety(_) = acc {
        return decide_safety(a, problem, budgets);
    }
    let kind = acc.kind();
    match (mode, problem) {
        (Mode::General, Problem::Positive) => match acc {
            Acceptance::Reachability(_) | Acceptance::CoBuchi(_) => decide_positive_simple(a, budgets),
            _ => Ok(Verdict::undecidable(format!(
                "the positive problem for {kind} acceptance is undecidable for arbitrary words"
            ))),
        },
        (Mode::General, Problem::Almost) => match acc {
            Acceptance::Reachability(_) | Acceptance::Buchi(_) => decide_almost_simple(a, budgets),
            _ => Ok(Verdict::undecidable(format!(
                "the almost-sure problem for {kind} acceptance is undecidable for arbitrary words"
            ))),
        },
        (Mode::General, Problem::Limit) => Ok(Verdict::undecidable(format!(
            "the limit problem for {kind} acceptance is undecidable for arbitrary words"
        ))),
        (_, Problem::Positive) => decide_positive_simple(a, budgets),
        (_, Problem::Almost) => decide_almost_simple(a, budgets),
        (Mode::StructSimple, Problem::Limit) => match acc {
            Acceptance::Reachability(_) => supportgraph::decide_limit_reach_structsimple(a, budgets),
            _ => supportgraph::decide_limit_parity_structsimple(a, budgets),
        },
        (_, Problem::Limit) => Ok(Verdict::undecidable(format!(
            "the limit problem for {kind} acceptance is undecidable even for simple processes"
        ))),
    }
}
