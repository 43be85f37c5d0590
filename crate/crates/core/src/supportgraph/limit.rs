//! Limit reachability and limit parity for structurally simple automata.

use num_traits::One;

use crate::automaton::{Acceptance, Automaton, LassoWord, Word};
use crate::classify::is_structurally_simple;
use crate::error::{Error, Result};
use crate::graph;
use crate::lasso::lasso_acceptance_probability;
use crate::prob::{self, Prob};
use crate::qualitative::build_profile_monoid;
use crate::semantics::propagate;
use crate::stateset::StateSet;
use crate::verdict::{Budgets, Verdict, Witness};

use super::extended::{build_extended_support_graph, ExtendedSupportGraph};

const WORD_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Synthesis {
    pub word: Word,
    pub probability: Prob,
    pub pumping: usize,
}

fn gate(a: &Automaton, budgets: &Budgets) -> Result<()> {
    if is_structurally_simple(a, budgets)?.is_yes() {
        Ok(())
    } else {
        Err(Error::NotStructurallySimple)
    }
}

fn default_eps() -> Prob {
    prob::ratio(1, 100)
}

/// Pumps the element `id` with growing exponents until the exact mass in
/// `target` reaches `1 - eps`.
pub fn pump_word(
    a: &Automaton,
    g: &ExtendedSupportGraph,
    id: usize,
    target: StateSet,
    eps: &Prob,
    budgets: &Budgets,
) -> Result<Synthesis> {
    let goal = Prob::one() - eps;
    let mut best = prob::zero();
    let mut k = 1usize;
    for _ in 0..=budgets.pump_rounds {
        let Some(word) = g.pumped_word(id, k, WORD_CAP) else { break };
        let p = propagate(a, a.initial(), &word)?.mass(target);
        if p >= goal {
            return Ok(Synthesis { word, probability: p, pumping: k });
        }
        if p > best {
            best = p;
        }
        k *= 2;
    }
    Err(Error::PumpingExhausted { best })
}

/// A finite word putting at least `1 - eps` of the initial mass into `target`.
pub fn synthesize_limit_word(a: &Automaton, target: StateSet, eps: &Prob, budgets: &Budgets) -> Result<Synthesis> {
    let init = a.initial_support();
    if init.is_subset(target) {
        return Ok(Synthesis { word: Vec::new(), probability: a.initial().mass(target), pumping: 0 });
    }
    let g = build_extended_support_graph(a, &[init], false, budgets.extended)?;
    let mut ids: Vec<usize> = g.from_left(init).filter(|&id| g.element(id).right.is_subset(target)).collect();
    if ids.is_empty() {
        return Err(Error::Precondition(format!(
            "no subset of {} is #-reachable from the initial support",
            a.render_set(target)
        )));
    }
    ids.sort_by_key(|&id| (g.element(id).word_len, id));
    let mut best = prob::zero();
    for id in ids.into_iter().take(8) {
        match pump_word(a, &g, id, target, eps, budgets) {
            Ok(s) => return Ok(s),
            Err(Error::PumpingExhausted { best: b }) => best = best.max(b),
            Err(e) => return Err(e),
        }
    }
    Err(Error::PumpingExhausted { best })
}

/// Is the reachability target limit reachable? Requires a structurally
/// simple automaton.
pub fn decide_limit_reach_structsimple(a: &Automaton, budgets: &Budgets) -> Result<Verdict> {
    let f = match a.acceptance() {
        Some(Acceptance::Reachability(f)) => *f,
        Some(_) => return Err(Error::Precondition("reachability acceptance expected".into())),
        None => return Err(Error::NoAcceptance),
    };
    gate(a, budgets)?;
    let init = a.initial_support();
    let g = build_extended_support_graph(a, &[init], false, budgets.extended)?;
    let hit = init.is_subset(f) || g.from_left(init).any(|id| g.element(id).right.is_subset(f));
    if !hit {
        return Ok(Verdict::no(format!(
            "no subset of {} is #-reachable from {}",
            a.render_set(f),
            a.render_set(init)
        )));
    }
    Ok(limit_witness(a, f, None, budgets)?)
}

fn limit_witness(a: &Automaton, target: StateSet, period: Option<(&Automaton, Word)>, budgets: &Budgets) -> Result<Verdict> {
    let eps = default_eps();
    let syn = match synthesize_limit_word(a, target, &eps, budgets) {
        Ok(s) => s,
        Err(Error::PumpingExhausted { best }) => {
            let init = a.initial_support();
            let g = build_extended_support_graph(a, &[init], false, budgets.extended)?;
            let id = g
                .from_left(init)
                .find(|&id| g.element(id).right.is_subset(target))
                .ok_or_else(|| Error::Internal("lost #-reachable target".into()))?;
            return Ok(Verdict::yes(
                Witness::SharpPath { word: g.word(id), borders: g.borders(id), dest: g.element(id).right },
                format!("#-reachable target; pumping stopped at probability {best}"),
            ));
        }
        Err(e) => return Err(e),
    };
    let acceptance_probability = match &period {
        Some((pa, w)) => {
            let lasso = LassoWord::new(syn.word.clone(), w.clone())?;
            let p = lasso_acceptance_probability(pa, &lasso)?;
            if p < Prob::one() - &eps {
                return Err(Error::Internal(format!("limit witness only reaches {p}")));
            }
            Some(p)
        }
        None => None,
    };
    Ok(Verdict::yes(
        Witness::Limit {
            prefix: syn.word,
            period: period.map(|(_, w)| w),
            target,
            reach_probability: syn.probability,
            acceptance_probability,
        },
        format!("mass at least 1-{eps} reached with pumping exponent {}", syn.pumping),
    ))
}

/// Is the acceptance value 1? Looks for a #-reachable set `T` and a word whose
/// closure over `T` has only even recurrent classes.
pub fn decide_limit_parity_structsimple(a: &Automaton, budgets: &Budgets) -> Result<Verdict> {
    if a.acceptance().is_none() {
        return Err(Error::NoAcceptance);
    }
    gate(a, budgets)?;
    let (pa, p) = a.parity_view()?;
    let init = pa.initial_support();
    let g = build_extended_support_graph(&pa, &[init], false, budgets.extended)?;
    let monoid = build_profile_monoid(&pa, &p, budgets.monoid)?;
    let mut seen = Vec::new();
    for t in g.reachable_from(init) {
        if seen.contains(&t) {
            continue;
        }
        seen.push(t);
        for (profile, word) in monoid.iter() {
            let rel = profile.relation();
            let closed = rel.reach(t);
            let good = graph::bottom_sccs(&rel, closed)
                .into_iter()
                .all(|c| profile.class_minimum(c).is_some_and(|m| m % 2 == 0));
            if good {
                return limit_witness(&pa, t, Some((&pa, word.clone())), budgets);
            }
        }
    }
    Ok(Verdict::no("no #-reachable set carries a word with only even recurrent classes"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_automaton;
    use crate::verdict::Answer;

    const EX2: &str = "states: 1 2 3 4\nalphabet: a b\ninit: 1=1\n\
        trans: 1 a 1 1/2\ntrans: 1 a 3 1/2\ntrans: 1 b 2 1\n\
        trans: 2 a 2 1\ntrans: 2 b 2 1\n\
        trans: 3 a 3 1\ntrans: 3 b 1 1/2\ntrans: 3 b 4 1/2\n\
        trans: 4 a 4 1\ntrans: 4 b 4 1\n";

    fn ex2(acc: &str) -> Automaton {
        parse_automaton(&format!("{EX2}acceptance: {acc}\n")).unwrap()
    }

    #[test]
    fn ex2_limit_reach_4() {
        let a = ex2("reach 4");
        let v = decide_limit_reach_structsimple(&a, &Budgets::default()).unwrap();
        assert_eq!(v.answer, Answer::Yes);
        let Some(Witness::Limit { prefix, reach_probability, .. }) = v.witness else { panic!() };
        let four = a.parse_states("4").unwrap();
        assert_eq!(propagate(&a, a.initial(), &prefix).unwrap().mass(four), reach_probability);
        assert!(reach_probability >= prob::ratio(99, 100));
    }

    #[test]
    fn initial_support_inside_target() {
        let a = ex2("reach 1 2");
        let v = decide_limit_reach_structsimple(&a, &Budgets::default()).unwrap();
        let Some(Witness::Limit { prefix, .. }) = v.witness else { panic!() };
        assert!(prefix.is_empty());
    }

    #[test]
    fn unreachable_target() {
        let a = parse_automaton(
            "states: 1 2 3\nalphabet: a b\ninit: 1\nacceptance: reach 2\n\
             trans: 1 a 1 1/2\ntrans: 1 a 3 1/2\ntrans: 1 b 1 1\n\
             trans: 2 a 2 1\ntrans: 2 b 2 1\ntrans: 3 a 3 1\ntrans: 3 b 3 1\n",
        )
        .unwrap();
        let v = decide_limit_reach_structsimple(&a, &Budgets::default()).unwrap();
        assert_eq!(v.answer, Answer::No);
    }

    #[test]
    fn synthesis_examples() {
        let a = ex2("reach 4");
        let b = Budgets::default();
        let three = a.parse_states("3").unwrap();
        let s = synthesize_limit_word(&a, three, &prob::ratio(1, 10), &b).unwrap();
        assert!(s.word.iter().all(|&l| l == 0));
        assert!(s.probability >= prob::ratio(9, 10));
        let four = a.parse_states("4").unwrap();
        let s = synthesize_limit_word(&a, four, &prob::ratio(1, 100), &b).unwrap();
        assert!(propagate(&a, a.initial(), &s.word).unwrap().mass(four) >= prob::ratio(99, 100));
        let s = synthesize_limit_word(&a, a.all_states(), &prob::ratio(1, 2), &b).unwrap();
        assert!(s.word.is_empty());
    }

    #[test]
    fn ex2_limit_parity() {
        let b = Budgets::default();
        let v = decide_limit_parity_structsimple(&ex2("parity 1=1 2=1 3=1 4=0"), &b).unwrap();
        assert_eq!(v.answer, Answer::Yes);
        let Some(Witness::Limit { acceptance_probability: Some(p), .. }) = v.witness else { panic!() };
        assert!(p >= prob::ratio(99, 100));
        let v = decide_limit_parity_structsimple(&ex2("parity 1=1 2=0 3=1 4=1"), &b).unwrap();
        assert_eq!(v.answer, Answer::Yes);
        let v = decide_limit_parity_structsimple(&ex2("parity 1=1 2=1 3=3 4=5"), &b).unwrap();
        assert_eq!(v.answer, Answer::No);
    }

    #[test]
    fn gate_rejects_ex1() {
        let a = parse_automaton(
            "states: s t u\nalphabet: a b\ninit: s=1\nacceptance: reach u\n\
             trans: s a s 1/2\ntrans: s a t 1/2\ntrans: s b s 1\n\
             trans: t a s 1/2\ntrans: t a u 1/2\ntrans: t b u 1\n\
             trans: u a t 1\ntrans: u b t 1\n",
        )
        .unwrap();
        assert_eq!(
            decide_limit_reach_structsimple(&a, &Budgets::default()),
            Err(Error::NotStructurallySimple)
        );
    }
}
