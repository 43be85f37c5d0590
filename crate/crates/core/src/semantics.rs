use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph;
use crate::prob::{self, Distribution, Matrix, Prob};
use crate::qualitative::profile::PriorityProfile;
use crate::stateset::StateSet;

/// `M_ρ`, the product of the letter matrices; the identity for `ε`.
pub fn word_matrix(a: &Automaton, w: &[usize]) -> Result<Matrix> {
    a.check_word(w)?;
    Ok(w.iter()
        .fold(Matrix::identity(a.num_states()), |m, &l| m.mul(a.matrix(l))))
}

pub fn propagate(a: &Automaton, beta: &Distribution, w: &[usize]) -> Result<Distribution> {
    a.check_word(w)?;
    Ok(w.iter().fold(beta.clone(), |d, &l| d.step(a.matrix(l))))
}

/// `S·ρ`.
pub fn support_step(a: &Automaton, s: StateSet, w: &[usize]) -> Result<StateSet> {
    a.check_word(w)?;
    Ok(w.iter().fold(s, |s, &l| a.letter_relation(l).image(s)))
}

/// `S·ρ^#`: the recurrent states of the chain induced on a `ρ`-stable `S`.
pub fn sharp_power(a: &Automaton, s: StateSet, w: &[usize]) -> Result<StateSet> {
    if support_step(a, s, w)? != s {
        return Err(Error::Precondition(format!(
            "{} not stable under {}",
            a.render_set(s),
            a.render_word(w)
        )));
    }
    Ok(graph::recurrent(&a.word_relation(w), s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAnalysis {
    pub closed_set: StateSet,
    pub recurrent_classes: Vec<StateSet>,
    pub transient: StateSet,
    /// `absorption[q][k]`: probability that the chain started in `q` ends in
    /// class `k`. Rows outside the closed set are zero.
    pub absorption: Vec<Vec<Prob>>,
}

fn closed_check(a: &Automaton, g: StateSet, w: &[usize]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::Precondition("chain word must be nonempty".into()));
    }
    if !support_step(a, g, w)?.is_subset(g) {
        return Err(Error::Precondition(format!(
            "{} not closed under {}",
            a.render_set(g),
            a.render_word(w)
        )));
    }
    Ok(())
}

pub fn chain_analysis(a: &Automaton, g: StateSet, w: &[usize]) -> Result<ChainAnalysis> {
    closed_check(a, g, w)?;
    let m = word_matrix(a, w)?;
    let classes = graph::bottom_sccs(&m.support(), g);
    let rec = classes.iter().fold(StateSet::EMPTY, |x, c| x.union(*c));
    let transient = g.difference(rec);
    let absorption = absorption_probabilities(&m, g, &classes, transient)?;
    Ok(ChainAnalysis {
        closed_set: g,
        recurrent_classes: classes,
        transient,
        absorption,
    })
}

/// Solves for the probability of ending in each class from every state of `g`.
pub(crate) fn absorption_probabilities(
    m: &Matrix,
    g: StateSet,
    classes: &[StateSet],
    transient: StateSet,
) -> Result<Vec<Vec<Prob>>> {
    let n = m.dim();
    let k = classes.len();
    let mut out = vec![vec![prob::zero(); k]; n];
    for (ci, c) in classes.iter().enumerate() {
        for q in *c {
            out[q][ci] = prob::one();
        }
    }
    let t: Vec<usize> = transient.iter().collect();
    if t.is_empty() {
        return Ok(out);
    }
    let sub: Vec<Vec<Prob>> = t
        .iter()
        .map(|&i| t.iter().map(|&j| m.get(i, j).clone()).collect())
        .collect();
    let rhs: Vec<Vec<Prob>> = t
        .iter()
        .map(|&i| {
            classes
                .iter()
                .map(|c| c.iter().fold(prob::zero(), |acc, j| acc + m.get(i, j)))
                .collect()
        })
        .collect();
    let x = prob::solve_transient(&sub, &rhs)
        .ok_or_else(|| Error::Precondition(format!("transient system singular on {g:?}")))?;
    for (row, &i) in x.into_iter().zip(&t) {
        out[i] = row;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainParity {
    pub accepted: bool,
    /// Smallest priority seen inside each recurrent class, in class order.
    pub class_minima: Vec<u32>,
}

/// Whether every run of the chain induced by `(G, ρ)` satisfies the parity
/// condition `p` almost surely.
///
/// Within a recurrent class every positive-probability segment recurs
/// infinitely often, so the smallest priority visited infinitely often is
/// the smallest priority on any `ρ`-path between two class members.
pub fn chain_parity_almost(a: &Automaton, g: StateSet, w: &[usize], p: &[u32]) -> Result<ChainParity> {
    closed_check(a, g, w)?;
    let profile = PriorityProfile::of_word(a, p, w);
    let rel = profile.relation();
    let class_minima: Vec<u32> = graph::bottom_sccs(&rel, g)
        .into_iter()
        .map(|c| profile.class_minimum(c).expect("bottom class has an internal edge"))
        .collect();
    Ok(ChainParity {
        accepted: class_minima.iter().all(|m| m % 2 == 0),
        class_minima,
    })
}
