//! Exact analysis of lasso words `ρ1·ρ2^ω` through the product of the table
//! with the phase of the period.

mod jets;
mod simulate;

pub use jets::{lasso_jet_decomposition, j0_horizon, EventuallyPeriodic, JetDecomposition};
pub use simulate::{simulate_runs, Estimate};

use num_traits::Zero;

use crate::automaton::{Automaton, LassoWord};
use crate::error::{Error, Result};
use crate::graph;
use crate::prob::{self, Distribution, Prob};
use crate::semantics::propagate;

/// Markov chain on pairs `(q, phase)`, indexed `phase * n + q`, started from
/// the distribution reached after the prefix.
#[derive(Clone, Debug)]
pub struct LassoChain {
    pub n: usize,
    pub m: usize,
    pub succ: Vec<Vec<(usize, Prob)>>,
    pub start: Vec<Prob>,
    pub reachable: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub transient: Vec<usize>,
    class_of: Vec<Option<usize>>,
}

impl LassoChain {
    pub fn new(a: &Automaton, w: &LassoWord, init: &Distribution) -> Result<LassoChain> {
        a.check_word(&w.prefix)?;
        a.check_word(&w.period)?;
        if w.period.is_empty() {
            return Err(Error::Precondition("lasso period must be nonempty".into()));
        }
        let n = a.num_states();
        let m = w.period.len();
        let size = n * m;
        let mut succ = vec![Vec::new(); size];
        for (phase, &letter) in w.period.iter().enumerate() {
            let next = (phase + 1) % m;
            for q in 0..n {
                for (r, x) in a.matrix(letter).row(q).iter().enumerate() {
                    if !x.is_zero() {
                        succ[phase * n + q].push((next * n + r, x.clone()));
                    }
                }
            }
        }
        let mu = propagate(a, init, &w.prefix)?;
        let mut start = vec![prob::zero(); size];
        start[..n].clone_from_slice(&mu.weights);

        let mut seen = vec![false; size];
        let mut stack: Vec<usize> = (0..n).filter(|&q| !mu.weights[q].is_zero()).collect();
        for &v in &stack {
            seen[v] = true;
        }
        while let Some(v) = stack.pop() {
            for (t, _) in &succ[v] {
                if !seen[*t] {
                    seen[*t] = true;
                    stack.push(*t);
                }
            }
        }
        let reachable: Vec<usize> = (0..size).filter(|&v| seen[v]).collect();
        let plain: Vec<Vec<usize>> = succ.iter().map(|s| s.iter().map(|(t, _)| *t).collect()).collect();
        let classes = graph::bottom_sccs_dense(&plain, &reachable);
        let mut class_of = vec![None; size];
        for (i, c) in classes.iter().enumerate() {
            for &v in c {
                class_of[v] = Some(i);
            }
        }
        let transient = reachable.iter().copied().filter(|&v| class_of[v].is_none()).collect();
        Ok(LassoChain {
            n,
            m,
            succ,
            start,
            reachable,
            classes,
            transient,
            class_of,
        })
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.class_of[v]
    }

    pub fn successors(&self, v: usize) -> Vec<usize> {
        self.succ[v].iter().map(|(t, _)| *t).collect()
    }

    /// Probability of ending in each recurrent class.
    pub fn class_masses(&self) -> Result<Vec<Prob>> {
        let k = self.classes.len();
        let t = &self.transient;
        let mut pos = vec![usize::MAX; self.succ.len()];
        for (i, &v) in t.iter().enumerate() {
            pos[v] = i;
        }
        let mut a = vec![vec![prob::zero(); t.len()]; t.len()];
        let mut b = vec![vec![prob::zero(); k]; t.len()];
        for (i, &v) in t.iter().enumerate() {
            for (u, x) in &self.succ[v] {
                match self.class_of[*u] {
                    Some(c) => b[i][c] += x,
                    None => a[i][pos[*u]] += x,
                }
            }
        }
        let x = prob::solve_transient(&a, &b)
            .ok_or_else(|| Error::Internal("transient system of lasso chain is singular".into()))?;
        let mut out = vec![prob::zero(); k];
        for (v, w) in self.start.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            match self.class_of[v] {
                Some(c) => out[c] += w,
                None => {
                    for (c, o) in out.iter_mut().enumerate() {
                        *o += w * &x[pos[v]][c];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Whether each class satisfies the parity condition: every product
    /// state of a recurrent class is visited infinitely often, so the class
    /// accepts iff its smallest priority is even.
    pub fn accepted_classes(&self, p: &[u32]) -> Vec<bool> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&v| p[v % self.n]).min().unwrap() % 2 == 0)
            .collect()
    }
}

/// Exact probability that a run on `w` from the automaton's initial
/// distribution satisfies its acceptance condition.
pub fn lasso_acceptance_probability(a: &Automaton, w: &LassoWord) -> Result<Prob> {
    lasso_probability_from(a, a.initial(), w)
}

pub fn lasso_probability_from(a: &Automaton, init: &Distribution, w: &LassoWord) -> Result<Prob> {
    let (view, p) = a.parity_view()?;
    let chain = LassoChain::new(&view, w, init)?;
    let masses = chain.class_masses()?;
    Ok(chain
        .accepted_classes(&p)
        .into_iter()
        .zip(masses)
        .filter(|(acc, _)| *acc)
        .fold(prob::zero(), |s, (_, x)| s + x))
}

/// `(probability is 1, probability is positive)`, read off the graph of the
/// product chain without solving any linear system.
pub fn lasso_qualitative(a: &Automaton, w: &LassoWord) -> Result<(bool, bool)> {
    let (view, p) = a.parity_view()?;
    let chain = LassoChain::new(&view, w, a.initial())?;
    let acc = chain.accepted_classes(&p);
    Ok((acc.iter().all(|&x| x), acc.iter().any(|&x| x)))
}
