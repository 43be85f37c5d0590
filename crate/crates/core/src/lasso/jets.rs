use std::collections::HashMap;

use num_integer::Integer;
use num_traits::Signed;

use super::LassoChain;
use crate::automaton::{Automaton, LassoWord};
use crate::error::{Error, Result};
use crate::graph;
use crate::prob::{self, Distribution, Prob};
use crate::semantics::{support_step, word_matrix};
use crate::stateset::StateSet;

/// A sequence given by a finite prefix followed by a repeated cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodic<T> {
    pub prefix: Vec<T>,
    pub cycle: Vec<T>,
}

impl<T> EventuallyPeriodic<T> {
    pub fn get(&self, n: usize) -> &T {
        if n < self.prefix.len() {
            &self.prefix[n]
        } else {
            &self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetDecomposition {
    /// One jet per recurrent class of the product chain: at step `n`, the
    /// states of the class carrying positive mass.
    pub jets: Vec<EventuallyPeriodic<StateSet>>,
    pub j0: EventuallyPeriodic<StateSet>,
    /// Step from which the support sequence is periodic.
    pub stabilization_index: usize,
    /// Length in steps of that period.
    pub period: usize,
    /// Lower bound on `μ_n(q)` for `q` in a jet at any step `n ≥ N`.
    pub lambda_bound: Prob,
}

pub fn lasso_jet_decomposition(a: &Automaton, w: &LassoWord) -> Result<JetDecomposition> {
    let chain = LassoChain::new(a, w, a.initial())?;
    let n = a.num_states();
    let m = w.period.len();
    let pre = w.prefix.len();

    let mut at_phase0: HashMap<StateSet, usize> = HashMap::new();
    let mut x = support_step(a, a.initial_support(), &w.prefix)?;
    let mut k = 0;
    let (k0, p) = loop {
        if let Some(&k0) = at_phase0.get(&x) {
            break (k0, k - k0);
        }
        at_phase0.insert(x, k);
        x = support_step(a, x, &w.period)?;
        k += 1;
    };
    let big_n = pre + m * k0;
    let period = m * p;

    let mut supports = vec![a.initial_support()];
    for t in 0..big_n + period {
        let s = a.letter_relation(w.letter(t)).image(supports[t]);
        supports.push(s);
    }
    let jet_at = |class: &[usize], t: usize| -> StateSet {
        if t < pre {
            return StateSet::EMPTY;
        }
        let phase = (t - pre) % m;
        supports[t]
            .iter()
            .filter(|&q| class.binary_search(&(phase * n + q)).is_ok())
            .collect()
    };
    let split = |f: &dyn Fn(usize) -> StateSet| EventuallyPeriodic {
        prefix: (0..big_n).map(f).collect(),
        cycle: (big_n..big_n + period).map(f).collect(),
    };
    let jets: Vec<EventuallyPeriodic<StateSet>> = chain
        .classes
        .iter()
        .map(|c| split(&|t| jet_at(c, t)))
        .collect();
    let all = a.all_states();
    let j0 = split(&|t| {
        chain
            .classes
            .iter()
            .fold(all, |rest, c| rest.difference(jet_at(c, t)))
    });

    let lambda_bound = lambda(a, w, &chain, big_n, period, &supports)?;
    Ok(JetDecomposition {
        jets,
        j0,
        stabilization_index: big_n,
        period,
        lambda_bound,
    })
}

/// Certified lower bound on the mass of jet states after step `big_n`.
///
/// With `P` a multiple of every class period and of the support period, the
/// `P`-step matrix splits each class at a fixed phase into primitive blocks
/// `D`. Once `B^j` is positive on `D`, every state of `D` holds at least
/// `mass(D) · min B^j|D`, and the mass of `D` never decreases; the first `j`
/// visits are bounded by their exact values.
fn lambda(
    a: &Automaton,
    w: &LassoWord,
    chain: &LassoChain,
    big_n: usize,
    period: usize,
    supports: &[StateSet],
) -> Result<Prob> {
    let n = a.num_states();
    let m = w.period.len();
    let pre = w.prefix.len();
    let plain: Vec<Vec<usize>> = (0..chain.succ.len()).map(|v| chain.successors(v)).collect();
    let mut big_p = m;
    for c in &chain.classes {
        big_p = big_p.lcm(&graph::period(&plain, c));
    }
    big_p = big_p.lcm(&period);

    let mut mus = vec![a.initial().clone()];
    let mut mu_at = |t: usize| -> Distribution {
        while mus.len() <= t {
            let s = mus.len() - 1;
            let next = mus[s].step(a.matrix(w.letter(s)));
            mus.push(next);
        }
        mus[t].clone()
    };

    let mut best: Option<Prob> = None;
    for r in 0..big_p {
        let t0 = big_n + r;
        let s0 = supports[big_n + (t0 - big_n) % period];
        let phase = (t0 - pre) % m;
        let b = word_matrix(a, &w.segment(t0, t0 + big_p))?;
        let rel = b.support();
        for class in &chain.classes {
            let k_phase: StateSet = class
                .iter()
                .filter(|&&v| v / n == phase)
                .map(|&v| v % n)
                .collect();
            if !k_phase.intersects(s0) {
                continue;
            }
            let comps = graph::sccs(&rel, k_phase);
            for d in comps {
                if !rel.image(d).intersection(k_phase).is_subset(d) {
                    return Err(Error::Internal("periodic block is not closed".into()));
                }
                if !d.intersects(s0) {
                    continue;
                }
                let limit = (d.len() - 1) * (d.len() - 1) + 1;
                let mut pow = b.clone();
                let mut j = 1;
                while !d.iter().all(|q| d.iter().all(|q2| pow.get(q, q2).is_positive())) {
                    if j >= limit {
                        return Err(Error::Internal("periodic block is not primitive".into()));
                    }
                    pow = pow.mul(&b);
                    j += 1;
                }
                let beta = d
                    .iter()
                    .flat_map(|q| d.iter().map(move |q2| (q, q2)))
                    .map(|(q, q2)| pow.get(q, q2).clone())
                    .min()
                    .unwrap();
                let mut cand = mu_at(t0).mass(d) * beta;
                for step in 0..j {
                    let mu = mu_at(t0 + step * big_p);
                    for q in d {
                        let v = &mu.weights[q];
                        if v.is_positive() && *v < cand {
                            cand = v.clone();
                        }
                    }
                }
                if best.as_ref().map_or(true, |x| cand < *x) {
                    best = Some(cand);
                }
            }
        }
    }
    Ok(best.unwrap_or_else(prob::one))
}

/// Mass outside the jets at steps `N, N+m, N+2m, …` until it drops below
/// `eps`; `None` when `max_periods` periods do not suffice.
pub fn j0_horizon(
    a: &Automaton,
    w: &LassoWord,
    jets: &JetDecomposition,
    eps: &Prob,
    max_periods: usize,
) -> Option<Vec<Prob>> {
    let m = w.period.len();
    let mut mu = a.initial().clone();
    let mut t = 0;
    let mut out = Vec::new();
    for _ in 0..=max_periods {
        while t < jets.stabilization_index + out.len() * m {
            mu = mu.step(a.matrix(w.letter(t)));
            t += 1;
        }
        let mass = mu.mass(*jets.j0.get(t));
        let done = mass < *eps;
        out.push(mass);
        if done {
            return Some(out);
        }
    }
    None
}

impl JetDecomposition {
    /// Whether the sets at step `t` partition `Q` (of size `n`).
    pub fn partitions(&self, n: usize, t: usize) -> bool {
        let mut seen = *self.j0.get(t);
        for j in &self.jets {
            let s = *j.get(t);
            if s.intersects(seen) {
                return false;
            }
            seen = seen.union(s);
        }
        seen == StateSet::full(n)
    }
}
