//! Structural classes of automata, closure constructions and the reduction
//! from DFA intersection.

mod constructions;
mod hierarchical;
mod reduction;
mod structural;

pub use constructions::{product, union_structure};
pub use hierarchical::{check_rank, is_hierarchical};
pub use reduction::{reduce_dfa_intersection, RESERVED_LETTER};
pub use structural::{is_structurally_simple, minimal_sets};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::prob::Prob;
use crate::semantics::{sharp_power, support_step, word_matrix};
use crate::stateset::StateSet;

/// `(A, B, ρ)` is a #-reduction: `A ∪ B` is `ρ`-stable and its recurrent part
/// is exactly `B`.
pub fn is_sharp_reduction(a: &Automaton, x: StateSet, y: StateSet, w: &[usize]) -> Result<bool> {
    if x.is_empty() || y.is_empty() || x.intersects(y) {
        return Ok(false);
    }
    let s = x.union(y);
    if support_step(a, s, w)? != s {
        return Ok(false);
    }
    Ok(sharp_power(a, s, w)? == y)
}

/// First split `(i, j)` such that the support after `w[..i]` is stable under
/// `w[i..j]` with a strictly smaller recurrent part.
pub fn chain_recurrence_split(a: &Automaton, start: StateSet, w: &[usize]) -> Result<Option<(usize, usize)>> {
    a.check_word(w)?;
    let mut s = start;
    for i in 0..w.len() {
        let mut t = s;
        for j in i + 1..=w.len() {
            t = a.letter_relation(w[j - 1]).image(t);
            if t == s && sharp_power(a, s, &w[i..j])?.is_proper_subset(s) {
                return Ok(Some((i, j)));
            }
        }
        s = a.letter_relation(w[i]).image(s);
    }
    Ok(None)
}

pub fn is_chain_recurrent(a: &Automaton, start: StateSet, w: &[usize]) -> Result<bool> {
    Ok(chain_recurrence_split(a, start, w)?.is_none())
}

/// Every positive entry of `δ(q, ρ)` is at least `ε^(2^(2|Q|))`.
pub fn check_lemma5_bound(a: &Automaton, q: usize, w: &[usize]) -> Result<bool> {
    if q >= a.num_states() {
        return Err(Error::UnknownState(q.to_string()));
    }
    if !is_chain_recurrent(a, StateSet::singleton(q), w)? {
        return Err(Error::Precondition("execution tree is not chain recurrent".into()));
    }
    let m = word_matrix(a, w)?;
    let eps = a.epsilon();
    let exponent = BigUint::one() << (2 * a.num_states());
    let entries: Vec<&Prob> = m.row(q).iter().filter(|p| !p.is_zero()).collect();
    match exponent.to_usize().filter(|&e| e <= 1 << 14) {
        Some(e) => {
            let bound = num_traits::pow(eps, e);
            Ok(entries.into_iter().all(|p| *p >= bound))
        }
        // Each positive entry is at least ε^|ρ|, and |ρ| is below the exponent.
        None => Ok(BigUint::from(w.len()) <= exponent),
    }
}
