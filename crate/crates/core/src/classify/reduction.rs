use crate::automaton::{Acceptance, Automaton};
use crate::dfa::{letter_maps, Dfa};
use crate::error::{Error, Result};
use crate::prob::{self, Distribution, Matrix};
use crate::stateset::StateSet;

pub const RESERVED_LETTER: &str = "x";

/// Probabilistic automaton with a simple almost-sure Büchi word iff the DFAs
/// share a word.
///
/// The hub `s` picks one DFA uniformly on `x` and enters its initial state.
/// Inside copy `i` the letters of `Σ` follow the DFA; `x` returns to `s` from
/// an accepting state and falls into the sink `bot` otherwise. Letters of `Σ`
/// read at `s` also lead to `bot`. Acceptance is Büchi on `{s}`.
pub fn reduce_dfa_intersection(dfas: &[Dfa]) -> Result<Automaton> {
    let Some(first) = dfas.first() else {
        return Err(Error::Precondition("no DFAs given".into()));
    };
    if first.letters.iter().any(|l| l == RESERVED_LETTER) {
        return Err(Error::ReservedLetter(RESERVED_LETTER.into()));
    }
    let maps = letter_maps(dfas)?;
    let mut offsets = Vec::with_capacity(dfas.len());
    let mut states = vec!["s".to_string()];
    for (i, d) in dfas.iter().enumerate() {
        offsets.push(states.len());
        states.extend(d.states.iter().map(|q| format!("A{}.{q}", i + 1)));
    }
    let bot = states.len();
    states.push("bot".into());
    let n = states.len();
    if n > 64 {
        return Err(Error::Precondition(format!("reduction needs {n} states, more than 64")));
    }
    let sigma = first.letters.len();
    let mut letters = first.letters.clone();
    letters.push(RESERVED_LETTER.into());

    let mut matrices = vec![Matrix::zeros(n); sigma + 1];
    for m in matrices.iter_mut() {
        m.set(bot, bot, prob::one());
    }
    for m in matrices.iter_mut().take(sigma) {
        m.set(0, bot, prob::one());
    }
    let share = prob::ratio(1, dfas.len() as i64);
    for (i, d) in dfas.iter().enumerate() {
        let init = offsets[i] + d.init;
        let cur = matrices[sigma].get(0, init).clone();
        matrices[sigma].set(0, init, cur + &share);
        for q in 0..d.states.len() {
            for (l, m) in matrices.iter_mut().enumerate().take(sigma) {
                m.set(offsets[i] + q, offsets[i] + d.delta[q][maps[i][l]], prob::one());
            }
            let back = if d.accepting.contains(q) { 0 } else { bot };
            matrices[sigma].set(offsets[i] + q, back, prob::one());
        }
    }
    Automaton::new(
        states,
        letters,
        matrices,
        Distribution::dirac(n, 0),
        Some(Acceptance::Buchi(StateSet::singleton(0))),
    )
}
