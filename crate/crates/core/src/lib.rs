//! Qualitative analysis of probabilistic automata over infinite words.
//!
//! Probabilities are exact rationals throughout; floating point only shows
//! up in the Monte Carlo simulator. State sets are `u64` bitsets, so an
//! automaton has at most 64 states.

pub mod automaton;
pub mod classify;
pub mod dfa;
pub mod dot;
pub mod error;
pub mod format;
pub mod graph;
pub mod lasso;
pub mod oracle;
pub mod prob;
pub mod qualitative;
pub mod random;
pub mod semantics;
pub mod stateset;
pub mod supportgraph;
pub mod verdict;

pub use automaton::{Acceptance, Automaton, LassoWord, Violation, Word};
pub use dfa::Dfa;
pub use error::{Error, Result};
pub use prob::{Distribution, Matrix, Prob};
pub use stateset::{Relation, StateSet};
pub use verdict::{Answer, Budgets, Verdict, Witness};
