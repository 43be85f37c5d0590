use crate::automaton::{LassoWord, Word};
use crate::prob::Prob;
use crate::stateset::StateSet;
use crate::supportgraph::Border;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    UndecidableInGeneral,
}

impl Answer {
    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::UndecidableInGeneral => "undecidable_in_general",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A lasso word together with its exact acceptance probability.
    Lasso { word: LassoWord, probability: Prob },
    /// A word and border chain whose bordered linked graph ends in `dest`.
    SharpPath {
        word: Word,
        borders: Vec<Border>,
        dest: StateSet,
    },
    /// A finite word driving at least `1 - eps` of the mass into `target`,
    /// followed (for parity) by a period repeated forever.
    Limit {
        prefix: Word,
        period: Option<Word>,
        target: StateSet,
        reach_probability: Prob,
        acceptance_probability: Option<Prob>,
    },
    /// Rank function witnessing the hierarchical condition.
    Rank(Vec<u32>),
    /// A minimal set `c`, a word leading from it to `source`, and a bordered
    /// word from `source` back to `c` whose plain support differs from `c`.
    NotSimple {
        minimal: StateSet,
        path: Word,
        source: StateSet,
        word: Word,
        borders: Vec<Border>,
        raw_support: StateSet,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub witness: Option<Witness>,
    pub diagnostics: String,
}

impl Verdict {
    pub fn yes(witness: Witness, diagnostics: impl Into<String>) -> Verdict {
        Verdict {
            answer: Answer::Yes,
            witness: Some(witness),
            diagnostics: diagnostics.into(),
        }
    }

    pub fn no(diagnostics: impl Into<String>) -> Verdict {
        Verdict {
            answer: Answer::No,
            witness: None,
            diagnostics: diagnostics.into(),
        }
    }

    pub fn undecidable(diagnostics: impl Into<String>) -> Verdict {
        Verdict {
            answer: Answer::UndecidableInGeneral,
            witness: None,
            diagnostics: diagnostics.into(),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

/// Resource limits for the exponential constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Elements of a profile monoid.
    pub monoid: usize,
    /// Nodes of a subset construction.
    pub subsets: usize,
    /// Labeled edges of the extended support graph.
    pub extended: usize,
    /// Doublings of the pumping exponent in limit-word synthesis.
    pub pump_rounds: u32,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets {
            monoid: 1_000_000,
            subsets: 1 << 16,
            extended: 500_000,
            pump_rounds: 14,
        }
    }
}
