use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::prob::{self, Distribution, Matrix, Prob};
use crate::stateset::{Relation, StateSet, MAX_STATES};

/// A finite word as a sequence of letter indices.
pub type Word = Vec<usize>;

/// The infinite word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    pub prefix: Word,
    pub period: Word,
}

impl LassoWord {
    pub fn new(prefix: Word, period: Word) -> Result<LassoWord> {
        if period.is_empty() {
            return Err(Error::Precondition("lasso period must be nonempty".into()));
        }
        Ok(LassoWord { prefix, period })
    }

    /// Letter read at step `n` (0-based).
    pub fn letter(&self, n: usize) -> usize {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.period[(n - self.prefix.len()) % self.period.len()]
        }
    }

    /// The letters at steps `from..to`.
    pub fn segment(&self, from: usize, to: usize) -> Word {
        (from..to).map(|n| self.letter(n)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Acceptance {
    Safety(StateSet),
    Reachability(StateSet),
    Buchi(StateSet),
    CoBuchi(StateSet),
    Parity(Vec<u32>),
}

impl Acceptance {
    pub fn kind(&self) -> &'static str {
        match self {
            Acceptance::Safety(_) => "safety",
            Acceptance::Reachability(_) => "reach",
            Acceptance::Buchi(_) => "buchi",
            Acceptance::CoBuchi(_) => "cobuchi",
            Acceptance::Parity(_) => "parity",
        }
    }

    /// Priority vector for the parity-like conditions.
    ///
    /// Büchi uses priorities {0, 1} and coBüchi {1, 2}.
    pub fn priorities(&self, n: usize) -> Option<Vec<u32>> {
        match self {
            Acceptance::Parity(p) => Some(p.clone()),
            Acceptance::Buchi(f) => Some((0..n).map(|q| if f.contains(q) { 0 } else { 1 }).collect()),
            Acceptance::CoBuchi(f) => {
                Some((0..n).map(|q| if f.contains(q) { 2 } else { 1 }).collect())
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoStates,
    TooManyStates(usize),
    NoLetters,
    DuplicateState(String),
    DuplicateLetter(String),
    MatrixShape { letter: String },
    NegativeEntry { state: String, letter: String, target: String },
    RowSum { state: String, letter: String, sum: Prob },
    InitialShape,
    InitialNegative { state: String },
    InitialSum { sum: Prob },
    AcceptanceUnknownState { index: usize },
    MissingPriority { state: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStates => write!(f, "no states"),
            Violation::TooManyStates(n) => write!(f, "{n} states exceed the limit of {MAX_STATES}"),
            Violation::NoLetters => write!(f, "empty alphabet"),
            Violation::DuplicateState(s) => write!(f, "duplicate state {s}"),
            Violation::DuplicateLetter(s) => write!(f, "duplicate letter {s}"),
            Violation::MatrixShape { letter } => write!(f, "matrix for letter {letter} has wrong shape"),
            Violation::NegativeEntry { state, letter, target } => {
                write!(f, "negative entry for state {state}, letter {letter}, target {target}")
            }
            Violation::RowSum { state, letter, sum } => {
                write!(f, "row sum ≠ 1 for state {state}, letter {letter} (sum {sum})")
            }
            Violation::InitialShape => write!(f, "initial distribution has wrong length"),
            Violation::InitialNegative { state } => write!(f, "negative initial weight on {state}"),
            Violation::InitialSum { sum } => write!(f, "initial distribution sums to {sum}"),
            Violation::AcceptanceUnknownState { index } => {
                write!(f, "acceptance refers to unknown state #{index}")
            }
            Violation::MissingPriority { state } => write!(f, "no priority for state {state}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Automaton {
    states: Vec<String>,
    letters: Vec<String>,
    matrices: Vec<Matrix>,
    supports: Vec<Relation>,
    initial: Distribution,
    acceptance: Option<Acceptance>,
}

impl PartialEq for Automaton {
    fn eq(&self, o: &Self) -> bool {
        self.states == o.states
            && self.letters == o.letters
            && self.matrices == o.matrices
            && self.initial == o.initial
            && self.acceptance == o.acceptance
    }
}

impl Eq for Automaton {}

impl Automaton {
    /// Assembles an automaton without checking any invariant.
    pub fn from_parts(
        states: Vec<String>,
        letters: Vec<String>,
        matrices: Vec<Matrix>,
        initial: Distribution,
        acceptance: Option<Acceptance>,
    ) -> Automaton {
        let supports = matrices.iter().map(Matrix::support).collect();
        Automaton {
            states,
            letters,
            matrices,
            supports,
            initial,
            acceptance,
        }
    }

    pub fn new(
        states: Vec<String>,
        letters: Vec<String>,
        matrices: Vec<Matrix>,
        initial: Distribution,
        acceptance: Option<Acceptance>,
    ) -> Result<Automaton> {
        let a = Automaton::from_parts(states, letters, matrices, initial, acceptance);
        let v = a.validate();
        if v.is_empty() {
            Ok(a)
        } else {
            Err(Error::Invalid(v))
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_automaton(self)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.num_states())
    }

    pub fn matrix(&self, letter: usize) -> &Matrix {
        &self.matrices[letter]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// Positive-transition relation of a letter.
    pub fn letter_relation(&self, letter: usize) -> &Relation {
        &self.supports[letter]
    }

    pub fn word_relation(&self, w: &[usize]) -> Relation {
        w.iter().fold(
            Relation::identity(self.num_states(), self.all_states()),
            |r, &a| r.compose(&self.supports[a]),
        )
    }

    /// `post(q, a)`.
    pub fn post(&self, q: usize, letter: usize) -> StateSet {
        self.supports[letter].row(q)
    }

    pub fn initial(&self) -> &Distribution {
        &self.initial
    }

    pub fn initial_support(&self) -> StateSet {
        self.initial.support()
    }

    pub fn acceptance(&self) -> Option<&Acceptance> {
        self.acceptance.as_ref()
    }

    pub fn with_acceptance(mut self, acc: Option<Acceptance>) -> Automaton {
        self.acceptance = acc;
        self
    }

    pub fn with_initial(mut self, init: Distribution) -> Automaton {
        self.initial = init;
        self
    }

    /// Smallest positive transition probability, written ε(A).
    pub fn epsilon(&self) -> Prob {
        let mut best: Option<Prob> = None;
        for m in &self.matrices {
            for i in 0..m.dim() {
                for x in m.row(i) {
                    if x.is_positive() && best.as_ref().map_or(true, |b| x < b) {
                        best = Some(x.clone());
                    }
                }
            }
        }
        best.unwrap_or_else(prob::one)
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial_support().len() == 1
            && self
                .supports
                .iter()
                .all(|r| r.rows().iter().all(|row| row.len() == 1))
    }

    /// Every state of `f` becomes absorbing under every letter.
    pub fn absorbing(&self, f: StateSet) -> Automaton {
        let n = self.num_states();
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                let mut m = m.clone();
                for q in f {
                    for j in 0..n {
                        m.set(q, j, if j == q { prob::one() } else { prob::zero() });
                    }
                }
                m
            })
            .collect();
        Automaton::from_parts(
            self.states.clone(),
            self.letters.clone(),
            matrices,
            self.initial.clone(),
            self.acceptance.clone(),
        )
    }

    /// Rewrites the acceptance condition as a parity condition, possibly on a
    /// modified table.
    ///
    /// Reachability(F) makes F absorbing and becomes Büchi(F); Safety(F) makes
    /// the complement of F absorbing and gives it the odd priority.
    pub fn parity_view(&self) -> Result<(Automaton, Vec<u32>)> {
        let n = self.num_states();
        let acc = self.acceptance.as_ref().ok_or(Error::NoAcceptance)?;
        Ok(match acc {
            Acceptance::Reachability(f) => (
                self.absorbing(*f),
                Acceptance::Buchi(*f).priorities(n).unwrap(),
            ),
            Acceptance::Safety(f) => {
                let bad = self.all_states().difference(*f);
                (
                    self.absorbing(bad),
                    (0..n).map(|q| if f.contains(q) { 0 } else { 1 }).collect(),
                )
            }
            other => (self.clone(), other.priorities(n).unwrap()),
        })
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|s| s == name)
    }

    fn single_char_letters(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Parses a word. Whitespace separates letters when present; otherwise
    /// each character is a letter.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        let tokens: Vec<String> = if s.contains(char::is_whitespace) || !self.single_char_letters() {
            s.split_whitespace().map(str::to_string).collect()
        } else {
            s.chars().map(|c| c.to_string()).collect()
        };
        tokens
            .iter()
            .map(|t| self.letter_index(t).ok_or_else(|| Error::UnknownLetter(t.clone())))
            .collect()
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        let sep = if self.single_char_letters() { "" } else { " " };
        w.iter()
            .map(|&a| self.letters[a].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn parse_states(&self, s: &str) -> Result<StateSet> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| self.state_index(t).ok_or_else(|| Error::UnknownState(t.to_string())))
            .collect()
    }

    pub fn render_set(&self, s: StateSet) -> String {
        let names: Vec<&str> = s.iter().map(|q| self.states[q].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn check_word(&self, w: &[usize]) -> Result<()> {
        match w.iter().find(|&&a| a >= self.num_letters()) {
            Some(a) => Err(Error::UnknownLetter(format!("#{a}"))),
            None => Ok(()),
        }
    }
}

pub fn validate_automaton(a: &Automaton) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = a.states.len();
    if n == 0 {
        out.push(Violation::NoStates);
    }
    if n > MAX_STATES {
        out.push(Violation::TooManyStates(n));
        return out;
    }
    if a.letters.is_empty() {
        out.push(Violation::NoLetters);
    }
    let mut seen = HashSet::new();
    for s in &a.states {
        if !seen.insert(s) {
            out.push(Violation::DuplicateState(s.clone()));
        }
    }
    let mut seen = HashSet::new();
    for l in &a.letters {
        if !seen.insert(l) {
            out.push(Violation::DuplicateLetter(l.clone()));
        }
    }
    for (li, letter) in a.letters.iter().enumerate() {
        let Some(m) = a.matrices.get(li) else {
            out.push(Violation::MatrixShape { letter: letter.clone() });
            continue;
        };
        if m.dim() != n || (0..n).any(|i| m.row(i).len() != n) {
            out.push(Violation::MatrixShape { letter: letter.clone() });
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j).is_negative() {
                    out.push(Violation::NegativeEntry {
                        state: a.states[i].clone(),
                        letter: letter.clone(),
                        target: a.states[j].clone(),
                    });
                }
            }
            let sum = m.row_sum(i);
            if !sum.is_one() {
                out.push(Violation::RowSum {
                    state: a.states[i].clone(),
                    letter: letter.clone(),
                    sum,
                });
            }
        }
    }
    if a.matrices.len() > a.letters.len() {
        out.push(Violation::MatrixShape { letter: "?".into() });
    }
    if a.initial.weights.len() != n {
        out.push(Violation::InitialShape);
    } else {
        for (q, w) in a.initial.weights.iter().enumerate() {
            if w.is_negative() {
                out.push(Violation::InitialNegative { state: a.states[q].clone() });
            }
        }
        let sum = a.initial.total();
        if !sum.is_one() {
            out.push(Violation::InitialSum { sum });
        }
    }
    match &a.acceptance {
        Some(Acceptance::Parity(p)) => {
            for q in n..p.len() {
                out.push(Violation::AcceptanceUnknownState { index: q });
            }
            for q in p.len()..n {
                out.push(Violation::MissingPriority { state: a.states[q].clone() });
            }
        }
        Some(
            Acceptance::Safety(f)
            | Acceptance::Reachability(f)
            | Acceptance::Buchi(f)
            | Acceptance::CoBuchi(f),
        ) => {
            for q in f.difference(StateSet::full(n)) {
                out.push(Violation::AcceptanceUnknownState { index: q });
            }
        }
        None => {}
    }
    out
}
