//! Closure of bordered relations under composition and the border rule.
//!
//! Each element is a relation `I` on `Q` with `left(I)` its source set,
//! obtained from some word and chain of borders. Elements are closed under
//! `x;y` (when `right(x) = left(y)`) and `x#j` (when `left(j) = right(x)` and
//! `right(j) ⊆ left(j)`), where `(x#j)(s) = Rec(j) ∩ reach_j(x(s))`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::automaton::{Automaton, Word};
use crate::error::{Error, Result};
use crate::graph;
use crate::stateset::{Relation, StateSet};

use super::linked::Border;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    Letter(usize),
    Compose(usize, usize),
    Sharp(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Element {
    pub label: Relation,
    pub left: StateSet,
    pub right: StateSet,
    /// Unbordered relation of the element's word, kept when raw tracking is on.
    pub raw: Option<Relation>,
    pub derivation: Derivation,
    pub word_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpWitness {
    pub word: Word,
    pub borders: Vec<Border>,
    pub dest: StateSet,
}

#[derive(Clone, Debug)]
pub struct ExtendedSupportGraph {
    n: usize,
    elements: Vec<Element>,
    index: HashMap<(Relation, Option<Relation>), usize>,
    by_left: HashMap<StateSet, Vec<usize>>,
    by_right: HashMap<StateSet, Vec<usize>>,
    instantiated: HashSet<StateSet>,
}

/// Builds the closure starting from `seeds`. New source sets are instantiated
/// lazily as right sets appear. With `raw` the unbordered word relation is
/// carried along and becomes part of the element key.
pub fn build_extended_support_graph(
    a: &Automaton,
    seeds: &[StateSet],
    raw: bool,
    budget: usize,
) -> Result<ExtendedSupportGraph> {
    let mut g = ExtendedSupportGraph {
        n: a.num_states(),
        elements: Vec::new(),
        index: HashMap::new(),
        by_left: HashMap::new(),
        by_right: HashMap::new(),
        instantiated: HashSet::new(),
    };
    let mut queue = VecDeque::new();
    for &s in seeds {
        g.instantiate(a, s, raw, budget, &mut queue)?;
    }
    while let Some(e) = queue.pop_front() {
        let (left, right) = (g.elements[e].left, g.elements[e].right);
        g.instantiate(a, right, raw, budget, &mut queue)?;

        let nexts = g.by_left.get(&right).cloned().unwrap_or_default();
        for &y in &nexts {
            g.combine(Derivation::Compose(e, y), budget, &mut queue)?;
            if g.elements[y].right.is_subset(right) {
                g.combine(Derivation::Sharp(e, y), budget, &mut queue)?;
            }
        }
        let prevs = g.by_right.get(&left).cloned().unwrap_or_default();
        for &x in &prevs {
            g.combine(Derivation::Compose(x, e), budget, &mut queue)?;
            if right.is_subset(left) {
                g.combine(Derivation::Sharp(x, e), budget, &mut queue)?;
            }
        }
    }
    Ok(g)
}

impl ExtendedSupportGraph {
    fn instantiate(
        &mut self,
        a: &Automaton,
        s: StateSet,
        raw: bool,
        budget: usize,
        queue: &mut VecDeque<usize>,
    ) -> Result<()> {
        if s.is_empty() || !self.instantiated.insert(s) {
            return Ok(());
        }
        for l in 0..a.num_letters() {
            let rel = a.letter_relation(l);
            let label = rel.restrict_rows(s);
            let raw = raw.then(|| rel.clone());
            self.insert(label, raw, Derivation::Letter(l), 1, budget, queue)?;
        }
        Ok(())
    }

    fn combine(&mut self, d: Derivation, budget: usize, queue: &mut VecDeque<usize>) -> Result<()> {
        let (x, y) = match d {
            Derivation::Compose(x, y) | Derivation::Sharp(x, y) => (&self.elements[x], &self.elements[y]),
            Derivation::Letter(_) => unreachable!(),
        };
        let label = match d {
            Derivation::Sharp(..) => sharp(&x.label, &y.label, y.left),
            _ => x.label.compose(&y.label),
        };
        let raw = match (&x.raw, &y.raw) {
            (Some(p), Some(q)) => Some(p.compose(q)),
            _ => None,
        };
        let len = x.word_len.saturating_add(y.word_len);
        self.insert(label, raw, d, len, budget, queue)
    }

    fn insert(
        &mut self,
        label: Relation,
        raw: Option<Relation>,
        derivation: Derivation,
        word_len: usize,
        budget: usize,
        queue: &mut VecDeque<usize>,
    ) -> Result<()> {
        let key = (label, raw);
        if self.index.contains_key(&key) {
            return Ok(());
        }
        if self.elements.len() >= budget {
            return Err(Error::Budget { what: "extended support graph", limit: budget });
        }
        let (label, raw) = key.clone();
        let id = self.elements.len();
        let (left, right) = (label.left(), label.right());
        self.elements.push(Element { label, left, right, raw, derivation, word_len });
        self.index.insert(key, id);
        self.by_left.entry(left).or_default().push(id);
        self.by_right.entry(right).or_default().push(id);
        queue.push_back(id);
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: usize) -> &Element {
        &self.elements[id]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn from_left(&self, s: StateSet) -> impl Iterator<Item = usize> + '_ {
        self.by_left.get(&s).into_iter().flatten().copied()
    }

    /// Distinct `(left, right)` pairs, each with its first element, in
    /// insertion order.
    pub fn edges(&self) -> Vec<(StateSet, StateSet, usize)> {
        let mut seen = HashSet::new();
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, e)| seen.insert((e.left, e.right)))
            .map(|(i, e)| (e.left, e.right, i))
            .collect()
    }

    /// Right sets of every element leaving `c`, plus `c` itself.
    pub fn reachable_from(&self, c: StateSet) -> Vec<StateSet> {
        let mut out = vec![c];
        let mut seen: HashSet<StateSet> = out.iter().copied().collect();
        for id in self.from_left(c) {
            let r = self.elements[id].right;
            if seen.insert(r) {
                out.push(r);
            }
        }
        out
    }

    pub fn word(&self, id: usize) -> Word {
        let mut w = Vec::with_capacity(self.elements[id].word_len);
        self.write_word(id, &mut w);
        w
    }

    fn write_word(&self, id: usize, w: &mut Word) {
        match self.elements[id].derivation {
            Derivation::Letter(l) => w.push(l),
            Derivation::Compose(x, y) | Derivation::Sharp(x, y) => {
                self.write_word(x, w);
                self.write_word(y, w);
            }
        }
    }

    /// Border chain matching [`word`](Self::word), inner borders first.
    pub fn borders(&self, id: usize) -> Vec<Border> {
        let mut out = Vec::new();
        self.write_borders(id, 0, &mut out);
        out
    }

    fn write_borders(&self, id: usize, offset: usize, out: &mut Vec<Border>) {
        match self.elements[id].derivation {
            Derivation::Letter(_) => {}
            Derivation::Compose(x, y) => {
                self.write_borders(x, offset, out);
                self.write_borders(y, offset + self.elements[x].word_len, out);
            }
            Derivation::Sharp(x, y) => {
                let lx = self.elements[x].word_len;
                self.write_borders(x, offset, out);
                self.write_borders(y, offset + lx, out);
                out.push(Border::new(offset + lx, offset + lx + self.elements[y].word_len));
            }
        }
    }

    pub fn witness(&self, id: usize) -> SharpWitness {
        SharpWitness {
            word: self.word(id),
            borders: self.borders(id),
            dest: self.elements[id].right,
        }
    }

    /// `x` with every sharp segment repeated `k` times.
    pub fn pumped_word(&self, id: usize, k: usize, cap: usize) -> Option<Word> {
        let mut w = Vec::new();
        self.write_pumped(id, k, cap, &mut w).then_some(w)
    }

    fn write_pumped(&self, id: usize, k: usize, cap: usize, w: &mut Word) -> bool {
        match self.elements[id].derivation {
            Derivation::Letter(l) => w.push(l),
            Derivation::Compose(x, y) => {
                if !self.write_pumped(x, k, cap, w) || !self.write_pumped(y, k, cap, w) {
                    return false;
                }
            }
            Derivation::Sharp(x, y) => {
                if !self.write_pumped(x, k, cap, w) {
                    return false;
                }
                let start = w.len();
                if !self.write_pumped(y, k, cap, w) {
                    return false;
                }
                let seg = w[start..].to_vec();
                if w.len() + seg.len().saturating_mul(k - 1) > cap {
                    return false;
                }
                for _ in 1..k {
                    w.extend_from_slice(&seg);
                }
            }
        }
        w.len() <= cap
    }
}

fn sharp(x: &Relation, j: &Relation, on: StateSet) -> Relation {
    let rec = graph::recurrent(j, on);
    Relation::from_rows(
        x.rows()
            .iter()
            .map(|&r| if r.is_empty() { r } else { rec.intersection(j.reach(r)) })
            .collect(),
    )
}

/// Whether `d` is #-reachable from `c`, with a replayable witness. The pair
/// `(c, c)` is witnessed by the empty word.
pub fn sharp_reachable(
    a: &Automaton,
    c: StateSet,
    d: StateSet,
    budget: usize,
) -> Result<Option<SharpWitness>> {
    if c == d {
        return Ok(Some(SharpWitness { word: Vec::new(), borders: Vec::new(), dest: d }));
    }
    let g = build_extended_support_graph(a, &[c], false, budget)?;
    Ok(g
        .from_left(c)
        .filter(|&id| g.element(id).right == d)
        .min_by_key(|&id| (g.element(id).word_len, id))
        .map(|id| g.witness(id)))
}
