//! Layered bipartite graphs induced by a word, and the action of borders.

use std::fmt;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph;
use crate::stateset::{Relation, StateSet};

/// A pair `(start, end)` of node indices. Node `0` is the origin and node
/// `k` the destination of layer `k`. Applying the border rewires layer
/// `start` so that it only enters the recurrent part of layers
/// `start+1..=end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Border {
    pub start: usize,
    pub end: usize,
}

impl Border {
    pub fn new(start: usize, end: usize) -> Border {
        Border { start, end }
    }

    pub fn shifted(self, by: usize) -> Border {
        Border::new(self.start + by, self.end + by)
    }
}

impl fmt::Display for Border {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkedGraph {
    org: StateSet,
    layers: Vec<Relation>,
}

pub fn linked_graph_of_word(a: &Automaton, org: StateSet, w: &[usize]) -> Result<LinkedGraph> {
    a.check_word(w)?;
    if org.is_empty() {
        return Err(Error::Precondition("linked graph origin is empty".into()));
    }
    if w.is_empty() {
        return Err(Error::Precondition("linked graph needs a nonempty word".into()));
    }
    let mut layers = Vec::with_capacity(w.len());
    let mut cur = org;
    for &l in w {
        let layer = a.letter_relation(l).restrict_rows(cur);
        cur = layer.right();
        layers.push(layer);
    }
    Ok(LinkedGraph { org, layers })
}

impl LinkedGraph {
    pub fn from_layers(org: StateSet, layers: Vec<Relation>) -> LinkedGraph {
        LinkedGraph { org, layers }
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn layers(&self) -> &[Relation] {
        &self.layers
    }

    pub fn layer(&self, k: usize) -> &Relation {
        &self.layers[k - 1]
    }

    pub fn org(&self) -> StateSet {
        self.org
    }

    pub fn dest(&self) -> StateSet {
        self.node(self.len())
    }

    pub fn node(&self, k: usize) -> StateSet {
        if k == 0 {
            self.org
        } else {
            self.layers[k - 1].right()
        }
    }

    /// Composition of every layer.
    pub fn compaction(&self) -> Relation {
        self.segment(1, self.len())
    }

    /// Composition of layers `from..=to`.
    pub fn segment(&self, from: usize, to: usize) -> Relation {
        let n = self.layers.first().map_or(0, Relation::size);
        let mut r = Relation::identity(n, self.node(from - 1));
        for k in from..=to {
            r = r.compose(&self.layers[k - 1]);
        }
        r
    }

    fn closed(&self) -> Result<()> {
        if !self.dest().is_subset(self.org) {
            return Err(Error::Precondition("destination not contained in origin".into()));
        }
        Ok(())
    }

    /// States in a bottom component of the compaction.
    pub fn rec(&self) -> Result<StateSet> {
        self.closed()?;
        Ok(graph::recurrent(&self.compaction(), self.org))
    }

    pub fn rec_from(&self, s: usize) -> Result<StateSet> {
        let rec = self.rec()?;
        Ok(rec.intersection(self.compaction().reach(StateSet::singleton(s))))
    }

    pub fn is_border(&self, b: Border) -> bool {
        b.start >= 1 && b.start < b.end && b.end <= self.len() && self.node(b.end).is_subset(self.node(b.start))
    }

    pub fn concat(&self, other: &LinkedGraph) -> Result<LinkedGraph> {
        if other.org != self.dest() {
            return Err(Error::Precondition("linked graphs do not meet".into()));
        }
        let mut layers = self.layers.clone();
        layers.extend(other.layers.iter().cloned());
        Ok(LinkedGraph { org: self.org, layers })
    }
}

pub fn border_action(lg: &LinkedGraph, b: Border) -> Result<LinkedGraph> {
    if !lg.is_border(b) {
        return Err(Error::Precondition(format!("{b} is not a border")));
    }
    let j = lg.segment(b.start + 1, b.end);
    let rec = graph::recurrent(&j, lg.node(b.start));
    let mut layers = lg.layers.clone();
    let old = &lg.layers[b.start - 1];
    let mut rewired = Relation::empty(old.size());
    for s in old.left() {
        rewired.set_row(s, rec.intersection(j.reach(old.row(s))));
    }
    layers[b.start - 1] = rewired;
    for k in b.start..layers.len() {
        let live = layers[k - 1].right();
        layers[k] = layers[k].restrict_rows(live);
    }
    Ok(LinkedGraph { org: lg.org, layers })
}

pub fn apply_borders(lg: &LinkedGraph, borders: &[Border]) -> Result<LinkedGraph> {
    borders.iter().try_fold(lg.clone(), |g, &b| border_action(&g, b))
}

/// Destination of the bordered linked graph of `w` from `org`. The empty
/// word leaves `org` unchanged.
pub fn replay(a: &Automaton, org: StateSet, w: &[usize], borders: &[Border]) -> Result<StateSet> {
    if w.is_empty() {
        if !borders.is_empty() {
            return Err(Error::Precondition("borders on the empty word".into()));
        }
        return Ok(org);
    }
    let lg = linked_graph_of_word(a, org, w)?;
    Ok(apply_borders(&lg, borders)?.dest())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_automaton;

    const EXLG: &str = "states: 1 2 3\nalphabet: a b\ninit: 1=1\n\
        trans: 1 a 1 1/2\ntrans: 1 a 3 1/2\ntrans: 1 b 2 1\n\
        trans: 2 a 2 1\ntrans: 2 b 2 1\n\
        trans: 3 a 3 1\ntrans: 3 b 1 1\n";

    const EX2: &str = "states: 1 2 3 4\nalphabet: a b\ninit: 1=1\n\
        trans: 1 a 1 1/2\ntrans: 1 a 3 1/2\ntrans: 1 b 2 1\n\
        trans: 2 a 2 1\ntrans: 2 b 2 1\n\
        trans: 3 a 3 1\ntrans: 3 b 1 1/2\ntrans: 3 b 4 1/2\n\
        trans: 4 a 4 1\ntrans: 4 b 4 1\n";

    fn rel(a: &Automaton, pairs: &[(&str, &str)]) -> Relation {
        Relation::from_pairs(
            a.num_states(),
            pairs
                .iter()
                .map(|(s, t)| (a.state_index(s).unwrap(), a.state_index(t).unwrap())),
        )
    }

    #[test]
    fn exlg_compaction_and_rec() {
        let a = parse_automaton(EXLG).unwrap();
        let w = a.parse_word("aba").unwrap();
        let lg = linked_graph_of_word(&a, a.all_states(), &w).unwrap();
        assert_eq!(lg.len(), 3);
        assert_eq!(lg.dest(), a.all_states());
        let comp = rel(&a, &[("1", "1"), ("1", "2"), ("1", "3"), ("2", "2"), ("3", "1"), ("3", "3")]);
        assert_eq!(lg.compaction(), comp);
        let two = a.parse_states("2").unwrap();
        assert_eq!(lg.rec().unwrap(), two);
        for s in 0..3 {
            assert_eq!(lg.rec_from(s).unwrap(), two);
        }
    }

    #[test]
    fn exlg_border() {
        let a = parse_automaton(EXLG).unwrap();
        let w = a.parse_word("aba").unwrap();
        let lg = linked_graph_of_word(&a, a.all_states(), &w).unwrap();
        let g = border_action(&lg, Border::new(1, 2)).unwrap();
        assert_eq!(g.layer(1), &rel(&a, &[("1", "2"), ("2", "2"), ("3", "2")]));
        assert_eq!(g.layer(2), &rel(&a, &[("2", "2")]));
        assert_eq!(g.layer(3), &rel(&a, &[("2", "2")]));
        assert!(!g.layer(1).contains(0, 0));
        assert!(border_action(&lg, Border::new(0, 2)).is_err());
        assert!(border_action(&lg, Border::new(2, 2)).is_err());
    }

    #[test]
    fn ex2_layers_and_chain() {
        let a = parse_automaton(EX2).unwrap();
        let one = a.parse_states("1").unwrap();
        let lg = linked_graph_of_word(&a, one, &a.parse_word("aa").unwrap()).unwrap();
        assert_eq!(lg.layer(1), &rel(&a, &[("1", "1"), ("1", "3")]));
        assert_eq!(lg.layer(2), &rel(&a, &[("1", "1"), ("1", "3"), ("3", "3")]));

        let w = a.parse_word("aaabaab").unwrap();
        let chain = [Border::new(1, 2), Border::new(5, 6), Border::new(4, 7)];
        assert_eq!(replay(&a, one, &w, &chain).unwrap(), a.parse_states("4").unwrap());
        assert_eq!(replay(&a, one, &w, &[]).unwrap(), a.parse_states("1 2 4").unwrap());
    }

    #[test]
    fn identity_segment_is_unchanged() {
        let a = parse_automaton("states: p q\nalphabet: a\ninit: p\ntrans: p a p 1\ntrans: q a q 1\n").unwrap();
        let lg = linked_graph_of_word(&a, a.all_states(), &[0, 0, 0]).unwrap();
        assert_eq!(border_action(&lg, Border::new(1, 3)).unwrap(), lg);
    }

    #[test]
    fn single_layer_and_concat() {
        let a = parse_automaton(EXLG).unwrap();
        let lg = linked_graph_of_word(&a, a.all_states(), &[1]).unwrap();
        assert_eq!(lg.compaction(), a.letter_relation(1).clone());
        let x = linked_graph_of_word(&a, a.all_states(), &[0]).unwrap();
        let y = linked_graph_of_word(&a, x.dest(), &[1, 0]).unwrap();
        let xy = x.concat(&y).unwrap();
        assert_eq!(xy.compaction(), x.compaction().compose(&y.compaction()));
    }

    #[test]
    fn ex1_rec_of_ab() {
        let a = parse_automaton(
            "states: s t u\nalphabet: a b\ninit: s=1\n\
             trans: s a s 1/2\ntrans: s a t 1/2\ntrans: s b s 1\n\
             trans: t a s 1/2\ntrans: t a u 1/2\ntrans: t b u 1\n\
             trans: u a t 1\ntrans: u b t 1\n",
        )
        .unwrap();
        let lg = linked_graph_of_word(&a, a.all_states(), &[0, 1]).unwrap();
        assert_eq!(lg.rec().unwrap(), a.parse_states("u").unwrap());
    }
}
