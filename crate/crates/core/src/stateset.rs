use std::fmt;

/// Set of states as a bitset over dense state indices (at most 64).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StateSet(pub u64);

pub const MAX_STATES: usize = 64;

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn full(n: usize) -> StateSet {
        if n >= 64 {
            StateSet(u64::MAX)
        } else {
            StateSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(q: usize) -> StateSet {
        StateSet(1u64 << q)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> StateSet {
        it.into_iter().fold(StateSet::EMPTY, |s, q| s.with(q))
    }

    pub fn contains(self, q: usize) -> bool {
        q < 64 && self.0 >> q & 1 == 1
    }

    pub fn with(self, q: usize) -> StateSet {
        StateSet(self.0 | 1u64 << q)
    }

    pub fn without(self, q: usize) -> StateSet {
        StateSet(self.0 & !(1u64 << q))
    }

    pub fn insert(&mut self, q: usize) {
        self.0 |= 1u64 << q;
    }

    pub fn union(self, o: StateSet) -> StateSet {
        StateSet(self.0 | o.0)
    }

    pub fn intersection(self, o: StateSet) -> StateSet {
        StateSet(self.0 & o.0)
    }

    pub fn difference(self, o: StateSet) -> StateSet {
        StateSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: StateSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_proper_subset(self, o: StateSet) -> bool {
        self.is_subset(o) && self != o
    }

    pub fn intersects(self, o: StateSet) -> bool {
        self.0 & o.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All nonempty subsets of `{0..n}` in increasing bit order.
    pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = StateSet> {
        (1..=StateSet::full(n).0).map(StateSet)
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let q = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(q)
    }
}

impl IntoIterator for StateSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        StateSet::from_indices(it)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Bipartite graph on `Q`, stored as one successor set per source state.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    rows: Vec<StateSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation {
            rows: vec![StateSet::EMPTY; n],
        }
    }

    pub fn identity(n: usize, on: StateSet) -> Relation {
        let mut r = Relation::empty(n);
        for q in on {
            r.rows[q] = StateSet::singleton(q);
        }
        r
    }

    pub fn from_rows(rows: Vec<StateSet>) -> Relation {
        Relation { rows }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Relation {
        let mut r = Relation::empty(n);
        for (a, b) in pairs {
            r.rows[a].insert(b);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, q: usize) -> StateSet {
        self.rows[q]
    }

    pub fn rows(&self) -> &[StateSet] {
        &self.rows
    }

    pub fn set_row(&mut self, q: usize, s: StateSet) {
        self.rows[q] = s;
    }

    pub fn add(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, r)| r.iter().map(move |b| (a, b)))
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Sources with at least one successor.
    pub fn left(&self) -> StateSet {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(q, _)| q)
            .collect()
    }

    /// Targets with at least one predecessor.
    pub fn right(&self) -> StateSet {
        self.rows.iter().fold(StateSet::EMPTY, |acc, r| acc.union(*r))
    }

    pub fn image(&self, s: StateSet) -> StateSet {
        s.iter()
            .fold(StateSet::EMPTY, |acc, q| acc.union(self.rows[q]))
    }

    pub fn compose(&self, other: &Relation) -> Relation {
        Relation {
            rows: self.rows.iter().map(|r| other.image(*r)).collect(),
        }
    }

    pub fn restrict_rows(&self, s: StateSet) -> Relation {
        Relation {
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(q, r)| if s.contains(q) { *r } else { StateSet::EMPTY })
                .collect(),
        }
    }

    pub fn restrict_cols(&self, s: StateSet) -> Relation {
        Relation {
            rows: self.rows.iter().map(|r| r.intersection(s)).collect(),
        }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.union(*b))
                .collect(),
        }
    }

    pub fn is_subrelation(&self, other: &Relation) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_subset(*b))
    }

    /// States reachable from `s` in zero or more steps.
    pub fn reach(&self, s: StateSet) -> StateSet {
        let mut seen = s;
        let mut frontier = s;
        while !frontier.is_empty() {
            let next = self.image(frontier).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.pairs()).finish()
    }
}
