use crate::automaton::Automaton;
use crate::stateset::{Relation, StateSet};

const INF: u8 = u8::MAX;

/// For each pair `(q, q')`, the smallest priority on a positive-probability
/// path from `q` to `q'` reading a fixed word, endpoints included.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PriorityProfile {
    n: usize,
    entries: Vec<u8>,
}

impl PriorityProfile {
    pub fn letter(a: &Automaton, p: &[u32], letter: usize) -> PriorityProfile {
        let n = a.num_states();
        let mut entries = vec![INF; n * n];
        for (q, r) in a.letter_relation(letter).pairs() {
            entries[q * n + r] = p[q].min(p[r]) as u8;
        }
        PriorityProfile { n, entries }
    }

    /// Profile of a word; the empty word gives `p(q)` on the diagonal.
    pub fn of_word(a: &Automaton, p: &[u32], w: &[usize]) -> PriorityProfile {
        let n = a.num_states();
        let mut start = PriorityProfile {
            n,
            entries: vec![INF; n * n],
        };
        for q in 0..n {
            start.entries[q * n + q] = p[q] as u8;
        }
        w.iter()
            .fold(start, |acc, &l| acc.compose(&PriorityProfile::letter(a, p, l)))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, q: usize, r: usize) -> Option<u32> {
        let v = self.entries[q * self.n + r];
        (v != INF).then_some(v as u32)
    }

    pub fn compose(&self, other: &PriorityProfile) -> PriorityProfile {
        let n = self.n;
        let mut entries = vec![INF; n * n];
        for q in 0..n {
            for m in 0..n {
                let x = self.entries[q * n + m];
                if x == INF {
                    continue;
                }
                for r in 0..n {
                    let y = other.entries[m * n + r];
                    if y != INF {
                        let v = x.min(y);
                        let e = &mut entries[q * n + r];
                        if v < *e {
                            *e = v;
                        }
                    }
                }
            }
        }
        PriorityProfile { n, entries }
    }

    /// Pairs with a finite entry.
    pub fn relation(&self) -> Relation {
        let n = self.n;
        Relation::from_pairs(
            n,
            (0..n * n)
                .filter(|&i| self.entries[i] != INF)
                .map(|i| (i / n, i % n)),
        )
    }

    /// Smallest finite entry between two members of `c`.
    pub fn class_minimum(&self, c: StateSet) -> Option<u32> {
        c.iter()
            .flat_map(|q| c.iter().filter_map(move |r| self.get(q, r)))
            .min()
    }
}

/// Safety abstraction of a word with respect to a safe set `F`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SafeProfile {
    /// `(q, q')` when some positive path from `q` to `q'` stays in `F`.
    pub relation: Relation,
    /// States whose whole positive-probability tree stays in `F`.
    pub full: StateSet,
}

impl SafeProfile {
    pub fn letter(a: &Automaton, f: StateSet, letter: usize) -> SafeProfile {
        let rel = a.letter_relation(letter);
        let relation = rel.restrict_rows(f).restrict_cols(f);
        let full = f.iter().filter(|&q| rel.row(q).is_subset(f)).collect();
        SafeProfile { relation, full }
    }

    pub fn compose(&self, other: &SafeProfile) -> SafeProfile {
        let full = self
            .full
            .iter()
            .filter(|&q| self.relation.row(q).is_subset(other.full))
            .collect();
        SafeProfile {
            relation: self.relation.compose(&other.relation),
            full,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_automaton;

    const EX1: &str = "states: s t u\nalphabet: a b\ninit: s=1\n\
        trans: s a s 1/2\ntrans: s a t 1/2\ntrans: s b s 1\n\
        trans: t a s 1/2\ntrans: t a u 1/2\ntrans: t b u 1\n\
        trans: u a t 1\ntrans: u b t 1\n";

    #[test]
    fn ex1_letter_a() {
        let a = parse_automaton(EX1).unwrap();
        let p = PriorityProfile::letter(&a, &[1, 1, 0], 0);
        let finite: Vec<_> = (0..3)
            .flat_map(|q| (0..3).map(move |r| (q, r)))
            .filter_map(|(q, r)| p.get(q, r).map(|v| (q, r, v)))
            .collect();
        // u -a-> t is a transition of EX1 as well
        assert_eq!(finite, vec![(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 2, 0), (2, 1, 0)]);
    }

    #[test]
    fn zero_priorities_give_relation() {
        let a = parse_automaton(EX1).unwrap();
        let p = PriorityProfile::letter(&a, &[0, 0, 0], 1);
        assert_eq!(p.relation(), *a.letter_relation(1));
        assert!(p.relation().pairs().all(|(q, r)| p.get(q, r) == Some(0)));
    }

    #[test]
    fn word_ab_has_even_loop_at_u() {
        let a = parse_automaton(EX1).unwrap();
        let p = PriorityProfile::of_word(&a, &[1, 1, 0], &[0, 1]);
        assert_eq!(p.get(2, 2), Some(0));
        assert_eq!(p.get(0, 0), Some(1));
        assert_eq!(p.get(0, 2), Some(0));
    }

    #[test]
    fn safe_profile_composition() {
        let a = parse_automaton(EX1).unwrap();
        let f = StateSet::from_indices([0, 1]);
        let sa = SafeProfile::letter(&a, f, 0);
        assert_eq!(sa.full, StateSet::singleton(0));
        let sb = SafeProfile::letter(&a, f, 1);
        let ab = sa.compose(&sb);
        // from s: a keeps to {s,t}; then b from t leaves F
        assert!(ab.full.is_empty());
        assert!(ab.relation.contains(0, 0));
    }
}
