use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// Deterministic, total finite automaton on finite words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub states: Vec<String>,
    pub letters: Vec<String>,
    pub init: usize,
    pub accepting: StateSet,
    pub delta: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn new(
        states: Vec<String>,
        letters: Vec<String>,
        init: usize,
        accepting: StateSet,
        delta: Vec<Vec<usize>>,
    ) -> Result<Dfa> {
        let n = states.len();
        if n == 0 || n > 64 || init >= n {
            return Err(Error::Precondition("DFA needs between 1 and 64 states".into()));
        }
        if !accepting.is_subset(StateSet::full(n)) {
            return Err(Error::Precondition("accepting state out of range".into()));
        }
        let shape_ok = delta.len() == n
            && delta
                .iter()
                .all(|row| row.len() == letters.len() && row.iter().all(|&r| r < n));
        if !shape_ok {
            return Err(Error::Precondition("DFA transition table is not total".into()));
        }
        Ok(Dfa {
            states,
            letters,
            init,
            accepting,
            delta,
        })
    }

    pub fn run(&self, word: &[usize]) -> usize {
        word.iter().fold(self.init, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting.contains(self.run(word))
    }

    /// Shortest word (possibly empty) accepted by every DFA, by breadth-first
    /// search on the product. Letters are matched by name against the first
    /// DFA's alphabet.
    pub fn intersection_witness(dfas: &[Dfa]) -> Result<Option<Vec<usize>>> {
        let Some(first) = dfas.first() else {
            return Err(Error::Precondition("no DFAs given".into()));
        };
        let maps = letter_maps(dfas)?;
        let start: Vec<usize> = dfas.iter().map(|d| d.init).collect();
        let accepting =
            |t: &[usize]| t.iter().zip(dfas).all(|(&q, d)| d.accepting.contains(q));
        let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, usize)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            if accepting(&t) {
                let mut word = Vec::new();
                let mut cur = t;
                while let Some(Some((prev, a))) = parent.get(&cur).cloned() {
                    word.push(a);
                    cur = prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for a in 0..first.letters.len() {
                let next: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .map(|(i, &q)| dfas[i].delta[q][maps[i][a]])
                    .collect();
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((t.clone(), a)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }
}

/// For each DFA, the index of each of the first DFA's letters.
pub(crate) fn letter_maps(dfas: &[Dfa]) -> Result<Vec<Vec<usize>>> {
    let first = &dfas[0];
    dfas.iter()
        .map(|d| {
            if d.letters.len() != first.letters.len() {
                return Err(Error::AlphabetMismatch);
            }
            first
                .letters
                .iter()
                .map(|l| d.letters.iter().position(|x| x == l).ok_or(Error::AlphabetMismatch))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dfa(delta: Vec<Vec<usize>>, init: usize, acc: &[usize]) -> Dfa {
        let n = delta.len();
        Dfa::new(
            (1..=n).map(|i| i.to_string()).collect(),
            vec!["a".into(), "b".into()],
            init,
            acc.iter().copied().collect(),
            delta,
        )
        .unwrap()
    }

    #[test]
    fn intersection_finds_shortest_word() {
        // words ending in a
        let d1 = dfa(vec![vec![0, 1], vec![0, 1]], 1, &[0]);
        // a*b a+  : 0 -b-> 1 -a-> 2
        let d2 = dfa(vec![vec![0, 1], vec![2, 3], vec![2, 3], vec![3, 3]], 0, &[2]);
        let w = Dfa::intersection_witness(&[d1.clone(), d2.clone()]).unwrap().unwrap();
        assert_eq!(w, vec![1, 0]);
        assert!(d1.accepts(&w) && d2.accepts(&w));
    }

    #[test]
    fn empty_intersection() {
        let only_a = dfa(vec![vec![1, 2], vec![1, 2], vec![2, 2]], 0, &[1]);
        let only_b = dfa(vec![vec![2, 1], vec![2, 1], vec![2, 2]], 0, &[1]);
        assert_eq!(Dfa::intersection_witness(&[only_a, only_b]).unwrap(), None);
    }
}
