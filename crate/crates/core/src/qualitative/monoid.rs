use std::collections::HashMap;
use std::hash::Hash;

use crate::automaton::Word;
use crate::error::{Error, Result};

/// Elements that compose associatively.
pub trait Element: Clone + Eq + Hash {
    fn compose(&self, other: &Self) -> Self;
}

impl Element for super::profile::PriorityProfile {
    fn compose(&self, other: &Self) -> Self {
        super::profile::PriorityProfile::compose(self, other)
    }
}

impl Element for super::profile::SafeProfile {
    fn compose(&self, other: &Self) -> Self {
        super::profile::SafeProfile::compose(self, other)
    }
}

/// Closure of per-letter generators under composition. Each element keeps
/// the first word found for it by breadth-first search, which is a shortest
/// one with ties broken by alphabet order.
#[derive(Clone, Debug)]
pub struct ProfileMonoid<T> {
    elements: Vec<T>,
    words: Vec<Word>,
    index: HashMap<T, usize>,
}

impl<T: Element> ProfileMonoid<T> {
    pub fn build(generators: Vec<T>, budget: usize) -> Result<ProfileMonoid<T>> {
        let mut m = ProfileMonoid {
            elements: Vec::new(),
            words: Vec::new(),
            index: HashMap::new(),
        };
        for (l, g) in generators.iter().enumerate() {
            m.insert(g.clone(), vec![l], budget)?;
        }
        let mut i = 0;
        while i < m.elements.len() {
            for (l, g) in generators.iter().enumerate() {
                let next = m.elements[i].compose(g);
                if !m.index.contains_key(&next) {
                    let mut w = m.words[i].clone();
                    w.push(l);
                    m.insert(next, w, budget)?;
                }
            }
            i += 1;
        }
        Ok(m)
    }

    fn insert(&mut self, e: T, w: Word, budget: usize) -> Result<()> {
        if self.index.contains_key(&e) {
            return Ok(());
        }
        if self.elements.len() >= budget {
            return Err(Error::Budget {
                what: "monoid",
                limit: budget,
            });
        }
        self.index.insert(e.clone(), self.elements.len());
        self.elements.push(e);
        self.words.push(w);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn position(&self, e: &T) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Word)> {
        self.elements.iter().zip(&self.words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_automaton;
    use crate::qualitative::profile::PriorityProfile;

    fn monoid(text: &str, p: &[u32]) -> ProfileMonoid<PriorityProfile> {
        let a = parse_automaton(text).unwrap();
        let gens = (0..a.num_letters())
            .map(|l| PriorityProfile::letter(&a, p, l))
            .collect();
        ProfileMonoid::build(gens, 1000).unwrap()
    }

    #[test]
    fn trivial_monoid() {
        let m = monoid("states: q\nalphabet: a\ninit: q\ntrans: q a q 1\n", &[0]);
        assert_eq!(m.len(), 1);
        assert_eq!(m.word(0), &vec![0]);
    }

    #[test]
    fn commuting_permutations() {
        // a swaps, b is the identity
        let m = monoid(
            "states: p q\nalphabet: a b\ninit: p\n\
             trans: p a q 1\ntrans: q a p 1\ntrans: p b p 1\ntrans: q b q 1\n",
            &[0, 0],
        );
        assert!(m.len() <= 4);
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let a = parse_automaton(
            "states: p q\nalphabet: a b\ninit: p\n\
             trans: p a q 1\ntrans: q a p 1\ntrans: p b p 1\ntrans: q b q 1\n",
        )
        .unwrap();
        let gens = (0..2).map(|l| PriorityProfile::letter(&a, &[0, 1], l)).collect();
        assert!(matches!(
            ProfileMonoid::build(gens, 1),
            Err(Error::Budget { what: "monoid", .. })
        ));
    }
}
