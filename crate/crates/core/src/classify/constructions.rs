use num_traits::{One, Signed};

use crate::automaton::{Acceptance, Automaton};
use crate::error::{Error, Result};
use crate::prob::{self, Distribution, Matrix, Prob};
use crate::stateset::StateSet;

/// For each letter of `a1`, the matching letter index of `a2`.
fn match_letters(a1: &Automaton, a2: &Automaton) -> Result<Vec<usize>> {
    if a1.num_letters() != a2.num_letters() {
        return Err(Error::AlphabetMismatch);
    }
    a1.letters()
        .iter()
        .map(|l| a2.letter_index(l).ok_or(Error::AlphabetMismatch))
        .collect()
}

/// Synchronous product. State `(s1,s2)` has index `s1·|Q2| + s2`; the result
/// carries no acceptance condition.
pub fn product(a1: &Automaton, a2: &Automaton) -> Result<Automaton> {
    let map = match_letters(a1, a2)?;
    let (n1, n2) = (a1.num_states(), a2.num_states());
    let n = n1 * n2;
    if n > 64 {
        return Err(Error::Precondition(format!("product has {n} states, more than 64")));
    }
    let states = a1
        .states()
        .iter()
        .flat_map(|s1| a2.states().iter().map(move |s2| format!("({s1},{s2})")))
        .collect();
    let matrices = (0..a1.num_letters())
        .map(|l| {
            let (m1, m2) = (a1.matrix(l), a2.matrix(map[l]));
            let mut m = Matrix::zeros(n);
            for (i1, j1) in a1.letter_relation(l).pairs() {
                for (i2, j2) in a2.letter_relation(map[l]).pairs() {
                    m.set(i1 * n2 + i2, j1 * n2 + j2, m1.get(i1, j1) * m2.get(i2, j2));
                }
            }
            m
        })
        .collect();
    let mut init = vec![prob::zero(); n];
    for i1 in a1.initial_support() {
        for i2 in a2.initial_support() {
            init[i1 * n2 + i2] = &a1.initial().weights[i1] * &a2.initial().weights[i2];
        }
    }
    Automaton::new(states, a1.letters().to_vec(), matrices, Distribution { weights: init }, None)
}

fn shift(s: StateSet, by: usize) -> StateSet {
    StateSet(s.0 << by)
}

fn combined_acceptance(a1: &Automaton, a2: &Automaton) -> Option<Acceptance> {
    let n1 = a1.num_states();
    match (a1.acceptance()?, a2.acceptance()?) {
        (Acceptance::Safety(f), Acceptance::Safety(g)) => Some(Acceptance::Safety(f.union(shift(*g, n1)))),
        (Acceptance::Reachability(f), Acceptance::Reachability(g)) => {
            Some(Acceptance::Reachability(f.union(shift(*g, n1))))
        }
        (Acceptance::Buchi(f), Acceptance::Buchi(g)) => Some(Acceptance::Buchi(f.union(shift(*g, n1)))),
        (Acceptance::CoBuchi(f), Acceptance::CoBuchi(g)) => Some(Acceptance::CoBuchi(f.union(shift(*g, n1)))),
        (x, y) => {
            let mut p = x.priorities(n1)?;
            p.extend(y.priorities(a2.num_states())?);
            Some(Acceptance::Parity(p))
        }
    }
}

/// Disjoint union with initial distribution `mix·α1 + (1-mix)·α2`. States are
/// renamed `1:s` and `2:s`. Acceptance conditions of the same kind are merged,
/// parity-like ones become a parity condition, anything else is dropped.
pub fn union_structure(a1: &Automaton, a2: &Automaton, mix: &Prob) -> Result<Automaton> {
    if !mix.is_positive() || *mix >= Prob::one() {
        return Err(Error::Precondition("mix must lie strictly between 0 and 1".into()));
    }
    let map = match_letters(a1, a2)?;
    let (n1, n2) = (a1.num_states(), a2.num_states());
    let n = n1 + n2;
    if n > 64 {
        return Err(Error::Precondition(format!("union has {n} states, more than 64")));
    }
    let states = a1
        .states()
        .iter()
        .map(|s| format!("1:{s}"))
        .chain(a2.states().iter().map(|s| format!("2:{s}")))
        .collect();
    let matrices = (0..a1.num_letters())
        .map(|l| {
            let mut m = Matrix::zeros(n);
            for (i, j) in a1.letter_relation(l).pairs() {
                m.set(i, j, a1.matrix(l).get(i, j).clone());
            }
            for (i, j) in a2.letter_relation(map[l]).pairs() {
                m.set(n1 + i, n1 + j, a2.matrix(map[l]).get(i, j).clone());
            }
            m
        })
        .collect();
    let rest = Prob::one() - mix;
    let weights = a1
        .initial()
        .weights
        .iter()
        .map(|w| w * mix)
        .chain(a2.initial().weights.iter().map(|w| w * &rest))
        .collect();
    Automaton::new(
        states,
        a1.letters().to_vec(),
        matrices,
        Distribution { weights },
        combined_acceptance(a1, a2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_automaton;

    fn two() -> Automaton {
        parse_automaton(
            "states: p q\nalphabet: a b\ninit: p\nacceptance: buchi q\n\
             trans: p a p 1/2\ntrans: p a q 1/2\ntrans: p b p 1\ntrans: q a q 1\ntrans: q b p 1\n",
        )
        .unwrap()
    }

    fn three() -> Automaton {
        parse_automaton(
            "states: x y z\nalphabet: b a\ninit: x=1/3 y=2/3\nacceptance: buchi z\n\
             trans: x a y 1\ntrans: x b z 1\ntrans: y a z 1/3\ntrans: y a x 2/3\ntrans: y b y 1\n\
             trans: z a z 1\ntrans: z b x 1\n",
        )
        .unwrap()
    }

    #[test]
    fn product_shape() {
        let p = product(&two(), &three()).unwrap();
        assert_eq!(p.num_states(), 6);
        assert_eq!(p.states()[1], "(p,y)");
        assert!(p.acceptance().is_none());
        assert!(p.validate().is_empty());
        assert_eq!(p.initial().weights[1], prob::ratio(2, 3));
        let a = a_b_only("a");
        assert!(a.is_deterministic());
        assert!(product(&a, &a_b_only("b")).unwrap().is_deterministic());
    }

    fn a_b_only(l: &str) -> Automaton {
        parse_automaton(&format!(
            "states: ok dead\nalphabet: a b\ninit: ok\n\
             trans: ok {l} ok 1\ntrans: ok {} dead 1\ntrans: dead a dead 1\ntrans: dead b dead 1\n",
            if l == "a" { "b" } else { "a" }
        ))
        .unwrap()
    }

    #[test]
    fn union_shape() {
        let u = union_structure(&two(), &three(), &prob::ratio(1, 4)).unwrap();
        assert_eq!(u.num_states(), 5);
        assert_eq!(u.states()[2], "2:x");
        assert_eq!(u.acceptance(), Some(&Acceptance::Buchi(StateSet::from_indices([1, 4]))));
        assert_eq!(u.initial().weights[0], prob::ratio(1, 4));
        assert_eq!(u.initial().weights[3], prob::ratio(1, 2));
        assert!(union_structure(&two(), &three(), &prob::one()).is_err());
        assert!(union_structure(&two(), &three(), &prob::zero()).is_err());
    }

    #[test]
    fn alphabet_mismatch() {
        let c = parse_automaton("states: p\nalphabet: c\ninit: p\ntrans: p c p 1\n").unwrap();
        assert_eq!(product(&two(), &c).unwrap_err(), Error::AlphabetMismatch);
        assert_eq!(union_structure(&two(), &c, &prob::ratio(1, 2)).unwrap_err(), Error::AlphabetMismatch);
    }
}
