//! Seeded generators for random automata, DFAs, words and hierarchical
//! automata. Transition weights are small integers, so denominators stay
//! small.

use rand::seq::index::sample;
use rand::Rng;

use crate::automaton::{Acceptance, Automaton, LassoWord, Word};
use crate::dfa::Dfa;
use crate::prob::{self, Distribution, Matrix, Prob};
use crate::stateset::StateSet;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn letters(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Weights `w_i / Σw` for integer `w_i` in `1..=3`.
fn split<R: Rng>(rng: &mut R, k: usize) -> Vec<Prob> {
    let w: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
    let total: i64 = w.iter().sum();
    w.into_iter().map(|x| prob::ratio(x, total)).collect()
}

fn fill_row<R: Rng>(rng: &mut R, m: &mut Matrix, q: usize, targets: &[usize]) {
    for (&t, p) in targets.iter().zip(split(rng, targets.len())) {
        m.set(q, t, p);
    }
}

fn random_targets<R: Rng>(rng: &mut R, n: usize, max_succ: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=max_succ.min(n));
    let mut t = sample(rng, n, k).into_vec();
    t.sort_unstable();
    t
}

fn random_initial<R: Rng>(rng: &mut R, n: usize) -> Distribution {
    if n == 1 || rng.gen_bool(0.5) {
        return Distribution::dirac(n, 0);
    }
    let mut t = sample(rng, n, 2).into_vec();
    t.sort_unstable();
    let mut weights = vec![prob::zero(); n];
    for (&q, p) in t.iter().zip(split(rng, 2)) {
        weights[q] = p;
    }
    Distribution { weights }
}

/// Random priorities in `0..=max`.
pub fn random_parity<R: Rng>(rng: &mut R, n: usize, max: u32) -> Acceptance {
    Acceptance::Parity((0..n).map(|_| rng.gen_range(0..=max)).collect())
}

/// Random nonempty subset of `n < 64` states.
pub fn random_set<R: Rng>(rng: &mut R, n: usize) -> StateSet {
    StateSet(rng.gen_range(1..(1u64 << n)))
}

/// One of the five acceptance kinds, chosen uniformly.
pub fn random_acceptance<R: Rng>(rng: &mut R, n: usize, max_priority: u32) -> Acceptance {
    let f = random_set(rng, n);
    match rng.gen_range(0..5) {
        0 => Acceptance::Safety(f),
        1 => Acceptance::Reachability(f),
        2 => Acceptance::Buchi(f),
        3 => Acceptance::CoBuchi(f),
        _ => random_parity(rng, n, max_priority),
    }
}

/// Random automaton with `n` states, `k` letters and at most `max_succ`
/// successors per state and letter.
pub fn random_automaton<R: Rng>(rng: &mut R, n: usize, k: usize, max_succ: usize) -> Automaton {
    let matrices = (0..k)
        .map(|_| {
            let mut m = Matrix::zeros(n);
            for q in 0..n {
                let t = random_targets(rng, n, max_succ);
                fill_row(rng, &mut m, q, &t);
            }
            m
        })
        .collect();
    let init = random_initial(rng, n);
    Automaton::from_parts(names("q", n), letters(k), matrices, init, None)
}

pub fn random_deterministic<R: Rng>(rng: &mut R, n: usize, k: usize) -> Automaton {
    random_automaton(rng, n, k, 1).with_initial(Distribution::dirac(n, 0))
}

/// Random hierarchical automaton: states get nondecreasing ranks and each
/// transition has at most one successor of equal rank.
pub fn random_hpa<R: Rng>(rng: &mut R, n: usize, k: usize) -> Automaton {
    let mut rank = vec![0usize; n];
    for q in 1..n {
        rank[q] = rank[q - 1] + usize::from(rng.gen_bool(0.5));
    }
    let matrices = (0..k)
        .map(|_| {
            let mut m = Matrix::zeros(n);
            for q in 0..n {
                let same: Vec<usize> = (0..n).filter(|&r| rank[r] == rank[q]).collect();
                let higher: Vec<usize> = (0..n).filter(|&r| rank[r] > rank[q]).collect();
                let mut t = Vec::new();
                if higher.is_empty() || rng.gen_bool(0.6) {
                    t.push(same[rng.gen_range(0..same.len())]);
                }
                if !higher.is_empty() {
                    let extra = rng.gen_range(usize::from(t.is_empty())..=higher.len().min(2));
                    t.extend(sample(rng, higher.len(), extra).into_iter().map(|i| higher[i]));
                }
                t.sort_unstable();
                fill_row(rng, &mut m, q, &t);
            }
            m
        })
        .collect();
    Automaton::from_parts(names("q", n), letters(k), matrices, Distribution::dirac(n, 0), None)
}

pub fn random_dfa<R: Rng>(rng: &mut R, n: usize, k: usize) -> Dfa {
    let delta = (0..n).map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect()).collect();
    let accepting = StateSet((0..n).filter(|_| rng.gen_bool(0.4)).fold(0, |s, q| s | 1 << q));
    Dfa::new(names("d", n), letters(k), 0, accepting, delta).expect("well-formed random DFA")
}

pub fn random_word<R: Rng>(rng: &mut R, k: usize, len: usize) -> Word {
    (0..len).map(|_| rng.gen_range(0..k)).collect()
}

pub fn random_lasso<R: Rng>(rng: &mut R, k: usize, max_prefix: usize, max_period: usize) -> LassoWord {
    let p = rng.gen_range(0..=max_prefix);
    let r = rng.gen_range(1..=max_period);
    LassoWord::new(random_word(rng, k, p), random_word(rng, k, r)).expect("nonempty period")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::is_hierarchical;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_automata_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            assert!(random_automaton(&mut rng, n, 2, 3).validate().is_empty());
            assert!(random_deterministic(&mut rng, n, 2).is_deterministic());
            let h = random_hpa(&mut rng, n, 2);
            assert!(h.validate().is_empty());
            assert!(is_hierarchical(&h).is_yes());
        }
    }

    #[test]
    fn seeded_generation_repeats() {
        let a = random_automaton(&mut ChaCha8Rng::seed_from_u64(3), 3, 2, 2);
        let b = random_automaton(&mut ChaCha8Rng::seed_from_u64(3), 3, 2, 2);
        assert_eq!(a, b);
    }
}
