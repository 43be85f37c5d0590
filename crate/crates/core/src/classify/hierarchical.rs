use crate::automaton::Automaton;
use crate::graph;
use crate::stateset::Relation;
use crate::verdict::{Verdict, Witness};

fn union_relation(a: &Automaton) -> Relation {
    (0..a.num_letters()).fold(Relation::empty(a.num_states()), |r, l| r.union(a.letter_relation(l)))
}

/// Whether `rk` is a valid rank function: ranks never decrease along a
/// transition and each `(q, a)` has at most one successor of equal rank.
pub fn check_rank(a: &Automaton, rk: &[u32]) -> bool {
    rk.len() == a.num_states()
        && (0..a.num_states()).all(|q| {
            (0..a.num_letters()).all(|l| {
                let post = a.post(q, l);
                post.iter().all(|r| rk[r] >= rk[q]) && post.iter().filter(|&r| rk[r] == rk[q]).count() <= 1
            })
        })
}

/// Hierarchical check through strongly connected components. On success the
/// witness ranks each component by its depth in the component DAG.
pub fn is_hierarchical(a: &Automaton) -> Verdict {
    let n = a.num_states();
    let rel = union_relation(a);
    let comps = graph::sccs(&rel, a.all_states());
    let mut comp_of = vec![0; n];
    for (i, c) in comps.iter().enumerate() {
        for q in *c {
            comp_of[q] = i;
        }
    }
    for q in 0..n {
        for l in 0..a.num_letters() {
            if a.post(q, l).intersection(comps[comp_of[q]]).len() > 1 {
                return Verdict::no(format!(
                    "state {} has two successors on {} inside its component",
                    a.states()[q],
                    a.letters()[l]
                ));
            }
        }
    }
    // Longest-path depth, relaxed until stable; the component DAG is acyclic.
    let mut depth = vec![0u32; comps.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for (q, r) in rel.pairs() {
            let (cq, cr) = (comp_of[q], comp_of[r]);
            if cq != cr && depth[cr] < depth[cq] + 1 {
                depth[cr] = depth[cq] + 1;
                changed = true;
            }
        }
    }
    let rk: Vec<u32> = (0..n).map(|q| depth[comp_of[q]]).collect();
    if !check_rank(a, &rk) {
        return Verdict::no("rank construction failed");
    }
    Verdict::yes(Witness::Rank(rk), "rank by component depth")
}
