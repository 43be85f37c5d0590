//! Graphviz output for support graphs. Output depends only on the input, so
//! repeated runs produce identical bytes.

use std::collections::HashMap;
use std::fmt::Write;

use crate::automaton::Automaton;
use crate::stateset::StateSet;
use crate::supportgraph::{Derivation, EdgeKind, ExtendedSupportGraph, SupportGraph};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn support_graph_dot(a: &Automaton, g: &SupportGraph) -> String {
    let mut out = String::from("digraph support {\n  node [shape=box];\n");
    for (i, s) in g.nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(&a.render_set(*s))).unwrap();
    }
    for &(i, j, kind) in &g.edges {
        match kind {
            EdgeKind::Letter(l) => writeln!(out, "  n{i} -> n{j} [label={}];", quote(&a.letters()[l])),
            EdgeKind::Sharp(l) => writeln!(
                out,
                "  n{i} -> n{j} [label={}, style=dashed];",
                quote(&format!("{}#", a.letters()[l]))
            ),
        }
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn uses_sharp(g: &ExtendedSupportGraph, id: usize) -> bool {
    match g.element(id).derivation {
        Derivation::Letter(_) => false,
        Derivation::Sharp(..) => true,
        Derivation::Compose(x, y) => uses_sharp(g, x) || uses_sharp(g, y),
    }
}

/// One edge per `(left, right)` pair, labelled with the word of its first
/// element. Border-derived edges are dashed.
pub fn extended_graph_dot(a: &Automaton, g: &ExtendedSupportGraph) -> String {
    let mut out = String::from("digraph extended {\n  node [shape=box];\n");
    let mut ids: HashMap<StateSet, usize> = HashMap::new();
    let mut order = Vec::new();
    let edges = g.edges();
    for &(l, r, _) in &edges {
        for s in [l, r] {
            if !ids.contains_key(&s) {
                ids.insert(s, order.len());
                order.push(s);
            }
        }
    }
    for (i, s) in order.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(&a.render_set(*s))).unwrap();
    }
    for (l, r, id) in edges {
        let word = a.render_word(&g.word(id));
        let style = if uses_sharp(g, id) { ", style=dashed" } else { "" };
        writeln!(out, "  n{} -> n{} [label={}{style}];", ids[&l], ids[&r], quote(&word)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_automaton;
    use crate::supportgraph::{build_extended_support_graph, build_support_graph};
    use crate::verdict::Budgets;

    const EX2: &str = "states: 1 2 3 4\nalphabet: a b\ninit: 1=1\n\
        trans: 1 a 1 1/2\ntrans: 1 a 3 1/2\ntrans: 1 b 2 1\n\
        trans: 2 a 2 1\ntrans: 2 b 2 1\n\
        trans: 3 a 3 1\ntrans: 3 b 1 1/2\ntrans: 3 b 4 1/2\n\
        trans: 4 a 4 1\ntrans: 4 b 4 1\n";

    #[test]
    fn support_dot_lacks_4() {
        let a = parse_automaton(EX2).unwrap();
        let g = build_support_graph(&a, &Budgets::default()).unwrap();
        let dot = support_graph_dot(&a, &g);
        assert!(dot.contains("label=\"{1,3}\""));
        assert!(!dot.contains("label=\"{4}\""));
        assert!(dot.contains("style=dashed"));
        assert_eq!(dot, support_graph_dot(&a, &build_support_graph(&a, &Budgets::default()).unwrap()));
    }

    #[test]
    fn extended_dot_has_4() {
        let a = parse_automaton(EX2).unwrap();
        let g = build_extended_support_graph(&a, &[a.initial_support()], false, 100_000).unwrap();
        let dot = extended_graph_dot(&a, &g);
        assert!(dot.contains("label=\"{4}\""));
        assert!(dot.starts_with("digraph extended {"));
    }
}
