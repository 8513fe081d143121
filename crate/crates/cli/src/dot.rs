//! Graphviz output for categories, posets and categories of elements.

use std::fmt::Write as _;

use kancalc::poset::Poset;
use kancalc::FinCat;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Objects as nodes and non-identity morphisms as labelled edges, sorted
/// by name.
pub fn category(name: &str, c: &FinCat) -> String {
    let mut s = format!("digraph {} {{\n", quote(name));
    let mut objects: Vec<&str> = c.objects().iter().map(String::as_str).collect();
    objects.sort();
    for o in objects {
        let _ = writeln!(s, "  {};", quote(o));
    }
    let mut edges: Vec<(&str, &str, &str)> = c
        .non_identity_morphisms()
        .map(|m| (c.object_name(c.src(m)), c.object_name(c.tgt(m)), c.morphism_name(m)))
        .collect();
    edges.sort();
    for (a, b, m) in edges {
        let _ = writeln!(s, "  {} -> {} [label={}];", quote(a), quote(b), quote(m));
    }
    s.push_str("}\n");
    s
}

/// The Hasse diagram, edges pointing upwards in the order.
pub fn poset(name: &str, p: &Poset) -> String {
    let mut s = format!("digraph {} {{\n  rankdir=BT;\n", quote(name));
    let mut elements: Vec<&str> = p.elements().iter().map(String::as_str).collect();
    elements.sort();
    for e in elements {
        let _ = writeln!(s, "  {};", quote(e));
    }
    let mut covers: Vec<(&str, &str)> = p.covers().iter().map(|&(a, b)| (p.name(a), p.name(b))).collect();
    covers.sort();
    for (a, b) in covers {
        let _ = writeln!(s, "  {} -> {};", quote(a), quote(b));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projector_graph() {
        let p = FinCat::monoid("x", &["id_x", "p"], |a, b| a.max(b));
        assert_eq!(category("P", &p), "digraph \"P\" {\n  \"x\";\n  \"x\" -> \"x\" [label=\"p\"];\n}\n");
    }

    #[test]
    fn hasse_diagram_skips_transitive_edges() {
        let dot = poset("c", &Poset::chain(2));
        assert!(dot.contains("\"0\" -> \"1\";"));
        assert!(dot.contains("\"1\" -> \"2\";"));
        assert!(!dot.contains("\"0\" -> \"2\""));
    }
}
