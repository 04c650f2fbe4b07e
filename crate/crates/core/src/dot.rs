//! Graphviz export. Nodes are points; hyperedges are record boxes with one
//! numbered port per source (left) and target (right).

use std::fmt::Write;

use crate::cospan::InterfacedCospan;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if "{}|<>\"\\ ".contains(c) {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

pub fn to_dot(c: &InterfacedCospan, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=point, width=0.08];\n");
    for (id, colour) in c.graph.nodes() {
        let _ = writeln!(out, "  n{} [xlabel=\"{}\"];", id.0, colour.replace('"', "'"));
    }
    for (k, n) in c.inputs.iter().enumerate() {
        let _ = writeln!(out, "  in{k} [shape=plaintext, label=\"{k}\"];");
        let _ = writeln!(out, "  in{k} -> n{} [style=dashed, arrowhead=none];", n.0);
    }
    for (k, n) in c.outputs.iter().enumerate() {
        let _ = writeln!(out, "  out{k} [shape=plaintext, label=\"{k}\"];");
        let _ = writeln!(out, "  n{} -> out{k} [style=dashed, arrowhead=none];", n.0);
    }
    for (id, e) in c.graph.edges() {
        let ports = |prefix: &str, n: usize| (0..n).map(|k| format!("<{prefix}{k}>")).collect::<Vec<_>>().join("|");
        let _ = writeln!(
            out,
            "  e{} [shape=record, label=\"{{{{{}}}|{}|{{{}}}}}\"];",
            id.0,
            ports("s", e.sources.len()),
            escape(&e.label),
            ports("t", e.targets.len())
        );
        for (k, n) in e.sources.iter().enumerate() {
            let _ = writeln!(out, "  n{} -> e{}:s{k};", n.0, id.0);
        }
        for (k, n) in e.targets.iter().enumerate() {
            let _ = writeln!(out, "  e{}:t{k} -> n{};", id.0, n.0);
        }
    }
    out.push_str("}\n");
    out
}
