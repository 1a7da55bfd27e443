use std::fmt::Write;

use crate::quiver::FiniteQuiver;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph, one node per vertex and one arc per edge labelled
/// `id:weight`. An empty quiver gives an empty body.
pub fn to_dot(q: &FiniteQuiver) -> String {
    let mut out = String::from("digraph quiver {\n");
    for v in q.vertices() {
        writeln!(out, "  {};", quote(v)).expect("write to String");
    }
    for e in q.edges() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(q.vertex_id(e.src())),
            quote(q.vertex_id(e.rng())),
            quote(&format!("{}:{}", e.id(), e.weight()))
        )
        .expect("write to String");
    }
    out.push_str("}\n");
    out
}
