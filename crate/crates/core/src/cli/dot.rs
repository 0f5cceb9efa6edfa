use std::fmt::Write as _;

use crate::graph::Graph;

fn quote(name: &str) -> String {
    let mut out = String::with_capacity(name.len() + 2);
    out.push('"');
    for c in name.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Undirected DOT text with nodes and edges in lexicographic name order.
pub fn export_dot(g: &Graph) -> String {
    let mut names: Vec<&str> = g.names().iter().map(String::as_str).collect();
    names.sort_unstable();
    let mut out = String::from("graph G {\n");
    for name in names {
        writeln!(out, "  {};", quote(name)).unwrap();
    }
    for (a, b) in g.edge_names() {
        writeln!(out, "  {} -- {};", quote(&a), quote(&b)).unwrap();
    }
    out.push_str("}\n");
    out
}
