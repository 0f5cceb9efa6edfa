//! Line-oriented graph text: `v NAME` declares a vertex, `e A B` an edge,
//! and lines starting with `#` are comments.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `v NAME` or `e NAME NAME`, found `{0}`")]
    Syntax(String),
    #[error("invalid vertex name `{0}` (use letters, digits and `_`)")]
    BadName(String),
    #[error("undeclared vertex {0}")]
    UndeclaredVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(String, String),
    #[error("self-loop on {0}")]
    SelfLoop(String),
    #[error("more than {MAX_VERTICES} vertices")]
    TooManyVertices,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_graph_file(text: &str) -> Result<Graph, ParseError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut declared = HashSet::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut seen_edges = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |kind| ParseError { line, kind };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens.as_slice() {
            ["v", name] => {
                if !valid_name(name) {
                    return Err(err(ParseErrorKind::BadName(name.to_string())));
                }
                if !declared.insert(name.to_string()) {
                    return Err(err(ParseErrorKind::DuplicateVertex(name.to_string())));
                }
                if vertices.len() == MAX_VERTICES {
                    return Err(err(ParseErrorKind::TooManyVertices));
                }
                vertices.push(name.to_string());
            }
            ["e", a, b] => {
                for name in [a, b] {
                    if !valid_name(name) {
                        return Err(err(ParseErrorKind::BadName(name.to_string())));
                    }
                    if !declared.contains(*name) {
                        return Err(err(ParseErrorKind::UndeclaredVertex(name.to_string())));
                    }
                }
                if a == b {
                    return Err(err(ParseErrorKind::SelfLoop(a.to_string())));
                }
                let key = if a < b { (*a, *b) } else { (*b, *a) };
                if !seen_edges.insert((key.0.to_string(), key.1.to_string())) {
                    return Err(err(ParseErrorKind::DuplicateEdge(a.to_string(), b.to_string())));
                }
                edges.push((a.to_string(), b.to_string()));
            }
            _ => return Err(err(ParseErrorKind::Syntax(trimmed.to_string()))),
        }
    }
    Ok(Graph::new(vertices, edges).expect("declarations were validated line by line"))
}

/// Vertices in the graph's own order, then edges in sorted name order.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    for name in g.names() {
        writeln!(out, "v {name}").unwrap();
    }
    for (a, b) in g.edge_names() {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}
