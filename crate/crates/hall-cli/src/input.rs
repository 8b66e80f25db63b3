//! Resolution of command-line literals into library values.
//!
//! A graph argument is resolved in three steps: an existing file path is
//! read as graph text, a built-in fixture name (`BUB`, `TRI`, `G_a`,
//! `G_b`, with or without a `.fg` suffix) expands to the shipped graph,
//! and anything else is treated as literal graph text.  One-line literals
//! use `"; "` as the line separator, exactly as combination renderings
//! print them, so every rendered basis key parses back.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use hallalg::forest::labeled::LabeledForest;
use hallalg::forest::{Forest, RootedTree};
use hallalg::graph::{FeynmanGraph, HalfEdgeId, VertexId};

use crate::Failure;

/// Shipped fixture graphs, addressable by name from any working directory.
const BUILTINS: [(&str, &str); 4] = [
    ("BUB", include_str!("../fixtures/BUB.fg")),
    ("TRI", include_str!("../fixtures/TRI.fg")),
    ("G_a", include_str!("../fixtures/G_a.fg")),
    ("G_b", include_str!("../fixtures/G_b.fg")),
];

/// Looks up a built-in graph by case-insensitive name, ignoring a
/// trailing `.fg` and an optional underscore (`GA` = `G_a`).
pub fn builtin_graph_text(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".fg").unwrap_or(name);
    let key = stem.replace('_', "").to_ascii_uppercase();
    BUILTINS
        .iter()
        .find(|(n, _)| n.replace('_', "").to_ascii_uppercase() == key)
        .map(|&(_, text)| text)
}

fn input_err(what: &str, detail: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{what}: {detail}"))
}

/// Resolves a graph argument to graph text: file, built-in, or literal.
pub fn resolve_graph_text(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return fs::read_to_string(path).map_err(|e| input_err(arg, e));
    }
    if let Some(text) = builtin_graph_text(arg) {
        return Ok(text.to_string());
    }
    Ok(arg.replace("; ", "\n"))
}

/// Parses a graph argument into a validated Feynman graph.
pub fn parse_graph(arg: &str) -> Result<FeynmanGraph, Failure> {
    let text = resolve_graph_text(arg)?;
    FeynmanGraph::parse(&text).map_err(|e| input_err("invalid graph", e))
}

/// Parses a forest literal (`"0"` for the empty forest).
pub fn parse_forest(arg: &str) -> Result<Forest, Failure> {
    Forest::parse(arg).map_err(|e| input_err("invalid forest", e))
}

/// Parses a literal that must be a single rooted tree.
pub fn parse_tree(arg: &str) -> Result<RootedTree, Failure> {
    let f = parse_forest(arg)?;
    match f.trees() {
        [t] => Ok(t.clone()),
        _ => Err(Failure::Input(format!(
            "expected a single rooted tree, got a forest with {} components",
            f.component_count()
        ))),
    }
}

/// Parses a labeled forest literal such as `4(7(1,5),3(2,6))`.
pub fn parse_labeled(arg: &str) -> Result<LabeledForest, Failure> {
    LabeledForest::parse(arg).map_err(|e| input_err("invalid labeled forest", e))
}

/// Parses a comma-separated list of vertex ids, e.g. `3,4`.
pub fn parse_vertex_set(arg: &str) -> Result<BTreeSet<VertexId>, Failure> {
    arg.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<VertexId>()
                .map_err(|_| input_err("invalid vertex id", tok.trim()))
        })
        .collect()
}

/// Parses a comma-separated pair of half-edge ids, e.g. `1,4`.
pub fn parse_halfedge_pair(arg: &str) -> Result<(HalfEdgeId, HalfEdgeId), Failure> {
    let parts: Vec<&str> = arg.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(Failure::Input(format!(
            "expected two comma-separated half-edge ids, got `{arg}`"
        )));
    };
    let pa = a
        .parse::<HalfEdgeId>()
        .map_err(|_| input_err("invalid half-edge id", a))?;
    let pb = b
        .parse::<HalfEdgeId>()
        .map_err(|_| input_err("invalid half-edge id", b))?;
    Ok((pa, pb))
}

/// Formats a set of ids as `{a,b,c}`.
pub fn render_id_set<T: std::fmt::Display>(s: &BTreeSet<T>) -> String {
    let inner: Vec<String> = s.iter().map(T::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve_case_insensitively() {
        for name in ["BUB", "bub", "TRI.fg", "g_a", "GA", "G_b.fg", "gb"] {
            assert!(builtin_graph_text(name).is_some(), "{name} should resolve");
        }
        assert!(builtin_graph_text("nonesuch").is_none());
    }

    #[test]
    fn builtins_parse_to_expected_shapes() {
        let shapes = [("BUB", 2, 2, 1), ("TRI", 3, 3, 1), ("G_a", 5, 3, 2), ("G_b", 4, 2, 2)];
        for (name, vertices, ext, loops) in shapes {
            let g = parse_graph(name).unwrap();
            assert_eq!(g.raw().vertex_count(), vertices, "{name} vertices");
            assert_eq!(g.raw().external_halfedges().len(), ext, "{name} legs");
            assert_eq!(g.raw().loop_number(), loops, "{name} loops");
        }
    }

    #[test]
    fn one_line_graph_literals_parse() {
        let g = parse_graph("BUB").unwrap();
        let one_line = g.raw().serialize().replace('\n', "; ");
        let back = parse_graph(&one_line).unwrap();
        assert_eq!(back.raw().serialize(), g.raw().serialize());
    }

    #[test]
    fn tree_argument_rejects_forests() {
        assert!(parse_tree("()").is_ok());
        assert!(matches!(parse_tree("() ()"), Err(Failure::Input(_))));
    }

    #[test]
    fn id_collections_parse() {
        let w = parse_vertex_set("3, 4").unwrap();
        assert_eq!(render_id_set(&w), "{3,4}");
        assert_eq!(parse_halfedge_pair("1,4").unwrap(), (1, 4));
        assert!(parse_halfedge_pair("1").is_err());
        assert!(parse_vertex_set("1,x").is_err());
    }
}
