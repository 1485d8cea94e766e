use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::graph::{NodeId, ShapeGraph, ShapePredicate};
use super::types::parse_action_type;
use crate::lex::ParseError;

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    src: String,
    label: String,
    dst: String,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    nodes: Vec<String>,
    root: String,
    edges: Vec<JsonEdge>,
}

#[derive(Debug, Error)]
pub enum GraphFormatError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad label `{label}`: {err}")]
    Label { label: String, err: ParseError },
    #[error("root `{0}` is not a node")]
    UnknownRoot(String),
}

pub fn to_json_value(s: &ShapePredicate) -> serde_json::Value {
    let g = JsonGraph {
        nodes: s.graph.nodes.iter().map(|n| n.to_string()).collect(),
        root: s.root.to_string(),
        edges: s
            .graph
            .edges
            .iter()
            .map(|e| JsonEdge { src: e.src.to_string(), label: e.label.to_string(), dst: e.dst.to_string() })
            .collect(),
    };
    serde_json::to_value(g).expect("graph serializes")
}

pub fn to_json(s: &ShapePredicate) -> String {
    serde_json::to_string_pretty(&to_json_value(s)).expect("graph serializes")
}

/// Read a graph; node names are arbitrary strings, renumbered in order of appearance.
pub fn from_json(src: &str) -> Result<ShapePredicate, GraphFormatError> {
    let g: JsonGraph = serde_json::from_str(src)?;
    let mut ids: BTreeMap<String, NodeId> = BTreeMap::new();
    let id = |s: &str, ids: &mut BTreeMap<String, NodeId>| {
        let next = NodeId(ids.len() as u32);
        *ids.entry(s.to_string()).or_insert(next)
    };
    let mut graph = ShapeGraph::default();
    for n in &g.nodes {
        graph.nodes.insert(id(n, &mut ids));
    }
    let root = *ids.get(&g.root).ok_or_else(|| GraphFormatError::UnknownRoot(g.root.clone()))?;
    for e in &g.edges {
        let label = parse_action_type(&e.label).map_err(|err| GraphFormatError::Label { label: e.label.clone(), err })?;
        let (s, d) = (id(&e.src, &mut ids), id(&e.dst, &mut ids));
        graph.add_edge(s, label, d);
    }
    Ok(ShapePredicate { graph, root })
}

/// Graphviz rendering with Unicode labels.
pub fn to_dot(s: &ShapePredicate) -> String {
    let mut out = String::from("digraph shape {\n");
    for n in &s.graph.nodes {
        let shape = if *n == s.root { "doublecircle" } else { "circle" };
        out.push_str(&format!("  {} [shape={}];\n", n, shape));
    }
    for e in &s.graph.edges {
        let label = e.label.pretty().replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("  {} -> {} [label=\"{}\"];\n", e.src, e.dst, label));
    }
    out.push_str("}\n");
    out
}
