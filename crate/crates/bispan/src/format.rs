//! Edge-list text, DOT and JSON.
//!
//! Edge-list: first line `n m`, then m lines `u v [c]` with `c` one of `b`, `r` or `-`.
//! The edge id is the zero-based line index. Lines starting with `#` are skipped.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bispanning::{Color, Side, TreePair};
use crate::exchange::{ExchangeGraph, Form};
use crate::graph::{bits, edge_set, to_vec, GraphError, MultiGraph};
use crate::ordering::SwapSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("expected {expected} edges, found {got}")]
    EdgeCount { expected: usize, got: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("json: {0}")]
    Json(String),
}

/// A parsed edge list. Uncolored edges are black.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    pub graph: MultiGraph,
    pub colors: Vec<Color>,
}

impl EdgeList {
    pub fn uncolored(graph: MultiGraph) -> EdgeList {
        let colors = vec![Color::Black; graph.m()];
        EdgeList { graph, colors }
    }

    pub fn with_pair(graph: MultiGraph, tp: TreePair) -> EdgeList {
        let colors = tp.coloring(graph.m());
        EdgeList { graph, colors }
    }

    pub fn is_fully_colored(&self) -> bool {
        !self.colors.contains(&Color::Black)
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList, FormatError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header `n m`"))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = nums[..] else {
        return Err(syntax(hl, "header must be `n m`"));
    };
    let n: usize = n.parse().map_err(|_| syntax(hl, format!("bad vertex count {n:?}")))?;
    let m: usize = m.parse().map_err(|_| syntax(hl, format!("bad edge count {m:?}")))?;
    let mut pairs = Vec::with_capacity(m);
    let mut colors = Vec::with_capacity(m);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(syntax(ln, "expected `u v [c]`"));
        }
        let vertex = |t: &str| t.parse::<usize>().map_err(|_| syntax(ln, format!("bad vertex {t:?}")));
        pairs.push((vertex(toks[0])?, vertex(toks[1])?));
        colors.push(match toks.get(2).map(|c| c.to_ascii_lowercase()).as_deref() {
            None | Some("-") => Color::Black,
            Some("b") => Color::Blue,
            Some("r") => Color::Red,
            Some(c) => return Err(syntax(ln, format!("bad color {c:?}, expected b, r or -"))),
        });
    }
    if pairs.len() != m {
        return Err(FormatError::EdgeCount { expected: m, got: pairs.len() });
    }
    Ok(EdgeList { graph: MultiGraph::new(n, &pairs)?, colors })
}

pub fn write_edge_list(list: &EdgeList) -> String {
    let g = &list.graph;
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = match list.colors.get(e) {
            Some(Color::Blue) => " b",
            Some(Color::Red) => " r",
            _ => "",
        };
        let _ = writeln!(out, "{u} {v}{c}");
    }
    out
}

/// The graph itself, edges colored by the pair if given.
pub fn graph_dot(g: &MultiGraph, tp: Option<TreePair>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let color = match tp.map(|p| p.side(e)) {
            Some(Side::S) => ", color=blue",
            Some(Side::T) => ", color=red",
            None => "",
        };
        let _ = writeln!(out, "  {u} -- {v} [label=\"{e}\"{color}];");
    }
    out.push_str("}\n");
    out
}

fn kind_color(kind: Side) -> &'static str {
    match kind {
        Side::S => "blue",
        Side::T => "red",
    }
}

/// Exchange graph in DOT. Vertices are labeled by their sorted S-set.
/// Undirected forms merge an arc with its twin and label it `{e,f}`.
pub fn exchange_dot(x: &ExchangeGraph) -> String {
    let directed = x.form == Form::Directed;
    let mut out = String::from(if directed { "digraph tau {\n" } else { "graph tau {\n" });
    out.push_str("  node [shape=box, fontsize=10];\n");
    for (i, &s) in x.vertices.iter().enumerate() {
        let ids: Vec<String> = bits(s).map(|e| e.to_string()).collect();
        let _ = writeln!(out, "  p{i} [label=\"{}\"];", ids.join(" "));
    }
    let (op, open, close) = if directed { ("->", "(", ")") } else { ("--", "{", "}") };
    for a in &x.arcs {
        let _ = writeln!(
            out,
            "  p{} {op} p{} [label=\"{open}{},{}{close}\", color={}];",
            a.from,
            a.to,
            a.e,
            a.f,
            kind_color(a.kind)
        );
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub e: usize,
    pub f: usize,
    pub from: usize,
    pub to: usize,
    pub kind: Side,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeGraphJson {
    pub variant: String,
    pub form: String,
    pub vertices: Vec<Vec<usize>>,
    pub arcs: Vec<ArcJson>,
}

pub fn exchange_json(x: &ExchangeGraph) -> ExchangeGraphJson {
    ExchangeGraphJson {
        variant: format!("{:?}", x.variant).to_lowercase(),
        form: format!("{:?}", x.form).to_lowercase(),
        vertices: x.vertices.iter().map(|&s| to_vec(s)).collect(),
        arcs: x.arcs.iter().map(|a| ArcJson { e: a.e, f: a.f, from: a.from, to: a.to, kind: a.kind }).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapSequenceJson {
    #[serde(rename = "start_S")]
    pub start_s: Vec<usize>,
    pub swaps: Vec<[usize; 2]>,
}

impl From<&SwapSequence> for SwapSequenceJson {
    fn from(seq: &SwapSequence) -> Self {
        SwapSequenceJson { start_s: to_vec(seq.start.s), swaps: seq.swaps.iter().map(|&(e, f)| [e, f]).collect() }
    }
}

impl SwapSequenceJson {
    /// Rebuild against the host graph; T is the complement of S.
    pub fn to_sequence(&self, g: &MultiGraph) -> SwapSequence {
        let s = edge_set(self.start_s.iter().copied());
        SwapSequence {
            start: TreePair { s, t: g.all_edges() & !s },
            swaps: self.swaps.iter().map(|&[e, f]| (e, f)).collect(),
        }
    }
}

pub fn sequence_to_json(seq: &SwapSequence) -> String {
    serde_json::to_string(&SwapSequenceJson::from(seq)).expect("plain data")
}

pub fn sequence_from_json(g: &MultiGraph, text: &str) -> Result<SwapSequence, FormatError> {
    let js: SwapSequenceJson = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    Ok(js.to_sequence(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::{build_tau, Variant};

    const K4: &str = "4 6\n0 1 b\n0 2 b\n0 3 b\n1 2 r\n2 3 r\n1 3 r\n";

    #[test]
    fn edge_list_round_trip() {
        let list = parse_edge_list(K4).unwrap();
        assert_eq!(list.graph.m(), 6);
        assert_eq!(list.colors[3], Color::Red);
        assert!(list.is_fully_colored());
        assert_eq!(write_edge_list(&list), K4);
    }

    #[test]
    fn colors_are_optional() {
        let list = parse_edge_list("# pair\n2 2\n0 1\n1 0 -\n").unwrap();
        assert_eq!(list.colors, vec![Color::Black; 2]);
        assert_eq!(write_edge_list(&list), "2 2\n0 1\n1 0\n");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_edge_list(""), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 1 g"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1"), Err(FormatError::EdgeCount { expected: 2, got: 1 })));
        assert!(matches!(parse_edge_list("2 1\n0 0"), Err(FormatError::Graph(_))));
        assert!(matches!(parse_edge_list("2 1\n0 x"), Err(FormatError::Syntax { line: 2, .. })));
    }

    #[test]
    fn json_and_dot_shapes() {
        let g = parse_edge_list(K4).unwrap().graph;
        let x = build_tau(&g, Variant::Tau3, Form::Undirected).unwrap();
        let js = exchange_json(&x);
        assert_eq!((js.vertices.len(), js.arcs.len()), (12, 24));
        assert!(js.vertices.iter().all(|v| v.len() == 3 && v.windows(2).all(|w| w[0] < w[1])));
        let dot = exchange_dot(&x);
        assert_eq!(dot.matches(" -- ").count(), 24);
        assert!(dot.starts_with("graph"));
    }

    #[test]
    fn sequence_json_round_trip() {
        let g = parse_edge_list(K4).unwrap().graph;
        let seq = SwapSequence { start: TreePair { s: 0b000111, t: 0b111000 }, swaps: vec![(0, 3), (1, 4), (2, 5)] };
        let text = sequence_to_json(&seq);
        assert!(text.contains("\"start_S\":[0,1,2]"));
        assert_eq!(sequence_from_json(&g, &text).unwrap(), seq);
    }
}
