//! Non-isomorphic bispanning graphs by closure from K1.

use std::collections::HashMap;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bispanning::{double_attach, edge_split_attach, is_atomic, BispanError, TreePair};
use crate::graph::{CanonicalCode, MultiGraph};
use crate::par::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("enumeration of {kind} graphs supported up to n = {limit}")]
    TooLarge { kind: Kind, limit: usize },
    #[error("unknown kind {0:?}; expected general, simple or atomic")]
    UnknownKind(String),
    #[error(transparent)]
    Bispan(#[from] BispanError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    General,
    Simple,
    Atomic,
}

impl Kind {
    pub fn limit(self) -> usize {
        match self {
            Kind::General => 7,
            Kind::Simple | Kind::Atomic => 8,
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::General => "general",
            Kind::Simple => "simple",
            Kind::Atomic => "atomic",
        })
    }
}

impl FromStr for Kind {
    type Err = EnumerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "general" | "bispanning" => Ok(Kind::General),
            "simple" => Ok(Kind::Simple),
            "atomic" => Ok(Kind::Atomic),
            _ => Err(EnumerateError::UnknownKind(s.to_string())),
        }
    }
}

/// One isomorphism class with a representative and a tree pair on it.
#[derive(Clone, Debug)]
pub struct Enumerated {
    pub code: CanonicalCode,
    pub graph: MultiGraph,
    pub pair: TreePair,
}

fn children(g: &MultiGraph, tp: TreePair) -> Vec<(MultiGraph, TreePair)> {
    let mut out = Vec::new();
    for x in 0..g.n() {
        for y in x..g.n() {
            out.push(double_attach(g, tp, x, y).expect("valid vertices"));
        }
    }
    for e in 0..g.m() {
        for z in 0..g.n() {
            out.push(edge_split_attach(g, tp, e, z).expect("valid edge"));
        }
    }
    out
}

/// Classes on exactly n vertices, sorted by canonical code.
pub fn enumerate_bispanning(n: usize, kind: Kind) -> Result<Vec<Enumerated>, EnumerateError> {
    enumerate_bispanning_with(n, kind, Exec::default())
}

pub fn enumerate_bispanning_with(n: usize, kind: Kind, exec: Exec) -> Result<Vec<Enumerated>, EnumerateError> {
    if n > kind.limit() {
        return Err(EnumerateError::TooLarge { kind, limit: kind.limit() });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let k1 = MultiGraph::new(1, &[]).expect("K1");
    let mut level =
        vec![Enumerated { code: k1.canonical_code().expect("small"), graph: k1, pair: TreePair { s: 0, t: 0 } }];
    for size in 2..=n {
        // Each step changes the excess by at most one.
        let budget = match kind {
            Kind::General => usize::MAX,
            Kind::Simple | Kind::Atomic => n - size,
        };
        let expanded = par::map(exec, &level, |p| {
            children(&p.graph, p.pair)
                .into_iter()
                .filter(|(g, _)| g.excess() <= budget)
                .map(|(g, tp)| (g.canonical_code().expect("small"), g, tp))
                .collect::<Vec<_>>()
        });
        let mut seen: HashMap<CanonicalCode, Enumerated> = HashMap::new();
        for (code, graph, pair) in expanded.into_iter().flatten() {
            seen.entry(code.clone()).or_insert(Enumerated { code, graph, pair });
        }
        level = seen.into_values().collect();
        level.sort_by(|a, b| a.code.cmp(&b.code));
    }
    if kind == Kind::Atomic {
        let keep = par::map(exec, &level, |x| is_atomic(&x.graph));
        let mut out = Vec::new();
        for (x, k) in level.into_iter().zip(keep) {
            if k? {
                out.push(x);
            }
        }
        level = out;
    }
    Ok(level)
}

pub fn count_bispanning(n: usize, kind: Kind) -> Result<usize, EnumerateError> {
    Ok(enumerate_bispanning(n, kind)?.len())
}
