//! Named bispanning graphs with their drawn colorings.

use thiserror::Error;

use crate::bispanning::{Color, TreePair};
use crate::graph::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
}

struct Entry {
    name: &'static str,
    n: usize,
    one_based: bool,
    edges: &'static str,
}

const fn e(name: &'static str, n: usize, one_based: bool, edges: &'static str) -> Entry {
    Entry { name, n, one_based, edges }
}

static ENTRIES: &[Entry] = &[
    e("K1", 1, true, ""),
    e("B2", 2, true, "1-2B 1-2R"),
    e("B3,1", 3, true, "1-2B 1-2R 2-3B 2-3R"),
    e("B3,2", 3, true, "1-2B 1-2R 1-3B 2-3R"),
    e("K4", 4, true, "1-2R 1-3B 1-4B 2-3B 2-4R 3-4R"),
    e("B4,2", 4, true, "1-3B 1-3R 1-4B 1-2R 3-4B 2-4R"),
    e("B4,3", 4, true, "1-3B 1-3R 2-1B 2-3R 4-1B 4-3R"),
    e("B4,4", 4, true, "1-3B 1-3R 3-4B 3-4R 1-2B 2-4R"),
    e("B4,5", 4, true, "1-2B 1-2R 3-4B 3-4R 1-3B 2-4R"),
    e("B4,6", 4, true, "1-3B 1-3R 3-4B 3-4R 1-2B 3-2R"),
    e("B4,7", 4, true, "1-3B 1-3R 2-4B 2-4R 3-4B 1-4R"),
    e("B4,8", 4, true, "1-3B 1-3R 4-3B 4-3R 2-4B 2-4R"),
    e("B4,9", 4, true, "1-4B 1-4R 2-4B 2-4R 3-4B 3-4R"),
    e("W5", 5, true, "1-2R 2-3B 1-3R 3-4B 1-4R 4-5R 1-5B 5-2B"),
    e("B5,2", 5, true, "1-2B 1-3R 1-4R 2-5R 2-3B 2-4R 3-4B 3-5B"),
    e("B6,1", 6, true, "1-2R 1-3B 1-4B 2-3B 2-4R 3-4R 3-5B 3-6B 4-6R 5-6R"),
    e("B6,2", 6, true, "1-2R 1-3B 1-4B 2-3B 2-4R 3-4R 3-5B 3-6B 4-6R 4-5R"),
    e("B6,3", 6, true, "1-2R 1-3B 1-4B 2-3B 2-4R 5-6R 3-5R 3-6B 4-6R 4-5B"),
    e("B6,4", 6, true, "1-2R 1-3B 1-4B 2-3B 2-4R 3-4R 3-5B 1-6B 2-6R 4-5R"),
    e("B6,5", 6, true, "1-2R 1-3B 1-4B 2-3B 2-4R 3-4R 3-5B 1-6B 4-6R 4-5R"),
    e("B6,6", 6, true, "1-2R 1-3B 1-4B 2-3B 2-4R 3-4R 3-5B 1-6B 5-6R 4-5R"),
    e("B6,7", 6, true, "1-2R 2-3B 1-3R 3-4B 1-4R 4-5R 1-5B 5-2B 3-6R 4-6B"),
    e("B6,8", 6, true, "1-2R 2-3B 1-3R 3-4B 1-4R 4-5R 1-5B 5-2B 3-6R 1-6B"),
    e("B6,9", 6, true, "1-2R 2-3B 1-3R 3-4B 1-4R 4-5R 1-5B 5-2B 2-6R 4-6B"),
    e("B6,10", 6, true, "1-2R 2-3B 1-3R 3-6B 1-4R 4-5R 1-5B 5-2B 2-6R 4-6B"),
    e("W6", 6, true, "1-2R 2-3B 1-3R 3-4B 1-4R 4-5R 1-5B 2-6B 1-6R 5-6B"),
    e("B6,12", 6, true, "1-2R 2-3B 5-3R 3-4B 1-4R 4-5R 1-5B 2-6B 4-6R 5-6B"),
    e("K4 (difficult)", 4, false, "0-1B 0-2B 1-2R 0-3R 1-3R 2-3B"),
    e("W5 (difficult)", 5, false, "0-2B 1-2B 0-3B 1-3R 0-4R 1-4R 2-4R 3-4B"),
    e("B6,12 (difficult)", 6, false, "0-3R 1-3B 2-3B 0-4B 1-4R 2-4R 0-5B 1-5R 2-5B 3-5R"),
    e("B7,1", 7, false, "0-3B 0-4B 1-4B 5-2B 6-2B 6-3B 0-2R 1-2R 1-3R 5-3R 5-4R 6-4R"),
    e("B8,1", 8, false, "0-4B 1-4R 2-4B 0-5B 1-5R 3-5R 0-6R 1-6B 2-6R 3-6B 0-7R 1-7B 2-7B 3-7R"),
    e("B9,1", 9, false, "0-4B 1-4B 0-5R 2-5R 3-5B 0-6R 2-6B 3-6R 1-7B 2-7B 3-7R 4-7R 0-8B 1-8R 2-8R 3-8B"),
    e("B9,2", 9, false, "0-1B 0-4R 0-3R 1-2R 1-3R 1-5B 2-4B 2-5B 3-6B 3-7B 4-6B 4-8R 5-7R 5-8R 6-7R 7-8B"),
    e("B10,1", 10, false, "0-4B 1-4R 0-5R 2-5B 2-6R 3-6B 4-6R 1-7B 3-7R 5-7B 0-8B 1-8R 2-8B 3-8R 0-9R 1-9B 2-9R 3-9B"),
    e("B10,2", 10, false, "0-4R 1-4B 2-5R 3-5B 2-6B 3-6R 4-6B 0-7B 1-7R 5-7R 0-8B 1-8B 2-8R 3-8R 0-9R 1-9R 2-9B 3-9B"),
    e(
        "B11,1",
        11,
        false,
        "0-5B 1-5R 0-6R 2-6R 3-6B 1-7B 2-7B 4-7R 2-8R 3-8B 4-8B 5-8R 0-9R 1-9B 3-9R 4-9B \
         2-10B 3-10R 4-10R 5-10B",
    ),
    e(
        "B11,2",
        11,
        false,
        "0-4B 1-5R 0-6R 2-6B 4-6R 1-7B 3-7R 5-7B 0-8R 1-8B 2-8B 3-8R 2-9R 3-9B 4-9R 5-9B \
         0-10B 1-10R 2-10R 3-10B",
    ),
    e(
        "B12,1",
        12,
        false,
        "0-5B 1-5R 0-6R 2-6B 1-7B 3-7R 1-8B 2-8R 4-8B 6-8R 0-9R 3-9B 4-9R 7-9B 2-10B 3-10B \
         4-10R 5-10R 2-11R 3-11R 4-11B 5-11B",
    ),
    e(
        "B12,2",
        12,
        false,
        "0-5B 1-5R 0-6B 2-6B 1-7R 2-7R 2-8B 3-8B 4-8R 5-8R 1-9B 3-9B 4-9R 6-9R 0-10R 3-10R \
         4-10B 7-10B 2-11R 3-11R 4-11B 5-11B",
    ),
    e(
        "B12,3",
        12,
        false,
        "0-4R 1-5B 0-6B 2-6R 1-7R 3-7B 2-8B 3-8R 4-8R 5-8B 0-9B 1-9R 4-9B 5-9R 2-10B 3-10R \
         6-10B 7-10R 2-11R 3-11B 4-11B 5-11R",
    ),
    e(
        "B12,4",
        12,
        false,
        "0-5B 1-5R 2-6B 3-6R 0-7R 4-7B 5-7R 1-8B 2-8R 6-8B 0-9B 1-9R 3-9B 4-9R 1-10B 2-10R \
         3-10B 4-10R 0-11R 2-11B 3-11R 4-11B",
    ),
    e(
        "B18,1",
        18,
        false,
        "0-6B 1-7B 2-8B 3-9B 4-9B 3-10B 5-10B 0-11B 4-11B 5-11R 0-12R 1-12B 2-12B 9-12R \
         5-13B 6-13R 7-13R 9-13R 0-14B 7-14R 8-14R 10-14R 2-15R 4-15R 6-15R 10-15B 1-16R \
         3-16R 6-16R 8-16B 2-17R 3-17B 7-17B 11-17R",
    ),
    // Figure graphs with their drawn edge numbering.
    e("W5 (uecbo figure)", 5, false, "0-1R 1-2B 0-2R 2-3R 0-3B 3-4R 0-4B 1-4B"),
    e(
        "exchange figure",
        10,
        true,
        "1-2R 1-3B 1-4B 2-3R 2-5R 2-7B 3-4R 3-6R 4-5B 4-9R 5-8B 6-7R 6-9B 7-10B 7-8B 8-10R \
         8-9R 9-10B",
    ),
    e(
        "game figure",
        10,
        false,
        "0-3R 0-6B 0-7R 0-8R 1-4R 1-5B 1-6B 1-9R 2-4R 2-5B 2-7B 3-4B 3-7B 3-8B 5-6R 5-9R \
         6-7R 8-9B",
    ),
];

/// Names of all catalog entries in catalog order.
pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// Names of the graphs from the "most difficult" list.
pub fn difficult_names() -> Vec<&'static str> {
    vec![
        "K4 (difficult)",
        "W5 (difficult)",
        "B6,12 (difficult)",
        "B7,1",
        "B8,1",
        "B9,1",
        "B9,2",
        "B10,1",
        "B10,2",
        "B11,1",
        "B11,2",
        "B12,1",
        "B12,2",
        "B12,3",
        "B12,4",
    ]
}

fn parse(entry: &Entry) -> (MultiGraph, Vec<Color>) {
    let shift = usize::from(entry.one_based);
    let mut pairs = Vec::new();
    let mut colors = Vec::new();
    for tok in entry.edges.split_whitespace() {
        let (body, c) = tok.split_at(tok.len() - 1);
        let (u, v) = body.split_once('-').expect("edge token u-v");
        let u: usize = u.parse().expect("vertex");
        let v: usize = v.parse().expect("vertex");
        pairs.push((u - shift, v - shift));
        colors.push(if c == "B" { Color::Blue } else { Color::Red });
    }
    let g = MultiGraph::new(entry.n, &pairs).expect("catalog graph is valid");
    (g, colors)
}

/// Graph and its drawn coloring. The pair is valid for every entry.
pub fn named_graph(name: &str) -> Result<(MultiGraph, TreePair), CatalogError> {
    let entry = lookup(name)?;
    let (g, colors) = parse(entry);
    let tp = TreePair::from_coloring(&g, &colors)
        .unwrap_or_else(|_| crate::bispanning::find_two_trees(&g, &colors).expect("bispanning"));
    Ok((g, tp))
}

/// Drawn coloring, which may or may not be a valid tree pair.
pub fn drawn_coloring(name: &str) -> Result<Vec<Color>, CatalogError> {
    Ok(parse(lookup(name)?).1)
}

fn lookup(name: &str) -> Result<&'static Entry, CatalogError> {
    let norm = |s: &str| s.replace([' ', '_', '{', '}'], "").to_lowercase();
    let aliases = [("B4,1", "K4"), ("B5,1", "W5"), ("B6,11", "W6")];
    let wanted = aliases.iter().find(|(a, _)| norm(a) == norm(name)).map_or(name, |(_, b)| b);
    ENTRIES.iter().find(|e| norm(e.name) == norm(wanted)).ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}
