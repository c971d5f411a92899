//! Cyclic base orderings and unique exchange cyclic base orderings.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::bispanning::{reduce_pair, CliqueSum, TreePair};
use crate::exchange::{apply_exchange, PairView};
use crate::graph::{bit, EdgeSet, MultiGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("sequence has {got} swaps, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("graph is not bispanning")]
    NotBispanning,
    #[error("search limited to |E|/2 <= {0}")]
    TooLarge(usize),
    #[error("input is not a unique exchange cyclic base ordering")]
    InvalidInput,
    #[error("the seam edges do not line up: {0}")]
    SeamMismatch(String),
}

/// A start pair and a list of swaps (e_i, f_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapSequence {
    pub start: TreePair,
    pub swaps: Vec<(usize, usize)>,
}

impl fmt::Display for SwapSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.swaps.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "⟨{}⟩", body.join(","))
    }
}

impl SwapSequence {
    /// Pairs visited, starting with `start`. Fails on the first invalid swap.
    pub fn walk(&self, g: &MultiGraph) -> Option<Vec<TreePair>> {
        let mut cur = self.start;
        let mut out = vec![cur];
        for &(e, f) in &self.swaps {
            cur = apply_exchange(g, cur, e, f).ok()?;
            out.push(cur);
        }
        Some(out)
    }

    /// Edge ordering s_1..s_m t_1..t_m where s_i is the swap member from the start S.
    pub fn edge_order(&self) -> Option<Vec<usize>> {
        let mut s = Vec::with_capacity(self.swaps.len());
        let mut t = Vec::with_capacity(self.swaps.len());
        for &(a, b) in &self.swaps {
            match (self.start.s & bit(a) != 0, self.start.s & bit(b) != 0) {
                (true, false) => {
                    s.push(a);
                    t.push(b);
                }
                (false, true) => {
                    s.push(b);
                    t.push(a);
                }
                _ => return None,
            }
        }
        s.extend(t);
        Some(s)
    }
}

/// All 2m cyclic windows of m consecutive edges are spanning trees.
pub fn verify_cbo(g: &MultiGraph, seq: &SwapSequence) -> Result<bool, OrderingError> {
    let m = g.m() / 2;
    if seq.swaps.len() != m {
        return Err(OrderingError::LengthMismatch { expected: m, got: seq.swaps.len() });
    }
    let Some(order) = seq.edge_order() else {
        return Ok(false);
    };
    let covered = order.iter().fold(0u128, |acc, &e| acc | bit(e));
    if covered != g.all_edges() {
        return Ok(false);
    }
    Ok((0..2 * m).all(|i| {
        let w: EdgeSet = (0..m).fold(0, |acc, k| acc | bit(order[(i + k) % (2 * m)]));
        g.is_spanning_tree(w)
    }))
}

/// Remove a degree-2 vertex; returns the smaller graph and its edge ids in `g`.
fn drop_vertex(g: &MultiGraph, v: usize) -> (MultiGraph, Vec<usize>) {
    let shift = |u: usize| if u > v { u - 1 } else { u };
    let mut back = Vec::new();
    let mut pairs = Vec::new();
    for (e, &(p, q)) in g.edges().iter().enumerate() {
        if p != v && q != v {
            back.push(e);
            pairs.push((shift(p), shift(q)));
        }
    }
    (MultiGraph::new(g.n() - 1, &pairs).expect("vertex deletion"), back)
}

fn restrict(tp: TreePair, back: &[usize]) -> TreePair {
    let mut s = 0;
    let mut t = 0;
    for (i, &e) in back.iter().enumerate() {
        if tp.s & bit(e) != 0 {
            s |= bit(i);
        } else if tp.t & bit(e) != 0 {
            t |= bit(i);
        }
    }
    TreePair { s, t }
}

/// A cyclic base ordering built by peeling degree-2 and degree-3 vertices.
pub fn build_cbo(g: &MultiGraph, tp: TreePair) -> Result<SwapSequence, OrderingError> {
    if !tp.is_valid(g) {
        return Err(OrderingError::NotBispanning);
    }
    Ok(SwapSequence { start: tp, swaps: cbo_pairs(g, tp) })
}

fn cbo_pairs(g: &MultiGraph, tp: TreePair) -> Vec<(usize, usize)> {
    if g.n() <= 1 {
        return Vec::new();
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 2) {
        let es = g.incident_set(v);
        let es_s = (es & tp.s).trailing_zeros() as usize;
        let es_t = (es & tp.t).trailing_zeros() as usize;
        let (h, back) = drop_vertex(g, v);
        let inner = cbo_pairs(&h, restrict(tp, &back));
        let mut out = vec![(es_s, es_t)];
        out.extend(inner.into_iter().map(|(a, b)| (back[a], back[b])));
        return out;
    }
    let v = (0..g.n()).find(|&v| g.degree(v) == 3).expect("bispanning graph has a vertex of degree 2 or 3");
    let es = g.incident_set(v);
    if (es & tp.t).count_ones() == 2 {
        return cbo_pairs(g, tp.swapped()).into_iter().map(|(a, b)| (b, a)).collect();
    }
    let pair = es & tp.s;
    let ea = pair.trailing_zeros() as usize;
    let eb = (pair & !bit(ea)).trailing_zeros() as usize;
    let ec = (es & tp.t).trailing_zeros() as usize;
    let r = reduce_pair(g, v, ea, eb, ec);
    let inner = cbo_pairs(&r.graph, r.project(tp).expect("same side"));
    let i = inner.iter().position(|&(s, _)| s == r.split).expect("split edge in S");
    let host = |e: usize| r.back[e].expect("non-split edge");
    let mut window: EdgeSet = bit(ea) | bit(eb);
    for &(s, _) in &inner[i + 1..] {
        window |= bit(host(s));
    }
    for &(_, t) in &inner[..i] {
        window |= bit(host(t));
    }
    let (x, y) = g.edge(ec);
    let cycle = g.forest_path(window, x, y).expect("window spans v") | bit(ec);
    let (first, second) = if cycle & bit(ea) != 0 { (ea, eb) } else { (eb, ea) };
    let mut out = Vec::with_capacity(inner.len() + 1);
    for &(s, t) in &inner[..i] {
        out.push((host(s), host(t)));
    }
    out.push((first, ec));
    out.push((second, host(inner[i].1)));
    for &(s, t) in &inner[i + 1..] {
        out.push((host(s), host(t)));
    }
    out
}

pub const MAX_UECBO_HALF_EDGES: usize = 20;

/// Depth-first search for a unique-exchange path from (S,T) to (T,S).
pub fn find_uecbo(g: &MultiGraph, tp: TreePair) -> Result<Option<SwapSequence>, OrderingError> {
    let m = g.m() / 2;
    if m > MAX_UECBO_HALF_EDGES {
        return Err(OrderingError::TooLarge(MAX_UECBO_HALF_EDGES));
    }
    if !tp.is_valid(g) {
        return Err(OrderingError::NotBispanning);
    }
    Ok(path_to_inverse(g, tp.s, tp).map(|swaps| SwapSequence { start: tp, swaps }))
}

/// Unique exchanges from `cur` to the pair whose T is `start_s`, one start edge per step.
pub(crate) fn path_to_inverse(g: &MultiGraph, start_s: EdgeSet, cur: TreePair) -> Option<Vec<(usize, usize)>> {
    let mut dead = HashSet::new();
    let mut path = Vec::new();
    dfs(g, start_s, cur, &mut dead, &mut path).then_some(path)
}

/// Unique exchanges from `cur` that move one more start-S edge into T,
/// ordered S-exchanges first, then by driving edge.
pub(crate) fn forward_moves(g: &MultiGraph, start_s: EdgeSet, cur: TreePair) -> Vec<(usize, usize, TreePair)> {
    let view = PairView::new(g, cur);
    let mut out = Vec::new();
    for tree in [cur.s, cur.t] {
        for e in crate::graph::bits(tree) {
            if let Some(f) = view.unique(e) {
                let flip = bit(e) | bit(f);
                let next = TreePair { s: cur.s ^ flip, t: cur.t ^ flip };
                if (start_s & next.t).count_ones() == (start_s & cur.t).count_ones() + 1 {
                    out.push((e, f, next));
                }
            }
        }
    }
    out
}

fn dfs(
    g: &MultiGraph,
    start_s: EdgeSet,
    cur: TreePair,
    dead: &mut HashSet<EdgeSet>,
    path: &mut Vec<(usize, usize)>,
) -> bool {
    if cur.t == start_s {
        return true;
    }
    if dead.contains(&cur.s) {
        return false;
    }
    for (e, f, next) in forward_moves(g, start_s, cur) {
        path.push((e, f));
        if dfs(g, start_s, next, dead, path) {
            return true;
        }
        path.pop();
    }
    dead.insert(cur.s);
    false
}

/// Every step is the unique exchange of its driving edge and the walk ends at (T,S).
pub fn verify_uecbo(g: &MultiGraph, seq: &SwapSequence) -> bool {
    if seq.swaps.len() != g.m() / 2 || !seq.start.is_valid(g) {
        return false;
    }
    let mut cur = seq.start;
    for &(e, f) in &seq.swaps {
        if e >= g.m() || f >= g.m() || PairView::new(g, cur).unique(e) != Some(f) {
            return false;
        }
        let flip = bit(e) | bit(f);
        cur = TreePair { s: cur.s ^ flip, t: cur.t ^ flip };
    }
    cur == seq.start.swapped()
}

/// ⟨(f_m,e_m),…,(f_1,e_1)⟩ from the same start pair.
pub fn reverse_uecbo(g: &MultiGraph, seq: &SwapSequence) -> Result<SwapSequence, OrderingError> {
    if !verify_uecbo(g, seq) {
        return Err(OrderingError::InvalidInput);
    }
    Ok(reversed(seq))
}

fn reversed(seq: &SwapSequence) -> SwapSequence {
    SwapSequence { start: seq.start, swaps: seq.swaps.iter().rev().map(|&(e, f)| (f, e)).collect() }
}

/// Order of the free prefix and suffix blocks when joining.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Schedule {
    pub b_prefix_first: bool,
    pub b_suffix_first: bool,
}

impl Schedule {
    pub fn all() -> [Schedule; 4] {
        [
            Schedule { b_prefix_first: false, b_suffix_first: false },
            Schedule { b_prefix_first: true, b_suffix_first: false },
            Schedule { b_prefix_first: false, b_suffix_first: true },
            Schedule { b_prefix_first: true, b_suffix_first: true },
        ]
    }
}

fn seam(seq: &SwapSequence, d: usize) -> Result<(usize, bool), OrderingError> {
    seq.swaps
        .iter()
        .position(|&(e, f)| e == d || f == d)
        .map(|i| (i, seq.swaps[i].0 == d))
        .ok_or_else(|| OrderingError::SeamMismatch(format!("edge {d} never swapped")))
}

/// Join UECBOs of G1 and G2 into one of their 2-clique sum.
pub fn join_uecbo_2sum(
    seq_a: &SwapSequence,
    seq_b: &SwapSequence,
    d1: usize,
    d2: usize,
    sum: &CliqueSum,
    schedule: Schedule,
) -> Result<SwapSequence, OrderingError> {
    let mut b = seq_b.clone();
    if (seq_a.start.s & bit(d1) != 0) == (b.start.s & bit(d2) != 0) {
        b.start = b.start.swapped();
    }
    let (i, d1_drives) = seam(seq_a, d1)?;
    let (mut j, mut d2_drives) = seam(&b, d2)?;
    if d1_drives == d2_drives {
        b = reversed(&b);
        (j, d2_drives) = seam(&b, d2)?;
    }
    debug_assert_ne!(d1_drives, d2_drives);
    let m1 = |e: usize| sum.map1[e].expect("non-seam edge of G1");
    let m2 = |e: usize| sum.map2[e].expect("non-seam edge of G2");
    let fused =
        if d2_drives { (m1(seq_a.swaps[i].0), m2(b.swaps[j].1)) } else { (m2(b.swaps[j].0), m1(seq_a.swaps[i].1)) };
    let pa = |r: std::ops::Range<usize>| seq_a.swaps[r].iter().map(|&(e, f)| (m1(e), m1(f))).collect::<Vec<_>>();
    let pb = |r: std::ops::Range<usize>| b.swaps[r].iter().map(|&(e, f)| (m2(e), m2(f))).collect::<Vec<_>>();
    let (a_pre, a_suf) = (pa(0..i), pa(i + 1..seq_a.swaps.len()));
    let (b_pre, b_suf) = (pb(0..j), pb(j + 1..b.swaps.len()));
    let mut swaps = Vec::new();
    if schedule.b_prefix_first {
        swaps.extend(b_pre);
        swaps.extend(a_pre);
    } else {
        swaps.extend(a_pre);
        swaps.extend(b_pre);
    }
    swaps.push(fused);
    if schedule.b_suffix_first {
        swaps.extend(b_suf);
        swaps.extend(a_suf);
    } else {
        swaps.extend(a_suf);
        swaps.extend(b_suf);
    }
    let mut s = 0;
    for e in crate::graph::bits(seq_a.start.s) {
        if let Some(x) = sum.map1[e] {
            s |= bit(x);
        }
    }
    for e in crate::graph::bits(b.start.s) {
        if let Some(x) = sum.map2[e] {
            s |= bit(x);
        }
    }
    let start = TreePair { s, t: sum.graph.all_edges() & !s };
    Ok(SwapSequence { start, swaps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::enumerate_tree_pairs;

    fn b2() -> MultiGraph {
        MultiGraph::new(2, &[(0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn trivial_orderings() {
        let k1 = MultiGraph::new(1, &[]).unwrap();
        let seq = build_cbo(&k1, TreePair { s: 0, t: 0 }).unwrap();
        assert!(seq.swaps.is_empty());
        let seq = build_cbo(&b2(), TreePair { s: 1, t: 2 }).unwrap();
        assert_eq!(seq.swaps, vec![(0, 1)]);
        assert!(verify_cbo(&b2(), &seq).unwrap());
        assert!(verify_uecbo(&b2(), &seq));
        assert_eq!(seq.to_string(), "⟨(0,1)⟩");
    }

    #[test]
    fn length_is_checked() {
        let seq = SwapSequence { start: TreePair { s: 1, t: 2 }, swaps: vec![] };
        assert_eq!(verify_cbo(&b2(), &seq), Err(OrderingError::LengthMismatch { expected: 1, got: 0 }));
    }

    #[test]
    fn k4_cbo_and_uecbo() {
        let g = MultiGraph::new(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        for s in enumerate_tree_pairs(&g).unwrap() {
            let tp = TreePair { s, t: g.all_edges() & !s };
            let cbo = build_cbo(&g, tp).unwrap();
            assert!(verify_cbo(&g, &cbo).unwrap(), "{cbo}");
            let u = find_uecbo(&g, tp).unwrap().unwrap();
            assert_eq!(u.swaps.len(), 3);
            assert!(verify_uecbo(&g, &u));
            let r = reverse_uecbo(&g, &u).unwrap();
            assert!(verify_uecbo(&g, &r));
            assert_eq!(reverse_uecbo(&g, &r).unwrap(), u);
        }
    }
}
