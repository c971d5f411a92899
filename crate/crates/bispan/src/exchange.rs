//! Symmetric edge exchanges and the exchange graphs tau2, tau3, tau4.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::bispanning::{seed_pair, BispanError, Side, TreePair};
use crate::graph::{bit, bits, EdgeSet, MultiGraph, TreeIndex};
use crate::par::{self, Exec};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExchangeError {
    #[error("({e},{f}) is not a valid exchange")]
    InvalidExchange { e: usize, f: usize },
    #[error("graph is not bispanning")]
    NotBispanning,
    #[error("graph too large: {0}")]
    TooLarge(String),
    #[error("no edge with id {0}")]
    NoSuchEdge(usize),
}

impl From<BispanError> for ExchangeError {
    fn from(_: BispanError) -> Self {
        ExchangeError::NotBispanning
    }
}

/// D(X,e) ∩ C(Y,e) - e, where X is the tree holding `e`.
pub fn exchange_candidates(g: &MultiGraph, tp: TreePair, e: usize) -> EdgeSet {
    let (x, y) = tp.split_for(e);
    let cut = g.fundamental_cut(x, e).expect("e lies in its own tree");
    let cycle = g.fundamental_cycle(y, e).expect("e lies outside the other tree");
    cut & cycle & !bit(e)
}

pub fn unique_exchange(g: &MultiGraph, tp: TreePair, e: usize) -> Option<usize> {
    let c = exchange_candidates(g, tp, e);
    (c.count_ones() == 1).then(|| c.trailing_zeros() as usize)
}

/// Swap `e` and `f` between the two trees.
pub fn apply_exchange(g: &MultiGraph, tp: TreePair, e: usize, f: usize) -> Result<TreePair, ExchangeError> {
    for id in [e, f] {
        if id >= g.m() {
            return Err(ExchangeError::NoSuchEdge(id));
        }
    }
    if tp.side(e) == tp.side(f) {
        return Err(ExchangeError::InvalidExchange { e, f });
    }
    let flip = bit(e) | bit(f);
    let next = TreePair { s: tp.s ^ flip, t: tp.t ^ flip };
    if next.is_valid(g) {
        Ok(next)
    } else {
        Err(ExchangeError::InvalidExchange { e, f })
    }
}

/// Tree indices of both trees of a pair, for repeated exchange queries.
pub struct PairView<'g> {
    g: &'g MultiGraph,
    pub tp: TreePair,
    s: TreeIndex,
    t: TreeIndex,
}

impl<'g> PairView<'g> {
    pub fn new(g: &'g MultiGraph, tp: TreePair) -> PairView<'g> {
        let s = TreeIndex::new(g, tp.s).expect("S is a spanning tree");
        let t = TreeIndex::new(g, tp.t).expect("T is a spanning tree");
        PairView { g, tp, s, t }
    }

    pub fn candidates(&self, e: usize) -> EdgeSet {
        let (own, other) = match self.tp.side(e) {
            Side::S => (&self.s, &self.t),
            Side::T => (&self.t, &self.s),
        };
        own.cut(self.g, e) & other.cycle(self.g, e) & !bit(e)
    }

    pub fn unique(&self, e: usize) -> Option<usize> {
        let c = self.candidates(e);
        (c.count_ones() == 1).then(|| c.trailing_zeros() as usize)
    }

    pub fn cut(&self, e: usize) -> EdgeSet {
        match self.tp.side(e) {
            Side::S => self.s.cut(self.g, e),
            Side::T => self.t.cut(self.g, e),
        }
    }

    /// Cycle closed by `e` in the tree not holding it.
    pub fn cycle(&self, e: usize) -> EdgeSet {
        match self.tp.side(e) {
            Side::S => self.t.cycle(self.g, e),
            Side::T => self.s.cycle(self.g, e),
        }
    }
}

/// Lexicographic order of sorted S lists: `a < b` iff the smallest edge in
/// exactly one of them lies in `a`.
pub fn key_less(a: EdgeSet, b: EdgeSet) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) != 0
}

/// Sort key realizing `key_less`.
pub fn key_rank(s: EdgeSet) -> std::cmp::Reverse<u128> {
    std::cmp::Reverse(s.reverse_bits())
}

pub const MAX_PAIRS: usize = 2_000_000;

/// All S-sets of tree pairs, by breadth-first closure under unrestricted
/// exchanges from one seed pair, sorted in key order.
pub fn enumerate_tree_pairs(g: &MultiGraph) -> Result<Vec<EdgeSet>, ExchangeError> {
    enumerate_tree_pairs_with(g, Exec::default())
}

pub fn enumerate_tree_pairs_with(g: &MultiGraph, exec: Exec) -> Result<Vec<EdgeSet>, ExchangeError> {
    let seed = seed_pair(g)?;
    let all = g.all_edges();
    let mut seen: HashSet<EdgeSet> = HashSet::from([seed.s]);
    let mut frontier = vec![seed.s];
    while !frontier.is_empty() {
        let found = par::map(exec, &frontier, |&s| {
            let view = PairView::new(g, TreePair { s, t: all & !s });
            let mut out = Vec::new();
            for e in bits(s) {
                for f in bits(view.candidates(e)) {
                    out.push(s ^ bit(e) ^ bit(f));
                }
            }
            out
        });
        let mut next = Vec::new();
        for s in found.into_iter().flatten() {
            if seen.insert(s) {
                next.push(s);
            }
        }
        if seen.len() > MAX_PAIRS {
            return Err(ExchangeError::TooLarge(format!("more than {MAX_PAIRS} tree pairs")));
        }
        frontier = next;
    }
    let mut out: Vec<EdgeSet> = seen.into_iter().collect();
    out.sort_unstable_by_key(|&s| key_rank(s));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    Tau2,
    Tau3,
    Tau4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Form {
    Directed,
    Undirected,
    Simple,
}

/// A labeled exchange between pair indices of an `ExchangeGraph`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExchangeArc {
    pub from: usize,
    pub to: usize,
    pub e: usize,
    pub f: usize,
    pub kind: Side,
}

impl PartialOrd for Side {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Side {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}

/// An exchange move without pair indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Swap {
    pub e: usize,
    pub f: usize,
    pub kind: Side,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub variant: Variant,
    pub form: Form,
    /// S-sets in key order; the vertex index is the position here.
    pub vertices: Vec<EdgeSet>,
    pub index: HashMap<EdgeSet, usize>,
    pub arcs: Vec<ExchangeArc>,
    all: EdgeSet,
}

impl ExchangeGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn pair(&self, i: usize) -> TreePair {
        TreePair { s: self.vertices[i], t: self.all & !self.vertices[i] }
    }

    pub fn index_of(&self, tp: TreePair) -> Option<usize> {
        self.index.get(&tp.s).copied()
    }

    /// Out-degree for directed graphs, incident edge count otherwise.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for a in &self.arcs {
            deg[a.from] += 1;
            if self.form != Form::Directed {
                deg[a.to] += 1;
            }
        }
        deg
    }

    pub fn degree_range(&self) -> (usize, usize) {
        let d = self.degrees();
        (d.iter().copied().min().unwrap_or(0), d.iter().copied().max().unwrap_or(0))
    }

    /// Weakly connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        let mut parts = n;
        for a in &self.arcs {
            if uf.union(a.from, a.to) {
                parts -= 1;
            }
        }
        parts <= 1
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut fwd = vec![Vec::new(); n];
        let mut rev = vec![Vec::new(); n];
        for a in &self.arcs {
            fwd[a.from].push(a.to);
            rev[a.to].push(a.from);
            if self.form != Form::Directed {
                fwd[a.to].push(a.from);
                rev[a.from].push(a.to);
            }
        }
        let reach_all = |adj: &Vec<Vec<usize>>| {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut stack = vec![0];
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            count == n
        };
        reach_all(&fwd) && reach_all(&rev)
    }

    /// Outgoing arcs per vertex (directed form).
    pub fn out_lists(&self) -> Vec<Vec<ExchangeArc>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for a in &self.arcs {
            out[a.from].push(*a);
        }
        out
    }

    /// Directed graph on the given pairs from (source S-set, e, f, kind) records.
    pub fn from_labeled(
        variant: Variant,
        all: EdgeSet,
        mut vertices: Vec<EdgeSet>,
        labeled: impl IntoIterator<Item = (EdgeSet, usize, usize, Side)>,
    ) -> ExchangeGraph {
        vertices.sort_by_key(|&s| key_rank(s));
        vertices.dedup();
        let index: HashMap<EdgeSet, usize> = vertices.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut arcs: Vec<ExchangeArc> = labeled
            .into_iter()
            .map(|(s, e, f, kind)| ExchangeArc { from: index[&s], to: index[&(s ^ bit(e) ^ bit(f))], e, f, kind })
            .collect();
        arcs.sort_unstable();
        ExchangeGraph { variant, form: Form::Directed, vertices, index, arcs, all }
    }

    /// Arcs as (source S-set, e, f) triples, for comparisons across graphs.
    pub fn labeled_arcs(&self) -> HashSet<(EdgeSet, usize, usize)> {
        self.arcs.iter().map(|a| (self.vertices[a.from], a.e, a.f)).collect()
    }
}

/// All arcs of one variant leaving `tp`, with their targets as S-sets.
pub fn pair_arcs(g: &MultiGraph, tp: TreePair, variant: Variant) -> Vec<(Swap, EdgeSet)> {
    let view = PairView::new(g, tp);
    let mut out = Vec::new();
    for e in 0..g.m() {
        let kind = tp.side(e);
        if variant == Variant::Tau4 && kind == Side::T {
            continue;
        }
        let cand = view.candidates(e);
        if variant != Variant::Tau2 && cand.count_ones() != 1 {
            continue;
        }
        for f in bits(cand) {
            out.push((Swap { e, f, kind }, tp.s ^ bit(e) ^ bit(f)));
        }
    }
    out
}

pub fn build_tau(g: &MultiGraph, variant: Variant, form: Form) -> Result<ExchangeGraph, ExchangeError> {
    build_tau_with(g, variant, form, Exec::default())
}

pub fn build_tau_with(
    g: &MultiGraph,
    variant: Variant,
    form: Form,
    exec: Exec,
) -> Result<ExchangeGraph, ExchangeError> {
    let vertices = enumerate_tree_pairs_with(g, exec)?;
    Ok(tau_on(g, vertices, variant, form, exec, |_, _| true))
}

fn tau_on(
    g: &MultiGraph,
    vertices: Vec<EdgeSet>,
    variant: Variant,
    form: Form,
    exec: Exec,
    keep: impl Fn(TreePair, Swap) -> bool + Sync + Send,
) -> ExchangeGraph {
    let all = g.all_edges();
    let index: HashMap<EdgeSet, usize> = vertices.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let per_pair = par::map(exec, &vertices, |&s| {
        let tp = TreePair { s, t: all & !s };
        pair_arcs(g, tp, variant).into_iter().filter(|(sw, _)| keep(tp, *sw)).collect::<Vec<_>>()
    });
    let mut arcs = Vec::new();
    let mut merged: HashSet<(usize, usize)> = HashSet::new();
    for (from, list) in per_pair.into_iter().enumerate() {
        for (sw, target) in list {
            let to = index[&target];
            let arc = ExchangeArc { from, to, e: sw.e, f: sw.f, kind: sw.kind };
            match form {
                Form::Directed => arcs.push(arc),
                Form::Undirected => {
                    if from < to {
                        arcs.push(arc)
                    }
                }
                Form::Simple => {
                    if from < to && merged.insert((from, to)) {
                        arcs.push(arc)
                    }
                }
            }
        }
    }
    ExchangeGraph { variant, form, vertices, index, arcs, all }
}

/// Unique exchanges whose driving edge is a leaf edge of its tree.
pub fn leaf_unique_exchanges(g: &MultiGraph, tp: TreePair) -> Vec<Swap> {
    let view = PairView::new(g, tp);
    let mut out: Vec<Swap> = Vec::new();
    for (side, tree) in [(Side::S, tp.s), (Side::T, tp.t)] {
        let mut seen: EdgeSet = 0;
        for v in 0..g.n() {
            let own = g.incident_set(v) & tree;
            if own.count_ones() != 1 || seen & own != 0 {
                continue;
            }
            seen |= own;
            let e = own.trailing_zeros() as usize;
            if let Some(f) = view.unique(e) {
                out.push(Swap { e, f, kind: side });
            }
        }
    }
    out
}

fn is_leaf_edge(g: &MultiGraph, tree: EdgeSet, e: usize) -> bool {
    let (u, v) = g.edge(e);
    (g.incident_set(u) & tree).count_ones() == 1 || (g.incident_set(v) & tree).count_ones() == 1
}

/// Directed tau3 keeping only arcs driven by a leaf edge.
pub fn leaf_restricted_tau3(g: &MultiGraph) -> Result<ExchangeGraph, ExchangeError> {
    leaf_restricted_tau3_with(g, Exec::default())
}

pub fn leaf_restricted_tau3_with(g: &MultiGraph, exec: Exec) -> Result<ExchangeGraph, ExchangeError> {
    let vertices = enumerate_tree_pairs_with(g, exec)?;
    Ok(tau_on(g, vertices, Variant::Tau3, Form::Directed, exec, |tp, sw| {
        let (own, _) = tp.split_for(sw.e);
        is_leaf_edge(g, own, sw.e)
    }))
}

pub fn tau_connected(x: &ExchangeGraph) -> bool {
    x.is_connected()
}

/// How parallel same-direction arcs count when enumerating paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PathConvention {
    /// S- and T-exchanges reaching the same pair are distinct steps.
    Multiplicity,
    /// Steps are counted by target pair only.
    Collapsed,
}

/// Gives 24 paths on the drawn W5 difficult pair.
pub const NU_CONVENTION: PathConvention = PathConvention::Collapsed;

pub const MAX_NU_HALF_EDGES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nu {
    pub count: u128,
    pub witness: Vec<usize>,
    #[serde(skip)]
    pub pair: TreePair,
}

/// Number of length-m paths from each pair to its inverse in directed tau3.
pub fn path_counts(g: &MultiGraph, conv: PathConvention, exec: Exec) -> Result<Vec<(TreePair, u128)>, ExchangeError> {
    let m = g.m() / 2;
    if m > MAX_NU_HALF_EDGES {
        return Err(ExchangeError::TooLarge(format!("|E|/2 = {m} > {MAX_NU_HALF_EDGES}")));
    }
    let tau = build_tau_with(g, Variant::Tau3, Form::Directed, exec)?;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); tau.vertex_count()];
    for a in &tau.arcs {
        adj[a.from].push(a.to);
    }
    if conv == PathConvention::Collapsed {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
    }
    let starts: Vec<usize> = (0..tau.vertex_count()).collect();
    let counts = par::map(exec, &starts, |&p| {
        let start = tau.vertices[p];
        let goal = tau.index[&(tau.all & !start)];
        let mut memo: HashMap<usize, u128> = HashMap::new();
        count_paths(&tau, &adj, start, p, goal, &mut memo)
    });
    Ok(starts.into_iter().zip(counts).map(|(p, c)| (tau.pair(p), c)).collect())
}

fn count_paths(
    tau: &ExchangeGraph,
    adj: &[Vec<usize>],
    start: EdgeSet,
    q: usize,
    goal: usize,
    memo: &mut HashMap<usize, u128>,
) -> u128 {
    if q == goal {
        return 1;
    }
    if let Some(&c) = memo.get(&q) {
        return c;
    }
    let progress = |i: usize| (start & !tau.vertices[i]).count_ones();
    let here = progress(q);
    let mut total = 0;
    for &r in &adj[q] {
        if progress(r) == here + 1 {
            total += count_paths(tau, adj, start, r, goal, memo);
        }
    }
    memo.insert(q, total);
    total
}

/// Number of paths from one pair to its inverse under `conv`.
pub fn path_count(g: &MultiGraph, tp: TreePair, conv: PathConvention) -> Result<u128, ExchangeError> {
    path_counts(g, conv, Exec::default())?
        .into_iter()
        .find(|&(p, _)| p == tp)
        .map(|(_, c)| c)
        .ok_or(ExchangeError::NotBispanning)
}

/// Minimum over all pairs of the number of unique-exchange paths to the inverse pair.
pub fn nu(g: &MultiGraph) -> Result<Nu, ExchangeError> {
    nu_with(g, NU_CONVENTION, Exec::default())
}

pub fn nu_with(g: &MultiGraph, conv: PathConvention, exec: Exec) -> Result<Nu, ExchangeError> {
    let counts = path_counts(g, conv, exec)?;
    let (pair, count) =
        counts.into_iter().min_by_key(|&(tp, c)| (c, key_rank(tp.s))).ok_or(ExchangeError::NotBispanning)?;
    Ok(Nu { count, witness: bits(pair.s).collect(), pair })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bispanning::brute_force_pairs;

    fn k4() -> MultiGraph {
        MultiGraph::new(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]).unwrap()
    }

    fn b2() -> MultiGraph {
        MultiGraph::new(2, &[(0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn b2_exchange() {
        let g = b2();
        let tp = TreePair { s: 1, t: 2 };
        assert_eq!(exchange_candidates(&g, tp, 0), 2);
        assert_eq!(unique_exchange(&g, tp, 1), Some(0));
        let next = apply_exchange(&g, tp, 0, 1).unwrap();
        assert_eq!(next, tp.swapped());
        assert_eq!(apply_exchange(&g, tp, 0, 0), Err(ExchangeError::InvalidExchange { e: 0, f: 0 }));
    }

    #[test]
    fn key_order_is_lexicographic() {
        // {0,3} < {1,2}
        assert!(key_less(0b1001, 0b0110));
        assert!(!key_less(0b0110, 0b1001));
        assert!(!key_less(5, 5));
        let mut v = vec![0b0110u128, 0b1001, 0b0011, 0b1100];
        v.sort_by_key(|&s| key_rank(s));
        assert_eq!(v, vec![0b0011, 0b1001, 0b0110, 0b1100]);
    }

    #[test]
    fn k4_pairs_and_tau3() {
        let g = k4();
        let pairs = enumerate_tree_pairs(&g).unwrap();
        assert_eq!(pairs.len(), 12);
        let mut brute = brute_force_pairs(&g);
        let mut ours = pairs.clone();
        brute.sort_unstable();
        ours.sort_unstable();
        assert_eq!(ours, brute);
        let t = build_tau(&g, Variant::Tau3, Form::Undirected).unwrap();
        assert_eq!(t.edge_count(), 24);
        assert_eq!(t.degree_range(), (4, 4));
        assert!(tau_connected(&t));
    }

    #[test]
    fn variants_nest() {
        let g = k4();
        let t2 = build_tau(&g, Variant::Tau2, Form::Directed).unwrap().labeled_arcs();
        let t3 = build_tau(&g, Variant::Tau3, Form::Directed).unwrap().labeled_arcs();
        let t4 = build_tau(&g, Variant::Tau4, Form::Directed).unwrap().labeled_arcs();
        assert!(t4.is_subset(&t3));
        assert!(t3.is_subset(&t2));
    }

    #[test]
    fn b2_s_only_arcs_split() {
        let t4 = build_tau(&b2(), Variant::Tau4, Form::Directed).unwrap();
        assert_eq!(t4.vertex_count(), 2);
        assert!(tau_connected(&t4));
        // S-only arcs driven from the pair holding edge 0 in S
        let only_first =
            ExchangeGraph { arcs: t4.arcs.iter().copied().filter(|a| a.from == 0 && a.e == 1).collect(), ..t4.clone() };
        assert!(!tau_connected(&only_first));
    }

    #[test]
    fn leaf_exchanges() {
        let tp = TreePair { s: 1, t: 2 };
        assert_eq!(leaf_unique_exchanges(&b2(), tp).len(), 2);
        let g = k4();
        for s in enumerate_tree_pairs(&g).unwrap() {
            let tp = TreePair { s, t: g.all_edges() & !s };
            assert!(leaf_unique_exchanges(&g, tp).len() >= 4);
        }
        assert!(leaf_restricted_tau3(&g).unwrap().is_connected());
    }

    #[test]
    fn nu_of_k4() {
        let n = nu(&k4()).unwrap();
        assert_eq!(n.count, 8);
    }
}
