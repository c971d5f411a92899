//! Disjoint spanning tree pairs: Roskind-Tarjan search, Nash-Williams
//! partition checks, atomicity and the structural graph operations.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, subsets, vbits, EdgeSet, GraphError, MultiGraph, VertexSet};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BispanError {
    #[error("graph is not bispanning")]
    NotBispanning,
    #[error("graph is not atomic")]
    NotAtomic,
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    WrongDegree { vertex: usize, degree: usize },
    #[error("operation needs at most {limit} vertices")]
    TooLarge { limit: usize },
    #[error("the two edges must differ")]
    SameEdge,
    #[error("no edge with id {0}")]
    NoSuchEdge(usize),
    #[error("no vertex with id {0}")]
    NoSuchVertex(usize),
    #[error("operation does not apply to this graph")]
    NotApplicable,
    #[error("edge sets do not form two disjoint spanning trees")]
    InvalidTreePair,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    Blue,
    Red,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
            Color::Black => Color::Black,
        }
    }
}

pub type Coloring = Vec<Color>;

/// Two disjoint spanning trees S (blue) and T (red) covering all edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePair {
    pub s: EdgeSet,
    pub t: EdgeSet,
}

/// Which tree of a pair an edge sits in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    S,
    T,
}

impl TreePair {
    /// Pair with the given S; T is the complement.
    pub fn from_s(g: &MultiGraph, s: EdgeSet) -> Result<TreePair, BispanError> {
        let tp = TreePair { s, t: g.all_edges() & !s };
        if tp.is_valid(g) {
            Ok(tp)
        } else {
            Err(BispanError::InvalidTreePair)
        }
    }

    pub fn from_ids(g: &MultiGraph, s: &[usize]) -> Result<TreePair, BispanError> {
        if let Some(&e) = s.iter().find(|&&e| e >= g.m()) {
            return Err(BispanError::NoSuchEdge(e));
        }
        TreePair::from_s(g, crate::graph::edge_set(s.iter().copied()))
    }

    pub fn from_coloring(g: &MultiGraph, coloring: &[Color]) -> Result<TreePair, BispanError> {
        if coloring.len() != g.m() || coloring.contains(&Color::Black) {
            return Err(BispanError::InvalidTreePair);
        }
        let s = coloring.iter().enumerate().filter(|(_, c)| **c == Color::Blue).fold(0, |acc, (e, _)| acc | bit(e));
        TreePair::from_s(g, s)
    }

    pub fn is_valid(&self, g: &MultiGraph) -> bool {
        self.s & self.t == 0
            && self.s | self.t == g.all_edges()
            && g.is_spanning_tree(self.s)
            && g.is_spanning_tree(self.t)
    }

    pub fn coloring(&self, m: usize) -> Coloring {
        (0..m).map(|e| if self.s & bit(e) != 0 { Color::Blue } else { Color::Red }).collect()
    }

    pub fn swapped(self) -> TreePair {
        TreePair { s: self.t, t: self.s }
    }

    pub fn side(&self, e: usize) -> Side {
        if self.s & bit(e) != 0 {
            Side::S
        } else {
            Side::T
        }
    }

    /// (tree containing e, the other tree).
    pub fn split_for(&self, e: usize) -> (EdgeSet, EdgeSet) {
        match self.side(e) {
            Side::S => (self.s, self.t),
            Side::T => (self.t, self.s),
        }
    }
}

/// Predecessor entry of a colored BFS tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pred {
    Root,
    Edge(usize),
}

/// BFS tree of color-`c` edges rooted at `root`; `None` for unreached vertices.
pub fn colored_bfs(g: &MultiGraph, root: usize, coloring: &[Color], c: Color) -> Vec<Option<Pred>> {
    let mut pred = vec![None; g.n()];
    pred[root] = Some(Pred::Root);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &e in g.incident(v) {
            let w = g.other_end(e, v);
            if pred[w].is_none() && coloring[e] == c {
                pred[w] = Some(Pred::Edge(e));
                queue.push_back(w);
            }
        }
    }
    pred
}

fn uf_for<'a>(c: Color, blue: &'a mut UnionFind, red: &'a mut UnionFind) -> &'a mut UnionFind {
    match c {
        Color::Blue => blue,
        _ => red,
    }
}

/// Search for an augmenting color swap sequence that makes room for `e0`.
/// On success the swaps are applied to `coloring` and `e0` is colored.
pub fn augment_tree(
    g: &MultiGraph,
    coloring: &mut [Color],
    e0: usize,
    uf_blue: &mut UnionFind,
    uf_red: &mut UnionFind,
) -> bool {
    let v0 = g.edge(e0).0;
    let pred_blue = colored_bfs(g, v0, coloring, Color::Blue);
    let pred_red = colored_bfs(g, v0, coloring, Color::Red);
    let mut label: Vec<Option<usize>> = vec![None; g.m()];
    let mut queue = VecDeque::from([e0]);

    let pred_edge = |pred: &[Option<Pred>], x: usize| match pred[x] {
        Some(Pred::Edge(e)) => Some(e),
        _ => None,
    };

    while let Some(e) = queue.pop_front() {
        let (v, w) = g.edge(e);
        let c = if coloring[e] == Color::Blue { Color::Red } else { Color::Blue };
        let uf = uf_for(c, uf_blue, uf_red);
        if !uf.same(v, w) {
            uf.union(v, w);
            let mut c = c;
            let mut e = e;
            while e != e0 {
                std::mem::swap(&mut c, &mut coloring[e]);
                e = label[e].expect("labeled edge on swap path");
            }
            coloring[e] = c;
            return true;
        }
        let pred = if c == Color::Blue { &pred_blue } else { &pred_red };
        let fresh = |x: usize| x != v0 && pred_edge(pred, x).is_some_and(|p| p != e0 && label[p].is_none());
        // both ends already hang off the label tree: the cycle adds nothing new
        let mut x = if fresh(v) {
            v
        } else if fresh(w) {
            w
        } else {
            continue;
        };
        let mut stack = Vec::new();
        while fresh(x) {
            let ep = pred_edge(pred, x).expect("fresh vertex has a predecessor");
            stack.push(ep);
            x = g.other_end(ep, x);
        }
        while let Some(ep) = stack.pop() {
            label[ep] = Some(e);
            queue.push_back(ep);
        }
    }
    false
}

/// Roskind-Tarjan: two disjoint spanning trees consistent with as much of
/// `precolor` as stays acyclic, or `None` if the graph is not bispanning.
pub fn find_two_trees(g: &MultiGraph, precolor: &[Color]) -> Option<TreePair> {
    let n = g.n();
    if g.m() + 2 != 2 * n.max(1) {
        return None;
    }
    let mut coloring: Coloring = (0..g.m()).map(|e| precolor.get(e).copied().unwrap_or(Color::Black)).collect();
    let mut blue = UnionFind::new(n);
    let mut red = UnionFind::new(n);
    for (c, &(u, v)) in coloring.iter_mut().zip(g.edges()) {
        match *c {
            Color::Blue if blue.union(u, v) => {}
            Color::Red if red.union(u, v) => {}
            _ => *c = Color::Black,
        }
    }
    for e in 0..g.m() {
        if coloring[e] != Color::Black {
            continue;
        }
        let (u, v) = g.edge(e);
        if blue.union(u, v) {
            coloring[e] = Color::Blue;
        } else if red.union(u, v) {
            coloring[e] = Color::Red;
        } else if !augment_tree(g, &mut coloring, e, &mut blue, &mut red) {
            return None;
        }
    }
    let tp = TreePair::from_coloring(g, &coloring).ok();
    debug_assert!(tp.is_some(), "both forests are full spanning trees");
    tp
}

pub fn is_bispanning(g: &MultiGraph) -> bool {
    find_two_trees(g, &[]).is_some()
}

pub fn seed_pair(g: &MultiGraph) -> Result<TreePair, BispanError> {
    find_two_trees(g, &[]).ok_or(BispanError::NotBispanning)
}

pub const MAX_PARTITION_VERTICES: usize = 10;

/// Calls `f(block_count, crossing_edges)` for every partition of the vertices.
/// Stops early when `f` returns false; returns whether it ran to completion.
fn for_each_partition(g: &MultiGraph, mut f: impl FnMut(usize, usize) -> bool) -> bool {
    let n = g.n();
    // earlier neighbors of each vertex, with multiplicity
    let back: Vec<Vec<usize>> =
        (0..n).map(|v| g.incident(v).iter().map(|&e| g.other_end(e, v)).filter(|&u| u < v).collect()).collect();
    let mut block = vec![0usize; n];
    fn rec(
        v: usize,
        blocks: usize,
        crossing: usize,
        block: &mut [usize],
        back: &[Vec<usize>],
        f: &mut dyn FnMut(usize, usize) -> bool,
    ) -> bool {
        if v == block.len() {
            return f(blocks, crossing);
        }
        for b in 0..=blocks {
            block[v] = b;
            let added = back[v].iter().filter(|&&u| block[u] != b).count();
            let nb = if b == blocks { blocks + 1 } else { blocks };
            if !rec(v + 1, nb, crossing + added, block, back, f) {
                return false;
            }
        }
        true
    }
    if n == 0 {
        return f(0, 0);
    }
    rec(0, 0, 0, &mut block, &back, &mut f)
}

/// Nash-Williams check: |E| = 2|V| - 2 and every partition P has at least
/// 2(|P| - 1) crossing edges.
pub fn verify_bispanning(g: &MultiGraph) -> Result<bool, BispanError> {
    if g.n() > MAX_PARTITION_VERTICES {
        return Err(BispanError::TooLarge { limit: MAX_PARTITION_VERTICES });
    }
    if g.m() + 2 != 2 * g.n().max(1) {
        return Ok(false);
    }
    Ok(for_each_partition(g, |p, cross| cross + 2 >= 2 * p))
}

/// Strict partition inequality for every partition other than the two trivial ones.
pub fn is_atomic(g: &MultiGraph) -> Result<bool, BispanError> {
    if !verify_bispanning(g)? {
        return Err(BispanError::NotBispanning);
    }
    let n = g.n();
    Ok(for_each_partition(g, |p, cross| p <= 1 || p >= n || cross + 2 > 2 * p))
}

/// A vertex set V' with 1 < |V'| < n inducing a bispanning subgraph.
pub fn find_bispanning_subgraph(g: &MultiGraph) -> Result<Option<VertexSet>, BispanError> {
    if !is_bispanning(g) {
        return Err(BispanError::NotBispanning);
    }
    let n = g.n();
    for k in 2..n {
        for vs in subsets(n, k) {
            let vs = vs as VertexSet;
            if g.inner_edges(vs).count_ones() as usize + 2 != 2 * k {
                continue;
            }
            let (h, _, _) = g.induced(vs);
            if is_bispanning(&h) {
                return Ok(Some(vs));
            }
        }
    }
    Ok(None)
}

/// Add vertex v = n with {x,v} joining S and {y,v} joining T.
pub fn double_attach(g: &MultiGraph, tp: TreePair, x: usize, y: usize) -> Result<(MultiGraph, TreePair), BispanError> {
    for w in [x, y] {
        if w >= g.n() {
            return Err(BispanError::NoSuchVertex(w));
        }
    }
    let v = g.n();
    let m = g.m();
    let mut pairs = g.edges().to_vec();
    pairs.push((x, v));
    pairs.push((y, v));
    let h = MultiGraph::new(v + 1, &pairs)?;
    Ok((h, TreePair { s: tp.s | bit(m), t: tp.t | bit(m + 1) }))
}

/// Split `splice` = {x,y} through a new vertex v = n and attach v to `z`.
/// {x,v} reuses the id of `splice`; {y,v} gets id m and {z,v} id m+1.
pub fn edge_split_attach(
    g: &MultiGraph,
    tp: TreePair,
    splice: usize,
    z: usize,
) -> Result<(MultiGraph, TreePair), BispanError> {
    if splice >= g.m() {
        return Err(BispanError::NoSuchEdge(splice));
    }
    if z >= g.n() {
        return Err(BispanError::NoSuchVertex(z));
    }
    let v = g.n();
    let m = g.m();
    let (x, y) = g.edge(splice);
    let mut pairs = g.edges().to_vec();
    pairs[splice] = (x, v);
    pairs.push((y, v));
    pairs.push((z, v));
    let h = MultiGraph::new(v + 1, &pairs)?;
    let tp = if tp.s & bit(splice) != 0 {
        TreePair { s: tp.s | bit(m), t: tp.t | bit(m + 1) }
    } else {
        TreePair { s: tp.s | bit(m + 1), t: tp.t | bit(m) }
    };
    Ok((h, tp))
}

/// One of the three graphs obtained by removing a degree-3 vertex v and
/// joining two of its neighbors a, b by a split edge.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Neighbors of v joined by the split edge, and the remaining one.
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Edge ids in the host graph for {v,a}, {v,b}, {v,c}.
    pub ea: usize,
    pub eb: usize,
    pub ec: usize,
    pub graph: MultiGraph,
    /// Id of the split edge {a,b} in `graph`.
    pub split: usize,
    /// Host edge id to reduced edge id; the three edges at v map to `None`.
    pub edge_map: Vec<Option<usize>>,
    /// Reduced edge id to host edge id; `None` for the split edge.
    pub back: Vec<Option<usize>>,
}

impl Reduction {
    /// rho: expand the split edge into e_a, e_b and give e_c to the other tree.
    pub fn lift(&self, p: TreePair) -> TreePair {
        let mut s = 0;
        let mut t = 0;
        for (e, h) in self.back.iter().enumerate() {
            if let Some(h) = *h {
                if p.s & bit(e) != 0 {
                    s |= bit(h);
                } else {
                    t |= bit(h);
                }
            }
        }
        let pair = bit(self.ea) | bit(self.eb);
        if p.s & bit(self.split) != 0 {
            TreePair { s: s | pair, t: t | bit(self.ec) }
        } else {
            TreePair { s: s | bit(self.ec), t: t | pair }
        }
    }

    /// Inverse of `lift` for host pairs where e_a and e_b share a tree.
    pub fn project(&self, p: TreePair) -> Option<TreePair> {
        if p.side(self.ea) != p.side(self.eb) {
            return None;
        }
        let mut s = 0;
        for (e, h) in self.edge_map.iter().enumerate() {
            if let Some(h) = *h {
                if p.s & bit(e) != 0 {
                    s |= bit(h);
                }
            }
        }
        if p.s & bit(self.ea) != 0 {
            s |= bit(self.split);
        }
        Some(TreePair { s, t: self.graph.all_edges() & !s })
    }
}

#[derive(Clone, Debug)]
pub struct Deg3Reduction {
    pub v: usize,
    /// Neighbors x, y, z ordered by the ids of their edges to v.
    pub neighbors: [usize; 3],
    pub edges: [usize; 3],
    /// G_{x,y}, G_{x,z}, G_{y,z}.
    pub reductions: [Reduction; 3],
}

pub(crate) fn reduce_pair(g: &MultiGraph, v: usize, ea: usize, eb: usize, ec: usize) -> Reduction {
    let a = g.other_end(ea, v);
    let b = g.other_end(eb, v);
    let c = g.other_end(ec, v);
    let shift = |u: usize| if u > v { u - 1 } else { u };
    let mut edge_map = vec![None; g.m()];
    let mut back = Vec::new();
    let mut pairs = Vec::new();
    for (e, &(p, q)) in g.edges().iter().enumerate() {
        if e == ea || e == eb || e == ec {
            continue;
        }
        edge_map[e] = Some(pairs.len());
        back.push(Some(e));
        pairs.push((shift(p), shift(q)));
    }
    let split = pairs.len();
    pairs.push((shift(a), shift(b)));
    back.push(None);
    let graph = MultiGraph::new(g.n() - 1, &pairs).expect("reduction of a valid graph");
    Reduction { a, b, c, ea, eb, ec, graph, split, edge_map, back }
}

/// The three reduction graphs at a degree-3 vertex of an atomic graph.
pub fn reduce_deg3(g: &MultiGraph, v: usize) -> Result<Deg3Reduction, BispanError> {
    if v >= g.n() {
        return Err(BispanError::NoSuchVertex(v));
    }
    if g.degree(v) != 3 {
        return Err(BispanError::WrongDegree { vertex: v, degree: g.degree(v) });
    }
    if !is_atomic(g)? {
        return Err(BispanError::NotAtomic);
    }
    Ok(reduce_deg3_unchecked(g, v))
}

pub(crate) fn reduce_deg3_unchecked(g: &MultiGraph, v: usize) -> Deg3Reduction {
    let mut es: Vec<usize> = g.incident(v).to_vec();
    es.sort_unstable();
    let [ex, ey, ez] = [es[0], es[1], es[2]];
    let neighbors = [g.other_end(ex, v), g.other_end(ey, v), g.other_end(ez, v)];
    Deg3Reduction {
        v,
        neighbors,
        edges: [ex, ey, ez],
        reductions: [reduce_pair(g, v, ex, ey, ez), reduce_pair(g, v, ex, ez, ey), reduce_pair(g, v, ey, ez, ex)],
    }
}

/// G1 and G2 glued along d1 and d2, with id maps.
#[derive(Clone, Debug)]
pub struct CliqueSum {
    pub graph: MultiGraph,
    /// Edge maps from each part into the sum; `d1`/`d2` map to `None`.
    pub map1: Vec<Option<usize>>,
    pub map2: Vec<Option<usize>>,
    /// Vertex map from G2 into the sum (G1 keeps its vertex ids).
    pub vmap2: Vec<usize>,
}

/// 2-clique sum: identify d1's ends with d2's ends and delete both edges.
/// With `orientation` false the first stored endpoint of d2 meets the first
/// endpoint of d1.
pub fn clique2_sum_mapped(
    g1: &MultiGraph,
    d1: usize,
    g2: &MultiGraph,
    d2: usize,
    orientation: bool,
) -> Result<CliqueSum, BispanError> {
    if d1 >= g1.m() {
        return Err(BispanError::NoSuchEdge(d1));
    }
    if d2 >= g2.m() {
        return Err(BispanError::NoSuchEdge(d2));
    }
    let (x1, y1) = g1.edge(d1);
    let (x2, y2) = g2.edge(d2);
    let (tx, ty) = if orientation { (y1, x1) } else { (x1, y1) };
    let mut vmap2 = vec![0; g2.n()];
    let mut next = g1.n();
    for (v, slot) in vmap2.iter_mut().enumerate() {
        *slot = if v == x2 {
            tx
        } else if v == y2 {
            ty
        } else {
            next += 1;
            next - 1
        };
    }
    let mut pairs = Vec::new();
    let mut map1 = vec![None; g1.m()];
    for (e, &p) in g1.edges().iter().enumerate() {
        if e != d1 {
            map1[e] = Some(pairs.len());
            pairs.push(p);
        }
    }
    let mut map2 = vec![None; g2.m()];
    for (e, &(u, v)) in g2.edges().iter().enumerate() {
        if e != d2 {
            map2[e] = Some(pairs.len());
            pairs.push((vmap2[u], vmap2[v]));
        }
    }
    let graph = MultiGraph::new(next, &pairs)?;
    Ok(CliqueSum { graph, map1, map2, vmap2 })
}

pub fn clique2_sum(
    g1: &MultiGraph,
    d1: usize,
    g2: &MultiGraph,
    d2: usize,
    orientation: bool,
) -> Result<MultiGraph, BispanError> {
    clique2_sum_mapped(g1, d1, g2, d2, orientation).map(|s| s.graph)
}

/// Split of a vertex-connectivity-2 atomic graph at its least 2-vertex cut.
#[derive(Clone, Debug)]
pub struct TwoSumParts {
    pub cut: (usize, usize),
    pub g1: MultiGraph,
    pub d1: usize,
    pub g2: MultiGraph,
    pub d2: usize,
    /// Host edge id to part edge id.
    pub emap1: Vec<Option<usize>>,
    pub emap2: Vec<Option<usize>>,
    /// Host vertex sets of the two parts.
    pub v1: VertexSet,
    pub v2: VertexSet,
}

pub fn decompose_2vconn(g: &MultiGraph) -> Result<TwoSumParts, BispanError> {
    if g.n() > MAX_PARTITION_VERTICES || !verify_bispanning(g)? || !is_atomic(g)? {
        return Err(BispanError::NotApplicable);
    }
    if g.connectivity()?.0 != 2 {
        return Err(BispanError::NotApplicable);
    }
    let all = g.all_vertices();
    let n = g.n();
    for x in 0..n {
        for y in x + 1..n {
            let cut: VertexSet = (1 << x) | (1 << y);
            let rest = all & !cut;
            let keep = g.all_edges() & !vbits(cut).fold(0, |a, v| a | g.incident_set(v));
            let first = rest.trailing_zeros() as usize;
            let comp = g.reach(first, keep) & rest;
            if comp == rest {
                continue;
            }
            let v1 = comp | cut;
            let v2 = (rest & !comp) | cut;
            let part = |vs: VertexSet| {
                let (h, vmap, emap) = g.induced(vs);
                let mut pairs = h.edges().to_vec();
                pairs.push((vmap[x].unwrap(), vmap[y].unwrap()));
                let d = pairs.len() - 1;
                (MultiGraph::new(h.n(), &pairs).expect("part"), d, emap)
            };
            let (g1, d1, emap1) = part(v1);
            let (g2, d2, emap2) = part(v2);
            return Ok(TwoSumParts { cut: (x, y), g1, d1, g2, d2, emap1, emap2, v1, v2 });
        }
    }
    Err(BispanError::NotApplicable)
}

/// G/e - f for an atomic graph, with the host-to-result edge map.
pub fn contract_delete(g: &MultiGraph, e: usize, f: usize) -> Result<(MultiGraph, Vec<Option<usize>>), BispanError> {
    if e == f {
        return Err(BispanError::SameEdge);
    }
    for id in [e, f] {
        if id >= g.m() {
            return Err(BispanError::NoSuchEdge(id));
        }
    }
    if !is_atomic(g)? {
        return Err(BispanError::NotAtomic);
    }
    let (u, v) = g.edge(e);
    let (h, map) = g.contract((1 << u) | (1 << v))?;
    let fid = map[f].ok_or(BispanError::NotApplicable)?;
    let (h2, map2) = h.delete_edges(bit(fid));
    let combined = map.iter().map(|m| m.and_then(|i| map2[i])).collect();
    Ok((h2, combined))
}

/// (vertex connectivity, edge connectivity) of a bispanning graph.
pub fn connectivity_class(g: &MultiGraph) -> Result<(usize, usize), BispanError> {
    if !is_bispanning(g) {
        return Err(BispanError::NotBispanning);
    }
    Ok(g.connectivity()?)
}

/// Every edge set of size n-1 forming a spanning tree whose complement is
/// also a spanning tree, by brute force over subsets.
pub fn brute_force_pairs(g: &MultiGraph) -> Vec<EdgeSet> {
    if g.m() + 2 != 2 * g.n().max(1) {
        return Vec::new();
    }
    let all = g.all_edges();
    let mut out: Vec<EdgeSet> = subsets(g.m(), g.n().saturating_sub(1))
        .filter(|&s| g.is_spanning_tree(s) && g.is_spanning_tree(all & !s))
        .collect();
    out.sort_unstable();
    out
}
