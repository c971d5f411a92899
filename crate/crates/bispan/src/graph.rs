//! Undirected multigraphs with dense edge ids, bitset edge sets,
//! fundamental cycles and cuts, connectivity and canonical codes.

use std::collections::VecDeque;

use thiserror::Error;

/// Set of edge ids, bit `e` set when edge `e` is a member.
pub type EdgeSet = u128;
/// Set of vertex ids.
pub type VertexSet = u64;

pub const MAX_EDGES: usize = 128;
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    LoopEdge { edge: usize, vertex: usize },
    #[error("edge {edge} references vertex {vertex} but n = {n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("graph too large ({what})")]
    TooLarge { what: &'static str },
    #[error("empty vertex set")]
    EmptySet,
    #[error("edge {0} lies in the tree")]
    EdgeInTree(usize),
    #[error("edge {0} is not in the tree")]
    EdgeNotInTree(usize),
    #[error("edge set is not a spanning tree")]
    NotATree,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("no edge with id {0}")]
    NoSuchEdge(usize),
}

/// Iterate over the members of a bitset.
pub fn bits(mut s: EdgeSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(i)
        }
    })
}

pub fn vbits(mut s: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(i)
        }
    })
}

#[inline]
pub fn bit(e: usize) -> EdgeSet {
    1u128 << e
}

pub fn edge_set<I: IntoIterator<Item = usize>>(ids: I) -> EdgeSet {
    ids.into_iter().fold(0, |acc, e| acc | bit(e))
}

pub fn to_vec(s: EdgeSet) -> Vec<usize> {
    bits(s).collect()
}

/// Undirected multigraph without loops. Edge ids are `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    inc_mask: Vec<EdgeSet>,
}

impl MultiGraph {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { what: "vertices" });
        }
        if pairs.len() > MAX_EDGES {
            return Err(GraphError::TooLarge { what: "edges" });
        }
        let mut incident = vec![Vec::new(); n];
        let mut inc_mask = vec![0; n];
        let mut edges = Vec::with_capacity(pairs.len());
        for (id, &(u, v)) in pairs.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { edge: id, vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge { edge: id, vertex: u });
            }
            incident[u].push(id);
            incident[v].push(id);
            inc_mask[u] |= bit(id);
            inc_mask[v] |= bit(id);
            edges.push((u, v));
        }
        Ok(MultiGraph { n, edges, incident, inc_mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn incident_set(&self, v: usize) -> EdgeSet {
        self.inc_mask[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn all_edges(&self) -> EdgeSet {
        if self.m() == 128 {
            !0
        } else {
            bit(self.m()) - 1
        }
    }

    pub fn all_vertices(&self) -> VertexSet {
        if self.n == 64 {
            !0
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Number of edges between `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        (self.inc_mask[u] & self.inc_mask[v]).count_ones() as usize
    }

    pub fn is_simple(&self) -> bool {
        (0..self.n).all(|u| {
            let mut seen = 0u64;
            self.incident[u].iter().all(|&e| {
                let w = self.other_end(e, u);
                let fresh = seen & (1 << w) == 0;
                seen |= 1 << w;
                fresh
            })
        })
    }

    /// Sum over vertex pairs of (multiplicity - 1).
    pub fn excess(&self) -> usize {
        let mut pairs: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        pairs.sort_unstable();
        pairs.windows(2).filter(|w| w[0] == w[1]).count()
    }

    /// Edges with exactly one endpoint in `side`.
    pub fn cut_of(&self, side: VertexSet) -> EdgeSet {
        vbits(side).fold(0, |acc, v| acc ^ self.inc_mask[v])
    }

    /// Edges with both endpoints in `vs`.
    pub fn inner_edges(&self, vs: VertexSet) -> EdgeSet {
        let touching = vbits(vs).fold(0, |acc, v| acc | self.inc_mask[v]);
        touching & !self.cut_of(vs)
    }

    /// Vertices reachable from `root` using only edges in `es`.
    pub fn reach(&self, root: usize, es: EdgeSet) -> VertexSet {
        let mut seen: VertexSet = 1 << root;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for e in bits(self.inc_mask[u] & es) {
                let w = self.other_end(e, u);
                if seen & (1 << w) == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Component count and labels of the spanning subgraph on `es`.
    pub fn components_of(&self, es: EdgeSet) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for v in 0..self.n {
            if label[v] == usize::MAX {
                for w in vbits(self.reach(v, es)) {
                    label[w] = count;
                }
                count += 1;
            }
        }
        (count, label)
    }

    pub fn components(&self) -> (usize, Vec<usize>) {
        self.components_of(self.all_edges())
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.all_edges()) == self.all_vertices()
    }

    pub fn is_spanning_tree(&self, t: EdgeSet) -> bool {
        if self.n == 0 {
            return t == 0;
        }
        t & !self.all_edges() == 0 && t.count_ones() as usize == self.n - 1 && self.reach(0, t) == self.all_vertices()
    }

    /// Edge set of the unique path between `u` and `v` in the forest `t`.
    pub fn forest_path(&self, t: EdgeSet, u: usize, v: usize) -> Option<EdgeSet> {
        let mut pred = vec![usize::MAX; self.n];
        let mut seen: VertexSet = 1 << u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for e in bits(self.inc_mask[x] & t) {
                let w = self.other_end(e, x);
                if seen & (1 << w) == 0 {
                    seen |= 1 << w;
                    pred[w] = e;
                    queue.push_back(w);
                }
            }
        }
        if seen & (1 << v) == 0 {
            return None;
        }
        let mut path = 0;
        let mut x = v;
        while x != u {
            let e = pred[x];
            path |= bit(e);
            x = self.other_end(e, x);
        }
        Some(path)
    }

    /// C(T,e): the cycle closed by the non-tree edge `e`.
    pub fn fundamental_cycle(&self, t: EdgeSet, e: usize) -> Result<EdgeSet, GraphError> {
        if e >= self.m() {
            return Err(GraphError::NoSuchEdge(e));
        }
        if t & bit(e) != 0 {
            return Err(GraphError::EdgeInTree(e));
        }
        if !self.is_spanning_tree(t) {
            return Err(GraphError::NotATree);
        }
        let (u, v) = self.edges[e];
        let path = self.forest_path(t, u, v).ok_or(GraphError::NotATree)?;
        Ok(path | bit(e))
    }

    /// D(T,e): the cut between the two components of T - e.
    pub fn fundamental_cut(&self, t: EdgeSet, e: usize) -> Result<EdgeSet, GraphError> {
        if e >= self.m() {
            return Err(GraphError::NoSuchEdge(e));
        }
        if t & bit(e) == 0 {
            return Err(GraphError::EdgeNotInTree(e));
        }
        if !self.is_spanning_tree(t) {
            return Err(GraphError::NotATree);
        }
        let side = self.reach(self.edges[e].0, t & !bit(e));
        Ok(self.cut_of(side))
    }

    /// e in C(T,f) iff f in D(T,e), for all e in T and f outside T.
    pub fn check_duality(&self, t: EdgeSet) -> bool {
        let Some(idx) = TreeIndex::new(self, t) else {
            return false;
        };
        let cycles: Vec<(usize, EdgeSet)> = bits(self.all_edges() & !t).map(|f| (f, idx.cycle(self, f))).collect();
        bits(t).all(|e| {
            let cut = idx.cut(self, e);
            cycles.iter().all(|&(f, c)| (c & bit(e) != 0) == (cut & bit(f) != 0))
        })
    }

    /// Graph on the listed edges only, renumbered in increasing order.
    pub fn delete_edges(&self, drop: EdgeSet) -> (MultiGraph, Vec<Option<usize>>) {
        let mut map = vec![None; self.m()];
        let mut pairs = Vec::new();
        for (e, &p) in self.edges.iter().enumerate() {
            if drop & bit(e) == 0 {
                map[e] = Some(pairs.len());
                pairs.push(p);
            }
        }
        (MultiGraph::new(self.n, &pairs).expect("subgraph of a valid graph"), map)
    }

    /// G[vs] with vertices renumbered in increasing order.
    /// Returns the graph, the vertex map and the edge map.
    pub fn induced(&self, vs: VertexSet) -> (MultiGraph, Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut vmap = vec![None; self.n];
        let mut k = 0;
        for v in vbits(vs) {
            vmap[v] = Some(k);
            k += 1;
        }
        let inner = self.inner_edges(vs);
        let mut emap = vec![None; self.m()];
        let mut pairs = Vec::new();
        for e in bits(inner) {
            let (u, v) = self.edges[e];
            emap[e] = Some(pairs.len());
            pairs.push((vmap[u].unwrap(), vmap[v].unwrap()));
        }
        (MultiGraph::new(k, &pairs).expect("induced subgraph"), vmap, emap)
    }

    /// G/X: merge `xs` into its smallest member, drop edges inside X.
    /// Vertex ids are compacted; the returned map sends old edge ids to new.
    pub fn contract(&self, xs: VertexSet) -> Result<(MultiGraph, Vec<Option<usize>>), GraphError> {
        let (g, _, emap) = self.contract_full(xs)?;
        Ok((g, emap))
    }

    /// Also returns the old-to-new vertex map.
    #[allow(clippy::type_complexity)]
    pub(crate) fn contract_full(
        &self,
        xs: VertexSet,
    ) -> Result<(MultiGraph, Vec<usize>, Vec<Option<usize>>), GraphError> {
        let xs = xs & self.all_vertices();
        if xs == 0 {
            return Err(GraphError::EmptySet);
        }
        let rep = xs.trailing_zeros() as usize;
        let mut vmap = vec![0; self.n];
        let mut k = 0;
        for v in 0..self.n {
            if xs & (1 << v) != 0 && v != rep {
                vmap[v] = vmap[rep];
            } else {
                vmap[v] = k;
                k += 1;
            }
        }
        let inner = self.inner_edges(xs);
        let mut emap = vec![None; self.m()];
        let mut pairs = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if inner & bit(e) == 0 {
                emap[e] = Some(pairs.len());
                pairs.push((vmap[u], vmap[v]));
            }
        }
        Ok((MultiGraph::new(k, &pairs)?, vmap, emap))
    }

    /// Relabel vertices by `perm` (old -> new).
    pub fn relabel(&self, perm: &[usize]) -> MultiGraph {
        let pairs: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        MultiGraph::new(self.n, &pairs).expect("permutation of a valid graph")
    }

    /// (vertex connectivity, edge connectivity), each capped at 4.
    pub fn connectivity(&self) -> Result<(usize, usize), GraphError> {
        if self.n < 2 {
            return Err(GraphError::TooSmall);
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok((self.vertex_connectivity(), self.edge_connectivity()))
    }

    fn vertex_connectivity(&self) -> usize {
        let all = self.all_vertices();
        // adjacency masks of the underlying simple graph
        let adj: Vec<VertexSet> =
            (0..self.n).map(|u| self.incident[u].iter().fold(0, |a, &e| a | 1 << self.other_end(e, u))).collect();
        let splits = |removed: VertexSet| {
            let rest = all & !removed;
            if rest.count_ones() < 2 {
                return false;
            }
            let start = rest.trailing_zeros() as usize;
            let mut seen: VertexSet = 1 << start;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let fresh = adj[u] & rest & !seen;
                seen |= fresh;
                stack.extend(vbits(fresh));
            }
            seen != rest
        };
        let cap = (self.n - 1).min(4);
        for k in 1..cap.min(4) {
            if subsets(self.n, k).any(|s| splits(s as VertexSet)) {
                return k;
            }
        }
        cap
    }

    fn edge_connectivity(&self) -> usize {
        let all = self.all_edges();
        let v = self.all_vertices();
        for k in 1..4 {
            if subsets(self.m(), k).any(|s| self.reach(0, all & !s) != v) {
                return k;
            }
        }
        4
    }

    pub fn canonical_code(&self) -> Result<CanonicalCode, GraphError> {
        canonical_code(self)
    }
}

/// All subsets of `0..n` with exactly `k` members, as bitsets.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = u128> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.iter().fold(0u128, |a, &i| a | bit(i));
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Rooted view of a spanning tree for repeated cycle and cut queries.
#[derive(Clone, Debug)]
pub struct TreeIndex {
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
    below: Vec<VertexSet>,
}

impl TreeIndex {
    pub fn new(g: &MultiGraph, t: EdgeSet) -> Option<TreeIndex> {
        if !g.is_spanning_tree(t) {
            return None;
        }
        let n = g.n();
        let mut parent = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        let mut order = Vec::with_capacity(n);
        let mut seen: VertexSet = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for e in bits(g.incident_set(u) & t) {
                let w = g.other_end(e, u);
                if seen & (1 << w) == 0 {
                    seen |= 1 << w;
                    parent[w] = u;
                    parent_edge[w] = e;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        let mut below: Vec<VertexSet> = (0..n).map(|v| 1 << v).collect();
        for &u in order.iter().rev().take(n.saturating_sub(1)) {
            let p = parent[u];
            below[p] |= below[u];
        }
        Some(TreeIndex { parent, parent_edge, depth, below })
    }

    /// Tree path between `u` and `v`.
    pub fn path(&self, mut u: usize, mut v: usize) -> EdgeSet {
        let mut p = 0;
        while self.depth[u] > self.depth[v] {
            p |= bit(self.parent_edge[u]);
            u = self.parent[u];
        }
        while self.depth[v] > self.depth[u] {
            p |= bit(self.parent_edge[v]);
            v = self.parent[v];
        }
        while u != v {
            p |= bit(self.parent_edge[u]) | bit(self.parent_edge[v]);
            u = self.parent[u];
            v = self.parent[v];
        }
        p
    }

    /// C(T,e) for a non-tree edge.
    pub fn cycle(&self, g: &MultiGraph, e: usize) -> EdgeSet {
        let (u, v) = g.edge(e);
        self.path(u, v) | bit(e)
    }

    /// D(T,e) for a tree edge.
    pub fn cut(&self, g: &MultiGraph, e: usize) -> EdgeSet {
        let (u, v) = g.edge(e);
        let child = if self.parent[u] == v && self.parent_edge[u] == e { u } else { v };
        g.cut_of(self.below[child])
    }

    /// Vertices on the child side of tree edge `e`.
    pub fn side(&self, g: &MultiGraph, e: usize) -> VertexSet {
        let (u, v) = g.edge(e);
        let child = if self.parent[u] == v && self.parent_edge[u] == e { u } else { v };
        self.below[child]
    }
}

/// Byte string equal for two graphs iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub const MAX_CANON_VERTICES: usize = 24;

/// Canonical code: color refinement, then a backtracking search for the
/// lexicographically least adjacency code among orderings that respect
/// the refined cells.
pub fn canonical_code(g: &MultiGraph) -> Result<CanonicalCode, GraphError> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(GraphError::TooLarge { what: "canonical code" });
    }
    let mut adj = vec![0u8; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] += 1;
        adj[v * n + u] += 1;
    }
    let colors = refine(n, &adj, vec![0; n]);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let ncolors = colors.iter().copied().max().map_or(0, |c| c + 1);
    cells.resize(ncolors, Vec::new());
    for v in 0..n {
        cells[colors[v]].push(v);
    }
    let slot_cell: Vec<usize> = cells.iter().enumerate().flat_map(|(i, c)| std::iter::repeat_n(i, c.len())).collect();

    let mut search = Search {
        n,
        adj: &adj,
        cells: &cells,
        slot_cell: &slot_cell,
        order: Vec::with_capacity(n),
        used: 0,
        code: Vec::with_capacity(n * n / 2),
        best: None,
    };
    search.run();
    let mut out = Vec::with_capacity(2 + n * n / 2);
    out.push(n as u8);
    out.push(ncolors as u8);
    out.extend(search.best.unwrap_or_default());
    Ok(CanonicalCode(out))
}

fn refine(n: usize, adj: &[u8], mut colors: Vec<usize>) -> Vec<usize> {
    let mut count = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, u8)> =
                    (0..n).filter(|&u| adj[v * n + u] > 0).map(|u| (colors[u], adj[v * n + u])).collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<(usize, u8)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| sorted.binary_search(&s).expect("present")).collect();
        let new_count = sorted.len();
        colors = next;
        if new_count == count {
            return colors;
        }
        count = new_count;
    }
}

struct Search<'a> {
    n: usize,
    adj: &'a [u8],
    cells: &'a [Vec<usize>],
    slot_cell: &'a [usize],
    order: Vec<usize>,
    used: u64,
    code: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    fn run(&mut self) {
        let p = self.order.len();
        if p == self.n {
            if self.best.as_ref().is_none_or(|b| self.code < *b) {
                self.best = Some(self.code.clone());
            }
            return;
        }
        let cell = self.slot_cell[p];
        for i in 0..self.cells[cell].len() {
            let v = self.cells[cell][i];
            if self.used & (1 << v) != 0 {
                continue;
            }
            let mark = self.code.len();
            for &q in &self.order {
                self.code.push(self.adj[q * self.n + v]);
            }
            let keep = match &self.best {
                None => true,
                Some(b) => self.code[..] <= b[..self.code.len()],
            };
            if keep {
                self.order.push(v);
                self.used |= 1 << v;
                self.run();
                self.used &= !(1 << v);
                self.order.pop();
            }
            self.code.truncate(mark);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> MultiGraph {
        MultiGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(MultiGraph::new(2, &[(0, 0)]), Err(GraphError::LoopEdge { edge: 0, vertex: 0 }));
        assert!(matches!(MultiGraph::new(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, .. })));
        let k1 = MultiGraph::new(1, &[]).unwrap();
        assert_eq!(k1.m(), 0);
        assert!(k1.is_spanning_tree(0));
    }

    #[test]
    fn contraction_of_k4() {
        let (h, map) = k4().contract(0b11).unwrap();
        assert_eq!((h.n(), h.m()), (3, 5));
        assert_eq!(map[0], None);
        assert_eq!(map[1], Some(0));
        let (k1, _) = k4().contract(0b1111).unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));
        assert_eq!(k4().contract(0), Err(GraphError::EmptySet));
    }

    #[test]
    fn components_basic() {
        assert_eq!(k4().components().0, 1);
        let (empty, _) = k4().delete_edges(k4().all_edges());
        assert_eq!(empty.components().0, 4);
    }

    #[test]
    fn spanning_trees_of_k4() {
        let g = k4();
        assert!(g.is_spanning_tree(0b111));
        // triangle 0-1-2
        assert!(!g.is_spanning_tree(edge_set([0, 1, 3])));
    }

    #[test]
    fn cycle_and_cut_in_b2() {
        let b2 = MultiGraph::new(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(b2.fundamental_cycle(0b01, 1).unwrap(), 0b11);
        assert_eq!(b2.fundamental_cut(0b01, 0).unwrap(), 0b11);
        assert!(b2.check_duality(0b01));
        assert_eq!(b2.fundamental_cycle(0b01, 0), Err(GraphError::EdgeInTree(0)));
        assert_eq!(b2.fundamental_cut(0b01, 1), Err(GraphError::EdgeNotInTree(1)));
    }

    #[test]
    fn star_cut_in_k4() {
        let g = k4();
        let star = edge_set([0, 1, 2]);
        // cutting 0-1 isolates vertex 1: edges 0, 3 (1-2), 4 (1-3)
        assert_eq!(g.fundamental_cut(star, 0).unwrap(), edge_set([0, 3, 4]));
        assert_eq!(g.fundamental_cycle(star, 5).unwrap(), edge_set([1, 2, 5]));
    }

    #[test]
    fn tree_index_matches_direct() {
        let g = k4();
        for t in subsets(6, 3) {
            if let Some(idx) = TreeIndex::new(&g, t) {
                for e in 0..6 {
                    if t & bit(e) != 0 {
                        assert_eq!(idx.cut(&g, e), g.fundamental_cut(t, e).unwrap());
                    } else {
                        assert_eq!(idx.cycle(&g, e), g.fundamental_cycle(t, e).unwrap());
                    }
                }
                assert!(g.check_duality(t));
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(k4().connectivity().unwrap(), (3, 3));
        let b2 = MultiGraph::new(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(b2.connectivity().unwrap(), (1, 2));
        let mut pairs = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        pairs.extend([(3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]);
        let bow = MultiGraph::new(7, &pairs).unwrap();
        assert_eq!(bow.connectivity().unwrap().0, 1);
        let split = MultiGraph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(split.connectivity(), Err(GraphError::Disconnected));
    }

    #[test]
    fn canonical_code_invariance() {
        let g = k4();
        let h = g.relabel(&[2, 0, 3, 1]);
        assert_eq!(g.canonical_code(), h.canonical_code());
        let path = MultiGraph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = MultiGraph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(path.canonical_code(), star.canonical_code());
    }

    #[test]
    fn subsets_counts() {
        assert_eq!(subsets(5, 2).count(), 10);
        assert_eq!(subsets(4, 0).count(), 1);
        assert_eq!(subsets(3, 4).count(), 0);
        assert!(subsets(6, 3).all(|s| s.count_ones() == 3));
    }

    #[test]
    fn excess_counts_parallel_edges() {
        let g = MultiGraph::new(3, &[(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.excess(), 2);
        assert!(!g.is_simple());
        assert!(k4().is_simple());
    }
}
