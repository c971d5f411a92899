//! Building tau3 of a graph from tau3 of smaller pieces, checked against the direct construction.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::bispanning::{
    clique2_sum_mapped, is_bispanning, reduce_deg3, BispanError, CliqueSum, Reduction, Side, TreePair,
};
use crate::exchange::{build_tau_with, ExchangeArc, ExchangeError, ExchangeGraph, Form, PairView, Variant};
use crate::graph::{bit, bits, vbits, EdgeSet, MultiGraph, VertexSet};
use crate::par::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("exchange graphs have different forms")]
    FormMismatch,
    #[error("the induced subgraph is not a non-trivial bispanning graph")]
    NotBispanningSubgraph,
    #[error("isomorphism check failed: {0}")]
    IsoCheckFailed(String),
    #[error("seam edges do not match: {0}")]
    SeamMismatch(String),
    #[error("composition differs from direct construction: {0}")]
    CompositionMismatch(String),
    #[error(transparent)]
    Bispan(#[from] BispanError),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
}

fn map_set(s: EdgeSet, map: &[Option<usize>]) -> EdgeSet {
    bits(s).filter_map(|e| map[e]).fold(0, |acc, x| acc | bit(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Factor {
    A,
    B,
}

/// Arc of a Cartesian product: one factor moves along `arc`, the other stays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductArc {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub factor: Factor,
    /// Index into the arcs of that factor.
    pub arc: usize,
}

#[derive(Clone, Debug)]
pub struct ProductGraph {
    pub form: Form,
    pub sizes: (usize, usize),
    pub arcs: Vec<ProductArc>,
}

impl ProductGraph {
    pub fn vertex_count(&self) -> usize {
        self.sizes.0 * self.sizes.1
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.len()
    }
}

pub fn cartesian_product(a: &ExchangeGraph, b: &ExchangeGraph) -> Result<ProductGraph, ComposeError> {
    if a.form != b.form {
        return Err(ComposeError::FormMismatch);
    }
    let (na, nb) = (a.vertex_count(), b.vertex_count());
    let mut arcs = Vec::with_capacity(a.arcs.len() * nb + na * b.arcs.len());
    for (i, x) in a.arcs.iter().enumerate() {
        for w in 0..nb {
            arcs.push(ProductArc { from: (x.from, w), to: (x.to, w), factor: Factor::A, arc: i });
        }
    }
    for (i, x) in b.arcs.iter().enumerate() {
        for u in 0..na {
            arcs.push(ProductArc { from: (u, x.from), to: (u, x.to), factor: Factor::B, arc: i });
        }
    }
    Ok(ProductGraph { form: a.form, sizes: (na, nb), arcs })
}

/// Explicit isomorphism from tau3(G) onto tau3(G') x tau3(G/G').
#[derive(Clone, Debug)]
pub struct TauIsomorphism {
    /// Pair index of G to (index in G', index in G/G').
    pub vertex_map: Vec<(usize, usize)>,
    /// Arc index of G to product arc index.
    pub arc_map: Vec<usize>,
    pub product: ProductGraph,
}

pub fn verify_composite_decomposition(g: &MultiGraph, sub: VertexSet) -> Result<TauIsomorphism, ComposeError> {
    verify_composite_decomposition_with(g, sub, Exec::default())
}

pub fn verify_composite_decomposition_with(
    g: &MultiGraph,
    sub: VertexSet,
    exec: Exec,
) -> Result<TauIsomorphism, ComposeError> {
    let k = sub.count_ones() as usize;
    if k < 2 || k >= g.n() || sub >> g.n() != 0 {
        return Err(ComposeError::NotBispanningSubgraph);
    }
    let (inner, _, emap_in) = g.induced(sub);
    if !is_bispanning(&inner) {
        return Err(ComposeError::NotBispanningSubgraph);
    }
    let (outer, emap_out) = g.contract(sub).map_err(BispanError::from)?;
    let fail = |s: String| ComposeError::IsoCheckFailed(s);
    let whole = build_tau_with(g, Variant::Tau3, Form::Directed, exec)?;
    let ta = build_tau_with(&inner, Variant::Tau3, Form::Directed, exec)?;
    let tb = build_tau_with(&outer, Variant::Tau3, Form::Directed, exec)?;
    let product = cartesian_product(&ta, &tb)?;
    if whole.vertex_count() != product.vertex_count() {
        return Err(fail(format!("{} pairs vs {} x {}", whole.vertex_count(), ta.vertex_count(), tb.vertex_count())));
    }
    let mut vertex_map = Vec::with_capacity(whole.vertex_count());
    let mut seen = HashSet::new();
    for &s in &whole.vertices {
        let a = ta.index.get(&map_set(s, &emap_in));
        let b = tb.index.get(&map_set(s, &emap_out));
        let (Some(&a), Some(&b)) = (a, b) else {
            return Err(fail(format!("pair {s:#x} does not split")));
        };
        if !seen.insert((a, b)) {
            return Err(fail(format!("pair {s:#x} collides")));
        }
        vertex_map.push((a, b));
    }
    let arc_key = |f: Factor, i: usize, other: usize| (f, i, other);
    let mut product_index: HashMap<(Factor, usize, usize), usize> = HashMap::new();
    for (j, p) in product.arcs.iter().enumerate() {
        let other = if p.factor == Factor::A { p.from.1 } else { p.from.0 };
        product_index.insert(arc_key(p.factor, p.arc, other), j);
    }
    let label_a: HashMap<(usize, usize, usize), usize> =
        ta.arcs.iter().enumerate().map(|(i, x)| ((x.from, x.e, x.f), i)).collect();
    let label_b: HashMap<(usize, usize, usize), usize> =
        tb.arcs.iter().enumerate().map(|(i, x)| ((x.from, x.e, x.f), i)).collect();
    let mut arc_map = Vec::with_capacity(whole.arcs.len());
    let mut used = HashSet::new();
    for x in &whole.arcs {
        let (a, b) = vertex_map[x.from];
        let hit = match ((emap_in[x.e], emap_in[x.f]), (emap_out[x.e], emap_out[x.f])) {
            ((Some(e), Some(f)), _) => label_a.get(&(a, e, f)).map(|&i| arc_key(Factor::A, i, b)),
            (_, (Some(e), Some(f))) => label_b.get(&(b, e, f)).map(|&i| arc_key(Factor::B, i, a)),
            _ => return Err(fail(format!("exchange ({},{}) crosses the subgraph", x.e, x.f))),
        };
        let Some(j) = hit.and_then(|key| product_index.get(&key).copied()) else {
            return Err(fail(format!("exchange ({},{}) has no factor image", x.e, x.f)));
        };
        let p = product.arcs[j];
        if vertex_map[x.to] != p.to {
            return Err(fail(format!("exchange ({},{}) lands elsewhere", x.e, x.f)));
        }
        used.insert(j);
        arc_map.push(j);
    }
    if used.len() != product.arcs.len() || arc_map.len() != product.arcs.len() {
        return Err(fail(format!("{} arcs vs {} product arcs", whole.arcs.len(), product.arcs.len())));
    }
    Ok(TauIsomorphism { vertex_map, arc_map, product })
}

/// Proper non-trivial vertex sets inducing a bispanning subgraph.
pub fn bispanning_subsets(g: &MultiGraph) -> Vec<VertexSet> {
    let n = g.n();
    (1u64..(1 << n) - 1).filter(|&s| s.count_ones() >= 2 && is_bispanning(&g.induced(s).0)).collect()
}

/// Join of directed tau3 of the 2-sum parts; vertices and labels use the sum's edge ids.
pub fn eta_join(
    t1: &ExchangeGraph,
    d1: usize,
    t2: &ExchangeGraph,
    d2: usize,
    sum: &CliqueSum,
) -> Result<ExchangeGraph, ComposeError> {
    if t1.form != Form::Directed || t2.form != Form::Directed {
        return Err(ComposeError::FormMismatch);
    }
    if d1 >= sum.map1.len() || sum.map1[d1].is_some() || d2 >= sum.map2.len() || sum.map2[d2].is_some() {
        return Err(ComposeError::SeamMismatch(format!("({d1},{d2}) are not the summed edges")));
    }
    let m1 = |e: usize| sum.map1[e].expect("non-seam");
    let m2 = |e: usize| sum.map2[e].expect("non-seam");
    let out1 = t1.out_lists();
    let out2 = t2.out_lists();
    let mut vertices = Vec::new();
    let mut labeled = Vec::new();
    for (&s1, arcs1) in t1.vertices.iter().zip(&out1) {
        for (&s2, arcs2) in t2.vertices.iter().zip(&out2) {
            if (s1 & bit(d1) != 0) == (s2 & bit(d2) != 0) {
                continue;
            }
            let s = map_set(s1, &sum.map1) | map_set(s2, &sum.map2);
            vertices.push(s);
            for a in arcs1 {
                if a.e != d1 && a.f != d1 {
                    labeled.push((s, m1(a.e), m1(a.f), a.kind));
                } else if a.f == d1 {
                    for b in arcs2.iter().filter(|b| b.e == d2) {
                        labeled.push((s, m1(a.e), m2(b.f), a.kind));
                    }
                }
            }
            for b in arcs2 {
                if b.e != d2 && b.f != d2 {
                    labeled.push((s, m2(b.e), m2(b.f), b.kind));
                } else if b.f == d2 {
                    for a in arcs1.iter().filter(|a| a.e == d1) {
                        labeled.push((s, m2(b.e), m1(a.f), b.kind));
                    }
                }
            }
        }
    }
    Ok(ExchangeGraph::from_labeled(Variant::Tau3, sum.graph.all_edges(), vertices, labeled))
}

/// Verification outcome in the shape emitted by the CLI and HTTP API.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComposeReport {
    pub theorem: String,
    pub graph: String,
    pub status: String,
    pub counts: BTreeMap<String, usize>,
}

impl ComposeReport {
    pub fn ok(&self) -> bool {
        self.status == "ok"
    }
}

fn same_graph(a: &ExchangeGraph, b: &ExchangeGraph) -> Result<(), String> {
    let va: HashSet<EdgeSet> = a.vertices.iter().copied().collect();
    let vb: HashSet<EdgeSet> = b.vertices.iter().copied().collect();
    if va != vb {
        return Err(format!("{} vs {} pairs", a.vertex_count(), b.vertex_count()));
    }
    let (la, lb) = (a.labeled_arcs(), b.labeled_arcs());
    if la.len() != a.arcs.len() || la != lb {
        return Err(format!("{} vs {} arcs", a.arcs.len(), b.arcs.len()));
    }
    Ok(())
}

/// Join tau3 of both parts and compare with tau3 of their 2-clique sum.
pub fn verify_eta_join(
    g1: &MultiGraph,
    d1: usize,
    g2: &MultiGraph,
    d2: usize,
    orientation: bool,
) -> Result<(CliqueSum, ExchangeGraph), ComposeError> {
    let sum = clique2_sum_mapped(g1, d1, g2, d2, orientation)?;
    let exec = Exec::default();
    let t1 = build_tau_with(g1, Variant::Tau3, Form::Directed, exec)?;
    let t2 = build_tau_with(g2, Variant::Tau3, Form::Directed, exec)?;
    let joined = eta_join(&t1, d1, &t2, d2, &sum)?;
    let direct = build_tau_with(&sum.graph, Variant::Tau3, Form::Directed, exec)?;
    same_graph(&joined, &direct).map_err(ComposeError::IsoCheckFailed)?;
    Ok((sum, joined))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcClass {
    Lifted,
    Leaf,
    Forwarded,
    Extra,
}

/// Which of the two break conditions failed a reduction-graph exchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BrokenArc {
    /// Index of the reduction: 0 = G_xy, 1 = G_xz, 2 = G_yz.
    pub reduction: usize,
    /// Host pair the exchange would start from.
    pub pair: EdgeSet,
    pub e: usize,
    pub f: usize,
    /// Side holding the split edge in the reduction graph.
    pub split_side: Side,
}

#[derive(Clone, Debug)]
pub struct Deg3Composition {
    pub v: usize,
    pub tau: ExchangeGraph,
    pub classes: HashMap<(EdgeSet, usize, usize), ArcClass>,
    pub broken: Vec<BrokenArc>,
}

impl Deg3Composition {
    pub fn counts(&self) -> BTreeMap<String, usize> {
        let mut c = BTreeMap::new();
        for k in ["lifted", "leaf", "forwarded", "extra"] {
            c.insert(k.to_string(), 0);
        }
        for class in self.classes.values() {
            let key = serde_json::to_value(class).expect("enum").as_str().expect("string").to_string();
            *c.get_mut(&key).expect("known") += 1;
        }
        c.insert("broken".into(), self.broken.len());
        c
    }
}

type Labeled = (EdgeSet, usize, usize, Side);

struct PerPair {
    arcs: Vec<(Labeled, ArcClass)>,
    broken: Vec<BrokenArc>,
}

/// Cycle edge of v for a host pair: the doubled edge on the cycle closed by the attachment edge.
fn cycle_edge(g: &MultiGraph, tp: TreePair, r: &Reduction) -> usize {
    let (own, _) = tp.split_for(r.ea);
    let cyc = g.fundamental_cycle(own, r.ec).expect("attachment edge outside the doubled tree");
    if cyc & bit(r.ea) != 0 {
        r.ea
    } else {
        r.eb
    }
}

fn classify_reduction_pair(
    g: &MultiGraph,
    idx: usize,
    r: &Reduction,
    tr: &ExchangeGraph,
    out: &[ExchangeArc],
    p: usize,
) -> PerPair {
    let local = tr.pair(p);
    let host = r.lift(local);
    let rview = PairView::new(&r.graph, local);
    let hview = PairView::new(g, host);
    let split_side = local.side(r.split);
    // e in D_{G_ab}(X, split), C_G(Y + e_c, e_a), C_G(Y + e_c, e_b), X the split's tree.
    let split_cut = rview.cut(r.split);
    let cyc_a = hview.cycle(r.ea);
    let cyc_b = hview.cycle(r.eb);
    let host_of = |e: usize| r.back[e].expect("non-split");
    let mut arcs = Vec::new();
    let mut broken = Vec::new();
    for a in out {
        if a.e == r.split {
            continue;
        }
        if a.f == r.split {
            let e = host_of(a.e);
            let cut = hview.cut(e);
            let e2 = if cut & bit(r.ea) != 0 { r.ea } else { r.eb };
            arcs.push(((host.s, e, e2, a.kind), ArcClass::Forwarded));
            let after = host.s ^ bit(e) ^ bit(e2);
            arcs.push(((after, e2, e, a.kind), ArcClass::Forwarded));
            continue;
        }
        let (e, f) = (host_of(a.e), host_of(a.f));
        if split_cut & bit(a.e) != 0 && cyc_a & bit(e) != 0 && cyc_b & bit(e) != 0 {
            broken.push(BrokenArc { reduction: idx, pair: host.s, e, f, split_side });
        } else {
            arcs.push(((host.s, e, f, a.kind), ArcClass::Lifted));
        }
    }
    let ce = cycle_edge(g, host, r);
    arcs.push(((host.s, r.ec, ce, host.side(r.ec)), ArcClass::Leaf));
    if hview.unique(ce) == Some(r.ec) {
        arcs.push(((host.s, ce, r.ec, host.side(ce)), ArcClass::Extra));
    }
    PerPair { arcs, broken }
}

/// tau3(G) from the three reductions at a degree-3 vertex v.
pub fn compose_deg3(g: &MultiGraph, v: usize) -> Result<Deg3Composition, ComposeError> {
    compose_deg3_with(g, v, Exec::default())
}

pub fn compose_deg3_with(g: &MultiGraph, v: usize, exec: Exec) -> Result<Deg3Composition, ComposeError> {
    let red = reduce_deg3(g, v)?;
    let mut vertices = Vec::new();
    let mut classes: HashMap<(EdgeSet, usize, usize), ArcClass> = HashMap::new();
    let mut labeled = Vec::new();
    let mut broken = Vec::new();
    for (idx, r) in red.reductions.iter().enumerate() {
        let tr = build_tau_with(&r.graph, Variant::Tau3, Form::Directed, exec)?;
        let outs = tr.out_lists();
        let ids: Vec<usize> = (0..tr.vertex_count()).collect();
        let parts = par::map(exec, &ids, |&p| classify_reduction_pair(g, idx, r, &tr, &outs[p], p));
        for p in 0..tr.vertex_count() {
            vertices.push(r.lift(tr.pair(p)).s);
        }
        for part in parts {
            broken.extend(part.broken);
            for (lab, class) in part.arcs {
                let key = (lab.0, lab.1, lab.2);
                match classes.get(&key) {
                    None => {
                        classes.insert(key, class);
                        labeled.push(lab);
                    }
                    Some(&old) if old == class && class == ArcClass::Forwarded => {}
                    Some(&old) => {
                        return Err(ComposeError::CompositionMismatch(format!(
                            "exchange ({},{}) classified {old:?} and {class:?}",
                            lab.1, lab.2
                        )))
                    }
                }
            }
        }
    }
    let tau = ExchangeGraph::from_labeled(Variant::Tau3, g.all_edges(), vertices, labeled);
    Ok(Deg3Composition { v, tau, classes, broken })
}

/// Compose at v and compare with the direct tau3, including every broken verdict.
pub fn verify_deg3(g: &MultiGraph, v: usize) -> Result<Deg3Composition, ComposeError> {
    let exec = Exec::default();
    let comp = compose_deg3_with(g, v, exec)?;
    let direct = build_tau_with(g, Variant::Tau3, Form::Directed, exec)?;
    same_graph(&comp.tau, &direct).map_err(ComposeError::CompositionMismatch)?;
    let all = g.all_edges();
    for b in &comp.broken {
        let tp = TreePair { s: b.pair, t: all & !b.pair };
        if PairView::new(g, tp).unique(b.e) == Some(b.f) {
            return Err(ComposeError::CompositionMismatch(format!("({},{}) reported broken but is unique", b.e, b.f)));
        }
    }
    Ok(comp)
}

/// Every arc of the direct tau3 with its class.
/// Direct tau3 arcs with their class, plus the broken reduction arcs.
pub type Deg3Classes = (Vec<(ExchangeArc, ArcClass)>, Vec<BrokenArc>);

pub fn deg3_classify(g: &MultiGraph, v: usize) -> Result<Deg3Classes, ComposeError> {
    let comp = verify_deg3(g, v)?;
    let direct = build_tau_with(g, Variant::Tau3, Form::Directed, Exec::default())?;
    let arcs = direct.arcs.iter().map(|a| (*a, comp.classes[&(direct.vertices[a.from], a.e, a.f)])).collect();
    Ok((arcs, comp.broken))
}

pub fn deg3_report(name: &str, g: &MultiGraph, v: usize) -> ComposeReport {
    let (status, counts) = match verify_deg3(g, v) {
        Ok(c) => ("ok".to_string(), c.counts()),
        Err(e) => (e.to_string(), BTreeMap::new()),
    };
    ComposeReport { theorem: "deg3".into(), graph: name.into(), status, counts }
}

pub fn composite_report(name: &str, g: &MultiGraph, sub: VertexSet) -> ComposeReport {
    let (status, counts) = match verify_composite_decomposition(g, sub) {
        Ok(iso) => {
            let mut c = BTreeMap::new();
            c.insert("vertices".into(), iso.vertex_map.len());
            c.insert("arcs".into(), iso.arc_map.len());
            c.insert("factor_a".into(), iso.product.sizes.0);
            c.insert("factor_b".into(), iso.product.sizes.1);
            ("ok".to_string(), c)
        }
        Err(e) => (e.to_string(), BTreeMap::new()),
    };
    let mut counts = counts;
    counts.insert("subset_size".into(), vbits(sub).count());
    ComposeReport { theorem: "composite".into(), graph: name.into(), status, counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::build_tau;

    fn k4() -> MultiGraph {
        MultiGraph::new(4, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]).unwrap()
    }

    fn b2() -> MultiGraph {
        MultiGraph::new(2, &[(0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn product_sizes() {
        let a = build_tau(&k4(), Variant::Tau3, Form::Directed).unwrap();
        let b = build_tau(&b2(), Variant::Tau3, Form::Directed).unwrap();
        let p = cartesian_product(&a, &b).unwrap();
        assert_eq!(p.vertex_count(), 24);
        assert_eq!(p.edge_count(), a.arcs.len() * 2 + 12 * b.arcs.len());
        let k1 = build_tau(&MultiGraph::new(1, &[]).unwrap(), Variant::Tau3, Form::Directed).unwrap();
        let q = cartesian_product(&a, &k1).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count()), (12, a.arcs.len()));
        let u = build_tau(&b2(), Variant::Tau3, Form::Undirected).unwrap();
        assert_eq!(cartesian_product(&a, &u).unwrap_err(), ComposeError::FormMismatch);
    }

    #[test]
    fn k4_deg3_composes() {
        let comp = verify_deg3(&k4(), 0).unwrap();
        assert_eq!(comp.tau.vertex_count(), 12);
        let c = comp.counts();
        assert_eq!(c.values().sum::<usize>() - c["broken"], comp.tau.arcs.len());
    }

    #[test]
    fn composite_with_parallel_pair() {
        // B2 glued onto a triangle-with-double-edge.
        let g = MultiGraph::new(3, &[(0, 1), (0, 1), (1, 2), (0, 2)]).unwrap();
        let iso = verify_composite_decomposition(&g, 0b011).unwrap();
        assert_eq!(iso.vertex_map.len(), 4);
        assert_eq!(verify_composite_decomposition(&g, 0b110).unwrap_err(), ComposeError::NotBispanningSubgraph);
    }
}
