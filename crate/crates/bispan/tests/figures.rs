use std::collections::BTreeSet;

use bispan::catalog::{drawn_coloring, named_graph, names};
use bispan::exchange::{path_count, PathConvention};
use bispan::game::{new_game, Phase, Policy};
use bispan::graph::{bit, bits, EdgeSet};
use bispan::{MultiGraph, TreePair};

fn is_tree(g: &MultiGraph, t: EdgeSet) -> bool {
    // Plain union by relabeling, independent of the crate's tree routines.
    let mut label: Vec<usize> = (0..g.n()).collect();
    for e in bits(t) {
        let (u, v) = g.edge(e);
        let (a, b) = (label[u], label[v]);
        if a == b {
            return false;
        }
        for l in label.iter_mut() {
            if *l == b {
                *l = a;
            }
        }
    }
    t.count_ones() as usize + 1 == g.n()
}

/// Pairs reachable by one unique exchange, found by trying every swap.
fn unique_neighbors(g: &MultiGraph, s: EdgeSet) -> BTreeSet<EdgeSet> {
    let all = g.all_edges();
    let t = all & !s;
    let mut out = BTreeSet::new();
    for e in 0..g.m() {
        let (own, other) = if s & bit(e) != 0 { (s, t) } else { (t, s) };
        let partners: Vec<usize> =
            bits(other).filter(|&f| is_tree(g, own ^ bit(e) ^ bit(f)) && is_tree(g, other ^ bit(e) ^ bit(f))).collect();
        if let [f] = partners[..] {
            out.insert(s ^ bit(e) ^ bit(f));
        }
    }
    out
}

/// Distinct pair sequences of length m from s to its complement.
fn count_paths(g: &MultiGraph, s: EdgeSet, goal: EdgeSet, depth: usize) -> u128 {
    if depth == 0 {
        return u128::from(s == goal);
    }
    unique_neighbors(g, s)
        .into_iter()
        .filter(|&q| (q & goal).count_ones() == (s & goal).count_ones() + 1)
        .map(|q| count_paths(g, q, goal, depth - 1))
        .sum()
}

fn brute_paths(g: &MultiGraph, tp: TreePair) -> u128 {
    count_paths(g, tp.s, tp.t, g.m() / 2)
}

#[test]
fn path_counts_match_brute_force() {
    for name in ["K4", "B3,2", "W5 (difficult)", "W5 (uecbo figure)", "B6,12 (difficult)", "B7,1"] {
        let (g, tp) = named_graph(name).unwrap();
        assert_eq!(path_count(&g, tp, PathConvention::Collapsed).unwrap(), brute_paths(&g, tp), "{name}");
    }
}

#[test]
fn drawn_difficult_pairs() {
    let (g, tp) = named_graph("K4 (difficult)").unwrap();
    assert_eq!(brute_paths(&g, tp), 8);
    let (g, tp) = named_graph("W5 (difficult)").unwrap();
    assert_eq!(brute_paths(&g, tp), 24);
    let (g, tp) = named_graph("B7,1").unwrap();
    assert_eq!(brute_paths(&g, tp), 84);
}

#[test]
fn every_entry_is_a_valid_pair() {
    for name in names() {
        let (g, tp) = named_graph(name).unwrap();
        assert!(tp.is_valid(&g), "{name}");
        assert_eq!(g.m() + 2, 2 * g.n().max(1), "{name}");
    }
}

fn neighbors(g: &MultiGraph, v: usize) -> BTreeSet<usize> {
    g.incident(v).iter().map(|&e| g.other_end(e, v)).collect()
}

#[test]
fn b7_1_is_triangle_free() {
    let (g, _) = named_graph("B7,1").unwrap();
    assert_eq!((g.n(), g.m()), (7, 12));
    assert!(g.is_simple());
    for (u, v) in g.edges().iter().copied() {
        assert!(neighbors(&g, u).is_disjoint(&neighbors(&g, v)));
    }
}

#[test]
fn b18_1_is_square_free() {
    let (g, tp) = named_graph("B18,1").unwrap();
    assert_eq!((g.n(), g.m()), (18, 34));
    assert!(g.is_simple());
    assert!(bispan::bispanning::is_bispanning(&g));
    assert!(TreePair::from_coloring(&g, &drawn_coloring("B18,1").unwrap()).is_ok());
    assert!(tp.is_valid(&g));
    // A 4-cycle is two vertices with two common neighbors.
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            assert!(neighbors(&g, u).intersection(&neighbors(&g, v)).count() <= 1, "{u} {v}");
        }
    }
}

#[test]
fn game_figure_round_is_forced() {
    let (g, tp) = named_graph("game figure").unwrap();
    assert_eq!(g.edge(0), (0, 3));
    assert_eq!(g.edge(12), (3, 7));
    let s = new_game(&g, tp, Policy::Adversarial).unwrap().alice_flip(0).unwrap();
    let p = s.pending.unwrap();
    assert!(p.forced());
    assert_eq!(p.candidates, bit(12));
    let (f, s) = s.bob_auto().unwrap();
    assert_eq!(f, 12);
    assert_eq!(s.phase, Phase::AliceTurn);
}

#[test]
fn exchange_figure_candidates() {
    // Drawn labels start at 1, so label k is edge id k - 1.
    let (g, tp) = named_graph("exchange figure").unwrap();
    assert!(TreePair::from_coloring(&g, &drawn_coloring("exchange figure").unwrap()).is_ok());
    let s = new_game(&g, tp, Policy::Adversarial).unwrap();
    let three = s.alice_flip(9).unwrap();
    assert_eq!(three.pending.unwrap().candidates, bit(10) | bit(13) | bit(14));
    // Every fix leaves m - 2 edges on their starting color, so the lowest id wins.
    for f in [10, 13, 14] {
        let after = three.bob_fix(f).unwrap();
        let kept = (after.pair.s & tp.s).count_ones() + (after.pair.t & tp.t).count_ones();
        assert_eq!(kept as usize, g.m() - 2);
    }
    assert_eq!(three.bob_auto().unwrap().0, 10);
    let forced = s.alice_flip(1).unwrap();
    assert_eq!(forced.pending.unwrap().candidates, bit(3));
}

#[test]
fn hints_lead_to_a_win() {
    let (g, tp) = named_graph("W5 (uecbo figure)").unwrap();
    let mut s = new_game(&g, tp, Policy::Adversarial).unwrap();
    for round in 0..4 {
        let e = s.hint().expect("a winning line exists");
        let flipped = s.alice_flip(e).unwrap();
        assert!(flipped.pending.unwrap().forced());
        s = flipped.bob_auto().unwrap().1;
        let left = 3 - round;
        assert_eq!(s.target_distance(), left);
        assert!(count_paths(&g, s.pair.s, tp.t, left) > 0);
    }
    assert_eq!(s.phase, Phase::Won);
    assert_eq!(s.hint(), None);
}

#[test]
fn one_swap_left_hint_closes() {
    let (g, tp) = named_graph("W5 (uecbo figure)").unwrap();
    let mut s = new_game(&g, tp, Policy::Manual).unwrap();
    for (e, f) in [(0, 7), (1, 3), (2, 4)] {
        s = s.alice_flip(e).unwrap().bob_fix(f).unwrap();
    }
    assert_eq!(s.hint(), Some(6));
    let s = s.alice_flip(6).unwrap().bob_fix(5).unwrap();
    assert_eq!(s.phase, Phase::Won);
    assert_eq!(s.moves(), 4);
}
