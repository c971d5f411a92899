use proptest::prelude::*;

use bispan::bispanning::{brute_force_pairs, double_attach, edge_split_attach, verify_bispanning};
use bispan::exchange::{
    apply_exchange, build_tau, build_tau_with, enumerate_tree_pairs, enumerate_tree_pairs_with, leaf_unique_exchanges,
    unique_exchange, Form, Variant,
};
use bispan::format::{parse_edge_list, write_edge_list, EdgeList};
use bispan::game::{new_game, Phase, Policy};
use bispan::graph::{bit, bits, TreeIndex};
use bispan::ordering::{build_cbo, find_uecbo, reverse_uecbo, verify_cbo, verify_uecbo};
use bispan::{find_two_trees, Exec, MultiGraph, TreePair};

/// Grows a bispanning graph from K1 with the two attach operations.
fn grow(ops: &[(bool, usize, usize)]) -> (MultiGraph, TreePair) {
    let mut g = MultiGraph::new(1, &[]).unwrap();
    let mut tp = TreePair { s: 0, t: 0 };
    for &(double, a, b) in ops {
        let n = g.n();
        (g, tp) = if double || g.m() == 0 {
            double_attach(&g, tp, a % n, b % n).unwrap()
        } else {
            edge_split_attach(&g, tp, a % g.m(), b % n).unwrap()
        };
    }
    (g, tp)
}

fn graphs(max_n: usize) -> impl Strategy<Value = (MultiGraph, TreePair)> {
    prop::collection::vec((any::<bool>(), 0usize..64, 0usize..64), 1..max_n).prop_map(|ops| grow(&ops))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grown_graphs_are_bispanning((g, tp) in graphs(8)) {
        prop_assert!(tp.is_valid(&g));
        let found = find_two_trees(&g, &[]).expect("bispanning");
        prop_assert!(found.is_valid(&g));
        prop_assert!(verify_bispanning(&g).unwrap());
    }

    #[test]
    fn precoloring_is_kept_when_valid((g, tp) in graphs(8)) {
        let coloring = tp.coloring(g.m());
        prop_assert_eq!(find_two_trees(&g, &coloring), Some(tp));
    }

    #[test]
    fn unique_exchanges_reverse((g, tp) in graphs(8)) {
        for e in 0..g.m() {
            if let Some(f) = unique_exchange(&g, tp, e) {
                let next = apply_exchange(&g, tp, e, f).unwrap();
                prop_assert!(next.is_valid(&g));
                prop_assert_eq!(unique_exchange(&g, next, f), Some(e));
                prop_assert_eq!(apply_exchange(&g, next, f, e).unwrap(), tp);
            }
        }
    }

    #[test]
    fn tau3_arcs_have_twins((g, _) in graphs(7)) {
        let x = build_tau(&g, Variant::Tau3, Form::Directed).unwrap();
        let arcs = x.labeled_arcs();
        for &(s, e, f) in &arcs {
            prop_assert!(arcs.contains(&(s ^ bit(e) ^ bit(f), f, e)));
        }
    }

    #[test]
    fn tau_variants_nest((g, _) in graphs(7)) {
        let t2 = build_tau(&g, Variant::Tau2, Form::Directed).unwrap().labeled_arcs();
        let t3 = build_tau(&g, Variant::Tau3, Form::Directed).unwrap().labeled_arcs();
        let t4 = build_tau(&g, Variant::Tau4, Form::Directed).unwrap().labeled_arcs();
        prop_assert!(t4.is_subset(&t3));
        prop_assert!(t3.is_subset(&t2));
    }

    #[test]
    fn leaf_exchanges_give_degree_four((g, tp) in graphs(8)) {
        prop_assume!(g.n() >= 3);
        let leaves = leaf_unique_exchanges(&g, tp);
        prop_assert!(leaves.len() >= 4);
        for sw in leaves {
            prop_assert_eq!(unique_exchange(&g, tp, sw.e), Some(sw.f));
        }
        let x = build_tau(&g, Variant::Tau3, Form::Undirected).unwrap();
        prop_assert!(x.degree_range().0 >= 4);
    }

    #[test]
    fn tree_pairs_match_brute_force((g, _) in graphs(6)) {
        let mut brute = brute_force_pairs(&g);
        let mut closure = enumerate_tree_pairs(&g).unwrap();
        brute.sort_unstable();
        closure.sort_unstable();
        prop_assert_eq!(brute, closure);
    }

    #[test]
    fn sequential_matches_parallel((g, _) in graphs(8)) {
        prop_assert_eq!(
            enumerate_tree_pairs_with(&g, Exec::Seq).unwrap(),
            enumerate_tree_pairs_with(&g, Exec::Par).unwrap()
        );
        let a = build_tau_with(&g, Variant::Tau3, Form::Directed, Exec::Seq).unwrap();
        let b = build_tau_with(&g, Variant::Tau3, Form::Directed, Exec::Par).unwrap();
        prop_assert_eq!(a.arcs, b.arcs);
        prop_assert_eq!(a.vertices, b.vertices);
    }

    #[test]
    fn cycles_and_cuts_are_dual((g, tp) in graphs(10)) {
        prop_assert!(g.check_duality(tp.s));
        let idx = TreeIndex::new(&g, tp.s).unwrap();
        for f in bits(tp.t) {
            let cycle = g.fundamental_cycle(tp.s, f).unwrap();
            prop_assert_eq!(cycle, idx.cycle(&g, f));
            for e in bits(tp.s) {
                let cut = g.fundamental_cut(tp.s, e).unwrap();
                prop_assert_eq!(cycle & bit(e) != 0, cut & bit(f) != 0);
            }
        }
    }

    #[test]
    fn edge_list_round_trips((g, tp) in graphs(10)) {
        let list = EdgeList::with_pair(g, tp);
        let text = write_edge_list(&list);
        prop_assert_eq!(parse_edge_list(&text).unwrap(), list);
    }

    #[test]
    fn orderings_verify((g, tp) in graphs(7)) {
        let cbo = build_cbo(&g, tp).unwrap();
        prop_assert!(verify_cbo(&g, &cbo).unwrap());
        if let Some(seq) = find_uecbo(&g, tp).unwrap() {
            prop_assert!(verify_uecbo(&g, &seq));
            prop_assert!(verify_cbo(&g, &seq).unwrap());
            prop_assert!(verify_uecbo(&g, &reverse_uecbo(&g, &seq).unwrap()));
        }
    }

    #[test]
    fn random_play_keeps_trees(((g, tp), moves) in (graphs(8), prop::collection::vec(0usize..64, 1..12))) {
        let mut s = new_game(&g, tp, Policy::Random { seed: 5 }).unwrap();
        for e in moves {
            if s.phase == Phase::Won {
                break;
            }
            let (_, next) = s.alice_flip(e % g.m()).unwrap().bob_auto().unwrap();
            prop_assert!(next.pair.is_valid(&g));
            prop_assert_eq!(next.undo().unwrap().pair, s.pair);
            s = next;
        }
    }

    #[test]
    fn forced_games_are_uecbos((g, tp) in graphs(7)) {
        let Some(seq) = find_uecbo(&g, tp).unwrap() else { return Ok(()) };
        let mut s = new_game(&g, tp, Policy::Adversarial).unwrap();
        for &(e, f) in &seq.swaps {
            let flipped = s.alice_flip(e).unwrap();
            prop_assert!(flipped.pending.unwrap().forced());
            let (bob, next) = flipped.bob_auto().unwrap();
            prop_assert_eq!(bob, f);
            s = next;
        }
        prop_assert_eq!(s.phase, Phase::Won);
        let replay = bispan::ordering::SwapSequence { start: tp, swaps: s.history.clone() };
        prop_assert!(verify_uecbo(&g, &replay));
    }
}
