//! Route-versus-route checks: closed-form capacities against exhaustive min
//! cuts of the expected graphs, and the line-scan normalizer against the
//! direct sum. The full-scale sweeps live in the acceptance suite; these are
//! the fast developer versions plus the structural claims.

use swcap_core::bounds::{cw_kleinberg_with, cw_navigable_ring, cw_shortcuts, Eq1Range};
use swcap_core::expectation::{
    expected_graph_kleinberg, expected_graph_navigable_ring, expected_graph_shortcuts,
    kleinberg_normalizer, kleinberg_normalizer_bruteforce, s_corner_closed_form, NormalizerTable,
};
use swcap_core::generators::{KleinbergParams, NavigableRingParams, ShortcutParams};
use swcap_core::mincut::brute_force_min_cut;

#[test]
fn shortcut_capacity_matches_expected_graph_oracle() {
    for n in [8usize, 10, 13] {
        for k in [2usize, 4] {
            for p in [0.0, 0.25, 0.5, 1.0] {
                let params = ShortcutParams::new(n, k, p).unwrap();
                let formula = cw_shortcuts(&params).unwrap();
                let g = expected_graph_shortcuts(&params).unwrap();
                let oracle = brute_force_min_cut(&g).unwrap().value;
                assert!(
                    (formula - oracle).abs() <= 1e-9,
                    "n={n} k={k} p={p}: formula={formula} oracle={oracle}"
                );
            }
        }
    }
}

#[test]
fn kleinberg_capacity_matches_expected_graph_oracle() {
    for n in [3usize, 4] {
        for q in [0usize, 1, 2] {
            for r in [0.0, 1.0, 2.0] {
                let params = KleinbergParams::new(n, 1, q, r).unwrap();
                let table = NormalizerTable::kleinberg(&params).unwrap();
                let formula =
                    cw_kleinberg_with(&params, &table, Eq1Range::DistanceConsistent).unwrap();
                let g = expected_graph_kleinberg(&params).unwrap();
                let cut = brute_force_min_cut(&g).unwrap();
                assert!(
                    (formula - cut.value).abs() <= 1e-9,
                    "n={n} q={q} r={r}: formula={formula} oracle={}",
                    cut.value
                );
            }
        }
    }
}

#[test]
fn kleinberg_oracle_partition_is_a_corner_singleton() {
    let mut counterexamples = Vec::new();
    for n in [3usize, 4] {
        for q in [0usize, 1, 2] {
            for r in [0.0, 1.0, 2.0] {
                let params = KleinbergParams::new(n, 1, q, r).unwrap();
                let g = expected_graph_kleinberg(&params).unwrap();
                let cut = brute_force_min_cut(&g).unwrap();
                let corners = [(1, 1), (1, n), (n, 1), (n, n)];
                let corner_ids: Vec<usize> = corners
                    .iter()
                    .map(|&(x, y)| swcap_core::generators::grid_node_id(x, y, n))
                    .collect();
                // A cut is a partition of the node set; the oracle may report
                // either side, so a singleton cut can show up as its
                // (nodes-1)-element complement.
                let nodes = g.node_count();
                let singleton = if cut.partition.len() == 1 {
                    Some(cut.partition[0])
                } else if cut.partition.len() == nodes - 1 {
                    (0..nodes).find(|v| !cut.partition.contains(v))
                } else {
                    None
                };
                let is_corner_singleton = singleton.is_some_and(|v| corner_ids.contains(&v));
                let best_corner = corner_ids
                    .iter()
                    .map(|&c| g.cut_value(&[c]).unwrap())
                    .fold(f64::INFINITY, f64::min);
                if !is_corner_singleton || (cut.value - best_corner).abs() > 1e-9 {
                    counterexamples.push((n, q, r, cut.partition.clone(), cut.value));
                }
            }
        }
    }
    assert!(
        counterexamples.is_empty(),
        "optimal partition was not a corner singleton: {counterexamples:?}"
    );
}

#[test]
fn as_printed_range_overcounts_the_distance_h_diagonal() {
    for q in [1usize, 2] {
        let params = KleinbergParams::new(4, 1, q, 1.0).unwrap();
        let table = NormalizerTable::kleinberg(&params).unwrap();
        let consistent = cw_kleinberg_with(&params, &table, Eq1Range::DistanceConsistent).unwrap();
        let printed = cw_kleinberg_with(&params, &table, Eq1Range::AsPrinted).unwrap();
        let g = expected_graph_kleinberg(&params).unwrap();
        let oracle = brute_force_min_cut(&g).unwrap().value;
        assert!(printed > consistent + 1e-9);
        assert!((consistent - oracle).abs() <= 1e-9);
        assert!((printed - oracle).abs() > 1e-9);
    }
}

#[test]
fn navigable_capacity_matches_expected_graph_oracle() {
    for n in [8usize, 11, 14] {
        for k in [2usize, 4] {
            for q in [0usize, 1, 2] {
                for r in [0.0, 1.0, 2.0] {
                    let params = NavigableRingParams::new(n, k, q, r).unwrap();
                    let formula = cw_navigable_ring(&params).unwrap();
                    let g = expected_graph_navigable_ring(&params).unwrap();
                    let oracle = brute_force_min_cut(&g).unwrap().value;
                    assert!(
                        (formula - oracle).abs() <= 1e-9,
                        "n={n} k={k} q={q} r={r}: formula={formula} oracle={oracle}"
                    );
                }
            }
        }
    }
}

#[test]
fn normalizer_line_scan_matches_direct_sum() {
    for n in 3usize..=20 {
        for h in 1..=4usize {
            if h + 1 >= n {
                continue;
            }
            for r in [0.0, 1.0, 2.0, 3.0] {
                let params = KleinbergParams::new(n, h, 0, r).unwrap();
                for x in 1..=n {
                    for y in 1..=n {
                        let scan = kleinberg_normalizer(x, y, &params).unwrap();
                        let direct = kleinberg_normalizer_bruteforce(x, y, &params).unwrap();
                        assert!(
                            (scan - direct).abs() <= 1e-12,
                            "n={n} h={h} r={r} node=({x},{y}): scan={scan} direct={direct}"
                        );
                    }
                }
                let corner = s_corner_closed_form(&params).unwrap();
                let direct = kleinberg_normalizer_bruteforce(1, 1, &params).unwrap();
                assert!(
                    (corner - direct).abs() <= 1e-12,
                    "n={n} h={h} r={r}: corner closed form {corner} vs {direct}"
                );
            }
        }
    }
}
