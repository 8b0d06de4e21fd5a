mod common;

use common::*;
use netsale::contract::ModelParams;
use netsale::graph::fixtures::{self, connected_graphs, nonisomorphic_graphs};
use netsale::graph::{independence_number, is_core_periphery, maximum_independent_set};
use netsale::interventions::{
    evaluate_link_removal, exhaustive_pareto_check, pareto_efficient_check,
};

#[test]
fn catalog_counts_through_seven_nodes() {
    let all: Vec<usize> = (1..=7).map(|n| nonisomorphic_graphs(n).len()).collect();
    let connected: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
    assert_eq!(all, vec![1, 2, 4, 11, 34, 156, 1044]);
    assert_eq!(connected, vec![1, 1, 2, 6, 21, 112, 853]);
}

#[test]
fn mis_agrees_with_subset_scan_on_every_small_graph() {
    for n in 1..=7 {
        for g in nonisomorphic_graphs(n) {
            let (alpha, sets) = brute_mis(&g);
            assert_eq!(independence_number(&g), alpha);
            assert_eq!(maximum_independent_set(&g).to_mask(), Some(sets[0]));
        }
    }
}

#[test]
fn link_removal_never_shrinks_alpha() {
    let p = ModelParams::default();
    for n in 2..=7 {
        for g in nonisomorphic_graphs(n) {
            for (u, v) in g.edges() {
                let o = evaluate_link_removal(&g, u, v, &p).unwrap();
                assert!(o.alpha_after >= o.alpha_before, "{:?}", g.edges().collect::<Vec<_>>());
                assert!(o.profit_delta >= 0.0);
            }
        }
    }
}

#[test]
fn core_periphery_certificates() {
    let p = ModelParams::default();
    for m in 1..=5 {
        for core in 1..=4 {
            let g = fixtures::core_periphery(core, m);
            let check = pareto_efficient_check(&g, &p);
            let cp = check.certificate.as_ref().expect("generated graph is core-periphery");
            assert_eq!(cp.periphery.len(), m);
            let (alpha, sets) = brute_mis(&g);
            assert_eq!(alpha, m);
            let periphery = cp.periphery.to_mask().unwrap();
            if m >= 2 {
                assert_eq!(sets, vec![periphery]);
            } else {
                // A one-node periphery makes the graph complete.
                assert!(sets.contains(&periphery));
            }
            assert_eq!(check.free_riders.len(), core);
            let z = (m as f64).sqrt() - p.z0();
            for f in &check.free_riders {
                assert_eq!(f.m, m);
                assert!((f.utility + 1.0 / (p.z0() + m as f64 * z)).abs() < 1e-15);
            }
        }
    }
    assert!(is_core_periphery(&fixtures::path(4)).is_none());
}

#[test]
fn core_periphery_networks_admit_no_pareto_improvement() {
    let p = ModelParams::default();
    for n in 2..=6 {
        for core in 1..n {
            let g = fixtures::core_periphery(core, n - core);
            assert_eq!(exhaustive_pareto_check(&g, &p).unwrap(), None, "core {core}, n {n}");
        }
    }
}

#[test]
fn four_node_catalog_matches_invariant_classes() {
    // On 4 nodes, (sorted degrees, edges, alpha) separates the 11 classes.
    let reps = nonisomorphic_graphs(4);
    let mut seen = std::collections::BTreeSet::new();
    for g in all_labeled_graphs(4) {
        let mut d = g.degrees().0;
        d.sort_unstable();
        seen.insert((d, g.edge_count(), independence_number(&g)));
    }
    assert_eq!(seen.len(), reps.len());
}
