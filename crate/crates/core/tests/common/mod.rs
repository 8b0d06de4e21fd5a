//! Independent reference computations for the integration tests. Nothing here
//! calls the solver routines it is used to check.

#![allow(dead_code)]

use netsale::graph::Network;

/// Adjacency as bitmasks (node i at bit i); n <= 63.
pub fn adjacency_masks(g: &Network) -> Vec<u64> {
    (0..g.node_count())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | 1 << u))
        .collect()
}

pub fn mask_independent(adj: &[u64], mask: u64) -> bool {
    (0..adj.len()).all(|v| mask >> v & 1 == 0 || adj[v] & mask == 0)
}

/// Every maximum independent set by scanning all subsets, ascending mask.
pub fn brute_mis(g: &Network) -> (usize, Vec<u64>) {
    let adj = adjacency_masks(g);
    let n = adj.len();
    let mut best = 0;
    let mut sets = Vec::new();
    for mask in 0u64..1 << n {
        if !mask_independent(&adj, mask) {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size > best {
            best = size;
            sets.clear();
        }
        if size == best {
            sets.push(mask);
        }
    }
    (best, sets)
}

pub fn labels_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// `m/z0 + gamma z0 - 2 sqrt(gamma m)`.
pub fn profit_formula(m: usize, z0: f64, gamma: f64) -> f64 {
    let m = m as f64;
    m / z0 + gamma * z0 - 2.0 * (gamma * m).sqrt()
}

/// Consumer surplus when `target` is served at `sqrt(|target|/gamma) - z0`,
/// summed directly over nodes.
pub fn surplus_direct(g: &Network, target: u64, z0: f64, gamma: f64) -> f64 {
    let adj = adjacency_masks(g);
    let m = target.count_ones() as f64;
    let z = (m / gamma).sqrt() - z0;
    (0..adj.len())
        .map(|i| {
            if target >> i & 1 == 1 {
                -1.0 / z0
            } else {
                -1.0 / (z0 + (adj[i] & target).count_ones() as f64 * z)
            }
        })
        .sum()
}

pub fn caro_wei(g: &Network) -> f64 {
    (0..g.node_count()).map(|v| 1.0 / (g.degree(v) + 1) as f64).sum()
}

/// Every connected component is complete, checked by flood fill.
pub fn components_are_cliques(g: &Network) -> bool {
    let adj = adjacency_masks(g);
    let n = adj.len();
    let mut seen = 0u64;
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        let mut comp = 1u64 << s;
        loop {
            let grown = (0..n)
                .filter(|&v| comp >> v & 1 == 1)
                .fold(comp, |c, v| c | adj[v]);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        seen |= comp;
        let size = comp.count_ones();
        if (0..n).any(|v| comp >> v & 1 == 1 && (adj[v] & comp).count_ones() + 1 != size) {
            return false;
        }
    }
    true
}

/// `sum_i (deg_i + 1) / (z0 + (deg_i + 1) z)^2 - gamma`.
pub fn efficiency_foc(g: &Network, z: f64, z0: f64, gamma: f64) -> f64 {
    (0..g.node_count())
        .map(|i| {
            let d = (g.degree(i) + 1) as f64;
            d / (z0 + d * z).powi(2)
        })
        .sum::<f64>()
        - gamma
}

/// Every labeled simple graph on `n` nodes, by edge mask.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Network> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0..1u64 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Network::from_edges(n, &edges).unwrap()
    })
}
