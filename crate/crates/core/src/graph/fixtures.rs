//! Named graph families, seeded random graphs, and a catalog of all graphs on
//! up to seven nodes up to isomorphism. Used by the tests, the acceptance
//! suite and the runnable examples.
//!
//! Node 1 (index 0) is the center of stars and the first core node of
//! core-periphery graphs.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Network;

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Network {
    let edges: Vec<_> = edges.into_iter().collect();
    Network::from_edges(n, &edges).expect("fixture edges are valid")
}

pub fn edgeless(n: usize) -> Network {
    build(n, [])
}

pub fn path(n: usize) -> Network {
    build(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle(n: usize) -> Network {
    assert!(n >= 3, "a cycle needs three nodes");
    build(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn complete(n: usize) -> Network {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Center node 1 joined to leaves 2..=n.
pub fn star(n: usize) -> Network {
    build(n, (1..n).map(|v| (0, v)))
}

/// Disjoint cliques of the given sizes, numbered consecutively.
pub fn disjoint_cliques(sizes: &[usize]) -> Network {
    let mut edges = Vec::new();
    let mut base = 0;
    for &k in sizes {
        for u in 0..k {
            for v in u + 1..k {
                edges.push((base + u, base + v));
            }
        }
        base += k;
    }
    build(base, edges)
}

/// Core nodes `1..=core` adjacent to everyone, periphery nodes after them
/// mutually non-adjacent.
pub fn core_periphery(core: usize, periphery: usize) -> Network {
    let n = core + periphery;
    build(
        n,
        (0..core).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
    )
}

/// Erdos-Renyi `G(n, p)` from a seeded generator.
pub fn gnp(n: usize, p: f64, seed: u64) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, edges)
}

/// Packs the upper triangle of an adjacency matrix under `order`
/// (position -> node) into an integer; pair `(a, b)` with `a < b` maps to
/// bit `b * (b - 1) / 2 + a`.
fn code_under(adj: &[u8], order: &[usize]) -> u64 {
    let mut code = 0u64;
    for b in 1..order.len() {
        for a in 0..b {
            if adj[order[a]] >> order[b] & 1 == 1 {
                code |= 1 << (b * (b - 1) / 2 + a);
            }
        }
    }
    code
}

/// Stable color refinement; returns a canonical color per node.
fn refine(adj: &[u8]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = adj.iter().map(|row| row.count_ones() as usize).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> =
                    (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let stable = distinct.len() == colors.iter().collect::<HashSet<_>>().len();
        colors = next;
        if stable {
            return colors;
        }
    }
}

/// Smallest code over all orderings that list nodes by ascending refined color.
fn canonical_code(adj: &[u8]) -> u64 {
    let colors = refine(adj);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut palette: Vec<usize> = colors.clone();
    palette.sort_unstable();
    palette.dedup();
    for c in palette {
        cells.push((0..adj.len()).filter(|&v| colors[v] == c).collect());
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(adj.len());
    permute_cells(adj, &mut cells, 0, &mut order, &mut best);
    best
}

fn permute_cells(
    adj: &[u8],
    cells: &mut [Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if cell == cells.len() {
        *best = (*best).min(code_under(adj, order));
        return;
    }
    permute_within(adj, cells, cell, 0, order, best);
}

fn permute_within(
    adj: &[u8],
    cells: &mut [Vec<usize>],
    cell: usize,
    k: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if k == cells[cell].len() {
        permute_cells(adj, cells, cell + 1, order, best);
        return;
    }
    for i in k..cells[cell].len() {
        cells[cell].swap(k, i);
        order.push(cells[cell][k]);
        permute_within(adj, cells, cell, k + 1, order, best);
        order.pop();
        cells[cell].swap(k, i);
    }
}

fn from_code(n: usize, code: u64) -> Network {
    let mut edges = Vec::new();
    for b in 1..n {
        for a in 0..b {
            if code >> (b * (b - 1) / 2 + a) & 1 == 1 {
                edges.push((a, b));
            }
        }
    }
    build(n, edges)
}

/// Every graph on `n` nodes up to isomorphism (`1 <= n <= 7`), in canonical
/// labeling, sorted by canonical code.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Network> {
    assert!((1..=7).contains(&n), "catalog covers 1..=7 nodes");
    let mut codes: Vec<u64> = vec![0];
    for size in 2..=n {
        let mut next = HashSet::new();
        for &code in &codes {
            let base = from_code(size - 1, code);
            for nbrs in 0u32..(1 << (size - 1)) {
                let mut adj = vec![0u8; size];
                for (u, v) in base.edges() {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
                for u in 0..size - 1 {
                    if nbrs >> u & 1 == 1 {
                        adj[u] |= 1 << (size - 1);
                        adj[size - 1] |= 1 << u;
                    }
                }
                next.insert(canonical_code(&adj));
            }
        }
        codes = next.into_iter().collect();
        codes.sort_unstable();
    }
    codes.into_iter().map(|c| from_code(n, c)).collect()
}

/// Connected graphs on `n` nodes up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Network> {
    nonisomorphic_graphs(n)
        .into_iter()
        .filter(Network::is_connected)
        .collect()
}
