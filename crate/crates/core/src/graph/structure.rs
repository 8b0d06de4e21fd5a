use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Network, NodeSet};
use crate::error::{Error, Result};

/// Caro-Wei lower bound `sum_i 1 / (deg(i) + 1)` on the independence number.
pub fn caro_wei_bound(g: &Network) -> f64 {
    (0..g.node_count())
        .map(|v| 1.0 / (g.degree(v) + 1) as f64)
        .sum()
}

/// Nodes ranked below all of their neighbors by `rank`.
///
/// `rank[i]` is the position of node `i` in the ordering and must be a
/// permutation of `0..n`. The result is always a nonempty independent set.
pub fn permutation_independent_set(g: &Network, rank: &[usize]) -> Result<NodeSet> {
    let n = g.node_count();
    if rank.len() != n {
        return Err(Error::domain(format!(
            "permutation has {} entries for {n} nodes",
            rank.len()
        )));
    }
    let mut seen = vec![false; n];
    for &r in rank {
        if r >= n || std::mem::replace(&mut seen[r], true) {
            return Err(Error::domain("ranking is not a bijection on the nodes"));
        }
    }
    NodeSet::from_indices(
        n,
        (0..n).filter(|&i| g.neighbors(i).iter().all(|j| rank[i] < rank[j])),
    )
}

/// Sample mean and standard error of `|A(tau)|` over `draws` uniformly random
/// orderings. Its expectation is exactly the Caro-Wei bound.
pub fn permutation_set_mean(g: &Network, draws: usize, seed: u64) -> Result<(f64, f64)> {
    if draws < 2 {
        return Err(Error::domain("at least two draws are needed for a standard error"));
    }
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut rank = vec![0; n];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..draws {
        order.shuffle(&mut rng);
        for (pos, &v) in order.iter().enumerate() {
            rank[v] = pos;
        }
        let size = (0..n)
            .filter(|&i| g.neighbors(i).iter().all(|j| rank[i] < rank[j]))
            .count() as f64;
        sum += size;
        sum_sq += size * size;
    }
    let k = draws as f64;
    let mean = sum / k;
    let var = ((sum_sq - k * mean * mean) / (k - 1.0)).max(0.0);
    Ok((mean, (var / k).sqrt()))
}

/// True iff every connected component is a clique.
pub fn is_union_of_cliques(g: &Network) -> bool {
    g.edges()
        .all(|(u, v)| g.closed_neighborhood(u) == g.closed_neighborhood(v))
}

/// A partition into a core adjacent to every other node and an independent
/// periphery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorePeriphery {
    pub core: NodeSet,
    pub periphery: NodeSet,
}

/// Detects a core-periphery structure.
///
/// Only nodes of degree `n - 1` can sit in the core, and every other node must
/// sit in the periphery, which has to be independent. When every node has
/// degree `n - 1` (a complete graph) the periphery is one node and the core
/// the remaining ones; the highest-indexed node goes to the periphery so the
/// core is the smallest bitmask.
pub fn is_core_periphery(g: &Network) -> Option<CorePeriphery> {
    let n = g.node_count();
    let universal =
        NodeSet::from_indices(n, (0..n).filter(|&v| g.degree(v) == n - 1)).expect("in range");
    let rest = &g.all_nodes() - &universal;
    let periphery = if rest.is_empty() {
        NodeSet::empty(n).with(n - 1)
    } else {
        rest
    };
    let independent = periphery
        .iter()
        .all(|v| g.neighbors(v).intersection_len(&periphery) == 0);
    independent.then(|| CorePeriphery {
        core: &g.all_nodes() - &periphery,
        periphery,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    #[test]
    fn permutation_mean_tracks_bound() {
        let g = fixtures::path(5);
        let (mean, se) = permutation_set_mean(&g, 20_000, 3).unwrap();
        assert!((mean - caro_wei_bound(&g)).abs() < 4.0 * se, "{mean} {se}");
        let k4 = fixtures::complete(4);
        assert_eq!(permutation_set_mean(&k4, 100, 1).unwrap(), (1.0, 0.0));
        assert!(permutation_set_mean(&g, 1, 0).is_err());
    }

    #[test]
    fn caro_wei_values() {
        assert!((caro_wei_bound(&fixtures::path(4)) - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(caro_wei_bound(&fixtures::edgeless(3)), 3.0);
        let two_triangles = fixtures::disjoint_cliques(&[3, 3]);
        assert!((caro_wei_bound(&two_triangles) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn permutation_sets() {
        let p4 = fixtures::path(4);
        assert_eq!(
            permutation_independent_set(&p4, &[0, 1, 2, 3]).unwrap().labels(),
            vec![1]
        );
        // tau = (1->1, 2->4, 3->2, 4->3), 0-based ranks.
        assert_eq!(
            permutation_independent_set(&p4, &[0, 3, 1, 2]).unwrap().labels(),
            vec![1, 3]
        );
        let e = fixtures::edgeless(4);
        assert_eq!(
            permutation_independent_set(&e, &[2, 0, 3, 1]).unwrap().len(),
            4
        );
    }

    #[test]
    fn permutation_must_be_bijection() {
        let p4 = fixtures::path(4);
        assert!(permutation_independent_set(&p4, &[0, 0, 1, 2]).is_err());
        assert!(permutation_independent_set(&p4, &[0, 1, 2]).is_err());
        assert!(permutation_independent_set(&p4, &[0, 1, 2, 4]).is_err());
    }

    #[test]
    fn clique_unions() {
        assert!(is_union_of_cliques(&fixtures::disjoint_cliques(&[3, 3])));
        assert!(!is_union_of_cliques(&fixtures::path(4)));
        assert!(is_union_of_cliques(&fixtures::complete(5)));
        assert!(is_union_of_cliques(&fixtures::edgeless(3)));
    }

    #[test]
    fn core_periphery_detection() {
        let star = is_core_periphery(&fixtures::star(4)).unwrap();
        assert_eq!(star.core.labels(), vec![1]);
        assert_eq!(star.periphery.labels(), vec![2, 3, 4]);

        assert!(is_core_periphery(&fixtures::path(4)).is_none());

        let k2 = is_core_periphery(&fixtures::complete(2)).unwrap();
        assert_eq!(k2.core.labels(), vec![1]);
        assert_eq!(k2.periphery.labels(), vec![2]);

        let cp = is_core_periphery(&fixtures::core_periphery(2, 3)).unwrap();
        assert_eq!(cp.core.labels(), vec![1, 2]);
        assert_eq!(cp.periphery.labels(), vec![3, 4, 5]);
    }
}
