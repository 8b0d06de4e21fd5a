//! Exact maximum independent sets by branch and bound.
//!
//! The search branches on a highest-degree candidate (include it and drop its
//! closed neighborhood, or drop it alone), takes degree-0/1 candidates
//! greedily, and prunes with the smaller of a greedy clique-cover bound and the
//! degree bound `|C| - ceil(|E(C)| / maxdeg)`.
//!
//! Ties among maximum sets resolve to the numerically smallest bitmask. The
//! tie-broken set is built top-down: for each node from the highest index
//! downward, exclude it whenever an optimum survives without it.

use super::{Network, NodeSet};
use crate::error::Result;

/// Default truncation point for [`enumerate_maximum_independent_sets`].
pub const DEFAULT_ENUMERATION_CAP: usize = 100_000;

pub fn is_independent_set(g: &Network, s: &NodeSet) -> Result<bool> {
    g.check_members(s)?;
    Ok(s.iter().all(|v| g.neighbors(v).intersection_len(s) == 0))
}

struct Search<'a> {
    g: &'a Network,
}

impl<'a> Search<'a> {
    fn new(g: &'a Network) -> Self {
        Search { g }
    }

    /// Upper bound on the independence number of the subgraph induced by `cands`.
    fn upper_bound(&self, cands: &NodeSet) -> usize {
        let size = cands.len();
        let mut edges2 = 0;
        let mut max_deg = 0;
        for v in cands.iter() {
            let d = self.g.neighbors(v).intersection_len(cands);
            edges2 += d;
            max_deg = max_deg.max(d);
        }
        let degree_bound = if max_deg == 0 {
            size
        } else {
            size - (edges2 / 2).div_ceil(max_deg)
        };

        // Greedy clique cover: each clique tracks the candidates adjacent to
        // all of its members.
        let mut cliques: Vec<NodeSet> = Vec::new();
        for v in cands.iter() {
            match cliques.iter_mut().find(|common| common.contains(v)) {
                Some(common) => *common = &*common & self.g.neighbors(v),
                None => {
                    if cliques.len() >= degree_bound {
                        return degree_bound;
                    }
                    cliques.push(self.g.neighbors(v) & cands);
                }
            }
        }
        cliques.len().min(degree_bound)
    }

    /// Takes every candidate of residual degree at most one. Returns the
    /// number taken.
    fn reduce(&self, cands: &mut NodeSet) -> usize {
        let mut taken = 0;
        loop {
            let low = cands
                .iter()
                .find(|&v| self.g.neighbors(v).intersection_len(cands) <= 1);
            let Some(v) = low else { break };
            *cands = &*cands - &self.g.closed_neighborhood(v);
            taken += 1;
        }
        taken
    }

    fn branch(&self, mut cands: NodeSet, mut size: usize, best: &mut usize, goal: usize) {
        if *best >= goal {
            return;
        }
        size += self.reduce(&mut cands);
        if cands.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + self.upper_bound(&cands) <= *best {
            return;
        }
        let pivot = cands
            .iter()
            .max_by_key(|&v| (self.g.neighbors(v).intersection_len(&cands), std::cmp::Reverse(v)))
            .expect("candidates are nonempty");
        self.branch(&cands - &self.g.closed_neighborhood(pivot), size + 1, best, goal);
        self.branch(cands.without(pivot), size, best, goal);
    }

    /// Independence number of the subgraph induced by `cands`.
    fn alpha(&self, cands: &NodeSet) -> usize {
        let mut best = self.greedy(cands);
        self.branch(cands.clone(), 0, &mut best, usize::MAX);
        best
    }

    /// Whether the subgraph induced by `cands` has an independent set of size `k`.
    fn at_least(&self, cands: &NodeSet, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if cands.len() < k {
            return false;
        }
        let mut best = self.greedy(cands);
        if best >= k {
            return true;
        }
        self.branch(cands.clone(), 0, &mut best, k);
        best >= k
    }

    /// Minimum-degree greedy lower bound.
    fn greedy(&self, cands: &NodeSet) -> usize {
        let mut rest = cands.clone();
        let mut size = 0;
        while let Some(v) = rest
            .iter()
            .min_by_key(|&v| self.g.neighbors(v).intersection_len(&rest))
        {
            rest = &rest - &self.g.closed_neighborhood(v);
            size += 1;
        }
        size
    }

    fn enumerate(
        &self,
        cands: NodeSet,
        chosen: NodeSet,
        need: usize,
        out: &mut Vec<NodeSet>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if need == 0 {
            out.push(chosen);
            return;
        }
        let Some(v) = cands.last() else {
            return;
        };
        let without = cands.without(v);
        if self.at_least(&without, need) {
            self.enumerate(without, chosen.clone(), need, out, limit);
        }
        let rest = &cands - &self.g.closed_neighborhood(v);
        if self.at_least(&rest, need - 1) {
            self.enumerate(rest, chosen.with(v), need - 1, out, limit);
        }
    }
}

/// The independence number of `g`.
pub fn independence_number(g: &Network) -> usize {
    Search::new(g).alpha(&g.all_nodes())
}

/// A maximum independent set; the numerically smallest bitmask among all of them.
pub fn maximum_independent_set(g: &Network) -> NodeSet {
    let search = Search::new(g);
    let mut cands = g.all_nodes();
    let alpha = search.alpha(&cands);
    let mut chosen = NodeSet::empty(g.node_count());
    while let Some(v) = cands.last() {
        let without = cands.without(v);
        if search.at_least(&without, alpha - chosen.len()) {
            cands = without;
        } else {
            chosen.insert(v);
            cands = &cands - &g.closed_neighborhood(v);
        }
    }
    debug_assert_eq!(chosen.len(), alpha);
    chosen
}

/// All maximum independent sets, in ascending bitmask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisEnumeration {
    pub alpha: usize,
    pub sets: Vec<NodeSet>,
    /// More maximum independent sets exist beyond the cap.
    pub truncated: bool,
}

pub fn enumerate_maximum_independent_sets(g: &Network, cap: usize) -> Result<MisEnumeration> {
    if cap == 0 {
        return Err(crate::Error::domain("enumeration cap must be at least 1"));
    }
    let search = Search::new(g);
    let all = g.all_nodes();
    let alpha = search.alpha(&all);
    let mut sets = Vec::new();
    search.enumerate(
        all,
        NodeSet::empty(g.node_count()),
        alpha,
        &mut sets,
        cap.saturating_add(1),
    );
    let truncated = sets.len() > cap;
    sets.truncate(cap);
    Ok(MisEnumeration {
        alpha,
        sets,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    fn labels(sets: &[NodeSet]) -> Vec<Vec<usize>> {
        sets.iter().map(NodeSet::labels).collect()
    }

    #[test]
    fn independence_checks() {
        let p4 = fixtures::path(4);
        let k3 = fixtures::complete(3);
        assert!(is_independent_set(&p4, &NodeSet::from_labels(4, &[1, 3]).unwrap()).unwrap());
        assert!(!is_independent_set(&k3, &NodeSet::from_labels(3, &[1, 2]).unwrap()).unwrap());
        assert!(is_independent_set(&k3, &NodeSet::empty(3)).unwrap());
        let outside = NodeSet::from_labels(6, &[5]).unwrap();
        assert!(is_independent_set(&k3, &outside).is_err());
    }

    #[test]
    fn complete_graph_picks_node_one() {
        for n in 1..=8 {
            assert_eq!(maximum_independent_set(&fixtures::complete(n)).labels(), vec![1]);
        }
    }

    #[test]
    fn star_picks_leaves() {
        let g = fixtures::star(6);
        assert_eq!(maximum_independent_set(&g).labels(), vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn path_tie_break() {
        assert_eq!(maximum_independent_set(&fixtures::path(4)).labels(), vec![1, 3]);
    }

    #[test]
    fn enumerations() {
        let p4 = enumerate_maximum_independent_sets(&fixtures::path(4), 10).unwrap();
        assert_eq!(labels(&p4.sets), vec![vec![1, 3], vec![1, 4], vec![2, 4]]);
        assert!(!p4.truncated);

        let k3 = enumerate_maximum_independent_sets(&fixtures::complete(3), 10).unwrap();
        assert_eq!(labels(&k3.sets), vec![vec![1], vec![2], vec![3]]);

        let c6 = enumerate_maximum_independent_sets(&fixtures::cycle(6), 10).unwrap();
        assert_eq!(labels(&c6.sets), vec![vec![1, 3, 5], vec![2, 4, 6]]);
    }

    #[test]
    fn enumeration_truncates_at_cap() {
        let e = enumerate_maximum_independent_sets(&fixtures::complete(5), 2).unwrap();
        assert_eq!(labels(&e.sets), vec![vec![1], vec![2]]);
        assert!(e.truncated);
        let exact = enumerate_maximum_independent_sets(&fixtures::complete(5), 5).unwrap();
        assert!(!exact.truncated);
        assert!(enumerate_maximum_independent_sets(&fixtures::complete(5), 0).is_err());
    }

    #[test]
    fn wide_graph_beyond_one_word() {
        // 70 disjoint edges: alpha = 70, smallest set takes the lower endpoint.
        let edges: Vec<_> = (0..70).map(|k| (2 * k, 2 * k + 1)).collect();
        let g = Network::from_edges(140, &edges).unwrap();
        let s = maximum_independent_set(&g);
        assert_eq!(s.len(), 70);
        assert!(s.iter().all(|v| v % 2 == 0));
    }
}
