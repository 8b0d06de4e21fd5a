//! Buyer networks and the independent-set machinery the solvers share.
//!
//! Nodes are indexed `0..n` inside the library. External formats (edge lists,
//! JSON documents, CLI output) use 1-based labels; [`NodeSet::from_labels`] and
//! [`NodeSet::labels`] convert at the boundary.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub mod fixtures;
mod independent;
mod io;
mod structure;

pub use independent::{
    enumerate_maximum_independent_sets, independence_number, is_independent_set,
    maximum_independent_set, MisEnumeration, DEFAULT_ENUMERATION_CAP,
};
pub use io::{emit_network, parse_network, parse_network_auto, GraphFormat, GraphJson};
pub use structure::{
    caro_wei_bound, is_core_periphery, is_union_of_cliques, permutation_independent_set,
    permutation_set_mean, CorePeriphery,
};

const WORD: usize = 64;

/// A subset of the nodes `0..n` stored as a bitmask.
///
/// Up to 128 nodes live inline; larger universes spill the word array to the
/// heap. Sets are ordered by their numeric bitmask value with node `i` at bit
/// `i`, so the highest-indexed member is the most significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    n: usize,
    words: SmallVec<[u64; 2]>,
}

impl NodeSet {
    /// The empty subset of a universe of `n` nodes.
    pub fn empty(n: usize) -> Self {
        NodeSet {
            n,
            words: SmallVec::from_elem(0, n.div_ceil(WORD).max(1)),
        }
    }

    /// All `n` nodes.
    pub fn full(n: usize) -> Self {
        let mut s = NodeSet::empty(n);
        for (w, word) in s.words.iter_mut().enumerate() {
            let lo = w * WORD;
            let bits = n.saturating_sub(lo).min(WORD);
            *word = if bits == WORD { u64::MAX } else { (1u64 << bits) - 1 };
        }
        s
    }

    pub fn from_indices(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = NodeSet::empty(n);
        for i in members {
            if i >= n {
                return Err(Error::domain(format!(
                    "node index {i} out of range for {n} nodes"
                )));
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// Builds a set from 1-based node labels.
    pub fn from_labels(n: usize, labels: &[usize]) -> Result<Self> {
        let mut s = NodeSet::empty(n);
        for &label in labels {
            if label == 0 || label > n {
                return Err(Error::domain(format!(
                    "node label {label} out of range 1..={n}"
                )));
            }
            s.insert(label - 1);
        }
        Ok(s)
    }

    /// Interprets the low `n` bits of `mask` as a set.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= WORD, "from_mask requires n <= 64");
        let mut s = NodeSet::empty(n);
        s.words[0] = mask & NodeSet::full(n).words[0];
        s
    }

    /// The bitmask value when the universe fits in one word.
    pub fn to_mask(&self) -> Option<u64> {
        (self.n <= WORD).then(|| self.words[0])
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.n {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn without(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.remove(i);
        s
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Size of the intersection without materializing it.
    #[inline]
    pub fn intersection_len(&self, other: &NodeSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }

    /// Lowest member index.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    /// Highest member index.
    pub fn last(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + WORD - 1 - w.leading_zeros() as usize)
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * WORD + bit)
            })
        })
    }

    /// Members as 1-based labels, ascending.
    pub fn labels(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl Ord for NodeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.words.len().max(other.words.len());
        for k in (0..len).rev() {
            let a = self.words.get(k).copied().unwrap_or(0);
            let b = other.words.get(k).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for NodeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, label) in self.labels().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "}}")
    }
}

macro_rules! set_op {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&NodeSet> for &NodeSet {
            type Output = NodeSet;
            #[inline]
            fn $method(self, rhs: &NodeSet) -> NodeSet {
                debug_assert_eq!(self.words.len(), rhs.words.len());
                let mut out = self.clone();
                for (a, b) in out.words.iter_mut().zip(&rhs.words) {
                    *a = $op(*a, *b);
                }
                out
            }
        }
    };
}

set_op!(BitAnd, bitand, |a: u64, b: u64| a & b);
set_op!(BitOr, bitor, |a: u64, b: u64| a | b);
set_op!(Sub, sub, |a: u64, b: u64| a & !b);

/// Neighbor counts, one per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile(pub Vec<usize>);

impl DegreeProfile {
    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// A simple undirected graph of buyers.
///
/// Adjacency is irreflexive: a buyer's own signal is accounted for by the
/// pricing and belief code, never by a self-loop.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Network {
    adj: Vec<NodeSet>,
}

impl Network {
    /// `n` isolated buyers.
    pub fn edgeless(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a network needs at least one node"));
        }
        Ok(Network {
            adj: vec![NodeSet::empty(n); n],
        })
    }

    /// Builds a network from 0-based edges. Duplicates collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Network::edgeless(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.node_count();
        if u >= n || v >= n {
            return Err(Error::domain(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::domain(format!("self-loop at node {}", u + 1)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::domain(format!(
                "({}, {}) is not an edge",
                u + 1,
                v + 1
            )));
        }
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        Ok(())
    }

    /// Drops every edge incident to `v`; the node itself stays.
    pub fn isolate(&mut self, v: usize) -> Result<()> {
        if v >= self.node_count() {
            return Err(Error::domain(format!("node index {v} out of range")));
        }
        let nbrs: Vec<usize> = self.adj[v].iter().collect();
        for u in nbrs {
            self.adj[u].remove(v);
        }
        self.adj[v] = NodeSet::empty(self.node_count());
        Ok(())
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(NodeSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &NodeSet {
        &self.adj[v]
    }

    /// `v` together with its neighbors.
    pub fn closed_neighborhood(&self, v: usize) -> NodeSet {
        self.adj[v].with(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> DegreeProfile {
        DegreeProfile(self.adj.iter().map(NodeSet::len).collect())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.node_count())
    }

    /// Checks that every member of `s` is a node of this network.
    pub fn check_members(&self, s: &NodeSet) -> Result<()> {
        match s.last() {
            Some(i) if i >= self.node_count() => Err(Error::domain(format!(
                "node label {} out of range 1..={}",
                i + 1,
                self.node_count()
            ))),
            _ => Ok(()),
        }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = NodeSet::empty(self.node_count()).with(0);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = NodeSet::empty(self.node_count());
            for v in frontier.iter() {
                next = &next | &self.adj[v];
            }
            frontier = &next - &seen;
            seen = &seen | &frontier;
        }
        seen.len() == self.node_count()
    }
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().map(|(u, v)| (u + 1, v + 1)).collect();
        f.debug_struct("Network")
            .field("n", &self.node_count())
            .field("edges", &edges)
            .finish()
    }
}
