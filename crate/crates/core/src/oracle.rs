//! Exhaustive ground truth for the seller's problem.
//!
//! Every target set is scanned and its common precision optimized numerically
//! (coarse grid, then golden section). The profit of a target depends only on
//! how many of its members have 0, 1, 2, ... purchasing neighbors, so targets
//! sharing that histogram share one inner optimization.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::contract::{marginal_price, optimal_contract, purchase_counts, ModelParams};
use crate::error::{Error, Result};
use crate::graph::{Network, NodeSet};
use crate::numeric::{grid_then_golden_max, rel_close};

/// Default largest network the exhaustive scan accepts.
pub const DEFAULT_ORACLE_CAP: usize = 20;
/// Hard ceiling for [`OracleOptions::cap`].
pub const MAX_ORACLE_CAP: usize = 30;
/// Grid resolution of the inner precision search.
pub const GRID_POINTS: usize = 10_000;
/// Absolute tolerance of the golden-section refinement in `z`.
pub const Z_TOLERANCE: f64 = 1e-9;
/// Relative profit tolerance when comparing with the closed form.
pub const PROFIT_RTOL: f64 = 1e-6;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_target: NodeSet,
    pub best_z: f64,
    pub best_profit: f64,
    pub is_independent: bool,
    /// Best profit agrees with the independent-set contract and the best
    /// target is a maximum independent set.
    pub matches_theorem1: bool,
    /// Whether the size-dependent noisy-prior condition held.
    pub precondition_ok: bool,
    /// Number of target sets examined (`2^n`).
    pub scanned: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest `n` accepted, at most [`MAX_ORACLE_CAP`].
    pub cap: usize,
    /// Scan subsets on the rayon pool; results are identical either way.
    pub parallel: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            cap: DEFAULT_ORACLE_CAP,
            parallel: true,
        }
    }
}

/// Seller profit of serving `target` at precision `z`.
pub fn target_profit(g: &Network, target: &NodeSet, z: f64, params: &ModelParams) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::domain(format!("precision must be nonnegative, got {z}")));
    }
    let counts = purchase_counts(g, target)?;
    let revenue: f64 = target
        .iter()
        .map(|i| marginal_price(counts.0[i], z, params))
        .sum();
    Ok(revenue - params.gamma() * z)
}

/// Members of a target grouped by their number of purchasing neighbors.
type Histogram = [u8; MAX_ORACLE_CAP + 1];

fn histogram_profit(hist: &Histogram, z: f64, params: &ModelParams) -> f64 {
    let revenue: f64 = hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(m, &c)| c as f64 * marginal_price(m, z, params))
        .sum();
    revenue - params.gamma() * z
}

fn optimize_histogram(hist: &Histogram, n: usize, params: &ModelParams) -> (f64, f64) {
    if hist.iter().all(|&c| c == 0) {
        return (0.0, 0.0);
    }
    let z_max = (n as f64 / params.gamma()).sqrt();
    grid_then_golden_max(
        |z| histogram_profit(hist, z, params),
        0.0,
        z_max,
        GRID_POINTS,
        Z_TOLERANCE,
    )
}

/// Best precision and profit for a fixed nonempty target.
pub fn best_z_for_target(g: &Network, target: &NodeSet, params: &ModelParams) -> Result<(f64, f64)> {
    if target.is_empty() {
        return Err(Error::domain("target must be nonempty"));
    }
    let counts = purchase_counts(g, target)?;
    let n = g.node_count();
    if n > MAX_ORACLE_CAP {
        // Histograms are fixed-width; fall back to the per-node objective.
        let z_max = (n as f64 / params.gamma()).sqrt();
        let f = |z: f64| {
            target
                .iter()
                .map(|i| marginal_price(counts.0[i], z, params))
                .sum::<f64>()
                - params.gamma() * z
        };
        return Ok(grid_then_golden_max(f, 0.0, z_max, GRID_POINTS, Z_TOLERANCE));
    }
    let mut hist: Histogram = [0; MAX_ORACLE_CAP + 1];
    for i in target.iter() {
        hist[counts.0[i]] += 1;
    }
    Ok(optimize_histogram(&hist, n, params))
}

struct Scan {
    adj: Vec<u64>,
}

impl Scan {
    fn histogram(&self, mask: u64) -> Histogram {
        let mut hist: Histogram = [0; MAX_ORACLE_CAP + 1];
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            hist[(self.adj[i] & mask).count_ones() as usize] += 1;
        }
        hist
    }
}

#[derive(Clone, Copy)]
struct Best {
    mask: u64,
    z: f64,
    profit: f64,
}

impl Best {
    /// Higher profit wins; equal profits go to the lower mask.
    fn better(self, other: Best) -> Best {
        if other.profit > self.profit || (other.profit == self.profit && other.mask < self.mask) {
            other
        } else {
            self
        }
    }
}

/// Scans every target set of `g` with default options.
pub fn brute_force_optimal(g: &Network, params: &ModelParams) -> Result<OracleResult> {
    brute_force_optimal_with(g, params, OracleOptions::default())
}

pub fn brute_force_optimal_with(
    g: &Network,
    params: &ModelParams,
    opts: OracleOptions,
) -> Result<OracleResult> {
    let n = g.node_count();
    let cap = opts.cap.min(MAX_ORACLE_CAP);
    if n > cap {
        return Err(Error::Capacity { n, limit: cap });
    }
    let scan = Scan {
        adj: (0..n)
            .map(|v| g.neighbors(v).to_mask().expect("n fits one word"))
            .collect(),
    };
    let total: u64 = 1 << n;
    let chunks: Vec<(u64, u64)> = (0..total.div_ceil(CHUNK))
        .map(|k| (k * CHUNK, ((k + 1) * CHUNK).min(total)))
        .collect();

    let collect_keys = |&(lo, hi): &(u64, u64)| -> Vec<Histogram> {
        let mut keys: Vec<Histogram> = (lo..hi).map(|mask| scan.histogram(mask)).collect();
        keys.sort_unstable();
        keys.dedup();
        keys
    };
    let mut keys: Vec<Histogram> = if opts.parallel {
        chunks.par_iter().flat_map_iter(collect_keys).collect()
    } else {
        chunks.iter().flat_map(collect_keys).collect()
    };
    keys.sort_unstable();
    keys.dedup();

    let solve = |h: &Histogram| (*h, optimize_histogram(h, n, params));
    let solved: HashMap<Histogram, (f64, f64)> = if opts.parallel {
        keys.par_iter().map(solve).collect()
    } else {
        keys.iter().map(solve).collect()
    };

    let best_in = |&(lo, hi): &(u64, u64)| -> Best {
        (lo..hi)
            .map(|mask| {
                let (z, profit) = solved[&scan.histogram(mask)];
                Best { mask, z, profit }
            })
            .reduce(Best::better)
            .expect("chunks are nonempty")
    };
    let per_chunk: Vec<Best> = if opts.parallel {
        chunks.par_iter().map(best_in).collect()
    } else {
        chunks.iter().map(best_in).collect()
    };
    let best = per_chunk
        .into_iter()
        .reduce(Best::better)
        .expect("at least the empty set is scanned");

    let best_target = NodeSet::from_mask(n, best.mask);
    let is_independent = best_target
        .iter()
        .all(|v| scan.adj[v] & best.mask == 0);
    let predicted = optimal_contract(g, params);
    let target_ok = if predicted.trivial {
        best_target.is_empty()
    } else {
        is_independent && best_target.len() == predicted.m
    };
    let matches_theorem1 = target_ok && rel_close(best.profit, predicted.profit, PROFIT_RTOL);

    Ok(OracleResult {
        best_target,
        best_z: best.z,
        best_profit: best.profit,
        is_independent,
        matches_theorem1,
        precondition_ok: predicted.precondition_ok,
        scanned: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    fn p() -> ModelParams {
        ModelParams::new(0.1, 1.0).unwrap()
    }

    fn set(n: usize, labels: &[usize]) -> NodeSet {
        NodeSet::from_labels(n, labels).unwrap()
    }

    #[test]
    fn target_profit_examples() {
        let g = fixtures::path(4);
        let v = target_profit(&g, &NodeSet::empty(4), 0.5, &p()).unwrap();
        assert!((v + 0.5).abs() < 1e-15);
        let k2 = fixtures::complete(2);
        let v = target_profit(&k2, &set(2, &[1, 2]), 0.1, &p()).unwrap();
        assert!((v - (2.0 * (1.0 / 0.2 - 1.0 / 0.3) - 0.1)).abs() < 1e-12);
        assert!((v - 3.233333).abs() < 1e-6);
        let v = target_profit(&g, &set(4, &[1, 3]), 2f64.sqrt() - 0.1, &p()).unwrap();
        assert!((v - 17.271573).abs() < 1e-6);
        assert!(target_profit(&g, &set(4, &[1]), -1.0, &p()).is_err());
    }

    #[test]
    fn best_z_examples() {
        let (z, v) = best_z_for_target(&fixtures::path(4), &set(4, &[1, 3]), &p()).unwrap();
        assert!((z - (2f64.sqrt() - 0.1)).abs() < 1e-6);
        assert!((v - 17.271573).abs() < 1e-6);

        let (z, v) = best_z_for_target(&fixtures::complete(2), &set(2, &[1, 2]), &p()).unwrap();
        assert!((z - 0.07).abs() < 0.005, "z = {z}");
        assert!((v - 3.36).abs() < 0.01, "profit = {v}");
        assert!(v < 8.1);

        let (z, v) = best_z_for_target(&fixtures::edgeless(1), &set(1, &[1]), &p()).unwrap();
        assert!((z - 0.9).abs() < 1e-6);
        assert!((v - 8.1).abs() < 1e-9);

        assert!(best_z_for_target(&fixtures::edgeless(1), &NodeSet::empty(1), &p()).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let r = brute_force_optimal(&fixtures::path(4), &p()).unwrap();
        assert_eq!(r.best_target.len(), 2);
        assert!(r.is_independent && r.matches_theorem1);
        assert!((r.best_profit - 17.271573).abs() < 1e-6);
        assert_eq!(r.best_target.labels(), vec![1, 3]);
        assert_eq!(r.scanned, 16);

        let r = brute_force_optimal(&fixtures::complete(3), &p()).unwrap();
        assert_eq!(r.best_target.len(), 1);
        assert!(r.matches_theorem1);
        assert!((r.best_profit - 8.1).abs() < 1e-9);
    }

    #[test]
    fn hypothesis_boundary_is_reported() {
        let params = ModelParams::new(0.35, 1.0).unwrap();
        let r = brute_force_optimal(&fixtures::complete(2), &params).unwrap();
        assert!(!r.precondition_ok);
        // The oracle's profit can never fall below the independent-set contract.
        let predicted = optimal_contract(&fixtures::complete(2), &params);
        assert!(r.best_profit >= predicted.profit - 1e-9);
    }

    #[test]
    fn trivial_market_oracle_picks_empty_set() {
        let params = ModelParams::new(3.0, 1.0).unwrap();
        let r = brute_force_optimal(&fixtures::path(4), &params).unwrap();
        assert!(r.best_target.is_empty());
        assert_eq!(r.best_profit, 0.0);
        assert!(r.matches_theorem1);
    }

    #[test]
    fn capacity_error() {
        let g = fixtures::edgeless(21);
        assert!(matches!(
            brute_force_optimal(&g, &p()),
            Err(Error::Capacity { n: 21, limit: 20 })
        ));
        let small = OracleOptions { cap: 3, parallel: false };
        assert!(brute_force_optimal_with(&fixtures::path(4), &p(), small).is_err());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        for seed in 0..4 {
            let g = fixtures::gnp(11, 0.35, seed);
            let seq = brute_force_optimal_with(&g, &p(), OracleOptions { cap: 20, parallel: false });
            let par = brute_force_optimal_with(&g, &p(), OracleOptions { cap: 20, parallel: true });
            assert_eq!(seq.unwrap(), par.unwrap());
        }
    }
}
