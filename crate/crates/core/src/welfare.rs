//! Consumer surplus, target comparisons and socially efficient precision.
//!
//! Under the seller-optimal contract every served buyer ends at utility
//! `-1/z0` (its price absorbs the whole gain), while a free rider with `m_i`
//! purchasing neighbors ends at `-1/(z0 + m_i z)`. Consumer surplus therefore
//! depends only on the sorted free-rider counts (the k-vector), and all
//! values here are summed in that canonical order so that targets with equal
//! k-vectors compare exactly equal.

use crate::contract::{profit_closed_form, purchase_counts, ModelParams};
use crate::error::{Error, Result};
use crate::graph::{
    caro_wei_bound, enumerate_maximum_independent_sets, independence_number,
    is_union_of_cliques, Network, NodeSet,
};
use crate::numeric::bisect_decreasing;

/// Purchasing-neighbor counts of the free riders, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KVector(Vec<usize>);

impl KVector {
    /// Sorts `counts` descending.
    pub fn new(mut counts: Vec<usize>) -> Self {
        counts.sort_unstable_by(|a, b| b.cmp(a));
        KVector(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

pub fn k_vector(g: &Network, target: &NodeSet) -> Result<KVector> {
    let counts = purchase_counts(g, target)?;
    Ok(KVector::new(
        (0..g.node_count())
            .filter(|&i| !target.contains(i))
            .map(|i| counts.0[i])
            .collect(),
    ))
}

/// Outcome of comparing the consumer surplus implied by two k-vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetOrdering {
    FirstWeaklyBetter,
    SecondWeaklyBetter,
    Incomparable,
}

/// Which dominance relation settled a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceBasis {
    /// Every sorted entry of the better vector is at least the other's.
    Componentwise,
    /// Equal totals and the better vector is majorized (less spread out).
    EqualSumMajorization,
    /// Every partial sum of the smallest entries of the better vector is at
    /// least the other's; this is the increasing-concave order and contains
    /// both cases above.
    WeakMajorization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TargetComparison {
    pub ordering: TargetOrdering,
    pub basis: Option<DominanceBasis>,
}

/// `a` dominates `b` in the increasing-concave order: ascending prefix sums
/// of `a` are all at least those of `b`.
fn weakly_supermajorizes(a: &KVector, b: &KVector) -> bool {
    let (mut sa, mut sb) = (0, 0);
    a.0.iter().rev().zip(b.0.iter().rev()).all(|(x, y)| {
        sa += x;
        sb += y;
        sa >= sb
    })
}

fn basis(better: &KVector, worse: &KVector) -> DominanceBasis {
    if better.0.iter().zip(&worse.0).all(|(a, b)| a >= b) {
        DominanceBasis::Componentwise
    } else if better.total() == worse.total() {
        DominanceBasis::EqualSumMajorization
    } else {
        DominanceBasis::WeakMajorization
    }
}

/// Orders two targets by the consumer surplus their k-vectors guarantee for
/// any increasing concave free-rider utility.
pub fn compare_targets(k1: &KVector, k2: &KVector) -> Result<TargetComparison> {
    if k1.len() != k2.len() {
        return Err(Error::domain(format!(
            "k-vectors have different lengths ({} vs {})",
            k1.len(),
            k2.len()
        )));
    }
    Ok(if weakly_supermajorizes(k1, k2) {
        TargetComparison {
            ordering: TargetOrdering::FirstWeaklyBetter,
            basis: Some(basis(k1, k2)),
        }
    } else if weakly_supermajorizes(k2, k1) {
        TargetComparison {
            ordering: TargetOrdering::SecondWeaklyBetter,
            basis: Some(basis(k2, k1)),
        }
    } else {
        TargetComparison {
            ordering: TargetOrdering::Incomparable,
            basis: None,
        }
    })
}

fn served_precision(m: usize, params: &ModelParams) -> Result<f64> {
    let z = params.seller_precision(m);
    if z <= 0.0 {
        return Err(Error::TrivialMarket { z });
    }
    Ok(z)
}

/// Expected utility of every buyer when `target` is served at the
/// seller-optimal precision for `|target|` buyers.
pub fn per_node_utilities(g: &Network, target: &NodeSet, params: &ModelParams) -> Result<Vec<f64>> {
    let z = served_precision(target.len(), params)?;
    let counts = purchase_counts(g, target)?;
    Ok((0..g.node_count())
        .map(|i| {
            if target.contains(i) {
                -1.0 / params.z0()
            } else {
                -1.0 / (params.z0() + counts.0[i] as f64 * z)
            }
        })
        .collect())
}

/// Total buyer utility net of prices under the seller-optimal contract that
/// serves `target`.
pub fn consumer_surplus(g: &Network, target: &NodeSet, params: &ModelParams) -> Result<f64> {
    let z = served_precision(target.len(), params)?;
    let k = k_vector(g, target)?;
    Ok(surplus_from_k(target.len(), &k, z, params))
}

fn surplus_from_k(m: usize, k: &KVector, z: f64, params: &ModelParams) -> f64 {
    let served = -(m as f64) / params.z0();
    k.0.iter()
        .fold(served, |acc, &mi| acc - 1.0 / (params.z0() + mi as f64 * z))
}

#[derive(Debug, Clone, PartialEq)]
pub struct WelfareReport {
    pub target: NodeSet,
    pub consumer_surplus: f64,
    pub seller_profit: f64,
    pub social_welfare: f64,
    pub k: KVector,
    /// Indexed by 0-based node.
    pub per_node_utilities: Vec<f64>,
}

/// Welfare accounting for the seller-optimal contract serving `target`.
pub fn welfare_report(g: &Network, target: &NodeSet, params: &ModelParams) -> Result<WelfareReport> {
    let consumer_surplus = consumer_surplus(g, target, params)?;
    let seller_profit = profit_closed_form(target.len(), params)?;
    Ok(WelfareReport {
        target: target.clone(),
        consumer_surplus,
        seller_profit,
        social_welfare: consumer_surplus + seller_profit,
        k: k_vector(g, target)?,
        per_node_utilities: per_node_utilities(g, target, params)?,
    })
}

/// The consumer-best target among the first `cap` maximum independent sets.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsumerBest {
    pub report: WelfareReport,
    /// Number of maximum independent sets compared.
    pub candidates: usize,
    pub truncated: bool,
}

/// Among the maximum independent sets (all equally profitable for the
/// seller), the one that maximizes consumer surplus; ties go to the lowest
/// bitmask.
pub fn best_target_for_consumers(g: &Network, params: &ModelParams, cap: usize) -> Result<ConsumerBest> {
    let mis = enumerate_maximum_independent_sets(g, cap)?;
    let z = served_precision(mis.alpha, params)?;
    let mut best: Option<(f64, &NodeSet)> = None;
    for s in &mis.sets {
        let cs = surplus_from_k(mis.alpha, &k_vector(g, s)?, z, params);
        if best.is_none_or(|(b, _)| cs > b) {
            best = Some((cs, s));
        }
    }
    let (_, target) = best.expect("every network has a maximum independent set");
    Ok(ConsumerBest {
        report: welfare_report(g, target, params)?,
        candidates: mis.sets.len(),
        truncated: mis.truncated,
    })
}

/// Social welfare when every buyer is served at precision `z`:
/// `sum_i -1/(z0 + (deg_i + 1) z) - gamma z`.
pub fn social_welfare(g: &Network, z: f64, params: &ModelParams) -> f64 {
    (0..g.node_count())
        .map(|i| -1.0 / (params.z0() + (g.degree(i) + 1) as f64 * z))
        .sum::<f64>()
        - params.gamma() * z
}

/// Social welfare of serving `target` at precision `z`, prices netted out.
pub fn contract_social_welfare(
    g: &Network,
    target: &NodeSet,
    z: f64,
    params: &ModelParams,
) -> Result<f64> {
    let counts = purchase_counts(g, target)?;
    Ok((0..g.node_count())
        .map(|i| {
            let observed = counts.0[i] + usize::from(target.contains(i));
            -1.0 / (params.z0() + observed as f64 * z)
        })
        .sum::<f64>()
        - params.gamma() * z)
}

/// Left side minus right side of the efficient first-order condition,
/// `sum_i (deg_i + 1) / (z0 + (deg_i + 1) z)^2 - gamma`.
pub fn efficiency_foc(g: &Network, z: f64, params: &ModelParams) -> f64 {
    (0..g.node_count())
        .map(|i| {
            let d = (g.degree(i) + 1) as f64;
            d / (params.z0() + d * z).powi(2)
        })
        .sum::<f64>()
        - params.gamma()
}

/// Absolute bisection tolerance for the efficient precision.
pub const EFFICIENT_Z_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficientPrecision {
    pub z_star: f64,
    /// The first-order condition has no positive root; `z_star` is 0.
    pub corner: bool,
    /// First-order-condition residual at `z_star`.
    pub residual: f64,
}

/// Welfare-maximizing common precision when every buyer is served.
pub fn socially_efficient_precision(g: &Network, params: &ModelParams) -> EfficientPrecision {
    let foc = |z: f64| efficiency_foc(g, z, params);
    if foc(0.0) <= 0.0 {
        return EfficientPrecision {
            z_star: 0.0,
            corner: true,
            residual: foc(0.0),
        };
    }
    let total: f64 = (0..g.node_count()).map(|i| (g.degree(i) + 1) as f64).sum();
    let mut hi = (total / params.gamma()).sqrt() + params.z0();
    while foc(hi) > 0.0 {
        hi *= 2.0;
    }
    let z_star = bisect_decreasing(foc, 0.0, hi, EFFICIENT_Z_TOLERANCE);
    EfficientPrecision {
        z_star,
        corner: false,
        residual: foc(z_star),
    }
}

/// Seller-optimal versus socially efficient precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionGap {
    pub z_star: f64,
    /// `sqrt(alpha/gamma) - z0`, floored at 0 for a trivial market.
    pub z_seller: f64,
    /// `z_seller - z_star`.
    pub gap: f64,
    pub clique_union: bool,
    /// `sqrt(caro_wei / gamma)`: the efficient precision as `z0 -> 0`.
    pub limit_z_star: f64,
    /// `sqrt(alpha / gamma)`: the seller precision as `z0 -> 0`.
    pub limit_z_seller: f64,
}

pub fn precision_gap(g: &Network, params: &ModelParams) -> PrecisionGap {
    let z_star = socially_efficient_precision(g, params).z_star;
    let alpha = independence_number(g);
    let z_seller = params.seller_precision(alpha).max(0.0);
    PrecisionGap {
        z_star,
        z_seller,
        gap: z_seller - z_star,
        clique_union: is_union_of_cliques(g),
        limit_z_star: (caro_wei_bound(g) / params.gamma()).sqrt(),
        limit_z_seller: (alpha as f64 / params.gamma()).sqrt(),
    }
}
