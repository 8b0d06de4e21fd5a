//! Profit effects of single network edits and Pareto-efficiency certificates.
//!
//! Seller profit depends on the network only through its independence
//! number, so every edit is scored by the optimal profit at the new `alpha`.
//! Consumer surplus is taken at the consumer-best maximum independent set.

use rayon::prelude::*;

use crate::contract::{profit_closed_form, ModelParams};
use crate::error::{Error, Result};
use crate::graph::{
    enumerate_maximum_independent_sets, independence_number, is_core_periphery, CorePeriphery,
    Network, NodeSet, DEFAULT_ENUMERATION_CAP,
};
use crate::welfare::{best_target_for_consumers, per_node_utilities};

/// A single edit, with 0-based operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Intervention {
    /// Drop the edge `(u, v)`, `u < v`.
    RemoveLink(usize, usize),
    /// Drop every edge at `v`; the buyer stays in the market.
    IsolateNode(usize),
}

impl Intervention {
    pub fn apply(&self, g: &Network) -> Result<Network> {
        let mut h = g.clone();
        match *self {
            Intervention::RemoveLink(u, v) => h.remove_edge(u, v)?,
            Intervention::IsolateNode(v) => h.isolate(v)?,
        }
        Ok(h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterventionOutcome {
    pub kind: Intervention,
    pub alpha_before: usize,
    pub alpha_after: usize,
    pub profit_delta: f64,
    /// Change in consumer surplus at the consumer-best maximum independent set.
    pub cs_delta: f64,
}

/// Seller profit under the optimal contract when `alpha` buyers are
/// targeted; 0 when the market is trivial.
pub fn optimal_profit(alpha: usize, params: &ModelParams) -> f64 {
    if params.seller_precision(alpha) <= 0.0 {
        0.0
    } else {
        profit_closed_form(alpha, params).expect("alpha is positive")
    }
}

/// Consumer surplus at the consumer-best maximum independent set; every
/// buyer keeps its prior utility `-1/z0` in a trivial market.
fn best_surplus(g: &Network, params: &ModelParams) -> Result<f64> {
    match best_target_for_consumers(g, params, DEFAULT_ENUMERATION_CAP) {
        Ok(best) => Ok(best.report.consumer_surplus),
        Err(Error::TrivialMarket { .. }) => Ok(-(g.node_count() as f64) / params.z0()),
        Err(e) => Err(e),
    }
}

struct Baseline {
    alpha: usize,
    profit: f64,
    surplus: f64,
}

impl Baseline {
    fn of(g: &Network, params: &ModelParams) -> Result<Self> {
        let alpha = independence_number(g);
        Ok(Baseline {
            alpha,
            profit: optimal_profit(alpha, params),
            surplus: best_surplus(g, params)?,
        })
    }
}

fn evaluate(
    g: &Network,
    kind: Intervention,
    before: &Baseline,
    params: &ModelParams,
) -> Result<InterventionOutcome> {
    let h = kind.apply(g)?;
    let after = Baseline::of(&h, params)?;
    Ok(InterventionOutcome {
        kind,
        alpha_before: before.alpha,
        alpha_after: after.alpha,
        profit_delta: after.profit - before.profit,
        cs_delta: after.surplus - before.surplus,
    })
}

pub fn evaluate_link_removal(
    g: &Network,
    u: usize,
    v: usize,
    params: &ModelParams,
) -> Result<InterventionOutcome> {
    if !g.has_edge(u, v) {
        return Err(Error::domain(format!("({}, {}) is not an edge", u + 1, v + 1)));
    }
    let kind = Intervention::RemoveLink(u.min(v), u.max(v));
    evaluate(g, kind, &Baseline::of(g, params)?, params)
}

pub fn evaluate_node_isolation(g: &Network, v: usize, params: &ModelParams) -> Result<InterventionOutcome> {
    if v >= g.node_count() {
        return Err(Error::domain(format!("node index {v} out of range")));
    }
    evaluate(g, Intervention::IsolateNode(v), &Baseline::of(g, params)?, params)
}

/// Every single-link removal and every isolation of a non-isolated node,
/// best profit gain first. Ties go to link removals before isolations, then
/// to smaller operands. Returns at most `budget` entries.
pub fn scan_interventions(
    g: &Network,
    params: &ModelParams,
    budget: usize,
) -> Result<Vec<InterventionOutcome>> {
    if budget == 0 {
        return Err(Error::domain("intervention budget must be at least 1"));
    }
    let before = Baseline::of(g, params)?;
    let candidates: Vec<Intervention> = g
        .edges()
        .map(|(u, v)| Intervention::RemoveLink(u, v))
        .chain(
            (0..g.node_count())
                .filter(|&v| g.degree(v) > 0)
                .map(Intervention::IsolateNode),
        )
        .collect();
    let mut outcomes = candidates
        .into_par_iter()
        .map(|kind| evaluate(g, kind, &before, params))
        .collect::<Result<Vec<_>>>()?;
    outcomes.sort_by(|a, b| {
        b.profit_delta
            .total_cmp(&a.profit_delta)
            .then(a.kind.cmp(&b.kind))
    });
    outcomes.truncate(budget);
    Ok(outcomes)
}

/// Free rider in a core-periphery certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeRider {
    pub node: usize,
    /// Purchasing neighbors; equals the periphery size.
    pub m: usize,
    pub utility: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParetoCheck {
    /// Present when the network is core-periphery, which certifies Pareto
    /// efficiency. The periphery is then a maximum independent set, and the
    /// only one when it has at least two nodes.
    pub certificate: Option<CorePeriphery>,
    pub free_riders: Vec<FreeRider>,
}

impl ParetoCheck {
    pub fn is_core_periphery(&self) -> bool {
        self.certificate.is_some()
    }
}

pub fn pareto_efficient_check(g: &Network, params: &ModelParams) -> ParetoCheck {
    let Some(cp) = is_core_periphery(g) else {
        return ParetoCheck {
            certificate: None,
            free_riders: Vec::new(),
        };
    };
    let m = cp.periphery.len();
    let z = params.seller_precision(m).max(0.0);
    let free_riders = cp
        .core
        .iter()
        .map(|node| FreeRider {
            node,
            m: g.neighbors(node).intersection_len(&cp.periphery),
            utility: -1.0 / (params.z0() + m as f64 * z),
        })
        .collect();
    ParetoCheck {
        certificate: Some(cp),
        free_riders,
    }
}

/// Largest network the exhaustive Pareto search accepts.
pub const MAX_EXHAUSTIVE_PARETO: usize = 6;

const UTILITY_TOL: f64 = 1e-12;

/// Buyer utilities when the seller serves `target` optimally, or everyone's
/// prior utility when the market is trivial.
fn utilities(g: &Network, target: &NodeSet, params: &ModelParams) -> Vec<f64> {
    per_node_utilities(g, target, params)
        .unwrap_or_else(|_| vec![-1.0 / params.z0(); g.node_count()])
}

/// Searches every labeled network on the same buyers for a Pareto
/// improvement over `g`: seller profit no lower and, for some maximum
/// independent set the seller could target, every buyer weakly better off
/// with someone (seller or buyer) strictly better. The baseline buyer
/// utilities are those at `g`'s consumer-best maximum independent set.
/// Returns the first improving network in edge-mask order, if any.
pub fn exhaustive_pareto_check(g: &Network, params: &ModelParams) -> Result<Option<Network>> {
    let n = g.node_count();
    if n > MAX_EXHAUSTIVE_PARETO {
        return Err(Error::Capacity {
            n,
            limit: MAX_EXHAUSTIVE_PARETO,
        });
    }
    let alpha = independence_number(g);
    let profit = optimal_profit(alpha, params);
    let base_target = match best_target_for_consumers(g, params, DEFAULT_ENUMERATION_CAP) {
        Ok(best) => best.report.target,
        Err(Error::TrivialMarket { .. }) => NodeSet::empty(n),
        Err(e) => return Err(e),
    };
    let base = utilities(g, &base_target, params);

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let improves = |mask: u64| -> Result<Option<Network>> {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let h = Network::from_edges(n, &edges)?;
        let mis = enumerate_maximum_independent_sets(&h, DEFAULT_ENUMERATION_CAP)?;
        let p = optimal_profit(mis.alpha, params);
        if p < profit - UTILITY_TOL * profit.abs() {
            return Ok(None);
        }
        let seller_gain = p > profit + UTILITY_TOL * profit.abs();
        for target in &mis.sets {
            let u = utilities(&h, target, params);
            let weakly = u
                .iter()
                .zip(&base)
                .all(|(a, b)| *a >= b - UTILITY_TOL * b.abs());
            let strictly = u.iter().zip(&base).any(|(a, b)| *a > b + UTILITY_TOL * b.abs());
            if weakly && (strictly || seller_gain) {
                return Ok(Some(h));
            }
        }
        Ok(None)
    };
    let found = (0..1u64 << pairs.len())
        .into_par_iter()
        .map(improves)
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().next())
}
