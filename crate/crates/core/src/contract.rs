//! Pricing, willingness to pay and the seller-optimal contract.
//!
//! The seller collects one database of precision `z` at cost `gamma * z` and
//! sells copies at buyer-specific prices. A buyer `i` whose neighbors hold
//! `m_i` copies pays at most the drop in residual variance from adding its own
//! signal, `1/(z0 + m_i z) - 1/(z0 + (m_i + 1) z)`.
//!
//! When the prior is noisy enough, the optimal target is a maximum independent
//! set of size `m = alpha(G)`, with `z = sqrt(m/gamma) - z0` and every target
//! paying `1/z0 - sqrt(gamma/m)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_independent_set, maximum_independent_set, Network, NodeSet};

/// Prior precision `z0` and marginal data cost `gamma`, both positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    z0: f64,
    gamma: f64,
}

impl ModelParams {
    pub fn new(z0: f64, gamma: f64) -> Result<Self> {
        if !(z0.is_finite() && z0 > 0.0) {
            return Err(Error::domain(format!("z0 must be positive and finite, got {z0}")));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::domain(format!(
                "gamma must be positive and finite, got {gamma}"
            )));
        }
        Ok(ModelParams { z0, gamma })
    }

    #[inline]
    pub fn z0(&self) -> f64 {
        self.z0
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Seller precision when `m` buyers are served independently.
    #[inline]
    pub fn seller_precision(&self, m: usize) -> f64 {
        (m as f64 / self.gamma).sqrt() - self.z0
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams { z0: 0.1, gamma: 1.0 }
    }
}

/// A uniform-quality contract: who is served, at which precision and price.
#[derive(Debug, Clone, PartialEq)]
pub struct Contract {
    target: NodeSet,
    z: f64,
    prices: BTreeMap<usize, f64>,
}

impl Contract {
    /// Checks `z = 0` iff the target is empty, prices cover exactly the target
    /// and are nonnegative.
    pub fn new(target: NodeSet, z: f64, prices: BTreeMap<usize, f64>) -> Result<Self> {
        if !(z.is_finite() && z >= 0.0) {
            return Err(Error::domain(format!("precision must be nonnegative, got {z}")));
        }
        if (z == 0.0) != target.is_empty() {
            return Err(Error::domain(
                "a contract has zero precision exactly when its target is empty",
            ));
        }
        if prices.len() != target.len() || prices.keys().any(|&i| !target.contains(i)) {
            return Err(Error::domain("prices must be defined exactly on the target"));
        }
        if let Some((i, p)) = prices.iter().find(|(_, &p)| p.is_nan() || p < 0.0) {
            return Err(Error::domain(format!("price {p} for node {} is negative", i + 1)));
        }
        Ok(Contract { target, z, prices })
    }

    /// Serves nobody.
    pub fn null(n: usize) -> Self {
        Contract {
            target: NodeSet::empty(n),
            z: 0.0,
            prices: BTreeMap::new(),
        }
    }

    pub fn target(&self) -> &NodeSet {
        &self.target
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Prices keyed by 0-based node index.
    pub fn prices(&self) -> &BTreeMap<usize, f64> {
        &self.prices
    }

    /// Precision each node's own copy carries: `z` on the target, 0 elsewhere.
    pub fn precisions(&self) -> Vec<f64> {
        (0..self.target.universe())
            .map(|i| if self.target.contains(i) { self.z } else { 0.0 })
            .collect()
    }
}

/// Number of targeted neighbors of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurchaseCounts(pub Vec<usize>);

pub fn purchase_counts(g: &Network, target: &NodeSet) -> Result<PurchaseCounts> {
    g.check_members(target)?;
    Ok(PurchaseCounts(
        (0..g.node_count())
            .map(|i| g.neighbors(i).intersection_len(target))
            .collect(),
    ))
}

/// The most a buyer with `m_i` purchasing neighbors pays for its own copy.
#[inline]
pub fn marginal_price(m_i: usize, z: f64, params: &ModelParams) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let m = m_i as f64;
    1.0 / (params.z0 + m * z) - 1.0 / (params.z0 + (m + 1.0) * z)
}

/// Residual-variance reduction buyer `i` gets from its own signal, given the
/// precision every node holds (0 for nodes without a copy).
pub fn willingness_to_pay(
    g: &Network,
    i: usize,
    precisions: &[f64],
    params: &ModelParams,
) -> Result<f64> {
    check_precisions(g, precisions)?;
    if i >= g.node_count() {
        return Err(Error::domain(format!("node index {i} out of range")));
    }
    let own = precisions[i];
    if own == 0.0 {
        return Ok(0.0);
    }
    let shared: f64 = g.neighbors(i).iter().map(|j| precisions[j]).sum();
    Ok(1.0 / (params.z0 + shared) - 1.0 / (params.z0 + own + shared))
}

pub(crate) fn check_precisions(g: &Network, precisions: &[f64]) -> Result<()> {
    if precisions.len() != g.node_count() {
        return Err(Error::domain(format!(
            "{} precisions given for {} nodes",
            precisions.len(),
            g.node_count()
        )));
    }
    if let Some(z) = precisions.iter().find(|z| !(z.is_finite() && **z >= 0.0)) {
        return Err(Error::domain(format!("precision {z} is not nonnegative")));
    }
    Ok(())
}

/// Sufficient noisy-prior condition for the independent-set characterization:
/// `z0 < (n+1) / (2 sqrt(gamma) (2n+1))`, or the size-free
/// `z0 < 1 / (4 sqrt(gamma))` when `uniform`. Both are strict.
pub fn theorem1_precondition(params: &ModelParams, n: usize, uniform: bool) -> bool {
    params.z0 < precondition_bound(params, n, uniform)
}

pub fn precondition_bound(params: &ModelParams, n: usize, uniform: bool) -> f64 {
    let root = params.gamma.sqrt();
    if uniform {
        1.0 / (4.0 * root)
    } else {
        let n = n as f64;
        (n + 1.0) / (2.0 * root * (2.0 * n + 1.0))
    }
}

/// The seller-optimal contract and its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalContract {
    pub contract: Contract,
    /// Independence number of the network.
    pub m: usize,
    pub profit: f64,
    /// Size-dependent noisy-prior condition.
    pub precondition_ok: bool,
    /// Size-free noisy-prior condition.
    pub uniform_precondition_ok: bool,
    /// No positive precision is profitable; the null contract is returned.
    pub trivial: bool,
}

pub fn optimal_contract(g: &Network, params: &ModelParams) -> OptimalContract {
    let n = g.node_count();
    let target = maximum_independent_set(g);
    let m = target.len();
    let z = params.seller_precision(m);
    let precondition_ok = theorem1_precondition(params, n, false);
    let uniform_precondition_ok = theorem1_precondition(params, n, true);
    if z <= 0.0 {
        return OptimalContract {
            contract: Contract::null(n),
            m,
            profit: 0.0,
            precondition_ok,
            uniform_precondition_ok,
            trivial: true,
        };
    }
    let price = 1.0 / params.z0 - (params.gamma / m as f64).sqrt();
    let prices = target.iter().map(|i| (i, price)).collect();
    let contract = Contract { target, z, prices };
    let profit = price * m as f64 - params.gamma * z;
    OptimalContract {
        contract,
        m,
        profit,
        precondition_ok,
        uniform_precondition_ok,
        trivial: false,
    }
}

/// Revenue minus the one-off data cost `gamma * z`.
pub fn seller_profit(g: &Network, c: &Contract, params: &ModelParams) -> Result<f64> {
    g.check_members(c.target())?;
    Ok(c.prices.values().sum::<f64>() - params.gamma * c.z)
}

/// Optimal profit `m/z0 + gamma z0 - 2 sqrt(gamma m)` when `m` buyers are
/// served independently.
pub fn profit_closed_form(m: usize, params: &ModelParams) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain(
            "profit closed form needs m >= 1; an empty target earns 0",
        ));
    }
    let m = m as f64;
    Ok(m / params.z0 + params.gamma * params.z0 - 2.0 * (params.gamma * m).sqrt())
}

/// For a non-independent target, true when `z > min_i z0 / (1 + m_i)` over the
/// target, which certifies that dropping a buyer raises profit. Independent
/// targets always return false.
pub fn prop1_removal_test(
    g: &Network,
    target: &NodeSet,
    z: f64,
    params: &ModelParams,
) -> Result<bool> {
    if target.is_empty() {
        return Err(Error::domain("removal test needs a nonempty target"));
    }
    if is_independent_set(g, target)? {
        return Ok(false);
    }
    let counts = purchase_counts(g, target)?;
    let threshold = target
        .iter()
        .map(|i| params.z0 / (1.0 + counts.0[i] as f64))
        .fold(f64::INFINITY, f64::min);
    Ok(z > threshold)
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
    fn params_validation() {
        assert!(ModelParams::new(0.0, 1.0).is_err());
        assert!(ModelParams::new(0.1, -1.0).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn purchase_counts_examples() {
        let p4 = fixtures::path(4);
        // Node 1's only neighbor is 2, which is not targeted.
        assert_eq!(purchase_counts(&p4, &set(4, &[1, 3])).unwrap().0, vec![0, 2, 0, 1]);
        assert_eq!(purchase_counts(&p4, &NodeSet::empty(4)).unwrap().0, vec![0; 4]);
        let k3 = fixtures::complete(3);
        assert_eq!(purchase_counts(&k3, &set(3, &[1])).unwrap().0, vec![0, 1, 1]);
    }

    #[test]
    fn marginal_price_examples() {
        assert_eq!(marginal_price(3, 0.0, &p()), 0.0);
        let z = 2f64.sqrt() - 0.1;
        assert!((marginal_price(0, z, &p()) - (10.0 - 1.0 / 2f64.sqrt())).abs() < 1e-12);
        assert!((marginal_price(0, z, &p()) - 9.292893).abs() < 1e-6);
        assert!((marginal_price(1, 1.0, &p()) - 0.432900).abs() < 1e-6);
    }

    #[test]
    fn willingness_to_pay_examples() {
        let k2 = fixtures::complete(2);
        assert_eq!(willingness_to_pay(&k2, 0, &[0.0, 1.0], &p()).unwrap(), 0.0);
        let w = willingness_to_pay(&k2, 0, &[1.0, 1.0], &p()).unwrap();
        assert!((w - (1.0 / 1.1 - 1.0 / 2.1)).abs() < 1e-15);
        let single = fixtures::edgeless(1);
        let w = willingness_to_pay(&single, 0, &[0.9], &p()).unwrap();
        assert!((w - 9.0).abs() < 1e-12);
        assert!(willingness_to_pay(&k2, 0, &[1.0], &p()).is_err());
        assert!(willingness_to_pay(&k2, 0, &[1.0, -0.5], &p()).is_err());
    }

    #[test]
    fn precondition_examples() {
        assert!(theorem1_precondition(&p(), 4, false));
        assert!((precondition_bound(&p(), 4, false) - 5.0 / 18.0).abs() < 1e-15);
        assert!(!theorem1_precondition(&ModelParams::new(0.3, 1.0).unwrap(), 4, false));
        assert!(!theorem1_precondition(&ModelParams::new(0.25, 1.0).unwrap(), 4, true));
    }

    #[test]
    fn optimal_contract_examples() {
        let single = optimal_contract(&fixtures::edgeless(1), &p());
        assert!((single.contract.z() - 0.9).abs() < 1e-15);
        assert!((single.contract.prices()[&0] - 9.0).abs() < 1e-12);
        assert!((single.profit - 8.1).abs() < 1e-12);

        let p4 = optimal_contract(&fixtures::path(4), &p());
        assert_eq!(p4.contract.target().labels(), vec![1, 3]);
        assert!((p4.contract.z() - 1.314214).abs() < 1e-6);
        assert!((p4.contract.prices()[&0] - 9.292893).abs() < 1e-6);
        assert!((p4.profit - 17.271573).abs() < 1e-6);

        let star = optimal_contract(&fixtures::star(4), &p());
        assert_eq!(star.contract.target().labels(), vec![2, 3, 4]);
        assert!((star.contract.z() - 1.632051).abs() < 1e-6);
        assert!((star.contract.prices()[&1] - 9.422650).abs() < 1e-6);
        assert!((star.profit - 26.635898).abs() < 1e-6);
    }

    #[test]
    fn accurate_prior_gives_null_contract() {
        let params = ModelParams::new(2.0, 1.0).unwrap();
        let oc = optimal_contract(&fixtures::path(4), &params);
        assert!(oc.trivial);
        assert!(oc.contract.target().is_empty());
        assert_eq!(oc.contract.z(), 0.0);
        assert_eq!(oc.profit, 0.0);
        assert_eq!(oc.m, 2);
    }

    #[test]
    fn seller_profit_examples() {
        let g = fixtures::path(4);
        assert_eq!(seller_profit(&g, &Contract::null(4), &p()).unwrap(), 0.0);
        let oc = optimal_contract(&g, &p());
        let v = seller_profit(&g, &oc.contract, &p()).unwrap();
        assert!((v - 17.271573).abs() < 1e-6);
        let k2 = fixtures::complete(2);
        let c = Contract::new(set(2, &[1]), 0.9, [(0, 9.0)].into_iter().collect()).unwrap();
        assert!((seller_profit(&k2, &c, &p()).unwrap() - 8.1).abs() < 1e-12);
    }

    #[test]
    fn contract_invariants_enforced() {
        let t = set(3, &[1]);
        assert!(Contract::new(t.clone(), 0.0, [(0, 1.0)].into_iter().collect()).is_err());
        assert!(Contract::new(t.clone(), 1.0, BTreeMap::new()).is_err());
        assert!(Contract::new(t.clone(), 1.0, [(1, 1.0)].into_iter().collect()).is_err());
        assert!(Contract::new(t, 1.0, [(0, -1.0)].into_iter().collect()).is_err());
    }

    #[test]
    fn profit_closed_form_examples() {
        assert!((profit_closed_form(1, &p()).unwrap() - 8.1).abs() < 1e-12);
        assert!((profit_closed_form(2, &p()).unwrap() - 17.271573).abs() < 1e-6);
        assert!((profit_closed_form(3, &p()).unwrap() - 26.635898).abs() < 1e-6);
        assert!(profit_closed_form(0, &p()).is_err());
    }

    #[test]
    fn removal_test_examples() {
        let k2 = fixtures::complete(2);
        let both = set(2, &[1, 2]);
        assert!(prop1_removal_test(&k2, &both, 0.07, &p()).unwrap());
        assert!(!prop1_removal_test(&k2, &both, 0.04, &p()).unwrap());
        let p4 = fixtures::path(4);
        for z in [0.01, 1.0, 100.0] {
            assert!(!prop1_removal_test(&p4, &set(4, &[1, 3]), z, &p()).unwrap());
        }
        assert!(prop1_removal_test(&k2, &NodeSet::empty(2), 1.0, &p()).is_err());
    }
}
