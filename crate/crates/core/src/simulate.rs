//! Monte-Carlo check of the Gaussian belief layer.
//!
//! Each sample draws the state `theta ~ N(0, 1/z0)` and one noise term per
//! node, `eps_j ~ N(0, 1/z_j)`. A buyer averages the signals it sees with
//! precision weights and the squared error of that action is compared with
//! the closed-form residual variance.
//!
//! Sample `k` uses ChaCha8 stream `k` under the configured seed and always
//! consumes `1 + n` standard normals in node order, so the estimate does not
//! depend on how samples are split across threads. Samples are summed in
//! fixed chunks with compensated summation and the chunks are combined in
//! index order.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::contract::{check_precisions, willingness_to_pay, Contract, ModelParams};
use crate::error::{Error, Result};
use crate::graph::Network;

/// Normal generator recorded in every estimate.
pub const NORMAL_METHOD: &str = "ziggurat (rand_distr StandardNormal) over ChaCha8, one stream per sample";

const CHUNK: u64 = 8192;

/// Weight each observed signal gets in buyer `i`'s posterior mean, keyed by
/// 0-based node. Nodes with zero precision carry no signal and are omitted;
/// the missing mass `z0 / (z0 + sum z)` stays on the prior mean.
pub fn posterior_weights(
    g: &Network,
    i: usize,
    precisions: &[f64],
    z0: f64,
) -> Result<BTreeMap<usize, f64>> {
    check_precisions(g, precisions)?;
    if i >= g.node_count() {
        return Err(Error::domain(format!("node index {i} out of range")));
    }
    Ok(weights(g.closed_neighborhood(i).iter(), precisions, z0)
        .into_iter()
        .collect())
}

fn weights(observed: impl Iterator<Item = usize>, precisions: &[f64], z0: f64) -> Vec<(usize, f64)> {
    let seen: Vec<usize> = observed.filter(|&j| precisions[j] > 0.0).collect();
    let total = z0 + seen.iter().map(|&j| precisions[j]).sum::<f64>();
    seen.into_iter().map(|j| (j, precisions[j] / total)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub samples: u64,
    pub seed: u64,
    pub contract: Contract,
    pub params: ModelParams,
}

impl SimulationConfig {
    fn validate(&self, g: &Network) -> Result<Vec<f64>> {
        if self.samples == 0 {
            return Err(Error::domain("at least one sample is required"));
        }
        if self.contract.target().universe() != g.node_count() {
            return Err(Error::domain(format!(
                "contract is for {} nodes, network has {}",
                self.contract.target().universe(),
                g.node_count()
            )));
        }
        Ok(self.contract.precisions())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    /// 0-based node.
    pub node: usize,
    pub mean: f64,
    /// Standard error of `mean`; 0 for a single sample.
    pub se: f64,
    pub theory: f64,
    /// `(mean - theory) / se`, or 0 when `se` is 0.
    pub z_score: f64,
}

/// Per-node estimates with the generator settings that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub seed: u64,
    pub samples: u64,
    pub normal_method: &'static str,
    pub nodes: Vec<Estimate>,
}

/// Squared error of `plus`, minus that of `minus` when present.
struct Probe {
    plus: Vec<(usize, f64)>,
    minus: Option<Vec<(usize, f64)>>,
}

#[derive(Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    c: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

fn run_probes(cfg: &SimulationConfig, precisions: &[f64], probes: &[Probe]) -> Vec<(f64, f64)> {
    let n = precisions.len();
    let prior_sd = 1.0 / cfg.params.z0().sqrt();
    let noise_sd: Vec<f64> = precisions
        .iter()
        .map(|&z| if z > 0.0 { 1.0 / z.sqrt() } else { 0.0 })
        .collect();
    let base = ChaCha8Rng::seed_from_u64(cfg.seed);
    let chunks = cfg.samples.div_ceil(CHUNK);

    let sums: Vec<Vec<(Neumaier, Neumaier)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![(Neumaier::default(), Neumaier::default()); probes.len()];
            let mut signal = vec![0.0; n];
            for k in c * CHUNK..((c + 1) * CHUNK).min(cfg.samples) {
                let mut rng = base.clone();
                rng.set_stream(k);
                let theta = prior_sd * rng.sample::<f64, _>(StandardNormal);
                for (s, sd) in signal.iter_mut().zip(&noise_sd) {
                    *s = theta + sd * rng.sample::<f64, _>(StandardNormal);
                }
                let sq_err = |w: &[(usize, f64)]| {
                    let a: f64 = w.iter().map(|&(j, wj)| wj * signal[j]).sum();
                    (a - theta) * (a - theta)
                };
                for (p, (s1, s2)) in probes.iter().zip(acc.iter_mut()) {
                    let x = sq_err(&p.plus) - p.minus.as_deref().map_or(0.0, sq_err);
                    s1.add(x);
                    s2.add(x * x);
                }
            }
            acc
        })
        .collect();

    let mut total = vec![(Neumaier::default(), Neumaier::default()); probes.len()];
    for chunk in &sums {
        for ((t1, t2), (c1, c2)) in total.iter_mut().zip(chunk) {
            t1.add(c1.value());
            t2.add(c2.value());
        }
    }
    let count = cfg.samples as f64;
    total
        .iter()
        .map(|(s1, s2)| {
            let mean = s1.value() / count;
            let se = if cfg.samples < 2 {
                0.0
            } else {
                let var = ((s2.value() - count * mean * mean) / (count - 1.0)).max(0.0);
                (var / count).sqrt()
            };
            (mean, se)
        })
        .collect()
}

fn estimate(node: usize, (mean, se): (f64, f64), theory: f64) -> Estimate {
    Estimate {
        node,
        mean,
        se,
        theory,
        z_score: if se > 0.0 { (mean - theory) / se } else { 0.0 },
    }
}

/// Empirical mean squared error of every buyer's posterior-mean action,
/// against the residual variance `1 / (z0 + sum of observed precisions)`.
pub fn monte_carlo_mse(g: &Network, cfg: &SimulationConfig) -> Result<SimulationReport> {
    let precisions = cfg.validate(g)?;
    let z0 = cfg.params.z0();
    let probes: Vec<Probe> = (0..g.node_count())
        .map(|i| Probe {
            plus: weights(g.closed_neighborhood(i).iter(), &precisions, z0),
            minus: None,
        })
        .collect();
    let nodes = run_probes(cfg, &precisions, &probes)
        .into_iter()
        .enumerate()
        .map(|(i, stats)| {
            let observed: f64 = g.closed_neighborhood(i).iter().map(|j| precisions[j]).sum();
            estimate(i, stats, 1.0 / (z0 + observed))
        })
        .collect();
    Ok(SimulationReport {
        seed: cfg.seed,
        samples: cfg.samples,
        normal_method: NORMAL_METHOD,
        nodes,
    })
}

/// Buyer `i`'s empirical gain from its own signal: squared error without it
/// minus squared error with it, on the same draws.
pub fn monte_carlo_wtp(g: &Network, i: usize, cfg: &SimulationConfig) -> Result<Estimate> {
    let precisions = cfg.validate(g)?;
    if i >= g.node_count() {
        return Err(Error::domain(format!("node index {i} out of range")));
    }
    let z0 = cfg.params.z0();
    let with = weights(g.closed_neighborhood(i).iter(), &precisions, z0);
    let without = weights(g.neighbors(i).iter(), &precisions, z0);
    let probe = Probe {
        plus: without,
        minus: Some(with),
    };
    let stats = run_probes(cfg, &precisions, std::slice::from_ref(&probe))[0];
    let theory = willingness_to_pay(g, i, &precisions, &cfg.params)?;
    Ok(estimate(i, stats, theory))
}
