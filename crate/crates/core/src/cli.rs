//! The `netsale` command line.
//!
//! ```text
//! netsale <solve|oracle|mis|welfare|efficient|simulate|intervene|pareto> --graph FILE
//!         [--z0 F] [--gamma F] [--format json|text] [--seed N] [--samples N]
//!         [--cap N] [--uniform-bound]
//! ```
//!
//! `--cap` is the largest network `oracle` accepts, the enumeration limit for
//! `mis` and `welfare`, and the number of ranked edits `intervene` prints.
//! `NETSALE_THREADS` sets the size of the worker pool.
//!
//! Exit status: 0 on success, 1 on usage, parse or domain errors, 2 when an
//! exhaustive routine's capacity is exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::contract::{optimal_contract, theorem1_precondition, ModelParams};
use crate::error::{Error, Result};
use crate::graph::{
    caro_wei_bound, enumerate_maximum_independent_sets, parse_network_auto, Network,
    DEFAULT_ENUMERATION_CAP,
};
use crate::interventions::{
    exhaustive_pareto_check, pareto_efficient_check, scan_interventions, MAX_EXHAUSTIVE_PARETO,
};
use crate::oracle::{brute_force_optimal_with, OracleOptions, DEFAULT_ORACLE_CAP};
use crate::report::{
    to_json, to_text, ContractOut, EfficiencyOut, Envelope, InterventionOut, InterventionsOut,
    MisOut, OracleOut, ParetoOut, SimulationOut, WelfareOut,
};
use crate::simulate::{monte_carlo_mse, monte_carlo_wtp, SimulationConfig};
use crate::welfare::{best_target_for_consumers, precision_gap, socially_efficient_precision};

/// Environment variable holding the worker-thread count.
pub const THREADS_ENV: &str = "NETSALE_THREADS";

const DEFAULT_BUDGET: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Optimal contract: target, precision, prices, profit.
    Solve,
    /// Exhaustive scan over every target set, compared with `solve`.
    Oracle,
    /// Independence number, all maximum independent sets, Caro-Wei bound.
    Mis,
    /// Consumer-best maximum independent set and its welfare accounting.
    Welfare,
    /// Socially efficient precision against the seller's.
    Efficient,
    /// Monte-Carlo check of residual variances and willingness to pay.
    Simulate,
    /// Single-edit interventions ranked by profit gain.
    Intervene,
    /// Core-periphery certificate and, for small networks, exhaustive check.
    Pareto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "netsale", version, about = "Optimal data selling over buyer networks")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Edge list or JSON graph file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Prior precision.
    #[arg(long, default_value_t = 0.1)]
    pub z0: f64,
    /// Marginal cost of data precision.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// Oracle size limit, enumeration limit, or intervention count.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Report the size-free noisy-prior condition.
    #[arg(long)]
    pub uniform_bound: bool,
}

/// Parses `args` (program name first), runs the command, and writes the
/// document to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() {
                let usage = <RunConfig as clap::CommandFactory>::command().render_usage();
                let _ = write!(err, "{}\n{usage}\n", e.render());
                1
            } else {
                let _ = write!(out, "{}", e.render());
                0
            };
            return code;
        }
    };
    let result = match threads() {
        Ok(Some(n)) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Domain(e.to_string()))
            .and_then(|pool| pool.install(|| execute(&cfg))),
        Ok(None) => execute(&cfg),
        Err(e) => Err(e),
    };
    match result {
        Ok(doc) => match out.write_all(doc.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "netsale: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "netsale: {e}");
            match e {
                Error::Capacity { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn threads() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::Domain(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn load(path: &PathBuf) -> Result<Network> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    parse_network_auto(&text)
}

/// Runs the configured command and renders its document.
pub fn execute(cfg: &RunConfig) -> Result<String> {
    let params = ModelParams::new(cfg.z0, cfg.gamma)?;
    if cfg.samples == 0 {
        return Err(Error::Domain("--samples must be at least 1".into()));
    }
    if cfg.cap == Some(0) {
        return Err(Error::Domain("--cap must be at least 1".into()));
    }
    let g = load(&cfg.graph)?;
    let n = g.node_count();
    let precondition_ok = theorem1_precondition(&params, n, cfg.uniform_bound);
    let doc = Doc {
        cfg,
        params: &params,
    };
    match cfg.command {
        Command::Solve => Ok(doc.render(ContractOut::new(
            &optimal_contract(&g, &params),
            cfg.uniform_bound,
        ))),
        Command::Oracle => {
            let opts = OracleOptions {
                cap: cfg.cap.unwrap_or(DEFAULT_ORACLE_CAP),
                parallel: true,
            };
            let r = brute_force_optimal_with(&g, &params, opts)?;
            Ok(doc.render(OracleOut::new(&r, precondition_ok)))
        }
        Command::Mis => {
            let e = enumerate_maximum_independent_sets(&g, cfg.cap.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
            Ok(doc.render(MisOut::new(&e, caro_wei_bound(&g))))
        }
        Command::Welfare => {
            let best = best_target_for_consumers(&g, &params, cfg.cap.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
            Ok(doc.render(WelfareOut::new(&best.report, best.candidates, best.truncated)))
        }
        Command::Efficient => {
            let e = socially_efficient_precision(&g, &params);
            Ok(doc.render(EfficiencyOut::new(&precision_gap(&g, &params), e.corner, e.residual)))
        }
        Command::Simulate => {
            let contract = optimal_contract(&g, &params).contract;
            let sim = SimulationConfig {
                samples: cfg.samples,
                seed: cfg.seed,
                contract: contract.clone(),
                params,
            };
            let mse = monte_carlo_mse(&g, &sim)?;
            let wtp = contract
                .target()
                .iter()
                .map(|i| monte_carlo_wtp(&g, i, &sim))
                .collect::<Result<Vec<_>>>()?;
            Ok(doc.render(SimulationOut::new(&mse, contract.target(), contract.z(), &wtp)))
        }
        Command::Intervene => {
            let ranked = scan_interventions(&g, &params, cfg.cap.unwrap_or(DEFAULT_BUDGET))?;
            Ok(doc.render(InterventionsOut {
                interventions: ranked.iter().map(InterventionOut::from).collect(),
            }))
        }
        Command::Pareto => {
            let check = pareto_efficient_check(&g, &params);
            let exhaustive = if n <= MAX_EXHAUSTIVE_PARETO {
                let found = exhaustive_pareto_check(&g, &params)?;
                Some(found.map(|h| h.edges().map(|(u, v)| [u + 1, v + 1]).collect()))
            } else {
                None
            };
            Ok(doc.render(ParetoOut::new(&check, exhaustive)))
        }
    }
}

struct Doc<'a> {
    cfg: &'a RunConfig,
    params: &'a ModelParams,
}

impl Doc<'_> {
    fn render<T: Serialize>(&self, body: T) -> String {
        let envelope = Envelope {
            command: self
                .cfg
                .command
                .to_possible_value()
                .expect("commands are not skipped")
                .get_name()
                .to_string(),
            params: self.params.into(),
            body,
        };
        match self.cfg.format {
            Format::Json => to_json(&envelope),
            Format::Text => to_text(&envelope),
        }
    }
}
