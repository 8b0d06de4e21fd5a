//! Monte-Carlo check of residual variances and willingness to pay under the
//! optimal contract.
//!
//!     cargo run --release --example belief_simulation

use netsale::contract::{optimal_contract, ModelParams};
use netsale::graph::fixtures;
use netsale::simulate::{monte_carlo_mse, monte_carlo_wtp, SimulationConfig};

fn main() -> netsale::Result<()> {
    let params = ModelParams::new(0.1, 1.0)?;
    let g = fixtures::path(4);
    let contract = optimal_contract(&g, &params).contract;
    let cfg = SimulationConfig {
        samples: 500_000,
        seed: 42,
        contract: contract.clone(),
        params,
    };
    let r = monte_carlo_mse(&g, &cfg)?;
    println!("{} samples, seed {}, {}", r.samples, r.seed, r.normal_method);
    for e in &r.nodes {
        println!(
            "buyer {}: mse {:.6} +- {:.6}, theory {:.6}, z {:+.2}",
            e.node + 1,
            e.mean,
            e.se,
            e.theory,
            e.z_score
        );
    }
    for i in contract.target().iter() {
        let w = monte_carlo_wtp(&g, i, &cfg)?;
        println!(
            "buyer {} gains {:.4} +- {:.4} from its copy (price {:.4})",
            i + 1,
            w.mean,
            w.se,
            w.theory
        );
    }
    Ok(())
}
