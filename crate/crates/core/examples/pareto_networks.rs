//! Core-periphery certificates, and an exhaustive search for Pareto
//! improvements on small networks.
//!
//!     cargo run --release --example pareto_networks

use netsale::contract::ModelParams;
use netsale::graph::{fixtures, Network};
use netsale::interventions::{exhaustive_pareto_check, pareto_efficient_check};

fn show(name: &str, g: &Network, params: &ModelParams) -> netsale::Result<()> {
    let check = pareto_efficient_check(g, params);
    let found = exhaustive_pareto_check(g, params)?;
    match &check.certificate {
        Some(cp) => println!(
            "{name:<14} core-periphery: core {:?}, periphery {:?}",
            cp.core.labels(),
            cp.periphery.labels()
        ),
        None => println!("{name:<14} not core-periphery"),
    }
    for f in &check.free_riders {
        println!("{:>16} free rider {} sees {} copies, utility {:.6}", "", f.node + 1, f.m, f.utility);
    }
    match found {
        None => println!("{:>16} no Pareto improvement among all networks", ""),
        Some(h) => {
            let edges: Vec<_> = h.edges().map(|(u, v)| (u + 1, v + 1)).collect();
            println!("{:>16} improved by {edges:?}", "");
        }
    }
    Ok(())
}

fn main() -> netsale::Result<()> {
    let params = ModelParams::new(0.1, 1.0)?;
    show("star S4", &fixtures::star(4), &params)?;
    show("core 2 + 3", &fixtures::core_periphery(2, 3), &params)?;
    show("path P4", &fixtures::path(4), &params)?;
    show("cycle C5", &fixtures::cycle(5), &params)?;
    Ok(())
}
