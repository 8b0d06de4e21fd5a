//! Optimal contract for a few named networks, or for a graph file given as
//! the first argument.
//!
//!     cargo run --example solve_contract -- crates/core/data/p4.json

use netsale::contract::{optimal_contract, ModelParams};
use netsale::graph::{fixtures, parse_network_auto, Network};

fn show(name: &str, g: &Network, params: &ModelParams) {
    let c = optimal_contract(g, params);
    println!(
        "{name:<12} n={:<2} alpha={:<2} target={:?} z={:.6} profit={:.6} precondition={}",
        g.node_count(),
        c.m,
        c.contract.target().labels(),
        c.contract.z(),
        c.profit,
        c.precondition_ok
    );
    for (&i, &p) in c.contract.prices() {
        println!("{:>14} buyer {} pays {p:.6}", "", i + 1);
    }
}

fn main() -> netsale::Result<()> {
    let params = ModelParams::new(0.1, 1.0)?;
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("readable graph file");
        show(&path, &parse_network_auto(&text)?, &params);
        return Ok(());
    }
    show("single", &fixtures::edgeless(1), &params);
    show("path P4", &fixtures::path(4), &params);
    show("star S5", &fixtures::star(5), &params);
    show("clique K4", &fixtures::complete(4), &params);
    show("cycle C6", &fixtures::cycle(6), &params);

    // An accurate prior leaves nothing worth selling.
    let accurate = ModelParams::new(2.0, 1.0)?;
    let c = optimal_contract(&fixtures::path(4), &accurate);
    println!("z0=2: trivial={} target={:?}", c.trivial, c.contract.target().labels());
    Ok(())
}
