//! Ranks single link removals and node isolations by the seller's gain.
//!
//!     cargo run --example network_interventions

use netsale::contract::ModelParams;
use netsale::graph::{fixtures, Network};
use netsale::interventions::{scan_interventions, Intervention};

fn show(name: &str, g: &Network, params: &ModelParams) -> netsale::Result<()> {
    println!("{name}");
    for o in scan_interventions(g, params, 5)? {
        let what = match o.kind {
            Intervention::RemoveLink(u, v) => format!("remove link {}-{}", u + 1, v + 1),
            Intervention::IsolateNode(v) => format!("isolate buyer {}", v + 1),
        };
        println!(
            "  {what:<18} alpha {} -> {}  profit {:+.6}  consumer surplus {:+.6}",
            o.alpha_before, o.alpha_after, o.profit_delta, o.cs_delta
        );
    }
    Ok(())
}

fn main() -> netsale::Result<()> {
    let params = ModelParams::new(0.1, 1.0)?;
    show("clique K4", &fixtures::complete(4), &params)?;
    show("path P5", &fixtures::path(5), &params)?;
    show("random G(9, 0.4)", &fixtures::gnp(9, 0.4, 9), &params)?;
    Ok(())
}
