//! Seller precision against the welfare-maximizing one, and their limits as
//! the prior becomes uninformative.
//!
//!     cargo run --example efficient_precision

use netsale::contract::ModelParams;
use netsale::graph::{fixtures, Network};
use netsale::welfare::precision_gap;

fn main() -> netsale::Result<()> {
    let cases: [(&str, Network); 5] = [
        ("path P4", fixtures::path(4)),
        ("cycle C6", fixtures::cycle(6)),
        ("star S5", fixtures::star(5)),
        ("clique K5", fixtures::complete(5)),
        ("K3 + K3", fixtures::disjoint_cliques(&[3, 3])),
    ];
    for z0 in [0.1, 0.01] {
        let params = ModelParams::new(z0, 1.0)?;
        println!("z0 = {z0}");
        for (name, g) in &cases {
            let gap = precision_gap(g, &params);
            let verdict = if gap.gap > 0.0 { "over-provides" } else { "under-provides" };
            println!(
                "  {name:<10} z*={:.6} seller={:.6} {verdict:<14} limits {:.6} vs {:.6}",
                gap.z_star, gap.z_seller, gap.limit_z_star, gap.limit_z_seller
            );
        }
    }
    Ok(())
}
