//! Checks the independent-set contract against an exhaustive scan of every
//! target set on random networks.
//!
//!     cargo run --release --example oracle_certify

use std::time::Instant;

use netsale::contract::ModelParams;
use netsale::graph::fixtures;
use netsale::oracle::brute_force_optimal;

fn main() -> netsale::Result<()> {
    let params = ModelParams::new(0.1, 1.0)?;
    for (n, p, seed) in [(8, 0.3, 1), (10, 0.5, 2), (12, 0.2, 3), (14, 0.3, 4), (16, 0.4, 5)] {
        let g = fixtures::gnp(n, p, seed);
        let t = Instant::now();
        let r = brute_force_optimal(&g, &params)?;
        println!(
            "n={n:<2} p={p:.1} scanned={:<6} best={:?} z={:.6} profit={:.6} independent={} matches={} ({:.2?})",
            r.scanned,
            r.best_target.labels(),
            r.best_z,
            r.best_profit,
            r.is_independent,
            r.matches_theorem1,
            t.elapsed()
        );
    }
    Ok(())
}
