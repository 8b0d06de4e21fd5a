//! Which maximum independent set is best for the buyers, and how k-vectors
//! order targets.
//!
//!     cargo run --example consumer_welfare

use netsale::contract::ModelParams;
use netsale::graph::{enumerate_maximum_independent_sets, fixtures};
use netsale::welfare::{best_target_for_consumers, compare_targets, k_vector, welfare_report};

fn main() -> netsale::Result<()> {
    let params = ModelParams::new(0.1, 1.0)?;
    let g = fixtures::path(4);
    let all = enumerate_maximum_independent_sets(&g, 100)?;
    let ks: Vec<_> = all.sets.iter().map(|s| k_vector(&g, s)).collect::<Result<_, _>>()?;
    for (s, k) in all.sets.iter().zip(&ks) {
        let r = welfare_report(&g, s, &params)?;
        println!(
            "target {:?}: k={:?} consumer surplus {:.6} profit {:.6} welfare {:.6}",
            s.labels(),
            k.counts(),
            r.consumer_surplus,
            r.seller_profit,
            r.social_welfare
        );
    }
    for a in 0..ks.len() {
        for b in a + 1..ks.len() {
            let c = compare_targets(&ks[a], &ks[b])?;
            println!("{:?} vs {:?}: {:?} ({:?})", ks[a].counts(), ks[b].counts(), c.ordering, c.basis);
        }
    }
    let best = best_target_for_consumers(&g, &params, 100)?;
    println!("buyers prefer {:?}", best.report.target.labels());
    Ok(())
}
