//! Maximum independent sets, the Caro-Wei bound and random-ordering sets.
//!
//!     cargo run --release --example enumerate_mis

use netsale::graph::{
    caro_wei_bound, enumerate_maximum_independent_sets, fixtures, is_union_of_cliques,
    maximum_independent_set, permutation_set_mean, Network,
};

fn show(name: &str, g: &Network) -> netsale::Result<()> {
    let e = enumerate_maximum_independent_sets(g, 8)?;
    let sets: Vec<_> = e.sets.iter().map(|s| s.labels()).collect();
    println!(
        "{name:<14} alpha={} caro_wei={:.4} clique_union={} sets={sets:?}{}",
        e.alpha,
        caro_wei_bound(g),
        is_union_of_cliques(g),
        if e.truncated { " ..." } else { "" }
    );
    Ok(())
}

fn main() -> netsale::Result<()> {
    show("path P4", &fixtures::path(4))?;
    show("cycle C6", &fixtures::cycle(6))?;
    show("two K3", &fixtures::disjoint_cliques(&[3, 3]))?;
    show("G(10, 0.3)", &fixtures::gnp(10, 0.3, 7))?;

    let g = fixtures::gnp(60, 0.1, 11);
    let s = maximum_independent_set(&g);
    println!("G(60, 0.1): alpha={} smallest-bitmask set={:?}", s.len(), s.labels());

    let g = fixtures::gnp(12, 0.3, 3);
    let (mean, se) = permutation_set_mean(&g, 100_000, 1)?;
    println!(
        "G(12, 0.3): mean |A(tau)| = {mean:.4} +- {se:.4}, Caro-Wei = {:.4}",
        caro_wei_bound(&g)
    );
    Ok(())
}
