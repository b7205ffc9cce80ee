//! Build a finite Rado graph, check the extension axiom on it and print a
//! summary of the certificate.
//!
//!     cargo run --release --example rado_graph -- 4096 2 7

use std::time::Instant;

use radoforge::extension_axioms::check_ea_graph;
use radoforge::rado_construct::{rado_graph, PatternRange, RadoOptions};
use radoforge::{Budget, Prng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let n = args.first().copied().unwrap_or(64);
    let k = args.get(1).copied().unwrap_or(1);
    let seed = args.get(2).copied().unwrap_or(0) as u64;

    let t0 = Instant::now();
    let r = rado_graph(n, k, &mut Prng::new(seed, 0), &RadoOptions::default())?;
    let PatternRange::Universal(u) = &r.certificate.range else { unreachable!() };
    println!(
        "built n={n} k={k}: {} edges, {} parts, universal set of size {} ({:.2?})",
        r.graph.edge_count(),
        r.certificate.parts.len(),
        u.len(),
        t0.elapsed()
    );

    let t0 = Instant::now();
    let report = check_ea_graph(&r.graph, k, &Budget::unlimited())?;
    println!("EA_{k} holds: {} ({:.2?})", report.holds(), t0.elapsed());
    Ok(())
}
