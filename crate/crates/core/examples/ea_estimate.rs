//! Monte Carlo failure rate of the extension axioms on uniform random graphs,
//! hypergraphs and structures, as n grows.

use radoforge::extension_axioms::{estimate_ea_failure, EaKind};
use radoforge::structures::Signature;
use radoforge::{Budget, Prng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::unlimited();
    let trials = 100;
    let sig = Signature::parse_inline("R 2")?;
    let kinds: Vec<(String, EaKind, usize)> = [20, 40, 60, 100]
        .into_iter()
        .flat_map(|n| {
            [
                (format!("graph n={n}"), EaKind::Graph { n }, 2),
                (format!("3-hypergraph n={n}"), EaKind::Hypergraph { n, t: 3 }, 2),
                (format!("<R 2> n={n}"), EaKind::Structure { sig: sig.clone(), n }, 1),
            ]
        })
        .collect();
    println!("{:<22} {:>2} {:>8} {:>17}", "model", "k", "rate", "95% Wilson");
    for (name, kind, k) in kinds {
        let e = estimate_ea_failure(&kind, k, trials, &mut Prng::new(5, 0), &budget)?;
        println!("{name:<22} {k:>2} {:>8.3} {:>8.3}..{:.3}", e.rate, e.wilson.0, e.wilson.1);
    }
    Ok(())
}
