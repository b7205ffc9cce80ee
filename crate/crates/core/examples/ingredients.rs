//! The three combinatorial ingredients of the Rado construction, built and
//! verified on their own: a dominating tournament, a universal set and a
//! perfect hash family.
//!
//!     cargo run --release --example ingredients -- 1000 3

use radoforge::rado_construct::{
    build_perfect_hash_family, build_universal_set, find_dominating_tournament, randomized_phf_size,
    randomized_universal_size, verify_phf, verify_tournament_domination, verify_universal_set, Backend, VerifyMode,
};
use radoforge::{Budget, Prng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let n = args.first().copied().unwrap_or(200);
    let k = args.get(1).copied().unwrap_or(2);
    let budget = Budget::unlimited();
    let mut rng = Prng::new(1, 0);

    let t = find_dominating_tournament(k, &mut rng, 64, &budget)?;
    println!("tournament on {} vertices, every {k}-set dominated: {}", t.size(), verify_tournament_domination(&t, k, &budget)?);

    for backend in [Backend::Greedy, Backend::Randomized] {
        let u = build_universal_set(n, k, backend, &mut rng, 64, &budget)?;
        let ok = verify_universal_set(&u, VerifyMode::Exhaustive, &budget)?;
        let p = build_perfect_hash_family(n, k, backend, &mut rng, 64, &budget)?;
        let ok2 = verify_phf(&p, VerifyMode::Exhaustive, &budget)?;
        println!(
            "{backend:?}: ({n},{k})-universal set of {} sets ({ok}), perfect hash family of {} functions ({ok2})",
            u.len(),
            p.len()
        );
    }
    println!(
        "randomized sizes for reference: {} sets, {} functions",
        randomized_universal_size(n, k),
        randomized_phf_size(n, k)
    );
    Ok(())
}
