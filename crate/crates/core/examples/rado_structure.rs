//! Smallest structure with one binary relation satisfying the 1-extension
//! axiom that the construction can produce, plus a two-relation example.

use radoforge::extension_axioms::check_ea_structure;
use radoforge::rado_construct::{rado_structure, rado_structure_lower_bound, RadoOptions};
use radoforge::structures::Signature;
use radoforge::{Budget, Error, Prng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = RadoOptions::default();
    for text in ["R 2", "E 2; P 1"] {
        let sig = Signature::parse_inline(text)?;
        let n = rado_structure_lower_bound(&sig, 1) as usize;
        let r = rado_structure(&sig, n, 1, &mut Prng::new(3, 0), &opts)?;
        let holds = check_ea_structure(&r.structure, 1, &Budget::unlimited())?.holds();
        println!("<{sig}> n={n}: {} tuples, EA1 {holds}", r.structure.total_tuples());
    }

    // one ternary relation needs far more room than a laptop offers at k = 2
    match rado_structure(&Signature::parse_inline("R 3")?, 32, 2, &mut Prng::new(3, 0), &opts) {
        Err(Error::Infeasible { min_n, .. }) => println!("<R 3> at k=2 needs n >= {min_n}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
