//! Type counting separates unary inputs from binary outputs: a structure with
//! one unary relation realizes at most 4 of the 16 (2,2)-types of a binary
//! relation, while a random binary structure realizes all of them.

use std::collections::HashSet;

use radoforge::entropy_classify::{eval_type_realization, find_distinguisher_c, realized_types, type_count_bound};
use radoforge::structures::{all_structures, sample_random_structure, Signature};
use radoforge::{Budget, Prng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (sigma, tau) = (Signature::parse_inline("P 1")?, Signature::parse_inline("E 2")?);
    let k = 2;
    let c = find_distinguisher_c(&sigma, &tau, k)?;
    println!("c = {c}: 2^{} sigma-types vs 2^{} tau-types", type_count_bound(&sigma, c, k), type_count_bound(&tau, c, k));

    let mut seen = HashSet::new();
    for a in all_structures(&sigma, 4)? {
        seen.extend(realized_types(&a, c, k, &Budget::unlimited())?);
    }
    println!("types realized by any unary structure on 4 elements: {}", seen.len());

    let all = (0..100u64)
        .filter(|&i| {
            let b = sample_random_structure(&tau, 60, &mut Prng::new(2, i)).unwrap();
            eval_type_realization(&b, c, k, &Budget::unlimited()).unwrap().all_realized
        })
        .count();
    println!("random binary structures on 60 elements realizing every type: {all}/100");
    Ok(())
}
