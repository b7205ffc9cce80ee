//! Synthesize a quantifier-free transduction from one ternary and two unary
//! relations to three binary relations, then confirm it maps the uniform
//! distribution on 2-element structures to the uniform distribution.

use std::collections::HashMap;

use radoforge::entropy_classify::{apply_qf_transduction, build_statistical_transduction};
use radoforge::structures::{all_structures, Signature};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let from = Signature::parse_inline("R 3; S 1; T 1")?;
    let to = Signature::parse_inline("A 2; B 2; C 2")?;
    let theta = build_statistical_transduction(&from, &to)?;
    print!("{}", theta.to_text());

    let mut hits: HashMap<u128, u32> = HashMap::new();
    for a in all_structures(&from, 2)? {
        *hits.entry(apply_qf_transduction(&theta, &a)?.index()?).or_default() += 1;
    }
    let (lo, hi) = (hits.values().min().unwrap(), hits.values().max().unwrap());
    println!("\n{} distinct images of 4096 inputs, multiplicity {lo}..{hi}", hits.len());
    Ok(())
}
