//! Entropy orders on signatures and the resulting classification of
//! pseudorandom generators, for every pair of small signatures.

use radoforge::entropy_classify::{classify, geq_lex, geq_surj, surjection_total, Logic};
use radoforge::structures::Signature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigs: Vec<Signature> =
        ["R 1", "R 1; S 1", "R 2", "R 2; S 1", "R 3"].iter().map(|s| Signature::parse_inline(s)).collect::<Result<_, _>>()?;

    println!("surjection profile T(sigma, k) for k = 1..3");
    for s in &sigs {
        let t: Vec<u128> = (1..=3).map(|k| surjection_total(s, k)).collect();
        println!("  {:<10} {t:?}", s.to_string());
    }

    println!("\n{:<10} {:<10} {:>4} {:>4}  FO/FO      LFPp/FO    LFPp/LFPp", "sigma", "tau", ">=L", ">=S");
    for s in &sigs {
        for t in &sigs {
            let v = |g, a| classify(g, a, s, t).map(|c| c.verdict.to_string());
            println!(
                "{:<10} {:<10} {:>4} {:>4}  {:<10} {:<10} {}",
                s.to_string(),
                t.to_string(),
                geq_lex(s, t)? as u8,
                geq_surj(s, t).holds as u8,
                v(Logic::Fo, Logic::Fo)?,
                v(Logic::LfpParity, Logic::Fo)?,
                v(Logic::LfpParity, Logic::LfpParity)?
            );
        }
    }
    Ok(())
}
