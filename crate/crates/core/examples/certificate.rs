//! A construction certificate is enough to rebuild the object. Write one,
//! read it back, rebuild and compare.

use radoforge::rado_construct::{rado_graph, RadoCertificate, RadoOptions};
use radoforge::structures::graph_to_text;
use radoforge::Prng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = rado_graph(256, 1, &mut Prng::new(9, 0), &RadoOptions::default())?;
    let text = r.certificate.to_text();
    println!("{}", text.lines().take(6).collect::<Vec<_>>().join("\n"));
    println!("... ({} lines)", text.lines().count());

    let back = RadoCertificate::parse(&text)?;
    back.validate()?;
    let rebuilt = back.to_graph()?;
    println!("rebuilt graph identical: {}", graph_to_text(&rebuilt) == graph_to_text(&r.graph));
    Ok(())
}
