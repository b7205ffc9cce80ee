//! Common-neighbour parity: turn G(n,1/2) into a 3-uniform hypergraph and
//! check it still looks random to the 2-extension axiom.

use radoforge::extension_axioms::check_ea_hypergraph;
use radoforge::parity_transduction::{
    apply_parity_transduction, find_parity_extension, parity_pattern_b, parity_pattern_c, ParityPattern,
};
use radoforge::structures::sample_random_graph;
use radoforge::{Budget, Prng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = sample_random_graph(100, &mut Prng::new(17, 0))?;
    let h = apply_parity_transduction(&g, 3)?;
    println!("G: {} edges, theta^3(G): {} hyperedges of {}", g.edge_count(), h.edge_count(), 100 * 99 * 98 / 6);
    println!("EA2 holds on theta^3(G): {}", check_ea_hypergraph(&h, 2, &Budget::unlimited())?.holds());

    let s = [3, 14, 15];
    println!("B-pattern of vertex 0 over {s:?}: {}", parity_pattern_b(&g, &s, 0)?);
    println!("C-pattern of vertex 0 over {s:?}: {}", parity_pattern_c(&g, &s, 0)?);

    let want = ParityPattern::from_subsets(&s, &[vec![3], vec![3, 14, 15]])?;
    match find_parity_extension(&g, &s, &want)? {
        Some(v) => println!("least vertex realizing {want}: {v}"),
        None => println!("no vertex realizes {want}"),
    }
    Ok(())
}
