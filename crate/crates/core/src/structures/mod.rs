//! Signatures, relational structures, graphs and hypergraphs, their uniform
//! samplers and canonical text formats.

mod graph;
mod hypergraph;
mod relstructure;
mod signature;
pub mod text;

pub use graph::{sample_random_graph, Graph};
pub use hypergraph::{sample_random_hypergraph, Hypergraph};
pub use relstructure::{all_structures, sample_random_structure, RelStructure, CELL_CAP};
pub use signature::{Relation, Signature, MAX_ARITY};
pub use text::{
    graph_to_text, hypergraph_to_text, parse_any, parse_graph, parse_hypergraph, parse_structure,
    structure_to_text, Parsed,
};

