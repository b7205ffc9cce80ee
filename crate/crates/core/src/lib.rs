//! Finite existentially-closed graphs and relational structures.
//!
//! The crate builds graphs and structures that satisfy the k-extension
//! axioms deterministically from a seed, checks extension axioms exactly and
//! by Monte Carlo, turns graphs into hypergraphs with a common-neighbour
//! parity rule, and compares relational signatures under the lexicographic
//! and surjective entropy orders (including synthesis of exactly-uniform
//! quantifier-free transductions and the type-count distinguisher).

pub mod bits;
mod budget;
pub mod cli;
pub mod combin;
mod error;
mod prng;
pub mod entropy_classify;
pub mod extension_axioms;
pub mod parity_transduction;
pub mod rado_construct;
pub mod structures;

pub use budget::{Budget, BUDGET_ENV};
pub use error::{Error, Result};
pub use prng::Prng;
