//! Finite Rado graphs and structures built from a dominating tournament, a
//! universal set (graphs) or a perfect hash family (structures). Every
//! ingredient is verified before use and the result carries a certificate
//! from which it can be rebuilt.

mod build;
mod certificate;
mod cover;
mod phf;
mod tournament;
mod universal;

pub use build::{rado_graph, rado_structure, rado_structure_lower_bound, RadoGraph, RadoOptions, RadoStructure};
pub use certificate::{ClosedHash, PatternRange, RadoCertificate};
pub use phf::{build_perfect_hash_family, randomized_phf_size, verify_phf, PerfectHashFamily};
pub use tournament::{find_dominating_tournament, verify_tournament_domination, Tournament, MAX_K};
pub use universal::{build_universal_set, randomized_universal_size, verify_universal_set, Backend, UniversalSet, VerifyMode};
