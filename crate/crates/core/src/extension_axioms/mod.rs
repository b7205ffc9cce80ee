//! Exhaustive extension-axiom checkers for graphs, hypergraphs and
//! relational structures, plus Monte Carlo failure-rate estimation.
//!
//! Every checker computes its nominal work before starting and returns
//! [`Error::BudgetExceeded`](crate::Error::BudgetExceeded) instead of
//! truncating. On failure the reported witness is the least one in the
//! checker's enumeration order.

mod atomic;
mod estimate;
mod graph;
mod hypergraph;
mod structure;

pub use atomic::{atomic_entries, atomic_entry_count, AtomicEntry, AtomicType};
pub use estimate::{estimate_ea_failure, wilson_interval, EaKind, FailureEstimate};
pub use graph::{check_ea_graph, ea_graph_work, is_graph_extension};
pub use hypergraph::{check_ea_hypergraph, ea_hypergraph_work, is_hypergraph_extension};
pub use structure::{check_ea_structure, ea_structure_work};


/// A failing instance of an extension axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// No vertex outside `s` is adjacent to exactly `t` within `s`.
    Graph { s: Vec<usize>, t: Vec<usize> },
    /// No vertex outside `s` closes exactly the `(t-1)`-subsets in `target`.
    Hypergraph { s: Vec<usize>, target: Vec<Vec<usize>> },
    /// No element outside `fixed` realizes `missing` over it.
    Structure { fixed: Vec<usize>, missing: AtomicType },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EaReport {
    pub violation: Option<Violation>,
}

impl EaReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }

    pub(crate) fn ok() -> Self {
        EaReport { violation: None }
    }

    pub(crate) fn fail(v: Violation) -> Self {
        EaReport { violation: Some(v) }
    }
}
