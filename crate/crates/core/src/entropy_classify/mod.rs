//! Entropy orders on signatures, the pseudorandom-generator classification,
//! synthesis of exactly uniform quantifier-free transductions and the
//! (c,k)-type counting behind the matching impossibility results.

mod cktype;
mod classify;
mod formula;
mod orders;
mod synth;

pub use cktype::{
    ck_entries, ck_type_of, eval_type_realization, find_distinguisher_c, realized_types, type_count_bound, CkEntry,
    CkType, Realization, MAX_C,
};
pub use classify::{classify, Classification, Logic, Verdict};
pub use formula::{apply_qf_transduction, QfFormula, QfTransduction};
pub use orders::{geq_lex, geq_surj, surjection_count, surjection_total, SurjCheck, SURJ_CAP};
pub use synth::build_statistical_transduction;
