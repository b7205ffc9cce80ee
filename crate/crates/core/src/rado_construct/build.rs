use crate::budget::Budget;
use crate::combin::{factorial, permutations, pow_sat};
use crate::error::{Error, Result};
use crate::extension_axioms::{atomic_entry_count, check_ea_graph, check_ea_structure, ea_graph_work, ea_structure_work};
use crate::prng::Prng;
use crate::structures::{Graph, RelStructure, Signature};

use super::certificate::{ClosedHash, PatternRange, RadoCertificate};
use super::phf::build_perfect_hash_family;
use super::tournament::{find_dominating_tournament, MAX_K};
use super::universal::{build_universal_set, Backend};

#[derive(Debug, Clone)]
pub struct RadoOptions {
    pub backend: Backend,
    /// Re-sampling limit for each randomized ingredient.
    pub max_tries: usize,
    /// Work cap for ingredient verification.
    pub budget: Budget,
    /// Work cap for the final extension-axiom check; skipped when exceeded.
    pub verify_budget: Budget,
}

impl Default for RadoOptions {
    fn default() -> Self {
        RadoOptions { backend: Backend::Greedy, max_tries: 64, budget: Budget::default(), verify_budget: Budget::default() }
    }
}

#[derive(Debug, Clone)]
pub struct RadoGraph {
    pub graph: Graph,
    pub certificate: RadoCertificate,
    /// Whether the final EA_k check ran (it always passes when it runs).
    pub ea_verified: bool,
}

#[derive(Debug, Clone)]
pub struct RadoStructure {
    pub structure: RelStructure,
    pub certificate: RadoCertificate,
    pub ea_verified: bool,
}

fn check_k(k: usize) -> Result<usize> {
    if k == 0 || k > MAX_K {
        return Err(Error::pre(format!("k must be in 1..={MAX_K}, got {k}")));
    }
    Ok(1 << (3 * k))
}

/// Builds a graph on `0..n` satisfying the k-extension axiom.
pub fn rado_graph(n: usize, k: usize, rng: &mut Prng, opts: &RadoOptions) -> Result<RadoGraph> {
    let m = check_k(k)?;
    // any universal set has at least 2^k members
    let lower = (m as u128) << k;
    if (n as u128) < lower {
        return Err(Error::Infeasible {
            n,
            min_n: lower,
            detail: format!("{m} parts each need at least 2^{k} vertices"),
        });
    }
    let tournament = find_dominating_tournament(k, &mut rng.fork(), opts.max_tries, &opts.budget)?;
    let u = build_universal_set(n, k, opts.backend, &mut rng.fork(), opts.max_tries, &opts.budget)?;
    if n / m < u.len() {
        return Err(Error::Infeasible {
            n,
            min_n: (m * u.len()) as u128,
            detail: format!("{m} parts each need {} vertices for the universal set", u.len()),
        });
    }
    let certificate = RadoCertificate::assemble(n, k, tournament, PatternRange::Universal(u));
    let graph = certificate.to_graph()?;
    let mut ea_verified = false;
    if opts.verify_budget.check(ea_graph_work(n, k)).is_ok() {
        let report = check_ea_graph(&graph, k, &opts.verify_budget)?;
        if let Some(v) = report.violation {
            return Err(Error::InternalInconsistency(format!("constructed graph violates EA_{k}: {v:?}")));
        }
        ea_verified = true;
    }
    Ok(RadoGraph { graph, certificate, ea_verified })
}

/// Smallest n the structure construction could possibly accept.
pub fn rado_structure_lower_bound(sig: &Signature, k: usize) -> u128 {
    let e = atomic_entry_count(sig, k);
    let types = if e >= 127 { u128::MAX } else { 1u128 << e };
    ((1u128 << (3 * k)).saturating_mul(factorial(k as u128))).saturating_mul(types)
}

/// Builds a σ-structure on `0..n` satisfying the k-extension axiom.
pub fn rado_structure(sig: &Signature, n: usize, k: usize, rng: &mut Prng, opts: &RadoOptions) -> Result<RadoStructure> {
    let m = check_k(k)?;
    let lower = rado_structure_lower_bound(sig, k);
    if (n as u128) < lower {
        return Err(Error::Infeasible {
            n,
            min_n: lower,
            detail: format!(
                "{m} parts each need at least {}! hash functions times 2^{} atomic types",
                k,
                atomic_entry_count(sig, k)
            ),
        });
    }
    let entries = atomic_entry_count(sig, k) as u32;
    let tournament = find_dominating_tournament(k, &mut rng.fork(), opts.max_tries, &opts.budget)?;
    let phf = build_perfect_hash_family(n, k, opts.backend, &mut rng.fork(), opts.max_tries, &opts.budget)?;
    let mut hashes = Vec::new();
    for (phf_index, f) in phf.funcs().iter().enumerate() {
        for perm in permutations(k) {
            let values = f.iter().map(|&x| perm[x as usize - 1] as u8 + 1).collect();
            hashes.push(ClosedHash { phf_index, perm, values });
        }
    }
    let range_len = pow_sat(2, entries).saturating_mul(hashes.len() as u128);
    if ((n / m) as u128) < range_len {
        return Err(Error::Infeasible {
            n,
            min_n: range_len.saturating_mul(m as u128),
            detail: format!("{m} parts each need {range_len} elements for the pattern range"),
        });
    }
    let range = PatternRange::Structure { sig: sig.clone(), hashes, entries };
    let certificate = RadoCertificate::assemble(n, k, tournament, range);
    let structure = certificate.to_structure()?;
    let mut ea_verified = false;
    if opts.verify_budget.check(ea_structure_work(&structure, k)).is_ok() {
        let report = check_ea_structure(&structure, k, &opts.verify_budget)?;
        if let Some(v) = report.violation {
            return Err(Error::InternalInconsistency(format!("constructed structure violates EA_{k}: {v:?}")));
        }
        ea_verified = true;
    }
    Ok(RadoStructure { structure, certificate, ea_verified })
}
