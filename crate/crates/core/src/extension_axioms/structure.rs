use crate::budget::Budget;
use crate::combin::{falling, next_distinct_tuple};
use crate::error::{Error, Result};
use crate::structures::RelStructure;

use super::atomic::{atomic_entries, atomic_entry_count, realized_mask, AtomicType};
use super::{EaReport, Violation};

/// Nominal work `(n)_k * 2^(sum (k+1)^a) * n`.
pub fn ea_structure_work(a: &RelStructure, k: usize) -> u128 {
    let exp: u128 = a
        .sig()
        .arities()
        .iter()
        .map(|&ar| (k as u128 + 1).saturating_pow(ar as u32))
        .fold(0u128, |x, y| x.saturating_add(y));
    let types = if exp >= 127 { u128::MAX } else { 1u128 << exp };
    falling(a.n() as u128, k as u128)
        .saturating_mul(types)
        .saturating_mul(a.n() as u128)
}

/// Checks EA^σ_k: for all ordered tuples of k distinct elements and every
/// k-atomic type, some element outside the tuple realizes the type.
///
/// Tuples run in lexicographic order, types in canonical mask order (see
/// [`AtomicType::from_mask`]).
pub fn check_ea_structure(a: &RelStructure, k: usize, budget: &Budget) -> Result<EaReport> {
    let n = a.n();
    if k == 0 || k >= n {
        return Err(Error::pre(format!("need 1 <= k <= n - 1, got k = {k}, n = {n}")));
    }
    let entry_bits = atomic_entry_count(a.sig(), k);
    if entry_bits > 40 {
        return Err(Error::pre(format!(
            "{entry_bits} atomic entries; at most 40 are supported"
        )));
    }
    budget.check(ea_structure_work(a, k))?;

    let canonical = atomic_entries(a.sig(), k);
    let types = 1u64 << entry_bits;
    let mut scratch = Vec::new();
    let mut masks: Vec<u64> = Vec::with_capacity(n);
    let mut fixed: Vec<usize> = (0..k).collect();
    loop {
        masks.clear();
        for v0 in 0..n {
            if !fixed.contains(&v0) {
                masks.push(realized_mask(a, &canonical, v0, &fixed, &mut scratch));
            }
        }
        masks.sort_unstable();
        masks.dedup();
        if masks.len() as u64 != types {
            let missing = masks
                .iter()
                .enumerate()
                .find(|(i, &m)| *i as u64 != m)
                .map(|(i, _)| i as u64)
                .unwrap_or(masks.len() as u64);
            return Ok(EaReport::fail(Violation::Structure {
                fixed,
                missing: AtomicType::from_mask(k, &canonical, missing),
            }));
        }
        if !next_distinct_tuple(&mut fixed, n) {
            return Ok(EaReport::ok());
        }
    }
}
