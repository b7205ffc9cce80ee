//! k-atomic types: the possible relation patterns between a new element
//! (index 0) and k fixed elements (indices 1..=k).

use std::collections::BTreeSet;
use std::fmt;

use crate::combin::all_tuples;
use crate::error::{Error, Result};
use crate::structures::{RelStructure, Signature};

/// `(relation, index tuple)`; index 0 names the extension element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicEntry {
    pub rel: usize,
    pub indices: Vec<usize>,
}

/// All entries a k-atomic type may contain, sorted by `(rel, indices)`.
pub fn atomic_entries(sig: &Signature, k: usize) -> Vec<AtomicEntry> {
    let mut out = Vec::new();
    for (rel, r) in sig.relations().iter().enumerate() {
        for indices in all_tuples(k + 1, r.arity) {
            if indices.contains(&0) {
                out.push(AtomicEntry { rel, indices });
            }
        }
    }
    out
}

/// Number of candidate entries, `sum (k+1)^a - k^a`; there are `2^this`
/// k-atomic types.
pub fn atomic_entry_count(sig: &Signature, k: usize) -> u128 {
    sig.arities()
        .iter()
        .map(|&a| {
            let a = a as u32;
            (k as u128 + 1).pow(a) - (k as u128).pow(a)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomicType {
    pub k: usize,
    pub entries: BTreeSet<AtomicEntry>,
}

impl AtomicType {
    /// The type whose entries are the set bits of `mask` over
    /// [`atomic_entries`]; masks in ascending order enumerate types canonically.
    pub fn from_mask(k: usize, canonical: &[AtomicEntry], mask: u64) -> Self {
        let entries = canonical
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .map(|(_, e)| e.clone())
            .collect();
        AtomicType { k, entries }
    }

    pub fn to_mask(&self, canonical: &[AtomicEntry]) -> Result<u64> {
        let mut mask = 0u64;
        for e in &self.entries {
            let j = canonical
                .binary_search(e)
                .map_err(|_| Error::pre(format!("entry {e:?} is not a valid {}-atomic entry", self.k)))?;
            mask |= 1 << j;
        }
        Ok(mask)
    }

    /// Whether `v0` realizes this type over `fixed` (the elements `v_1..v_k`).
    pub fn satisfied_by(&self, a: &RelStructure, v0: usize, fixed: &[usize]) -> bool {
        let canonical = atomic_entries(a.sig(), self.k);
        canonical.iter().all(|e| {
            let tuple: Vec<usize> = e
                .indices
                .iter()
                .map(|&i| if i == 0 { v0 } else { fixed[i - 1] })
                .collect();
            a.contains(e.rel, &tuple) == self.entries.contains(e)
        })
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        DisplayType { ty: self, sig }
    }
}

struct DisplayType<'a> {
    ty: &'a AtomicType,
    sig: &'a Signature,
}

impl fmt::Display for DisplayType<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .ty
            .entries
            .iter()
            .map(|e| {
                let idx: Vec<String> = e.indices.iter().map(|i| i.to_string()).collect();
                format!("{}({})", self.sig.name(e.rel), idx.join(","))
            })
            .collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Mask of the type that `v0` realizes over `fixed`.
#[inline]
pub(crate) fn realized_mask(
    a: &RelStructure,
    canonical: &[AtomicEntry],
    v0: usize,
    fixed: &[usize],
    scratch: &mut Vec<usize>,
) -> u64 {
    let mut mask = 0u64;
    for (j, e) in canonical.iter().enumerate() {
        scratch.clear();
        scratch.extend(e.indices.iter().map(|&i| if i == 0 { v0 } else { fixed[i - 1] }));
        if a.contains(e.rel, scratch) {
            mask |= 1 << j;
        }
    }
    mask
}
