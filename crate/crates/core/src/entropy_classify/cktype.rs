use std::collections::HashSet;

use crate::bits::BitSet;
use crate::budget::Budget;
use crate::combin::{all_tuples, binomial, combinations, falling, next_distinct_tuple};
use crate::error::{Error, Result};
use crate::structures::{RelStructure, Signature};

use super::orders::{surjection_count, surjection_total};

/// One possible fact of a (c,k)-type: relation `rel` holds on
/// `(y_{g(1)}, .., y_{g(a)})`, where `g` maps onto `support`. Positions are
/// 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CkEntry {
    pub rel: usize,
    pub support: Vec<usize>,
    pub g: Vec<usize>,
}

/// All candidate entries for `(sig, c, k)`: relations in order, support size
/// ascending, supports and maps lexicographic.
pub fn ck_entries(sig: &Signature, c: usize, k: usize) -> Vec<CkEntry> {
    let mut out = Vec::new();
    for rel in 0..sig.len() {
        let a = sig.arity(rel);
        for size in 1..=k.min(c) {
            for support in combinations(c, size) {
                let support: Vec<usize> = support.iter().map(|x| x + 1).collect();
                for g in all_tuples(size, a) {
                    if (0..size).all(|v| g.contains(&v)) {
                        out.push(CkEntry { rel, support: support.clone(), g: g.iter().map(|&v| support[v]).collect() });
                    }
                }
            }
        }
    }
    out
}

/// The set of facts of an ordered c-tuple using at most k distinct
/// coordinates, as a mask over [`ck_entries`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CkType {
    pub c: usize,
    pub k: usize,
    pub mask: BitSet,
}

impl CkType {
    pub fn entries(&self, sig: &Signature) -> Vec<CkEntry> {
        let all = ck_entries(sig, self.c, self.k);
        self.mask.ones().map(|i| all[i].clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.count_ones() == 0
    }

    pub fn display(&self, sig: &Signature) -> String {
        let parts: Vec<String> = self
            .entries(sig)
            .iter()
            .map(|e| {
                let ys: Vec<String> = e.g.iter().map(|p| format!("y{p}")).collect();
                format!("{}({})", sig.name(e.rel), ys.join(","))
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn type_mask(a: &RelStructure, ys: &[usize], entries: &[CkEntry], out: &mut BitSet, buf: &mut Vec<usize>) {
    for (i, e) in entries.iter().enumerate() {
        buf.clear();
        buf.extend(e.g.iter().map(|&p| ys[p - 1]));
        out.set(i, a.contains(e.rel, buf));
    }
}

pub fn ck_type_of(a: &RelStructure, ys: &[usize], k: usize) -> Result<CkType> {
    let mut seen = HashSet::new();
    for &y in ys {
        if y >= a.n() {
            return Err(Error::pre(format!("element {y} outside 0..{}", a.n())));
        }
        if !seen.insert(y) {
            return Err(Error::DuplicateElement(y));
        }
    }
    if k > ys.len() {
        return Err(Error::pre(format!("k={k} exceeds the tuple length {}", ys.len())));
    }
    let entries = ck_entries(a.sig(), ys.len(), k);
    let mut mask = BitSet::new(entries.len());
    type_mask(a, ys, &entries, &mut mask, &mut Vec::new());
    Ok(CkType { c: ys.len(), k, mask })
}

/// log2 of the number of (c,k)-types: `sum_{k'<=k} sum_i T(a_i,k') C(c,k')`.
pub fn type_count_bound(sig: &Signature, c: usize, k: usize) -> u128 {
    (1..=k)
        .map(|kk| {
            let t: u128 = sig.arities().iter().map(|&a| surjection_count(a, kk).unwrap_or(0)).sum();
            t * binomial(c as u128, kk as u128)
        })
        .sum()
}

/// Safety cap for [`find_distinguisher_c`].
pub const MAX_C: usize = 1_000_000;

/// Least `c >= k` for which τ has more (c,k)-types than σ.
pub fn find_distinguisher_c(sigma: &Signature, tau: &Signature, k: usize) -> Result<usize> {
    if k == 0 || surjection_total(sigma, k) >= surjection_total(tau, k) {
        return Err(Error::pre(format!("k={k} is not a violating index for sigma >=_S tau")));
    }
    (k..=MAX_C)
        .find(|&c| type_count_bound(sigma, c, k) < type_count_bound(tau, c, k))
        .ok_or_else(|| Error::Overflow(format!("no distinguishing c up to {MAX_C}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub all_realized: bool,
    /// Least type (as a binary number over the entries) not realized.
    pub missing: Option<CkType>,
    pub realized: usize,
}

/// Collects the (c,k)-types of all ordered distinct c-tuples of `b`.
pub fn realized_types(b: &RelStructure, c: usize, k: usize, budget: &Budget) -> Result<HashSet<BitSet>> {
    if c == 0 || c > b.n() || k > c {
        return Err(Error::pre(format!("need 1 <= k <= c <= n, got c={c}, k={k}, n={}", b.n())));
    }
    let entries = ck_entries(b.sig(), c, k);
    budget.check(falling(b.n() as u128, c as u128).saturating_mul(entries.len().max(1) as u128))?;
    let mut set = HashSet::new();
    let mut ys: Vec<usize> = (0..c).collect();
    let mut mask = BitSet::new(entries.len());
    let mut buf = Vec::new();
    loop {
        type_mask(b, &ys, &entries, &mut mask, &mut buf);
        if !set.contains(&mask) {
            set.insert(mask.clone());
        }
        if !next_distinct_tuple(&mut ys, b.n()) {
            break;
        }
    }
    Ok(set)
}

/// Whether every (c,k)-type occurs in `b`.
pub fn eval_type_realization(b: &RelStructure, c: usize, k: usize, budget: &Budget) -> Result<Realization> {
    let set = realized_types(b, c, k, budget)?;
    let e = type_count_bound(b.sig(), c, k);
    let total_fits = e < 64 && set.len() as u128 == 1u128 << e;
    if total_fits {
        return Ok(Realization { all_realized: true, missing: None, realized: set.len() });
    }
    // fewer than 2^e masks are present, so the least absent one is at most |set|
    let len = ck_entries(b.sig(), c, k).len();
    let missing = (0..=set.len() as u64)
        .map(|m| {
            let mut bs = BitSet::new(len);
            for i in 0..len.min(64) {
                bs.set(i, m >> i & 1 == 1);
            }
            bs
        })
        .find(|bs| !set.contains(bs))
        .expect("pigeonhole");
    Ok(Realization { all_realized: false, missing: Some(CkType { c, k, mask: missing }), realized: set.len() })
}
