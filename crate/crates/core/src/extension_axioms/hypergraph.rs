use crate::bits::BitSet;
use crate::budget::Budget;
use crate::combin::{binomial, combinations, next_combination};
use crate::error::{Error, Result};
use crate::structures::Hypergraph;

use super::{EaReport, Violation};

/// Nominal work `C(n,k) * 2^C(k,t-1) * n * C(k,t-1)`.
pub fn ea_hypergraph_work(n: usize, t: usize, k: usize) -> u128 {
    let m = binomial(k as u128, (t - 1) as u128);
    let fam = 1u128.checked_shl(m.min(127) as u32).unwrap_or(u128::MAX);
    binomial(n as u128, k as u128)
        .saturating_mul(fam)
        .saturating_mul(n as u128)
        .saturating_mul(m)
}

/// Whether `v ∉ s` closes exactly the `(t-1)`-subsets of `s` listed in `target`.
pub fn is_hypergraph_extension(h: &Hypergraph, s: &[usize], target: &[Vec<usize>], v: usize) -> bool {
    if s.contains(&v) {
        return false;
    }
    combinations(s.len(), h.t() - 1).all(|pos| {
        let sub: Vec<usize> = pos.iter().map(|&p| s[p]).collect();
        let mut e = sub.clone();
        e.push(v);
        h.has_edge(&e) == target.contains(&sub)
    })
}

/// Checks EA^t_k: for every k-set `S` and every family `T` of `(t-1)`-subsets
/// of `S`, some `v ∉ S` forms a hyperedge with exactly the members of `T`.
///
/// Families are ordered by bitmask over the `(t-1)`-subsets of `S` listed in
/// lexicographic order; the least missing family of the first failing `S` is
/// reported.
pub fn check_ea_hypergraph(h: &Hypergraph, k: usize, budget: &Budget) -> Result<EaReport> {
    let (n, t) = (h.n(), h.t());
    if k + 1 < t || k >= n {
        return Err(Error::pre(format!(
            "need t - 1 <= k <= n - 1, got k = {k}, t = {t}, n = {n}"
        )));
    }
    let m = binomial(k as u128, (t - 1) as u128) as usize;
    if m > 30 {
        return Err(Error::pre("more than 30 (t-1)-subsets per k-set is not supported"));
    }
    budget.check(ea_hypergraph_work(n, t, k))?;

    let subs: Vec<Vec<usize>> = combinations(k, t - 1).collect();
    let families = 1usize << m;
    let mut seen = BitSet::new(families);
    let mut edge = vec![0usize; t];
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        for w in seen.words_mut() {
            *w = 0;
        }
        let mut distinct = 0usize;
        for v in 0..n {
            if s.contains(&v) {
                continue;
            }
            let mut mask = 0usize;
            for (j, pos) in subs.iter().enumerate() {
                // Sorted insertion of v into the subset.
                let mut out = 0;
                let mut placed = false;
                for &p in pos {
                    let x = s[p];
                    if !placed && v < x {
                        edge[out] = v;
                        out += 1;
                        placed = true;
                    }
                    edge[out] = x;
                    out += 1;
                }
                if !placed {
                    edge[out] = v;
                }
                if h.has_sorted_edge(&edge) {
                    mask |= 1 << j;
                }
            }
            if !seen.get(mask) {
                seen.insert(mask);
                distinct += 1;
                if distinct == families {
                    break;
                }
            }
        }
        if distinct < families {
            let missing = (0..families).find(|&f| !seen.get(f)).expect("a family is missing");
            let target = subs
                .iter()
                .enumerate()
                .filter(|(j, _)| missing >> j & 1 == 1)
                .map(|(_, pos)| pos.iter().map(|&p| s[p]).collect())
                .collect();
            return Ok(EaReport::fail(Violation::Hypergraph { s, target }));
        }
        if !next_combination(&mut s, n) {
            return Ok(EaReport::ok());
        }
    }
}
