use crate::budget::Budget;
use crate::combin::{binomial, next_combination};
use crate::error::{Error, Result};
use crate::structures::Graph;

use super::{EaReport, Violation};

/// Nominal work `C(n,k) * 2^k * n`.
pub fn ea_graph_work(n: usize, k: usize) -> u128 {
    binomial(n as u128, k as u128)
        .saturating_mul(1u128.checked_shl(k as u32).unwrap_or(u128::MAX))
        .saturating_mul(n as u128)
}

/// Whether `v` (outside `s`) is adjacent to exactly `t` within `s`.
pub fn is_graph_extension(g: &Graph, s: &[usize], t: &[usize], v: usize) -> bool {
    !s.contains(&v) && s.iter().all(|&u| g.has_edge(v, u) == t.contains(&u))
}

/// Subsets of `0..k` as bitmasks, ordered lexicographically by their sorted
/// element lists: `{}, {0}, {0,1}, {0,1,2}, {0,2}, {1}, ...`.
fn lex_subset_masks(k: usize) -> Vec<u32> {
    let mut subsets: Vec<Vec<usize>> = (0..1u32 << k)
        .map(|m| (0..k).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    subsets.sort();
    subsets
        .into_iter()
        .map(|s| s.iter().fold(0u32, |m, &i| m | 1 << i))
        .collect()
}

/// Checks the k-extension axioms: for every k-set `S` and `T ⊆ S` some
/// `v ∉ S` is adjacent to all of `T` and none of `S \ T`.
///
/// `S` runs over k-subsets in lexicographic order and `T` over subsets of `S`
/// in lexicographic order of their sorted elements; the first failing pair is
/// reported.
pub fn check_ea_graph(g: &Graph, k: usize, budget: &Budget) -> Result<EaReport> {
    let n = g.n();
    if k == 0 || k >= n {
        return Err(Error::pre(format!("need 1 <= k <= n - 1, got k = {k}, n = {n}")));
    }
    if k > 24 {
        return Err(Error::pre("k above 24 is not supported"));
    }
    budget.check(ea_graph_work(n, k))?;

    let masks = lex_subset_masks(k);
    let words = n.div_ceil(64);
    let mut s: Vec<usize> = (0..k).collect();
    let mut outside = vec![0u64; words];
    loop {
        // Valid candidates: every vertex not in S.
        for (wi, w) in outside.iter_mut().enumerate() {
            *w = g.neighbors(0).word_mask(wi);
        }
        for &x in &s {
            outside[x >> 6] &= !(1u64 << (x & 63));
        }
        for &m in &masks {
            let found = (0..words).any(|wi| {
                let mut acc = outside[wi];
                for (pos, &u) in s.iter().enumerate() {
                    let row = g.neighbors(u).words()[wi];
                    acc &= if m >> pos & 1 == 1 { row } else { !row };
                    if acc == 0 {
                        break;
                    }
                }
                acc != 0
            });
            if !found {
                let t = s
                    .iter()
                    .enumerate()
                    .filter(|(pos, _)| m >> pos & 1 == 1)
                    .map(|(_, &u)| u)
                    .collect();
                return Ok(EaReport::fail(Violation::Graph { s, t }));
            }
        }
        if !next_combination(&mut s, n) {
            return Ok(EaReport::ok());
        }
    }
}
