//! Shared machinery for the covering families: lex-order k-subset sweeps and a
//! lazy greedy selector.

use crate::combin::binomial;
use crate::error::{Error, Result};

/// Largest number of k-subsets we keep a coverage table for.
pub(crate) const TABLE_CAP: u128 = 1 << 28;

pub(crate) fn subset_count(n: usize, k: usize) -> Result<usize> {
    let c = binomial(n as u128, k as u128);
    if c > TABLE_CAP {
        return Err(Error::Capacity { cells: c, cap: TABLE_CAP });
    }
    Ok(c as usize)
}

/// Calls `f(rank, code)` for every k-subset `s_0 < .. < s_{k-1}` of `0..n` in lex
/// order, where `code` combines the per-element labels as `sum label[s_i] << (shift*i)`.
#[inline]
pub(crate) fn sweep<F: FnMut(usize, u32)>(n: usize, k: usize, label: &[u8], shift: u32, f: &mut F) {
    sweep_blocks(n, k, label, shift, &mut |r0, prefix, sh, tail| {
        for (i, &l) in tail.iter().enumerate() {
            f(r0 + i, prefix | ((l as u32) << sh));
        }
    });
}

/// Block form of [`sweep`]: subsets sharing their first `k-1` elements have
/// consecutive ranks, so they are handed over as `(first rank, code of the
/// prefix, shift of the last label, labels of the possible last elements)`.
pub(crate) fn sweep_blocks<F: FnMut(usize, u32, u32, &[u8])>(n: usize, k: usize, label: &[u8], shift: u32, f: &mut F) {
    let mut rank = 0usize;
    rec(0, 0, k, n, 0, label, shift, &mut rank, f);
}

#[allow(clippy::too_many_arguments)]
fn rec<F: FnMut(usize, u32, u32, &[u8])>(
    start: usize,
    depth: usize,
    k: usize,
    n: usize,
    code: u32,
    label: &[u8],
    shift: u32,
    rank: &mut usize,
    f: &mut F,
) {
    let sh = shift * depth as u32;
    if depth + 1 == k {
        f(*rank, code, sh, &label[start..n]);
        *rank += n - start;
        return;
    }
    for x in start..=n - (k - depth) {
        rec(x + 1, depth + 1, k, n, code | ((label[x] as u32) << sh), label, shift, rank, f);
    }
}

/// Lazy greedy: marginal gains only shrink, so stale upper bounds are
/// re-evaluated on demand. Ties go to the lowest candidate index.
pub(crate) struct LazyGreedy {
    bound: Vec<u64>,
    stamp: Vec<usize>,
    round: usize,
}

impl LazyGreedy {
    pub(crate) fn new() -> Self {
        LazyGreedy { bound: Vec::new(), stamp: Vec::new(), round: 1 }
    }

    pub(crate) fn push(&mut self) {
        self.bound.push(u64::MAX);
        self.stamp.push(0);
    }

    pub(crate) fn push_evaluated(&mut self, gain: u64) {
        self.bound.push(gain);
        self.stamp.push(self.round);
    }

    /// Drops candidates `from..` out of contention.
    pub(crate) fn retire_from(&mut self, from: usize) {
        for b in &mut self.bound[from..] {
            *b = 0;
        }
    }

    /// Returns the chosen index and its gain; `None` when every gain is zero.
    pub(crate) fn select(&mut self, mut eval: impl FnMut(usize) -> u64) -> Option<(usize, u64)> {
        loop {
            let (best, &b) = self
                .bound
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0)))?;
            if b == 0 {
                return None;
            }
            if self.stamp[best] == self.round {
                self.round += 1;
                return Some((best, b));
            }
            self.bound[best] = eval(best);
            self.stamp[best] = self.round;
        }
    }
}
