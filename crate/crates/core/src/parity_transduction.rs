//! The parity transduction: a t-set becomes a hyperedge exactly when its
//! members have an odd number of common neighbours. Also the parity patterns
//! of a vertex over a fixed set, used to study which hypergraph extension
//! axioms survive the transduction.

use std::collections::BTreeSet;
use std::fmt;

use crate::combin::next_combination;
use crate::error::{Error, Result};
use crate::structures::{Graph, Hypergraph};

/// A set of nonempty subsets of a base set `S`. Subsets are stored as masks
/// over the sorted base: bit `i` stands for `base[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityPattern {
    base: Vec<usize>,
    masks: BTreeSet<u32>,
}

/// Largest base set a pattern may have.
pub const MAX_BASE: usize = 16;

impl ParityPattern {
    pub fn from_masks(base: &[usize], masks: impl IntoIterator<Item = u32>) -> Result<Self> {
        let base = sorted_base(base)?;
        let full = (1u32 << base.len()) - 1;
        let masks: BTreeSet<u32> = masks.into_iter().collect();
        if masks.iter().any(|&m| m == 0 || m & !full != 0) {
            return Err(Error::pre("pattern members must be nonempty subsets of the base"));
        }
        Ok(ParityPattern { base, masks })
    }

    pub fn from_subsets(base: &[usize], subsets: &[Vec<usize>]) -> Result<Self> {
        let sorted = sorted_base(base)?;
        let mut masks = Vec::with_capacity(subsets.len());
        for s in subsets {
            let mut m = 0u32;
            for x in s {
                let i = sorted
                    .binary_search(x)
                    .map_err(|_| Error::pre(format!("{x} is not in the base set")))?;
                m |= 1 << i;
            }
            masks.push(m);
        }
        Self::from_masks(&sorted, masks)
    }

    /// Every nonempty subset of the base.
    pub fn full(base: &[usize]) -> Result<Self> {
        let b = sorted_base(base)?;
        let n = b.len();
        Self::from_masks(&b, 1..1u32 << n)
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn masks(&self) -> &BTreeSet<u32> {
        &self.masks
    }

    pub fn contains_mask(&self, m: u32) -> bool {
        self.masks.contains(&m)
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn subsets(&self) -> Vec<Vec<usize>> {
        self.masks.iter().map(|&m| self.expand(m)).collect()
    }

    fn expand(&self, m: u32) -> Vec<usize> {
        self.base.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &x)| x).collect()
    }
}

impl fmt::Display for ParityPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .masks
            .iter()
            .map(|&m| {
                let xs: Vec<String> = self.expand(m).iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn sorted_base(base: &[usize]) -> Result<Vec<usize>> {
    let mut b = base.to_vec();
    b.sort_unstable();
    if b.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::pre("base set repeats an element"));
    }
    if b.len() > MAX_BASE {
        return Err(Error::pre(format!("base set larger than {MAX_BASE}")));
    }
    Ok(b)
}

fn and_parity(g: &Graph, vs: &[usize]) -> bool {
    let words = g.n().div_ceil(64);
    let mut ones = 0u32;
    for wi in 0..words {
        let acc = vs.iter().fold(u64::MAX, |a, &v| a & g.neighbors(v).words()[wi]);
        ones += acc.count_ones();
    }
    ones & 1 == 1
}

/// Parity of the number of common neighbours of `vs`.
pub fn common_neighbor_parity(g: &Graph, vs: &[usize]) -> Result<bool> {
    if vs.is_empty() {
        return Err(Error::pre("need at least one vertex"));
    }
    check_vertices(g, vs)?;
    Ok(and_parity(g, vs))
}

fn check_vertices(g: &Graph, vs: &[usize]) -> Result<()> {
    let mut s = vs.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::pre("vertices must be distinct"));
    }
    if let Some(&x) = s.iter().find(|&&x| x >= g.n()) {
        return Err(Error::pre(format!("vertex {x} outside 0..{}", g.n())));
    }
    Ok(())
}

/// The t-hypergraph whose edges are the t-sets with an odd number of common
/// neighbours.
pub fn apply_parity_transduction(g: &Graph, t: usize) -> Result<Hypergraph> {
    let n = g.n();
    let mut h = Hypergraph::empty(n, t)?;
    let words = n.div_ceil(64);
    // prefix[d] = intersection of the neighbourhoods of c[0..=d]
    let mut prefix = vec![vec![0u64; words]; t];
    let mut c: Vec<usize> = (0..t).collect();
    let mut valid_from = 0;
    loop {
        for d in valid_from..t {
            let row = g.neighbors(c[d]).words();
            for wi in 0..words {
                prefix[d][wi] = if d == 0 { row[wi] } else { prefix[d - 1][wi] & row[wi] };
            }
        }
        let odd = prefix[t - 1].iter().map(|w| w.count_ones()).sum::<u32>() & 1 == 1;
        if odd {
            h.set_sorted(&c, true);
        }
        let before = c.clone();
        if !next_combination(&mut c, n) {
            break;
        }
        valid_from = before.iter().zip(&c).position(|(a, b)| a != b).unwrap_or(t);
    }
    Ok(h)
}

fn check_pattern_args(g: &Graph, s: &[usize], v: usize) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(Error::pre("S must be nonempty"));
    }
    let base = sorted_base(s)?;
    check_vertices(g, &base)?;
    if v >= g.n() {
        return Err(Error::pre(format!("vertex {v} outside 0..{}", g.n())));
    }
    if base.binary_search(&v).is_ok() {
        return Err(Error::pre("v must lie outside S"));
    }
    Ok(base)
}

/// `B` is a member iff an odd number of vertices are adjacent to all of
/// `{v} ∪ B` and to none of `S \ B`.
pub fn parity_pattern_b(g: &Graph, s: &[usize], v: usize) -> Result<ParityPattern> {
    let base = check_pattern_args(g, s, v)?;
    let words = g.n().div_ceil(64);
    let nv = g.neighbors(v);
    let mut masks = Vec::new();
    for m in 1..1u32 << base.len() {
        let mut ones = 0;
        for wi in 0..words {
            let mut acc = nv.words()[wi];
            for (i, &x) in base.iter().enumerate() {
                let row = g.neighbors(x).words()[wi];
                acc &= if m >> i & 1 == 1 { row } else { !row };
            }
            ones += (acc & nv.word_mask(wi)).count_ones();
        }
        if ones & 1 == 1 {
            masks.push(m);
        }
    }
    ParityPattern::from_masks(&base, masks)
}

/// `C` is a member iff `{v} ∪ C` has an odd number of common neighbours.
pub fn parity_pattern_c(g: &Graph, s: &[usize], v: usize) -> Result<ParityPattern> {
    let base = check_pattern_args(g, s, v)?;
    ParityPattern::from_masks(&base, c_masks(g, &base, v))
}

fn c_masks(g: &Graph, base: &[usize], v: usize) -> Vec<u32> {
    let mut vs = Vec::with_capacity(base.len() + 1);
    (1..1u32 << base.len())
        .filter(|&m| {
            vs.clear();
            vs.push(v);
            vs.extend(base.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &x)| x));
            and_parity(g, &vs)
        })
        .collect()
}

/// Least `v` outside `S` whose C-pattern over `S` equals `target`.
pub fn find_parity_extension(g: &Graph, s: &[usize], target: &ParityPattern) -> Result<Option<usize>> {
    let base = sorted_base(s)?;
    if base != target.base {
        return Err(Error::pre("target pattern is over a different base set"));
    }
    check_vertices(g, &base)?;
    let want: Vec<u32> = target.masks.iter().copied().collect();
    Ok((0..g.n()).find(|v| base.binary_search(v).is_err() && c_masks(g, &base, *v) == want))
}
