use crate::bits::BitSet;
use crate::combin::{binomial, combinations, RankTable};
use crate::error::{Error, Result};
use crate::prng::Prng;

/// A `t`-uniform hypergraph on `0..n`. Edges are stored as a bitset over the
/// colex ranks of `t`-subsets.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    t: usize,
    edges: BitSet,
    ranks: RankTable,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.t == other.t && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    pub fn empty(n: usize, t: usize) -> Result<Self> {
        if t < 2 || t > n {
            return Err(Error::InvalidArity(format!(
                "hyperedge arity t = {t} must satisfy 2 <= t <= n = {n}"
            )));
        }
        let slots = binomial(n as u128, t as u128);
        if slots > super::relstructure::CELL_CAP {
            return Err(Error::Capacity {
                cells: slots,
                cap: super::relstructure::CELL_CAP,
            });
        }
        Ok(Hypergraph {
            n,
            t,
            edges: BitSet::new(slots as usize),
            ranks: RankTable::new(n, t),
        })
    }

    pub fn complete(n: usize, t: usize) -> Result<Self> {
        let mut h = Hypergraph::empty(n, t)?;
        for w in h.edges.words_mut() {
            *w = u64::MAX;
        }
        h.edges.trim();
        Ok(h)
    }

    pub fn from_edges(n: usize, t: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let mut h = Hypergraph::empty(n, t)?;
        for e in edges {
            h.add_edge(e)?;
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    fn normalize(&self, vs: &[usize]) -> Result<Vec<usize>> {
        if vs.len() != self.t {
            return Err(Error::InvalidArity(format!(
                "edge {vs:?} has {} vertices, expected {}",
                vs.len(),
                self.t
            )));
        }
        let mut s = vs.to_vec();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::pre(format!("edge {vs:?} repeats a vertex")));
        }
        if s[self.t - 1] >= self.n {
            return Err(Error::pre(format!("edge {vs:?} outside 0..{}", self.n)));
        }
        Ok(s)
    }

    pub fn add_edge(&mut self, vs: &[usize]) -> Result<()> {
        let s = self.normalize(vs)?;
        let r = self.ranks.rank(&s);
        self.edges.insert(r);
        Ok(())
    }

    /// Membership of a sorted, distinct `t`-subset.
    #[inline]
    pub fn has_sorted_edge(&self, sorted: &[usize]) -> bool {
        self.edges.get(self.ranks.rank(sorted))
    }

    /// Membership of an arbitrary vertex list; lists that are not `t` distinct
    /// vertices are never edges.
    pub fn has_edge(&self, vs: &[usize]) -> bool {
        match self.normalize(vs) {
            Ok(s) => self.edges.get(self.ranks.rank(&s)),
            Err(_) => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones()
    }

    /// Edges as sorted tuples, in lexicographic order.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        combinations(self.n, self.t)
            .filter(|c| self.has_sorted_edge(c))
            .collect()
    }

    pub(crate) fn set_sorted(&mut self, sorted: &[usize], present: bool) {
        let r = self.ranks.rank(sorted);
        self.edges.set(r, present);
    }

    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        let mut h = Hypergraph::empty(self.n, self.t).expect("same shape");
        for e in self.edges() {
            let mapped: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
            h.add_edge(&mapped).expect("permutation keeps edges valid");
        }
        h
    }
}

/// Samples G_t(n, 1/2).
pub fn sample_random_hypergraph(n: usize, t: usize, rng: &mut Prng) -> Result<Hypergraph> {
    let mut h = Hypergraph::empty(n, t)?;
    rng.fill_words(h.edges.words_mut());
    h.edges.trim();
    Ok(h)
}
