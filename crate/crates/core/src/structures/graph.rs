use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::prng::Prng;

/// A simple undirected graph on `0..n` with bitset adjacency rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![BitSet::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::pre(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::pre(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `{u, v}`. Panics on a loop.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "graphs are irreflexive");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].get(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.rows[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Graph obtained by sending vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Checks symmetry and irreflexivity.
    pub fn is_valid(&self) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, u) && self.rows[u].ones().all(|v| self.has_edge(v, u)))
    }
}

/// Samples G(n, 1/2).
pub fn sample_random_graph(n: usize, rng: &mut Prng) -> Result<Graph> {
    if n == 0 {
        return Err(Error::pre("graph needs at least one vertex"));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.bit() {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}
