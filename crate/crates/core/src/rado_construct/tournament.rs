use crate::bits::BitSet;
use crate::budget::Budget;
use crate::combin::{binomial, next_combination};
use crate::error::{Error, Result};
use crate::prng::Prng;

/// An orientation of the complete graph on `0..m`; `beats(i, j)` means the
/// arc goes `i -> j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    out: Vec<BitSet>,
}

impl Tournament {
    /// Builds from a row matrix; `rows[i][j]` is the arc `i -> j`.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let m = rows.len();
        let mut out = vec![BitSet::new(m); m];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::pre("tournament matrix is not square"));
            }
            for (j, &b) in row.iter().enumerate() {
                out[i].set(j, b);
            }
        }
        let t = Tournament { out };
        if !t.is_valid() {
            return Err(Error::pre(
                "not a tournament: need exactly one arc per pair and no loops",
            ));
        }
        Ok(t)
    }

    /// The cyclic tournament `i -> i+1 (mod 3)`.
    pub fn cyclic3() -> Self {
        Tournament::from_rows(&[
            vec![false, true, false],
            vec![false, false, true],
            vec![true, false, false],
        ])
        .unwrap()
    }

    /// The transitive tournament where `i -> j` iff `i < j`.
    pub fn transitive(m: usize) -> Self {
        let rows: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| i < j).collect()).collect();
        Tournament::from_rows(&rows).unwrap()
    }

    pub fn random(m: usize, rng: &mut Prng) -> Self {
        let mut out = vec![BitSet::new(m); m];
        for i in 0..m {
            for j in i + 1..m {
                if rng.bit() {
                    out[i].insert(j);
                } else {
                    out[j].insert(i);
                }
            }
        }
        Tournament { out }
    }

    pub fn size(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.out[i].get(j)
    }

    pub fn is_valid(&self) -> bool {
        let m = self.size();
        (0..m).all(|i| {
            !self.beats(i, i) && (i + 1..m).all(|j| self.beats(i, j) != self.beats(j, i))
        })
    }

    fn in_neighbors(&self) -> Vec<BitSet> {
        let m = self.size();
        let mut inn = vec![BitSet::new(m); m];
        for i in 0..m {
            for j in self.out[i].ones() {
                inn[j].insert(i);
            }
        }
        inn
    }
}

/// Whether every k-subset of vertices has a common dominator (a vertex with an
/// arc to each member). Work `C(m,k) * m`.
pub fn verify_tournament_domination(t: &Tournament, k: usize, budget: &Budget) -> Result<bool> {
    let m = t.size();
    budget.check(binomial(m as u128, k as u128).saturating_mul(m as u128))?;
    if k == 0 {
        return Ok(m > 0);
    }
    if k > m {
        return Ok(true);
    }
    let inn = t.in_neighbors();
    let words = m.div_ceil(64);
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        let dominated = (0..words).any(|wi| {
            let mut acc = u64::MAX;
            for &x in &s {
                acc &= inn[x].words()[wi];
                if acc == 0 {
                    break;
                }
            }
            acc != 0
        });
        if !dominated {
            return Ok(false);
        }
        if !next_combination(&mut s, m) {
            return Ok(true);
        }
    }
}

/// Largest k accepted by the constructions (`2^(3k) <= 4096`).
pub const MAX_K: usize = 4;

/// Samples random tournaments on `2^(3k)` vertices until one passes
/// [`verify_tournament_domination`].
pub fn find_dominating_tournament(
    k: usize,
    rng: &mut Prng,
    max_tries: usize,
    budget: &Budget,
) -> Result<Tournament> {
    if k == 0 || k > MAX_K {
        return Err(Error::pre(format!("k must be in 1..={MAX_K}, got {k}")));
    }
    let m = 1usize << (3 * k);
    for _ in 0..max_tries {
        let t = Tournament::random(m, rng);
        if verify_tournament_domination(&t, k, budget)? {
            return Ok(t);
        }
    }
    Err(Error::ExhaustedTries { tries: max_tries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let b = Budget::default();
        assert!(verify_tournament_domination(&Tournament::cyclic3(), 1, &b).unwrap());
        assert!(!verify_tournament_domination(&Tournament::transitive(3), 1, &b).unwrap());
    }

    #[test]
    fn rejects_non_tournaments() {
        assert!(Tournament::from_rows(&[vec![false, true], vec![true, false]]).is_err());
        assert!(Tournament::from_rows(&[vec![true]]).is_err());
    }

    #[test]
    fn k1_result_has_positive_in_degree() {
        let t = find_dominating_tournament(1, &mut Prng::new(1, 0), 100, &Budget::default()).unwrap();
        assert_eq!(t.size(), 8);
        assert!(t.is_valid());
        for j in 0..8 {
            assert!((0..8).any(|i| t.beats(i, j)));
        }
    }

    #[test]
    fn k2_passes_verification() {
        let b = Budget::default();
        let t = find_dominating_tournament(2, &mut Prng::new(2, 0), 100, &b).unwrap();
        assert_eq!(t.size(), 64);
        assert!(verify_tournament_domination(&t, 2, &b).unwrap());
    }

    #[test]
    fn k5_rejected() {
        assert!(matches!(
            find_dominating_tournament(5, &mut Prng::new(0, 0), 1, &Budget::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn random_64_vertex_tournaments_mostly_dominate_pairs() {
        let b = Budget::default();
        let good = (0..100u64)
            .filter(|&i| verify_tournament_domination(&Tournament::random(64, &mut Prng::new(70, i)), 2, &b).unwrap())
            .count();
        assert!(good >= 90, "{good}/100");
    }

    #[test]
    fn verification_matches_brute_force() {
        use crate::combin::combinations;
        for i in 0..50u64 {
            let t = Tournament::random(9, &mut Prng::new(4, i));
            for k in 1..=3 {
                let brute = combinations(9, k).all(|s| (0..9).any(|j| s.iter().all(|&x| t.beats(j, x))));
                assert_eq!(verify_tournament_domination(&t, k, &Budget::default()).unwrap(), brute);
            }
        }
    }
}
