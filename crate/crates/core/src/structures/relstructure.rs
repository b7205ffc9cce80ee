use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::prng::Prng;

use super::signature::Signature;

/// Per-relation storage cap, in cells (`n^arity`).
pub const CELL_CAP: u128 = 1 << 40;

/// A finite relational structure on the universe `0..n`.
///
/// Each relation is a dense bitset over `n^arity` cells; the tuple
/// `(x_1, ..., x_a)` lives at `sum x_j * n^(a - j)`, so the first coordinate is
/// most significant and ascending cell order is lexicographic tuple order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelStructure {
    sig: Signature,
    n: usize,
    rels: Vec<BitSet>,
}

pub(crate) fn cells(n: usize, arity: usize) -> u128 {
    (n as u128).checked_pow(arity as u32).unwrap_or(u128::MAX)
}

impl RelStructure {
    pub fn empty(sig: Signature, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::pre("universe size must be at least 1"));
        }
        let mut rels = Vec::with_capacity(sig.len());
        for r in sig.relations() {
            let c = cells(n, r.arity);
            if c > CELL_CAP {
                return Err(Error::Capacity {
                    cells: c,
                    cap: CELL_CAP,
                });
            }
            rels.push(BitSet::new(c as usize));
        }
        Ok(RelStructure { sig, n, rels })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relation_bits(&self, rel: usize) -> &BitSet {
        &self.rels[rel]
    }

    pub(crate) fn relation_bits_mut(&mut self, rel: usize) -> &mut BitSet {
        &mut self.rels[rel]
    }

    #[inline]
    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0usize, |acc, &x| acc * self.n + x)
    }

    pub fn decode(&self, rel: usize, mut code: usize) -> Vec<usize> {
        let a = self.sig.arity(rel);
        let mut out = vec![0; a];
        for slot in out.iter_mut().rev() {
            *slot = code % self.n;
            code /= self.n;
        }
        out
    }

    #[inline]
    pub fn contains(&self, rel: usize, tuple: &[usize]) -> bool {
        debug_assert_eq!(tuple.len(), self.sig.arity(rel));
        self.rels[rel].get(self.encode(tuple))
    }

    pub fn set(&mut self, rel: usize, tuple: &[usize], present: bool) -> Result<()> {
        if tuple.len() != self.sig.arity(rel) {
            return Err(Error::InvalidArity(format!(
                "relation {} expects {} coordinates, got {}",
                self.sig.name(rel),
                self.sig.arity(rel),
                tuple.len()
            )));
        }
        if let Some(&x) = tuple.iter().find(|&&x| x >= self.n) {
            return Err(Error::pre(format!("element {x} outside universe of size {}", self.n)));
        }
        let code = self.encode(tuple);
        self.rels[rel].set(code, present);
        Ok(())
    }

    pub fn tuple_count(&self, rel: usize) -> usize {
        self.rels[rel].count_ones()
    }

    pub fn total_tuples(&self) -> usize {
        (0..self.sig.len()).map(|r| self.tuple_count(r)).sum()
    }

    /// Total number of cells over all relations.
    pub fn cell_count(&self) -> usize {
        self.rels.iter().map(|r| r.len()).sum()
    }

    /// The cells of all relations concatenated in signature order, read as a
    /// binary number with the first cell as bit 0. Needs at most 128 cells.
    pub fn index(&self) -> Result<u128> {
        let total = self.cell_count();
        if total > 128 {
            return Err(Error::Capacity { cells: total as u128, cap: 128 });
        }
        let mut out = 0u128;
        let mut shift = 0;
        for r in &self.rels {
            for c in r.ones() {
                out |= 1 << (shift + c);
            }
            shift += r.len();
        }
        Ok(out)
    }

    /// Inverse of [`RelStructure::index`].
    pub fn from_index(sig: Signature, n: usize, index: u128) -> Result<Self> {
        let mut a = RelStructure::empty(sig, n)?;
        let total = a.cell_count();
        if total > 128 || (total < 128 && index >> total != 0) {
            return Err(Error::pre(format!("index does not fit {total} cells")));
        }
        let mut shift = 0;
        for r in &mut a.rels {
            for c in 0..r.len() {
                if index >> (shift + c) & 1 == 1 {
                    r.insert(c);
                }
            }
            shift += r.len();
        }
        Ok(a)
    }

    /// Stored tuples of `rel`, ascending by encoding.
    pub fn tuples(&self, rel: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.rels[rel].ones().map(move |c| self.decode(rel, c))
    }
}

/// Samples from the uniform distribution on structures of size `n`: every
/// candidate tuple is present independently with probability 1/2.
pub fn sample_random_structure(sig: &Signature, n: usize, rng: &mut Prng) -> Result<RelStructure> {
    let mut a = RelStructure::empty(sig.clone(), n)?;
    for bits in &mut a.rels {
        rng.fill_words(bits.words_mut());
        bits.trim();
    }
    Ok(a)
}

/// Every structure on `0..n`, in ascending [`RelStructure::index`] order.
/// Limited to 24 cells in total.
pub fn all_structures(sig: &Signature, n: usize) -> Result<impl Iterator<Item = RelStructure> + '_> {
    let total = RelStructure::empty(sig.clone(), n)?.cell_count();
    if total > 24 {
        return Err(Error::Capacity { cells: total as u128, cap: 24 });
    }
    Ok((0..1u128 << total).map(move |i| RelStructure::from_index(sig.clone(), n, i).expect("fits")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let sig = Signature::from_arities(&[2, 1]).unwrap();
        let all: Vec<RelStructure> = all_structures(&sig, 2).unwrap().collect();
        assert_eq!(all.len(), 64);
        for (i, a) in all.iter().enumerate() {
            assert_eq!(a.index().unwrap(), i as u128);
        }
        assert!(all_structures(&Signature::from_arities(&[3, 3]).unwrap(), 3).is_err());
    }

    #[test]
    fn encoding_is_base_n_msb_first() {
        let sig = Signature::new([("R", 3)]).unwrap();
        let a = RelStructure::empty(sig, 4).unwrap();
        assert_eq!(a.encode(&[1, 2, 3]), 16 + 8 + 3);
        assert_eq!(a.decode(0, 27), vec![1, 2, 3]);
    }

    #[test]
    fn capacity_error() {
        let sig = Signature::new([("R", 8)]).unwrap();
        assert!(matches!(
            RelStructure::empty(sig, 1 << 6),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn zero_universe_rejected() {
        let sig = Signature::new([("R", 1)]).unwrap();
        assert!(RelStructure::empty(sig, 0).is_err());
    }

    #[test]
    fn set_validates() {
        let sig = Signature::new([("R", 2)]).unwrap();
        let mut a = RelStructure::empty(sig, 3).unwrap();
        assert!(a.set(0, &[0, 3], true).is_err());
        assert!(a.set(0, &[0], true).is_err());
        a.set(0, &[2, 1], true).unwrap();
        assert!(a.contains(0, &[2, 1]));
        assert_eq!(a.tuples(0).collect::<Vec<_>>(), vec![vec![2, 1]]);
    }

    #[test]
    fn single_cell_presence_rate() {
        let sig = Signature::new([("R", 2)]).unwrap();
        let trials = 10_000;
        let hits = (0..trials)
            .filter(|&i| {
                let mut rng = Prng::new(42, i);
                sample_random_structure(&sig, 1, &mut rng).unwrap().contains(0, &[0, 0])
            })
            .count();
        let rate = hits as f64 / trials as f64;
        assert!((0.47..=0.53).contains(&rate), "rate {rate}");
    }

    #[test]
    fn ternary_mean_tuple_count() {
        let sig = Signature::new([("R", 3)]).unwrap();
        let trials = 10_000u64;
        let total: usize = (0..trials)
            .map(|i| {
                let mut rng = Prng::new(5, i);
                sample_random_structure(&sig, 4, &mut rng).unwrap().total_tuples()
            })
            .sum();
        let mean = total as f64 / trials as f64;
        // Binomial(64, 1/2): sd 4, standard error of the mean 4 / 100.
        assert!((mean - 32.0).abs() <= 3.0 * 4.0 / 100.0, "mean {mean}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let sig = Signature::new([("R", 2), ("S", 1)]).unwrap();
        let a = sample_random_structure(&sig, 9, &mut Prng::new(3, 4)).unwrap();
        let b = sample_random_structure(&sig, 9, &mut Prng::new(3, 4)).unwrap();
        assert_eq!(a, b);
    }
}
