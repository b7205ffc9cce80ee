use crate::bits::BitSet;
use crate::budget::Budget;
use crate::combin::{binomial, next_combination};
use crate::error::{Error, Result};
use crate::prng::Prng;

use super::cover::{subset_count, sweep, sweep_blocks, LazyGreedy};
use super::tournament::MAX_K;

/// How a covering family is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Deterministic-size greedy cover over a fixed candidate pool plus random
    /// and targeted candidates.
    #[default]
    Greedy,
    /// Uniform sample of the textbook size, re-sampled until it verifies.
    Randomized,
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Backend::Greedy),
            "randomized" => Ok(Backend::Randomized),
            _ => Err(Error::pre(format!("unknown backend `{s}`"))),
        }
    }
}

pub enum VerifyMode<'a> {
    Exhaustive,
    Sampled { trials: usize, rng: &'a mut Prng },
}

/// A family of subsets of `0..n` that cuts every k-set in all `2^k` ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalSet {
    n: usize,
    k: usize,
    sets: Vec<BitSet>,
}

impl UniversalSet {
    pub fn new(n: usize, k: usize, sets: Vec<BitSet>) -> Result<Self> {
        if sets.iter().any(|s| s.len() != n) {
            return Err(Error::pre("universal-set member has the wrong ground size"));
        }
        Ok(UniversalSet { n, k, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    pub fn get(&self, i: usize) -> &BitSet {
        &self.sets[i]
    }
}

fn check_params(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > MAX_K {
        return Err(Error::pre(format!("k must be in 1..={MAX_K}, got {k}")));
    }
    if n < 2 * k {
        return Err(Error::pre(format!("need n >= 2k, got n={n}, k={k}")));
    }
    Ok(())
}

fn to_labels(s: &BitSet) -> Vec<u8> {
    (0..s.len()).map(|i| s.get(i) as u8).collect()
}

fn from_labels(l: &[u8]) -> BitSet {
    let mut b = BitSet::new(l.len());
    for (i, &x) in l.iter().enumerate() {
        b.set(i, x != 0);
    }
    b
}

pub fn verify_universal_set(u: &UniversalSet, mode: VerifyMode<'_>, budget: &Budget) -> Result<bool> {
    let (n, k) = (u.n, u.k);
    if k == 0 {
        return Ok(true);
    }
    if k > n {
        return Ok(true);
    }
    let full: u16 = ((1u32 << (1 << k)) - 1) as u16;
    match mode {
        VerifyMode::Exhaustive => {
            budget.check(binomial(n as u128, k as u128).saturating_mul(u.len().max(1) as u128))?;
            let count = subset_count(n, k)?;
            let mut cov = vec![0u16; count];
            for s in &u.sets {
                let l = to_labels(s);
                sweep(n, k, &l, 1, &mut |r, c| cov[r] |= 1 << c);
            }
            Ok(cov.iter().all(|&m| m == full))
        }
        VerifyMode::Sampled { trials, rng } => {
            budget.check((trials as u128).saturating_mul(u.len().max(1) as u128 * k as u128))?;
            for _ in 0..trials {
                let s = rng.k_subset(n, k);
                let want = rng.below(1 << k) as u32;
                let hit = u.sets.iter().any(|set| {
                    s.iter().enumerate().all(|(i, &x)| set.get(x) == (want >> i & 1 == 1))
                });
                if !hit {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Size of the randomized backend's sample.
pub fn randomized_universal_size(n: usize, k: usize) -> usize {
    let (nf, kf) = (n as f64, k as f64);
    ((1u64 << k) as f64 * (kf * nf.ln() + kf * 2f64.ln() + 3.0)).ceil() as usize
}

pub fn build_universal_set(
    n: usize,
    k: usize,
    backend: Backend,
    rng: &mut Prng,
    max_tries: usize,
    budget: &Budget,
) -> Result<UniversalSet> {
    check_params(n, k)?;
    let u = match backend {
        Backend::Randomized => {
            let size = randomized_universal_size(n, k);
            let mut found = None;
            for _ in 0..max_tries {
                let sets: Vec<BitSet> = (0..size)
                    .map(|_| {
                        let mut b = BitSet::new(n);
                        rng.fill_words(b.words_mut());
                        b.trim();
                        b
                    })
                    .collect();
                let u = UniversalSet { n, k, sets };
                if verify_universal_set(&u, VerifyMode::Exhaustive, budget)? {
                    found = Some(u);
                    break;
                }
            }
            found.ok_or(Error::ExhaustedTries { tries: max_tries })?
        }
        Backend::Greedy => greedy(n, k, rng, budget)?,
    };
    if !verify_universal_set(&u, VerifyMode::Exhaustive, budget)? {
        return Err(Error::InternalInconsistency("greedy universal set failed verification".into()));
    }
    Ok(u)
}

const RANDOM_PER_ROUND: usize = 4;

fn greedy(n: usize, k: usize, rng: &mut Prng, budget: &Budget) -> Result<UniversalSet> {
    let count = subset_count(n, k)?;
    let bits = usize::BITS - (n - 1).leading_zeros();
    // rough count of candidate sweeps
    let sweeps = (1u128 << k) * (bits as u128 + 2) * (RANDOM_PER_ROUND as u128 + 4);
    budget.check((count as u128).saturating_mul(sweeps))?;

    let full: u16 = ((1u32 << (1 << k)) - 1) as u16;
    let mut pool: Vec<Vec<u8>> = vec![vec![1; n], vec![0; n]];
    for b in 0..bits {
        let l: Vec<u8> = (0..n).map(|x| (x >> b & 1) as u8).collect();
        let comp = l.iter().map(|&v| 1 - v).collect();
        pool.push(l);
        pool.push(comp);
    }
    let mut lazy = LazyGreedy::new();
    for _ in 0..pool.len() {
        lazy.push();
    }

    let mut cov = vec![0u16; count];
    let gain = |cov: &[u16], l: &[u8]| -> u64 {
        let mut g = 0u64;
        sweep_blocks(n, k, l, 1, &mut |r0, prefix, sh, tail| {
            let block = &cov[r0..r0 + tail.len()];
            g += block
                .iter()
                .zip(tail)
                .map(|(&c, &x)| (!(c as u32) >> (prefix | (x as u32) << sh) & 1) as u64)
                .sum::<u64>();
        });
        g
    };
    let mut uncovered = (count as u64) << k;
    // first subset whose patterns are not all covered, and its rank
    let mut cursor: Vec<usize> = (0..k).collect();
    let mut cursor_rank = 0usize;
    let mut chosen: Vec<Vec<u8>> = Vec::new();

    while uncovered > 0 {
        let round_start = pool.len();
        for _ in 0..RANDOM_PER_ROUND {
            let l: Vec<u8> = (0..n).map(|_| rng.bit() as u8).collect();
            lazy.push_evaluated(gain(&cov, &l));
            pool.push(l);
        }
        while cov[cursor_rank] == full {
            next_combination(&mut cursor, n);
            cursor_rank += 1;
        }
        let pat = (0..1u32 << k).find(|&p| cov[cursor_rank] >> p & 1 == 0).unwrap();
        let mut t: Vec<u8> = (0..n).map(|_| rng.bit() as u8).collect();
        for (i, &x) in cursor.iter().enumerate() {
            t[x] = (pat >> i & 1) as u8;
        }
        lazy.push_evaluated(gain(&cov, &t));
        pool.push(t);

        let (best, g) = lazy
            .select(|i| gain(&cov, &pool[i]))
            .ok_or_else(|| Error::InternalInconsistency("greedy stalled".into()))?;
        lazy.retire_from(round_start);
        let l = pool[best].clone();
        sweep(n, k, &l, 1, &mut |r, c| cov[r] |= 1 << c);
        uncovered -= g;
        pool.push(l.iter().map(|&v| 1 - v).collect());
        lazy.push();
        chosen.push(l);
    }
    Ok(UniversalSet { n, k, sets: chosen.iter().map(|l| from_labels(l)).collect() })
}
