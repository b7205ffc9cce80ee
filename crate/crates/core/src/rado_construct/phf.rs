use crate::budget::Budget;
use crate::combin::{binomial, next_combination};
use crate::error::{Error, Result};
use crate::prng::Prng;

use super::cover::{subset_count, sweep, LazyGreedy};
use super::tournament::MAX_K;
use super::universal::{Backend, VerifyMode};

/// Functions `0..n -> 1..=k` such that every k-set is mapped onto `1..=k` by
/// at least one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectHashFamily {
    n: usize,
    k: usize,
    funcs: Vec<Vec<u8>>,
}

impl PerfectHashFamily {
    pub fn new(n: usize, k: usize, funcs: Vec<Vec<u8>>) -> Result<Self> {
        for f in &funcs {
            if f.len() != n || f.iter().any(|&v| v == 0 || v as usize > k) {
                return Err(Error::pre("hash function must map 0..n into 1..=k"));
            }
        }
        Ok(PerfectHashFamily { n, k, funcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.funcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.funcs.is_empty()
    }

    pub fn funcs(&self) -> &[Vec<u8>] {
        &self.funcs
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

// labels are 0-based inside the sweeps; a k-set is split iff the OR of one-hot
// codes is full
fn one_hot(f: &[u8]) -> Vec<u8> {
    f.iter().map(|&v| 1 << (v - 1)).collect()
}

fn split_mask(n: usize, k: usize, hot: &[u8], mut visit: impl FnMut(usize, bool)) {
    let full = (1u32 << k) - 1;
    // one-hot codes are packed with stride k, so fold them back together
    let fold = |c: u32| (0..k).fold(0u32, |acc, i| acc | (c >> (k * i) as u32) & full);
    sweep(n, k, hot, k as u32, &mut |r, c| visit(r, fold(c) == full));
}

pub fn verify_phf(p: &PerfectHashFamily, mode: VerifyMode<'_>, budget: &Budget) -> Result<bool> {
    let (n, k) = (p.n, p.k);
    if k == 0 || k > n {
        return Ok(true);
    }
    match mode {
        VerifyMode::Exhaustive => {
            budget.check(binomial(n as u128, k as u128).saturating_mul(p.len().max(1) as u128))?;
            let count = subset_count(n, k)?;
            let mut cov = vec![false; count];
            for f in &p.funcs {
                split_mask(n, k, &one_hot(f), |r, ok| cov[r] |= ok);
            }
            Ok(cov.iter().all(|&c| c))
        }
        VerifyMode::Sampled { trials, rng } => {
            budget.check((trials as u128).saturating_mul(p.len().max(1) as u128 * k as u128))?;
            for _ in 0..trials {
                let s = rng.k_subset(n, k);
                if !p.funcs.iter().any(|f| injective_on(f, &s)) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn injective_on(f: &[u8], s: &[usize]) -> bool {
    let m = s.iter().fold(0u32, |acc, &x| acc | 1 << f[x]);
    m.count_ones() as usize == s.len()
}

pub fn randomized_phf_size(n: usize, k: usize) -> usize {
    (std::f64::consts::E.powi(k as i32) * (k as f64 * (n as f64).ln() + 3.0)).ceil() as usize
}

pub fn build_perfect_hash_family(
    n: usize,
    k: usize,
    backend: Backend,
    rng: &mut Prng,
    max_tries: usize,
    budget: &Budget,
) -> Result<PerfectHashFamily> {
    check_params(n, k)?;
    let p = if k == 1 {
        PerfectHashFamily { n, k, funcs: vec![vec![1; n]] }
    } else {
        match backend {
            Backend::Randomized => {
                let size = randomized_phf_size(n, k);
                let mut found = None;
                for _ in 0..max_tries {
                    let funcs = (0..size).map(|_| random_fn(n, k, rng)).collect();
                    let p = PerfectHashFamily { n, k, funcs };
                    if verify_phf(&p, VerifyMode::Exhaustive, budget)? {
                        found = Some(p);
                        break;
                    }
                }
                found.ok_or(Error::ExhaustedTries { tries: max_tries })?
            }
            Backend::Greedy => greedy(n, k, rng, budget)?,
        }
    };
    if !verify_phf(&p, VerifyMode::Exhaustive, budget)? {
        return Err(Error::InternalInconsistency("hash family failed verification".into()));
    }
    Ok(p)
}

fn random_fn(n: usize, k: usize, rng: &mut Prng) -> Vec<u8> {
    (0..n).map(|_| 1 + rng.below(k) as u8).collect()
}

const RANDOM_PER_ROUND: usize = 4;

fn greedy(n: usize, k: usize, rng: &mut Prng, budget: &Budget) -> Result<PerfectHashFamily> {
    let count = subset_count(n, k)?;
    let digits = {
        let mut d = 0;
        while k.pow(d) < n {
            d += 1;
        }
        d
    };
    let sweeps = (digits as u128 + 4) * (RANDOM_PER_ROUND as u128 + 2) * (1u128 << k);
    budget.check((count as u128).saturating_mul(sweeps))?;

    // base-k digit functions
    let mut pool: Vec<Vec<u8>> = (0..digits)
        .map(|d| (0..n).map(|x| (x / k.pow(d) % k) as u8 + 1).collect())
        .collect();
    let mut lazy = LazyGreedy::new();
    for _ in 0..pool.len() {
        lazy.push();
    }
    let mut cov = vec![false; count];
    let gain = |cov: &[bool], f: &[u8]| -> u64 {
        let mut g = 0;
        split_mask(n, k, &one_hot(f), |r, ok| g += (ok && !cov[r]) as u64);
        g
    };
    let mut uncovered = count as u64;
    let mut cursor: Vec<usize> = (0..k).collect();
    let mut cursor_rank = 0usize;
    let mut chosen = Vec::new();
    while uncovered > 0 {
        let round_start = pool.len();
        for _ in 0..RANDOM_PER_ROUND {
            let f = random_fn(n, k, rng);
            lazy.push_evaluated(gain(&cov, &f));
            pool.push(f);
        }
        while cov[cursor_rank] {
            next_combination(&mut cursor, n);
            cursor_rank += 1;
        }
        let mut t = random_fn(n, k, rng);
        for (i, &x) in cursor.iter().enumerate() {
            t[x] = i as u8 + 1;
        }
        lazy.push_evaluated(gain(&cov, &t));
        pool.push(t);

        let (best, g) = lazy
            .select(|i| gain(&cov, &pool[i]))
            .ok_or_else(|| Error::InternalInconsistency("greedy stalled".into()))?;
        lazy.retire_from(round_start);
        let f = pool[best].clone();
        split_mask(n, k, &one_hot(&f), |r, ok| cov[r] |= ok);
        uncovered -= g;
        chosen.push(f);
    }
    Ok(PerfectHashFamily { n, k, funcs: chosen })
}
