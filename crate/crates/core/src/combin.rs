//! Small exact combinatorics: binomials, subset and tuple enumeration,
//! restricted-growth strings, permutations.

/// `C(n, k)` in saturating 128-bit arithmetic.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Falling factorial `(n)_k = n (n-1) ... (n-k+1)`, saturating.
pub fn falling(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i))
}

pub fn factorial(k: u128) -> u128 {
    falling(k, k)
}

/// `base^exp` saturating.
pub fn pow_sat(base: u128, exp: u32) -> u128 {
    base.checked_pow(exp).unwrap_or(u128::MAX)
}

/// Advances `c` (a strictly increasing k-combination of `0..n`) to its
/// lexicographic successor. Returns `false` after the last one.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        cur: (0..k).collect(),
        done: k > n,
    }
}

pub struct Combinations {
    n: usize,
    cur: Vec<usize>,
    done: bool,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        if !next_combination(&mut self.cur, self.n) {
            self.done = true;
        }
        Some(out)
    }
}

/// Advances `t` (an ordered tuple of distinct elements of `0..n`) to its
/// lexicographic successor among such tuples.
pub fn next_distinct_tuple(t: &mut [usize], n: usize) -> bool {
    let k = t.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        let mut cand = t[i] + 1;
        while cand < n && t[..i].contains(&cand) {
            cand += 1;
        }
        if cand < n {
            t[i] = cand;
            // Fill the suffix with the smallest unused values.
            let mut v = 0;
            for j in i + 1..k {
                while t[..j].contains(&v) {
                    v += 1;
                }
                t[j] = v;
                v += 1;
            }
            return true;
        }
    }
    false
}

/// All ordered tuples of `k` distinct elements of `0..n`, lexicographically.
pub fn distinct_tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur.clone();
        if !next_distinct_tuple(&mut cur, n) {
            done = true;
        }
        Some(out)
    })
}

/// All tuples in `0..base` of length `len`, lexicographically.
pub fn all_tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur = vec![0usize; len];
    let mut done = base == 0 && len > 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur.clone();
        let mut i = len;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < base {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    })
}

/// Restricted-growth strings of length `len` with exactly `classes` distinct
/// values, in lexicographic order. Each encodes an equivalence relation on
/// `0..len` whose classes are numbered by first occurrence.
pub fn restricted_growth_strings(len: usize, classes: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, len: usize, classes: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            if max == classes {
                out.push(prefix.clone());
            }
            return;
        }
        let remaining = len - prefix.len();
        if max + remaining < classes {
            return;
        }
        for v in 0..=max.min(classes.saturating_sub(1)) {
            prefix.push(v);
            let m = if v == max { max + 1 } else { max };
            rec(prefix, len, classes, m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if classes == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut Vec::with_capacity(len), len, classes, 0, &mut out);
    out
}

/// The restricted-growth string describing the equality pattern of `xs`.
pub fn equality_pattern<T: PartialEq>(xs: &[T]) -> Vec<usize> {
    let mut reps: Vec<&T> = Vec::new();
    xs.iter()
        .map(|x| match reps.iter().position(|r| *r == x) {
            Some(p) => p,
            None => {
                reps.push(x);
                reps.len() - 1
            }
        })
        .collect()
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut out = vec![cur.clone()];
    while let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Precomputed `C(v, j)` table for colex ranking of j-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct RankTable {
    rows: Vec<Vec<usize>>,
}

impl RankTable {
    pub fn new(n: usize, t: usize) -> Self {
        let rows = (0..=t)
            .map(|j| (0..=n).map(|v| binomial(v as u128, j as u128) as usize).collect())
            .collect();
        RankTable { rows }
    }

    /// Colex rank of a strictly increasing subset.
    #[inline]
    pub fn rank(&self, sorted: &[usize]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &v)| self.rows[i + 1][v])
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(50, 2), 1225);
        assert_eq!(binomial(20, 3), 1140);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn combination_count_and_order() {
        let all: Vec<_> = combinations(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn distinct_tuple_count_and_order() {
        let all: Vec<_> = distinct_tuples(4, 2).collect();
        assert_eq!(all.len(), 12);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(distinct_tuples(5, 3).count(), 60);
    }

    #[test]
    fn rgs_counts_are_stirling2() {
        // S(4, k) = 1, 7, 6, 1
        let counts: Vec<usize> = (1..=4).map(|k| restricted_growth_strings(4, k).len()).collect();
        assert_eq!(counts, vec![1, 7, 6, 1]);
        assert_eq!(
            restricted_growth_strings(3, 2),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]]
        );
    }

    #[test]
    fn equality_patterns() {
        assert_eq!(equality_pattern(&[5, 5, 2]), vec![0, 0, 1]);
        assert_eq!(equality_pattern(&[3, 1, 3]), vec![0, 1, 0]);
    }

    #[test]
    fn permutation_order() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }

    #[test]
    fn colex_rank_is_bijective() {
        let table = RankTable::new(7, 3);
        let mut seen = [false; 35];
        for c in combinations(7, 3) {
            let r = table.rank(&c);
            assert!(!seen[r]);
            seen[r] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }
}
