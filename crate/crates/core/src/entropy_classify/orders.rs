use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::structures::Signature;

/// Largest `a` and `k` accepted by [`surjection_count`].
pub const SURJ_CAP: usize = 12;

/// Number of surjections from an `a`-set onto a `k`-set, by
/// inclusion-exclusion.
pub fn surjection_count(a: usize, k: usize) -> Result<u128> {
    if a == 0 {
        return Err(Error::pre("a must be at least 1"));
    }
    if a > SURJ_CAP || k > SURJ_CAP {
        return Err(Error::Overflow(format!("surjection_count({a}, {k}) is capped at {SURJ_CAP}")));
    }
    let mut acc: i128 = 0;
    for j in 0..=k {
        let term = (j as i128).pow(a as u32) * binomial(k as u128, j as u128) as i128;
        if (k - j).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc as u128)
}

fn t(a: usize, k: usize) -> u128 {
    surjection_count(a, k).expect("arities are within the cap")
}

/// Weak lexicographic comparison of descending-sorted arity tuples, where a
/// proper prefix is the smaller tuple.
fn lex_geq(sigma: &[usize], tau: &[usize]) -> bool {
    let mut a = sigma.to_vec();
    let mut b = tau.to_vec();
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    a >= b
}

fn sum_geq(sigma: &[usize], tau: &[usize]) -> bool {
    let base = (sigma.len() + tau.len()) as u128;
    let sum = |xs: &[usize]| xs.iter().map(|&a| base.pow(a as u32)).sum::<u128>();
    sum(sigma) >= sum(tau)
}

/// `σ ⪰_L τ`, evaluated both as a base-`(t+t')` sum and as a lexicographic
/// comparison; the two must agree.
pub fn geq_lex(sigma: &Signature, tau: &Signature) -> Result<bool> {
    let (a, b) = (sigma.arities(), tau.arities());
    let (x, y) = (sum_geq(&a, &b), lex_geq(&a, &b));
    if x != y {
        return Err(Error::InternalInconsistency(format!(
            "lexicographic order disagrees with its sum form on {a:?} vs {b:?}"
        )));
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurjCheck {
    pub holds: bool,
    /// Least `k` with `sum T(a_i,k) < sum T(a'_i,k)`.
    pub violating_k: Option<usize>,
}

/// Per-k surjection totals `sum_i T(a_i, k)`.
pub fn surjection_total(sig: &Signature, k: usize) -> u128 {
    sig.arities().iter().map(|&a| t(a, k)).sum()
}

/// `σ ⪰_S τ`. Only `k` up to the largest arity matters since `T(a,k) = 0`
/// for `k > a`.
pub fn geq_surj(sigma: &Signature, tau: &Signature) -> SurjCheck {
    let top = sigma.max_arity().max(tau.max_arity());
    let violating_k = (1..=top).find(|&k| surjection_total(sigma, k) < surjection_total(tau, k));
    SurjCheck { holds: violating_k.is_none(), violating_k }
}
