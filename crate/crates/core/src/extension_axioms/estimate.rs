use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::prng::Prng;
use crate::structures::{sample_random_graph, sample_random_hypergraph, sample_random_structure, Signature};

use super::{check_ea_graph, check_ea_hypergraph, check_ea_structure};

/// Which random model to sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EaKind {
    Graph { n: usize },
    Hypergraph { n: usize, t: usize },
    Structure { sig: Signature, n: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailureEstimate {
    pub failures: u64,
    pub trials: u64,
    pub rate: f64,
    /// 95% Wilson score interval for the failure probability.
    pub wilson: (f64, f64),
}

const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Samples `trials` independent instances of `kind` and counts those failing
/// the k-extension axioms.
///
/// Trial `i` draws from stream `i` of a seed taken from `rng`, so the result
/// depends only on `rng`'s state and is independent of thread scheduling.
pub fn estimate_ea_failure(
    kind: &EaKind,
    k: usize,
    trials: u64,
    rng: &mut Prng,
    budget: &Budget,
) -> Result<FailureEstimate> {
    if trials == 0 {
        return Err(Error::pre("trials must be at least 1"));
    }
    let seed = rng.next_u64();
    let outcomes: Vec<Result<bool>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut r = Prng::new(seed, i);
            let report = match kind {
                EaKind::Graph { n } => check_ea_graph(&sample_random_graph(*n, &mut r)?, k, budget)?,
                EaKind::Hypergraph { n, t } => {
                    check_ea_hypergraph(&sample_random_hypergraph(*n, *t, &mut r)?, k, budget)?
                }
                EaKind::Structure { sig, n } => {
                    check_ea_structure(&sample_random_structure(sig, *n, &mut r)?, k, budget)?
                }
            };
            Ok(!report.holds())
        })
        .collect();
    let mut failures = 0;
    for o in outcomes {
        if o? {
            failures += 1;
        }
    }
    Ok(FailureEstimate {
        failures,
        trials,
        rate: failures as f64 / trials as f64,
        wilson: wilson_interval(failures, trials),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_reference_values() {
        // 0 of 200: upper bound z^2 / (n + z^2).
        let (lo, hi) = wilson_interval(0, 200);
        assert_eq!(lo, 0.0);
        assert!((hi - 3.841_458_820_694_124 / 203.841_458_820_694_12).abs() < 1e-12);
        // 50 of 100: symmetric about 1/2.
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo + hi - 1.0).abs() < 1e-12);
        assert!((lo - 0.403_831_5).abs() < 1e-6, "{lo}");
    }

    #[test]
    fn zero_trials_rejected() {
        let r = estimate_ea_failure(&EaKind::Graph { n: 10 }, 1, 0, &mut Prng::new(0, 0), &Budget::default());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn tiny_graphs_fail_often() {
        let est = estimate_ea_failure(&EaKind::Graph { n: 6 }, 2, 200, &mut Prng::new(1, 0), &Budget::default()).unwrap();
        assert!(est.rate >= 0.5, "{est:?}");
    }

    #[test]
    fn budget_errors_propagate() {
        let r = estimate_ea_failure(&EaKind::Graph { n: 30 }, 2, 5, &mut Prng::new(1, 0), &Budget(10));
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn deterministic_given_seed() {
        let kind = EaKind::Graph { n: 12 };
        let a = estimate_ea_failure(&kind, 2, 50, &mut Prng::new(5, 0), &Budget::default()).unwrap();
        let b = estimate_ea_failure(&kind, 2, 50, &mut Prng::new(5, 0), &Budget::default()).unwrap();
        assert_eq!(a, b);
    }
}
