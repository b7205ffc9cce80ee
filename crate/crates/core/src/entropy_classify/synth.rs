use crate::combin::restricted_growth_strings;
use crate::error::{Error, Result};
use crate::structures::Signature;

use super::formula::{QfFormula, QfTransduction};
use super::orders::geq_surj;

/// Target pattern, source relation, source pattern.
type Route = (Vec<usize>, usize, Vec<usize>);

/// Builds a quantifier-free transduction that maps the uniform distribution
/// on σ-structures to exactly the uniform distribution on τ-structures.
///
/// Each target relation is split by the equality pattern of its variables
/// (a restricted growth string with k classes). For every k, target patterns
/// are assigned first-fit to unused source patterns with k classes, scanning
/// source relations in order and their patterns lexicographically. A target
/// cell then copies the source cell obtained by sending class `l` to the first
/// target variable in class `l`.
pub fn build_statistical_transduction(sigma: &Signature, tau: &Signature) -> Result<QfTransduction> {
    if let Some(k) = geq_surj(sigma, tau).violating_k {
        return Err(Error::OrderViolation { k });
    }
    let mut routes: Vec<Vec<Route>> = vec![Vec::new(); tau.len()];
    let top = tau.max_arity();
    for k in 1..=top {
        let mut sources = sigma
            .arities()
            .into_iter()
            .enumerate()
            .flat_map(|(i, a)| restricted_growth_strings(a, k).into_iter().map(move |p| (i, p)));
        for (j, &a) in tau.arities().iter().enumerate() {
            for p in restricted_growth_strings(a, k) {
                let (i, q) = sources.next().ok_or_else(|| {
                    Error::InternalInconsistency(format!("ran out of {k}-class source patterns"))
                })?;
                routes[j].push((p, i, q));
            }
        }
    }
    let formulas = routes
        .into_iter()
        .map(|mut rs| {
            rs.sort_by(|x, y| x.0.cmp(&y.0));
            let mut disjuncts: Vec<QfFormula> = rs
                .iter()
                .map(|(p, i, q)| {
                    let first: Vec<usize> = (0..=*p.iter().max().unwrap())
                        .map(|c| p.iter().position(|&x| x == c).unwrap())
                        .collect();
                    let atom = QfFormula::Atom { rel: *i, args: q.iter().map(|&c| first[c]).collect() };
                    let mut conds = pattern_condition(p, &first);
                    if conds.is_empty() {
                        atom
                    } else {
                        conds.push(atom);
                        QfFormula::And(conds)
                    }
                })
                .collect();
            if disjuncts.len() == 1 {
                disjuncts.pop().unwrap()
            } else {
                QfFormula::Or(disjuncts)
            }
        })
        .collect();
    QfTransduction::new(sigma.clone(), tau.clone(), formulas)
}

/// Conjuncts pinning the variables to equality pattern `p`.
fn pattern_condition(p: &[usize], first: &[usize]) -> Vec<QfFormula> {
    let mut out = Vec::new();
    for (v, &c) in p.iter().enumerate() {
        if first[c] != v {
            out.push(QfFormula::Eq(first[c], v));
        } else {
            for &rep in &first[..c] {
                out.push(QfFormula::Neq(rep, v));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy_classify::formula::apply_qf_transduction;
    use crate::structures::all_structures;

    fn sig(a: &[usize]) -> Signature {
        Signature::from_arities(a).unwrap()
    }

    #[test]
    fn worked_example() {
        let s = Signature::parse_inline("R1 3; R2 1; R3 1").unwrap();
        let t = Signature::parse_inline("A 2; B 2; C 2").unwrap();
        let theta = build_statistical_transduction(&s, &t).unwrap();
        let text: Vec<String> = theta.formulas().iter().map(|f| f.to_sexpr(&s)).collect();
        assert_eq!(
            text,
            [
                "(or (and (eq x1 x2) (atom R1 x1 x1 x1)) (and (neq x1 x2) (atom R1 x1 x1 x2)))",
                "(or (and (eq x1 x2) (atom R2 x1)) (and (neq x1 x2) (atom R1 x1 x2 x1)))",
                "(or (and (eq x1 x2) (atom R3 x1)) (and (neq x1 x2) (atom R1 x1 x2 x2)))",
            ]
        );
    }

    #[test]
    fn identity_routing() {
        let s = sig(&[2]);
        let theta = build_statistical_transduction(&s, &s).unwrap();
        let x = theta.formulas()[0].to_sexpr(&s);
        assert_eq!(x, "(or (and (eq x1 x2) (atom R1 x1 x1)) (and (neq x1 x2) (atom R1 x1 x2)))");
        for a in all_structures(&s, 3).unwrap().step_by(17) {
            assert_eq!(apply_qf_transduction(&theta, &a).unwrap(), a);
        }
    }

    #[test]
    fn order_violation() {
        assert!(matches!(build_statistical_transduction(&sig(&[2]), &sig(&[1, 1])), Err(Error::OrderViolation { k: 1 })));
    }

    #[test]
    fn worked_example_is_a_bijection_at_n2() {
        let s = sig(&[3, 1, 1]);
        let t = sig(&[2, 2, 2]);
        let theta = build_statistical_transduction(&s, &t).unwrap();
        let mut hits = vec![0u32; 4096];
        for a in all_structures(&s, 2).unwrap() {
            hits[apply_qf_transduction(&theta, &a).unwrap().index().unwrap() as usize] += 1;
        }
        assert!(hits.iter().all(|&h| h == 1));
    }
}
