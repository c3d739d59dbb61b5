use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::basis::{compute, BasisConfig, BasisError, BasisPolynomial, BasisResult};
use crate::polyring::{PointSet, Term};

/// Number of basis polynomials of each total degree `0..=cap`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCounts {
    pub counts: Vec<usize>,
    /// Members of degree above the cap.
    pub above: usize,
}

pub fn degreewise_counts(basis: &[BasisPolynomial], cap: u32) -> DegreeCounts {
    let mut out = DegreeCounts {
        counts: vec![0; cap as usize + 1],
        above: 0,
    };
    for g in basis {
        match out.counts.get_mut(g.degree() as usize) {
            Some(c) => *c += 1,
            None => out.above += 1,
        }
    }
    out
}

/// The three runs of one consistency test and their verdict.
#[derive(Clone, Debug)]
pub struct ConsistencyOutcome {
    pub consistent: bool,
    pub star: BasisResult,
    pub perturbed: BasisResult,
    pub scaled: BasisResult,
}

impl ConsistencyOutcome {
    pub fn counts(&self, cap: u32) -> [DegreeCounts; 3] {
        [&self.star, &self.perturbed, &self.scaled].map(|r| degreewise_counts(&r.basis, cap))
    }
}

/// Runs `config` (with its tolerance replaced by `eps`) on `xstar` and `x`,
/// and on `alpha * x` with tolerance `alpha * eps`; consistent when the
/// degree-wise counts up to `cap` agree. Each run stops after degree `cap`.
pub fn consistency_test(
    xstar: &PointSet,
    x: &PointSet,
    alpha: f64,
    eps: f64,
    config: &BasisConfig,
    cap: u32,
) -> Result<ConsistencyOutcome, BasisError> {
    let base = capped(config, eps, cap);
    let star = compute(xstar, &base)?;
    let perturbed = compute(x, &base)?;
    let scaled = compute(&x.scaled(alpha), &scaled_config(&base, alpha))?;
    Ok(ConsistencyOutcome {
        consistent: consistent(&star, &perturbed, &scaled, cap),
        star,
        perturbed,
        scaled,
    })
}

pub(super) fn capped(config: &BasisConfig, eps: f64, cap: u32) -> BasisConfig {
    let mut c = config.clone();
    c.eps = eps;
    c.max_degree = Some(cap);
    c
}

pub(super) fn scaled_config(base: &BasisConfig, alpha: f64) -> BasisConfig {
    let mut c = base.clone();
    c.eps = base.eps * alpha;
    c.tau = base.tau.map(|t| t * alpha);
    c
}

pub(super) fn consistent(a: &BasisResult, b: &BasisResult, c: &BasisResult, cap: u32) -> bool {
    let ca = degreewise_counts(&a.basis, cap).counts;
    ca == degreewise_counts(&b.basis, cap).counts && ca == degreewise_counts(&c.basis, cap).counts
}

/// Mean distance between unit-normalized coefficient vectors of basis
/// polynomials with the same border term; a border term present in only one
/// basis contributes `sqrt(2)`.
pub fn coefficient_distance(
    reference: &[BasisPolynomial],
    other: &[BasisPolynomial],
) -> Result<f64, ExperimentError> {
    if reference.is_empty() && other.is_empty() {
        return Err(ExperimentError::EmptyBases);
    }
    let lookup: HashMap<&Term, &BasisPolynomial> =
        other.iter().map(|g| (&g.border_term, g)).collect();
    let mut borders: BTreeSet<&Term> = reference.iter().map(|g| &g.border_term).collect();
    borders.extend(lookup.keys());
    let mut total = 0.0;
    for b in &borders {
        let f = reference.iter().find(|g| &g.border_term == *b);
        total += match (f, lookup.get(*b)) {
            (Some(f), Some(g)) => unit_distance(f, g),
            _ => std::f64::consts::SQRT_2,
        };
    }
    Ok(total / borders.len() as f64)
}

fn unit_distance(f: &BasisPolynomial, g: &BasisPolynomial) -> f64 {
    let nf = f.poly.terms().map(|(_, c)| c * c).sum::<f64>().sqrt();
    let ng = g.poly.terms().map(|(_, c)| c * c).sum::<f64>().sqrt();
    if nf == 0.0 || ng == 0.0 {
        return std::f64::consts::SQRT_2;
    }
    let support: BTreeSet<&Term> = f.poly.support().chain(g.poly.support()).collect();
    support
        .into_iter()
        .map(|t| (f.poly.coeff(t) / nf - g.poly.coeff(t) / ng).powi(2))
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::abm;
    use crate::basis::Normalization;
    use crate::polyring::TermOrdering;

    fn example() -> BasisResult {
        let x = PointSet::from_flat(2, vec![2.0, 2.0, -4.0, 1.0, 2.0, 0.0]).unwrap();
        abm(
            &x,
            1.0,
            &TermOrdering::degrevlex(2),
            Normalization::GradientWeighted,
        )
        .unwrap()
    }

    #[test]
    fn counts_of_the_example() {
        let r = example();
        assert_eq!(degreewise_counts(&r.basis, 2).counts, vec![0, 1, 2]);
        let c = degreewise_counts(&r.basis, 1);
        assert_eq!((c.counts, c.above), (vec![0, 1], 2));
        assert_eq!(degreewise_counts(&[], 3).counts, vec![0; 4]);
    }

    #[test]
    fn distances() {
        let r = example();
        assert_eq!(coefficient_distance(&r.basis, &r.basis).unwrap(), 0.0);
        let mut scaled = r.basis.clone();
        for g in &mut scaled {
            g.poly = g.poly.scale(3.5);
        }
        assert!(coefficient_distance(&r.basis, &scaled).unwrap() < 1e-15);
        let d = coefficient_distance(&r.basis, &r.basis[..1]).unwrap();
        assert!((d - 2.0 * std::f64::consts::SQRT_2 / 3.0).abs() < 1e-15);
        assert!(matches!(
            coefficient_distance(&[], &[]),
            Err(ExperimentError::EmptyBases)
        ));
    }

    #[test]
    fn noise_free_gradient_weighted_is_consistent() {
        let x = PointSet::from_flat(2, vec![0.3, 0.1, -0.2, 0.5, 0.4, -0.6, -0.5, 0.0]).unwrap();
        let cfg = BasisConfig::new(0.0, 2);
        for alpha in [0.01, 1.0, 100.0] {
            for eps in [1e-3, 0.05, 0.3] {
                assert!(
                    consistency_test(&x, &x, alpha, eps, &cfg, 4)
                        .unwrap()
                        .consistent
                );
            }
        }
    }
}
