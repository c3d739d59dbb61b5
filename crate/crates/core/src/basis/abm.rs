use nalgebra::DMatrix;

use super::types::{
    Algorithm, BasisError, BasisPolynomial, BasisResult, Decision, Normalization, StepRecord,
};
use super::verify::{inner_min_sqrt_lambda, member_violations, non_vanishing};
use super::{check_common, column_weights, degree_guard, BasisConfig};
use crate::gevp::{solve_min, GevpProblem};
use crate::norms::SeminormCache;
use crate::polyring::{
    euclidean_norm, eval, eval_term, is_connected_to_1, trial_terms, PointSet, Polynomial, Term,
    TermList, TermOrdering,
};

/// Approximate Buchberger-Moeller: trial terms are processed degree by degree
/// in increasing order; each either yields an `eps`-vanishing normalized
/// border polynomial or joins the inner terms.
pub fn abm(
    points: &PointSet,
    eps: f64,
    ordering: &TermOrdering,
    norm: Normalization,
) -> Result<BasisResult, BasisError> {
    let config = BasisConfig::new(eps, points.nvars())
        .ordering(ordering.clone())
        .normalization(norm);
    run(points, &config, false)
}

/// Like [`abm`], but re-checks the loop invariants after every trial term
/// and fails with [`BasisError::InvariantViolated`] on the first violation.
pub fn abm_checked(
    points: &PointSet,
    eps: f64,
    ordering: &TermOrdering,
    norm: Normalization,
) -> Result<BasisResult, BasisError> {
    let config = BasisConfig::new(eps, points.nvars())
        .ordering(ordering.clone())
        .normalization(norm);
    run(points, &config, true)
}

pub(super) fn run(
    points: &PointSet,
    config: &BasisConfig,
    check: bool,
) -> Result<BasisResult, BasisError> {
    check_common(points, config)?;
    let (n, m) = (points.nvars(), points.len());
    let eps = config.eps;
    let norm = config.normalization;
    let cache = SeminormCache::new(points);

    let mut inner = TermList::new();
    inner.push(Term::one(n));
    let mut columns: Vec<Vec<f64>> = vec![vec![1.0; m]];
    let mut basis: Vec<BasisPolynomial> = Vec::new();
    let mut diagnostics = Vec::new();

    let mut d = 1;
    loop {
        if config.max_degree.is_some_and(|cap| d > cap) {
            break;
        }
        let trials = trial_terms(&inner, d, &config.ordering);
        if trials.is_empty() {
            break;
        }
        if d > degree_guard(m) {
            return Err(BasisError::NoTermination(d - 1));
        }
        for b in trials.iter() {
            let bcol = eval_term(b, points)?;
            let mut terms = inner.as_slice().to_vec();
            terms.push(b.clone());
            let (weights, const_index) = column_weights(&terms, norm, &cache)?;
            let s = columns.len();
            let mat =
                DMatrix::from_fn(m, s + 1, |j, i| if i < s { columns[i][j] } else { bcol[j] });
            let sol = solve_min(&GevpProblem::new(mat, weights.clone(), const_index)?)?;
            let sqrt_lambda = sol.sqrt_lambda();
            let accept = sol.exact || sqrt_lambda <= eps;
            log::debug!(
                "degree {d}, trial {b}: sqrt(lambda) = {sqrt_lambda:.6e}, exact = {}, {}",
                sol.exact,
                if accept { "basis" } else { "inner" }
            );
            if accept {
                let weighted_trial = sol.v_min[s] * weights[s];
                if weighted_trial < 1e-10 {
                    return Err(BasisError::Degenerate {
                        trial: b.clone(),
                        detail: format!(
                            "trial coefficient {:.3e} too small for an accepted polynomial",
                            sol.v_min[s]
                        ),
                    });
                }
                let poly =
                    Polynomial::from_terms(n, terms.iter().cloned().zip(sol.v_min.iter().copied()));
                let extent = euclidean_norm(&eval(&poly, points)?);
                basis.push(BasisPolynomial {
                    poly,
                    border_term: b.clone(),
                    extent,
                    exact: sol.exact,
                    normalized: true,
                });
            } else {
                inner.push(b.clone());
                columns.push(bcol);
            }
            diagnostics.push(StepRecord {
                degree: d,
                trial: b.clone(),
                sqrt_lambda: Some(sqrt_lambda),
                spectrum: sol.finite_spectrum,
                exact: sol.exact,
                decision: if accept {
                    Decision::Basis
                } else {
                    Decision::Inner
                },
            });
            if check {
                check_invariants(points, eps, norm, &inner, &basis, &cache)?;
            }
        }
        d += 1;
    }

    Ok(BasisResult {
        nvars: n,
        inner,
        basis,
        eps,
        normalization: norm,
        ordering: config.ordering.clone(),
        algorithm: Algorithm::Abm,
        tau: None,
        max_degree: config.max_degree,
        diagnostics,
    })
}

fn check_invariants(
    points: &PointSet,
    eps: f64,
    norm: Normalization,
    inner: &TermList,
    basis: &[BasisPolynomial],
    cache: &SeminormCache<'_>,
) -> Result<(), BasisError> {
    let fail = |msg: String| Err(BasisError::InvariantViolated(msg));
    if !is_connected_to_1(inner) {
        return fail("inner terms are not connected to 1".into());
    }
    if let Some((sl, exact)) = inner_min_sqrt_lambda(points, inner, norm, cache)? {
        if !non_vanishing(sl, exact, eps) {
            return fail(format!(
                "inner terms support a polynomial with extent {sl:.6e}"
            ));
        }
    }
    let mut seen = std::collections::HashSet::new();
    for g in basis {
        if !seen.insert(&g.border_term) {
            return fail(format!("border term {} used twice", g.border_term));
        }
        if inner.contains(&g.border_term) {
            return fail(format!("border term {} is an inner term", g.border_term));
        }
        if norm == Normalization::GradientWeighted && cache.term(&g.border_term)? <= 0.0 {
            return fail(format!("border term {} has zero semi-norm", g.border_term));
        }
        if let Some(v) = member_violations(g, points, eps, norm, inner, cache)?
            .into_iter()
            .next()
        {
            return fail(v);
        }
    }
    Ok(())
}
