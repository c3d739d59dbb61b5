use std::collections::HashMap;

use nalgebra::DMatrix;

use super::types::{
    Algorithm, BasisError, BasisPolynomial, BasisResult, Decision, Normalization, StepRecord,
};
use super::{check_common, column_weights, degree_guard, BasisConfig};
use crate::gevp::{decompose, GevpProblem, EXACT_RTOL};
use crate::norms::{coeff_norm, gw_seminorm_poly, SeminormCache};
use crate::polyring::{
    euclidean_norm, eval, eval_term, trial_terms, PointSet, Polynomial, Term, TermList,
    TermOrdering,
};

/// Degree-wise batch variant: all eigenvectors with eigenvalue at most
/// `eps^2` are reduced together by a `tau`-thresholded row echelon form.
///
/// Basis polynomials are renormalized afterwards and need not be
/// `eps`-vanishing.
pub fn avi(
    points: &PointSet,
    eps: f64,
    tau: f64,
    ordering: &TermOrdering,
    norm: Normalization,
) -> Result<BasisResult, BasisError> {
    let config = BasisConfig::new(eps, points.nvars())
        .ordering(ordering.clone())
        .normalization(norm)
        .avi(tau);
    run(points, &config)
}

pub(super) fn run(points: &PointSet, config: &BasisConfig) -> Result<BasisResult, BasisError> {
    check_common(points, config)?;
    let eps = config.eps;
    let tau = config.tau.unwrap_or(f64::NAN);
    if !(tau > 0.0 && eps > tau) {
        return Err(BasisError::InvalidTau { eps, tau });
    }
    if points.max_abs() > 1.0 {
        log::warn!(
            "points lie outside [-1, 1]^n (max |coordinate| = {}); tau is not scale-aware",
            points.max_abs()
        );
    }
    let (n, m) = (points.nvars(), points.len());
    let norm = config.normalization;
    let cache = SeminormCache::new(points);

    let mut inner = TermList::new();
    inner.push(Term::one(n));
    let mut evals: HashMap<Term, Vec<f64>> = HashMap::new();
    evals.insert(Term::one(n), vec![1.0; m]);
    let mut basis = Vec::new();
    let mut diagnostics = Vec::new();

    let mut d = 1;
    loop {
        if config.max_degree.is_some_and(|cap| d > cap) {
            break;
        }
        let mut trials = trial_terms(&inner, d, &config.ordering).as_slice().to_vec();
        if trials.is_empty() {
            break;
        }
        if d > degree_guard(m) {
            return Err(BasisError::NoTermination(d - 1));
        }
        trials.reverse();
        let nd = trials.len();
        for b in &trials {
            evals.insert(b.clone(), eval_term(b, points)?);
        }
        let columns: Vec<Term> = trials.iter().chain(inner.iter()).cloned().collect();
        let (weights, const_index) = column_weights(&columns, norm, &cache)?;
        let mat = DMatrix::from_fn(m, columns.len(), |j, i| evals[&columns[i]][j]);
        let dec = decompose(&GevpProblem::new(mat, weights, const_index)?);
        let selected: Vec<usize> = (0..dec.eigenvalues.len())
            .filter(|&i| {
                let l = dec.eigenvalues[i];
                l <= eps * eps || l.max(0.0).sqrt() <= EXACT_RTOL * dec.scale
            })
            .collect();

        let mut pivot_rows: Vec<Option<usize>> = vec![None; nd];
        let mut reduced = DMatrix::zeros(0, columns.len());
        if !selected.is_empty() {
            let mut bt = DMatrix::zeros(selected.len(), columns.len());
            for (r, &i) in selected.iter().enumerate() {
                bt.set_row(r, &dec.eigenvectors.column(i).transpose());
            }
            let (c, pivots) = thresholded_rref(bt, tau);
            for (row, &col) in pivots.iter().enumerate() {
                if col < nd {
                    pivot_rows[col] = Some(row);
                } else {
                    log::warn!("degree {d}: eigenvector batch has a pivot among the inner terms");
                }
            }
            reduced = c;
        }

        let exact_extent = |g: &Polynomial| -> Result<(f64, bool), BasisError> {
            let ext = euclidean_norm(&eval(g, points)?);
            let mut scale = 0.0;
            for (t, c) in g.terms() {
                scale += c.abs() * euclidean_norm(&evals[t]);
            }
            Ok((ext, ext <= 1e-8 * scale))
        };

        let spectrum = dec.eigenvalues.clone();
        for (j, b) in trials.iter().enumerate() {
            let decision = match pivot_rows[j] {
                Some(row) => {
                    let raw = Polynomial::from_terms(
                        n,
                        columns
                            .iter()
                            .cloned()
                            .zip(reduced.row(row).iter().copied()),
                    );
                    let scale = match norm {
                        Normalization::GradientWeighted => gw_seminorm_poly(&raw, &cache)?,
                        Normalization::Coefficient => coeff_norm(&raw),
                    };
                    let (poly, normalized) = if scale > 0.0 {
                        (raw.scale(1.0 / scale), true)
                    } else {
                        (raw, false)
                    };
                    let (extent, exact) = exact_extent(&poly)?;
                    basis.push(BasisPolynomial {
                        poly,
                        border_term: b.clone(),
                        extent,
                        exact,
                        normalized,
                    });
                    Decision::Basis
                }
                None => Decision::Inner,
            };
            diagnostics.push(StepRecord {
                degree: d,
                trial: b.clone(),
                sqrt_lambda: None,
                spectrum: spectrum.clone(),
                exact: false,
                decision,
            });
        }
        for j in (0..nd).rev() {
            if pivot_rows[j].is_none() {
                inner.push_front(trials[j].clone());
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
        algorithm: Algorithm::Avi,
        tau: Some(tau),
        max_degree: config.max_degree,
        diagnostics,
    })
}

/// Reduced row echelon form with partial pivoting per column; candidate
/// pivots below `tau` in magnitude count as zero. Returns the nonzero rows
/// and the pivot column of each.
fn thresholded_rref(mut a: DMatrix<f64>, tau: f64) -> (DMatrix<f64>, Vec<usize>) {
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let (p, best) = (r..rows)
            .map(|i| (i, a[(i, col)].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best < tau {
            for i in r..rows {
                a[(i, col)] = 0.0;
            }
            continue;
        }
        a.swap_rows(r, p);
        let pivot = a[(r, col)];
        for k in 0..cols {
            a[(r, k)] /= pivot;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[(i, col)];
            if f != 0.0 {
                for k in 0..cols {
                    a[(i, k)] -= f * a[(r, k)];
                }
                a[(i, col)] = 0.0;
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a.rows(0, r).into_owned(), pivots)
}
