use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::column_weights;
use super::types::{BasisError, BasisPolynomial, BasisResult, Normalization};
use crate::gevp::{decompose, GevpProblem, EXACT_RTOL};
use crate::norms::{coeff_norm, gw_seminorm_poly, SeminormCache};
use crate::polyring::{
    are_neighbors, border, euclidean_norm, eval, eval_matrix, eval_term, is_connected_to_1,
    normal_remainder, s_polynomial, PointSet, TermList,
};

/// Outcome of [`verify_basis`]. `order_ideal` is informational and does not
/// affect [`VerificationReport::passed`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub connected_to_1: bool,
    pub order_ideal: bool,
    pub members_ok: bool,
    pub inner_non_vanishing: bool,
    /// `sqrt` of the smallest finite eigenvalue of the inner-terms problem.
    pub inner_min_sqrt_lambda: Option<f64>,
    pub border_correspondence: bool,
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.connected_to_1
            && self.members_ok
            && self.inner_non_vanishing
            && self.border_correspondence
    }
}

/// Checks a basis against the points and tolerance it claims to describe.
pub fn verify_basis(points: &PointSet, eps: f64, result: &BasisResult) -> VerificationReport {
    let mut report = VerificationReport {
        connected_to_1: false,
        order_ideal: false,
        members_ok: false,
        inner_non_vanishing: false,
        inner_min_sqrt_lambda: None,
        border_correspondence: false,
        violations: Vec::new(),
    };
    if result.nvars != points.nvars() {
        report.violations.push(format!(
            "basis has {} variables, points have {}",
            result.nvars,
            points.nvars()
        ));
        return report;
    }
    let cache = SeminormCache::new(points);
    let norm = result.normalization;
    let inner = &result.inner;

    report.connected_to_1 = is_connected_to_1(inner);
    if !report.connected_to_1 {
        report.violations.push("O is not connected to 1".into());
    }
    report.order_ideal = result.is_order_ideal();

    report.members_ok = true;
    for g in &result.basis {
        match member_violations(g, points, eps, norm, inner, &cache) {
            Ok(v) if v.is_empty() => {}
            Ok(v) => {
                report.members_ok = false;
                report.violations.extend(v);
            }
            Err(e) => {
                report.members_ok = false;
                report.violations.push(format!("g_{}: {e}", g.border_term));
            }
        }
    }

    match inner_min_sqrt_lambda(points, inner, norm, &cache) {
        Ok(None) => report.inner_non_vanishing = true,
        Ok(Some((sl, exact))) => {
            report.inner_min_sqrt_lambda = Some(sl);
            report.inner_non_vanishing = non_vanishing(sl, exact, eps);
            if !report.inner_non_vanishing {
                report.violations.push(format!(
                    "a normalized polynomial supported by O has extent {sl:.6e} <= eps"
                ));
            }
        }
        Err(e) => report.violations.push(format!("inner-term problem: {e}")),
    }

    report.border_correspondence = true;
    let expected = border(inner, &result.ordering);
    let mut seen = HashSet::new();
    for g in &result.basis {
        if !seen.insert(&g.border_term) {
            report.border_correspondence = false;
            report
                .violations
                .push(format!("border term {} appears twice", g.border_term));
        }
        if !expected.contains(&g.border_term) {
            report.border_correspondence = false;
            report
                .violations
                .push(format!("{} is not a border term of O", g.border_term));
        }
    }
    for b in expected.iter() {
        let in_range = result.max_degree.map_or(true, |cap| b.degree() <= cap);
        if in_range && !seen.contains(b) {
            report.border_correspondence = false;
            report
                .violations
                .push(format!("border term {b} has no basis polynomial"));
        }
    }
    report
}

/// Largest normal remainder (coefficient norm) over all neighbor
/// S-polynomials of the prebasis rescaled to unit border coefficients; zero
/// when there are no neighbor pairs.
pub fn prebasis_delta(result: &BasisResult) -> Result<f64, BasisError> {
    if !result.is_order_ideal() {
        return Err(BasisError::NotOrderIdeal);
    }
    let inner = &result.inner;
    let mut prebasis = Vec::new();
    for b in border(inner, &result.ordering).iter() {
        let g = result
            .polynomial(b)
            .ok_or_else(|| BasisError::IncompleteBorder(b.clone()))?;
        let c = g.border_coefficient();
        if c <= 0.0 {
            return Err(crate::polyring::PolyError::NonPositiveBorderCoefficient(b.clone()).into());
        }
        prebasis.push((b.clone(), g.poly.scale(1.0 / c)));
    }
    let mut delta: f64 = 0.0;
    for i in 0..prebasis.len() {
        for j in i + 1..prebasis.len() {
            let (bi, gi) = &prebasis[i];
            let (bj, gj) = &prebasis[j];
            if !are_neighbors(bi, bj) {
                continue;
            }
            let s = s_polynomial(gi, gj, bi, bj)?;
            let r = normal_remainder(&s, inner, prebasis.iter().map(|(b, g)| (b, g)))?;
            delta = delta.max(coeff_norm(&r));
        }
    }
    Ok(delta)
}

/// `(sqrt(lambda_min), exact)` of the problem on the inner terms alone, or
/// `None` when every eigenvalue is infinite.
pub(super) fn inner_min_sqrt_lambda(
    points: &PointSet,
    inner: &TermList,
    norm: Normalization,
    cache: &SeminormCache<'_>,
) -> Result<Option<(f64, bool)>, BasisError> {
    if inner.is_empty() {
        return Ok(None);
    }
    let (weights, c) = column_weights(inner.as_slice(), norm, cache)?;
    let problem = GevpProblem::new(eval_matrix(inner, points)?, weights, c)?;
    let dec = decompose(&problem);
    Ok(dec.eigenvalues.first().map(|&l| {
        let sl = l.max(0.0).sqrt();
        (sl, sl <= EXACT_RTOL * dec.scale)
    }))
}

pub(super) fn non_vanishing(sqrt_lambda: f64, exact: bool, eps: f64) -> bool {
    !exact && sqrt_lambda > eps * (1.0 - 1e-9)
}

/// Problems with a single basis polynomial, as messages.
pub(super) fn member_violations(
    g: &BasisPolynomial,
    points: &PointSet,
    eps: f64,
    norm: Normalization,
    inner: &TermList,
    cache: &SeminormCache<'_>,
) -> Result<Vec<String>, BasisError> {
    let b = &g.border_term;
    let mut out = Vec::new();
    if g.border_coefficient() <= 0.0 {
        out.push(format!("g_{b}: border coefficient is not positive"));
    }
    if let Some(t) = g.poly.support().find(|t| *t != b && !inner.contains(t)) {
        out.push(format!(
            "g_{b}: term {t} is neither in O nor the border term"
        ));
    }
    if g.normalized {
        let n = match norm {
            Normalization::GradientWeighted => gw_seminorm_poly(&g.poly, cache)?,
            Normalization::Coefficient => coeff_norm(&g.poly),
        };
        if (n - 1.0).abs() > 1e-10 {
            out.push(format!("g_{b}: norm is {n:.12} instead of 1"));
        }
    }
    let extent = euclidean_norm(&eval(&g.poly, points)?);
    let mut scale = 0.0;
    for (t, c) in g.poly.terms() {
        scale += c.abs() * euclidean_norm(&eval_term(t, points)?);
    }
    let bound = if g.exact {
        eps.max(1e-8 * scale)
    } else {
        eps + 1e-9 * eps.max(scale)
    };
    if extent > bound {
        out.push(format!(
            "g_{b}: extent {extent:.6e} exceeds {}",
            if g.exact {
                "the exact threshold"
            } else {
                "eps"
            }
        ));
    }
    Ok(out)
}
