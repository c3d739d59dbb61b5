//! Border basis algorithms: ABM (with either normalization), AVI, and
//! verification of their output.

mod abm;
mod avi;
mod types;
mod verify;

use serde::{Deserialize, Serialize};

pub use abm::{abm, abm_checked};
pub use avi::avi;
pub use types::{
    Algorithm, BasisError, BasisPolynomial, BasisResult, Decision, Normalization, StepRecord,
};
pub use verify::{prebasis_delta, verify_basis, VerificationReport};

use crate::norms::SeminormCache;
use crate::polyring::{PointSet, Term, TermOrdering};

/// Everything needed to run one of the algorithms on a point set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisConfig {
    pub eps: f64,
    pub normalization: Normalization,
    pub ordering: TermOrdering,
    pub algorithm: Algorithm,
    /// Elimination threshold; AVI only.
    pub tau: Option<f64>,
    /// Stop after this degree even if border terms remain.
    pub max_degree: Option<u32>,
}

impl BasisConfig {
    /// ABM with gradient-weighted normalization and degrevlex.
    pub fn new(eps: f64, nvars: usize) -> Self {
        BasisConfig {
            eps,
            normalization: Normalization::GradientWeighted,
            ordering: TermOrdering::degrevlex(nvars),
            algorithm: Algorithm::Abm,
            tau: None,
            max_degree: None,
        }
    }

    pub fn normalization(mut self, norm: Normalization) -> Self {
        self.normalization = norm;
        self
    }

    pub fn ordering(mut self, ordering: TermOrdering) -> Self {
        self.ordering = ordering;
        self
    }

    pub fn avi(mut self, tau: f64) -> Self {
        self.algorithm = Algorithm::Avi;
        self.tau = Some(tau);
        self
    }

    pub fn max_degree(mut self, d: u32) -> Self {
        self.max_degree = Some(d);
        self
    }
}

/// Runs the configured algorithm.
pub fn compute(points: &PointSet, config: &BasisConfig) -> Result<BasisResult, BasisError> {
    match config.algorithm {
        Algorithm::Abm => abm::run(points, config, false),
        Algorithm::Avi => avi::run(points, config),
    }
}

fn check_common(points: &PointSet, config: &BasisConfig) -> Result<(), BasisError> {
    if !(config.eps.is_finite() && config.eps >= 0.0) {
        return Err(BasisError::InvalidTolerance(config.eps));
    }
    if config.ordering.nvars() != points.nvars() {
        return Err(BasisError::OrderingDimension {
            expected: points.nvars(),
            found: config.ordering.nvars(),
        });
    }
    Ok(())
}

/// Diagonal of `D` for the given columns and the position of the constant
/// term when it carries zero weight.
fn column_weights(
    terms: &[Term],
    norm: Normalization,
    cache: &SeminormCache<'_>,
) -> Result<(Vec<f64>, Option<usize>), BasisError> {
    match norm {
        Normalization::Coefficient => Ok((vec![1.0; terms.len()], None)),
        Normalization::GradientWeighted => {
            let mut w = Vec::with_capacity(terms.len());
            let mut c = None;
            for (i, t) in terms.iter().enumerate() {
                if t.is_one() {
                    c = Some(i);
                }
                w.push(cache.term(t)?);
            }
            Ok((w, c))
        }
    }
}

/// Upper bound on the trial degree for a run on `m` points.
fn degree_guard(m: usize) -> u32 {
    m as u32 + 1
}
