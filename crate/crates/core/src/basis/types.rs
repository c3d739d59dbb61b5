use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gevp::GevpError;
use crate::norms::NormError;
use crate::polyring::{
    default_variable_names, is_order_ideal, PolyError, Polynomial, Term, TermList, TermOrdering,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Gradient-weighted semi-norm; `D = diag(||t||)`.
    GradientWeighted,
    /// Coefficient norm; `D = I`.
    Coefficient,
}

impl Normalization {
    pub fn short_name(self) -> &'static str {
        match self {
            Normalization::GradientWeighted => "gw",
            Normalization::Coefficient => "coeff",
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Abm,
    Avi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    /// The trial term produced a basis polynomial.
    Basis,
    /// The trial term was appended to the inner terms.
    Inner,
}

/// One trial-term decision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub degree: u32,
    pub trial: Term,
    /// `sqrt(lambda_min)` of the single-term problem; absent for batch steps.
    pub sqrt_lambda: Option<f64>,
    /// Finite generalized eigenvalues of the problem that decided this term.
    pub spectrum: Vec<f64>,
    pub exact: bool,
    pub decision: Decision,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisPolynomial {
    pub poly: Polynomial,
    pub border_term: Term,
    /// `||g(X)||_2`.
    pub extent: f64,
    pub exact: bool,
    pub normalized: bool,
}

impl BasisPolynomial {
    pub fn degree(&self) -> u32 {
        self.border_term.degree()
    }

    pub fn border_coefficient(&self) -> f64 {
        self.poly.coeff(&self.border_term)
    }
}

/// Inner terms `O` and border polynomials `G`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisResult {
    pub nvars: usize,
    #[serde(rename = "O")]
    pub inner: TermList,
    #[serde(rename = "G")]
    pub basis: Vec<BasisPolynomial>,
    pub eps: f64,
    pub normalization: Normalization,
    pub ordering: TermOrdering,
    pub algorithm: Algorithm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    /// Set when the run stopped after this degree instead of at termination.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default)]
    pub diagnostics: Vec<StepRecord>,
}

impl BasisResult {
    pub fn is_order_ideal(&self) -> bool {
        is_order_ideal(&self.inner)
    }

    pub fn border_terms(&self) -> Vec<&Term> {
        self.basis.iter().map(|g| &g.border_term).collect()
    }

    pub fn polynomial(&self, border_term: &Term) -> Option<&BasisPolynomial> {
        self.basis.iter().find(|g| &g.border_term == border_term)
    }

    /// Multi-line human-readable summary with `sig` significant digits.
    pub fn summary(&self, names: Option<&[String]>, sig: usize) -> String {
        let default = default_variable_names(self.nvars);
        let names = names.unwrap_or(&default);
        let inner: Vec<String> = self.inner.iter().map(|t| t.render(names)).collect();
        let mut out = format!(
            "algorithm: {:?}, normalization: {}, eps: {}\nO = [{}]\n",
            self.algorithm,
            self.normalization,
            self.eps,
            inner.join(", ")
        );
        if !self.is_order_ideal() {
            out.push_str("O is NOT an order ideal\n");
        }
        out.push_str(&format!("G ({} polynomials):\n", self.basis.len()));
        for g in &self.basis {
            out.push_str(&format!(
                "  g_{} = {}    extent {}{}\n",
                g.border_term.render(names),
                g.poly.render(&self.ordering, names, sig),
                crate::polyring::format_significant(g.extent, sig),
                if g.exact { " (exact)" } else { "" }
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BasisError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gevp(#[from] GevpError),
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error("tolerance must be a finite non-negative number, got {0}")]
    InvalidTolerance(f64),
    #[error("require eps > tau > 0, got eps = {eps}, tau = {tau}")]
    InvalidTau { eps: f64, tau: f64 },
    #[error("ordering has {found} variables, points have {expected}")]
    OrderingDimension { expected: usize, found: usize },
    #[error("trial term {trial}: {detail}")]
    Degenerate { trial: Term, detail: String },
    #[error("no termination after degree {0}")]
    NoTermination(u32),
    #[error("loop invariant violated: {0}")]
    InvariantViolated(String),
    #[error("inner terms do not form an order ideal")]
    NotOrderIdeal,
    #[error("no basis polynomial for border term {0}")]
    IncompleteBorder(Term),
}
