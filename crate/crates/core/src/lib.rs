//! Approximate border bases of finite real point sets with gradient-weighted
//! or coefficient normalization.
//!
//! ```
//! use gwnbasis::{abm, Normalization, PointSet, TermOrdering};
//!
//! let x = PointSet::from_flat(2, vec![2.0, 2.0, -4.0, 1.0, 2.0, 0.0]).unwrap();
//! let r = abm(&x, 1.0, &TermOrdering::degrevlex(2), Normalization::GradientWeighted).unwrap();
//! assert_eq!(r.inner.len(), 2);
//! assert_eq!(r.basis.len(), 3);
//! ```

pub mod basis;
pub mod experiments;
pub mod gevp;
pub mod norms;
pub mod polyring;

pub use basis::{
    abm, abm_checked, avi, compute, prebasis_delta, verify_basis, Algorithm, BasisConfig,
    BasisError, BasisPolynomial, BasisResult, Decision, Normalization, StepRecord,
    VerificationReport,
};
pub use gevp::{decompose, solve_min, GevpDecomposition, GevpError, GevpProblem, GevpSolution};
pub use norms::{coeff_norm, gw_normalize, gw_seminorm_poly, gw_seminorm_term, SeminormCache};
pub use polyring::{OrderKind, PointSet, PolyError, Polynomial, Term, TermList, TermOrdering};
