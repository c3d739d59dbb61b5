//! Sparse polynomials, term orderings, point sets and order-ideal combinatorics.

mod eval;
mod ordering;
mod points;
mod polynomial;
mod reduction;
mod term;
mod terms;

pub use eval::{euclidean_norm, eval, eval_matrix, eval_term, grad_eval, grad_eval_term};
pub use ordering::{OrderKind, TermOrdering};
pub use points::PointSet;
pub use polynomial::{format_significant, Polynomial, DROP_TOLERANCE};
pub use reduction::{are_neighbors, normal_remainder, s_polynomial};
pub use term::{default_variable_names, Term};
pub use terms::{border, is_connected_to_1, is_order_ideal, trial_terms, TermList};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("points must have at least one coordinate")]
    ZeroDimension,
    #[error("point coordinates must be finite")]
    NonFiniteCoordinate,
    #[error("duplicate term {0}")]
    DuplicateTerm(Term),
    #[error("invalid variable precedence {0:?}")]
    InvalidPrecedence(Vec<usize>),
    #[error("{0} and {1} are not neighbors")]
    NotNeighbors(Term, Term),
    #[error("border coefficient of {0} is not positive")]
    NonPositiveBorderCoefficient(Term),
    #[error("no border polynomial for {0}")]
    MissingBorderPolynomial(Term),
    #[error("prebasis polynomial has term {0} outside the order ideal")]
    NotSupportedByInner(Term),
}
