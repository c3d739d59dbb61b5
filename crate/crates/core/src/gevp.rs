//! The generalized eigenvalue problem `M^T M v = lambda D^2 v` with diagonal,
//! possibly singular `D`.
//!
//! The zero weight (the constant term) is eliminated analytically: its row
//! forces the residual `Mv` to have zero mean, so the constant coefficient is
//! `-mean(M_ v)` and the remaining problem is definite. That problem is solved
//! through the SVD of the centered, weighted matrix `(C M_) D_^{-1}`.

use nalgebra::{DMatrix, DVector};

/// Relative tolerance for exact vanishing and for eigenvalue ties.
pub const EXACT_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GevpError {
    #[error("weight vector has length {found}, matrix has {expected} columns")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("weight {value} at column {index} is not a positive finite number")]
    InvalidWeight { index: usize, value: f64 },
    #[error("constant column index {0} is out of range")]
    BadConstIndex(usize),
    #[error("evaluation matrix is identically zero")]
    Degenerate,
    #[error("problem has no columns")]
    Empty,
}

/// `M` (m x (s+1)), diagonal `d` of `D`, and the position of the constant
/// column, whose weight must be zero. All other weights must be positive.
/// The last column is the trial term.
#[derive(Debug, Clone, PartialEq)]
pub struct GevpProblem {
    m: DMatrix<f64>,
    d: Vec<f64>,
    const_index: Option<usize>,
}

impl GevpProblem {
    pub fn new(
        m: DMatrix<f64>,
        d: Vec<f64>,
        const_index: Option<usize>,
    ) -> Result<Self, GevpError> {
        if m.ncols() == 0 {
            return Err(GevpError::Empty);
        }
        if d.len() != m.ncols() {
            return Err(GevpError::ShapeMismatch {
                expected: m.ncols(),
                found: d.len(),
            });
        }
        if let Some(c) = const_index {
            if c >= d.len() {
                return Err(GevpError::BadConstIndex(c));
            }
        }
        for (i, &w) in d.iter().enumerate() {
            let ok = if Some(i) == const_index {
                w == 0.0
            } else {
                w.is_finite() && w > 0.0
            };
            if !ok {
                return Err(GevpError::InvalidWeight { index: i, value: w });
            }
        }
        if m.iter().all(|x| *x == 0.0) {
            return Err(GevpError::Degenerate);
        }
        Ok(GevpProblem { m, d, const_index })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn weights(&self) -> &[f64] {
        &self.d
    }

    pub fn const_index(&self) -> Option<usize> {
        self.const_index
    }

    pub fn ncols(&self) -> usize {
        self.m.ncols()
    }

    pub fn trial_index(&self) -> usize {
        self.m.ncols() - 1
    }

    fn reduced_columns(&self) -> Vec<usize> {
        (0..self.ncols())
            .filter(|&i| Some(i) != self.const_index)
            .collect()
    }

    /// `(C M_) D_^{-1}` (or `M D^{-1}` without a constant column).
    fn weighted_reduced(&self) -> DMatrix<f64> {
        let cols = self.reduced_columns();
        let rows = self.m.nrows();
        let mut w = DMatrix::zeros(rows, cols.len());
        for (r, &i) in cols.iter().enumerate() {
            let col = self.m.column(i);
            let shift = if self.const_index.is_some() {
                col.mean()
            } else {
                0.0
            };
            for j in 0..rows {
                w[(j, r)] = (col[j] - shift) / self.d[i];
            }
        }
        w
    }

    /// Maps a unit vector of the reduced problem back to full coefficients.
    fn lift(&self, w: &DVector<f64>) -> DVector<f64> {
        let cols = self.reduced_columns();
        let mut v = DVector::zeros(self.ncols());
        for (r, &i) in cols.iter().enumerate() {
            v[i] = w[r] / self.d[i];
        }
        if let Some(c) = self.const_index {
            v[c] = -cols
                .iter()
                .map(|&i| self.m.column(i).mean() * v[i])
                .sum::<f64>();
        }
        v
    }
}

/// Right singular vectors (rows of `v_t`) and singular values of the padded
/// weighted matrix, with indices sorted by increasing singular value.
struct ReducedSvd {
    w: DMatrix<f64>,
    v_t: DMatrix<f64>,
    sv: DVector<f64>,
    order: Vec<usize>,
}

fn reduced_svd(problem: &GevpProblem) -> Option<ReducedSvd> {
    let w = problem.weighted_reduced();
    let (m, k) = w.shape();
    if k == 0 {
        return None;
    }
    let mut padded = DMatrix::zeros(m.max(k), k);
    padded.view_mut((0, 0), (m, k)).copy_from(&w);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sv = svd.singular_values;
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| sv[a].total_cmp(&sv[b]));
    Some(ReducedSvd { w, v_t, sv, order })
}

/// All finite eigenpairs, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct GevpDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Column `i` belongs to `eigenvalues[i]`, D-normalized.
    pub eigenvectors: DMatrix<f64>,
    /// Frobenius norm of the weighted reduced matrix; scale for thresholds.
    pub scale: f64,
}

/// Minimal finite generalized eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct GevpSolution {
    pub lambda_min: f64,
    pub v_min: Vec<f64>,
    pub exact: bool,
    pub finite_spectrum: Vec<f64>,
    /// Dimension of the minimal eigenspace.
    pub multiplicity: usize,
}

impl GevpSolution {
    pub fn sqrt_lambda(&self) -> f64 {
        self.lambda_min.sqrt()
    }
}

/// Every finite generalized eigenpair of the problem.
pub fn decompose(problem: &GevpProblem) -> GevpDecomposition {
    let Some(r) = reduced_svd(problem) else {
        return GevpDecomposition {
            eigenvalues: Vec::new(),
            eigenvectors: DMatrix::zeros(problem.ncols(), 0),
            scale: 0.0,
        };
    };
    let k = r.order.len();
    let mut eigenvalues = Vec::with_capacity(k);
    let mut eigenvectors = DMatrix::zeros(problem.ncols(), k);
    for (col, &i) in r.order.iter().enumerate() {
        eigenvalues.push(r.sv[i] * r.sv[i]);
        eigenvectors.set_column(col, &problem.lift(&r.v_t.row(i).transpose()));
    }
    GevpDecomposition {
        eigenvalues,
        eigenvectors,
        scale: r.w.norm(),
    }
}

/// Sorted finite generalized eigenvalues.
pub fn spectrum(problem: &GevpProblem) -> Vec<f64> {
    decompose(problem).eigenvalues
}

/// Smallest finite generalized eigenvalue, `None` if all are infinite.
pub fn min_finite_eigenvalue(problem: &GevpProblem) -> Option<f64> {
    spectrum(problem).first().copied()
}

/// Minimal finite eigenpair with the trial coefficient made positive.
///
/// Within a (numerically) repeated minimal eigenvalue the vector with the
/// largest trial coefficient is returned.
pub fn solve_min(problem: &GevpProblem) -> Result<GevpSolution, GevpError> {
    let ReducedSvd { w, v_t, sv, order } = reduced_svd(problem).ok_or(GevpError::Empty)?;
    let k = order.len();
    let scale = w.norm();
    let sigma_min = sv[order[0]];
    let band = sigma_min + EXACT_RTOL * scale;
    let space: Vec<usize> = order.iter().copied().filter(|&i| sv[i] <= band).collect();

    // trial position inside the reduced coordinates
    let trial = k - 1;
    let mut wmin = DVector::zeros(k);
    if space.len() > 1 {
        for &i in &space {
            let r = v_t.row(i).transpose();
            wmin += &r * r[trial];
        }
    }
    if wmin.norm() <= f64::EPSILON {
        wmin = v_t.row(order[0]).transpose();
    } else {
        wmin /= wmin.norm();
    }

    let lambda = (&w * &wmin).norm_squared();
    let exact = lambda.sqrt() <= EXACT_RTOL * scale;
    if space.len() > 1 && !exact {
        log::warn!(
            "minimal generalized eigenvalue {lambda:.6e} has multiplicity {}",
            space.len()
        );
    }

    let v = problem.lift(&wmin);
    let v_min = normalize_eigenvector(v.as_slice(), &problem.d, problem.trial_index()).0;
    Ok(GevpSolution {
        lambda_min: lambda.max(0.0),
        v_min,
        exact,
        finite_spectrum: order.iter().map(|&i| sv[i] * sv[i]).collect(),
        multiplicity: space.len(),
    })
}

/// Scales `v` so that `v^T D^2 v = 1` and `v[trial] > 0`. When `v^T D^2 v`
/// vanishes, scales to unit Euclidean norm instead and returns `false`.
pub fn normalize_eigenvector(v: &[f64], d: &[f64], trial_index: usize) -> (Vec<f64>, bool) {
    let q: f64 = v.iter().zip(d).map(|(a, w)| a * a * w * w).sum();
    let euclid = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let (norm, weighted) = if q.sqrt() > 1e-14 * euclid {
        (q.sqrt(), true)
    } else {
        (euclid, false)
    };
    let sign = if v[trial_index] < 0.0 { -1.0 } else { 1.0 };
    let scale = if norm > 0.0 { sign / norm } else { sign };
    (v.iter().map(|a| a * scale).collect(), weighted)
}

/// The SVD route as literally described: SVD of the uncentered `M_ D_^{-1}`,
/// `v_ = D_^{-1} v_s`, constant coefficient `-mean(M_ v_)`. The returned
/// vector is `(constant, v_)`, and `lambda_min` is
/// `v0^2 |X| - 2 v0 1^T M_ v_ + sigma_min^2` with `v0 = mean(M_ v_)`.
///
/// Because the SVD is not centered this can exceed the true minimum; it
/// agrees with [`solve_min`] when the columns of `M_` have zero mean.
pub fn solve_appendix_c(
    m_minus: &DMatrix<f64>,
    d_minus: &[f64],
) -> Result<GevpSolution, GevpError> {
    let (m, k) = m_minus.shape();
    if k == 0 {
        return Err(GevpError::Empty);
    }
    if d_minus.len() != k {
        return Err(GevpError::ShapeMismatch {
            expected: k,
            found: d_minus.len(),
        });
    }
    for (i, &w) in d_minus.iter().enumerate() {
        if !(w.is_finite() && w > 0.0) {
            return Err(GevpError::InvalidWeight { index: i, value: w });
        }
    }
    let mut padded = DMatrix::zeros(m.max(k), k);
    for r in 0..k {
        for j in 0..m {
            padded[(j, r)] = m_minus[(j, r)] / d_minus[r];
        }
    }
    let scale = padded.norm();
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| sv[a].total_cmp(&sv[b]));
    let i = order[0];
    let sigma = sv[i];

    let vhat: DVector<f64> = DVector::from_iterator(k, (0..k).map(|r| v_t[(i, r)] / d_minus[r]));
    let mv = m_minus * &vhat;
    let sum = mv.sum();
    let v0 = sum / m as f64;
    let lambda = (v0 * v0 * m as f64 - 2.0 * v0 * sum + sigma * sigma).max(0.0);

    let mut v = Vec::with_capacity(k + 1);
    v.push(-v0);
    v.extend(vhat.iter());
    let sign = if v[k] < 0.0 { -1.0 } else { 1.0 };
    v.iter_mut().for_each(|a| *a *= sign);

    Ok(GevpSolution {
        lambda_min: lambda,
        v_min: v,
        exact: lambda.sqrt() <= EXACT_RTOL * scale,
        finite_spectrum: order.iter().map(|&j| sv[j] * sv[j]).collect(),
        multiplicity: 1,
    })
}
