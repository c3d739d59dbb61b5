use nalgebra::DMatrix;

use super::{PointSet, PolyError, Polynomial, Term, TermList};

/// `(f(p_1), ..., f(p_m))`.
pub fn eval(f: &Polynomial, points: &PointSet) -> Result<Vec<f64>, PolyError> {
    points.check_dim(f.nvars())?;
    Ok(points.iter().map(|p| f.eval_at(p)).collect())
}

pub fn eval_term(t: &Term, points: &PointSet) -> Result<Vec<f64>, PolyError> {
    points.check_dim(t.nvars())?;
    Ok(points.iter().map(|p| t.eval(p)).collect())
}

/// `m x |T|` matrix whose column `i` is the evaluation of `terms[i]`.
pub fn eval_matrix(terms: &TermList, points: &PointSet) -> Result<DMatrix<f64>, PolyError> {
    if let Some(n) = terms.nvars() {
        points.check_dim(n)?;
    }
    Ok(DMatrix::from_fn(points.len(), terms.len(), |j, i| {
        terms.as_slice()[i].eval(points.point(j))
    }))
}

/// Stacked gradients `(∇f(p_1), ..., ∇f(p_m))`, length `m * n`.
pub fn grad_eval(f: &Polynomial, points: &PointSet) -> Result<Vec<f64>, PolyError> {
    points.check_dim(f.nvars())?;
    let partials: Vec<Polynomial> = (0..f.nvars()).map(|k| f.partial(k)).collect();
    Ok(points
        .iter()
        .flat_map(|p| partials.iter().map(move |d| d.eval_at(p)))
        .collect())
}

/// Stacked gradients of a single term.
pub fn grad_eval_term(t: &Term, points: &PointSet) -> Result<Vec<f64>, PolyError> {
    points.check_dim(t.nvars())?;
    let n = t.nvars();
    let partials: Vec<Option<(u32, Term)>> = (0..n).map(|k| t.derivative(k)).collect();
    Ok(points
        .iter()
        .flat_map(|p| {
            partials.iter().map(move |d| match d {
                Some((e, dt)) => *e as f64 * dt.eval(p),
                None => 0.0,
            })
        })
        .collect())
}

pub fn euclidean_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
