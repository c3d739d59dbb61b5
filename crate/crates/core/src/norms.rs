//! Coefficient norm and the data-driven gradient-weighted semi-norm.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::polyring::{euclidean_norm, grad_eval_term, PointSet, PolyError, Polynomial, Term};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NormError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial has zero gradient-weighted semi-norm and cannot be normalized")]
    ZeroSeminorm,
}

/// `sqrt(sum_k deg_k(t)^2)`; zero for the constant term.
pub fn euclidean_degree(t: &Term) -> f64 {
    t.exponents()
        .iter()
        .map(|&e| (e as f64) * (e as f64))
        .sum::<f64>()
        .sqrt()
}

/// `||grad t(X)||_2 / D(t)`, and `0` for `t = 1`.
pub fn gw_seminorm_term(t: &Term, points: &PointSet) -> Result<f64, PolyError> {
    points.check_dim(t.nvars())?;
    if t.is_one() {
        return Ok(0.0);
    }
    Ok(euclidean_norm(&grad_eval_term(t, points)?) / euclidean_degree(t))
}

pub fn coeff_norm(f: &Polynomial) -> f64 {
    f.terms().map(|(_, c)| c * c).sum::<f64>().sqrt()
}

/// Values below this are treated as a zero semi-norm for polynomials of
/// degree `deg` on `points`.
pub fn seminorm_zero_threshold(points: &PointSet, deg: u32) -> f64 {
    let scale = points.max_abs().max(1.0);
    1e-12 * (points.len() as f64).sqrt() * scale.powi(deg as i32 - 1)
}

/// Memoized term semi-norms for one point set.
#[derive(Debug)]
pub struct SeminormCache<'a> {
    points: &'a PointSet,
    memo: RwLock<HashMap<Term, f64>>,
}

impl<'a> SeminormCache<'a> {
    pub fn new(points: &'a PointSet) -> Self {
        SeminormCache {
            points,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn points(&self) -> &'a PointSet {
        self.points
    }

    pub fn term(&self, t: &Term) -> Result<f64, PolyError> {
        if let Some(v) = self.memo.read().expect("cache lock poisoned").get(t) {
            return Ok(*v);
        }
        let v = gw_seminorm_term(t, self.points)?;
        self.memo
            .write()
            .expect("cache lock poisoned")
            .insert(t.clone(), v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `sqrt(sum_t c_t^2 ||t||^2)`.
pub fn gw_seminorm_poly(f: &Polynomial, cache: &SeminormCache<'_>) -> Result<f64, PolyError> {
    let mut acc = 0.0;
    for (t, c) in f.terms() {
        let w = cache.term(t)?;
        acc += c * c * w * w;
    }
    Ok(acc.sqrt())
}

/// `f / ||f||`, failing when the semi-norm is numerically zero.
pub fn gw_normalize(f: &Polynomial, cache: &SeminormCache<'_>) -> Result<Polynomial, NormError> {
    let s = gw_seminorm_poly(f, cache)?;
    let deg = f.degree().unwrap_or(0);
    if s <= seminorm_zero_threshold(cache.points(), deg) {
        return Err(NormError::ZeroSeminorm);
    }
    Ok(f.scale(1.0 / s))
}
