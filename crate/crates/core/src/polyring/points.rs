use serde::{Deserialize, Serialize};

use super::PolyError;

/// An ordered, non-empty list of points in `R^n`, stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct PointSet {
    nvars: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, PolyError> {
        let nvars = points.first().ok_or(PolyError::EmptyPointSet)?.len();
        if nvars == 0 {
            return Err(PolyError::ZeroDimension);
        }
        let mut coords = Vec::with_capacity(points.len() * nvars);
        for p in &points {
            if p.len() != nvars {
                return Err(PolyError::DimensionMismatch {
                    expected: nvars,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(nvars, coords)
    }

    pub fn from_flat(nvars: usize, coords: Vec<f64>) -> Result<Self, PolyError> {
        if nvars == 0 {
            return Err(PolyError::ZeroDimension);
        }
        if coords.is_empty() {
            return Err(PolyError::EmptyPointSet);
        }
        if coords.len() % nvars != 0 {
            return Err(PolyError::DimensionMismatch {
                expected: nvars,
                found: coords.len() % nvars,
            });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(PolyError::NonFiniteCoordinate);
        }
        let set = PointSet { nvars, coords };
        let dups = set.duplicate_count();
        if dups > 0 {
            log::warn!("point set contains {dups} exact duplicate point(s)");
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.nvars
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn point(&self, j: usize) -> &[f64] {
        &self.coords[j * self.nvars..(j + 1) * self.nvars]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.coords.chunks_exact(self.nvars)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }

    pub fn scaled(&self, alpha: f64) -> PointSet {
        PointSet {
            nvars: self.nvars,
            coords: self.coords.iter().map(|c| c * alpha).collect(),
        }
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn check_dim(&self, nvars: usize) -> Result<(), PolyError> {
        if nvars == self.nvars {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: nvars,
            })
        }
    }

    /// Number of points that exactly repeat an earlier point.
    pub fn duplicate_count(&self) -> usize {
        let pts: Vec<&[f64]> = self.iter().collect();
        (1..pts.len())
            .filter(|&j| pts[..j].iter().any(|q| *q == pts[j]))
            .count()
    }
}

impl TryFrom<Vec<Vec<f64>>> for PointSet {
    type Error = PolyError;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self, PolyError> {
        PointSet::new(rows)
    }
}

impl From<PointSet> for Vec<Vec<f64>> {
    fn from(p: PointSet) -> Self {
        p.to_rows()
    }
}
