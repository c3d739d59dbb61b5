use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::polyring::PointSet;

/// `p -> (p - mean) * scale`, as applied by [`preprocess`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub mean: Vec<f64>,
    pub scale: f64,
}

impl AffineMap {
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        p.iter()
            .zip(&self.mean)
            .map(|(x, m)| (x - m) * self.scale)
            .collect()
    }

    pub fn invert(&self, q: &[f64]) -> Vec<f64> {
        q.iter()
            .zip(&self.mean)
            .map(|(y, m)| y / self.scale + m)
            .collect()
    }
}

fn mean(x: &PointSet) -> Vec<f64> {
    let mut mu = vec![0.0; x.nvars()];
    for p in x.iter() {
        for (m, c) in mu.iter_mut().zip(p) {
            *m += c;
        }
    }
    let m = x.len() as f64;
    mu.iter_mut().for_each(|c| *c /= m);
    mu
}

fn centered(x: &PointSet) -> PointSet {
    let mu = mean(x);
    let coords = x
        .iter()
        .flat_map(|p| p.iter().zip(&mu).map(|(c, m)| c - m).collect::<Vec<_>>())
        .collect();
    PointSet::from_flat(x.nvars(), coords).expect("centering keeps the shape")
}

/// Centers the points and scales them to unit average Euclidean norm.
pub fn preprocess(x: &PointSet) -> Result<(PointSet, AffineMap), ExperimentError> {
    let mu = mean(x);
    let c = centered(x);
    let avg = c
        .iter()
        .map(|p| p.iter().map(|v| v * v).sum::<f64>().sqrt())
        .sum::<f64>()
        / x.len() as f64;
    if avg <= 0.0 {
        return Err(ExperimentError::ZeroSpread);
    }
    let scale = 1.0 / avg;
    Ok((c.scaled(scale), AffineMap { mean: mu, scale }))
}

/// Adds i.i.d. `N(0, nu)` noise to every coordinate (so `nu` is the
/// variance) and recenters.
pub fn perturb(x: &PointSet, nu: f64, seed: u64) -> Result<PointSet, ExperimentError> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(ExperimentError::InvalidNoise(nu));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, nu.sqrt()).expect("finite non-negative std");
    let coords = x
        .coords()
        .iter()
        .map(|c| c + normal.sample(&mut rng))
        .collect();
    let noisy = PointSet::from_flat(x.nvars(), coords)?;
    Ok(centered(&noisy))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[&[f64]]) -> PointSet {
        PointSet::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn preprocess_examples() {
        let x = pts(&[&[1.0, 0.0], &[-1.0, 0.0]]);
        assert_eq!(preprocess(&x).unwrap().0, x);
        let (y, map) = preprocess(&pts(&[&[2.0, 0.0], &[4.0, 0.0]])).unwrap();
        assert_eq!(y, pts(&[&[-1.0, 0.0], &[1.0, 0.0]]));
        assert_eq!(map.invert(&[1.0, 0.0]), vec![4.0, 0.0]);
    }

    #[test]
    fn preprocess_errors() {
        assert!(matches!(
            preprocess(&pts(&[&[1.0, 2.0]])),
            Err(ExperimentError::ZeroSpread)
        ));
        assert!(matches!(
            preprocess(&pts(&[&[1.0, 2.0], &[1.0, 2.0]])),
            Err(ExperimentError::ZeroSpread)
        ));
    }

    #[test]
    fn zero_noise_only_recenters() {
        let x = pts(&[&[1.0, 1.0], &[3.0, 1.0]]);
        assert_eq!(
            perturb(&x, 0.0, 3).unwrap(),
            pts(&[&[-1.0, 0.0], &[1.0, 0.0]])
        );
        assert!(perturb(&x, -1.0, 3).is_err());
    }

    #[test]
    fn noise_variance() {
        let x = PointSet::from_flat(2, vec![0.0; 20_000]).unwrap();
        let nu = 0.01;
        let y = perturb(&x, nu, 11).unwrap();
        for k in 0..2 {
            let var = y.iter().map(|p| p[k] * p[k]).sum::<f64>() / y.len() as f64;
            assert!((var / nu - 1.0).abs() < 0.05, "{var}");
        }
        let mu = mean(&y);
        assert!(mu.iter().all(|m| m.abs() < 1e-12));
    }
}
