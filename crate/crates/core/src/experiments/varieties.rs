use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::polyring::PointSet;

/// The three parametric test varieties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variety {
    /// Four-petal rose in the plane.
    V1,
    /// Twisted cubic-like curve in space.
    V2,
    /// Surface `x^2 - y^2 z^2 + z^3 = 0`.
    V3,
}

impl Variety {
    pub const ALL: [Variety; 3] = [Variety::V1, Variety::V2, Variety::V3];

    pub fn id(self) -> u64 {
        match self {
            Variety::V1 => 1,
            Variety::V2 => 2,
            Variety::V3 => 3,
        }
    }

    pub fn ambient_dim(self) -> usize {
        match self {
            Variety::V1 => 2,
            Variety::V2 | Variety::V3 => 3,
        }
    }

    /// Highest degree compared in the consistency test.
    pub fn degree_cap(self) -> u32 {
        match self {
            Variety::V1 => 6,
            Variety::V2 | Variety::V3 => 3,
        }
    }

    pub fn param_dim(self) -> usize {
        match self {
            Variety::V3 => 2,
            _ => 1,
        }
    }

    /// Half-open box `[lo, hi)` the parameters are drawn from.
    pub fn param_range(self) -> (f64, f64) {
        match self {
            Variety::V1 | Variety::V3 => (-1.0, 1.0),
            Variety::V2 => (-2.5, 2.5),
        }
    }

    /// Maps parameters to a point. For V1 the parameter `u` is the angle
    /// `pi * (u + 1)`, so `[-1, 1)` covers the whole curve.
    pub fn parametrize(self, params: &[f64]) -> Vec<f64> {
        match self {
            Variety::V1 => {
                let th = PI * (params[0] + 1.0);
                let r = (2.0 * th).cos();
                vec![r * th.cos(), r * th.sin()]
            }
            Variety::V2 => {
                let u = params[0];
                let x = 3.0 * (3.0 - u * u);
                let y = u * (3.0 - u * u);
                vec![x, y, x + y]
            }
            Variety::V3 => {
                let (u, v) = (params[0], params[1]);
                let z = u * u - v * v;
                vec![v * z, u, z]
            }
        }
    }

    /// Values of the defining equations at `p`.
    pub fn residuals(self, p: &[f64]) -> Vec<f64> {
        match self {
            Variety::V1 => {
                let (x2, y2) = (p[0] * p[0], p[1] * p[1]);
                vec![(x2 + y2).powi(3) - (x2 - y2).powi(2)]
            }
            Variety::V2 => {
                let (x, y, z) = (p[0], p[1], p[2]);
                vec![x + y - z, x.powi(3) - 9.0 * (x * x - 3.0 * y * y)]
            }
            Variety::V3 => {
                let (x, y, z) = (p[0], p[1], p[2]);
                vec![x * x - y * y * z * z + z.powi(3)]
            }
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}", self.id())
    }
}

impl FromStr for Variety {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "V1" => Ok(Variety::V1),
            "V2" => Ok(Variety::V2),
            "V3" => Ok(Variety::V3),
            _ => Err(format!("unknown variety {s:?}, expected V1, V2 or V3")),
        }
    }
}

/// `count` points with parameters drawn uniformly from the variety's box.
///
/// # Panics
/// If `count` is zero.
pub fn sample_variety(variety: Variety, count: usize, seed: u64) -> PointSet {
    assert!(count > 0, "sample count must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = variety.param_range();
    let mut coords = Vec::with_capacity(count * variety.ambient_dim());
    let mut params = vec![0.0; variety.param_dim()];
    for _ in 0..count {
        for p in params.iter_mut() {
            *p = rng.random_range(lo..hi);
        }
        coords.extend(variety.parametrize(&params));
    }
    PointSet::from_flat(variety.ambient_dim(), coords).expect("parametrizations are finite")
}
