//! Synthetic datasets from three parametric varieties and the Scaling
//! Consistency sweep.

mod consistency;
mod data;
mod sweep;
mod varieties;

pub use consistency::{
    coefficient_distance, consistency_test, degreewise_counts, ConsistencyOutcome, DegreeCounts,
};
pub use data::{perturb, preprocess, AffineMap};
pub use sweep::{sweep, EpsOutcome, ExperimentConfig, ReportRow, RunRecord, SweepReport};
pub use varieties::{sample_variety, Variety};

use crate::polyring::PolyError;

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("all points coincide")]
    ZeroSpread,
    #[error("noise level must be finite and non-negative, got {0}")]
    InvalidNoise(f64),
    #[error("both bases are empty")]
    EmptyBases,
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
    #[error("writing report: {0}")]
    Csv(#[from] csv::Error),
}

/// Seed for one (run, purpose) stream, mixed from `base` with splitmix64.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    parts.iter().fold(mix(base), |acc, &p| mix(acc ^ mix(p)))
}
