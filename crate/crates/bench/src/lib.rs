//! Fixtures shared by the benchmarks.

use gwnbasis::experiments::{preprocess, sample_variety, Variety};
use gwnbasis::PointSet;

/// Preprocessed noise-free samples of `variety`.
pub fn variety_points(variety: Variety, count: usize) -> PointSet {
    preprocess(&sample_variety(variety, count, 17))
        .expect("variety samples have spread")
        .0
}
