use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::consistency::{capped, coefficient_distance, degreewise_counts, scaled_config};
use super::data::{perturb, preprocess};
use super::varieties::{sample_variety, Variety};
use super::{derive_seed, ExperimentError};
use crate::basis::{compute, BasisConfig, BasisResult, Normalization};
use crate::polyring::{euclidean_norm, eval, PointSet};

const PURPOSE_SAMPLE: u64 = 1;
const PURPOSE_NOISE: u64 = 2;

/// Parameters of a Scaling Consistency sweep. The tolerance grid is given
/// relative to each scale: at scale `alpha` the tolerances are
/// `alpha * (eps_start + k * eps_step)` below `alpha * eps_end`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub varieties: Vec<Variety>,
    pub sample_count: usize,
    pub nu: f64,
    pub alphas: Vec<f64>,
    pub eps_start: f64,
    pub eps_end: f64,
    pub eps_step: f64,
    pub runs: usize,
    pub seed: u64,
    pub normalizations: Vec<Normalization>,
}

impl ExperimentConfig {
    /// Five runs, three scales, coarse grid.
    pub fn desk() -> Self {
        ExperimentConfig {
            varieties: Variety::ALL.to_vec(),
            sample_count: 50,
            nu: 0.01,
            alphas: vec![0.1, 1.0, 10.0],
            eps_start: 1e-5,
            eps_end: 1.0,
            eps_step: 1e-2,
            runs: 5,
            seed: 0,
            normalizations: vec![Normalization::Coefficient, Normalization::GradientWeighted],
        }
    }

    /// Twenty runs, five scales, fine grid.
    pub fn full(nu: f64) -> Self {
        ExperimentConfig {
            nu,
            alphas: vec![0.01, 0.1, 1.0, 10.0, 100.0],
            eps_step: 1e-3,
            runs: 20,
            ..Self::desk()
        }
    }

    /// Relative tolerances `eps / alpha` of the grid.
    pub fn eps_grid(&self) -> Vec<f64> {
        (0..)
            .map(|k| self.eps_start + k as f64 * self.eps_step)
            .take_while(|&e| e < self.eps_end)
            .collect()
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |msg: &str| Err(ExperimentError::InvalidConfig(msg.to_string()));
        if self.runs == 0 {
            return bad("runs must be at least 1");
        }
        if self.sample_count < 2 {
            return bad("sample count must be at least 2");
        }
        if !(self.eps_step > 0.0 && self.eps_start >= 0.0) || self.eps_grid().is_empty() {
            return bad("tolerance grid is empty");
        }
        if self.alphas.is_empty() || self.alphas.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return bad("scales must be positive");
        }
        if self.varieties.is_empty() || self.normalizations.is_empty() {
            return bad("no varieties or normalizations selected");
        }
        if !(self.nu.is_finite() && self.nu >= 0.0) {
            return Err(ExperimentError::InvalidNoise(self.nu));
        }
        Ok(())
    }

    /// The clean and perturbed point sets of one run.
    pub fn datasets(
        &self,
        variety: Variety,
        run: usize,
    ) -> Result<(PointSet, PointSet), ExperimentError> {
        let ids = [variety.id(), run as u64];
        let raw = sample_variety(
            variety,
            self.sample_count,
            derive_seed(self.seed, &[ids[0], ids[1], PURPOSE_SAMPLE]),
        );
        let (xstar, _) = preprocess(&raw)?;
        let x = perturb(
            &xstar,
            self.nu,
            derive_seed(self.seed, &[ids[0], ids[1], PURPOSE_NOISE]),
        )?;
        Ok((xstar, x))
    }
}

/// Degree-wise counts at one grid tolerance. `scaled` is absent when the
/// clean and perturbed counts already differ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsOutcome {
    pub eps: f64,
    pub star: Option<Vec<usize>>,
    pub perturbed: Option<Vec<usize>>,
    pub scaled: Option<Vec<usize>>,
    pub consistent: bool,
}

/// One run of one (variety, normalization, scale) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub variety: Variety,
    pub run: usize,
    pub alpha: f64,
    pub normalization: Normalization,
    pub outcomes: Vec<EpsOutcome>,
    pub succeeded: bool,
    /// Smallest and largest consistent tolerance.
    pub range: Option<(f64, f64)>,
    /// Mean over consistent tolerances of the largest `||g(alpha X*)||`.
    pub extent: Option<f64>,
    /// Mean over consistent tolerances of the clean-vs-scaled coefficient distance.
    pub coeff_dist: Option<f64>,
}

/// One line of the summary table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub dataset: String,
    pub normalization: String,
    pub alpha: f64,
    pub range_lo: Option<f64>,
    pub range_hi: Option<f64>,
    pub coeff_dist: Option<f64>,
    pub ev: Option<f64>,
    pub success_rate: f64,
    pub succeeded: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: ExperimentConfig,
    pub rows: Vec<ReportRow>,
    pub records: Vec<RunRecord>,
}

impl SweepReport {
    pub fn row(&self, variety: Variety, norm: Normalization, alpha: f64) -> Option<&ReportRow> {
        self.rows.iter().find(|r| {
            r.dataset == variety.to_string()
                && r.normalization == norm.short_name()
                && r.alpha == alpha
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), ExperimentError> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// Extent and coefficient distance of a consistent grid cell.
type CellMetrics = Option<(f64, Option<f64>)>;

struct Base {
    star: Option<BasisResult>,
    perturbed: Option<BasisResult>,
}

fn run_or_warn(x: &PointSet, config: &BasisConfig) -> Option<BasisResult> {
    match compute(x, config) {
        Ok(r) => Some(r),
        Err(e) => {
            log::debug!("run at eps = {:e} failed: {e}", config.eps);
            None
        }
    }
}

fn max_extent(r: &BasisResult, x: &PointSet) -> f64 {
    r.basis
        .iter()
        .map(|g| euclidean_norm(&eval(&g.poly, x).expect("dimensions agree")))
        .fold(0.0, f64::max)
}

fn run_cell(
    config: &ExperimentConfig,
    variety: Variety,
    norm: Normalization,
    run: usize,
) -> Result<Vec<RunRecord>, ExperimentError> {
    let (xstar, x) = config.datasets(variety, run)?;
    let cap = variety.degree_cap();
    let template = BasisConfig::new(0.0, variety.ambient_dim()).normalization(norm);
    let grid = config.eps_grid();
    let bases: Vec<Base> = grid
        .par_iter()
        .map(|&e| {
            let c = capped(&template, e, cap);
            Base {
                star: run_or_warn(&xstar, &c),
                perturbed: run_or_warn(&x, &c),
            }
        })
        .collect();
    log::info!("{variety} {norm} run {run}: base runs done");

    let mut records = Vec::with_capacity(config.alphas.len());
    for &alpha in &config.alphas {
        let scaled_x = x.scaled(alpha);
        let scaled_star = xstar.scaled(alpha);
        let cells: Vec<(EpsOutcome, CellMetrics)> = grid
            .par_iter()
            .zip(&bases)
            .map(|(&e, base)| {
                let counts = |r: &Option<BasisResult>| {
                    r.as_ref().map(|r| degreewise_counts(&r.basis, cap).counts)
                };
                let (star, perturbed) = (counts(&base.star), counts(&base.perturbed));
                let mut outcome = EpsOutcome {
                    eps: alpha * e,
                    star: star.clone(),
                    perturbed: perturbed.clone(),
                    scaled: None,
                    consistent: false,
                };
                if star.is_none() || star != perturbed {
                    return (outcome, None);
                }
                let c = scaled_config(&capped(&template, e, cap), alpha);
                let Some(hat) = run_or_warn(&scaled_x, &c) else {
                    return (outcome, None);
                };
                outcome.scaled = Some(degreewise_counts(&hat.basis, cap).counts);
                outcome.consistent = outcome.scaled == star;
                let stats = outcome.consistent.then(|| {
                    let star = base.star.as_ref().expect("checked above");
                    (
                        max_extent(&hat, &scaled_star),
                        coefficient_distance(&star.basis, &hat.basis).ok(),
                    )
                });
                (outcome, stats)
            })
            .collect();

        let passing: Vec<(f64, f64, Option<f64>)> = cells
            .iter()
            .filter_map(|(o, s)| s.map(|(ev, cd)| (o.eps, ev, cd)))
            .collect();
        let succeeded = !passing.is_empty();
        let range = succeeded.then(|| {
            let lo = passing.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let hi = passing
                .iter()
                .map(|p| p.0)
                .fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        });
        let extent = mean(passing.iter().map(|p| p.1));
        let coeff_dist = mean(passing.iter().filter_map(|p| p.2));
        records.push(RunRecord {
            variety,
            run,
            alpha,
            normalization: norm,
            outcomes: cells.into_iter().map(|c| c.0).collect(),
            succeeded,
            range,
            extent,
            coeff_dist,
        });
    }
    Ok(records)
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (n, s) = values.fold((0usize, 0.0), |(n, s), v| (n + 1, s + v));
    (n > 0).then(|| s / n as f64)
}

/// Runs the full sweep in parallel and aggregates one row per
/// (variety, normalization, scale).
pub fn sweep(config: &ExperimentConfig) -> Result<SweepReport, ExperimentError> {
    config.validate()?;
    let mut jobs = Vec::new();
    for &v in &config.varieties {
        for &norm in &config.normalizations {
            for run in 0..config.runs {
                jobs.push((v, norm, run));
            }
        }
    }
    let per_job: Vec<Vec<RunRecord>> = jobs
        .par_iter()
        .map(|&(v, norm, run)| run_cell(config, v, norm, run))
        .collect::<Result<_, _>>()?;
    let records: Vec<RunRecord> = per_job.into_iter().flatten().collect();

    let mut rows = Vec::new();
    for &v in &config.varieties {
        for &norm in &config.normalizations {
            for &alpha in &config.alphas {
                let cell: Vec<&RunRecord> = records
                    .iter()
                    .filter(|r| r.variety == v && r.normalization == norm && r.alpha == alpha)
                    .collect();
                let ok: Vec<&&RunRecord> = cell.iter().filter(|r| r.succeeded).collect();
                rows.push(ReportRow {
                    dataset: v.to_string(),
                    normalization: norm.short_name().to_string(),
                    alpha,
                    range_lo: mean(ok.iter().filter_map(|r| r.range.map(|x| x.0))),
                    range_hi: mean(ok.iter().filter_map(|r| r.range.map(|x| x.1))),
                    coeff_dist: mean(ok.iter().filter_map(|r| r.coeff_dist)),
                    ev: mean(ok.iter().filter_map(|r| r.extent)),
                    success_rate: ok.len() as f64 / config.runs as f64,
                    succeeded: ok.len(),
                    total: config.runs,
                });
            }
        }
    }
    Ok(SweepReport {
        config: config.clone(),
        rows,
        records,
    })
}
