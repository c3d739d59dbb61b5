mod io;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gwnbasis::experiments::{
    derive_seed, perturb, preprocess, sample_variety, sweep, AffineMap, ExperimentConfig,
    SweepReport, Variety,
};
use gwnbasis::polyring::{default_variable_names, format_significant};
use gwnbasis::{compute, verify_basis, BasisConfig, BasisResult, Normalization};
use serde::{Deserialize, Serialize};

use io::{parse_ordering, read_points, write_output, write_points};

const SIG: usize = 4;

#[derive(Parser)]
#[command(
    name = "gwnbasis",
    version,
    about = "Approximate border bases of point sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a basis for a point file and print a summary.
    Compute(ComputeArgs),
    /// Check a basis file against a point file.
    Verify(VerifyArgs),
    /// Sample a benchmark variety, preprocessed, perturbed and scaled.
    Sample(SampleArgs),
    /// Run the scaling consistency sweep.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Gw,
    Coeff,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Gw => Normalization::GradientWeighted,
            NormArg::Coeff => Normalization::Coefficient,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Abm,
    Avi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Desk,
    Full,
}

#[derive(Args)]
struct ComputeArgs {
    /// Point file: CSV (optional header) or JSON.
    points: PathBuf,
    #[arg(long)]
    eps: f64,
    #[arg(long, value_enum, default_value = "gw")]
    norm: NormArg,
    #[arg(long, value_enum, default_value = "abm")]
    algo: AlgoArg,
    /// Pivot threshold for AVI; requires eps > tau > 0.
    #[arg(long)]
    tau: Option<f64>,
    /// Term ordering, e.g. "degrevlex:x,y" (first variable greatest).
    #[arg(long, default_value = "degrevlex")]
    order: String,
    /// Multiply the points by this factor first.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Stop after this degree.
    #[arg(long)]
    max_degree: Option<u32>,
    /// Print the per-step diagnostics.
    #[arg(long)]
    trace: bool,
    /// Write the basis as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Basis JSON written by `compute`.
    basis: PathBuf,
    points: PathBuf,
    /// Tolerance to check against; defaults to the one stored in the basis.
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Args)]
struct SampleArgs {
    /// V1, V2 or V3.
    #[arg(long)]
    variety: Variety,
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Variance of the Gaussian noise.
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// CSV destination; the metadata goes next to it as `<out>.meta.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_enum, default_value = "desk", conflicts_with = "config")]
    preset: Preset,
    /// JSON experiment configuration instead of a preset.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Noise variance; overrides the preset.
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    runs: Option<usize>,
    /// Report CSV destination.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SampleMeta {
    variety: Variety,
    count: usize,
    seed: u64,
    nu: f64,
    alpha: f64,
    affine: AffineMap,
}

/// Errors that are the input's fault exit with 2, failed checks with 1.
enum Failure {
    Input(anyhow::Error),
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Experiment(a) => cmd_experiment(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_compute(a: ComputeArgs) -> Result<(), Failure> {
    let file = read_points(&a.points)?;
    let points = if a.alpha == 1.0 {
        file.points
    } else {
        file.points.scaled(a.alpha)
    };
    let mut config = BasisConfig::new(a.eps, points.nvars())
        .normalization(a.norm.into())
        .ordering(parse_ordering(&a.order, &file.names)?);
    if let AlgoArg::Avi = a.algo {
        config = config.avi(a.tau.context("--algo avi requires --tau")?);
    }
    if let Some(d) = a.max_degree {
        config = config.max_degree(d);
    }
    let result = compute(&points, &config).context("computation failed")?;

    print!("{}", result.summary(Some(&file.names), SIG));
    if a.trace {
        print_trace(&result, &file.names);
    }
    if let Some(out) = &a.out {
        let json = serde_json::to_string_pretty(&result).context("serializing the basis")?;
        fs::write(out, json + "\n").with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(())
}

fn print_trace(result: &BasisResult, names: &[String]) {
    println!("trace:");
    for s in &result.diagnostics {
        let spectrum: Vec<String> = s
            .spectrum
            .iter()
            .map(|v| format_significant(*v, SIG))
            .collect();
        let root = s
            .sqrt_lambda
            .map(|v| format!(" sqrt(lambda) {}", format_significant(v, SIG)))
            .unwrap_or_default();
        println!(
            "  degree {} trial {}:{root} spectrum [{}]{} -> {:?}",
            s.degree,
            s.trial.render(names),
            spectrum.join(", "),
            if s.exact { " exact" } else { "" },
            s.decision
        );
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let text =
        fs::read_to_string(&a.basis).with_context(|| format!("reading {}", a.basis.display()))?;
    let result: BasisResult = serde_json::from_str(&text).context("malformed basis file")?;
    let file = read_points(&a.points)?;
    let eps = a.eps.unwrap_or(result.eps);
    let report = verify_basis(&file.points, eps, &result);
    let flag = |b: bool| if b { "ok" } else { "FAILED" };
    println!("connected to 1: {}", flag(report.connected_to_1));
    println!(
        "order ideal: {}",
        if report.order_ideal { "yes" } else { "no" }
    );
    println!(
        "members vanish within eps = {eps}: {}",
        flag(report.members_ok)
    );
    println!(
        "inner terms non-vanishing: {}",
        flag(report.inner_non_vanishing)
    );
    println!(
        "border correspondence: {}",
        flag(report.border_correspondence)
    );
    for v in &report.violations {
        println!("violation: {v}");
    }
    if report.passed() {
        println!("verification passed");
        Ok(())
    } else {
        println!("verification FAILED");
        Err(Failure::Verification)
    }
}

fn cmd_sample(a: SampleArgs) -> Result<(), Failure> {
    if a.count == 0 {
        return Err(anyhow::anyhow!("--count must be positive").into());
    }
    let id = a.variety.id();
    let raw = sample_variety(a.variety, a.count, derive_seed(a.seed, &[id, 0, 1]));
    let (clean, affine) = preprocess(&raw).context("preprocessing")?;
    let noisy = perturb(&clean, a.nu, derive_seed(a.seed, &[id, 0, 2])).context("perturbing")?;
    let points = noisy.scaled(a.alpha);

    let mut csv = Vec::new();
    write_points(&mut csv, &points, &default_variable_names(points.nvars()))?;
    let csv = String::from_utf8(csv).expect("CSV output is UTF-8");
    write_output(a.out.as_deref(), &csv)?;
    if let Some(out) = &a.out {
        let meta = SampleMeta {
            variety: a.variety,
            count: a.count,
            seed: a.seed,
            nu: a.nu,
            alpha: a.alpha,
            affine,
        };
        let json = serde_json::to_string_pretty(&meta).context("serializing metadata")?;
        let path = meta_path(out);
        fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn meta_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn cmd_experiment(a: ExperimentArgs) -> Result<(), Failure> {
    let mut config = match &a.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).context("malformed experiment configuration")?
        }
        None => match a.preset {
            Preset::Desk => ExperimentConfig::desk(),
            Preset::Full => ExperimentConfig::full(a.nu.unwrap_or(0.01)),
        },
    };
    if let Some(nu) = a.nu {
        config.nu = nu;
    }
    if let Some(seed) = a.seed {
        config.seed = seed;
    }
    if let Some(runs) = a.runs {
        config.runs = runs;
    }
    config
        .validate()
        .context("invalid experiment configuration")?;
    let report = sweep(&config).context("sweep failed")?;
    print_table(&report);
    if let Some(out) = &a.out {
        let file = fs::File::create(out).with_context(|| format!("creating {}", out.display()))?;
        report.write_csv(file).context("writing the report")?;
    }
    Ok(())
}

fn print_table(report: &SweepReport) {
    let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format_significant(x, SIG));
    println!(
        "{:<8} {:<6} {:>8} {:>23} {:>10} {:>10} {:>8}",
        "dataset", "norm", "alpha", "eps range", "coeff.d", "e.v.", "success"
    );
    for r in &report.rows {
        let range = match (r.range_lo, r.range_hi) {
            (Some(lo), Some(hi)) => format!(
                "[{}, {}]",
                format_significant(lo, SIG),
                format_significant(hi, SIG)
            ),
            _ => "-".to_string(),
        };
        println!(
            "{:<8} {:<6} {:>8} {:>23} {:>10} {:>10} {:>8.2}",
            r.dataset,
            r.normalization,
            format_significant(r.alpha, SIG),
            range,
            opt(r.coeff_dist),
            opt(r.ev),
            r.success_rate
        );
    }
}
