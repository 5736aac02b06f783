//! blocksense: deterministic compressed sensing matrices from block
//! designs, with certification, recovery, and simulation commands.

mod commands;
mod config;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use commands::{default_out_dir, suggested_stem};
use config::{
    BuildParams, CertifyParams, HadamardCheckParams, NoiseTableParams, RecoverParams, RunConfig,
    SpectrumParams, SweepParams,
};

#[derive(Parser)]
#[command(
    name = "blocksense",
    version,
    about = "Compressed sensing matrices built from block designs",
    long_about = "Builds deterministic sensing matrices from pairwise balanced designs and \
                  Hadamard blocks, certifies their sparse-recovery limits with explicit \
                  witnesses, decodes measurements, and reproduces the simulation tables. \
                  Artifacts land in --output, $BLOCKSENSE_OUT, or the working directory, \
                  and every run leaves a .config.toml that `blocksense run` replays."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a sensing matrix from a design recipe.
    Build(BuildArgs),
    /// Certify spark bounds and recovery limits of a saved matrix.
    Certify(CertifyArgs),
    /// Recover a sparse signal from measurements.
    Recover(RecoverArgs),
    /// Success rates across a range of sparsities.
    Sweep(SweepArgs),
    /// Success counts over a sparsity-by-noise grid.
    NoiseTable(NoiseTableArgs),
    /// Eigenvalue spread of random column-subset Gram matrices.
    Spectrum(SpectrumArgs),
    /// Validate a Hadamard matrix and scan its kernel supports.
    HadamardCheck(HadamardCheckArgs),
    /// Replay a command from an emitted .config.toml.
    Run(RunArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Design family: pg (projective plane) or sts (Steiner triple system).
    #[arg(value_parser = ["pg", "sts"])]
    source: String,
    /// Family parameter: prime order q for pg, point count v for sts.
    param: u32,
    /// Remove the points of a conic oval (pg only).
    #[arg(long)]
    remove_oval: bool,
    /// Remove these blocks and every point they contain (comma separated).
    #[arg(long, value_delimiter = ',', conflicts_with = "remove_oval")]
    remove_blocks: Vec<usize>,
    /// Hadamard family placed at every point: fourier or real.
    #[arg(long, default_value = "fourier", value_parser = ["fourier", "real"])]
    hadamard: String,
    /// Also write the realified (all-real, doubled) matrix.
    #[arg(long)]
    realify: bool,
    /// Output directory [default: $BLOCKSENSE_OUT or .]
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// File stem for the artifacts [default: derived from the recipe]
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct CertifyArgs {
    /// Sensing matrix file (the complex .matrix form with block metadata).
    #[arg(long)]
    matrix: PathBuf,
    /// Largest subset size for the brute-force spark scan; 0 skips it.
    #[arg(long, default_value_t = 0)]
    smax: usize,
    /// Cap on the number of column subsets the spark scan may examine.
    #[arg(long, default_value_t = blocksense::construction::DEFAULT_SPARK_BUDGET)]
    budget: u64,
    /// Two point indices for the witness pair (comma separated)
    /// [default: the two points of smallest replication]
    #[arg(long, value_delimiter = ',', num_args = 2)]
    points: Option<Vec<usize>>,
    /// Also save the report to this file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RecoverArgs {
    /// Sensing matrix file (.matrix or .real.matrix).
    #[arg(long)]
    matrix: PathBuf,
    /// Decoder: omp, bp, or alg1.
    #[arg(long, value_parser = ["omp", "bp", "alg1"])]
    algorithm: String,
    /// True signal file; measurements are computed as matrix * signal.
    #[arg(long, conflicts_with = "samples")]
    signal: Option<PathBuf>,
    /// Measurement vector file, used directly.
    #[arg(long)]
    samples: Option<PathBuf>,
    /// Atom budget (omp only).
    #[arg(long)]
    sparsity: Option<usize>,
    /// Selection size for alg1; 0 means the smallest replication number.
    #[arg(long, default_value_t = 0)]
    s_size: usize,
    /// Solver tolerance [default: the decoder's own].
    #[arg(long)]
    tolerance: Option<f64>,
    /// Iteration cap [default: the decoder's own].
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Result file [default: recovery.result in $BLOCKSENSE_OUT or .]
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Signal-model flags shared by the experiment commands.
#[derive(Args)]
struct SignalModelArgs {
    /// Nonzero value model: uniform or grid (hundredths).
    #[arg(long, default_value = "uniform", value_parser = ["uniform", "grid"])]
    values: String,
    /// Lower end of the value range.
    #[arg(long, default_value_t = 0.0)]
    value_lo: f64,
    /// Upper end of the value range.
    #[arg(long, default_value_t = 1.0)]
    value_hi: f64,
    /// Flip each nonzero's sign with probability one half.
    #[arg(long)]
    random_signs: bool,
    /// Keep raw signal scale instead of normalizing to unit l2 norm.
    #[arg(long)]
    no_normalize: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Sensing matrix file (.real.matrix, or .matrix to realify on load).
    #[arg(long)]
    matrix: PathBuf,
    /// Decoder: omp or bp.
    #[arg(long, value_parser = ["omp", "bp"])]
    algorithm: String,
    /// Sparsity levels to test (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    sparsities: Vec<usize>,
    /// Trials per sparsity level.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Master seed; per-trial seeds derive from it deterministically.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Success threshold on the l2 recovery error.
    #[arg(long, default_value_t = 1e-8)]
    epsilon: f64,
    /// Solver tolerance [default: the decoder's own].
    #[arg(long)]
    tolerance: Option<f64>,
    /// Iteration cap [default: the decoder's own].
    #[arg(long)]
    max_iterations: Option<usize>,
    #[command(flatten)]
    signal: SignalModelArgs,
    /// Add noise of this kind to every trial: uniform or burst.
    #[arg(long, value_parser = ["uniform", "burst"], requires = "noise_l2")]
    noise_kind: Option<String>,
    /// l2 norm the noise is scaled to.
    #[arg(long, requires = "noise_kind")]
    noise_l2: Option<f64>,
    /// Burst window width [default: one twentieth of the signal length].
    #[arg(long)]
    burst_len: Option<usize>,
    /// Output CSV; .rate.csv, .timings.csv, and .config.toml siblings are
    /// written next to it [default: sweep.csv in $BLOCKSENSE_OUT or .]
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NoiseTableArgs {
    /// Sensing matrix file (.real.matrix, or .matrix to realify on load).
    #[arg(long)]
    matrix: PathBuf,
    /// Decoder: omp or bp.
    #[arg(long, value_parser = ["omp", "bp"])]
    algorithm: String,
    /// Sparsity levels, one table row each (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    sparsities: Vec<usize>,
    /// Noise l2 norms, one table column each (comma separated; 0 = none).
    #[arg(long, value_delimiter = ',', required = true)]
    noise_levels: Vec<f64>,
    /// Trials per table cell.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Master seed; per-trial seeds derive from it deterministically.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Success threshold on the l2 recovery error.
    #[arg(long, default_value_t = 1e-8)]
    epsilon: f64,
    /// Solver tolerance [default: the decoder's own].
    #[arg(long)]
    tolerance: Option<f64>,
    /// Iteration cap [default: the decoder's own].
    #[arg(long)]
    max_iterations: Option<usize>,
    #[command(flatten)]
    signal: SignalModelArgs,
    /// Noise shape: uniform or burst.
    #[arg(long, default_value = "uniform", value_parser = ["uniform", "burst"])]
    noise_kind: String,
    /// Burst window width [default: one twentieth of the signal length].
    #[arg(long)]
    burst_len: Option<usize>,
    /// Output CSV; .timings.csv and .config.toml siblings are written next
    /// to it [default: noise-table.csv in $BLOCKSENSE_OUT or .]
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Sensing matrix file (the complex .matrix form with block metadata).
    #[arg(long)]
    matrix: PathBuf,
    /// Half the subset size: each trial samples 2t columns from 2t points.
    #[arg(long)]
    t: usize,
    /// Number of random subsets.
    #[arg(long, default_value_t = 500)]
    trials: usize,
    /// Master seed; per-trial seeds derive from it deterministically.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output CSV; a .config.toml sibling is written next to it
    /// [default: spectrum.csv in $BLOCKSENSE_OUT or .]
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct HadamardCheckArgs {
    /// Hadamard matrix file to inspect.
    #[arg(long, conflicts_with_all = ["order", "kind"])]
    file: Option<PathBuf>,
    /// Construct the matrix of this order instead.
    #[arg(long, requires = "kind")]
    order: Option<usize>,
    /// Family to construct: fourier or real.
    #[arg(long, value_parser = ["fourier", "real"], requires = "order")]
    kind: Option<String>,
    /// Largest combination size to scan [default: min(order, 6)].
    #[arg(long)]
    u_max: Option<usize>,
    /// Also report whether the matrix is optimal for this k.
    #[arg(long)]
    optimal_k: Option<usize>,
    /// Also save the report to this file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// A .config.toml emitted by an earlier run.
    #[arg(long)]
    config: PathBuf,
    /// Redirect the run's output (directory for build, file otherwise).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn path_string(p: &std::path::Path) -> String {
    p.to_string_lossy().into_owned()
}

fn default_file(name: &str) -> String {
    path_string(&default_out_dir().join(name))
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Build(a) => {
            let mut params = BuildParams {
                source: a.source,
                param: a.param,
                remove_oval: a.remove_oval,
                remove_blocks: a.remove_blocks,
                hadamard: a.hadamard,
                realify: a.realify,
                output: path_string(&a.output.unwrap_or_else(default_out_dir)),
                name: String::new(),
            };
            params.name = a.name.unwrap_or_else(|| suggested_stem(&params));
            commands::exec_build(&params)
        }
        Command::Certify(a) => commands::exec_certify(&CertifyParams {
            matrix: path_string(&a.matrix),
            smax: a.smax,
            budget: a.budget,
            points: a.points,
            output: a.output.as_deref().map(path_string),
        }),
        Command::Recover(a) => commands::exec_recover(&RecoverParams {
            matrix: path_string(&a.matrix),
            algorithm: a.algorithm,
            signal: a.signal.as_deref().map(path_string),
            samples: a.samples.as_deref().map(path_string),
            sparsity: a.sparsity,
            s_size: a.s_size,
            tolerance: a.tolerance,
            max_iterations: a.max_iterations,
            output: a
                .output
                .as_deref()
                .map(path_string)
                .unwrap_or_else(|| default_file("recovery.result")),
        }),
        Command::Sweep(a) => commands::exec_sweep(&SweepParams {
            matrix: path_string(&a.matrix),
            algorithm: a.algorithm,
            sparsities: a.sparsities,
            trials: a.trials,
            seed: a.seed,
            epsilon: a.epsilon,
            tolerance: a.tolerance,
            max_iterations: a.max_iterations,
            values: a.signal.values,
            value_lo: a.signal.value_lo,
            value_hi: a.signal.value_hi,
            random_signs: a.signal.random_signs,
            normalize: !a.signal.no_normalize,
            noise_kind: a.noise_kind,
            noise_l2: a.noise_l2,
            burst_len: a.burst_len,
            output: a
                .output
                .as_deref()
                .map(path_string)
                .unwrap_or_else(|| default_file("sweep.csv")),
        }),
        Command::NoiseTable(a) => commands::exec_noise_table(&NoiseTableParams {
            matrix: path_string(&a.matrix),
            algorithm: a.algorithm,
            sparsities: a.sparsities,
            noise_levels: a.noise_levels,
            trials: a.trials,
            seed: a.seed,
            epsilon: a.epsilon,
            tolerance: a.tolerance,
            max_iterations: a.max_iterations,
            values: a.signal.values,
            value_lo: a.signal.value_lo,
            value_hi: a.signal.value_hi,
            random_signs: a.signal.random_signs,
            normalize: !a.signal.no_normalize,
            noise_kind: a.noise_kind,
            burst_len: a.burst_len,
            output: a
                .output
                .as_deref()
                .map(path_string)
                .unwrap_or_else(|| default_file("noise-table.csv")),
        }),
        Command::Spectrum(a) => commands::exec_spectrum(&SpectrumParams {
            matrix: path_string(&a.matrix),
            t: a.t,
            trials: a.trials,
            seed: a.seed,
            output: a
                .output
                .as_deref()
                .map(path_string)
                .unwrap_or_else(|| default_file("spectrum.csv")),
        }),
        Command::HadamardCheck(a) => commands::exec_hadamard_check(&HadamardCheckParams {
            file: a.file.as_deref().map(path_string),
            order: a.order,
            kind: a.kind,
            u_max: a.u_max,
            optimal_k: a.optimal_k,
            output: a.output.as_deref().map(path_string),
        }),
        Command::Run(a) => {
            let config = RunConfig::load(&a.config)?;
            commands::exec_run(config, a.output.as_deref().map(path_string))
        }
    }
}
