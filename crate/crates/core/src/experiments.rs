//! Seeded simulation harness: sparse signal and noise generators, recovery
//! sweeps over sparsity and noise grids, a Gaussian baseline ensemble, and
//! a Gram spectrum study.
//!
//! Reproducibility contract: every random draw flows through ChaCha12
//! seeded by [`derive_trial_seed`], which mixes the master seed, the
//! sparsity, the trial index, and a stream tag (0 signal, 1 noise, 2
//! column sampling) through a splitmix64 chain. Trials are independent of
//! execution order, so sweeps can run on a thread pool and still produce
//! identical results run after run.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use thiserror::Error;

use crate::construction::SensingMatrix;
use crate::recovery::{basis_pursuit, omp, BasisPursuitOptions, OmpOptions, RecoveryResult};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("sparsity {requested} exceeds the signal length {len}")]
    SparsityTooLarge { requested: usize, len: usize },
    #[error("value range [{lo}, {hi}] is empty")]
    EmptyValueRange { lo: f64, hi: f64 },
    #[error("grid step 0.01 admits no values in [{lo}, {hi}]")]
    EmptyGrid { lo: f64, hi: f64 },
    #[error("burst width {width} exceeds the vector length {len}")]
    BadBurstWidth { width: usize, len: usize },
    #[error("need {requested} distinct points but the matrix has {available}")]
    NotEnoughPoints { requested: usize, available: usize },
    #[error("Gram matrix deviates from Hermitian symmetry by {deviation:.3e}")]
    NotHermitian { deviation: f64 },
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream tag for signal draws.
pub const STREAM_SIGNAL: u64 = 0;
/// Stream tag for noise draws.
pub const STREAM_NOISE: u64 = 1;
/// Stream tag for column sampling.
pub const STREAM_COLUMNS: u64 = 2;

/// Per-trial seed: a splitmix64 chain over (master, sparsity, trial,
/// stream). Changing any ingredient decorrelates the whole stream, and the
/// derivation is position-independent so parallel execution order cannot
/// matter.
pub fn derive_trial_seed(master: u64, sparsity: usize, trial: usize, stream: u64) -> u64 {
    let mut s = splitmix64(master);
    s = splitmix64(s ^ sparsity as u64);
    s = splitmix64(s ^ trial as u64);
    splitmix64(s ^ stream)
}

/// Distribution of the nonzero signal values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValueModel {
    /// Uniform real values in [lo, hi).
    Uniform { lo: f64, hi: f64 },
    /// Hundredths: values k/100 for integers k with lo <= k/100 <= hi.
    Grid { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct SignalSpec {
    pub len: usize,
    pub sparsity: usize,
    pub values: ValueModel,
    /// Flip each value's sign with probability 1/2.
    pub random_signs: bool,
    /// Scale the finished signal to unit l2 norm.
    pub normalize: bool,
}

/// Draws a sparse signal: support sampled without replacement, then one
/// value (and optionally one sign) per support entry in ascending index
/// order. The draw order is part of the reproducibility contract.
pub fn gen_sparse_signal(spec: &SignalSpec, seed: u64) -> Result<DVector<f64>, ExperimentError> {
    if spec.sparsity > spec.len {
        return Err(ExperimentError::SparsityTooLarge { requested: spec.sparsity, len: spec.len });
    }
    match spec.values {
        ValueModel::Uniform { lo, hi } => {
            if lo > hi {
                return Err(ExperimentError::EmptyValueRange { lo, hi });
            }
        }
        ValueModel::Grid { lo, hi } => {
            if ((lo * 100.0).ceil() as i64) > ((hi * 100.0).floor() as i64) {
                return Err(ExperimentError::EmptyGrid { lo, hi });
            }
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut support = rand::seq::index::sample(&mut rng, spec.len, spec.sparsity).into_vec();
    support.sort_unstable();
    let mut x = DVector::zeros(spec.len);
    for &i in &support {
        let mut value = match spec.values {
            ValueModel::Uniform { lo, hi } => {
                if lo == hi {
                    lo
                } else {
                    rng.random_range(lo..hi)
                }
            }
            ValueModel::Grid { lo, hi } => {
                let k_lo = (lo * 100.0).ceil() as i64;
                let k_hi = (hi * 100.0).floor() as i64;
                let k = if k_lo == k_hi { k_lo } else { rng.random_range(k_lo..=k_hi) };
                k as f64 / 100.0
            }
        };
        if spec.random_signs && rng.random::<bool>() {
            value = -value;
        }
        x[i] = value;
    }
    if spec.normalize {
        let norm = x.norm();
        if norm > 0.0 {
            x /= norm;
        }
    }
    Ok(x)
}

/// Shape of the measurement noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    /// Every coordinate perturbed.
    Uniform,
    /// A contiguous window of corrupted coordinates; width defaults to
    /// ceil(len / 20).
    Burst { width: Option<usize> },
}

#[derive(Debug, Clone, Copy)]
pub struct NoiseSpec {
    pub len: usize,
    pub kind: NoiseKind,
    /// l2 norm the noise vector is scaled to.
    pub target_l2: f64,
}

/// Draws a noise vector with the exact requested l2 norm. Entries are
/// uniform in [-1, 1) before scaling.
pub fn gen_noise(spec: &NoiseSpec, seed: u64) -> Result<DVector<f64>, ExperimentError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut v = DVector::zeros(spec.len);
    if spec.len == 0 || spec.target_l2 == 0.0 {
        return Ok(v);
    }
    match spec.kind {
        NoiseKind::Uniform => {
            for i in 0..spec.len {
                v[i] = rng.random_range(-1.0..1.0);
            }
        }
        NoiseKind::Burst { width } => {
            let width = width.unwrap_or_else(|| spec.len.div_ceil(20)).max(1);
            if width > spec.len {
                return Err(ExperimentError::BadBurstWidth { width, len: spec.len });
            }
            let start = rng.random_range(0..=spec.len - width);
            for i in start..start + width {
                v[i] = rng.random_range(-1.0..1.0);
            }
        }
    }
    let mut norm = v.norm();
    if norm == 0.0 {
        // Vanishingly unlikely, but the contract promises the target norm.
        v[0] = 1.0;
        norm = 1.0;
    }
    Ok(v * (spec.target_l2 / norm))
}

/// Decoder run inside a sweep.
#[derive(Debug, Clone, Copy)]
pub enum SweepDecoder {
    /// Greedy pursuit with the oracle sparsity as its atom budget.
    Omp(OmpOptions),
    BasisPursuit(BasisPursuitOptions),
}

#[derive(Debug, Clone, Copy)]
pub struct NoiseConfig {
    pub kind: NoiseKind,
    pub target_l2: f64,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub sparsities: Vec<usize>,
    pub trials: usize,
    pub master_seed: u64,
    /// A trial succeeds when the l2 recovery error is below this.
    pub epsilon: f64,
    pub values: ValueModel,
    pub random_signs: bool,
    pub normalize: bool,
    pub noise: Option<NoiseConfig>,
    pub decoder: SweepDecoder,
}

impl SweepConfig {
    pub fn new(sparsities: Vec<usize>, trials: usize, master_seed: u64, decoder: SweepDecoder) -> Self {
        SweepConfig {
            sparsities,
            trials,
            master_seed,
            epsilon: 1e-8,
            values: ValueModel::Uniform { lo: 0.0, hi: 1.0 },
            random_signs: false,
            normalize: true,
            noise: None,
            decoder,
        }
    }
}

/// Aggregates for one sparsity level.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub sparsity: usize,
    pub trials: usize,
    pub successes: usize,
    /// Decoder invocations that returned an error instead of an estimate.
    pub failures: usize,
    /// Mean l2 distance to the true signal over completed trials.
    pub mean_error: f64,
    /// Mean measurement residual over completed trials.
    pub mean_residual: f64,
    /// Mean wall-clock decode time. Not deterministic; kept out of the
    /// reproducible outputs.
    pub mean_elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub trials: usize,
    pub master_seed: u64,
    pub epsilon: f64,
}

struct TrialOutcome {
    error: f64,
    residual: f64,
    elapsed: f64,
    success: bool,
    failed: bool,
}

/// Everything a single trial needs besides the sparsity and trial index.
#[derive(Clone, Copy)]
struct TrialSettings {
    values: ValueModel,
    random_signs: bool,
    normalize: bool,
    noise: Option<NoiseConfig>,
    decoder: SweepDecoder,
    master_seed: u64,
    epsilon: f64,
}

fn run_real_trial(
    a: &DMatrix<f64>,
    sparsity: usize,
    trial: usize,
    settings: &TrialSettings,
) -> TrialOutcome {
    let failed = TrialOutcome {
        error: 0.0,
        residual: 0.0,
        elapsed: 0.0,
        success: false,
        failed: true,
    };
    let spec = SignalSpec {
        len: a.ncols(),
        sparsity,
        values: settings.values,
        random_signs: settings.random_signs,
        normalize: settings.normalize,
    };
    let signal_seed = derive_trial_seed(settings.master_seed, sparsity, trial, STREAM_SIGNAL);
    let Ok(x) = gen_sparse_signal(&spec, signal_seed) else {
        return failed;
    };
    let mut y = a * &x;
    if let Some(noise_cfg) = settings.noise {
        let noise_spec =
            NoiseSpec { len: a.nrows(), kind: noise_cfg.kind, target_l2: noise_cfg.target_l2 };
        let noise_seed = derive_trial_seed(settings.master_seed, sparsity, trial, STREAM_NOISE);
        let Ok(e) = gen_noise(&noise_spec, noise_seed) else {
            return failed;
        };
        y += e;
    }
    let result: Result<RecoveryResult, _> = match settings.decoder {
        SweepDecoder::Omp(opts) => omp(a, &y, sparsity, &opts),
        SweepDecoder::BasisPursuit(opts) => basis_pursuit(a, &y, &opts),
    };
    match result {
        Ok(res) => {
            let error = res.estimate.l2_distance(&x);
            TrialOutcome {
                error,
                residual: res.residual_norm,
                elapsed: res.elapsed_seconds,
                success: error < settings.epsilon,
                failed: false,
            }
        }
        Err(_) => failed,
    }
}

fn aggregate(sparsity: usize, trials: usize, outcomes: Vec<TrialOutcome>) -> SweepRow {
    let failures = outcomes.iter().filter(|o| o.failed).count();
    let completed = trials - failures;
    let successes = outcomes.iter().filter(|o| o.success).count();
    let (sum_err, sum_res, sum_elapsed) = outcomes.iter().filter(|o| !o.failed).fold(
        (0.0, 0.0, 0.0),
        |(e, r, t), o| (e + o.error, r + o.residual, t + o.elapsed),
    );
    let denom = completed.max(1) as f64;
    SweepRow {
        sparsity,
        trials,
        successes,
        failures,
        mean_error: if completed > 0 { sum_err / denom } else { 0.0 },
        mean_residual: if completed > 0 { sum_res / denom } else { 0.0 },
        mean_elapsed_seconds: if completed > 0 { sum_elapsed / denom } else { 0.0 },
    }
}

/// Success rate against sparsity for a real sensing matrix. Decoder errors
/// are counted as failures, never propagated. Trials run in parallel and
/// the output is independent of scheduling.
pub fn run_sweep(a: &DMatrix<f64>, cfg: &SweepConfig) -> SweepResult {
    let settings = TrialSettings {
        values: cfg.values,
        random_signs: cfg.random_signs,
        normalize: cfg.normalize,
        noise: cfg.noise,
        decoder: cfg.decoder,
        master_seed: cfg.master_seed,
        epsilon: cfg.epsilon,
    };
    let rows = cfg
        .sparsities
        .iter()
        .map(|&s| {
            let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
                .into_par_iter()
                .map(|trial| run_real_trial(a, s, trial, &settings))
                .collect();
            aggregate(s, cfg.trials, outcomes)
        })
        .collect();
    SweepResult { rows, trials: cfg.trials, master_seed: cfg.master_seed, epsilon: cfg.epsilon }
}

#[derive(Debug, Clone)]
pub struct NoiseTableConfig {
    pub sparsities: Vec<usize>,
    /// Noise l2 norms, one table column each. 0 means noiseless.
    pub noise_levels: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub epsilon: f64,
    pub values: ValueModel,
    pub random_signs: bool,
    pub normalize: bool,
    pub noise_kind: NoiseKind,
    pub decoder: SweepDecoder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseTableRow {
    pub sparsity: usize,
    pub noise_l2: f64,
    pub trials: usize,
    pub successes: usize,
    pub failures: usize,
    pub mean_error: f64,
    pub mean_residual: f64,
    pub mean_elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseTableResult {
    pub rows: Vec<NoiseTableRow>,
    pub trials: usize,
    pub master_seed: u64,
    pub epsilon: f64,
}

/// Success counts over the (sparsity, noise level) grid. The same trial
/// index reuses the same signal and the same noise direction at every
/// level, so rows differ only by the injected noise magnitude.
pub fn run_noise_table(a: &DMatrix<f64>, cfg: &NoiseTableConfig) -> NoiseTableResult {
    let mut rows = Vec::with_capacity(cfg.sparsities.len() * cfg.noise_levels.len());
    for &s in &cfg.sparsities {
        for &level in &cfg.noise_levels {
            let settings = TrialSettings {
                values: cfg.values,
                random_signs: cfg.random_signs,
                normalize: cfg.normalize,
                noise: (level > 0.0)
                    .then_some(NoiseConfig { kind: cfg.noise_kind, target_l2: level }),
                decoder: cfg.decoder,
                master_seed: cfg.master_seed,
                epsilon: cfg.epsilon,
            };
            let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
                .into_par_iter()
                .map(|trial| run_real_trial(a, s, trial, &settings))
                .collect();
            let agg = aggregate(s, cfg.trials, outcomes);
            rows.push(NoiseTableRow {
                sparsity: s,
                noise_l2: level,
                trials: agg.trials,
                successes: agg.successes,
                failures: agg.failures,
                mean_error: agg.mean_error,
                mean_residual: agg.mean_residual,
                mean_elapsed_seconds: agg.mean_elapsed_seconds,
            });
        }
    }
    NoiseTableResult {
        rows,
        trials: cfg.trials,
        master_seed: cfg.master_seed,
        epsilon: cfg.epsilon,
    }
}

/// Dense Gaussian baseline: independent N(0, 1) entries, every column
/// scaled to unit l2 norm. Filled column by column for a stable draw
/// order.
pub fn gaussian_ensemble(rows: usize, cols: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut a = DMatrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            a[(i, j)] = rng.sample(StandardNormal);
        }
        let norm = a.column(j).norm();
        if norm > 0.0 {
            let mut col = a.column_mut(j);
            col /= norm;
        }
    }
    a
}

#[derive(Debug, Clone)]
pub struct SpectrumConfig {
    /// Half the number of sampled columns: each trial draws 2t columns
    /// from 2t distinct points.
    pub t: usize,
    pub trials: usize,
    pub master_seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub trial: usize,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// Spectral deviation of the Gram matrix from the identity,
    /// max |lambda - 1|.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub rows: Vec<SpectrumRow>,
    pub t: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub max_deviation: f64,
}

/// Samples 2t columns from 2t distinct points per trial and records the
/// eigenvalue range of their Gram matrix. Within-point orthogonality means
/// distinct points are the interesting case: all off-diagonal Gram entries
/// then have modulus 1/r.
pub fn gram_spectrum_experiment(
    m: &SensingMatrix,
    cfg: &SpectrumConfig,
) -> Result<SpectrumResult, ExperimentError> {
    let wanted = 2 * cfg.t;
    if wanted > m.point_count() {
        return Err(ExperimentError::NotEnoughPoints {
            requested: wanted,
            available: m.point_count(),
        });
    }
    let mut rows = Vec::with_capacity(cfg.trials);
    for trial in 0..cfg.trials {
        let seed = derive_trial_seed(cfg.master_seed, cfg.t, trial, STREAM_COLUMNS);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let points = rand::seq::index::sample(&mut rng, m.point_count(), wanted).into_vec();
        let cols: Vec<usize> = points
            .iter()
            .map(|&p| {
                let range = m.point_cols(p);
                range.start + rng.random_range(0..range.len())
            })
            .collect();
        let sub = m.entries().select_columns(cols.iter());
        let gram = sub.ad_mul(&sub);
        let mut herm_dev = 0.0f64;
        for i in 0..gram.nrows() {
            for j in 0..gram.ncols() {
                herm_dev = herm_dev.max((gram[(i, j)] - gram[(j, i)].conj()).norm());
            }
        }
        if herm_dev > 1e-9 {
            return Err(ExperimentError::NotHermitian { deviation: herm_dev });
        }
        let eigen = SymmetricEigen::new(gram);
        let min_ev = eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let max_ev = eigen.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let deviation = eigen
            .eigenvalues
            .iter()
            .map(|&l| (l - 1.0).abs())
            .fold(0.0, f64::max);
        rows.push(SpectrumRow { trial, min_eigenvalue: min_ev, max_eigenvalue: max_ev, deviation });
    }
    let min_eigenvalue = rows.iter().map(|r| r.min_eigenvalue).fold(f64::INFINITY, f64::min);
    let max_eigenvalue = rows.iter().map(|r| r.max_eigenvalue).fold(f64::NEG_INFINITY, f64::max);
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    Ok(SpectrumResult {
        rows,
        t: cfg.t,
        trials: cfg.trials,
        master_seed: cfg.master_seed,
        min_eigenvalue,
        max_eigenvalue,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build, realify, uniform_hadamards, HadamardChoice};
    use crate::design::{projective_plane, steiner_triple_system};

    #[test]
    fn trial_seeds_are_deterministic_and_distinct() {
        let a = derive_trial_seed(42, 3, 10, STREAM_SIGNAL);
        assert_eq!(a, derive_trial_seed(42, 3, 10, STREAM_SIGNAL));
        assert_ne!(a, derive_trial_seed(43, 3, 10, STREAM_SIGNAL));
        assert_ne!(a, derive_trial_seed(42, 4, 10, STREAM_SIGNAL));
        assert_ne!(a, derive_trial_seed(42, 3, 11, STREAM_SIGNAL));
        assert_ne!(a, derive_trial_seed(42, 3, 10, STREAM_NOISE));
    }

    #[test]
    fn sparse_signals_respect_their_spec() {
        let spec = SignalSpec {
            len: 50,
            sparsity: 8,
            values: ValueModel::Uniform { lo: 0.5, hi: 1.5 },
            random_signs: true,
            normalize: false,
        };
        let x = gen_sparse_signal(&spec, 9).unwrap();
        let support: Vec<usize> = (0..50).filter(|&i| x[i] != 0.0).collect();
        assert_eq!(support.len(), 8);
        for &i in &support {
            let v = x[i].abs();
            assert!((0.5..1.5).contains(&v), "value {v} outside range");
        }
        assert_eq!(x, gen_sparse_signal(&spec, 9).unwrap());
        assert_ne!(x, gen_sparse_signal(&spec, 10).unwrap());
    }

    #[test]
    fn grid_signals_land_on_hundredths() {
        let spec = SignalSpec {
            len: 30,
            sparsity: 6,
            values: ValueModel::Grid { lo: 0.25, hi: 1.0 },
            random_signs: false,
            normalize: false,
        };
        let x = gen_sparse_signal(&spec, 3).unwrap();
        for i in 0..30 {
            if x[i] != 0.0 {
                let hundredths = x[i] * 100.0;
                assert!((hundredths - hundredths.round()).abs() < 1e-9);
                assert!((0.25..=1.0).contains(&x[i]));
            }
        }
    }

    #[test]
    fn normalized_signals_have_unit_norm() {
        let spec = SignalSpec {
            len: 40,
            sparsity: 5,
            values: ValueModel::Uniform { lo: 1.0, hi: 2.0 },
            random_signs: true,
            normalize: true,
        };
        let x = gen_sparse_signal(&spec, 77).unwrap();
        assert!((x.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn signal_spec_validation() {
        let bad = SignalSpec {
            len: 4,
            sparsity: 5,
            values: ValueModel::Uniform { lo: 0.0, hi: 1.0 },
            random_signs: false,
            normalize: false,
        };
        assert!(matches!(
            gen_sparse_signal(&bad, 0),
            Err(ExperimentError::SparsityTooLarge { .. })
        ));
        let empty_grid = SignalSpec {
            len: 4,
            sparsity: 1,
            values: ValueModel::Grid { lo: 0.121, hi: 0.129 },
            random_signs: false,
            normalize: false,
        };
        assert!(matches!(gen_sparse_signal(&empty_grid, 0), Err(ExperimentError::EmptyGrid { .. })));
    }

    #[test]
    fn uniform_noise_hits_the_target_norm() {
        let spec = NoiseSpec { len: 64, kind: NoiseKind::Uniform, target_l2: 0.125 };
        let e = gen_noise(&spec, 5).unwrap();
        assert!((e.norm() - 0.125).abs() < 1e-12);
        assert_eq!(e, gen_noise(&spec, 5).unwrap());
    }

    #[test]
    fn burst_noise_is_contiguous() {
        let spec = NoiseSpec { len: 100, kind: NoiseKind::Burst { width: None }, target_l2: 1.0 };
        let e = gen_noise(&spec, 11).unwrap();
        let nz: Vec<usize> = (0..100).filter(|&i| e[i] != 0.0).collect();
        assert!(!nz.is_empty());
        assert!(nz.len() <= 5, "default width is len/20 = 5, got {}", nz.len());
        assert_eq!(nz.last().unwrap() - nz.first().unwrap() + 1, nz.len(), "window has gaps");
        assert!((e.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_noise_target_gives_zeros() {
        let spec = NoiseSpec { len: 10, kind: NoiseKind::Uniform, target_l2: 0.0 };
        let e = gen_noise(&spec, 1).unwrap();
        assert!(e.iter().all(|&v| v == 0.0));
    }

    fn fano_real() -> DMatrix<f64> {
        let d = projective_plane(2).unwrap();
        let hs = uniform_hadamards(&d, HadamardChoice::Fourier).unwrap();
        realify(&build(&d, hs).unwrap()).entries().clone()
    }

    #[test]
    fn omp_sweep_on_easy_signals_succeeds() {
        let a = fano_real();
        let cfg = SweepConfig::new(vec![1], 5, 123, SweepDecoder::Omp(OmpOptions::default()));
        let res = run_sweep(&a, &cfg);
        assert_eq!(res.rows.len(), 1);
        assert_eq!(res.rows[0].successes, 5);
        assert_eq!(res.rows[0].failures, 0);
        assert!(res.rows[0].mean_error < 1e-10);
        // Scheduling must not leak into the results. Timings are wall
        // clock and vary run to run, so compare everything but them.
        let again = run_sweep(&a, &cfg);
        let strip = |rows: &[SweepRow]| {
            rows.iter()
                .map(|r| {
                    (r.sparsity, r.trials, r.successes, r.failures, r.mean_error, r.mean_residual)
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&res.rows), strip(&again.rows));
    }

    #[test]
    fn basis_pursuit_sweep_on_an_identity_matrix() {
        let a = DMatrix::<f64>::identity(6, 6);
        let cfg = SweepConfig::new(
            vec![2],
            4,
            7,
            SweepDecoder::BasisPursuit(BasisPursuitOptions::default()),
        );
        let res = run_sweep(&a, &cfg);
        assert_eq!(res.rows[0].successes, 4);
    }

    #[test]
    fn noise_table_success_drops_with_noise() {
        let a = fano_real();
        let cfg = NoiseTableConfig {
            sparsities: vec![1],
            noise_levels: vec![0.0, 1e-3],
            trials: 5,
            master_seed: 99,
            epsilon: 1e-8,
            values: ValueModel::Uniform { lo: 0.5, hi: 1.5 },
            random_signs: true,
            normalize: true,
            noise_kind: NoiseKind::Uniform,
            decoder: SweepDecoder::Omp(OmpOptions::default()),
        };
        let res = run_noise_table(&a, &cfg);
        assert_eq!(res.rows.len(), 2);
        assert_eq!(res.rows[0].successes, 5, "noiseless trials must all succeed");
        assert!(res.rows[1].successes < res.rows[0].successes);
        assert!(res.rows[1].mean_error > 1e-8);
    }

    #[test]
    fn gaussian_ensembles_are_unit_normalized_and_seeded() {
        let a = gaussian_ensemble(20, 35, 4);
        assert_eq!((a.nrows(), a.ncols()), (20, 35));
        for j in 0..35 {
            assert!((a.column(j).norm() - 1.0).abs() < 1e-12);
        }
        assert_eq!(a, gaussian_ensemble(20, 35, 4));
        assert_ne!(a, gaussian_ensemble(20, 35, 5));
    }

    #[test]
    fn spectrum_of_a_triple_system_stays_in_the_unit_window() {
        let d = steiner_triple_system(13).unwrap();
        let hs = uniform_hadamards(&d, HadamardChoice::Fourier).unwrap();
        let m = build(&d, hs).unwrap();
        let cfg = SpectrumConfig { t: 3, trials: 20, master_seed: 17 };
        let res = gram_spectrum_experiment(&m, &cfg).unwrap();
        assert_eq!(res.rows.len(), 20);
        // Six columns from distinct points: off-diagonal Gram entries all
        // have modulus 1/6, so the eigenvalues sit well inside (0, 2).
        assert!(res.min_eigenvalue > 0.0);
        assert!(res.max_eigenvalue < 2.0);
        assert!(res.max_deviation < 1.0);
        let again = gram_spectrum_experiment(&m, &cfg).unwrap();
        assert_eq!(res.rows, again.rows);
    }

    #[test]
    fn spectrum_needs_enough_points() {
        let d = steiner_triple_system(9).unwrap();
        let hs = uniform_hadamards(&d, HadamardChoice::Fourier).unwrap();
        let m = build(&d, hs).unwrap();
        let cfg = SpectrumConfig { t: 5, trials: 1, master_seed: 0 };
        assert!(matches!(
            gram_spectrum_experiment(&m, &cfg),
            Err(ExperimentError::NotEnoughPoints { requested: 10, available: 9 })
        ));
    }
}
