//! Implementations behind the subcommands. Each takes a resolved config
//! struct so that `run --config` can replay any invocation through the
//! exact same code path.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use nalgebra::DVector;
use num_complex::Complex64;

use blocksense::construction::{
    arc_nullvector, brute_spark_with_budget, build, find_arc, realify, recovery_guarantee_bounds,
    spark_witness_two_points, split_nonrecoverable, uniform_hadamards, HadamardChoice,
    RealSensingMatrix, SensingMatrix, SparkBound,
};
use blocksense::design::{
    find_conic_oval, projective_plane, remove_blocks_with_points, remove_points,
    steiner_triple_system, Design, PointSet,
};
use blocksense::experiments::{
    gram_spectrum_experiment, run_noise_table, run_sweep, NoiseConfig, NoiseKind,
    NoiseTableConfig, SpectrumConfig, SweepConfig, SweepDecoder, ValueModel,
};
use blocksense::hadamard::{
    fourier, is_optimal, min_support_combination, real_hadamard, HadamardMatrix,
};
use blocksense::io;
use blocksense::recovery::{
    alg1_recover, basis_pursuit, omp, BasisPursuitOptions, OmpOptions, RecoveryResult,
};

use crate::config::{
    BuildParams, CertifyParams, HadamardCheckParams, NoiseTableParams, RecoverParams, RunConfig,
    SpectrumParams, SweepParams,
};

/// Directory used when a command has no --output flag: $BLOCKSENSE_OUT if
/// set, otherwise the working directory.
pub fn default_out_dir() -> PathBuf {
    std::env::var_os("BLOCKSENSE_OUT").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."))
}

/// Sibling path sharing the stem of `path`: "out/run.csv" + "config.toml"
/// gives "out/run.config.toml".
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_os_string()).unwrap_or_default();
    let mut name = stem;
    name.push(".");
    name.push(suffix);
    path.with_file_name(name)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("creating directory {}", parent.display()))?;
        }
    }
    io::write_atomic(path, text).with_context(|| format!("writing {}", path.display()))
}

fn first_token(path: &Path) -> Result<String> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(text.split_whitespace().next().unwrap_or_default().to_string())
}

/// Loads a matrix file and hands back a real matrix for the real-domain
/// decoders, realifying complex matrices on the fly.
fn load_real_matrix_any(path: &Path) -> Result<RealSensingMatrix> {
    match first_token(path)?.as_str() {
        "csmatrix-real" => {
            io::load_real_matrix(path).with_context(|| format!("loading {}", path.display()))
        }
        "csmatrix" => {
            let m =
                io::load_matrix(path).with_context(|| format!("loading {}", path.display()))?;
            Ok(realify(&m))
        }
        other => bail!(
            "{} does not hold a sensing matrix (found header {:?})",
            path.display(),
            other
        ),
    }
}

fn load_complex_matrix(path: &Path) -> Result<SensingMatrix> {
    match first_token(path)?.as_str() {
        "csmatrix" => {
            io::load_matrix(path).with_context(|| format!("loading {}", path.display()))
        }
        "csmatrix-real" => bail!(
            "{} holds a realified matrix; this command needs the complex matrix \
             with its block metadata",
            path.display()
        ),
        other => bail!(
            "{} does not hold a sensing matrix (found header {:?})",
            path.display(),
            other
        ),
    }
}

// ---------------------------------------------------------------------------
// build

fn design_from_recipe(p: &BuildParams) -> Result<(Design, String)> {
    let mut notes = String::new();
    let design = match p.source.as_str() {
        "pg" => {
            let plane = projective_plane(p.param)
                .with_context(|| format!("constructing the projective plane of order {}", p.param))?;
            writeln!(notes, "projective plane of order {}: {} points", p.param, plane.v()).ok();
            if p.remove_oval {
                let oval = find_conic_oval(&plane, p.param).context("finding a conic oval")?;
                let removal =
                    remove_points(&plane, &oval).context("removing the oval points")?;
                writeln!(notes, "removed a {}-point oval", oval.len()).ok();
                removal.design
            } else if !p.remove_blocks.is_empty() {
                let removal = remove_blocks_with_points(&plane, &p.remove_blocks)
                    .context("removing blocks")?;
                writeln!(
                    notes,
                    "removed {} blocks and the {} points they cover",
                    p.remove_blocks.len(),
                    plane.v() - removal.design.v()
                )
                .ok();
                removal.design
            } else {
                plane
            }
        }
        "sts" => {
            if p.remove_oval {
                bail!("--remove-oval applies to projective planes only");
            }
            let system = steiner_triple_system(p.param as usize)
                .with_context(|| format!("constructing a Steiner triple system on {} points", p.param))?;
            writeln!(notes, "Steiner triple system on {} points", system.v()).ok();
            if !p.remove_blocks.is_empty() {
                let removal = remove_blocks_with_points(&system, &p.remove_blocks)
                    .context("removing blocks")?;
                writeln!(
                    notes,
                    "removed {} blocks and the {} points they cover",
                    p.remove_blocks.len(),
                    system.v() - removal.design.v()
                )
                .ok();
                removal.design
            } else {
                system
            }
        }
        other => bail!("unknown design source {other:?} (expected pg or sts)"),
    };
    Ok((design, notes))
}

fn hadamard_choice(name: &str) -> Result<HadamardChoice> {
    match name {
        "fourier" => Ok(HadamardChoice::Fourier),
        "real" => Ok(HadamardChoice::Real),
        other => bail!("unknown Hadamard family {other:?} (expected fourier or real)"),
    }
}

pub fn exec_build(p: &BuildParams) -> Result<()> {
    let (design, notes) = design_from_recipe(p)?;
    print!("{notes}");
    let hadamards = uniform_hadamards(&design, hadamard_choice(&p.hadamard)?)
        .context("choosing Hadamard matrices")?;
    let matrix = build(&design, hadamards).context("assembling the sensing matrix")?;

    let dir = PathBuf::from(&p.output);
    let design_path = dir.join(format!("{}.design", p.name));
    let matrix_path = dir.join(format!("{}.matrix", p.name));
    write_text(&design_path, &io::design_to_string(&design))?;
    write_text(&matrix_path, &io::matrix_to_string(&matrix))?;
    let mut written = vec![design_path.clone(), matrix_path.clone()];

    if p.realify {
        let real = realify(&matrix);
        let real_path = dir.join(format!("{}.real.matrix", p.name));
        write_text(&real_path, &io::real_matrix_to_string(&real))?;
        println!(
            "matrix: {} x {} (realified {} x {})",
            matrix.n(),
            matrix.cols(),
            real.rows(),
            real.cols()
        );
        written.push(real_path);
    } else {
        println!("matrix: {} x {}", matrix.n(), matrix.cols());
    }

    match matrix.equireplication() {
        Some(r) => println!("replication: {r} at every point"),
        None => {
            let (lo, hi) = (0..matrix.point_count())
                .map(|p| matrix.replication(p))
                .fold((usize::MAX, 0), |(lo, hi), r| (lo.min(r), hi.max(r)));
            println!("replication: {lo}..={hi}");
        }
    }
    println!("coherence: {}", matrix.coherence_bound());
    let bounds = recovery_guarantee_bounds(&matrix);
    match bounds.t_impossible {
        Some(t) => println!(
            "recovery: guaranteed at sparsity <= {}, impossible at sparsity >= {}",
            bounds.t_guaranteed, t
        ),
        None => println!("recovery: guaranteed at sparsity <= {}", bounds.t_guaranteed),
    }

    let config_path = dir.join(format!("{}.config.toml", p.name));
    RunConfig::Build(p.clone()).save(&config_path)?;
    written.push(config_path);
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// certify

pub fn exec_certify(p: &CertifyParams) -> Result<()> {
    let matrix = load_complex_matrix(Path::new(&p.matrix))?;
    let mut report = String::new();
    writeln!(report, "matrix: {} x {}, {} points", matrix.n(), matrix.cols(), matrix.point_count())
        .ok();

    let bounds = recovery_guarantee_bounds(&matrix);
    writeln!(report, "guaranteed recovery at sparsity <= {}", bounds.t_guaranteed).ok();

    // Two-point witness: a nullvector supported on the columns of two
    // points, proving spark <= r1 + r2.
    let (p1, p2) = match &p.points {
        Some(pair) if pair.len() == 2 => (pair[0], pair[1]),
        Some(other) => bail!("--points expects exactly two indices, got {}", other.len()),
        None => {
            let mut by_replication: Vec<usize> = (0..matrix.point_count()).collect();
            by_replication.sort_by_key(|&q| (matrix.replication(q), q));
            match by_replication[..] {
                [] | [_] => bail!("the matrix has fewer than two points; nothing to certify"),
                [a, b, ..] => (a, b),
            }
        }
    };
    let witness = spark_witness_two_points(&matrix, p1, p2)
        .with_context(|| format!("building the two-point witness at points {p1} and {p2}"))?;
    let sparsity = witness.iter().filter(|e| e.norm() > 0.0).count();
    let image = matrix.apply(&witness);
    let image_peak = image.iter().map(|e| e.norm()).fold(0.0f64, f64::max);
    writeln!(
        report,
        "two-point witness: points {p1} and {p2}, sparsity {sparsity}, image peak {image_peak:e}"
    )
    .ok();
    writeln!(report, "spark <= {sparsity}").ok();

    match split_nonrecoverable(&matrix, &witness) {
        Ok((m1, m2)) => {
            let s1 = m1.iter().filter(|e| e.norm() > 0.0).count();
            let s2 = m2.iter().filter(|e| e.norm() > 0.0).count();
            let gap = (matrix.apply(&m1) - matrix.apply(&m2))
                .iter()
                .map(|e| e.norm())
                .fold(0.0f64, f64::max);
            writeln!(
                report,
                "indistinguishable pair: sparsities {s1} and {s2}, image gap {gap:e}"
            )
            .ok();
        }
        Err(e) => writeln!(report, "indistinguishable pair: unavailable ({e})").ok().unwrap_or(()),
    }

    match find_arc(&matrix) {
        Some([a, b, c]) => {
            let arc = PointSet::new(vec![a, b, c], matrix.point_count())
                .map_err(|e| anyhow!("internal arc bookkeeping failed: {e}"))?;
            match arc_nullvector(&matrix, &arc) {
                Ok(v) => {
                    let s = v.iter().filter(|e| e.norm() > 0.0).count();
                    let peak =
                        matrix.apply(&v).iter().map(|e| e.norm()).fold(0.0f64, f64::max);
                    writeln!(
                        report,
                        "arc witness: points {a}, {b}, {c}, sparsity {s}, image peak {peak:e}"
                    )
                    .ok();
                    writeln!(report, "spark <= {s} via the arc").ok();
                }
                Err(e) => {
                    writeln!(report, "arc witness: not applicable ({e})").ok();
                }
            }
        }
        None => {
            writeln!(report, "arc witness: no three points in general position").ok();
        }
    }

    if let Some(t) = bounds.t_impossible {
        writeln!(report, "recovery impossible at sparsity >= {t}").ok();
    }

    if p.smax > 0 {
        match brute_spark_with_budget(&matrix, p.smax, p.budget) {
            Ok(SparkBound::Exact(s)) => writeln!(report, "brute-force spark: {s}").ok(),
            Ok(SparkBound::ExceedsSmax) => {
                writeln!(report, "brute-force spark: every subset of size <= {} is independent", p.smax)
                    .ok()
            }
            Err(e) => writeln!(report, "brute-force spark: {e}").ok(),
        };
    }

    print!("{report}");
    if let Some(out) = &p.output {
        let out = Path::new(out);
        write_text(out, &report)?;
        RunConfig::Certify(p.clone()).save(&sibling(out, "config.toml"))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// recover

fn load_real_vector_checked(path: &Path, expected: usize, what: &str) -> Result<DVector<f64>> {
    let v =
        io::load_real_vector(path).with_context(|| format!("loading {}", path.display()))?;
    if v.len() != expected {
        bail!("{what} {} has length {}, expected {expected}", path.display(), v.len());
    }
    Ok(v)
}

/// Loads a vector for the complex-domain decoder. Real vector files are
/// accepted too and promoted entrywise, since the signals this model cares
/// about are real even when the measurements are not.
fn load_complex_vector_checked(
    path: &Path,
    expected: usize,
    what: &str,
) -> Result<DVector<Complex64>> {
    let v = match first_token(path)?.as_str() {
        "vector-real" => io::load_real_vector(path)
            .with_context(|| format!("loading {}", path.display()))?
            .map(|x| Complex64::new(x, 0.0)),
        _ => io::load_complex_vector(path)
            .with_context(|| format!("loading {}", path.display()))?,
    };
    if v.len() != expected {
        bail!("{what} {} has length {}, expected {expected}", path.display(), v.len());
    }
    Ok(v)
}

pub fn exec_recover(p: &RecoverParams) -> Result<()> {
    let matrix_path = Path::new(&p.matrix);
    let result: RecoveryResult = match p.algorithm.as_str() {
        "omp" | "bp" => {
            let a = load_real_matrix_any(matrix_path)?;
            let y = match (&p.samples, &p.signal) {
                (Some(samples), None) => {
                    load_real_vector_checked(Path::new(samples), a.rows(), "sample vector")?
                }
                (None, Some(signal)) => {
                    let x =
                        load_real_vector_checked(Path::new(signal), a.cols(), "signal vector")?;
                    a.entries() * x
                }
                _ => bail!("pass exactly one of --samples or --signal"),
            };
            if p.algorithm == "omp" {
                let sparsity = p
                    .sparsity
                    .ok_or_else(|| anyhow!("omp needs --sparsity (its atom budget)"))?;
                let mut opts = OmpOptions { columns_normalized: false, ..OmpOptions::default() };
                if let Some(t) = p.tolerance {
                    opts.residual_tolerance = t;
                }
                if p.max_iterations.is_some() {
                    opts.max_iterations = p.max_iterations;
                }
                omp(a.entries(), &y, sparsity, &opts)?
            } else {
                let mut opts = BasisPursuitOptions::default();
                if let Some(t) = p.tolerance {
                    opts.tol = t;
                }
                if let Some(n) = p.max_iterations {
                    opts.max_iterations = n;
                }
                basis_pursuit(a.entries(), &y, &opts)?
            }
        }
        "alg1" => {
            let m = load_complex_matrix(matrix_path)?;
            let y = match (&p.samples, &p.signal) {
                (Some(samples), None) => {
                    load_complex_vector_checked(Path::new(samples), m.n(), "sample vector")?
                }
                (None, Some(signal)) => {
                    let x = load_complex_vector_checked(
                        Path::new(signal),
                        m.cols(),
                        "signal vector",
                    )?;
                    m.apply(&x)
                }
                _ => bail!("pass exactly one of --samples or --signal"),
            };
            alg1_recover(&m, &y, p.s_size)?
        }
        other => bail!("unknown algorithm {other:?} (expected omp, bp, or alg1)"),
    };

    println!(
        "status: {}, iterations: {}, residual: {:e}, elapsed: {:.6}s",
        io::status_name(result.status),
        result.iterations,
        result.residual_norm,
        result.elapsed_seconds
    );

    let out = Path::new(&p.output);
    write_text(out, &io::recovery_result_to_string(&result))?;
    RunConfig::Recover(p.clone()).save(&sibling(out, "config.toml"))?;
    println!("wrote {}", out.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// experiment commands

fn parse_value_model(name: &str, lo: f64, hi: f64) -> Result<ValueModel> {
    match name {
        "uniform" => Ok(ValueModel::Uniform { lo, hi }),
        "grid" => Ok(ValueModel::Grid { lo, hi }),
        other => bail!("unknown value model {other:?} (expected uniform or grid)"),
    }
}

fn parse_noise_kind(name: &str, burst_len: Option<usize>) -> Result<NoiseKind> {
    match name {
        "uniform" => Ok(NoiseKind::Uniform),
        "burst" => Ok(NoiseKind::Burst { width: burst_len }),
        other => bail!("unknown noise kind {other:?} (expected uniform or burst)"),
    }
}

fn decoder_from(algorithm: &str, tolerance: Option<f64>, max_iterations: Option<usize>) -> Result<SweepDecoder> {
    match algorithm {
        "omp" => {
            let mut opts = OmpOptions::default();
            if let Some(t) = tolerance {
                opts.residual_tolerance = t;
            }
            if max_iterations.is_some() {
                opts.max_iterations = max_iterations;
            }
            Ok(SweepDecoder::Omp(opts))
        }
        "bp" => {
            let mut opts = BasisPursuitOptions::default();
            if let Some(t) = tolerance {
                opts.tol = t;
            }
            if let Some(n) = max_iterations {
                opts.max_iterations = n;
            }
            Ok(SweepDecoder::BasisPursuit(opts))
        }
        other => bail!("unknown algorithm {other:?} (expected omp or bp)"),
    }
}

pub fn exec_sweep(p: &SweepParams) -> Result<()> {
    let a = load_real_matrix_any(Path::new(&p.matrix))?;
    let noise = match (&p.noise_kind, p.noise_l2) {
        (Some(kind), Some(level)) => {
            Some(NoiseConfig { kind: parse_noise_kind(kind, p.burst_len)?, target_l2: level })
        }
        (None, None) => None,
        _ => bail!("--noise-kind and --noise-l2 go together"),
    };
    let cfg = SweepConfig {
        sparsities: p.sparsities.clone(),
        trials: p.trials,
        master_seed: p.seed,
        epsilon: p.epsilon,
        values: parse_value_model(&p.values, p.value_lo, p.value_hi)?,
        random_signs: p.random_signs,
        normalize: p.normalize,
        noise,
        decoder: decoder_from(&p.algorithm, p.tolerance, p.max_iterations)?,
    };
    let result = run_sweep(a.entries(), &cfg);

    let echo = format!("# matrix={} algorithm={}\n", p.matrix, p.algorithm);
    let out = Path::new(&p.output);
    write_text(out, &format!("{echo}{}", io::sweep_to_csv(&result)))?;
    write_text(&sibling(out, "rate.csv"), &format!("{echo}{}", io::rate_to_csv(&result)))?;
    write_text(&sibling(out, "timings.csv"), &io::sweep_timings_to_csv(&result))?;
    RunConfig::Sweep(p.clone()).save(&sibling(out, "config.toml"))?;

    for row in &result.rows {
        println!(
            "sparsity {}: {}/{} recovered ({} decoder failures)",
            row.sparsity, row.successes, row.trials, row.failures
        );
    }
    println!("wrote {}", out.display());
    Ok(())
}

pub fn exec_noise_table(p: &NoiseTableParams) -> Result<()> {
    let a = load_real_matrix_any(Path::new(&p.matrix))?;
    let cfg = NoiseTableConfig {
        sparsities: p.sparsities.clone(),
        noise_levels: p.noise_levels.clone(),
        trials: p.trials,
        master_seed: p.seed,
        epsilon: p.epsilon,
        values: parse_value_model(&p.values, p.value_lo, p.value_hi)?,
        random_signs: p.random_signs,
        normalize: p.normalize,
        noise_kind: parse_noise_kind(&p.noise_kind, p.burst_len)?,
        decoder: decoder_from(&p.algorithm, p.tolerance, p.max_iterations)?,
    };
    let result = run_noise_table(a.entries(), &cfg);

    let echo = format!("# matrix={} algorithm={}\n", p.matrix, p.algorithm);
    let out = Path::new(&p.output);
    write_text(out, &format!("{echo}{}", io::noise_table_to_csv(&result)))?;
    write_text(&sibling(out, "timings.csv"), &io::noise_table_timings_to_csv(&result))?;
    RunConfig::NoiseTable(p.clone()).save(&sibling(out, "config.toml"))?;

    for row in &result.rows {
        println!(
            "sparsity {} at noise {:e}: {}/{} recovered",
            row.sparsity, row.noise_l2, row.successes, row.trials
        );
    }
    println!("wrote {}", out.display());
    Ok(())
}

pub fn exec_spectrum(p: &SpectrumParams) -> Result<()> {
    let m = load_complex_matrix(Path::new(&p.matrix))?;
    let cfg = SpectrumConfig { t: p.t, trials: p.trials, master_seed: p.seed };
    let result = gram_spectrum_experiment(&m, &cfg).context("running the spectrum experiment")?;

    let echo = format!("# matrix={}\n", p.matrix);
    let out = Path::new(&p.output);
    write_text(out, &format!("{echo}{}", io::spectrum_to_csv(&result)))?;
    RunConfig::Spectrum(p.clone()).save(&sibling(out, "config.toml"))?;

    println!(
        "eigenvalues over {} trials: [{}, {}], max deviation from 1: {}",
        result.trials, result.min_eigenvalue, result.max_eigenvalue, result.max_deviation
    );
    println!("wrote {}", out.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// hadamard-check

pub fn exec_hadamard_check(p: &HadamardCheckParams) -> Result<()> {
    let h: HadamardMatrix = match (&p.file, p.order, &p.kind) {
        (Some(file), None, None) => {
            io::load_hadamard(Path::new(file)).with_context(|| format!("loading {file}"))?
        }
        (None, Some(order), Some(kind)) => match kind.as_str() {
            "fourier" => fourier(order),
            "real" => real_hadamard(order)
                .with_context(|| format!("constructing a real Hadamard matrix of order {order}"))?,
            other => bail!("unknown Hadamard family {other:?} (expected fourier or real)"),
        },
        _ => bail!("pass either --file, or --order together with --kind"),
    };

    let mut report = String::new();
    let r = h.order();
    writeln!(report, "order {r}, kind {}", h.kind().name()).ok();
    match h.validate() {
        Ok(()) => writeln!(report, "valid: unimodular entries, orthogonal rows").ok(),
        Err(e) => writeln!(report, "INVALID: {e}").ok(),
    };

    let u_max = p.u_max.unwrap_or_else(|| r.min(6));
    for u in 1..=u_max.min(r) {
        let support = min_support_combination(&h, u)
            .with_context(|| format!("scanning combinations of {u} columns"))?;
        let floor = r.div_ceil(u);
        writeln!(report, "u={u}: min combination support {support} (floor {floor})").ok();
    }
    if let Some(k) = p.optimal_k {
        let verdict = is_optimal(&h, k).context("checking optimality")?;
        writeln!(report, "optimal for k={k}: {verdict}").ok();
    }

    print!("{report}");
    if let Some(out) = &p.output {
        let out = Path::new(out);
        write_text(out, &report)?;
        RunConfig::HadamardCheck(p.clone()).save(&sibling(out, "config.toml"))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// run (replay a config)

pub fn exec_run(config: RunConfig, output_override: Option<String>) -> Result<()> {
    match config {
        RunConfig::Build(mut p) => {
            if let Some(out) = output_override {
                p.output = out;
            }
            exec_build(&p)
        }
        RunConfig::Certify(mut p) => {
            if output_override.is_some() {
                p.output = output_override;
            }
            exec_certify(&p)
        }
        RunConfig::Recover(mut p) => {
            if let Some(out) = output_override {
                p.output = out;
            }
            exec_recover(&p)
        }
        RunConfig::Sweep(mut p) => {
            if let Some(out) = output_override {
                p.output = out;
            }
            exec_sweep(&p)
        }
        RunConfig::NoiseTable(mut p) => {
            if let Some(out) = output_override {
                p.output = out;
            }
            exec_noise_table(&p)
        }
        RunConfig::Spectrum(mut p) => {
            if let Some(out) = output_override {
                p.output = out;
            }
            exec_spectrum(&p)
        }
        RunConfig::HadamardCheck(mut p) => {
            if output_override.is_some() {
                p.output = output_override;
            }
            exec_hadamard_check(&p)
        }
    }
}

// Re-exported for main's use when assembling default artifact names.
pub fn suggested_stem(p: &BuildParams) -> String {
    let mut stem = format!("{}{}", p.source, p.param);
    if p.remove_oval {
        stem.push_str("-oval");
    }
    if !p.remove_blocks.is_empty() {
        stem.push_str("-b");
        for (i, b) in p.remove_blocks.iter().enumerate() {
            if i > 0 {
                stem.push('-');
            }
            stem.push_str(&b.to_string());
        }
    }
    stem.push('-');
    stem.push_str(&p.hadamard);
    stem
}
