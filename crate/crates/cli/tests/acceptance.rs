//! The acceptance gate. Each test checks one promised property end to end
//! at its stated tolerance and prints a PASS line with the numbers it
//! measured, so a full run doubles as a regression archive.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! measurements; the plain pass/fail lines appear either way.

use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;

use nalgebra::DVector;
use num_complex::Complex64;

use blocksense::construction::{
    arc_nullvector, brute_spark, build, coherence, find_arc, realify, spark_witness_two_points,
    split_nonrecoverable, uniform_hadamards, HadamardChoice, RealSensingMatrix, SensingMatrix,
    SparkBound,
};
use blocksense::design::{
    find_conic_oval, projective_plane, remove_blocks_with_points, remove_points,
    steiner_triple_system, Design, PointSet,
};
use blocksense::experiments::{
    gen_sparse_signal, gram_spectrum_experiment, run_noise_table, run_sweep, NoiseKind,
    NoiseTableConfig, SignalSpec, SpectrumConfig, SweepConfig, SweepDecoder, ValueModel,
};
use blocksense::hadamard::{fourier, min_support_combination};
use blocksense::recovery::{alg1_recover, initial_estimate, BasisPursuitOptions, OmpOptions};

// ---------------------------------------------------------------------------
// shared fixtures, built once

fn assemble(design: Design, choice: HadamardChoice) -> SensingMatrix {
    let hadamards = uniform_hadamards(&design, choice).expect("fixture Hadamards");
    build(&design, hadamards).expect("fixture matrix")
}

fn plane_minus_oval(q: u32) -> SensingMatrix {
    let plane = projective_plane(q).expect("plane");
    let oval = find_conic_oval(&plane, q).expect("oval");
    let removal = remove_points(&plane, &oval).expect("removal");
    assemble(removal.design, HadamardChoice::Fourier)
}

/// 57 x 392, replication 8 at every point.
fn order7_oval() -> &'static SensingMatrix {
    static M: OnceLock<SensingMatrix> = OnceLock::new();
    M.get_or_init(|| plane_minus_oval(7))
}

/// 57 x 456, the full plane of order 7.
fn order7_full() -> &'static SensingMatrix {
    static M: OnceLock<SensingMatrix> = OnceLock::new();
    M.get_or_init(|| assemble(projective_plane(7).expect("plane"), HadamardChoice::Fourier))
}

/// 131 x 1320: the plane of order 11 minus two blocks and their points.
fn order11_minus_two_blocks() -> &'static SensingMatrix {
    static M: OnceLock<SensingMatrix> = OnceLock::new();
    M.get_or_init(|| {
        let plane = projective_plane(11).expect("plane");
        let removal = remove_blocks_with_points(&plane, &[0, 1]).expect("removal");
        assemble(removal.design, HadamardChoice::Fourier)
    })
}

/// 133 x 1452: the plane of order 11 minus a conic oval.
fn order11_oval() -> &'static SensingMatrix {
    static M: OnceLock<SensingMatrix> = OnceLock::new();
    M.get_or_init(|| plane_minus_oval(11))
}

/// 100 x 300 with real Hadamard blocks, replication 12.
fn triples25_real() -> &'static SensingMatrix {
    static M: OnceLock<SensingMatrix> = OnceLock::new();
    M.get_or_init(|| assemble(steiner_triple_system(25).expect("triples"), HadamardChoice::Real))
}

/// 7 x 21, the smallest plane, small enough for exhaustive spark search.
fn fano() -> &'static SensingMatrix {
    static M: OnceLock<SensingMatrix> = OnceLock::new();
    M.get_or_init(|| assemble(projective_plane(2).expect("plane"), HadamardChoice::Fourier))
}

fn order7_oval_real() -> &'static RealSensingMatrix {
    static M: OnceLock<RealSensingMatrix> = OnceLock::new();
    M.get_or_init(|| realify(order7_oval()))
}

fn order11_oval_real() -> &'static RealSensingMatrix {
    static M: OnceLock<RealSensingMatrix> = OnceLock::new();
    M.get_or_init(|| realify(order11_oval()))
}

fn corpus() -> Vec<(&'static str, &'static SensingMatrix)> {
    vec![
        ("fano", fano()),
        ("order7-oval", order7_oval()),
        ("order7-full", order7_full()),
        ("order11-minus-blocks", order11_minus_two_blocks()),
        ("order11-oval", order11_oval()),
        ("triples25-real", triples25_real()),
    ]
}

fn to_complex(x: &DVector<f64>) -> DVector<Complex64> {
    x.map(|v| Complex64::new(v, 0.0))
}

fn support_size(v: &DVector<Complex64>) -> usize {
    v.iter().filter(|c| c.norm() > 1e-12).count()
}

fn image_peak(m: &SensingMatrix, v: &DVector<Complex64>) -> f64 {
    m.apply(v).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// 1. the published recipes give exactly the advertised shapes

#[test]
fn criterion_01_recipe_shapes() {
    struct Case {
        name: &'static str,
        m: &'static SensingMatrix,
        complex_shape: (usize, usize),
        real_shape: (usize, usize),
    }
    let cases = [
        Case { name: "order7-oval", m: order7_oval(), complex_shape: (57, 392), real_shape: (114, 784) },
        Case { name: "order7-full", m: order7_full(), complex_shape: (57, 456), real_shape: (114, 912) },
        Case {
            name: "order11-minus-blocks",
            m: order11_minus_two_blocks(),
            complex_shape: (131, 1320),
            real_shape: (262, 2640),
        },
        Case { name: "order11-oval", m: order11_oval(), complex_shape: (133, 1452), real_shape: (266, 2904) },
        Case { name: "triples25-real", m: triples25_real(), complex_shape: (100, 300), real_shape: (200, 600) },
    ];
    for Case { name, m, complex_shape, real_shape } in cases {
        assert_eq!((m.n(), m.cols()), complex_shape, "{name}: complex shape");
        let r = realify(m);
        assert_eq!((r.rows(), r.cols()), real_shape, "{name}: realified shape");
    }
    println!("criterion 01 PASS: all five recipes have their advertised shapes");
}

// ---------------------------------------------------------------------------
// 2. exhaustive spark on the smallest plane

#[test]
fn criterion_02_smallest_plane_spark_is_six() {
    let m = fano();
    assert_eq!(m.equireplication(), Some(3));

    // Upper bound from an explicit nullvector on two points (sparsity 6).
    let witness = spark_witness_two_points(m, 0, 1).expect("witness");
    assert_eq!(support_size(&witness), 6);
    assert!(image_peak(m, &witness) < 1e-9);

    // Matching lower bound by exhausting all smaller column subsets, which
    // also rules out any nullvector of sparsity 3 or less.
    let bound = brute_spark(m, 6).expect("search within budget");
    assert_eq!(bound, SparkBound::Exact(6));

    println!("criterion 02 PASS: exhaustive search puts the spark at exactly 6");
}

// ---------------------------------------------------------------------------
// 3. witness vectors certify their stated sparsities everywhere

#[test]
fn criterion_03_witness_certification() {
    let mut arcs_checked = 0;
    for (name, m) in corpus() {
        let (p1, p2) = (0, 1);
        let (r1, r2) = (m.replication(p1), m.replication(p2));

        let witness = spark_witness_two_points(m, p1, p2).expect("two-point witness");
        let peak = image_peak(m, &witness);
        assert!(peak < 1e-9, "{name}: witness image peak {peak}");
        assert_eq!(support_size(&witness), r1 + r2, "{name}: witness sparsity");

        // The witness splits into two signals the matrix cannot tell apart.
        let (m1, m2) = split_nonrecoverable(m, &witness).expect("split");
        assert!(support_size(&m1) > 0 && support_size(&m2) > 0, "{name}: split halves");
        let gap = (m.apply(&m1) - m.apply(&m2)).iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(gap < 1e-9, "{name}: image gap {gap}");

        // Three points in general position tighten the bound to 3r/2 when
        // the blocks are real and the replication allows the half split.
        let r = m.replication(0);
        let all_real = (0..m.point_count()).all(|p| m.hadamard(p).is_real());
        if all_real && r % 4 == 0 {
            let arc = find_arc(m).expect("an arc should exist here");
            let set = PointSet::new(arc.to_vec(), m.point_count()).expect("point set");
            let v = arc_nullvector(m, &set).expect("arc nullvector");
            let peak = image_peak(m, &v);
            assert!(peak < 1e-9, "{name}: arc image peak {peak}");
            assert_eq!(support_size(&v), 3 * r / 2, "{name}: arc sparsity");
            arcs_checked += 1;
        }
    }
    assert!(arcs_checked >= 1, "at least one matrix must exercise the arc witness");
    println!(
        "criterion 03 PASS: witnesses certified on all {} matrices ({arcs_checked} with arcs)",
        corpus().len()
    );
}

// ---------------------------------------------------------------------------
// 4. the one-step estimate is never off by more than l1/r per coordinate

#[test]
fn criterion_04_initial_estimate_error_bound() {
    let m = order11_minus_two_blocks();
    let r = m.equireplication().expect("equireplicate") as f64;
    let spec = SignalSpec {
        len: m.cols(),
        sparsity: 12,
        values: ValueModel::Uniform { lo: 0.0, hi: 1.0 },
        random_signs: false,
        normalize: true,
    };

    let mut worst_ratio = 0.0f64;
    for trial in 0..1000u64 {
        let x = gen_sparse_signal(&spec, 0x4_0000 + trial).expect("signal");
        let l1: f64 = x.iter().map(|v| v.abs()).sum();
        let bound = l1 / r;
        let estimate = initial_estimate(m, &m.apply(&to_complex(&x)));
        for i in 0..x.len() {
            let err = (estimate[i] - Complex64::new(x[i], 0.0)).norm();
            // The bound is tight: a coordinate whose pair phase with every
            // support column is the same unit sits exactly on it (seed
            // 0x4_0000+879 produces one), so give rounding a few ulps.
            assert!(
                err <= bound * (1.0 + 1e-12),
                "trial {trial}, coordinate {i}: error {err} exceeds {bound}"
            );
            worst_ratio = worst_ratio.max(err / bound);
        }
    }
    println!(
        "criterion 04 PASS: 1000 signals, 0 violations, worst error at {:.15} of the bound",
        worst_ratio
    );
}

// ---------------------------------------------------------------------------
// 5. signals with all nonzeros above 2*l1/r are recovered exactly

#[test]
fn criterion_05_large_entry_recovery() {
    let m = order7_oval();
    let r = m.equireplication().expect("equireplicate");
    assert_eq!(r, 8);

    let mut failures = 0;
    for trial in 0..200u64 {
        // Cycle the sparsity. The floor 2t/r on the smallest nonzero keeps
        // every generated signal inside the guarantee's magnitude condition
        // (t above r/2 would make that floor exceed the cap, so the
        // condition itself restricts t to at most r/2).
        let t = 1 + (trial as usize % (r / 2));
        let spec = SignalSpec {
            len: m.cols(),
            sparsity: t,
            values: ValueModel::Uniform { lo: 2.0 * t as f64 / r as f64, hi: 1.0 },
            random_signs: false,
            normalize: true,
        };
        let x = gen_sparse_signal(&spec, 0x5_0000 + trial).expect("signal");

        // The guarantee's precondition, checked per signal, not assumed.
        let l1: f64 = x.iter().map(|v| v.abs()).sum();
        let min_nonzero =
            x.iter().filter(|v| **v != 0.0).map(|v| v.abs()).fold(f64::INFINITY, f64::min);
        assert!(
            min_nonzero >= 2.0 * l1 / r as f64 - 1e-12,
            "trial {trial}: generated signal misses the magnitude condition"
        );

        let result = alg1_recover(m, &m.apply(&to_complex(&x)), t).expect("decode");
        if result.estimate.linf_distance(&x) >= 1e-9 {
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "{failures} of 200 signals missed");
    println!("criterion 05 PASS: 200/200 signals recovered exactly");
}

// ---------------------------------------------------------------------------
// 6. kernel supports of Fourier blocks obey the floor law

#[test]
fn criterion_06_fourier_kernel_support_floor() {
    for r in 2..=8usize {
        let h = fourier(r);
        let prime = matches!(r, 2 | 3 | 5 | 7);
        for u in 1..=r {
            let support = min_support_combination(&h, u).expect("search");
            let floor = r.div_ceil(u);
            assert!(support >= floor, "order {r}, u={u}: support {support} below {floor}");
            if r % u == 0 {
                assert_eq!(support, floor, "order {r}, u={u}: divisor case must be tight");
            }
            if prime {
                assert_eq!(support, r - u + 1, "order {r}, u={u}: prime case");
            }
        }
    }
    println!("criterion 06 PASS: support floors hold for Fourier orders 2 through 8");
}

// ---------------------------------------------------------------------------
// 7. the noise grid: solid at sparsity 30, collapsing at 60

#[test]
fn criterion_07_noise_grid_success_counts() {
    let a = order11_oval_real();
    let cfg = NoiseTableConfig {
        sparsities: vec![30, 60],
        noise_levels: vec![0.0, 1e-12, 1e-10, 1e-9, 2e-9],
        trials: 100,
        master_seed: 0x7_0000,
        epsilon: 1e-8,
        values: ValueModel::Uniform { lo: 0.0, hi: 1.0 },
        random_signs: false,
        normalize: true,
        noise_kind: NoiseKind::Uniform,
        decoder: SweepDecoder::BasisPursuit(BasisPursuitOptions::default()),
    };
    let table = run_noise_table(a.entries(), &cfg);

    let successes = |sparsity: usize, level: f64| {
        table
            .rows
            .iter()
            .find(|row| row.sparsity == sparsity && row.noise_l2 == level)
            .map(|row| row.successes)
            .expect("grid cell")
    };

    for &t in &cfg.sparsities {
        let counts: Vec<usize> = cfg.noise_levels.iter().map(|&nl| successes(t, nl)).collect();
        println!("criterion 07 data: sparsity {t}: {counts:?} successes per level");
        for pair in counts.windows(2) {
            assert!(
                pair[1] <= pair[0] + 5,
                "sparsity {t}: success counts rose with noise beyond slack 5: {counts:?}"
            );
        }
    }
    assert_eq!(successes(30, 0.0), 100, "noiseless sparsity 30 must always recover");
    assert!(
        successes(60, 2e-9) <= 10,
        "sparsity 60 under the largest noise must mostly fail, got {}",
        successes(60, 2e-9)
    );
    println!("criterion 07 PASS: grid counts match the expected profile");
}

// ---------------------------------------------------------------------------
// 8. greedy pursuit: reliable through sparsity 15, dead at 50

#[test]
fn criterion_08_pursuit_success_profile() {
    let a = order7_oval_real();
    let cfg = SweepConfig::new(
        vec![1, 5, 10, 15, 50],
        200,
        0x8_0000,
        SweepDecoder::Omp(OmpOptions::default()),
    );
    let sweep = run_sweep(a.entries(), &cfg);

    let mut profile = Vec::new();
    for row in &sweep.rows {
        profile.push((row.sparsity, row.successes));
        if row.sparsity <= 15 {
            assert!(
                row.successes * 100 >= 95 * row.trials,
                "sparsity {}: {}/{} is below 95%",
                row.sparsity,
                row.successes,
                row.trials
            );
        }
        if row.sparsity == 50 {
            assert!(
                row.successes * 100 <= 10 * row.trials,
                "sparsity 50: {}/{} is above 10%",
                row.successes,
                row.trials
            );
        }
    }
    println!("criterion 08 PASS: pursuit profile (sparsity, successes/200) = {profile:?}");
}

// ---------------------------------------------------------------------------
// 9. every column inner product matches the design's intersection pattern

#[test]
fn criterion_09_gram_structure_law() {
    for (name, m) in corpus() {
        let n = m.n();
        let cols = m.cols();

        // Row incidence per point as bitmasks, for an oracle on how many
        // blocks two points share that is independent of the matrix data.
        let words = n.div_ceil(64);
        let mut incidence = vec![vec![0u64; words]; m.point_count()];
        for (p, mask) in incidence.iter_mut().enumerate() {
            for &row in m.point_rows(p) {
                mask[row / 64] |= 1 << (row % 64);
            }
        }
        let shared = |a: usize, b: usize| -> usize {
            incidence[a]
                .iter()
                .zip(&incidence[b])
                .map(|(x, y)| (x & y).count_ones() as usize)
                .sum()
        };

        let gram = m.entries().adjoint() * m.entries();
        let mut worst = 0.0f64;
        for i in 0..cols {
            let pi = m.point_of_column(i);
            for j in i..cols {
                let pj = m.point_of_column(j);
                let expected = if i == j {
                    1.0
                } else if pi == pj {
                    0.0
                } else {
                    match shared(pi, pj) {
                        0 => 0.0,
                        1 => 1.0 / ((m.replication(pi) * m.replication(pj)) as f64).sqrt(),
                        s => panic!("{name}: points {pi},{pj} share {s} blocks"),
                    }
                };
                let dev = (gram[(i, j)].norm() - expected).abs();
                worst = worst.max(dev);
            }
        }
        assert!(worst < 1e-9, "{name}: worst Gram deviation {worst}");

        // Equireplicate instances must land exactly on coherence 1/r.
        if let Some(r) = m.equireplication() {
            let c = coherence(m);
            assert!(
                (c - 1.0 / r as f64).abs() < 1e-9,
                "{name}: coherence {c} is not 1/{r}"
            );
        }
    }
    println!("criterion 09 PASS: Gram law holds on all {} matrices", corpus().len());
}

// ---------------------------------------------------------------------------
// 10. random 24-column subsets stay well conditioned

#[test]
fn criterion_10_subset_gram_spectrum() {
    let m = order11_minus_two_blocks();
    let cfg = SpectrumConfig { t: 12, trials: 500, master_seed: 0xA_0000 };
    let result = gram_spectrum_experiment(m, &cfg).expect("spectrum");

    assert_eq!(result.rows.len(), 500);
    assert!(
        result.min_eigenvalue > 0.0 && result.max_eigenvalue < 2.0,
        "eigenvalues [{}, {}] escape (0, 2)",
        result.min_eigenvalue,
        result.max_eigenvalue
    );
    println!(
        "criterion 10 PASS: 500 subset spectra inside (0, 2]: min {:.6}, max {:.6}, deviation {:.6}",
        result.min_eigenvalue, result.max_eigenvalue, result.max_deviation
    );
}

// ---------------------------------------------------------------------------
// 11. every experiment command replays byte for byte from its config

#[test]
fn criterion_11_config_replay_determinism() {
    let bin = env!("CARGO_BIN_EXE_blocksense");
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-replay");
    std::fs::create_dir_all(&dir).unwrap();
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().expect("spawn");
        assert!(
            out.status.success(),
            "{args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    };
    let read = |p: &Path| std::fs::read_to_string(p).unwrap();

    run(&["build", "sts", "9", "--realify", "-o", dir.to_str().unwrap(), "--name", "m"]);
    let complex = dir.join("m.matrix");
    let real = dir.join("m.real.matrix");

    let cases: Vec<(&str, Vec<String>)> = vec![
        (
            "sweep",
            vec![
                "sweep".into(),
                "--matrix".into(),
                real.to_str().unwrap().into(),
                "--algorithm".into(),
                "omp".into(),
                "--sparsities".into(),
                "1,2,3".into(),
                "--trials".into(),
                "25".into(),
                "--seed".into(),
                "11".into(),
            ],
        ),
        (
            "noise-table",
            vec![
                "noise-table".into(),
                "--matrix".into(),
                real.to_str().unwrap().into(),
                "--algorithm".into(),
                "bp".into(),
                "--sparsities".into(),
                "1,2".into(),
                "--noise-levels".into(),
                "0,1e-10".into(),
                "--trials".into(),
                "10".into(),
                "--seed".into(),
                "12".into(),
            ],
        ),
        (
            "spectrum",
            vec![
                "spectrum".into(),
                "--matrix".into(),
                complex.to_str().unwrap().into(),
                "--t".into(),
                "2".into(),
                "--trials".into(),
                "40".into(),
                "--seed".into(),
                "13".into(),
            ],
        ),
    ];

    for (name, base) in cases {
        let first = dir.join(format!("{name}.csv"));
        let replayed = dir.join(format!("{name}.replay.csv"));
        let mut args: Vec<&str> = base.iter().map(String::as_str).collect();
        args.push("-o");
        args.push(first.to_str().unwrap());
        run(&args);
        run(&[
            "run",
            "--config",
            dir.join(format!("{name}.config.toml")).to_str().unwrap(),
            "--output",
            replayed.to_str().unwrap(),
        ]);
        assert_eq!(read(&first), read(&replayed), "{name}: replay must be byte-identical");
    }
    println!("criterion 11 PASS: sweep, noise-table, and spectrum replay byte for byte");
}
