//! The library as an external consumer sees it: design to matrix to
//! decoders to files, all through the public API.

use std::path::Path;

use nalgebra::DVector;
use num_complex::Complex64;

use blocksense::construction::{
    build, realify, recovery_guarantee_bounds, uniform_hadamards, HadamardChoice,
};
use blocksense::design::steiner_triple_system;
use blocksense::experiments::{gen_sparse_signal, SignalSpec, ValueModel};
use blocksense::io;
use blocksense::recovery::{
    alg1_recover, basis_pursuit, omp, BasisPursuitOptions, OmpOptions, RecoveryStatus,
};

fn to_complex(x: &DVector<f64>) -> DVector<Complex64> {
    x.map(|v| Complex64::new(v, 0.0))
}

#[test]
fn a_triple_system_matrix_supports_all_three_decoders() {
    let design = steiner_triple_system(13).unwrap();
    let hadamards = uniform_hadamards(&design, HadamardChoice::Fourier).unwrap();
    let m = build(&design, hadamards).unwrap();
    assert_eq!((m.n(), m.cols()), (26, 78));
    assert_eq!(m.equireplication(), Some(6));

    let bounds = recovery_guarantee_bounds(&m);
    assert!(bounds.t_guaranteed >= 1);
    assert_eq!(bounds.t_impossible, Some(6), "two points pin the spark at 12");

    // One well-separated 2-sparse signal, decoded three ways.
    let spec = SignalSpec {
        len: m.cols(),
        sparsity: 2,
        values: ValueModel::Uniform { lo: 0.5, hi: 1.0 },
        random_signs: false,
        normalize: true,
    };
    let x = gen_sparse_signal(&spec, 99).unwrap();
    let y = m.apply(&to_complex(&x));

    let direct = alg1_recover(&m, &y, 2).unwrap();
    assert_eq!(direct.status, RecoveryStatus::Converged);
    assert!(direct.estimate.linf_distance(&x) < 1e-9);

    let real = realify(&m);
    let mut xr = DVector::zeros(real.cols());
    for i in 0..x.len() {
        xr[i] = x[i];
    }
    let yr = real.entries() * &xr;

    let greedy = omp(real.entries(), &yr, 2, &OmpOptions::default()).unwrap();
    assert!(greedy.estimate.l2_distance(&xr) < 1e-9);

    let l1 = basis_pursuit(real.entries(), &yr, &BasisPursuitOptions::default()).unwrap();
    assert!(l1.estimate.l2_distance(&xr) < 1e-7);
}

#[test]
fn artifacts_survive_a_disk_round_trip() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("pipeline-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();

    let design = steiner_triple_system(9).unwrap();
    let hadamards = uniform_hadamards(&design, HadamardChoice::Real).unwrap();
    let m = build(&design, hadamards).unwrap();

    let design_path = dir.join("s.design");
    io::save_design(&design_path, &design).unwrap();
    let design_back = io::load_design(&design_path).unwrap();
    assert_eq!(design_back.blocks(), design.blocks());

    let matrix_path = dir.join("s.matrix");
    io::save_matrix(&matrix_path, &m).unwrap();
    let m_back = io::load_matrix(&matrix_path).unwrap();
    assert_eq!(m_back.entries(), m.entries());

    // A second save of the loaded matrix reproduces the file exactly.
    let again = dir.join("s2.matrix");
    io::save_matrix(&again, &m_back).unwrap();
    assert_eq!(
        std::fs::read_to_string(&matrix_path).unwrap(),
        std::fs::read_to_string(&again).unwrap()
    );

    let real_path = dir.join("s.real.matrix");
    io::save_real_matrix(&real_path, &realify(&m)).unwrap();
    let real_back = io::load_real_matrix(&real_path).unwrap();
    assert_eq!((real_back.rows(), real_back.cols()), (24, 72));
}
