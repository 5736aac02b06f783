//! Sparse recovery: greedy matching pursuit, an l1 decoder on top of the
//! interior point solver, and a decoder that exploits the block structure
//! of the matrices built in [`crate::construction`].
//!
//! All decoders return a [`RecoveryResult`] carrying the estimate, the
//! achieved measurement residual, and a status instead of panicking on
//! non-convergence, so experiment sweeps can count failures.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::time::Instant;
use thiserror::Error;

use crate::construction::SensingMatrix;
use crate::hadamard::next_combination;
use crate::lp::{solve as lp_solve, LpOptions, LpProblem, LpStatus};

#[derive(Debug, Error)]
pub enum RecoveryError {
    #[error("measurement length {got} does not match the matrix row count {rows}")]
    DimensionMismatch { rows: usize, got: usize },
    #[error("requested sparsity {requested} exceeds the usable maximum {max}")]
    SparsityTooLarge { requested: usize, max: usize },
}

/// Recovered coefficients, in the arithmetic the decoder ran in.
#[derive(Debug, Clone, PartialEq)]
pub enum Estimate {
    Real(DVector<f64>),
    Complex(DVector<Complex64>),
}

impl Estimate {
    pub fn len(&self) -> usize {
        match self {
            Estimate::Real(v) => v.len(),
            Estimate::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_real(&self) -> Option<&DVector<f64>> {
        match self {
            Estimate::Real(v) => Some(v),
            Estimate::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> Option<&DVector<Complex64>> {
        match self {
            Estimate::Complex(v) => Some(v),
            Estimate::Real(_) => None,
        }
    }

    /// l2 distance to a real reference vector. Complex estimates compare
    /// against the reference placed on the real axis.
    pub fn l2_distance(&self, reference: &DVector<f64>) -> f64 {
        match self {
            Estimate::Real(v) => (v - reference).norm(),
            Estimate::Complex(v) => (0..v.len())
                .map(|i| (v[i] - Complex64::new(reference[i], 0.0)).norm_sqr())
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Largest entry-wise deviation from a real reference vector.
    pub fn linf_distance(&self, reference: &DVector<f64>) -> f64 {
        match self {
            Estimate::Real(v) => {
                (0..v.len()).map(|i| (v[i] - reference[i]).abs()).fold(0.0, f64::max)
            }
            Estimate::Complex(v) => (0..v.len())
                .map(|i| (v[i] - Complex64::new(reference[i], 0.0)).norm())
                .fold(0.0, f64::max),
        }
    }
}

/// How a decoding run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecoveryStatus {
    /// The request was satisfied: residual floor hit, sparsity budget
    /// consumed, or the optimizer reached its tolerance.
    Converged,
    /// Stopped by an iteration cap before the request was met.
    MaxIterations,
    /// A linear system on the way had no usable solution.
    SingularSystem,
    /// The measurements admit no consistent coefficient vector.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    pub estimate: Estimate,
    pub iterations: usize,
    /// l2 norm of (matrix * estimate - measurements).
    pub residual_norm: f64,
    pub status: RecoveryStatus,
    pub elapsed_seconds: f64,
    /// True when correlations were used without rescaling because the
    /// columns were taken to have unit norm. Decoders that never rescale
    /// record true.
    pub columns_normalized: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct OmpOptions {
    /// Cap on selected atoms; defaults to the number of matrix rows.
    pub max_iterations: Option<usize>,
    /// Stop once the residual drops below this fraction of ||y||.
    pub residual_tolerance: f64,
    /// Skip per-column norm correction when selecting atoms. Leave true
    /// for matrices already carrying unit columns.
    pub columns_normalized: bool,
}

impl Default for OmpOptions {
    fn default() -> Self {
        OmpOptions { max_iterations: None, residual_tolerance: 1e-12, columns_normalized: true }
    }
}

/// Orthogonal matching pursuit with an incrementally grown QR factor of the
/// selected columns. Correlation ties break toward the lowest column index.
pub fn omp(
    a: &DMatrix<f64>,
    y: &DVector<f64>,
    sparsity: usize,
    opts: &OmpOptions,
) -> Result<RecoveryResult, RecoveryError> {
    let start = Instant::now();
    if y.len() != a.nrows() {
        return Err(RecoveryError::DimensionMismatch { rows: a.nrows(), got: y.len() });
    }
    if sparsity > a.ncols() {
        return Err(RecoveryError::SparsityTooLarge { requested: sparsity, max: a.ncols() });
    }
    let budget = sparsity.min(opts.max_iterations.unwrap_or(a.nrows()));
    let ynorm = y.norm();
    let stop = opts.residual_tolerance * ynorm;

    let mut q: Vec<DVector<f64>> = Vec::with_capacity(budget);
    let mut r_mat = DMatrix::<f64>::zeros(budget.max(1), budget.max(1));
    let mut qty: Vec<f64> = Vec::with_capacity(budget);
    let mut residual = y.clone();
    let mut selected: Vec<usize> = Vec::with_capacity(budget);
    let mut in_support = vec![false; a.ncols()];

    while selected.len() < budget && residual.norm() > stop {
        let mut best_j = usize::MAX;
        let mut best = 0.0f64;
        for (j, &used) in in_support.iter().enumerate() {
            if used {
                continue;
            }
            let mut corr = a.column(j).dot(&residual).abs();
            if !opts.columns_normalized {
                let nrm = a.column(j).norm();
                corr = if nrm > 0.0 { corr / nrm } else { 0.0 };
            }
            if corr > best {
                best = corr;
                best_j = j;
            }
        }
        if best_j == usize::MAX || best <= 1e-14 * ynorm.max(1.0) {
            break;
        }
        // Orthogonalize the new atom against the current basis (modified
        // Gram-Schmidt), then peel its component off the residual.
        let k = selected.len();
        let mut atom = a.column(best_j).clone_owned();
        for (i, qi) in q.iter().enumerate() {
            let coef = qi.dot(&atom);
            r_mat[(i, k)] = coef;
            atom.axpy(-coef, qi, 1.0);
        }
        let rho = atom.norm();
        if rho <= 1e-12 * a.column(best_j).norm().max(1.0) {
            break;
        }
        r_mat[(k, k)] = rho;
        atom /= rho;
        let coef = atom.dot(&residual);
        residual.axpy(-coef, &atom, 1.0);
        qty.push(coef);
        q.push(atom);
        in_support[best_j] = true;
        selected.push(best_j);
    }

    // Back substitution: R z = Q'y over the selected atoms.
    let k = selected.len();
    let mut z = vec![0.0f64; k];
    for i in (0..k).rev() {
        let mut acc = qty[i];
        for j in (i + 1)..k {
            acc -= r_mat[(i, j)] * z[j];
        }
        z[i] = acc / r_mat[(i, i)];
    }
    let mut estimate = DVector::zeros(a.ncols());
    for (pos, &j) in selected.iter().enumerate() {
        estimate[j] = z[pos];
    }
    let residual_norm = residual.norm();
    let status = if residual_norm <= stop || selected.len() == sparsity {
        RecoveryStatus::Converged
    } else {
        RecoveryStatus::MaxIterations
    };
    Ok(RecoveryResult {
        estimate: Estimate::Real(estimate),
        iterations: k,
        residual_norm,
        status,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        columns_normalized: opts.columns_normalized,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct BasisPursuitOptions {
    /// Relative optimizer tolerance.
    pub tol: f64,
    pub max_iterations: usize,
    /// Refit the detected support by least squares afterwards, keeping the
    /// refit only when it worsens neither feasibility nor the l1 objective.
    pub polish: bool,
}

impl Default for BasisPursuitOptions {
    fn default() -> Self {
        BasisPursuitOptions { tol: 1e-9, max_iterations: 100, polish: true }
    }
}

/// Minimum-l1 decoding: min ||x||_1 subject to A x = y, via the split
/// x = x+ - x- and the interior point solver.
pub fn basis_pursuit(
    a: &DMatrix<f64>,
    y: &DVector<f64>,
    opts: &BasisPursuitOptions,
) -> Result<RecoveryResult, RecoveryError> {
    let start = Instant::now();
    if y.len() != a.nrows() {
        return Err(RecoveryError::DimensionMismatch { rows: a.nrows(), got: y.len() });
    }
    let n = a.ncols();
    let mut cols: Vec<Vec<(usize, f64)>> = Vec::with_capacity(2 * n);
    for j in 0..n {
        let col: Vec<(usize, f64)> =
            (0..a.nrows()).filter(|&i| a[(i, j)] != 0.0).map(|i| (i, a[(i, j)])).collect();
        cols.push(col);
    }
    for j in 0..n {
        cols.push(cols[j].iter().map(|&(i, v)| (i, -v)).collect());
    }
    let problem = LpProblem {
        nrows: a.nrows(),
        cols,
        b: y.clone(),
        c: DVector::from_element(2 * n, 1.0),
    };
    let sol = lp_solve(&problem, &LpOptions { tol: opts.tol, max_iters: opts.max_iterations });
    let mut x = DVector::from_fn(n, |i, _| sol.x[i] - sol.x[n + i]);

    let status = match sol.status {
        LpStatus::Optimal => RecoveryStatus::Converged,
        _ if sol.primal_residual > 1e-4 => RecoveryStatus::Infeasible,
        LpStatus::IterationLimit => RecoveryStatus::MaxIterations,
        LpStatus::Numerical => RecoveryStatus::SingularSystem,
    };

    let mut residual_norm = (a * &x - y).norm();
    if opts.polish && status == RecoveryStatus::Converged {
        if let Some(polished) = polish_support(a, y, &x) {
            let new_residual = (a * &polished - y).norm();
            let l1_old: f64 = x.iter().map(|v| v.abs()).sum();
            let l1_new: f64 = polished.iter().map(|v| v.abs()).sum();
            if new_residual <= residual_norm + 1e-12 * (1.0 + y.norm())
                && l1_new <= l1_old + 1e-9 * (1.0 + l1_old)
            {
                x = polished;
                residual_norm = new_residual;
            }
        }
    }

    Ok(RecoveryResult {
        estimate: Estimate::Real(x),
        iterations: sol.iterations,
        residual_norm,
        status,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        columns_normalized: true,
    })
}

/// Least-squares refit on the support suggested by an approximate
/// minimizer. Returns None when the support is empty or the refit fails.
fn polish_support(a: &DMatrix<f64>, y: &DVector<f64>, x: &DVector<f64>) -> Option<DVector<f64>> {
    let peak = x.amax();
    if peak <= 0.0 {
        return None;
    }
    let mut support: Vec<usize> =
        (0..x.len()).filter(|&i| x[i].abs() > 1e-7 * peak).collect();
    if support.is_empty() || support.len() > a.nrows() {
        // Keep the refit overdetermined; a support wider than the row
        // count means the optimizer has not localized anything yet.
        support.sort_by(|&i, &j| x[j].abs().total_cmp(&x[i].abs()).then(i.cmp(&j)));
        support.truncate(a.nrows());
        support.sort_unstable();
        if support.is_empty() {
            return None;
        }
    }
    let sub = a.select_columns(support.iter());
    let svd = sub.svd(true, true);
    let sv_max = svd.singular_values.iter().copied().fold(0.0f64, f64::max);
    if sv_max <= 0.0 {
        return None;
    }
    let coeffs = svd.solve(y, 1e-12 * sv_max).ok()?;
    let mut out = DVector::zeros(x.len());
    for (pos, &j) in support.iter().enumerate() {
        out[j] = coeffs[pos];
    }
    Some(out)
}

/// Adjoint image of the measurements, computed point by point from the
/// Hadamard blocks: entry l of point x reads (1/sqrt(r_x)) sum over the
/// incident rows of conj(H_x[k, l]) y[row]. Correlates every column with
/// the measurements without touching the dense entry array.
pub fn initial_estimate(m: &SensingMatrix, y: &DVector<Complex64>) -> DVector<Complex64> {
    assert_eq!(y.len(), m.n(), "measurement length must match the row count");
    let mut out = DVector::from_element(m.cols(), Complex64::ZERO);
    for p in 0..m.point_count() {
        let cols = m.point_cols(p);
        let r = cols.len();
        let scale = Complex64::new(1.0 / (r as f64).sqrt(), 0.0);
        let h = m.hadamard(p).entries();
        for (pos, &row) in m.point_rows(p).iter().enumerate() {
            let k = m.had_rows(p)[pos];
            let yv = y[row];
            for l in 0..r {
                out[cols.start + l] += h[(k, l)].conj() * yv * scale;
            }
        }
    }
    out
}

/// Decoder tailored to the block structure: picks the columns with the
/// largest adjoint correlations, then recovers each point's coefficients
/// exactly from rows no other selected point touches.
///
/// `s_size` is the number of columns kept from the initial estimate; 0
/// selects the smallest replication number. Values above the smallest
/// replication are rejected, since they could leave a point with fewer
/// clean rows than unknowns.
pub fn alg1_recover(
    m: &SensingMatrix,
    y: &DVector<Complex64>,
    s_size: usize,
) -> Result<RecoveryResult, RecoveryError> {
    const MAX_ROW_COMBINATIONS: usize = 500;
    const MAX_CONDITION: f64 = 1e12;
    let start = Instant::now();
    if y.len() != m.n() {
        return Err(RecoveryError::DimensionMismatch { rows: m.n(), got: y.len() });
    }
    let r_min =
        (0..m.point_count()).map(|p| m.replication(p)).min().expect("matrix has points");
    let s = if s_size == 0 { r_min } else { s_size };
    if s > r_min {
        return Err(RecoveryError::SparsityTooLarge { requested: s_size, max: r_min });
    }

    let mhat = initial_estimate(m, y);
    let mut order: Vec<usize> = (0..m.cols()).collect();
    order.sort_by(|&a, &b| mhat[b].norm().total_cmp(&mhat[a].norm()).then(a.cmp(&b)));
    let mut kept = order[..s].to_vec();
    kept.sort_unstable();

    // Group the kept columns by owning point.
    let mut by_point: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &col in &kept {
        let p = m.point_of_column(col);
        by_point.entry(p).or_default().push(col - m.point_cols(p).start);
    }
    let active: Vec<usize> = by_point.keys().copied().collect();

    let mut estimate = DVector::from_element(m.cols(), Complex64::ZERO);
    let mut all_solved = true;
    for (&p, locals) in &by_point {
        let cols = m.point_cols(p);
        let r = cols.len();
        let scale = Complex64::new(1.0 / (r as f64).sqrt(), 0.0);
        let h = m.hadamard(p).entries();
        // A row of p is contaminated when another active point also has
        // support there; with lambda = 1 that is at most one row per other
        // point.
        let rows = m.point_rows(p);
        let contaminated: Vec<bool> = rows
            .iter()
            .map(|&row| {
                active.iter().any(|&q| q != p && m.point_rows(q).binary_search(&row).is_ok())
            })
            .collect();
        let clean: Vec<usize> = (0..rows.len()).filter(|&i| !contaminated[i]).collect();
        let need = locals.len();
        if clean.len() < need {
            all_solved = false;
            continue;
        }
        let mut combo: Vec<usize> = (0..need).collect();
        let mut solved = false;
        for _ in 0..MAX_ROW_COMBINATIONS {
            let sys = DMatrix::from_fn(need, need, |a, b| {
                let k = m.had_rows(p)[clean[combo[a]]];
                h[(k, locals[b])] * scale
            });
            let svs = sys.clone().singular_values();
            let sv_max = svs.iter().copied().fold(0.0f64, f64::max);
            let sv_min = svs.iter().copied().fold(f64::INFINITY, f64::min);
            if sv_min > 0.0 && sv_max / sv_min <= MAX_CONDITION {
                let rhs = DVector::from_fn(need, |a, _| y[rows[clean[combo[a]]]]);
                if let Some(sol) = sys.lu().solve(&rhs) {
                    for (pos, &l) in locals.iter().enumerate() {
                        estimate[cols.start + l] = sol[pos];
                    }
                    solved = true;
                    break;
                }
            }
            if !next_combination(&mut combo, clean.len()) {
                break;
            }
        }
        if !solved {
            all_solved = false;
        }
    }

    let residual_norm = (m.apply_via_metadata(&estimate) - y).norm();
    Ok(RecoveryResult {
        estimate: Estimate::Complex(estimate),
        iterations: active.len(),
        residual_norm,
        status: if all_solved { RecoveryStatus::Converged } else { RecoveryStatus::SingularSystem },
        elapsed_seconds: start.elapsed().as_secs_f64(),
        columns_normalized: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build, realify, uniform_hadamards, HadamardChoice};
    use crate::design::{projective_plane, steiner_triple_system};

    fn fano_real() -> DMatrix<f64> {
        let d = projective_plane(2).unwrap();
        let hs = uniform_hadamards(&d, HadamardChoice::Fourier).unwrap();
        realify(&build(&d, hs).unwrap()).entries().clone()
    }

    fn sts9() -> SensingMatrix {
        let d = steiner_triple_system(9).unwrap();
        let hs = uniform_hadamards(&d, HadamardChoice::Fourier).unwrap();
        build(&d, hs).unwrap()
    }

    #[test]
    fn omp_recovers_a_single_atom() {
        let a = fano_real();
        let mut x = DVector::zeros(a.ncols());
        x[5] = 2.0;
        let y = &a * &x;
        let res = omp(&a, &y, 1, &OmpOptions::default()).unwrap();
        assert_eq!(res.status, RecoveryStatus::Converged);
        assert_eq!(res.iterations, 1);
        assert!(res.estimate.l2_distance(&x) < 1e-10);
    }

    #[test]
    fn omp_on_an_identity_matrix() {
        let a = DMatrix::<f64>::identity(4, 4);
        let y = DVector::from_column_slice(&[0.0, 2.0, 0.0, -1.0]);
        let res = omp(&a, &y, 2, &OmpOptions::default()).unwrap();
        assert_eq!(res.status, RecoveryStatus::Converged);
        let est = res.estimate.as_real().unwrap();
        assert!((est - &y).norm() < 1e-12);
    }

    #[test]
    fn omp_ties_pick_the_lowest_index() {
        // Two identical columns: the first one must win.
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 0.0]);
        let y = DVector::from_column_slice(&[3.0, 0.0]);
        let res = omp(&a, &y, 2, &OmpOptions::default()).unwrap();
        assert_eq!(res.status, RecoveryStatus::Converged);
        let est = res.estimate.as_real().unwrap();
        assert!((est[0] - 3.0).abs() < 1e-12);
        assert_eq!(est[1], 0.0);
    }

    #[test]
    fn omp_residual_stays_orthogonal_to_selected_atoms() {
        let a = fano_real();
        let mut x = DVector::zeros(a.ncols());
        x[3] = 1.0;
        x[17] = -0.8;
        x[30] = 0.5;
        let y = &a * &x;
        let res = omp(&a, &y, 3, &OmpOptions::default()).unwrap();
        let est = res.estimate.as_real().unwrap();
        let residual = &y - &a * est;
        for j in 0..a.ncols() {
            if est[j] != 0.0 {
                assert!(a.column(j).dot(&residual).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn omp_iteration_cap_is_reported() {
        let a = fano_real();
        let mut x = DVector::zeros(a.ncols());
        x[1] = 1.0;
        x[9] = 1.0;
        x[20] = 1.0;
        let y = &a * &x;
        let opts = OmpOptions { max_iterations: Some(1), ..OmpOptions::default() };
        let res = omp(&a, &y, 3, &opts).unwrap();
        assert_eq!(res.status, RecoveryStatus::MaxIterations);
        assert_eq!(res.iterations, 1);
    }

    #[test]
    fn omp_rejects_bad_dimensions() {
        let a = fano_real();
        let y = DVector::zeros(3);
        assert!(matches!(
            omp(&a, &y, 1, &OmpOptions::default()),
            Err(RecoveryError::DimensionMismatch { .. })
        ));
        let y = DVector::zeros(a.nrows());
        assert!(matches!(
            omp(&a, &y, a.ncols() + 1, &OmpOptions::default()),
            Err(RecoveryError::SparsityTooLarge { .. })
        ));
    }

    #[test]
    fn basis_pursuit_solves_a_square_system() {
        let a = DMatrix::<f64>::identity(3, 3);
        let y = DVector::from_column_slice(&[0.5, -0.25, 1.0]);
        let res = basis_pursuit(&a, &y, &BasisPursuitOptions::default()).unwrap();
        assert_eq!(res.status, RecoveryStatus::Converged);
        assert!(res.estimate.l2_distance(&y) < 1e-7);
    }

    #[test]
    fn basis_pursuit_recovers_a_sparse_signal() {
        let a = fano_real();
        let mut x = DVector::zeros(a.ncols());
        x[8] = 1.0;
        let y = &a * &x;
        let res = basis_pursuit(&a, &y, &BasisPursuitOptions::default()).unwrap();
        assert_eq!(res.status, RecoveryStatus::Converged);
        assert!(res.estimate.l2_distance(&x) < 1e-8, "error {}", res.estimate.l2_distance(&x));
        assert!(res.residual_norm < 1e-8);
    }

    #[test]
    fn basis_pursuit_flags_inconsistent_measurements() {
        // One variable, two contradictory equations.
        let a = DMatrix::from_row_slice(2, 1, &[1.0, 1.0]);
        let y = DVector::from_column_slice(&[1.0, 2.0]);
        let res = basis_pursuit(&a, &y, &BasisPursuitOptions::default()).unwrap();
        assert_eq!(res.status, RecoveryStatus::Infeasible);
    }

    #[test]
    fn initial_estimate_matches_the_dense_adjoint() {
        let m = sts9();
        let y = DVector::from_fn(m.n(), |i, _| {
            Complex64::new((i as f64 + 1.0).sin(), (i as f64 * 0.3).cos())
        });
        let fast = initial_estimate(&m, &y);
        let dense = m.entries().ad_mul(&DMatrix::from_column_slice(y.len(), 1, y.as_slice()));
        for i in 0..m.cols() {
            assert!((fast[i] - dense[(i, 0)]).norm() < 1e-12);
        }
    }

    #[test]
    fn alg1_recovers_exactly_within_its_guarantee() {
        let d = steiner_triple_system(13).unwrap();
        let hs = uniform_hadamards(&d, HadamardChoice::Fourier).unwrap();
        let m = build(&d, hs).unwrap();
        let mut x = DVector::from_element(m.cols(), Complex64::ZERO);
        x[2] = Complex64::new(1.0, 0.0);
        x[40] = Complex64::new(-0.9, 0.0);
        let y = m.apply_via_metadata(&x);
        let res = alg1_recover(&m, &y, 2).unwrap();
        assert_eq!(res.status, RecoveryStatus::Converged);
        let est = res.estimate.as_complex().unwrap();
        let err = (est - &x).norm();
        assert!(err < 1e-9, "recovery error {err}");
        assert!(res.residual_norm < 1e-9);
    }

    #[test]
    fn alg1_handles_complex_coefficients() {
        let m = sts9();
        let mut x = DVector::from_element(m.cols(), Complex64::ZERO);
        x[0] = Complex64::new(0.6, -0.8);
        let y = m.apply_via_metadata(&x);
        let res = alg1_recover(&m, &y, 2).unwrap();
        assert_eq!(res.status, RecoveryStatus::Converged);
        let est = res.estimate.as_complex().unwrap();
        assert!((est - &x).norm() < 1e-10);
    }

    #[test]
    fn alg1_rejects_oversized_selections() {
        let m = sts9();
        let y = DVector::from_element(m.n(), Complex64::ZERO);
        match alg1_recover(&m, &y, 5) {
            Err(RecoveryError::SparsityTooLarge { requested: 5, max: 4 }) => {}
            other => panic!("expected SparsityTooLarge, got {other:?}"),
        }
        assert!(matches!(
            alg1_recover(&m, &DVector::from_element(3, Complex64::ZERO), 2),
            Err(RecoveryError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn alg1_zero_measurements_give_a_zero_estimate() {
        let m = sts9();
        let y = DVector::from_element(m.n(), Complex64::ZERO);
        let res = alg1_recover(&m, &y, 0).unwrap();
        assert_eq!(res.status, RecoveryStatus::Converged);
        let est = res.estimate.as_complex().unwrap();
        assert!(est.iter().all(|e| e.norm() < 1e-12));
        assert_eq!(res.residual_norm, 0.0);
    }
}
