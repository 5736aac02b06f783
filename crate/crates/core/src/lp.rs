//! A small interior point solver for standard-form linear programs.
//!
//! Solves min c'x subject to Ax = b, x >= 0, with A held as sparse columns.
//! The implementation is Mehrotra's predictor-corrector method on the
//! normal equations: each iteration assembles M = A D A' from the column
//! sparsity pattern, factors it by dense Cholesky (with an escalating ridge
//! when the factorization stalls), and takes damped affine plus corrector
//! steps. That shape fits the basis pursuit reformulation used elsewhere in
//! this crate, where A = [Phi, -Phi] has a few thousand columns, each with
//! only a couple dozen nonzeros, and M stays small and dense.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

/// Equality-constrained LP data. Columns of A are (row, value) lists.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub nrows: usize,
    pub cols: Vec<Vec<(usize, f64)>>,
    pub b: DVector<f64>,
    pub c: DVector<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct LpOptions {
    /// Relative tolerance on primal residual, dual residual, and gap.
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { tol: 1e-9, max_iters: 100 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    IterationLimit,
    /// The iteration stalled or produced non-finite values.
    Numerical,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: DVector<f64>,
    pub status: LpStatus,
    pub iterations: usize,
    pub objective: f64,
    /// ||Ax - b|| / (1 + ||b||).
    pub primal_residual: f64,
    /// ||c - A'lambda - s|| / (1 + ||c||).
    pub dual_residual: f64,
    /// |c'x - b'lambda| / (1 + |c'x|).
    pub gap: f64,
}

fn a_mul(nrows: usize, cols: &[Vec<(usize, f64)>], x: &DVector<f64>) -> DVector<f64> {
    let mut y = DVector::zeros(nrows);
    for (j, col) in cols.iter().enumerate() {
        let xj = x[j];
        if xj != 0.0 {
            for &(r, v) in col {
                y[r] += v * xj;
            }
        }
    }
    y
}

fn at_mul(cols: &[Vec<(usize, f64)>], y: &DVector<f64>) -> DVector<f64> {
    DVector::from_iterator(
        cols.len(),
        cols.iter().map(|col| col.iter().map(|&(r, v)| v * y[r]).sum::<f64>()),
    )
}

/// M = A diag(d) A', assembled column by column.
fn normal_matrix(nrows: usize, cols: &[Vec<(usize, f64)>], d: &DVector<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(nrows, nrows);
    for (j, col) in cols.iter().enumerate() {
        let dj = d[j];
        for &(ra, va) in col {
            let w = dj * va;
            for &(rb, vb) in col {
                m[(ra, rb)] += w * vb;
            }
        }
    }
    m
}

/// Cholesky with an escalating diagonal ridge. The ridge starts near
/// machine precision relative to the diagonal scale and grows by 100x per
/// attempt.
fn factor_with_ridge(m: &DMatrix<f64>) -> Option<Cholesky<f64, Dyn>> {
    let scale = m.diagonal().amax().max(f64::MIN_POSITIVE);
    if !scale.is_finite() {
        return None;
    }
    let mut ridge = 0.0f64;
    for attempt in 0..10 {
        let candidate = if ridge == 0.0 {
            m.clone()
        } else {
            let mut shifted = m.clone();
            for i in 0..shifted.nrows() {
                shifted[(i, i)] += ridge;
            }
            shifted
        };
        if let Some(chol) = Cholesky::new(candidate) {
            return Some(chol);
        }
        ridge = if attempt == 0 { scale * 1e-14 } else { ridge * 100.0 };
    }
    None
}

/// Largest alpha in [0, inf) with v + alpha dv >= 0.
fn max_step(v: &DVector<f64>, dv: &DVector<f64>) -> f64 {
    let mut alpha = f64::INFINITY;
    for i in 0..v.len() {
        if dv[i] < 0.0 {
            alpha = alpha.min(-v[i] / dv[i]);
        }
    }
    alpha
}

fn all_finite(v: &DVector<f64>) -> bool {
    v.iter().all(|x| x.is_finite())
}

struct Residuals {
    rp: DVector<f64>,
    rd: DVector<f64>,
    rel_p: f64,
    rel_d: f64,
    rel_gap: f64,
    objective: f64,
}

fn residuals(p: &LpProblem, x: &DVector<f64>, lambda: &DVector<f64>, s: &DVector<f64>) -> Residuals {
    let rp = &p.b - a_mul(p.nrows, &p.cols, x);
    let rd = &p.c - at_mul(&p.cols, lambda) - s;
    let pobj = p.c.dot(x);
    let dobj = p.b.dot(lambda);
    Residuals {
        rel_p: rp.norm() / (1.0 + p.b.norm()),
        rel_d: rd.norm() / (1.0 + p.c.norm()),
        rel_gap: (pobj - dobj).abs() / (1.0 + pobj.abs()),
        objective: pobj,
        rp,
        rd,
    }
}

pub fn solve(p: &LpProblem, opts: &LpOptions) -> LpSolution {
    let n = p.cols.len();
    assert_eq!(p.b.len(), p.nrows, "b length must match the row count");
    assert_eq!(p.c.len(), n, "c length must match the column count");
    if n == 0 {
        let feasible = p.b.norm() <= opts.tol * (1.0 + p.b.norm());
        return LpSolution {
            x: DVector::zeros(0),
            status: if feasible { LpStatus::Optimal } else { LpStatus::Numerical },
            iterations: 0,
            objective: 0.0,
            primal_residual: p.b.norm() / (1.0 + p.b.norm()),
            dual_residual: 0.0,
            gap: 0.0,
        };
    }

    // Mehrotra's starting point: least-squares estimates shifted into the
    // positive orthant.
    let ones = DVector::from_element(n, 1.0);
    let m0 = normal_matrix(p.nrows, &p.cols, &ones);
    let Some(chol0) = factor_with_ridge(&m0) else {
        return LpSolution {
            x: DVector::from_element(n, 1.0),
            status: LpStatus::Numerical,
            iterations: 0,
            objective: p.c.sum(),
            primal_residual: f64::INFINITY,
            dual_residual: f64::INFINITY,
            gap: f64::INFINITY,
        };
    };
    let x_ls = at_mul(&p.cols, &chol0.solve(&p.b));
    let lambda0 = chol0.solve(&a_mul(p.nrows, &p.cols, &p.c));
    let s_ls = &p.c - at_mul(&p.cols, &lambda0);

    let dp = (-1.5 * x_ls.min()).max(0.0);
    let dd = (-1.5 * s_ls.min()).max(0.0);
    let xs: f64 = (0..n).map(|i| (x_ls[i] + dp) * (s_ls[i] + dd)).sum();
    let sum_s: f64 = s_ls.iter().map(|&v| v + dd).sum();
    let sum_x: f64 = x_ls.iter().map(|&v| v + dp).sum();
    let dp_hat = if sum_s > f64::MIN_POSITIVE { dp + 0.5 * xs / sum_s } else { dp + 1.0 };
    let dd_hat = if sum_x > f64::MIN_POSITIVE { dd + 0.5 * xs / sum_x } else { dd + 1.0 };
    let floor = 1e-8 * (1.0 + p.b.amax().max(p.c.amax()));
    let mut x = x_ls.map(|v| (v + dp_hat).max(floor));
    let mut s = s_ls.map(|v| (v + dd_hat).max(floor));
    let mut lambda = lambda0;

    let mut iterations = 0usize;
    let mut status = LpStatus::IterationLimit;
    for it in 0..opts.max_iters {
        iterations = it;
        let res = residuals(p, &x, &lambda, &s);
        if res.rel_p <= opts.tol && res.rel_d <= opts.tol && res.rel_gap <= opts.tol {
            status = LpStatus::Optimal;
            break;
        }
        let mu = x.dot(&s) / n as f64;
        let d = DVector::from_fn(n, |i, _| x[i] / s[i]);
        let m = normal_matrix(p.nrows, &p.cols, &d);
        let Some(chol) = factor_with_ridge(&m) else {
            status = LpStatus::Numerical;
            break;
        };

        // Affine scaling direction: r_xs = -x.*s.
        let rhs_aff = &res.rp
            + a_mul(p.nrows, &p.cols, &DVector::from_fn(n, |i, _| d[i] * res.rd[i] + x[i]));
        let dl_aff = chol.solve(&rhs_aff);
        let at_dl = at_mul(&p.cols, &dl_aff);
        let dx_aff = DVector::from_fn(n, |i, _| d[i] * (at_dl[i] - res.rd[i]) - x[i]);
        let ds_aff = DVector::from_fn(n, |i, _| (-x[i] * s[i] - s[i] * dx_aff[i]) / x[i]);

        let alpha_p_aff = max_step(&x, &dx_aff).min(1.0);
        let alpha_d_aff = max_step(&s, &ds_aff).min(1.0);
        let mu_aff = (0..n)
            .map(|i| (x[i] + alpha_p_aff * dx_aff[i]) * (s[i] + alpha_d_aff * ds_aff[i]))
            .sum::<f64>()
            / n as f64;
        let sigma = (mu_aff / mu).powi(3).clamp(0.0, 1.0);

        // Corrector: r_xs = -x.*s + sigma mu - dx_aff.*ds_aff.
        let rxs = DVector::from_fn(n, |i, _| -x[i] * s[i] + sigma * mu - dx_aff[i] * ds_aff[i]);
        let rhs = &res.rp
            + a_mul(
                p.nrows,
                &p.cols,
                &DVector::from_fn(n, |i, _| d[i] * res.rd[i] - rxs[i] / s[i]),
            );
        let dl = chol.solve(&rhs);
        let at_dl = at_mul(&p.cols, &dl);
        let dx = DVector::from_fn(n, |i, _| d[i] * (at_dl[i] - res.rd[i]) + rxs[i] / s[i]);
        let ds = DVector::from_fn(n, |i, _| (rxs[i] - s[i] * dx[i]) / x[i]);

        let eta = if mu > 1e-5 { 0.995 } else { 0.99995 };
        let alpha_p = (eta * max_step(&x, &dx)).min(1.0);
        let alpha_d = (eta * max_step(&s, &ds)).min(1.0);
        if alpha_p < 1e-10 && alpha_d < 1e-10 {
            status = LpStatus::Numerical;
            break;
        }
        x.axpy(alpha_p, &dx, 1.0);
        lambda.axpy(alpha_d, &dl, 1.0);
        s.axpy(alpha_d, &ds, 1.0);
        if !(all_finite(&x) && all_finite(&lambda) && all_finite(&s)) {
            status = LpStatus::Numerical;
            break;
        }
        iterations = it + 1;
    }

    let res = residuals(p, &x, &lambda, &s);
    LpSolution {
        x,
        status,
        iterations,
        objective: res.objective,
        primal_residual: res.rel_p,
        dual_residual: res.rel_d,
        gap: res.rel_gap,
    }
}
