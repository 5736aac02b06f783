//! Complex Hadamard matrices and their vanishing behaviour.
//!
//! A complex Hadamard matrix of order r has unimodular entries and satisfies
//! H H* = r I. Fourier matrices exist for every order; real {-1, +1}
//! Hadamard matrices are built for orders 2^k (Sylvester doubling) and
//! 12 * 2^k (Paley's quadratic-residue construction over GF(11), then
//! doubling).
//!
//! The search routines here answer how concentrated a linear combination of
//! a few columns can be: [`min_support_combination`] returns the exact
//! minimum support over nontrivial combinations of at most u columns, and
//! [`is_optimal`] checks that no combination of k rows vanishes on k or more
//! coordinates. Both are exhaustive and therefore limited to small orders.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

/// Orders above this are rejected by the exhaustive searches.
pub const MAX_SEARCH_ORDER: usize = 12;

const UNIMODULAR_TOL: f64 = 1e-12;
const ORTHOGONALITY_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum HadamardError {
    #[error("order {order} not supported for real Hadamard matrices ({reason})")]
    UnsupportedOrder { order: usize, reason: String },
    #[error("entry ({row}, {col}) has modulus deviating from 1 by {deviation:.3e}")]
    NotUnimodular { row: usize, col: usize, deviation: f64 },
    #[error("H H* deviates from r I at ({row}, {col}) by {deviation:.3e}")]
    NotOrthogonal { row: usize, col: usize, deviation: f64 },
    #[error("matrix must be square, got {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("subset size {u} out of range for order {order}")]
    SubsetOutOfRange { u: usize, order: usize },
    #[error("exhaustive search supports orders up to {MAX_SEARCH_ORDER}, got {order}")]
    SearchBudgetExceeded { order: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HadamardKind {
    Fourier,
    Sylvester,
    Paley,
    Custom,
}

impl HadamardKind {
    pub fn name(self) -> &'static str {
        match self {
            HadamardKind::Fourier => "fourier",
            HadamardKind::Sylvester => "sylvester",
            HadamardKind::Paley => "paley",
            HadamardKind::Custom => "custom",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "fourier" => Some(HadamardKind::Fourier),
            "sylvester" => Some(HadamardKind::Sylvester),
            "paley" => Some(HadamardKind::Paley),
            "custom" => Some(HadamardKind::Custom),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HadamardMatrix {
    order: usize,
    kind: HadamardKind,
    entries: DMatrix<Complex64>,
}

impl HadamardMatrix {
    /// Wraps arbitrary entries after checking the Hadamard conditions.
    pub fn custom(entries: DMatrix<Complex64>) -> Result<Self, HadamardError> {
        Self::with_kind(entries, HadamardKind::Custom)
    }

    pub(crate) fn with_kind(
        entries: DMatrix<Complex64>,
        kind: HadamardKind,
    ) -> Result<Self, HadamardError> {
        if entries.nrows() != entries.ncols() {
            return Err(HadamardError::NotSquare { rows: entries.nrows(), cols: entries.ncols() });
        }
        let h = HadamardMatrix { order: entries.nrows(), kind, entries };
        h.validate()?;
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> HadamardKind {
        self.kind
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    /// True when every entry has negligible imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.im.abs() <= UNIMODULAR_TOL)
    }

    /// Checks unimodularity of every entry and H H* = r I.
    pub fn validate(&self) -> Result<(), HadamardError> {
        for row in 0..self.order {
            for col in 0..self.order {
                let deviation = (self.entries[(row, col)].norm() - 1.0).abs();
                if deviation > UNIMODULAR_TOL {
                    return Err(HadamardError::NotUnimodular { row, col, deviation });
                }
            }
        }
        let gram = &self.entries * self.entries.adjoint();
        let r = self.order as f64;
        for row in 0..self.order {
            for col in 0..self.order {
                let expected = if row == col { Complex64::new(r, 0.0) } else { Complex64::ZERO };
                let deviation = (gram[(row, col)] - expected).norm();
                if deviation > ORTHOGONALITY_TOL {
                    return Err(HadamardError::NotOrthogonal { row, col, deviation });
                }
            }
        }
        Ok(())
    }
}

/// The Fourier matrix of order r: entry (j, k) is exp(2 pi i jk / r), with
/// jk reduced mod r before the division so large orders lose no precision.
pub fn fourier(r: usize) -> HadamardMatrix {
    assert!(r >= 1, "Fourier matrices need order at least 1");
    let entries = DMatrix::from_fn(r, r, |j, k| {
        let phase = TAU * ((j * k) % r) as f64 / r as f64;
        Complex64::new(phase.cos(), phase.sin())
    });
    HadamardMatrix::with_kind(entries, HadamardKind::Fourier)
        .expect("Fourier construction always satisfies the Hadamard conditions")
}

/// Sign matrix of the Paley construction at order 12: H = I + S where S is
/// the skew conference matrix built from quadratic residues mod 11.
fn paley_12() -> DMatrix<i64> {
    let q = 11usize;
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    let chi = |x: usize| -> i64 {
        let x = x % q;
        if x == 0 {
            0
        } else if residue[x] {
            1
        } else {
            -1
        }
    };
    let n = q + 1;
    let mut h = DMatrix::<i64>::zeros(n, n);
    for j in 1..n {
        h[(0, j)] = 1;
        h[(j, 0)] = -1;
    }
    for i in 1..n {
        for j in 1..n {
            h[(i, j)] = chi(j + q - i);
        }
    }
    for d in 0..n {
        h[(d, d)] += 1;
    }
    h
}

/// Integer real Hadamard entries for the supported orders: 1, 2, powers of
/// two, and 12 times a power of two.
fn real_entries(r: usize) -> Option<DMatrix<i64>> {
    match r {
        1 => Some(DMatrix::from_element(1, 1, 1)),
        12 => Some(paley_12()),
        _ if r.is_multiple_of(2) => {
            let half = real_entries(r / 2)?;
            let m = r / 2;
            let mut h = DMatrix::<i64>::zeros(r, r);
            for i in 0..m {
                for j in 0..m {
                    let e = half[(i, j)];
                    h[(i, j)] = e;
                    h[(i, j + m)] = e;
                    h[(i + m, j)] = e;
                    h[(i + m, j + m)] = -e;
                }
            }
            Some(h)
        }
        _ => None,
    }
}

/// A real {-1, +1} Hadamard matrix of order r. Supported orders are 1, 2,
/// and multiples of 4 of the form 2^k or 12 * 2^k; H H^T = r I is verified
/// in integer arithmetic before converting to floating point.
pub fn real_hadamard(r: usize) -> Result<HadamardMatrix, HadamardError> {
    if r == 0 {
        return Err(HadamardError::UnsupportedOrder { order: r, reason: "order zero".into() });
    }
    if r > 2 && !r.is_multiple_of(4) {
        return Err(HadamardError::UnsupportedOrder {
            order: r,
            reason: "real Hadamard matrices of order above 2 need order divisible by 4".into(),
        });
    }
    let ints = real_entries(r).ok_or_else(|| HadamardError::UnsupportedOrder {
        order: r,
        reason: "only orders 2^k and 12 * 2^k are constructed".into(),
    })?;
    for i in 0..r {
        for j in 0..r {
            let mut dot = 0i64;
            for k in 0..r {
                dot += ints[(i, k)] * ints[(j, k)];
            }
            let expected = if i == j { r as i64 } else { 0 };
            assert_eq!(dot, expected, "integer Gram check failed at ({i}, {j})");
        }
    }
    let entries = ints.map(|e| Complex64::new(e as f64, 0.0));
    let kind = if r == 12 { HadamardKind::Paley } else { HadamardKind::Sylvester };
    HadamardMatrix::with_kind(entries, kind)
}

/// Advances `indices` to the next k-subset of 0..n in lexicographic order.
/// Returns false once the last subset has been passed.
pub(crate) fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] < n - (k - i) {
            indices[i] += 1;
            for j in (i + 1)..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// One basis vector of the kernel of an (n-1) x n matrix, or None when the
/// kernel is not one-dimensional. Plain Gaussian elimination with partial
/// pivoting; n stays tiny here.
fn kernel_vector(mat: &DMatrix<Complex64>) -> Option<Vec<Complex64>> {
    let rows = mat.nrows();
    let cols = mat.ncols();
    debug_assert_eq!(rows + 1, cols);
    let mut a = mat.clone();
    let mut pivot_cols = Vec::with_capacity(rows);
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let (best_row, best) = (row..rows)
            .map(|r| (r, a[(r, col)].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if best < 1e-10 {
            continue;
        }
        a.swap_rows(row, best_row);
        let inv = Complex64::new(1.0, 0.0) / a[(row, col)];
        for c in col..cols {
            a[(row, c)] *= inv;
        }
        for r in 0..rows {
            if r != row {
                let factor = a[(r, col)];
                if factor.norm() > 0.0 {
                    for c in col..cols {
                        let sub = factor * a[(row, c)];
                        a[(r, c)] -= sub;
                    }
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if pivot_cols.len() != rows {
        return None;
    }
    let free_col = (0..cols).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut x = vec![Complex64::ZERO; cols];
    x[free_col] = Complex64::new(1.0, 0.0);
    for (r, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = -a[(r, free_col)];
    }
    Some(x)
}

/// Exact maximum number of zeros over nontrivial combinations of at most u
/// columns of a square invertible matrix with n <= MAX_SEARCH_ORDER.
///
/// Any combination maximizing the zero count is pinned, up to scale, by some
/// u - 1 of its zero rows whose submatrix has full rank, so enumerating
/// column subsets against (u-1)-row subsets and reading off kernel vectors
/// is exhaustive.
fn max_zeros_of_column_combinations(entries: &DMatrix<Complex64>, u: usize) -> usize {
    let n = entries.nrows();
    if u == 1 {
        // Unimodular columns have no zero entries.
        return 0;
    }
    let mut best = u - 1;
    let mut cols: Vec<usize> = (0..u).collect();
    loop {
        let sub_cols = entries.select_columns(cols.iter());
        let mut rows: Vec<usize> = (0..u - 1).collect();
        loop {
            let pinned = sub_cols.select_rows(rows.iter());
            if let Some(coeff) = kernel_vector(&pinned) {
                let scale =
                    coeff.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
                let mut zeros = 0;
                for r in 0..n {
                    let mut val = Complex64::ZERO;
                    for (j, &c) in cols.iter().enumerate() {
                        val += entries[(r, c)] * coeff[j];
                    }
                    if val.norm() <= ZERO_TOL * scale {
                        zeros += 1;
                    }
                }
                best = best.max(zeros);
            }
            if !next_combination(&mut rows, n) {
                break;
            }
        }
        if !next_combination(&mut cols, n) {
            break;
        }
    }
    best
}

/// Exact minimum support over nontrivial linear combinations of at most u
/// columns of H. Exhaustive; orders above [`MAX_SEARCH_ORDER`] are refused
/// rather than approximated.
pub fn min_support_combination(h: &HadamardMatrix, u: usize) -> Result<usize, HadamardError> {
    let order = h.order();
    if u == 0 || u > order {
        return Err(HadamardError::SubsetOutOfRange { u, order });
    }
    if order > MAX_SEARCH_ORDER {
        return Err(HadamardError::SearchBudgetExceeded { order });
    }
    Ok(order - max_zeros_of_column_combinations(h.entries(), u))
}

/// True when for every k <= kmax no nontrivial combination of k rows
/// vanishes on k or more coordinates. Prime-order Fourier matrices pass for
/// any kmax; real Hadamard matrices always fail, since the sum of two rows
/// already has half the coordinates equal to zero.
pub fn is_optimal(h: &HadamardMatrix, kmax: usize) -> Result<bool, HadamardError> {
    let order = h.order();
    if kmax == 0 || kmax > order {
        return Err(HadamardError::SubsetOutOfRange { u: kmax, order });
    }
    if order > MAX_SEARCH_ORDER {
        return Err(HadamardError::SearchBudgetExceeded { order });
    }
    // Row combinations of H are column combinations of its transpose.
    let transposed = h.entries().transpose();
    for k in 1..=kmax {
        if max_zeros_of_column_combinations(&transposed, k) >= k {
            return Ok(false);
        }
    }
    Ok(true)
}
