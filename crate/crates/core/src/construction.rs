//! Sensing matrices assembled from a design and per-point Hadamard blocks.
//!
//! Every point x of the design contributes r_x adjacent columns, where r_x
//! is its replication number. Walking the blocks through x in ascending
//! block order, the k-th such block receives row k of (1/sqrt(r_x)) H_x
//! across those columns; blocks not containing x contribute zero rows. The
//! resulting n x N matrix has unit columns, orthogonal columns within a
//! point, and cross-point inner products of modulus 1/sqrt(r_i r_j).
//!
//! Alongside the assembly this module certifies what the matrix cannot do:
//! explicit sparse nullvectors from point pairs and from arcs, an
//! exhaustive small-spark scan, and the resulting guaranteed/impossible
//! sparsity bounds.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::ops::Range;
use thiserror::Error;

use crate::design::{validate_pbd, Design, PointSet};
use crate::hadamard::{next_combination, real_hadamard, fourier, HadamardError, HadamardMatrix};

/// Subsets examined by [`brute_spark`] before giving up.
pub const DEFAULT_SPARK_BUDGET: u64 = 5_000_000;

const NULLVECTOR_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("design fails validation: {pair_violations} pair violations, {undersized_blocks} undersized blocks")]
    InvalidDesign { pair_violations: usize, undersized_blocks: usize },
    #[error("need one Hadamard matrix per point: design has {points}, got {got}")]
    HadamardCountMismatch { points: usize, got: usize },
    #[error("point {point} has replication {replication} but its Hadamard matrix has order {order}")]
    OrderMismatch { point: usize, replication: usize, order: usize },
    #[error("point index {point} out of range for {points} points")]
    PointOutOfRange { point: usize, points: usize },
    #[error("witness needs two distinct points")]
    SamePoint,
    #[error("points {p1} and {p2} share {count} blocks, expected exactly one")]
    SharedBlockCount { p1: usize, p2: usize, count: usize },
    #[error("arc witness needs exactly 3 points, got {got}")]
    ArcSizeNotThree { got: usize },
    #[error("arc witness needs equal replication, found {r1} and {r2}")]
    UnequalReplication { r1: usize, r2: usize },
    #[error("arc witness needs replication divisible by 4, found {r}")]
    ReplicationNotDivisibleByFour { r: usize },
    #[error("arc witness needs real Hadamard blocks, point {point} has complex entries")]
    BlocksNotReal { point: usize },
    #[error("the three points lie in one block, so they do not form an arc")]
    NotAnArc,
    #[error("vector is not in the nullspace (image norm {residual:.3e})")]
    NotANullvector { residual: f64 },
    #[error("cannot split the zero vector")]
    ZeroVector,
    #[error("spark search budget exhausted after {examined} subsets (sizes up to {reached} finished)")]
    SparkBudgetExceeded { examined: u64, reached: usize },
    #[error("inconsistent matrix parts: {0}")]
    InconsistentParts(String),
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
}

/// Which Hadamard family to assign to every point in [`uniform_hadamards`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HadamardChoice {
    Fourier,
    Real,
}

/// One Hadamard matrix per point, each of order matching the point's
/// replication number.
pub fn uniform_hadamards(
    design: &Design,
    choice: HadamardChoice,
) -> Result<Vec<HadamardMatrix>, HadamardError> {
    design
        .replication()
        .iter()
        .map(|&r| match choice {
            HadamardChoice::Fourier => Ok(fourier(r)),
            HadamardChoice::Real => real_hadamard(r),
        })
        .collect()
}

/// A deterministic compressed sensing matrix with its assembly metadata.
///
/// The metadata (column ranges, nonzero rows per point, Hadamard row
/// placement) is enough to apply the matrix and to run the design-aware
/// decoder without ever reading the dense entry array.
#[derive(Debug, Clone, PartialEq)]
pub struct SensingMatrix {
    entries: DMatrix<Complex64>,
    point_cols: Vec<Range<usize>>,
    point_rows: Vec<Vec<usize>>,
    had_row_at: Vec<Vec<usize>>,
    hadamards: Vec<HadamardMatrix>,
}

impl SensingMatrix {
    /// Rows: one per block of the source design.
    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    /// Columns: total incidences of the source design.
    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn point_count(&self) -> usize {
        self.point_cols.len()
    }

    /// Column range belonging to a point.
    pub fn point_cols(&self, point: usize) -> Range<usize> {
        self.point_cols[point].clone()
    }

    /// Rows where a point's columns are nonzero, ascending block order.
    pub fn point_rows(&self, point: usize) -> &[usize] {
        &self.point_rows[point]
    }

    pub fn hadamard(&self, point: usize) -> &HadamardMatrix {
        &self.hadamards[point]
    }

    pub fn replication(&self, point: usize) -> usize {
        self.point_rows[point].len()
    }

    /// Common replication number, when every point has the same one.
    pub fn equireplication(&self) -> Option<usize> {
        let r = self.point_rows.first()?.len();
        self.point_rows.iter().all(|rows| rows.len() == r).then_some(r)
    }

    /// Which point a column belongs to.
    pub fn point_of_column(&self, col: usize) -> usize {
        debug_assert!(col < self.cols());
        self.point_cols.partition_point(|range| range.end <= col)
    }

    /// Hadamard row placed at the given matrix row for this point, if the
    /// point has support there.
    pub fn had_row_at(&self, point: usize, row: usize) -> Option<usize> {
        let pos = self.point_rows[point].binary_search(&row).ok()?;
        Some(self.had_row_at[point][pos])
    }

    pub(crate) fn had_rows(&self, point: usize) -> &[usize] {
        &self.had_row_at[point]
    }

    /// Dense matrix-vector product.
    pub fn apply(&self, x: &DVector<Complex64>) -> DVector<Complex64> {
        &self.entries * x
    }

    /// Matrix-vector product computed from the metadata and Hadamard blocks
    /// alone, bypassing the dense entry array. Used by the design-aware
    /// decoder, which must not depend on dense storage.
    pub fn apply_via_metadata(&self, x: &DVector<Complex64>) -> DVector<Complex64> {
        assert_eq!(x.len(), self.cols());
        let mut y = DVector::from_element(self.n(), Complex64::ZERO);
        for point in 0..self.point_count() {
            let cols = self.point_cols[point].clone();
            let r = cols.len();
            let scale = Complex64::new(1.0 / (r as f64).sqrt(), 0.0);
            let h = self.hadamards[point].entries();
            for (pos, &row) in self.point_rows[point].iter().enumerate() {
                let k = self.had_row_at[point][pos];
                let mut acc = Complex64::ZERO;
                for l in 0..r {
                    acc += h[(k, l)] * x[cols.start + l];
                }
                y[row] += scale * acc;
            }
        }
        y
    }

    /// The advertised worst-case coherence bound max 1/sqrt(r_i r_j) over
    /// distinct points; equals 1/r for equireplicate designs.
    pub fn coherence_bound(&self) -> f64 {
        let mut reps: Vec<usize> = self.point_rows.iter().map(|r| r.len()).collect();
        reps.sort_unstable();
        if reps.len() < 2 {
            return 0.0;
        }
        1.0 / ((reps[0] * reps[1]) as f64).sqrt()
    }

    /// Reassembles a matrix from stored parts, rejecting anything that does
    /// not describe a matrix this module could have built.
    pub fn from_parts(
        entries: DMatrix<Complex64>,
        point_cols: Vec<Range<usize>>,
        point_rows: Vec<Vec<usize>>,
        had_row_at: Vec<Vec<usize>>,
        hadamards: Vec<HadamardMatrix>,
    ) -> Result<Self, ConstructionError> {
        let n = entries.nrows();
        let big_n = entries.ncols();
        let points = point_cols.len();
        let fail = |msg: String| Err(ConstructionError::InconsistentParts(msg));
        if point_rows.len() != points || had_row_at.len() != points || hadamards.len() != points {
            return fail("per-point metadata lengths disagree".into());
        }
        let mut expected_start = 0usize;
        for p in 0..points {
            let cols = &point_cols[p];
            if cols.start != expected_start || cols.end <= cols.start {
                return fail(format!("column ranges must tile columns, broken at point {p}"));
            }
            expected_start = cols.end;
            let r = cols.len();
            if point_rows[p].len() != r || had_row_at[p].len() != r || hadamards[p].order() != r {
                return fail(format!("point {p} metadata sizes disagree with width {r}"));
            }
            if point_rows[p].windows(2).any(|w| w[0] >= w[1]) {
                return fail(format!("rows of point {p} are not strictly ascending"));
            }
            if point_rows[p].iter().any(|&row| row >= n) {
                return fail(format!("row index out of range at point {p}"));
            }
            let mut seen = vec![false; r];
            for &k in &had_row_at[p] {
                if k >= r || seen[k] {
                    return fail(format!("Hadamard row placement of point {p} is not a bijection"));
                }
                seen[k] = true;
            }
        }
        if expected_start != big_n {
            return fail("column ranges do not cover the matrix".into());
        }
        let matrix = SensingMatrix { entries, point_cols, point_rows, had_row_at, hadamards };
        // Full placement check: every entry equals the scaled Hadamard
        // entry or zero.
        for p in 0..points {
            let cols = matrix.point_cols[p].clone();
            let r = cols.len();
            let scale = 1.0 / (r as f64).sqrt();
            let h = matrix.hadamards[p].entries();
            let mut row_pos = vec![None; n];
            for (pos, &row) in matrix.point_rows[p].iter().enumerate() {
                row_pos[row] = Some(matrix.had_row_at[p][pos]);
            }
            for (row, &placed) in row_pos.iter().enumerate() {
                for l in 0..r {
                    let actual = matrix.entries[(row, cols.start + l)];
                    let expected = match placed {
                        Some(k) => h[(k, l)] * Complex64::new(scale, 0.0),
                        None => Complex64::ZERO,
                    };
                    if (actual - expected).norm() > 1e-12 {
                        return fail(format!(
                            "entry ({row}, {}) disagrees with the placement metadata",
                            cols.start + l
                        ));
                    }
                }
            }
        }
        Ok(matrix)
    }
}

/// Assembles the sensing matrix for a validated design and one Hadamard
/// matrix per point, of order equal to that point's replication number.
pub fn build(
    design: &Design,
    hadamards: Vec<HadamardMatrix>,
) -> Result<SensingMatrix, ConstructionError> {
    let report = validate_pbd(design);
    if !report.is_valid() {
        return Err(ConstructionError::InvalidDesign {
            pair_violations: report.pair_violations.len(),
            undersized_blocks: report.undersized_blocks.len(),
        });
    }
    if hadamards.len() != design.v() {
        return Err(ConstructionError::HadamardCountMismatch {
            points: design.v(),
            got: hadamards.len(),
        });
    }
    for (point, h) in hadamards.iter().enumerate() {
        let replication = design.replication()[point];
        if h.order() != replication {
            return Err(ConstructionError::OrderMismatch { point, replication, order: h.order() });
        }
    }
    let n = design.block_count();
    let point_rows = design.point_blocks();
    let mut point_cols = Vec::with_capacity(design.v());
    let mut start = 0usize;
    for point in 0..design.v() {
        let r = design.replication()[point];
        point_cols.push(start..start + r);
        start += r;
    }
    let mut entries = DMatrix::from_element(n, start, Complex64::ZERO);
    for point in 0..design.v() {
        let cols = point_cols[point].clone();
        let r = cols.len();
        let scale = Complex64::new(1.0 / (r as f64).sqrt(), 0.0);
        let h = hadamards[point].entries();
        for (k, &row) in point_rows[point].iter().enumerate() {
            for l in 0..r {
                entries[(row, cols.start + l)] = h[(k, l)] * scale;
            }
        }
    }
    let had_row_at = point_rows.iter().map(|rows| (0..rows.len()).collect()).collect();
    Ok(SensingMatrix { entries, point_cols, point_rows, had_row_at, hadamards })
}

/// Realification of a complex sensing matrix: each entry a+bi becomes the
/// 2x2 block [[a, b], [-b, a]], so complex column j maps to real columns 2j
/// and 2j+1. Singular values are preserved with doubled multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSensingMatrix {
    entries: DMatrix<f64>,
    source_rows: usize,
    source_cols: usize,
    source_points: usize,
}

impl RealSensingMatrix {
    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// (rows, cols) of the complex matrix this came from.
    pub fn source_dims(&self) -> (usize, usize) {
        (self.source_rows, self.source_cols)
    }

    pub fn source_points(&self) -> usize {
        self.source_points
    }

    /// Real column pair representing complex column j.
    pub fn col_pair(&self, j: usize) -> (usize, usize) {
        (2 * j, 2 * j + 1)
    }

    /// Wraps a plain real matrix read back from disk. Source dimensions are
    /// implied by the halved shape; the point count is not recoverable.
    pub fn from_entries(entries: DMatrix<f64>) -> Result<Self, ConstructionError> {
        if !entries.nrows().is_multiple_of(2) || !entries.ncols().is_multiple_of(2) {
            return Err(ConstructionError::InconsistentParts(
                "realified matrices have even dimensions".into(),
            ));
        }
        let source_rows = entries.nrows() / 2;
        let source_cols = entries.ncols() / 2;
        Ok(RealSensingMatrix { entries, source_rows, source_cols, source_points: 0 })
    }
}

pub fn realify(m: &SensingMatrix) -> RealSensingMatrix {
    let n = m.n();
    let cols = m.cols();
    let mut entries = DMatrix::zeros(2 * n, 2 * cols);
    for row in 0..n {
        for col in 0..cols {
            let e = m.entries()[(row, col)];
            entries[(2 * row, 2 * col)] = e.re;
            entries[(2 * row, 2 * col + 1)] = e.im;
            entries[(2 * row + 1, 2 * col)] = -e.im;
            entries[(2 * row + 1, 2 * col + 1)] = e.re;
        }
    }
    RealSensingMatrix { entries, source_rows: n, source_cols: cols, source_points: m.point_count() }
}

/// Encodes a complex vector in the coordinates the realified matrix acts
/// on: entry x becomes the pair (re x, -im x).
pub fn realify_vector(x: &DVector<Complex64>) -> DVector<f64> {
    let mut out = DVector::zeros(2 * x.len());
    for (j, e) in x.iter().enumerate() {
        out[2 * j] = e.re;
        out[2 * j + 1] = -e.im;
    }
    out
}

/// Inverse of [`realify_vector`].
pub fn complexify_vector(x: &DVector<f64>) -> DVector<Complex64> {
    assert!(x.len().is_multiple_of(2), "realified vectors have even length");
    DVector::from_fn(x.len() / 2, |j, _| Complex64::new(x[2 * j], -x[2 * j + 1]))
}

/// Exact maximum modulus of inner products between distinct columns,
/// computed from the full Gram matrix.
pub fn coherence(m: &SensingMatrix) -> f64 {
    let gram = m.entries().ad_mul(m.entries());
    let mut best = 0.0f64;
    for i in 0..gram.nrows() {
        for j in (i + 1)..gram.ncols() {
            best = best.max(gram[(i, j)].norm());
        }
    }
    best
}

fn shared_rows(m: &SensingMatrix, p1: usize, p2: usize) -> Vec<usize> {
    let rows2 = m.point_rows(p2);
    m.point_rows(p1).iter().copied().filter(|row| rows2.binary_search(row).is_ok()).collect()
}

fn the_shared_row(m: &SensingMatrix, p1: usize, p2: usize) -> Result<usize, ConstructionError> {
    let shared = shared_rows(m, p1, p2);
    if shared.len() != 1 {
        return Err(ConstructionError::SharedBlockCount { p1, p2, count: shared.len() });
    }
    Ok(shared[0])
}

/// A nullvector supported on the columns of two points: scale point p1's
/// columns so the shared-block row reads 1/r_1 from each, and p2's so it
/// reads -1/r_2. Every other row dies by Hadamard row orthogonality, so the
/// spark is at most r_1 + r_2.
pub fn spark_witness_two_points(
    m: &SensingMatrix,
    p1: usize,
    p2: usize,
) -> Result<DVector<Complex64>, ConstructionError> {
    let points = m.point_count();
    for p in [p1, p2] {
        if p >= points {
            return Err(ConstructionError::PointOutOfRange { point: p, points });
        }
    }
    if p1 == p2 {
        return Err(ConstructionError::SamePoint);
    }
    let row = the_shared_row(m, p1, p2)?;
    let mut v = DVector::from_element(m.cols(), Complex64::ZERO);
    for (point, sign) in [(p1, 1.0), (p2, -1.0)] {
        let k = m.had_row_at(point, row).expect("shared row carries both points");
        let cols = m.point_cols(point);
        let r = cols.len();
        let scale = sign / (r as f64).sqrt();
        let h = m.hadamard(point).entries();
        for l in 0..r {
            v[cols.start + l] = h[(k, l)].conj() * Complex64::new(scale, 0.0);
        }
    }
    Ok(v)
}

/// A nullvector supported on three points forming an arc, when all three
/// have the same replication r divisible by 4 and real Hadamard blocks. The
/// vector takes values in {0, +1, -1}, one half of each point's columns,
/// for a sparsity of 3r/2.
pub fn arc_nullvector(
    m: &SensingMatrix,
    arc: &PointSet,
) -> Result<DVector<Complex64>, ConstructionError> {
    if arc.len() != 3 {
        return Err(ConstructionError::ArcSizeNotThree { got: arc.len() });
    }
    let pts = [arc.indices()[0], arc.indices()[1], arc.indices()[2]];
    let points = m.point_count();
    for &p in &pts {
        if p >= points {
            return Err(ConstructionError::PointOutOfRange { point: p, points });
        }
    }
    let r = m.replication(pts[0]);
    for &p in &pts[1..] {
        if m.replication(p) != r {
            return Err(ConstructionError::UnequalReplication { r1: r, r2: m.replication(p) });
        }
    }
    if !r.is_multiple_of(4) {
        return Err(ConstructionError::ReplicationNotDivisibleByFour { r });
    }
    for &p in &pts {
        if !m.hadamard(p).is_real() {
            return Err(ConstructionError::BlocksNotReal { point: p });
        }
    }
    let row_12 = the_shared_row(m, pts[0], pts[1])?;
    let row_13 = the_shared_row(m, pts[0], pts[2])?;
    let row_23 = the_shared_row(m, pts[1], pts[2])?;
    if row_12 == row_13 || row_12 == row_23 || row_13 == row_23 {
        return Err(ConstructionError::NotAnArc);
    }
    // Per point: sign pattern of one incident Hadamard row, restricted to
    // the half where it disagrees with the other incident row.
    let mut v = DVector::from_element(m.cols(), Complex64::ZERO);
    let plan = [
        (pts[0], row_12, row_13, 1.0f64),
        (pts[1], row_12, row_23, -1.0),
        (pts[2], row_13, row_23, 1.0),
    ];
    for (p, row_a, row_b, sign) in plan {
        let ka = m.had_row_at(p, row_a).expect("row_a passes through p");
        let kb = m.had_row_at(p, row_b).expect("row_b passes through p");
        let cols = m.point_cols(p);
        let h = m.hadamard(p).entries();
        for l in 0..r {
            let ea = h[(ka, l)].re;
            let eb = h[(kb, l)].re;
            if ea * eb < 0.0 {
                v[cols.start + l] = Complex64::new(sign * ea, 0.0);
            }
        }
    }
    Ok(v)
}

/// Outcome of the exhaustive spark scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SparkBound {
    /// Smallest number of linearly dependent columns.
    Exact(usize),
    /// Every subset of at most smax columns is independent.
    ExceedsSmax,
}

pub fn brute_spark(m: &SensingMatrix, smax: usize) -> Result<SparkBound, ConstructionError> {
    brute_spark_with_budget(m, smax, DEFAULT_SPARK_BUDGET)
}

/// Scans all column subsets of size 1..=smax for rank deficiency, smallest
/// size first, so the returned size is the spark whenever one is found. A
/// singular value below 1e-9 sqrt(N) counts as zero.
pub fn brute_spark_with_budget(
    m: &SensingMatrix,
    smax: usize,
    budget: u64,
) -> Result<SparkBound, ConstructionError> {
    let cols = m.cols();
    let tol = 1e-9 * (cols as f64).sqrt();
    let mut examined = 0u64;
    for s in 1..=smax.min(cols) {
        if s > m.n() {
            // More columns than rows are always dependent, and every
            // smaller subset was just checked and found independent.
            return Ok(SparkBound::Exact(s));
        }
        let mut subset: Vec<usize> = (0..s).collect();
        loop {
            examined += 1;
            if examined > budget {
                return Err(ConstructionError::SparkBudgetExceeded { examined, reached: s - 1 });
            }
            let sub = m.entries().select_columns(subset.iter());
            let smallest = sub.singular_values().iter().copied().fold(f64::INFINITY, f64::min);
            if smallest <= tol {
                return Ok(SparkBound::Exact(s));
            }
            if !next_combination(&mut subset, cols) {
                break;
            }
        }
    }
    Ok(SparkBound::ExceedsSmax)
}

/// Splits a nullvector into two vectors with disjoint supports and near-equal
/// sparsity. Both halves map to the same image (up to sign), so neither can
/// be distinguished from the other by measurements: sparse recovery at
/// ceil(s/2) is impossible.
pub fn split_nonrecoverable(
    m: &SensingMatrix,
    nullvec: &DVector<Complex64>,
) -> Result<(DVector<Complex64>, DVector<Complex64>), ConstructionError> {
    let image = m.apply(nullvec);
    let residual = image.iter().map(|e| e.norm()).fold(0.0f64, f64::max);
    if residual > NULLVECTOR_TOL {
        return Err(ConstructionError::NotANullvector { residual });
    }
    let peak = nullvec.iter().map(|e| e.norm()).fold(0.0f64, f64::max);
    if peak == 0.0 {
        return Err(ConstructionError::ZeroVector);
    }
    let support: Vec<usize> =
        (0..nullvec.len()).filter(|&i| nullvec[i].norm() > 1e-14 * peak).collect();
    let half = support.len() / 2;
    let mut m1 = DVector::from_element(nullvec.len(), Complex64::ZERO);
    let mut m2 = DVector::from_element(nullvec.len(), Complex64::ZERO);
    for (pos, &i) in support.iter().enumerate() {
        if pos < half {
            m1[i] = nullvec[i];
        } else {
            m2[i] = -nullvec[i];
        }
    }
    // m1 + (-m2) = nullvec, so Phi m1 = Phi m2.
    Ok((m1, m2))
}

/// Sparsity levels with a certificate attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuaranteeBounds {
    /// Every vector of at most this sparsity is the unique sparsest
    /// preimage of its measurements (from the coherence bound).
    pub t_guaranteed: usize,
    /// Some vector of this sparsity is certifiably not recoverable,
    /// witnessed by a concrete nullvector split. None when the matrix has
    /// fewer than two points.
    pub t_impossible: Option<usize>,
}

/// Searches for any 3-point arc: three points whose pairwise blocks are
/// three distinct blocks.
pub fn find_arc(m: &SensingMatrix) -> Option<[usize; 3]> {
    let points = m.point_count();
    for p1 in 0..points {
        for p2 in (p1 + 1)..points {
            let shared_12 = shared_rows(m, p1, p2);
            if shared_12.len() != 1 {
                continue;
            }
            for p3 in (p2 + 1)..points {
                let shared_13 = shared_rows(m, p1, p3);
                let shared_23 = shared_rows(m, p2, p3);
                if shared_13.len() == 1
                    && shared_23.len() == 1
                    && shared_12[0] != shared_13[0]
                    && shared_12[0] != shared_23[0]
                    && shared_13[0] != shared_23[0]
                {
                    return Some([p1, p2, p3]);
                }
            }
        }
    }
    None
}

/// The guaranteed sparsity ceil(sqrt(n)/4) from the coherence bound, and
/// the smallest impossible sparsity certified by the available nullvector
/// witnesses (point pairs always; arcs when replication and Hadamard
/// structure permit).
pub fn recovery_guarantee_bounds(m: &SensingMatrix) -> GuaranteeBounds {
    let t_guaranteed = ((m.n() as f64).sqrt() / 4.0).ceil() as usize;
    let t_guaranteed = t_guaranteed.max(1);
    let mut witness_sparsity: Option<usize> = None;
    if m.point_count() >= 2 {
        let mut reps: Vec<usize> = (0..m.point_count()).map(|p| m.replication(p)).collect();
        reps.sort_unstable();
        witness_sparsity = Some(reps[0] + reps[1]);
        if let Some(r) = m.equireplication() {
            let all_real = (0..m.point_count()).all(|p| m.hadamard(p).is_real());
            if r % 4 == 0 && all_real && find_arc(m).is_some() {
                let arc_sparsity = 3 * r / 2;
                witness_sparsity = Some(witness_sparsity.unwrap().min(arc_sparsity));
            }
        }
    }
    GuaranteeBounds { t_guaranteed, t_impossible: witness_sparsity.map(|s| s.div_ceil(2)) }
}
