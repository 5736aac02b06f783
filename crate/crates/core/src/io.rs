//! Plain-text persistence for designs, Hadamard blocks, sensing matrices,
//! vectors, decoding results, and experiment tables.
//!
//! Every format is line-oriented with a self-describing header. Floats are
//! written with Rust's shortest round-trip formatting, so save followed by
//! load reproduces the exact bit pattern and a second save is byte
//! identical to the first. Parsers are strict: wrong counts, unknown keys,
//! and malformed numbers fail with the offending line number.
//!
//! Files are replaced atomically (write to a sibling temp file, then
//! rename), so a crash mid-write never leaves a truncated artifact.

use std::fs;
use std::io;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::construction::{ConstructionError, RealSensingMatrix, SensingMatrix};
use crate::design::{Design, DesignError};
use crate::experiments::{NoiseTableResult, SpectrumResult, SweepResult};
use crate::hadamard::{HadamardError, HadamardKind, HadamardMatrix};
use crate::recovery::{Estimate, RecoveryResult, RecoveryStatus};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

fn perr(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

/// Value of a `key=value` token, or an error naming the expectation.
fn kv<'a>(token: Option<&'a str>, key: &str, line: usize) -> Result<&'a str, IoError> {
    let token = token.ok_or_else(|| perr(line, format!("missing {key}=<value>")))?;
    match token.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => Err(perr(line, format!("expected {key}=<value>, found {token:?}"))),
    }
}

fn parse_usize(s: &str, line: usize, what: &str) -> Result<usize, IoError> {
    s.parse().map_err(|_| perr(line, format!("invalid {what}: {s:?}")))
}

fn parse_f64(s: &str, line: usize) -> Result<f64, IoError> {
    s.parse().map_err(|_| perr(line, format!("invalid number: {s:?}")))
}

fn parse_index_list(s: &str, line: usize, what: &str) -> Result<Vec<usize>, IoError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|tok| parse_usize(tok, line, what)).collect()
}

fn float_row(values: impl Iterator<Item = f64>) -> String {
    let mut out = String::new();
    for (i, v) in values.enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&v.to_string());
    }
    out
}

fn parse_float_row(s: &str, expected: usize, line: usize) -> Result<Vec<f64>, IoError> {
    let values: Result<Vec<f64>, IoError> =
        s.split(',').map(|tok| parse_f64(tok.trim(), line)).collect();
    let values = values?;
    if values.len() != expected {
        return Err(perr(line, format!("expected {expected} values, found {}", values.len())));
    }
    Ok(values)
}

fn complex_row(values: impl Iterator<Item = Complex64>) -> String {
    float_row(values.flat_map(|c| [c.re, c.im]))
}

fn parse_complex_row(s: &str, expected: usize, line: usize) -> Result<Vec<Complex64>, IoError> {
    let flat = parse_float_row(s, 2 * expected, line)?;
    Ok(flat.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect())
}

// ---------------------------------------------------------------------------
// Designs

pub fn design_to_string(d: &Design) -> String {
    let mut out = format!("pbd v={} lambda={}\n", d.v(), d.lambda());
    for block in d.blocks() {
        let mut first = true;
        for &p in block {
            if !first {
                out.push(' ');
            }
            out.push_str(&p.to_string());
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn design_from_str(text: &str) -> Result<Design, IoError> {
    let mut lines = text.lines().enumerate();
    let (idx, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let line = idx + 1;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("pbd") {
        return Err(perr(line, "expected header starting with 'pbd'"));
    }
    let v = parse_usize(kv(tokens.next(), "v", line)?, line, "point count")?;
    let lambda = parse_usize(kv(tokens.next(), "lambda", line)?, line, "lambda")?;
    if lambda != 1 {
        return Err(perr(line, format!("only lambda=1 designs are supported, found {lambda}")));
    }
    let mut blocks = Vec::new();
    for (idx, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        let block: Result<Vec<usize>, IoError> =
            text.split_whitespace().map(|tok| parse_usize(tok, idx + 1, "point index")).collect();
        blocks.push(block?);
    }
    Ok(Design::new(v, blocks)?)
}

// ---------------------------------------------------------------------------
// Hadamard matrices

pub fn hadamard_to_string(h: &HadamardMatrix) -> String {
    let r = h.order();
    let mut out = format!("hadamard r={} kind={}\n", r, h.kind().name());
    for k in 0..r {
        out.push_str(&complex_row((0..r).map(|l| h.entry(k, l))));
        out.push('\n');
    }
    out
}

pub fn hadamard_from_str(text: &str) -> Result<HadamardMatrix, IoError> {
    let mut lines = text.lines().enumerate();
    let (idx, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let line = idx + 1;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("hadamard") {
        return Err(perr(line, "expected header starting with 'hadamard'"));
    }
    let r = parse_usize(kv(tokens.next(), "r", line)?, line, "order")?;
    let kind_name = kv(tokens.next(), "kind", line)?;
    let kind = HadamardKind::from_name(kind_name)
        .ok_or_else(|| perr(line, format!("unknown Hadamard kind {kind_name:?}")))?;
    let mut rows = Vec::with_capacity(r);
    for (idx, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        rows.push(parse_complex_row(text, r, idx + 1)?);
    }
    if rows.len() != r {
        return Err(perr(1, format!("expected {r} rows, found {}", rows.len())));
    }
    let entries = DMatrix::from_fn(r, r, |i, j| rows[i][j]);
    Ok(HadamardMatrix::with_kind(entries, kind)?)
}

// ---------------------------------------------------------------------------
// Sensing matrices

pub fn matrix_to_string(m: &SensingMatrix) -> String {
    let mut out = format!("csmatrix n={} N={}\n", m.n(), m.cols());
    for row in 0..m.n() {
        out.push_str(&complex_row((0..m.cols()).map(|col| m.entries()[(row, col)])));
        out.push('\n');
    }
    for p in 0..m.point_count() {
        let cols = m.point_cols(p);
        let rows: Vec<String> = m.point_rows(p).iter().map(|r| r.to_string()).collect();
        let hadrows: Vec<String> = m.had_rows(p).iter().map(|k| k.to_string()).collect();
        out.push_str(&format!(
            "point {} kind={} cols={}..{} rows={} hadrows={}\n",
            p,
            m.hadamard(p).kind().name(),
            cols.start,
            cols.end,
            rows.join(","),
            hadrows.join(","),
        ));
    }
    out
}

pub fn matrix_from_str(text: &str) -> Result<SensingMatrix, IoError> {
    let mut lines = text.lines().enumerate();
    let (idx, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let line = idx + 1;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("csmatrix") {
        return Err(perr(line, "expected header starting with 'csmatrix'"));
    }
    let n = parse_usize(kv(tokens.next(), "n", line)?, line, "row count")?;
    let big_n = parse_usize(kv(tokens.next(), "N", line)?, line, "column count")?;
    let mut entry_rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (idx, text) =
            lines.next().ok_or_else(|| perr(n + 1, "missing matrix rows".to_string()))?;
        entry_rows.push(parse_complex_row(text, big_n, idx + 1)?);
    }
    let entries = DMatrix::from_fn(n, big_n, |i, j| entry_rows[i][j]);

    let mut point_cols = Vec::new();
    let mut point_rows = Vec::new();
    let mut had_row_at = Vec::new();
    let mut kinds = Vec::new();
    for (idx, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        let line = idx + 1;
        let mut tokens = text.split_whitespace();
        if tokens.next() != Some("point") {
            return Err(perr(line, "expected a 'point' metadata line"));
        }
        let index = parse_usize(
            tokens.next().ok_or_else(|| perr(line, "missing point index"))?,
            line,
            "point index",
        )?;
        if index != point_cols.len() {
            return Err(perr(line, format!("point lines out of order: expected {}", point_cols.len())));
        }
        let kind_name = kv(tokens.next(), "kind", line)?;
        let kind = HadamardKind::from_name(kind_name)
            .ok_or_else(|| perr(line, format!("unknown Hadamard kind {kind_name:?}")))?;
        let cols_tok = kv(tokens.next(), "cols", line)?;
        let (start, end) = cols_tok
            .split_once("..")
            .ok_or_else(|| perr(line, format!("expected cols=<start>..<end>, found {cols_tok:?}")))?;
        let start = parse_usize(start, line, "column range start")?;
        let end = parse_usize(end, line, "column range end")?;
        let rows = parse_index_list(kv(tokens.next(), "rows", line)?, line, "row index")?;
        let hadrows = parse_index_list(kv(tokens.next(), "hadrows", line)?, line, "Hadamard row")?;
        point_cols.push(start..end);
        point_rows.push(rows);
        had_row_at.push(hadrows);
        kinds.push(kind);
    }

    // Rebuild each Hadamard block from the placed entries: the stored
    // matrix holds H / sqrt(r), so scaling back by sqrt(r) recovers it.
    let mut hadamards = Vec::with_capacity(point_cols.len());
    for p in 0..point_cols.len() {
        let cols = point_cols[p].clone();
        let r = cols.end.saturating_sub(cols.start);
        if point_rows[p].len() != r || had_row_at[p].len() != r {
            return Err(perr(
                1,
                format!("point {p} metadata does not match its column range width {r}"),
            ));
        }
        if point_rows[p].iter().any(|&row| row >= n) || cols.end > big_n {
            return Err(perr(1, format!("point {p} references rows or columns out of range")));
        }
        let scale = (r as f64).sqrt();
        let mut h = DMatrix::from_element(r, r, Complex64::ZERO);
        for (pos, &row) in point_rows[p].iter().enumerate() {
            let k = had_row_at[p][pos];
            if k >= r {
                return Err(perr(1, format!("point {p} has a Hadamard row index out of range")));
            }
            for l in 0..r {
                h[(k, l)] = entries[(row, cols.start + l)] * scale;
            }
        }
        hadamards.push(HadamardMatrix::with_kind(h, kinds[p])?);
    }
    Ok(SensingMatrix::from_parts(entries, point_cols, point_rows, had_row_at, hadamards)?)
}

// ---------------------------------------------------------------------------
// Realified matrices

pub fn real_matrix_to_string(m: &RealSensingMatrix) -> String {
    let mut out = format!("csmatrix-real rows={} cols={}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        out.push_str(&float_row((0..m.cols()).map(|j| m.entries()[(i, j)])));
        out.push('\n');
    }
    out
}

pub fn real_matrix_from_str(text: &str) -> Result<RealSensingMatrix, IoError> {
    let mut lines = text.lines().enumerate();
    let (idx, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let line = idx + 1;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("csmatrix-real") {
        return Err(perr(line, "expected header starting with 'csmatrix-real'"));
    }
    let rows = parse_usize(kv(tokens.next(), "rows", line)?, line, "row count")?;
    let cols = parse_usize(kv(tokens.next(), "cols", line)?, line, "column count")?;
    let mut data = Vec::with_capacity(rows);
    for (idx, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        data.push(parse_float_row(text, cols, idx + 1)?);
    }
    if data.len() != rows {
        return Err(perr(1, format!("expected {rows} rows, found {}", data.len())));
    }
    let entries = DMatrix::from_fn(rows, cols, |i, j| data[i][j]);
    Ok(RealSensingMatrix::from_entries(entries)?)
}

// ---------------------------------------------------------------------------
// Vectors

pub fn real_vector_to_string(v: &DVector<f64>) -> String {
    let mut out = format!("vector-real len={}\n", v.len());
    for x in v.iter() {
        out.push_str(&x.to_string());
        out.push('\n');
    }
    out
}

pub fn real_vector_from_str(text: &str) -> Result<DVector<f64>, IoError> {
    let mut lines = text.lines().enumerate();
    let (idx, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let line = idx + 1;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("vector-real") {
        return Err(perr(line, "expected header starting with 'vector-real'"));
    }
    let len = parse_usize(kv(tokens.next(), "len", line)?, line, "length")?;
    let mut values = Vec::with_capacity(len);
    for (idx, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        values.push(parse_f64(text.trim(), idx + 1)?);
    }
    if values.len() != len {
        return Err(perr(1, format!("expected {len} values, found {}", values.len())));
    }
    Ok(DVector::from_vec(values))
}

pub fn complex_vector_to_string(v: &DVector<Complex64>) -> String {
    let mut out = format!("vector-complex len={}\n", v.len());
    for x in v.iter() {
        out.push_str(&format!("{},{}\n", x.re, x.im));
    }
    out
}

pub fn complex_vector_from_str(text: &str) -> Result<DVector<Complex64>, IoError> {
    let mut lines = text.lines().enumerate();
    let (idx, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let line = idx + 1;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("vector-complex") {
        return Err(perr(line, "expected header starting with 'vector-complex'"));
    }
    let len = parse_usize(kv(tokens.next(), "len", line)?, line, "length")?;
    let mut values = Vec::with_capacity(len);
    for (idx, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        let pair = parse_float_row(text, 2, idx + 1)?;
        values.push(Complex64::new(pair[0], pair[1]));
    }
    if values.len() != len {
        return Err(perr(1, format!("expected {len} values, found {}", values.len())));
    }
    Ok(DVector::from_vec(values))
}

// ---------------------------------------------------------------------------
// Recovery results

pub fn status_name(s: RecoveryStatus) -> &'static str {
    match s {
        RecoveryStatus::Converged => "converged",
        RecoveryStatus::MaxIterations => "maxIterations",
        RecoveryStatus::SingularSystem => "singularSystem",
        RecoveryStatus::Infeasible => "infeasible",
    }
}

pub fn status_from_name(name: &str) -> Option<RecoveryStatus> {
    match name {
        "converged" => Some(RecoveryStatus::Converged),
        "maxIterations" => Some(RecoveryStatus::MaxIterations),
        "singularSystem" => Some(RecoveryStatus::SingularSystem),
        "infeasible" => Some(RecoveryStatus::Infeasible),
        _ => None,
    }
}

pub fn recovery_result_to_string(r: &RecoveryResult) -> String {
    let kind = match &r.estimate {
        Estimate::Real(_) => "real",
        Estimate::Complex(_) => "complex",
    };
    let mut out = format!("recovery-result kind={} len={}\n", kind, r.estimate.len());
    out.push_str(&format!("status={}\n", status_name(r.status)));
    out.push_str(&format!("iterations={}\n", r.iterations));
    out.push_str(&format!("residualNorm={}\n", r.residual_norm));
    out.push_str(&format!("elapsedSeconds={}\n", r.elapsed_seconds));
    out.push_str(&format!("columnsNormalized={}\n", r.columns_normalized));
    match &r.estimate {
        Estimate::Real(v) => {
            for x in v.iter() {
                out.push_str(&x.to_string());
                out.push('\n');
            }
        }
        Estimate::Complex(v) => {
            for x in v.iter() {
                out.push_str(&format!("{},{}\n", x.re, x.im));
            }
        }
    }
    out
}

pub fn recovery_result_from_str(text: &str) -> Result<RecoveryResult, IoError> {
    let mut lines = text.lines().enumerate();
    let (idx, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let line = idx + 1;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("recovery-result") {
        return Err(perr(line, "expected header starting with 'recovery-result'"));
    }
    let kind = kv(tokens.next(), "kind", line)?.to_string();
    let len = parse_usize(kv(tokens.next(), "len", line)?, line, "length")?;

    let mut field = |key: &str| -> Result<(usize, String), IoError> {
        let (idx, text) = lines
            .next()
            .ok_or_else(|| perr(line, format!("missing field {key}")))?;
        let line = idx + 1;
        match text.split_once('=') {
            Some((k, v)) if k == key => Ok((line, v.to_string())),
            _ => Err(perr(line, format!("expected {key}=<value>"))),
        }
    };
    let (sl, status_text) = field("status")?;
    let status = status_from_name(&status_text)
        .ok_or_else(|| perr(sl, format!("unknown status {status_text:?}")))?;
    let (il, iter_text) = field("iterations")?;
    let iterations = parse_usize(&iter_text, il, "iteration count")?;
    let (rl, res_text) = field("residualNorm")?;
    let residual_norm = parse_f64(&res_text, rl)?;
    let (el, elapsed_text) = field("elapsedSeconds")?;
    let elapsed_seconds = parse_f64(&elapsed_text, el)?;
    let (cl, cn_text) = field("columnsNormalized")?;
    let columns_normalized = match cn_text.as_str() {
        "true" => true,
        "false" => false,
        other => return Err(perr(cl, format!("expected true or false, found {other:?}"))),
    };

    let mut value_lines = Vec::with_capacity(len);
    for (idx, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        value_lines.push((idx + 1, text));
    }
    if value_lines.len() != len {
        return Err(perr(1, format!("expected {len} values, found {}", value_lines.len())));
    }
    let estimate = match kind.as_str() {
        "real" => {
            let mut values = Vec::with_capacity(len);
            for (line, text) in value_lines {
                values.push(parse_f64(text.trim(), line)?);
            }
            Estimate::Real(DVector::from_vec(values))
        }
        "complex" => {
            let mut values = Vec::with_capacity(len);
            for (line, text) in value_lines {
                let pair = parse_float_row(text, 2, line)?;
                values.push(Complex64::new(pair[0], pair[1]));
            }
            Estimate::Complex(DVector::from_vec(values))
        }
        other => return Err(perr(line, format!("unknown estimate kind {other:?}"))),
    };
    Ok(RecoveryResult {
        estimate,
        iterations,
        residual_norm,
        status,
        elapsed_seconds,
        columns_normalized,
    })
}

// ---------------------------------------------------------------------------
// Experiment tables

pub fn sweep_to_csv(r: &SweepResult) -> String {
    let mut out = format!(
        "# seed={} trials={} epsilon={}\n",
        r.master_seed, r.trials, r.epsilon
    );
    out.push_str("sparsity,trials,successes,failures,mean_error,mean_residual\n");
    for row in &r.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.sparsity, row.trials, row.successes, row.failures, row.mean_error, row.mean_residual
        ));
    }
    out
}

/// Wall-clock side channel for a sweep. Not deterministic; written as a
/// separate file so the main table stays byte-reproducible.
pub fn sweep_timings_to_csv(r: &SweepResult) -> String {
    let mut out = String::from("sparsity,mean_elapsed_seconds\n");
    for row in &r.rows {
        out.push_str(&format!("{},{}\n", row.sparsity, row.mean_elapsed_seconds));
    }
    out
}

pub fn rate_to_csv(r: &SweepResult) -> String {
    let mut out = format!(
        "# seed={} trials={} epsilon={}\n",
        r.master_seed, r.trials, r.epsilon
    );
    out.push_str("sparsity,success_rate\n");
    for row in &r.rows {
        let rate = if row.trials > 0 { row.successes as f64 / row.trials as f64 } else { 0.0 };
        out.push_str(&format!("{},{}\n", row.sparsity, rate));
    }
    out
}

pub fn noise_table_to_csv(r: &NoiseTableResult) -> String {
    let mut out = format!(
        "# seed={} trials={} epsilon={}\n",
        r.master_seed, r.trials, r.epsilon
    );
    out.push_str("sparsity,noise_l2,trials,successes,failures,mean_error,mean_residual\n");
    for row in &r.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.sparsity,
            row.noise_l2,
            row.trials,
            row.successes,
            row.failures,
            row.mean_error,
            row.mean_residual
        ));
    }
    out
}

pub fn noise_table_timings_to_csv(r: &NoiseTableResult) -> String {
    let mut out = String::from("sparsity,noise_l2,mean_elapsed_seconds\n");
    for row in &r.rows {
        out.push_str(&format!("{},{},{}\n", row.sparsity, row.noise_l2, row.mean_elapsed_seconds));
    }
    out
}

pub fn spectrum_to_csv(r: &SpectrumResult) -> String {
    let mut out = format!("# seed={} t={} trials={}\n", r.master_seed, r.t, r.trials);
    out.push_str(&format!(
        "# min_eigenvalue={} max_eigenvalue={} max_deviation={}\n",
        r.min_eigenvalue, r.max_eigenvalue, r.max_deviation
    ));
    out.push_str("trial,min_eigenvalue,max_eigenvalue,deviation\n");
    for row in &r.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.trial, row.min_eigenvalue, row.max_eigenvalue, row.deviation
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Files

/// Writes through a sibling temp file and renames over the target, so
/// readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

pub fn save_design(path: &Path, d: &Design) -> Result<(), IoError> {
    Ok(write_atomic(path, &design_to_string(d))?)
}

pub fn load_design(path: &Path) -> Result<Design, IoError> {
    design_from_str(&fs::read_to_string(path)?)
}

pub fn save_hadamard(path: &Path, h: &HadamardMatrix) -> Result<(), IoError> {
    Ok(write_atomic(path, &hadamard_to_string(h))?)
}

pub fn load_hadamard(path: &Path) -> Result<HadamardMatrix, IoError> {
    hadamard_from_str(&fs::read_to_string(path)?)
}

pub fn save_matrix(path: &Path, m: &SensingMatrix) -> Result<(), IoError> {
    Ok(write_atomic(path, &matrix_to_string(m))?)
}

pub fn load_matrix(path: &Path) -> Result<SensingMatrix, IoError> {
    matrix_from_str(&fs::read_to_string(path)?)
}

pub fn save_real_matrix(path: &Path, m: &RealSensingMatrix) -> Result<(), IoError> {
    Ok(write_atomic(path, &real_matrix_to_string(m))?)
}

pub fn load_real_matrix(path: &Path) -> Result<RealSensingMatrix, IoError> {
    real_matrix_from_str(&fs::read_to_string(path)?)
}

pub fn save_real_vector(path: &Path, v: &DVector<f64>) -> Result<(), IoError> {
    Ok(write_atomic(path, &real_vector_to_string(v))?)
}

pub fn load_real_vector(path: &Path) -> Result<DVector<f64>, IoError> {
    real_vector_from_str(&fs::read_to_string(path)?)
}

pub fn save_complex_vector(path: &Path, v: &DVector<Complex64>) -> Result<(), IoError> {
    Ok(write_atomic(path, &complex_vector_to_string(v))?)
}

pub fn load_complex_vector(path: &Path) -> Result<DVector<Complex64>, IoError> {
    complex_vector_from_str(&fs::read_to_string(path)?)
}

pub fn save_recovery_result(path: &Path, r: &RecoveryResult) -> Result<(), IoError> {
    Ok(write_atomic(path, &recovery_result_to_string(r))?)
}

pub fn load_recovery_result(path: &Path) -> Result<RecoveryResult, IoError> {
    recovery_result_from_str(&fs::read_to_string(path)?)
}
