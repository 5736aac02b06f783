//! Resolved run configurations.
//!
//! Every command that writes artifacts also writes a `<stem>.config.toml`
//! capturing its parameters after defaults were applied. Feeding that file
//! to `blocksense run` repeats the run; for the experiment commands the
//! repeat is byte identical (timing sidecars aside). Configs round-trip
//! losslessly through TOML, which the tests pin down.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum RunConfig {
    Build(BuildParams),
    Certify(CertifyParams),
    Recover(RecoverParams),
    Sweep(SweepParams),
    NoiseTable(NoiseTableParams),
    Spectrum(SpectrumParams),
    HadamardCheck(HadamardCheckParams),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildParams {
    pub source: String,
    pub param: u32,
    pub remove_oval: bool,
    pub remove_blocks: Vec<usize>,
    pub hadamard: String,
    pub realify: bool,
    /// Output directory.
    pub output: String,
    /// File stem for every artifact of this run.
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyParams {
    pub matrix: String,
    /// Largest subset size for the brute-force spark scan; 0 skips it.
    pub smax: usize,
    pub budget: u64,
    /// Point pair for the two-point witness; default picks the two points
    /// of smallest replication.
    pub points: Option<Vec<usize>>,
    pub output: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoverParams {
    pub matrix: String,
    pub algorithm: String,
    pub signal: Option<String>,
    pub samples: Option<String>,
    /// Atom budget for omp.
    pub sparsity: Option<usize>,
    /// Selection size for alg1; 0 means the smallest replication number.
    pub s_size: usize,
    pub tolerance: Option<f64>,
    pub max_iterations: Option<usize>,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    pub matrix: String,
    pub algorithm: String,
    pub sparsities: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub tolerance: Option<f64>,
    pub max_iterations: Option<usize>,
    pub values: String,
    pub value_lo: f64,
    pub value_hi: f64,
    pub random_signs: bool,
    pub normalize: bool,
    pub noise_kind: Option<String>,
    pub noise_l2: Option<f64>,
    pub burst_len: Option<usize>,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseTableParams {
    pub matrix: String,
    pub algorithm: String,
    pub sparsities: Vec<usize>,
    pub noise_levels: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub tolerance: Option<f64>,
    pub max_iterations: Option<usize>,
    pub values: String,
    pub value_lo: f64,
    pub value_hi: f64,
    pub random_signs: bool,
    pub normalize: bool,
    pub noise_kind: String,
    pub burst_len: Option<usize>,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumParams {
    pub matrix: String,
    pub t: usize,
    pub trials: usize,
    pub seed: u64,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HadamardCheckParams {
    pub file: Option<String>,
    pub order: Option<usize>,
    pub kind: Option<String>,
    pub u_max: Option<usize>,
    pub optimal_k: Option<usize>,
    pub output: Option<String>,
}

impl RunConfig {
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).context("serializing the run config")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).context("parsing the run config")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = self.to_toml()?;
        blocksense::io::write_atomic(path, &text)
            .with_context(|| format!("writing {}", path.display()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&text)
    }
}
