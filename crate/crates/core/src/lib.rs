//! Deterministic compressed sensing matrices from combinatorial block designs.
//!
//! The pipeline runs in three stages. [`design`] builds pairwise balanced
//! designs (projective planes, Steiner triple systems, and point/block
//! removals thereof). [`construction`] turns a design plus one complex
//! Hadamard matrix per point into a sensing matrix whose Gram structure is
//! known exactly, and certifies spark bounds with explicit nullvector
//! witnesses. [`recovery`] solves the resulting sparse linear systems by
//! orthogonal matching pursuit, basis pursuit (a self-contained
//! interior-point solver lives in [`lp`]), or a design-aware thresholding
//! decoder that never touches the dense matrix.
//!
//! [`experiments`] adds the simulation harness (seeded signal/noise models,
//! success-rate sweeps, Gram spectrum sampling) and [`io`] the text formats
//! used by the command line front end.
//!
//! All randomness flows through ChaCha12 generators seeded explicitly, so
//! every experiment is reproducible from its recorded configuration.

pub mod construction;
pub mod design;
pub mod experiments;
pub mod hadamard;
pub mod io;
pub mod lp;
pub mod recovery;
