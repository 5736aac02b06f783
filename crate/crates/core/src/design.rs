//! Pairwise balanced designs with index one.
//!
//! A design here is a point set {0, .., v-1} together with a list of blocks
//! (subsets of points, size >= 2) such that every unordered pair of points
//! lies in exactly one block. Projective planes over prime fields and
//! Steiner triple systems are built directly; larger families come from
//! removing points or blocks from those. Validation is diagnostic rather
//! than panicking so that broken inputs can be inspected.

use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("q = {q} is not prime (divisible by {factor})")]
    NotPrime { q: u32, factor: u32 },
    #[error("q = {q} is too small for a projective plane")]
    OrderTooSmall { q: u32 },
    #[error("v = {v} is not admissible for a triple system (need v = 1 or 3 mod 6, v >= 3)")]
    InadmissibleTripleSystem { v: usize },
    #[error("no difference-triple pairing found for v = {v}")]
    PairingSearchFailed { v: usize },
    #[error("conic ovals need an odd prime order, got q = {q}")]
    EvenOrder { q: u32 },
    #[error("design has {v} points but the plane of order {q} needs {expected}")]
    NotAPlane { q: u32, v: usize, expected: usize },
    #[error("point index {index} is out of range for {v} points")]
    PointOutOfRange { index: usize, v: usize },
    #[error("block {block} repeats point {point}")]
    RepeatedPoint { block: usize, point: usize },
    #[error("block index {index} is out of range for {n} blocks")]
    BlockOutOfRange { index: usize, n: usize },
    #[error("block index {index} listed twice")]
    DuplicateBlockId { index: usize },
}

/// A block design on points 0..v with pair-coverage index one.
///
/// Blocks keep their construction order; points inside a block are kept
/// sorted. Replication numbers and the block-size profile are computed once
/// at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    v: usize,
    lambda: usize,
    blocks: Vec<Vec<usize>>,
    replication: Vec<usize>,
    block_sizes: BTreeSet<usize>,
}

impl Design {
    /// Wraps raw blocks over points 0..v. Rejects out-of-range and repeated
    /// point indices; pair coverage is not checked here, see
    /// [`validate_pbd`].
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for (bi, mut block) in blocks.into_iter().enumerate() {
            block.sort_unstable();
            for (i, &p) in block.iter().enumerate() {
                if p >= v {
                    return Err(DesignError::PointOutOfRange { index: p, v });
                }
                if i > 0 && block[i - 1] == p {
                    return Err(DesignError::RepeatedPoint { block: bi, point: p });
                }
            }
            sorted_blocks.push(block);
        }
        let mut replication = vec![0usize; v];
        let mut block_sizes = BTreeSet::new();
        for block in &sorted_blocks {
            block_sizes.insert(block.len());
            for &p in block {
                replication[p] += 1;
            }
        }
        Ok(Design { v, lambda: 1, blocks: sorted_blocks, replication, block_sizes })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Set of block sizes occurring in the design (K in design-theory
    /// notation).
    pub fn block_sizes(&self) -> &BTreeSet<usize> {
        &self.block_sizes
    }

    /// Number of blocks through each point.
    pub fn replication(&self) -> &[usize] {
        &self.replication
    }

    pub fn min_replication(&self) -> Option<usize> {
        self.replication.iter().copied().min()
    }

    /// The two smallest replication numbers, taken at distinct points.
    pub fn two_smallest_replications(&self) -> Option<(usize, usize)> {
        if self.v < 2 {
            return None;
        }
        let mut sorted = self.replication.clone();
        sorted.sort_unstable();
        Some((sorted[0], sorted[1]))
    }

    /// Total number of incidences: sum of replication numbers, equally the
    /// sum of block sizes. This is the column count of the sensing matrix
    /// built from the design.
    pub fn total_incidences(&self) -> usize {
        self.replication.iter().sum()
    }

    /// Blocks through each point, in ascending block-index order.
    pub fn point_blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.v];
        for (bi, block) in self.blocks.iter().enumerate() {
            for &p in block {
                out[p].push(bi);
            }
        }
        out
    }

    /// Index of the unique block containing both points, if any.
    pub fn common_block(&self, a: usize, b: usize) -> Option<usize> {
        self.blocks
            .iter()
            .position(|block| block.binary_search(&a).is_ok() && block.binary_search(&b).is_ok())
    }
}

/// A sorted set of distinct point indices, checked against a point count at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    indices: Vec<usize>,
}

impl PointSet {
    pub fn new(mut indices: Vec<usize>, v: usize) -> Result<Self, DesignError> {
        indices.sort_unstable();
        for (i, &p) in indices.iter().enumerate() {
            if p >= v {
                return Err(DesignError::PointOutOfRange { index: p, v });
            }
            if i > 0 && indices[i - 1] == p {
                return Err(DesignError::RepeatedPoint { block: 0, point: p });
            }
        }
        Ok(PointSet { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.indices.binary_search(&p).is_ok()
    }
}

fn smallest_factor(q: u32) -> Option<u32> {
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    None
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut result = 1u64;
    let mut base = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    result
}

fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// Scales a nonzero projective triple so its first nonzero coordinate is 1.
fn normalize_point(mut p: [u64; 3], q: u64) -> [u64; 3] {
    let lead = p.iter().copied().find(|&c| c != 0).expect("zero vector is not projective");
    let s = inv_mod(lead, q);
    for c in p.iter_mut() {
        *c = *c * s % q;
    }
    p
}

/// Canonical enumeration of the projective plane of order q: affine points
/// (1, a, b), then the line at infinity (0, 1, c), then (0, 0, 1).
fn plane_points(q: u64) -> (Vec<[u64; 3]>, HashMap<[u64; 3], usize>) {
    let mut points = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            points.push([1, a, b]);
        }
    }
    for c in 0..q {
        points.push([0, 1, c]);
    }
    points.push([0, 0, 1]);
    let lookup = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    (points, lookup)
}

/// The projective plane PG(2, q) for prime q, as a design whose blocks are
/// the lines. Every block has q + 1 points and every point lies on q + 1
/// lines.
pub fn projective_plane(q: u32) -> Result<Design, DesignError> {
    if q < 2 {
        return Err(DesignError::OrderTooSmall { q });
    }
    if let Some(factor) = smallest_factor(q) {
        return Err(DesignError::NotPrime { q, factor });
    }
    let qq = q as u64;
    let (points, _) = plane_points(qq);
    // Lines are indexed by the same normalized triples, acting as dual
    // vectors: the line l contains p when <l, p> = 0.
    let (lines, _) = plane_points(qq);
    let mut blocks = Vec::with_capacity(lines.len());
    for line in &lines {
        let mut block = Vec::with_capacity(q as usize + 1);
        for (pi, point) in points.iter().enumerate() {
            let dot = (line[0] * point[0] + line[1] * point[1] + line[2] * point[2]) % qq;
            if dot == 0 {
                block.push(pi);
            }
        }
        blocks.push(block);
    }
    Design::new(points.len(), blocks)
}

/// The conic {(t^2, t, 1)} plus the external point (1, 0, 0) in the plane of
/// odd prime order q: a (q + 1)-point oval, so no three of its points are
/// collinear.
pub fn find_conic_oval(plane: &Design, q: u32) -> Result<PointSet, DesignError> {
    if let Some(factor) = smallest_factor(q) {
        return Err(DesignError::NotPrime { q, factor });
    }
    if q.is_multiple_of(2) || q < 3 {
        return Err(DesignError::EvenOrder { q });
    }
    let expected = (q as usize) * (q as usize) + q as usize + 1;
    if plane.v() != expected || plane.block_count() != expected {
        return Err(DesignError::NotAPlane { q, v: plane.v(), expected });
    }
    let qq = q as u64;
    let (_, lookup) = plane_points(qq);
    let mut indices = Vec::with_capacity(q as usize + 1);
    for t in 0..qq {
        let p = normalize_point([t * t % qq, t, 1], qq);
        indices.push(lookup[&p]);
    }
    indices.push(lookup[&[1, 0, 0]]);
    PointSet::new(indices, plane.v())
}

/// Finds a Skolem pairing: positions {1..2n} (or {1..2n+1} minus 2n in the
/// hooked case) split into pairs with differences exactly 1..n. Returns
/// pairs indexed by difference - 1.
fn skolem_pairs(n: usize) -> Option<Vec<(usize, usize)>> {
    let hooked = n % 4 == 2 || n % 4 == 3;
    let top = if hooked { 2 * n + 1 } else { 2 * n };
    let mut used = vec![false; top + 1];
    if hooked {
        used[2 * n] = true;
    }
    let mut pairs = vec![(0usize, 0usize); n];
    // Largest difference first keeps the branching factor small.
    fn place(d: usize, top: usize, used: &mut [bool], pairs: &mut [(usize, usize)]) -> bool {
        if d == 0 {
            return true;
        }
        for s in 1..=top.saturating_sub(d) {
            if !used[s] && !used[s + d] {
                used[s] = true;
                used[s + d] = true;
                pairs[d - 1] = (s, s + d);
                if place(d - 1, top, used, pairs) {
                    return true;
                }
                used[s] = false;
                used[s + d] = false;
            }
        }
        false
    }
    if place(n, top, &mut used, &mut pairs) {
        Some(pairs)
    } else {
        None
    }
}

/// A Steiner triple system on v points, for v = 1 or 3 (mod 6), v >= 3.
///
/// v = 3 (mod 6) uses the Bose construction over an idempotent commutative
/// quasigroup; v = 1 (mod 6) develops difference triples obtained from a
/// Skolem (or hooked Skolem) pairing cyclically mod v.
pub fn steiner_triple_system(v: usize) -> Result<Design, DesignError> {
    if v < 3 || (v % 6 != 1 && v % 6 != 3) {
        return Err(DesignError::InadmissibleTripleSystem { v });
    }
    if v % 6 == 3 {
        let m = v / 3;
        let half = m.div_ceil(2);
        let idx = |x: usize, level: usize| x * 3 + level;
        let mut blocks = Vec::with_capacity(v * (v - 1) / 6);
        for x in 0..m {
            blocks.push(vec![idx(x, 0), idx(x, 1), idx(x, 2)]);
        }
        for level in 0..3 {
            for x in 0..m {
                for y in (x + 1)..m {
                    let z = (x + y) * half % m;
                    blocks.push(vec![idx(x, level), idx(y, level), idx(z, (level + 1) % 3)]);
                }
            }
        }
        Design::new(v, blocks)
    } else {
        let n = (v - 1) / 6;
        let pairs = skolem_pairs(n).ok_or(DesignError::PairingSearchFailed { v })?;
        // Difference triples (d, s+n, t+n) with d + (s+n) = t+n give base
        // blocks {0, d, t+n}; the cyclic shifts cover every difference
        // class exactly once.
        let mut blocks = Vec::with_capacity(n * v);
        for (d, &(_, t)) in pairs.iter().enumerate().map(|(i, p)| (i + 1, p)) {
            let c = t + n;
            for shift in 0..v {
                blocks.push(vec![shift, (d + shift) % v, (c + shift) % v]);
            }
        }
        Design::new(v, blocks)
    }
}

/// Result of deleting points from a design.
#[derive(Debug, Clone)]
pub struct PointRemoval {
    pub design: Design,
    /// Old point index to new index; None for removed points.
    pub old_to_new: Vec<Option<usize>>,
    /// Blocks dropped because fewer than two points survived.
    pub discarded_blocks: usize,
}

/// Deletes the given points, truncating every block and discarding blocks
/// left with fewer than two points. Pair coverage among survivors is
/// untouched, so a valid design stays valid.
pub fn remove_points(d: &Design, s: &PointSet) -> Result<PointRemoval, DesignError> {
    if let Some(&max) = s.indices().last() {
        if max >= d.v() {
            return Err(DesignError::PointOutOfRange { index: max, v: d.v() });
        }
    }
    let mut old_to_new = vec![None; d.v()];
    let mut next = 0usize;
    for (p, slot) in old_to_new.iter_mut().enumerate() {
        if !s.contains(p) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut blocks = Vec::with_capacity(d.block_count());
    let mut discarded = 0usize;
    for block in d.blocks() {
        let survivors: Vec<usize> = block.iter().filter_map(|&p| old_to_new[p]).collect();
        if survivors.len() >= 2 {
            blocks.push(survivors);
        } else {
            discarded += 1;
        }
    }
    Ok(PointRemoval { design: Design::new(next, blocks)?, old_to_new, discarded_blocks: discarded })
}

/// Result of deleting blocks together with all their points.
#[derive(Debug, Clone)]
pub struct BlockRemoval {
    pub design: Design,
    pub old_to_new: Vec<Option<usize>>,
    /// Points deleted because they lay on a removed block, in ascending
    /// order of old index.
    pub removed_points: Vec<usize>,
    pub discarded_blocks: usize,
}

/// Deletes the named blocks and every point incident to any of them, then
/// truncates the remaining blocks as in [`remove_points`].
pub fn remove_blocks_with_points(d: &Design, block_ids: &[usize]) -> Result<BlockRemoval, DesignError> {
    let mut seen = vec![false; d.block_count()];
    for &bi in block_ids {
        if bi >= d.block_count() {
            return Err(DesignError::BlockOutOfRange { index: bi, n: d.block_count() });
        }
        if seen[bi] {
            return Err(DesignError::DuplicateBlockId { index: bi });
        }
        seen[bi] = true;
    }
    let mut doomed = vec![false; d.v()];
    for &bi in block_ids {
        for &p in &d.blocks()[bi] {
            doomed[p] = true;
        }
    }
    let removed_points: Vec<usize> = (0..d.v()).filter(|&p| doomed[p]).collect();
    let mut old_to_new = vec![None; d.v()];
    let mut next = 0usize;
    for p in 0..d.v() {
        if !doomed[p] {
            old_to_new[p] = Some(next);
            next += 1;
        }
    }
    let mut blocks = Vec::new();
    let mut discarded = 0usize;
    for (bi, block) in d.blocks().iter().enumerate() {
        if seen[bi] {
            continue;
        }
        let survivors: Vec<usize> = block.iter().filter_map(|&p| old_to_new[p]).collect();
        if survivors.len() >= 2 {
            blocks.push(survivors);
        } else {
            discarded += 1;
        }
    }
    Ok(BlockRemoval {
        design: Design::new(next, blocks)?,
        old_to_new,
        removed_points,
        discarded_blocks: discarded,
    })
}

/// Diagnostic summary produced by [`validate_pbd`].
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// Pairs (a, b, count) whose coverage differs from one.
    pub pair_violations: Vec<(usize, usize, usize)>,
    /// Indices of blocks with fewer than two points.
    pub undersized_blocks: Vec<usize>,
    pub points: usize,
    pub block_count: usize,
    /// Sum of replication numbers.
    pub replication_sum: usize,
    /// Sum of block sizes; always equals `replication_sum` by double
    /// counting, reported separately as a cross-check.
    pub block_size_sum: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.pair_violations.is_empty() && self.undersized_blocks.is_empty()
    }

    /// True when the design has at least as many blocks as points, the
    /// Fisher-type relation satisfied by every nontrivial design here.
    pub fn has_fisher_bound(&self) -> bool {
        self.block_count >= self.points
    }
}

/// Checks pair coverage exhaustively and reports every violation instead of
/// failing fast.
pub fn validate_pbd(d: &Design) -> ValidationReport {
    let v = d.v();
    let mut counts = vec![0usize; v * v];
    for block in d.blocks() {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                counts[a * v + b] += 1;
            }
        }
    }
    let mut pair_violations = Vec::new();
    for a in 0..v {
        for b in (a + 1)..v {
            let c = counts[a * v + b];
            if c != d.lambda() {
                pair_violations.push((a, b, c));
            }
        }
    }
    let undersized_blocks =
        d.blocks().iter().enumerate().filter(|(_, b)| b.len() < 2).map(|(i, _)| i).collect();
    ValidationReport {
        pair_violations,
        undersized_blocks,
        points: v,
        block_count: d.block_count(),
        replication_sum: d.replication().iter().sum(),
        block_size_sum: d.blocks().iter().map(|b| b.len()).sum(),
    }
}
