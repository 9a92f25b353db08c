//! The overlap queries, written once against [`OverlapIndex`].
//!
//! All queries coordinate two kinds of walks: failure chains of the
//! word whose suffixes matter, and root paths of the word whose
//! prefixes matter. A node where the two walks meet spells an overlap,
//! and its depth is the overlap length.
//!
//! Semantics are proper overlaps only: lengths stay strictly below
//! both word lengths for distinct words (the walks start at
//! `failure(leaf)` and `parent(leaf)`, which structurally excludes
//! whole-word matches), and below the word length for a word with
//! itself. Correlation additionally sets its first bit for the trivial
//! full self-overlap, matching the autocorrelation convention.
//!
//! `max_ov` and `correlation` need no scratch and are unconditionally
//! safe to run concurrently. The batched queries take a
//! [`QueryScratch`], which is reset on entry; concurrent callers use
//! one scratch each.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitBuf;
use crate::{NodeId, OverlapIndex};

/// Memo value for "not computed yet".
const EMPTY: u32 = u32::MAX;

/// All overlap lengths of one word onto another, one bit per start
/// position. For `correlation(x, y)`, bit `i` (1-based, length `|x|`)
/// marks the overlap `x[i..] == y[..|x|-i+1]` of length `|x| - i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationVector {
    bits: BitBuf,
}

impl CorrelationVector {
    /// All-zero vector of `len` bits.
    pub fn zeros(len: usize) -> Self {
        CorrelationVector {
            bits: BitBuf::zeros(len),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at 1-based position `i`.
    #[inline]
    pub fn is_set(&self, i: usize) -> bool {
        self.bits.get(i - 1)
    }

    /// Record an overlap of length `k` (sets bit `len - k + 1`).
    pub fn set_overlap(&mut self, k: u32) {
        let len = self.len();
        debug_assert!(k >= 1 && k as usize <= len);
        self.bits.set(len - k as usize, true);
    }

    /// Overlap lengths in increasing order.
    pub fn overlap_lengths(&self) -> Vec<u32> {
        (1..=self.len())
            .rev()
            .filter(|&i| self.is_set(i))
            .map(|i| (self.len() - i + 1) as u32)
            .collect()
    }

    /// Longest recorded overlap, 0 if none.
    pub fn max_overlap(&self) -> u32 {
        (1..=self.len())
            .find(|&i| self.is_set(i))
            .map(|i| (self.len() - i + 1) as u32)
            .unwrap_or(0)
    }

    /// Number of distinct overlap lengths.
    pub fn count_overlaps(&self) -> usize {
        self.bits.count_ones()
    }
}

impl core::fmt::Display for CorrelationVector {
    /// Bit string with position 1 first, e.g. `101010`.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for i in 1..=self.len() {
            f.write_str(if self.is_set(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Reusable working memory for the batched queries, sized to one
/// index. Reset at the start of every query that uses it.
#[derive(Debug, Clone)]
pub struct QueryScratch {
    /// Per-node memo of resolved overlap lengths.
    memo: Vec<u32>,
    /// Nodes visited by the current climb, for back-propagation.
    stack: Vec<NodeId>,
}

impl QueryScratch {
    pub fn new(node_count: usize) -> Self {
        QueryScratch {
            memo: vec![EMPTY; node_count + 1],
            stack: Vec::new(),
        }
    }

    pub fn for_index<I: OverlapIndex>(idx: &I) -> Self {
        Self::new(idx.node_count())
    }

    fn check<I: OverlapIndex>(&self, idx: &I) -> Result<(), QueryError> {
        if self.memo.len() != idx.node_count() + 1 {
            return Err(QueryError::ScratchSizeMismatch {
                expected: idx.node_count(),
                got: self.memo.len() - 1,
            });
        }
        Ok(())
    }

    fn reset_memo(&mut self) {
        self.memo.fill(EMPTY);
    }
}

/// Query rejection reasons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryError {
    /// Word id past the word count.
    WordIdOutOfRange { id: usize, word_count: usize },
    /// Scratch was sized for a different index.
    ScratchSizeMismatch { expected: usize, got: usize },
    /// Threshold queries require `q >= 1`.
    ThresholdTooSmall,
}

impl core::fmt::Display for QueryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            QueryError::WordIdOutOfRange { id, word_count } => {
                write!(f, "word id {id} out of range (word count {word_count})")
            }
            QueryError::ScratchSizeMismatch { expected, got } => {
                write!(f, "scratch sized for {got} nodes, index has {expected}")
            }
            QueryError::ThresholdTooSmall => write!(f, "threshold must be at least 1"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for QueryError {}

/// Direction of the per-word array and threshold queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Overlaps of the argument word onto every word.
    Right,
    /// Overlaps of every word onto the argument word.
    Left,
}

fn check_word<I: OverlapIndex>(idx: &I, id: usize) -> Result<(), QueryError> {
    if id >= idx.word_count() {
        return Err(QueryError::WordIdOutOfRange {
            id,
            word_count: idx.word_count(),
        });
    }
    Ok(())
}

/// Length of the longest proper overlap of `x` onto `y`.
///
/// Walks `x`'s failure chain and `y`'s root path in lockstep, always
/// advancing the deeper side (ties advance the root path), and stops
/// at the first common node.
pub fn max_ov<I: OverlapIndex>(idx: &I, x: usize, y: usize) -> Result<u32, QueryError> {
    Ok(max_ov_with_steps(idx, x, y)?.0)
}

/// [`max_ov`] instrumented with the number of failure and parent moves
/// taken, for chain-length analysis.
pub fn max_ov_with_steps<I: OverlapIndex>(
    idx: &I,
    x: usize,
    y: usize,
) -> Result<(u32, usize), QueryError> {
    check_word(idx, x)?;
    check_word(idx, y)?;
    let mut nx = idx.failure(idx.word_leaf(x));
    let mut ny = idx.parent(idx.word_leaf(y));
    let mut steps = 0usize;
    loop {
        if nx == ny {
            return Ok((idx.depth(nx), steps));
        }
        steps += 1;
        if idx.depth(nx) > idx.depth(ny) {
            nx = idx.failure(nx);
        } else {
            ny = idx.parent(ny);
        }
    }
}

/// The correlation of `x` over `y`: every overlap length, not just the
/// longest. Same walk as [`max_ov`], continuing to the root and
/// recording each meeting depth; bit 1 marks `x == y`.
pub fn correlation<I: OverlapIndex>(
    idx: &I,
    x: usize,
    y: usize,
) -> Result<CorrelationVector, QueryError> {
    check_word(idx, x)?;
    check_word(idx, y)?;
    let leaf_x = idx.word_leaf(x);
    let mut c = CorrelationVector::zeros(idx.depth(leaf_x) as usize);
    if x == y {
        c.set_overlap(idx.depth(leaf_x));
    }
    let mut nx = idx.failure(leaf_x);
    let mut ny = idx.parent(idx.word_leaf(y));
    loop {
        if nx == ny {
            let d = idx.depth(nx);
            if d == 0 {
                return Ok(c);
            }
            c.set_overlap(d);
            nx = idx.failure(nx);
        } else if idx.depth(nx) > idx.depth(ny) {
            nx = idx.failure(nx);
        } else {
            ny = idx.parent(ny);
        }
    }
}

/// Longest overlaps of `x` onto every word: entry `z` equals
/// `max_ov(x, z)`.
///
/// Phase 1 stamps the depth of every node on `x`'s failure chain.
/// Phase 2 climbs each word's root path to the first stamped node and
/// back-propagates the answer, so the whole batch costs one pass over
/// the index plus one step per word.
pub fn all_right_ov<I: OverlapIndex>(
    idx: &I,
    x: usize,
    scratch: &mut QueryScratch,
) -> Result<Vec<u32>, QueryError> {
    check_word(idx, x)?;
    scratch.check(idx)?;
    scratch.reset_memo();
    let root = idx.root();
    let mut v = idx.failure(idx.word_leaf(x));
    while v != root {
        scratch.memo[v as usize] = idx.depth(v);
        v = idx.failure(v);
    }
    scratch.memo[root as usize] = 0;
    let p = idx.word_count();
    let mut out = Vec::with_capacity(p);
    for z in 0..p {
        let mut v = idx.parent(idx.word_leaf(z));
        scratch.stack.clear();
        while scratch.memo[v as usize] == EMPTY {
            scratch.stack.push(v);
            v = idx.parent(v);
        }
        let val = scratch.memo[v as usize];
        for &u in &scratch.stack {
            scratch.memo[u as usize] = val;
        }
        out.push(val);
    }
    Ok(out)
}

/// Longest overlaps of every word onto `y`: entry `z` equals
/// `max_ov(z, y)`. Mirror of [`all_right_ov`]: phase 1 stamps `y`'s
/// root path, phase 2 walks each word's failure chain.
pub fn all_left_ov<I: OverlapIndex>(
    idx: &I,
    y: usize,
    scratch: &mut QueryScratch,
) -> Result<Vec<u32>, QueryError> {
    check_word(idx, y)?;
    scratch.check(idx)?;
    scratch.reset_memo();
    let root = idx.root();
    let mut v = idx.parent(idx.word_leaf(y));
    while v != root {
        scratch.memo[v as usize] = idx.depth(v);
        v = idx.parent(v);
    }
    scratch.memo[root as usize] = 0;
    let p = idx.word_count();
    let mut out = Vec::with_capacity(p);
    for z in 0..p {
        let mut v = idx.failure(idx.word_leaf(z));
        scratch.stack.clear();
        while scratch.memo[v as usize] == EMPTY {
            scratch.stack.push(v);
            v = idx.failure(v);
        }
        let val = scratch.memo[v as usize];
        for &u in &scratch.stack {
            scratch.memo[u as usize] = val;
        }
        out.push(val);
    }
    Ok(out)
}

/// The longest overlap over all ordered pairs (self-pairs included),
/// with every word attaining it on the left side. Returns `(0, [])`
/// when the set has no overlaps at all. Needs no scratch and is safe
/// to run concurrently.
///
/// Each word walks its failure chain to the first non-leaf node: any
/// such node is an ancestor of some word leaf, hence a realized
/// overlap, while leaf-valued chain nodes are whole-word suffix
/// matches and carry no proper overlap. On the compressed index this
/// stop rule coincides with halting at nodes that parent a word leaf,
/// since every internal node there is an overlap of some pair.
pub fn global_max_ov<I: OverlapIndex>(idx: &I) -> Result<(u32, Vec<usize>), QueryError> {
    let root = idx.root();
    let p = idx.word_count();
    let mut best = 0u32;
    let mut answers: Vec<usize> = Vec::new();
    for y in 0..p {
        let mut v = idx.failure(idx.word_leaf(y));
        while v != root && idx.is_leaf(v) {
            v = idx.failure(v);
        }
        let d = idx.depth(v);
        if d > best {
            best = d;
            answers.clear();
            answers.push(y);
        } else if d == best && d > 0 {
            answers.push(y);
        }
    }
    Ok((best, answers))
}

/// Overlaps of length at least `q`: pairs `(z, l)` where `l` is the
/// longest overlap of `x` onto `z` (direction [`Direction::Right`]) or
/// of `z` onto `x` ([`Direction::Left`]) and `l >= q`.
///
/// Same scheme as the unthresholded arrays, but climbs abort as soon
/// as the depth drops below `q`, memoizing zero along aborted paths.
pub fn threshold_ov<I: OverlapIndex>(
    idx: &I,
    x: usize,
    q: u32,
    direction: Direction,
    scratch: &mut QueryScratch,
) -> Result<Vec<(usize, u32)>, QueryError> {
    if q < 1 {
        return Err(QueryError::ThresholdTooSmall);
    }
    check_word(idx, x)?;
    scratch.check(idx)?;
    scratch.reset_memo();
    let root = idx.root();
    match direction {
        Direction::Right => {
            let mut v = idx.failure(idx.word_leaf(x));
            while v != root {
                scratch.memo[v as usize] = idx.depth(v);
                v = idx.failure(v);
            }
        }
        Direction::Left => {
            let mut v = idx.parent(idx.word_leaf(x));
            while v != root {
                scratch.memo[v as usize] = idx.depth(v);
                v = idx.parent(v);
            }
        }
    }
    scratch.memo[root as usize] = 0;
    let p = idx.word_count();
    let mut out = Vec::new();
    for z in 0..p {
        let mut v = match direction {
            Direction::Right => idx.parent(idx.word_leaf(z)),
            Direction::Left => idx.failure(idx.word_leaf(z)),
        };
        scratch.stack.clear();
        let val = loop {
            let memo = scratch.memo[v as usize];
            if memo != EMPTY {
                break memo;
            }
            if idx.depth(v) < q {
                scratch.memo[v as usize] = 0;
                break 0;
            }
            scratch.stack.push(v);
            v = match direction {
                Direction::Right => idx.parent(v),
                Direction::Left => idx.failure(v),
            };
        };
        for &u in &scratch.stack {
            scratch.memo[u as usize] = val;
        }
        if val >= q {
            out.push((z, val));
        }
    }
    Ok(out)
}
