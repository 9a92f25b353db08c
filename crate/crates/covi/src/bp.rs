//! Balanced-parentheses tree encoding.
//!
//! A depth-first preorder walk writes a zero (opening parenthesis) on
//! first arrival at a node and a one (closing parenthesis) after its
//! subtree, so a tree of `m` nodes takes exactly `2m` bits. Node
//! identifiers are 1-based preorder ranks: the `j`-th zero is node `j`.
//!
//! Depth comes from parenthesis excess (`#zeros - #ones`), parent from
//! a backward excess search accelerated by two levels of per-block
//! minima, so no explicit depth or parent arrays are stored.

use alloc::vec::Vec;

use crate::bits::{self, BitBuf, RankSelectBitVector};
use crate::{NodeId, TreeError};

/// Bits per excess block.
const BLOCK_BITS: usize = 1024;
/// Blocks per chunk in the second-level minima.
const CHUNK_BLOCKS: usize = 64;

/// Succinct preorder tree supporting depth and parent navigation.
#[derive(Debug, Clone)]
pub struct BpTree {
    bits: RankSelectBitVector,
    node_count: usize,
    /// Minimum excess within each block of positions.
    block_min: Vec<i32>,
    /// Minimum of `block_min` over each chunk of blocks.
    chunk_min: Vec<i32>,
}

impl PartialEq for BpTree {
    fn eq(&self, other: &Self) -> bool {
        self.node_count == other.node_count && self.bits == other.bits
    }
}

impl Eq for BpTree {}

impl BpTree {
    /// Encode a tree given per-node child lists in preorder
    /// (`lists[v - 1]` holds the children of node `v`). Child ids must
    /// match the depth-first visit order.
    pub fn from_child_lists(lists: &[Vec<NodeId>]) -> Result<Self, TreeError> {
        let m = lists.len();
        if m == 0 {
            return Err(TreeError::Empty);
        }
        let mut bits = BitBuf::with_capacity(2 * m);
        bits.push(false);
        let mut stack: Vec<core::slice::Iter<NodeId>> = Vec::new();
        stack.push(lists[0].iter());
        let mut next_pre: u64 = 2;
        while let Some(top) = stack.last_mut() {
            match top.next() {
                Some(&c) => {
                    if c as u64 != next_pre || c as usize > m {
                        return Err(TreeError::Malformed(
                            "child ids must follow depth-first preorder",
                        ));
                    }
                    next_pre += 1;
                    bits.push(false);
                    stack.push(lists[c as usize - 1].iter());
                }
                None => {
                    bits.push(true);
                    stack.pop();
                }
            }
        }
        if next_pre != m as u64 + 1 {
            return Err(TreeError::Malformed("orphan nodes left over"));
        }
        Self::from_buf(bits, m)
    }

    /// Wrap a raw parenthesis sequence, validating balance: length
    /// `2m`, excess strictly positive before the final position, zero
    /// at the end.
    pub fn from_buf(bits: BitBuf, node_count: usize) -> Result<Self, TreeError> {
        let m = node_count;
        if m == 0 {
            return Err(TreeError::Empty);
        }
        if m > NodeId::MAX as usize {
            return Err(TreeError::TooManyNodes(m));
        }
        let n = bits.len();
        if n != 2 * m {
            return Err(TreeError::Malformed("bit length must be 2m"));
        }
        if n > i32::MAX as usize {
            return Err(TreeError::TooManyNodes(m));
        }
        let words = bits.words();
        let n_blocks = n.div_ceil(BLOCK_BITS);
        let mut block_min = Vec::with_capacity(n_blocks);
        let mut excess: i64 = 0;
        // interior minimum: over positions 1..n-1 the excess must stay
        // >= 1 for the sequence to describe a single tree
        let mut interior_min: i64 = i64::MAX;
        let mut last_block_entry: i64 = 0;
        for b in 0..n_blocks {
            let lo = b * BLOCK_BITS;
            let hi = (lo + BLOCK_BITS).min(n);
            if b == n_blocks - 1 {
                last_block_entry = excess;
            }
            let mut bmin: i64 = i64::MAX;
            let mut pos = lo;
            while pos < hi {
                if pos.is_multiple_of(64) && pos + 64 <= hi {
                    let w = words[pos / 64];
                    let wmin = excess + bits::word_min_prefix_excess(w);
                    if wmin < bmin {
                        bmin = wmin;
                    }
                    excess += bits::word_excess_delta(w);
                    pos += 64;
                } else {
                    excess += if bits.get(pos) { -1 } else { 1 };
                    if excess < bmin {
                        bmin = excess;
                    }
                    pos += 1;
                }
            }
            block_min.push(bmin as i32);
            if hi < n && bmin < interior_min {
                interior_min = bmin;
            }
        }
        if excess != 0 || block_min.iter().any(|&x| x < 0) {
            return Err(TreeError::Malformed("parentheses are not balanced"));
        }
        // the final block legitimately reaches excess 0 at the closing
        // root parenthesis; its interior must still stay above 0
        let last_lo = (n_blocks - 1) * BLOCK_BITS;
        let mut e = last_block_entry;
        for pos in last_lo..n - 1 {
            e += if bits.get(pos) { -1 } else { 1 };
            if e < interior_min {
                interior_min = e;
            }
        }
        if n > 2 && interior_min < 1 {
            return Err(TreeError::Malformed("sequence describes a forest"));
        }
        let bits = RankSelectBitVector::from_buf(bits);
        if bits.count(false) != m {
            return Err(TreeError::Malformed("zeros must number m"));
        }
        let mut chunk_min = Vec::with_capacity(n_blocks.div_ceil(CHUNK_BLOCKS));
        for chunk in block_min.chunks(CHUNK_BLOCKS) {
            chunk_min.push(*chunk.iter().min().expect("chunk is non-empty"));
        }
        Ok(BpTree {
            bits,
            node_count: m,
            block_min,
            chunk_min,
        })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn bits(&self) -> &RankSelectBitVector {
        &self.bits
    }

    /// Position of `v`'s opening parenthesis.
    #[inline]
    fn open_pos(&self, v: usize) -> usize {
        self.bits.select(false, v).expect("node id in range")
    }

    /// Excess after the 1-based prefix ending at `p` (0 for `p = 0`).
    #[inline]
    fn excess(&self, p: usize) -> i64 {
        p as i64 - 2 * self.bits.rank(true, p) as i64
    }

    /// Whether `v` has no children (its opening parenthesis closes
    /// immediately).
    #[inline]
    pub fn is_leaf(&self, v: NodeId) -> bool {
        let p = self.open_pos(v as usize);
        self.bits.bit_at(p + 1)
    }

    /// Depth of `v`; the root has depth 0.
    #[inline]
    pub fn depth(&self, v: NodeId) -> u32 {
        let v = v as usize;
        debug_assert!(v >= 1 && v <= self.node_count);
        let p = self.open_pos(v);
        (2 * v - p - 1) as u32
    }

    /// Parent of `v`; `None` at the root.
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        let v = v as usize;
        debug_assert!(v >= 1 && v <= self.node_count);
        if v == 1 {
            return None;
        }
        let p = self.open_pos(v);
        // the parent's opening parenthesis directly follows the
        // rightmost position whose excess is two below ours
        let target = (2 * v) as i64 - p as i64 - 2;
        let q = self.backward_excess_search(p, target);
        Some((self.bits.rank(false, q) + 1) as NodeId)
    }

    /// Rightmost position `q < p` with `excess(q) == target`; 0 names
    /// the empty prefix. Relies on the excess staying above `target`
    /// throughout `(q, p)`, which holds for the enclosing-parenthesis
    /// searches issued by [`BpTree::parent`].
    fn backward_excess_search(&self, p: usize, target: i64) -> usize {
        debug_assert!(target >= 0);
        let q = p - 1;
        if q == 0 {
            return 0;
        }
        let first_block = (q - 1) / BLOCK_BITS;
        let stop = first_block * BLOCK_BITS;
        if let Some(hit) = self.scan_back(q, stop, self.excess(q), target) {
            return hit;
        }
        let mut b = first_block;
        while b > 0 {
            b -= 1;
            if self.block_min[b] as i64 <= target {
                let top = (b + 1) * BLOCK_BITS;
                return self
                    .scan_back(top, b * BLOCK_BITS, self.excess(top), target)
                    .expect("block minimum guarantees a hit");
            }
            if b.is_multiple_of(CHUNK_BLOCKS) && b > 0 {
                // hop over chunks that never dip to the target
                let mut c = b / CHUNK_BLOCKS;
                while c > 0 && self.chunk_min[c - 1] as i64 > target {
                    c -= 1;
                }
                b = c * CHUNK_BLOCKS;
            }
        }
        0
    }

    /// Scan positions `from` down to `stop + 1` for excess `target`,
    /// given `e_from = excess(from)`. Skips whole words via suffix
    /// maxima when the target provably lies outside them.
    fn scan_back(&self, from: usize, stop: usize, e_from: i64, target: i64) -> Option<usize> {
        let words = self.bits.words();
        let mut q = from;
        let mut e = e_from;
        while q > stop {
            if q.is_multiple_of(64) && q >= stop + 64 {
                let w = words[q / 64 - 1];
                if e - bits::word_max_suffix_excess(w) > target {
                    e -= bits::word_excess_delta(w);
                    q -= 64;
                    continue;
                }
            }
            if e == target {
                return Some(q);
            }
            e += if self.bits.bit_at(q) { 1 } else { -1 };
            q -= 1;
        }
        None
    }
}
