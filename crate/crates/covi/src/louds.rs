//! Level-order unary degree sequence tree encoding.
//!
//! For each node in breadth-first order the bitmap holds `deg(v)`
//! zeros followed by a single one; no super-root block is prepended.
//! A tree of `m` nodes therefore takes exactly `2m - 1` bits: `m - 1`
//! zeros (one per edge) and `m` ones. Node identifiers are 1-based
//! level-order ranks, the root being node 1, and the `k`-th zero of the
//! sequence corresponds to node `k + 1`.

use alloc::vec::Vec;

use crate::bits::{BitBuf, RankSelectBitVector};
use crate::{NodeId, TreeError};

/// Succinct tree supporting parent, child and degree navigation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoudsTree {
    bits: RankSelectBitVector,
    node_count: usize,
}

impl LoudsTree {
    /// Encode a tree given per-node child lists in level order
    /// (`lists[v - 1]` holds the children of node `v`).
    ///
    /// The lists must enumerate nodes `2..=m` exactly once, in order,
    /// and every node must be introduced no later than its own block
    /// (no cycles, no orphans).
    pub fn from_child_lists(lists: &[Vec<NodeId>]) -> Result<Self, TreeError> {
        let m = lists.len();
        if m == 0 {
            return Err(TreeError::Empty);
        }
        let mut next: u64 = 2;
        let mut introduced: u64 = 0;
        for (i, children) in lists.iter().enumerate() {
            for &c in children {
                if c as u64 != next {
                    return Err(TreeError::Malformed(
                        "child ids must enumerate nodes in level order",
                    ));
                }
                next += 1;
                introduced += 1;
            }
            // node i + 2 must already be someone's child before its
            // own block starts
            if i + 1 < m && introduced < (i + 1) as u64 {
                return Err(TreeError::Malformed(
                    "node block appears before the node is introduced",
                ));
            }
        }
        if next != m as u64 + 1 {
            return Err(TreeError::Malformed("orphan nodes left over"));
        }
        Self::from_degrees(lists.iter().map(|l| l.len()), m)
    }

    /// Encode from the level-order degree sequence. The caller asserts
    /// the sequence describes a tree; the bit-level checks of
    /// [`LoudsTree::from_buf`] still run.
    pub(crate) fn from_degrees(
        degrees: impl Iterator<Item = usize>,
        node_count: usize,
    ) -> Result<Self, TreeError> {
        let mut bits = BitBuf::with_capacity(2 * node_count);
        for d in degrees {
            bits.push_repeated(false, d);
            bits.push(true);
        }
        Self::from_buf(bits, node_count)
    }

    /// Wrap a raw bit sequence, validating shape: length `2m - 1`,
    /// `m - 1` zeros, and every node introduced before its block.
    pub fn from_buf(bits: BitBuf, node_count: usize) -> Result<Self, TreeError> {
        let m = node_count;
        if m == 0 {
            return Err(TreeError::Empty);
        }
        if m > NodeId::MAX as usize {
            return Err(TreeError::TooManyNodes(m));
        }
        if bits.len() != 2 * m - 1 {
            return Err(TreeError::Malformed("bit length must be 2m - 1"));
        }
        if !bits.get(bits.len() - 1) {
            return Err(TreeError::Malformed(
                "sequence must end with a block terminator",
            ));
        }
        // Zeros must never fall behind ones: with 0 counted +1 and 1
        // counted -1, the running excess stays >= 0 everywhere except
        // the final bit (which closes the m-th block at excess -1).
        let n = bits.len();
        let mut excess: i64 = 0;
        let mut min_excess: i64 = 0;
        let words = bits.words();
        let full_words = (n - 1) / 64;
        for &w in &words[..full_words] {
            let m_pref = excess + crate::bits::word_min_prefix_excess(w);
            if m_pref < min_excess {
                min_excess = m_pref;
            }
            excess += crate::bits::word_excess_delta(w);
        }
        for i in full_words * 64..n - 1 {
            excess += if bits.get(i) { -1 } else { 1 };
            if excess < min_excess {
                min_excess = excess;
            }
        }
        if min_excess < 0 {
            return Err(TreeError::Malformed(
                "node block appears before the node is introduced",
            ));
        }
        if excess != 0 {
            return Err(TreeError::Malformed("zeros must number m - 1"));
        }
        let bits = RankSelectBitVector::from_buf(bits);
        debug_assert_eq!(bits.count(true), m);
        Ok(LoudsTree {
            bits,
            node_count: m,
        })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn bits(&self) -> &RankSelectBitVector {
        &self.bits
    }

    /// End position of `v`'s unary block (its terminating one).
    #[inline]
    fn block_end(&self, v: usize) -> usize {
        self.bits.select(true, v).expect("node id in range")
    }

    /// Number of children of `v`.
    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        debug_assert!(v >= 1 && v <= self.node_count);
        let start = if v == 1 { 0 } else { self.block_end(v - 1) };
        self.block_end(v) - start - 1
    }

    /// `j`-th child of `v` (1-based), or `None` past the degree.
    pub fn child(&self, v: NodeId, j: usize) -> Option<NodeId> {
        let vu = v as usize;
        debug_assert!(vu >= 1 && vu <= self.node_count);
        if j == 0 {
            return None;
        }
        let start = if vu == 1 { 0 } else { self.block_end(vu - 1) };
        let degree = self.block_end(vu) - start - 1;
        if j > degree {
            return None;
        }
        // zeros strictly before v's block, plus j, name the child
        let zeros_before = start - (vu - 1);
        Some((zeros_before + j + 1) as NodeId)
    }

    /// Parent of `v`; `None` at the root.
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        let v = v as usize;
        debug_assert!(v >= 1 && v <= self.node_count);
        if v == 1 {
            return None;
        }
        // the (v - 1)-th zero lies inside the parent's block
        let pos = self
            .bits
            .select(false, v - 1)
            .expect("non-root node has an edge");
        Some((self.bits.rank(true, pos) + 1) as NodeId)
    }
}
