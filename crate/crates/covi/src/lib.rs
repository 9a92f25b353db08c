//! Compressed overlap index (COvI) for a set of words.
//!
//! Given a set `P` of words, this crate builds an index of every
//! suffix-prefix overlap between ordered pairs of `P` and answers seven
//! kinds of overlap queries on it: pairwise maximum overlap and
//! correlation vectors, the per-word overlap arrays in both directions,
//! the globally longest overlap, and thresholded variants of the
//! per-word arrays.
//!
//! The crate is `no_std` compatible (requires `alloc`); file formats,
//! timing, and the command-line front end live in the companion
//! `covi-tools` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bits;
pub mod bp;
pub mod covi;
pub mod fullac;
pub mod louds;
pub mod oracle;
pub mod queries;
pub mod trie;
pub mod words;

pub use bits::{BitBuf, RankSelectBitVector};
pub use bp::BpTree;
pub use covi::{build_covi, mark_overlap_nodes, CoviIndex, IndexDataError, MarkArray};
pub use fullac::{build_fullac, FullAcIndex};
pub use louds::LoudsTree;
pub use queries::{
    all_left_ov, all_right_ov, correlation, global_max_ov, max_ov, max_ov_with_steps,
    threshold_ov, CorrelationVector, Direction, QueryError, QueryScratch,
};
pub use trie::{compute_failure_links, FailureArray, Trie, TrieError};
pub use words::{WordSet, WordSetError};

/// Node identifier inside an index or trie. Identifiers are 1-based;
/// `0` is reserved as the null value (no parent, no failure target).
#[cfg(not(feature = "wide-ids"))]
pub type NodeId = u32;

/// Node identifier inside an index or trie. Identifiers are 1-based;
/// `0` is reserved as the null value (no parent, no failure target).
#[cfg(feature = "wide-ids")]
pub type NodeId = u64;

/// The null node id.
pub const NO_NODE: NodeId = 0;

/// Rejection reasons for the succinct tree constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    /// A tree must have at least one node.
    Empty,
    /// More nodes than [`NodeId`] can address.
    TooManyNodes(usize),
    /// The input does not describe a single rooted ordered tree.
    Malformed(&'static str),
}

impl core::fmt::Display for TreeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TreeError::Empty => write!(f, "tree has no nodes"),
            TreeError::TooManyNodes(m) => write!(f, "{m} nodes exceed the node id width"),
            TreeError::Malformed(what) => write!(f, "malformed tree: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TreeError {}

/// Navigation contract shared by [`CoviIndex`] and [`FullAcIndex`].
///
/// The query algorithms are written once against this trait; the only
/// behavioural difference between the two structures is how many nodes
/// the failure and parent chains traverse.
pub trait OverlapIndex {
    /// Number of nodes in the index tree.
    fn node_count(&self) -> usize;

    /// Number of indexed words.
    fn word_count(&self) -> usize;

    /// The indexed words, sorted and deduplicated.
    fn words(&self) -> &WordSet;

    /// Root node id (always 1).
    #[inline]
    fn root(&self) -> NodeId {
        1
    }

    /// Parent of `v` in the index tree. Must not be called on the root.
    fn parent(&self, v: NodeId) -> NodeId;

    /// Depth of `v` in characters (length of the string `v` spells).
    fn depth(&self, v: NodeId) -> u32;

    /// Failure link of `v`; [`NO_NODE`] at the root.
    fn failure(&self, v: NodeId) -> NodeId;

    /// Leaf node representing word `w`.
    fn word_leaf(&self, w: usize) -> NodeId;

    /// Word id of leaf `v`, if `v` is a word leaf.
    fn leaf_word(&self, v: NodeId) -> Option<usize>;

    /// Whether `v` is a leaf (equivalently, a word node).
    #[inline]
    fn is_leaf(&self, v: NodeId) -> bool {
        self.leaf_word(v).is_some()
    }
}
