//! The compressed overlap index.
//!
//! Construction takes the full trie with failure links, marks the
//! nodes that spell an overlap between words of the set, and rebuilds
//! only those nodes as a path-compressed tree: the words, every node
//! on a failure chain from a word leaf, and the root. The result keeps
//! a LOUDS topology (level-order ids), a failure-link array, a depth
//! array (string lengths, since compressed arcs span several letters)
//! and the word-to-leaf mapping.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{BitBuf, RankSelectBitVector};
use crate::louds::LoudsTree;
use crate::trie::{FailureArray, Trie};
use crate::words::WordSet;
use crate::{NodeId, OverlapIndex, NO_NODE};

/// Marked trie nodes: the root, the word leaves, and every node on a
/// failure chain from a word leaf.
#[derive(Debug, Clone)]
pub struct MarkArray {
    bits: BitBuf,
}

impl MarkArray {
    #[inline]
    pub fn is_marked(&self, v: NodeId) -> bool {
        self.bits.get(v as usize)
    }

    /// Number of marked nodes.
    pub fn count(&self) -> usize {
        self.bits.count_ones()
    }

    pub(crate) fn bits(&self) -> &BitBuf {
        &self.bits
    }
}

/// Mark every trie node that participates in an overlap: each word
/// leaf, then its failure chain until the first already-marked node.
/// The root is marked up front, so chains stop there at the latest and
/// every node is visited at most once.
pub fn mark_overlap_nodes(trie: &Trie, fail: &FailureArray) -> MarkArray {
    let mut bits = BitBuf::zeros(trie.node_count() + 1);
    bits.set(1, true);
    for &leaf in trie.word_leaves() {
        let mut v = leaf;
        while !bits.get(v as usize) {
            bits.set(v as usize, true);
            v = fail.get(v);
        }
    }
    MarkArray { bits }
}

/// Structural defect found while assembling an index from parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexDataError(pub &'static str);

impl core::fmt::Display for IndexDataError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "invalid index data: {}", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for IndexDataError {}

/// The compressed overlap index.
///
/// Node ids are 1-based level-order ranks of the compacted tree.
/// Leaves are exactly the word nodes; every internal non-root node is
/// an overlap of at least one ordered word pair. Immutable after
/// construction and safe for concurrent queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoviIndex {
    topology: LoudsTree,
    /// Failure links; index 0 unused, root entry 0.
    failure: Vec<NodeId>,
    /// Node depths in characters; index 0 unused.
    depths: Vec<u32>,
    /// Word id -> leaf node id.
    word_leaf: Vec<NodeId>,
    /// (leaf node id, word id), sorted by node id.
    leaf_word: Vec<(NodeId, u32)>,
    words: WordSet,
}

/// Build the compressed index over the marked nodes.
///
/// One pass over the trie arrays (depth-first order) records each
/// marked node's nearest marked proper ancestor; a counting sort by
/// tree level then yields breadth-first ids, from which the LOUDS
/// bitmap, depth array and remapped failure links are emitted.
pub fn build_covi(
    trie: &Trie,
    fail: &FailureArray,
    marks: &MarkArray,
    words: WordSet,
) -> CoviIndex {
    let n = trie.node_count();
    debug_assert!(marks.is_marked(1), "root is always marked");
    // Pass 1: preorder scan. Nodes sit in depth-first order, so the
    // ancestor path can be maintained with a frame stack; each frame
    // carries the nearest marked ancestor-or-self as a dense id.
    let mut dense_trie: Vec<NodeId> = Vec::new();
    let mut dense_parent: Vec<u32> = Vec::new();
    let mut dense_depth: Vec<u32> = Vec::new();
    let mut dense_level: Vec<u32> = Vec::new();
    let mut frames: Vec<(NodeId, u32)> = Vec::with_capacity(64);
    for v in 1..=n as NodeId {
        if v > 1 {
            let prev = v - 1;
            if trie.is_leaf(prev) {
                // the walk continues at the pending neighbour of some
                // node on the path; everything below it is finished
                loop {
                    let f = frames.pop().expect("depth-first layout");
                    if trie.neighbour(f.0) == v {
                        break;
                    }
                }
            } else {
                debug_assert_eq!(prev + 1, v, "first child is adjacent");
            }
        }
        let depth = frames.len() as u32;
        let anc = frames.last().map(|f| f.1).unwrap_or(0);
        let ctx = if marks.is_marked(v) {
            let d = dense_trie.len() as u32;
            dense_trie.push(v);
            dense_depth.push(depth);
            if v == 1 {
                dense_parent.push(0);
                dense_level.push(0);
            } else {
                dense_parent.push(anc);
                dense_level.push(dense_level[anc as usize] + 1);
            }
            d
        } else {
            anc
        };
        frames.push((v, ctx));
    }
    let m = dense_trie.len();

    // Pass 2: breadth-first ids by stable counting sort on the level.
    // Within a level, depth-first order equals breadth-first order.
    let max_level = *dense_level.iter().max().expect("root exists") as usize;
    let mut level_start = vec![0u32; max_level + 2];
    for &l in &dense_level {
        level_start[l as usize + 1] += 1;
    }
    for l in 0..=max_level {
        level_start[l + 1] += level_start[l];
    }
    let mut bfs_of_dense = vec![0u32; m];
    let mut dense_of_bfs = vec![0u32; m];
    let mut cursor = level_start;
    for d in 0..m {
        let b = cursor[dense_level[d] as usize];
        cursor[dense_level[d] as usize] += 1;
        bfs_of_dense[d] = b;
        dense_of_bfs[b as usize] = d as u32;
    }

    // Pass 3: emit the components in breadth-first order.
    let mut degree = vec![0u32; m];
    for d in 1..m {
        degree[dense_parent[d] as usize] += 1;
    }
    let mut louds_bits = BitBuf::with_capacity(2 * m);
    let mut depths = vec![0u32; m + 1];
    for b in 0..m {
        let d = dense_of_bfs[b] as usize;
        louds_bits.push_repeated(false, degree[d] as usize);
        louds_bits.push(true);
        depths[b + 1] = dense_depth[d];
    }
    let topology =
        LoudsTree::from_buf(louds_bits, m).expect("compaction emits a well-formed tree");

    // Remap failure links and the word mapping through the rank of the
    // mark bitmap (trie id -> dense id) and the level sort.
    let mark_rank = RankSelectBitVector::from_buf(marks.bits().clone());
    let dense_of_trie = |v: NodeId| -> u32 {
        debug_assert!(mark_rank.bit_at(v as usize + 1));
        (mark_rank.rank(true, v as usize + 1) - 1) as u32
    };
    let mut failure = vec![NO_NODE; m + 1];
    for d in 1..m {
        let v = dense_trie[d];
        let f = fail.get(v);
        failure[bfs_of_dense[d] as usize + 1] = (bfs_of_dense[dense_of_trie(f) as usize] + 1) as NodeId;
    }
    let p = words.word_count();
    let mut word_leaf = Vec::with_capacity(p);
    for w in 0..p {
        let d = dense_of_trie(trie.word_leaf(w));
        word_leaf.push((bfs_of_dense[d as usize] + 1) as NodeId);
    }
    let mut leaf_word: Vec<(NodeId, u32)> = word_leaf
        .iter()
        .enumerate()
        .map(|(w, &v)| (v, w as u32))
        .collect();
    leaf_word.sort_unstable();

    CoviIndex {
        topology,
        failure,
        depths,
        word_leaf,
        leaf_word,
        words,
    }
}

impl CoviIndex {
    /// Reassemble an index from its serialized components, checking
    /// the structural invariants.
    pub fn from_parts(
        topology: LoudsTree,
        failure: Vec<NodeId>,
        depths: Vec<u32>,
        word_leaf: Vec<NodeId>,
        words: WordSet,
    ) -> Result<Self, IndexDataError> {
        let m = topology.node_count();
        let p = words.word_count();
        if failure.len() != m + 1 || depths.len() != m + 1 {
            return Err(IndexDataError("array lengths do not match the node count"));
        }
        if word_leaf.len() != p {
            return Err(IndexDataError("word map length does not match the word count"));
        }
        if failure[1] != NO_NODE || depths[1] != 0 {
            return Err(IndexDataError("root must have null failure link and depth 0"));
        }
        for v in 2..=m {
            let f = failure[v] as usize;
            if f < 1 || f > m {
                return Err(IndexDataError("failure link out of range"));
            }
            if depths[f] >= depths[v] {
                return Err(IndexDataError("failure link must strictly reduce depth"));
            }
            let parent = topology.parent(v as NodeId).expect("non-root") as usize;
            if depths[parent] >= depths[v] {
                return Err(IndexDataError("child depth must exceed parent depth"));
            }
        }
        let mut leaf_word: Vec<(NodeId, u32)> = Vec::with_capacity(p);
        for (w, &v) in word_leaf.iter().enumerate() {
            if v < 1 || v as usize > m {
                return Err(IndexDataError("word map entry out of range"));
            }
            if topology.degree(v) != 0 {
                return Err(IndexDataError("word map entry is not a leaf"));
            }
            if depths[v as usize] as usize != words.word_len(w) {
                return Err(IndexDataError("leaf depth does not match word length"));
            }
            leaf_word.push((v, w as u32));
        }
        leaf_word.sort_unstable();
        if leaf_word.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(IndexDataError("two words map to the same leaf"));
        }
        Ok(CoviIndex {
            topology,
            failure,
            depths,
            word_leaf,
            leaf_word,
            words,
        })
    }

    pub fn topology(&self) -> &LoudsTree {
        &self.topology
    }

    pub fn failure_links(&self) -> &[NodeId] {
        &self.failure
    }

    pub fn depth_array(&self) -> &[u32] {
        &self.depths
    }

    pub fn word_leaf_map(&self) -> &[NodeId] {
        &self.word_leaf
    }
}

impl OverlapIndex for CoviIndex {
    #[inline]
    fn node_count(&self) -> usize {
        self.topology.node_count()
    }

    #[inline]
    fn word_count(&self) -> usize {
        self.word_leaf.len()
    }

    #[inline]
    fn words(&self) -> &WordSet {
        &self.words
    }

    #[inline]
    fn parent(&self, v: NodeId) -> NodeId {
        self.topology.parent(v).expect("root has no parent")
    }

    #[inline]
    fn depth(&self, v: NodeId) -> u32 {
        self.depths[v as usize]
    }

    #[inline]
    fn failure(&self, v: NodeId) -> NodeId {
        self.failure[v as usize]
    }

    #[inline]
    fn word_leaf(&self, w: usize) -> NodeId {
        self.word_leaf[w]
    }

    fn leaf_word(&self, v: NodeId) -> Option<usize> {
        self.leaf_word
            .binary_search_by_key(&v, |&(node, _)| node)
            .ok()
            .map(|i| self.leaf_word[i].1 as usize)
    }
}
