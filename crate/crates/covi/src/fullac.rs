//! Baseline index over the complete Aho-Corasick trie.
//!
//! Stores exactly the trie topology (balanced parentheses, preorder
//! ids), the failure link of every node, and the word-to-leaf mapping.
//! No letters and no depth array: depth comes from parenthesis excess.
//! Since the trie arrays are already laid out in depth-first order,
//! preorder ids coincide with trie ids and the failure links carry
//! over unchanged.

use alloc::vec::Vec;

use crate::bits::BitBuf;
use crate::bp::BpTree;
use crate::covi::IndexDataError;
use crate::trie::{FailureArray, Trie};
use crate::words::WordSet;
use crate::{NodeId, OverlapIndex, NO_NODE};

/// Full Aho-Corasick baseline index. Immutable after construction and
/// safe for concurrent queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullAcIndex {
    topology: BpTree,
    /// Failure links; index 0 unused, root entry 0.
    failure: Vec<NodeId>,
    /// Word id -> leaf node id.
    word_leaf: Vec<NodeId>,
    /// (leaf node id, word id), sorted by node id.
    leaf_word: Vec<(NodeId, u32)>,
    words: WordSet,
}

/// Encode the whole trie in balanced parentheses and carry the failure
/// links over.
pub fn build_fullac(trie: &Trie, fail: &FailureArray, words: WordSet) -> FullAcIndex {
    let n = trie.node_count();
    let mut bits = BitBuf::with_capacity(2 * n);
    // depth-first walk over the first-child/neighbour arrays; a frame
    // holds the next unvisited child
    let mut stack: Vec<NodeId> = Vec::with_capacity(64);
    bits.push(false);
    stack.push(trie.first_child(1));
    while let Some(next) = stack.last_mut() {
        if *next == NO_NODE {
            bits.push(true);
            stack.pop();
        } else {
            let c = *next;
            *next = trie.neighbour(c);
            bits.push(false);
            stack.push(trie.first_child(c));
        }
    }
    let topology = BpTree::from_buf(bits, n).expect("trie walk emits balanced parentheses");
    let mut failure = Vec::with_capacity(n + 1);
    failure.push(NO_NODE);
    for v in 1..=n as NodeId {
        failure.push(fail.get(v));
    }
    let word_leaf = trie.word_leaves().to_vec();
    let mut leaf_word: Vec<(NodeId, u32)> = word_leaf
        .iter()
        .enumerate()
        .map(|(w, &v)| (v, w as u32))
        .collect();
    leaf_word.sort_unstable();
    FullAcIndex {
        topology,
        failure,
        word_leaf,
        leaf_word,
        words,
    }
}

impl FullAcIndex {
    /// Reassemble an index from its serialized components, checking
    /// the structural invariants.
    pub fn from_parts(
        topology: BpTree,
        failure: Vec<NodeId>,
        word_leaf: Vec<NodeId>,
        words: WordSet,
    ) -> Result<Self, IndexDataError> {
        let n = topology.node_count();
        let p = words.word_count();
        if failure.len() != n + 1 {
            return Err(IndexDataError("array lengths do not match the node count"));
        }
        if word_leaf.len() != p {
            return Err(IndexDataError("word map length does not match the word count"));
        }
        if failure[1] != NO_NODE {
            return Err(IndexDataError("root must have a null failure link"));
        }
        for (v, &fv) in failure.iter().enumerate().skip(2) {
            let f = fv as usize;
            if f < 1 || f > n {
                return Err(IndexDataError("failure link out of range"));
            }
            if topology.depth(f as NodeId) >= topology.depth(v as NodeId) {
                return Err(IndexDataError("failure link must strictly reduce depth"));
            }
        }
        let mut leaf_word: Vec<(NodeId, u32)> = Vec::with_capacity(p);
        for (w, &v) in word_leaf.iter().enumerate() {
            if v < 1 || v as usize > n {
                return Err(IndexDataError("word map entry out of range"));
            }
            if topology.depth(v) as usize != words.word_len(w) {
                return Err(IndexDataError("leaf depth does not match word length"));
            }
            leaf_word.push((v, w as u32));
        }
        leaf_word.sort_unstable();
        if leaf_word.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(IndexDataError("two words map to the same leaf"));
        }
        Ok(FullAcIndex {
            topology,
            failure,
            word_leaf,
            leaf_word,
            words,
        })
    }

    pub fn topology(&self) -> &BpTree {
        &self.topology
    }

    pub fn failure_links(&self) -> &[NodeId] {
        &self.failure
    }

    pub fn word_leaf_map(&self) -> &[NodeId] {
        &self.word_leaf
    }
}

impl OverlapIndex for FullAcIndex {
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
        self.topology.depth(v)
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

    #[inline]
    fn is_leaf(&self, v: NodeId) -> bool {
        self.topology.is_leaf(v)
    }
}
