//! Minimal array trie and Aho-Corasick failure links.
//!
//! The trie stores three per-node components: the letter connecting a
//! node to its parent, a leaf flag, and the right-neighbour node
//! index. Nodes are laid out in depth-first order with each non-leaf
//! node's first child in the adjacent array position, so no explicit
//! child pointers are needed. Inserting the (sorted) words in order
//! produces this layout directly.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitBuf;
use crate::words::WordSet;
use crate::{NodeId, NO_NODE};

/// Three-array trie over a word set. Node ids are 1-based array
/// positions in depth-first order; node 1 is the root.
#[derive(Debug, Clone)]
pub struct Trie {
    /// Letter on the arc from the parent; unused at the root.
    letter: Vec<u8>,
    /// Word leaves. Exactly one per word; leaves have no children.
    is_leaf: BitBuf,
    /// Right sibling, or 0.
    neighbour: Vec<NodeId>,
    /// Leaf node of each word, by word id.
    word_leaf: Vec<NodeId>,
}

/// Trie construction failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrieError {
    /// The word set needs more nodes than [`NodeId`] can address.
    TooManyNodes,
}

impl core::fmt::Display for TrieError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TrieError::TooManyNodes => {
                write!(f, "word set exceeds the node id width")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TrieError {}

impl Trie {
    /// Build the trie of `words`. Prefix-freeness and word validity
    /// are [`WordSet`] invariants, so only capacity can fail here.
    pub fn build(words: &WordSet) -> Result<Self, TrieError> {
        let mut letter: Vec<u8> = vec![0, 0]; // dummy slot + root
        let mut neighbour: Vec<NodeId> = vec![NO_NODE, NO_NODE];
        let mut is_leaf = BitBuf::zeros(2);
        let mut word_leaf: Vec<NodeId> = Vec::with_capacity(words.word_count());
        // current root path; one (node, youngest child) entry per depth
        let mut path: Vec<(NodeId, NodeId)> = vec![(1, NO_NODE)];
        let mut prev: &[u8] = b"";
        for w in words.iter() {
            let lcp = prev
                .iter()
                .zip(w.iter())
                .take_while(|(a, b)| a == b)
                .count();
            debug_assert!(lcp < w.len(), "word sets are prefix-free and deduplicated");
            path.truncate(lcp + 1);
            for &ch in &w[lcp..] {
                let id = letter.len();
                if id > NodeId::MAX as usize {
                    return Err(TrieError::TooManyNodes);
                }
                let id = id as NodeId;
                letter.push(ch);
                neighbour.push(NO_NODE);
                is_leaf.push(false);
                let (parent, youngest) = *path.last().expect("path holds the root");
                if youngest == NO_NODE {
                    debug_assert_eq!(id, parent + 1, "first child is adjacent");
                } else {
                    neighbour[youngest as usize] = id;
                }
                path.last_mut().expect("path holds the root").1 = id;
                path.push((id, NO_NODE));
            }
            let leaf = path.last().expect("word is non-empty").0;
            is_leaf.set(leaf as usize, true);
            word_leaf.push(leaf);
            prev = w;
        }
        Ok(Trie {
            letter,
            is_leaf,
            neighbour,
            word_leaf,
        })
    }

    /// Number of nodes, including the root.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.letter.len() - 1
    }

    #[inline]
    pub fn letter(&self, v: NodeId) -> u8 {
        self.letter[v as usize]
    }

    #[inline]
    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.is_leaf.get(v as usize)
    }

    #[inline]
    pub fn neighbour(&self, v: NodeId) -> NodeId {
        self.neighbour[v as usize]
    }

    /// First child of `v`, or 0. Non-leaf nodes keep their first child
    /// in the adjacent array position.
    #[inline]
    pub fn first_child(&self, v: NodeId) -> NodeId {
        if self.is_leaf(v) {
            NO_NODE
        } else {
            v + 1
        }
    }

    /// Children of `v` in sibling (letter) order.
    pub fn children(&self, v: NodeId) -> Children<'_> {
        Children {
            trie: self,
            next: self.first_child(v),
        }
    }

    /// Child of `v` along `letter`, or 0.
    pub fn child_by_letter(&self, v: NodeId, letter: u8) -> NodeId {
        let mut c = self.first_child(v);
        while c != NO_NODE {
            let l = self.letter(c);
            if l == letter {
                return c;
            }
            if l > letter {
                return NO_NODE;
            }
            c = self.neighbour(c);
        }
        NO_NODE
    }

    /// Leaf node of word `w`.
    #[inline]
    pub fn word_leaf(&self, w: usize) -> NodeId {
        self.word_leaf[w]
    }

    pub fn word_leaves(&self) -> &[NodeId] {
        &self.word_leaf
    }

    pub fn leaf_count(&self) -> usize {
        self.word_leaf.len()
    }
}

/// Iterator over a node's children.
pub struct Children<'a> {
    trie: &'a Trie,
    next: NodeId,
}

impl Iterator for Children<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        if self.next == NO_NODE {
            None
        } else {
            let c = self.next;
            self.next = self.trie.neighbour(c);
            Some(c)
        }
    }
}

/// Aho-Corasick failure links, one per trie node. The root's entry is
/// the null id; for every other node `fail[v]` is the node spelling
/// the longest proper suffix of `v`'s string present in the trie.
#[derive(Debug, Clone)]
pub struct FailureArray {
    fail: Vec<NodeId>,
}

impl FailureArray {
    #[inline]
    pub fn get(&self, v: NodeId) -> NodeId {
        self.fail[v as usize]
    }

    pub fn len(&self) -> usize {
        self.fail.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.fail.len() <= 1
    }
}

/// Compute failure links by the original level-wise algorithm:
/// children of the root fail to the root, every other node follows its
/// parent's failure chain until a node with a matching outgoing letter
/// turns up, falling back to the root.
pub fn compute_failure_links(trie: &Trie) -> FailureArray {
    let n = trie.node_count();
    let mut fail = vec![NO_NODE; n + 1];
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    let root: NodeId = 1;
    for c in trie.children(root) {
        fail[c as usize] = root;
        queue.push_back(c);
    }
    while let Some(v) = queue.pop_front() {
        for c in trie.children(v) {
            let a = trie.letter(c);
            let mut g = fail[v as usize];
            let target = loop {
                let t = trie.child_by_letter(g, a);
                if t != NO_NODE {
                    break t;
                }
                if g == root {
                    break root;
                }
                g = fail[g as usize];
            };
            fail[c as usize] = target;
            queue.push_back(c);
        }
    }
    FailureArray { fail }
}
