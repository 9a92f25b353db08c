//! Randomized property suites: the succinct layer against naive
//! scans, both tree encodings against each other, the trie and
//! failure links against string brute force, and every query against
//! the oracle on both index structures.

use covi::oracle::{naive_correlation, naive_overlap_matrix};
use covi::queries::{
    all_left_ov, all_right_ov, correlation, global_max_ov, max_ov_with_steps, threshold_ov,
    Direction, QueryScratch,
};
use covi::{
    build_covi, build_fullac, compute_failure_links, mark_overlap_nodes, BpTree, CoviIndex,
    FullAcIndex, LoudsTree, NodeId, OverlapIndex, RankSelectBitVector, Trie, WordSet, NO_NODE,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, VecDeque};

// ---------------------------------------------------------------
// rank/select laws
// ---------------------------------------------------------------

proptest! {
    #[test]
    fn rank_select_match_naive(bits in proptest::collection::vec(any::<bool>(), 0..600)) {
        let bv = RankSelectBitVector::from_bits(bits.iter().copied());
        let mut ones = 0usize;
        let mut zeros = 0usize;
        for i in 1..=bits.len() {
            if bits[i - 1] { ones += 1 } else { zeros += 1 }
            prop_assert_eq!(bv.rank(true, i), ones);
            prop_assert_eq!(bv.rank(false, i), zeros);
            prop_assert_eq!(bv.rank(true, i) + bv.rank(false, i), i);
            let bit = bits[i - 1];
            let j = bv.rank(bit, i);
            prop_assert_eq!(bv.select(bit, j), Some(i));
        }
        prop_assert_eq!(bv.select(true, ones + 1), None);
        prop_assert_eq!(bv.select(false, zeros + 1), None);
    }
}

#[test]
fn rank_select_laws_hold_on_a_million_bits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let n = 1_000_000usize;
    let bits: Vec<bool> = (0..n).map(|_| rng.random_bool(0.37)).collect();
    let bv = RankSelectBitVector::from_bits(bits.iter().copied());
    let mut ones = 0usize;
    for i in 1..=n {
        if bits[i - 1] {
            ones += 1;
            assert_eq!(bv.select(true, ones), Some(i));
        }
        assert_eq!(bv.rank(true, i), ones);
    }
    assert_eq!(bv.rank(false, n), n - ones);
    // select positions round-trip through rank
    for j in (1..=ones).step_by(997) {
        let pos = bv.select(true, j).unwrap();
        assert_eq!(bv.rank(true, pos), j);
    }
    // auxiliary overhead stays within a quarter of the raw bits
    assert!(bv.aux_bits() * 4 <= n);
}

// ---------------------------------------------------------------
// tree encodings
// ---------------------------------------------------------------

/// Random tree as a parent vector (node 1 is the root, parents point
/// to smaller ids), with derived level-order and preorder numberings.
struct RandomTree {
    /// children, indexed by original id, in ascending order
    children: Vec<Vec<usize>>,
    parent: Vec<usize>,
    depth: Vec<u32>,
    bfs_of: Vec<usize>,
    pre_of: Vec<usize>,
}

fn random_tree(rng: &mut ChaCha8Rng, m: usize) -> RandomTree {
    let mut parent = vec![0usize; m + 1];
    let mut children = vec![Vec::new(); m + 1];
    let mut depth = vec![0u32; m + 1];
    for v in 2..=m {
        let p = rng.random_range(1..v);
        parent[v] = p;
        children[p].push(v);
        depth[v] = depth[p] + 1;
    }
    let mut bfs_of = vec![0usize; m + 1];
    let mut queue = VecDeque::from([1usize]);
    let mut next = 1usize;
    while let Some(v) = queue.pop_front() {
        bfs_of[v] = next;
        next += 1;
        queue.extend(children[v].iter().copied());
    }
    let mut pre_of = vec![0usize; m + 1];
    let mut stack = vec![1usize];
    let mut next = 1usize;
    while let Some(v) = stack.pop() {
        pre_of[v] = next;
        next += 1;
        stack.extend(children[v].iter().rev().copied());
    }
    RandomTree {
        children,
        parent,
        depth,
        bfs_of,
        pre_of,
    }
}

fn relabel(children: &[Vec<usize>], ids: &[usize], m: usize) -> Vec<Vec<NodeId>> {
    let mut inverse = vec![0usize; m + 1];
    for v in 1..=m {
        inverse[ids[v]] = v;
    }
    (1..=m)
        .map(|new_id| {
            let orig = inverse[new_id];
            let mut kids: Vec<NodeId> = children[orig].iter().map(|&c| ids[c] as NodeId).collect();
            kids.sort_unstable();
            kids
        })
        .collect()
}

#[test]
fn louds_and_bp_agree_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ee5);
    for round in 0..400 {
        let m = match round {
            0 => 1,
            1 => 2,
            r if r < 380 => rng.random_range(1..=64),
            r if r < 399 => rng.random_range(65..=1000),
            _ => 10_000,
        };
        let tree = random_tree(&mut rng, m);
        let louds = LoudsTree::from_child_lists(&relabel(&tree.children, &tree.bfs_of, m))
            .expect("valid level-order tree");
        let bp = BpTree::from_child_lists(&relabel(&tree.children, &tree.pre_of, m))
            .expect("valid preorder tree");
        assert_eq!(louds.bits().len(), 2 * m - 1, "LOUDS length");
        assert_eq!(bp.bits().len(), 2 * m, "BP length");
        assert_eq!(louds.node_count(), m);
        assert_eq!(bp.node_count(), m);
        for v in 1..=m {
            let lv = tree.bfs_of[v] as NodeId;
            let pv = tree.pre_of[v] as NodeId;
            assert_eq!(bp.depth(pv), tree.depth[v], "m={m} v={v}");
            if v == 1 {
                assert_eq!(louds.parent(lv), None);
                assert_eq!(bp.parent(pv), None);
            } else {
                // both encodings name the same parent under the
                // level-order/preorder bijection
                let p = tree.parent[v];
                assert_eq!(louds.parent(lv), Some(tree.bfs_of[p] as NodeId));
                assert_eq!(bp.parent(pv), Some(tree.pre_of[p] as NodeId));
                assert_eq!(bp.depth(pv), bp.depth(tree.pre_of[p] as NodeId) + 1);
            }
            assert_eq!(louds.degree(lv), tree.children[v].len());
            for (j, &c) in tree.children[v].iter().enumerate() {
                let child = louds.child(lv, j + 1).unwrap();
                assert_eq!(child, tree.bfs_of[c] as NodeId);
                assert_eq!(louds.parent(child), Some(lv));
            }
            assert_eq!(louds.child(lv, tree.children[v].len() + 1), None);
        }
    }
}

// ---------------------------------------------------------------
// word sets, tries, failure links
// ---------------------------------------------------------------

fn random_word_set(rng: &mut ChaCha8Rng, sigma: usize, max_p: usize) -> WordSet {
    let alphabet = b"abcdefghijklmnopqrst";
    let p = rng.random_range(1..=max_p);
    let mut words: Vec<Vec<u8>> = (0..p)
        .map(|_| {
            let len = rng.random_range(4..=12);
            (0..len)
                .map(|_| alphabet[rng.random_range(0..sigma)])
                .collect()
        })
        .collect();
    words.sort();
    words.dedup();
    // drop extensions so the set is prefix-free
    let mut kept: Vec<Vec<u8>> = Vec::new();
    for w in words {
        if kept.last().is_none_or(|last| !w.starts_with(last)) {
            kept.push(w);
        }
    }
    WordSet::new(kept).expect("generator yields valid sets")
}

/// Every trie node's string, by walking parent letters depth-first.
fn trie_strings(trie: &Trie) -> Vec<Vec<u8>> {
    let n = trie.node_count();
    let mut strings: Vec<Vec<u8>> = vec![Vec::new(); n + 1];
    let mut stack = vec![1 as NodeId];
    while let Some(v) = stack.pop() {
        for c in trie.children(v) {
            let mut s = strings[v as usize].clone();
            s.push(trie.letter(c));
            strings[c as usize] = s;
            stack.push(c);
        }
    }
    strings
}

#[test]
fn failure_links_name_longest_proper_suffix() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfa11);
    for round in 0..150 {
        let sigma = [2, 4, 20][round % 3];
        let ws = random_word_set(&mut rng, sigma, 50);
        let trie = Trie::build(&ws).unwrap();
        let fail = compute_failure_links(&trie);
        let strings = trie_strings(&trie);
        let nodes: BTreeSet<&[u8]> = strings[1..].iter().map(|s| s.as_slice()).collect();
        for v in 2..=trie.node_count() as NodeId {
            let s = &strings[v as usize];
            let expected: &[u8] = (1..s.len())
                .map(|k| &s[k..])
                .find(|suf| nodes.contains(suf))
                .unwrap_or(b"");
            assert_eq!(
                strings[fail.get(v) as usize].as_slice(),
                expected,
                "failure of {:?}",
                String::from_utf8_lossy(s)
            );
        }
        // trie node count is exactly the number of distinct prefixes
        // of the words, root included
        let mut prefixes: BTreeSet<Vec<u8>> = BTreeSet::new();
        for w in ws.iter() {
            for k in 1..=w.len() {
                prefixes.insert(w[..k].to_vec());
            }
        }
        assert_eq!(trie.node_count(), prefixes.len() + 1);
    }
}

#[test]
fn failure_targets_are_overlaps_onto_leaf_words() {
    // any leaf below a failure target spells a word the source node
    // overlaps
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e);
    for round in 0..30 {
        let sigma = [2, 4][round % 2];
        let ws = random_word_set(&mut rng, sigma, 20);
        let trie = Trie::build(&ws).unwrap();
        let fail = compute_failure_links(&trie);
        let strings = trie_strings(&trie);
        for v in 2..=trie.node_count() as NodeId {
            let r = fail.get(v);
            if r == 1 {
                continue;
            }
            let s = &strings[v as usize];
            let rs = &strings[r as usize];
            assert!(s.ends_with(rs) && rs.len() < s.len(), "proper suffix");
            // descend to any leaf under r
            let mut leaf = r;
            while let Some(c) = trie.children(leaf).next() {
                leaf = c;
            }
            assert!(strings[leaf as usize].starts_with(rs), "prefix of a word");
        }
    }
}

// ---------------------------------------------------------------
// marking and compaction
// ---------------------------------------------------------------

/// Distinct non-empty strings that are simultaneously a proper suffix
/// of some word and a prefix of some word, excluding whole words.
fn overlap_strings(ws: &WordSet) -> BTreeSet<Vec<u8>> {
    let mut prefixes: BTreeSet<&[u8]> = BTreeSet::new();
    for w in ws.iter() {
        for k in 1..=w.len() {
            prefixes.insert(&w[..k]);
        }
    }
    let mut out = BTreeSet::new();
    for u in ws.iter() {
        for k in 1..u.len() {
            let suffix = &u[u.len() - k..];
            if prefixes.contains(suffix) && ws.find(suffix).is_none() {
                out.insert(suffix.to_vec());
            }
        }
    }
    out
}

#[test]
fn marked_set_is_words_plus_overlaps_plus_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3a2b);
    for round in 0..150 {
        let sigma = [2, 4, 20][round % 3];
        let ws = random_word_set(&mut rng, sigma, 50);
        let trie = Trie::build(&ws).unwrap();
        let fail = compute_failure_links(&trie);
        let marks = mark_overlap_nodes(&trie, &fail);
        let strings = trie_strings(&trie);
        let mut expected = overlap_strings(&ws);
        expected.insert(Vec::new());
        for w in ws.iter() {
            expected.insert(w.to_vec());
        }
        let mut actual = BTreeSet::new();
        for v in 1..=trie.node_count() as NodeId {
            if marks.is_marked(v) {
                actual.insert(strings[v as usize].clone());
            }
        }
        assert_eq!(actual, expected, "sigma={sigma}");
        // compression is monotone: the compacted index never grows
        assert!(marks.count() <= trie.node_count());
        if marks.count() < trie.node_count() {
            let covi = build_covi(&trie, &fail, &marks, ws.clone());
            let fullac = build_fullac(&trie, &fail, ws.clone());
            assert!(covi.node_count() < fullac.node_count());
        }
    }
}

/// String of a compressed-index node: the first `depth(v)` characters
/// of any word below it (every node lies on a root path of a leaf).
fn covi_string(idx: &CoviIndex, v: NodeId) -> Vec<u8> {
    let mut node = v;
    while let Some(c) = idx.topology().child(node, 1) {
        node = c;
    }
    let word = idx.words().word(idx.leaf_word(node).expect("leaves are words"));
    word[..idx.depth(v) as usize].to_vec()
}

#[test]
fn covi_failure_links_point_to_proper_suffixes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5aff);
    for round in 0..60 {
        let sigma = [2, 4, 20][round % 3];
        let ws = random_word_set(&mut rng, sigma, 30);
        let trie = Trie::build(&ws).unwrap();
        let fail = compute_failure_links(&trie);
        let marks = mark_overlap_nodes(&trie, &fail);
        let covi = build_covi(&trie, &fail, &marks, ws);
        for v in 2..=covi.node_count() as NodeId {
            let s = covi_string(&covi, v);
            let f = covi.failure(v);
            assert_ne!(f, NO_NODE);
            let fs = covi_string(&covi, f);
            assert!(
                fs.len() < s.len() && s.ends_with(&fs),
                "failure string {:?} of {:?}",
                String::from_utf8_lossy(&fs),
                String::from_utf8_lossy(&s)
            );
            assert!(covi.depth(f) < covi.depth(v));
            let parent = covi.parent(v);
            assert!(covi.depth(parent) < covi.depth(v));
        }
        // leaves are exactly the words
        let leaves: Vec<NodeId> = (1..=covi.node_count() as NodeId)
            .filter(|&v| covi.topology().degree(v) == 0)
            .collect();
        assert_eq!(leaves.len(), covi.word_count());
        for v in leaves {
            assert!(covi.leaf_word(v).is_some());
        }
    }
}

// ---------------------------------------------------------------
// query equivalence against the oracle
// ---------------------------------------------------------------

fn build_both(ws: &WordSet) -> (CoviIndex, FullAcIndex) {
    let trie = Trie::build(ws).unwrap();
    let fail = compute_failure_links(&trie);
    let marks = mark_overlap_nodes(&trie, &fail);
    (
        build_covi(&trie, &fail, &marks, ws.clone()),
        build_fullac(&trie, &fail, ws.clone()),
    )
}

fn check_queries_against_oracle<I: OverlapIndex>(idx: &I, ws: &WordSet, matrix: &[Vec<u32>]) {
    let p = ws.word_count();
    let mut scratch = QueryScratch::for_index(idx);
    let max_len = ws.max_word_len() as u32;
    for x in 0..p {
        let row = all_right_ov(idx, x, &mut scratch).unwrap();
        assert_eq!(row, matrix[x], "all_right_ov({x})");
        let col = all_left_ov(idx, x, &mut scratch).unwrap();
        for z in 0..p {
            assert_eq!(col[z], matrix[z][x], "all_left_ov({x})[{z}]");
        }
        for y in 0..p {
            let (got, steps) = max_ov_with_steps(idx, x, y).unwrap();
            assert_eq!(got, matrix[x][y], "max_ov({x},{y})");
            assert!(steps <= ws.word_len(x) + ws.word_len(y), "chain bound");
            let c = correlation(idx, x, y).unwrap();
            assert_eq!(
                c,
                naive_correlation(ws.word(x), ws.word(y)),
                "correlation({x},{y})"
            );
            // coherence with max_ov for distinct words
            if x != y {
                assert_eq!(c.max_overlap(), matrix[x][y]);
            }
        }
        for q in [1, 2, max_len.max(1)] {
            let right = threshold_ov(idx, x, q, Direction::Right, &mut scratch).unwrap();
            let expect: Vec<(usize, u32)> = matrix[x]
                .iter()
                .enumerate()
                .filter(|&(_, &l)| l >= q)
                .map(|(z, &l)| (z, l))
                .collect();
            assert_eq!(right, expect, "threshold right x={x} q={q}");
            let left = threshold_ov(idx, x, q, Direction::Left, &mut scratch).unwrap();
            let expect: Vec<(usize, u32)> = (0..p)
                .filter(|&z| matrix[z][x] >= q)
                .map(|z| (z, matrix[z][x]))
                .collect();
            assert_eq!(left, expect, "threshold left x={x} q={q}");
        }
    }
    let best = matrix.iter().flatten().copied().max().unwrap_or(0);
    let winners: Vec<usize> = if best == 0 {
        Vec::new()
    } else {
        (0..p)
            .filter(|&x| matrix[x].iter().copied().max() == Some(best))
            .collect()
    };
    assert_eq!(global_max_ov(idx).unwrap(), (best, winners), "global_max_ov");
}

#[test]
fn queries_match_oracle_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c0de);
    for round in 0..120 {
        let sigma = [2, 4, 20][round % 3];
        let ws = random_word_set(&mut rng, sigma, 50);
        let (covi, fullac) = build_both(&ws);
        let matrix = naive_overlap_matrix(&ws);
        check_queries_against_oracle(&covi, &ws, &matrix);
        check_queries_against_oracle(&fullac, &ws, &matrix);
    }
}

#[test]
fn covi_walks_are_never_longer() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x57e9);
    for round in 0..40 {
        let sigma = [2, 4][round % 2];
        let ws = random_word_set(&mut rng, sigma, 30);
        let (covi, fullac) = build_both(&ws);
        for x in 0..ws.word_count() {
            for y in 0..ws.word_count() {
                let (lc, sc) = max_ov_with_steps(&covi, x, y).unwrap();
                let (lf, sf) = max_ov_with_steps(&fullac, x, y).unwrap();
                assert_eq!(lc, lf);
                assert!(sc <= sf, "covi steps {sc} vs full {sf}");
            }
        }
    }
}

#[test]
fn correlation_popcount_counts_overlap_lengths() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0a7);
    for _ in 0..40 {
        let ws = random_word_set(&mut rng, 2, 12);
        let (covi, _) = build_both(&ws);
        for x in 0..ws.word_count() {
            for y in 0..ws.word_count() {
                let c = correlation(&covi, x, y).unwrap();
                let naive = naive_correlation(ws.word(x), ws.word(y));
                assert_eq!(c.count_overlaps(), naive.count_overlaps());
                assert_eq!(c.overlap_lengths(), naive.overlap_lengths());
            }
        }
    }
}
