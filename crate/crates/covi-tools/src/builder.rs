//! Timed index construction from raw word-file bytes.
//!
//! Construction breaks into the four steps the build report exposes:
//! parsing the word file and building the trie, computing failure
//! links, marking overlap nodes, and re-encoding the compacted tree.
//! The baseline shares the first two steps and replaces the last two
//! with the parenthesis encoding of the whole trie.

use std::time::{Duration, Instant};

use covi::{
    build_covi, build_fullac, compute_failure_links, mark_overlap_nodes, CoviIndex, FullAcIndex,
    OverlapIndex, Trie, TrieError, WordSet, WordSetError,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("invalid word file: {0}")]
    Words(#[from] WordSetError),
    #[error("trie construction failed: {0}")]
    Trie(#[from] TrieError),
}

/// A built compressed index with its per-step wall-clock timings.
#[derive(Debug)]
pub struct CoviBuild {
    pub index: CoviIndex,
    pub trie_nodes: usize,
    pub t_trie: Duration,
    pub t_fail: Duration,
    pub t_mark: Duration,
    pub t_rebuild: Duration,
}

impl CoviBuild {
    pub fn total(&self) -> Duration {
        self.t_trie + self.t_fail + self.t_mark + self.t_rebuild
    }

    /// Share of the total build spent turning the automaton into the
    /// compressed index (marking plus re-encoding).
    pub fn transform_fraction(&self) -> f64 {
        (self.t_mark + self.t_rebuild).as_secs_f64() / self.total().as_secs_f64().max(1e-12)
    }

    /// Compressed nodes over full trie nodes.
    pub fn kept_ratio(&self) -> f64 {
        self.index.node_count() as f64 / self.trie_nodes as f64
    }
}

/// A built baseline index with its per-step wall-clock timings.
#[derive(Debug)]
pub struct FullAcBuild {
    pub index: FullAcIndex,
    pub trie_nodes: usize,
    pub t_trie: Duration,
    pub t_fail: Duration,
    pub t_encode: Duration,
}

impl FullAcBuild {
    pub fn total(&self) -> Duration {
        self.t_trie + self.t_fail + self.t_encode
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn prepare(bytes: &[u8]) -> Result<(WordSet, Trie, covi::FailureArray, Duration, Duration), BuildError> {
    let start = Instant::now();
    let words = WordSet::from_separated_bytes(bytes)?;
    let trie = Trie::build(&words)?;
    let t_trie = start.elapsed();
    let (fail, t_fail) = timed(|| compute_failure_links(&trie));
    Ok((words, trie, fail, t_trie, t_fail))
}

/// Parse a word file and build the compressed index, timing each step.
pub fn build_covi_from_bytes(bytes: &[u8]) -> Result<CoviBuild, BuildError> {
    let (words, trie, fail, t_trie, t_fail) = prepare(bytes)?;
    let (marks, t_mark) = timed(|| mark_overlap_nodes(&trie, &fail));
    let trie_nodes = trie.node_count();
    let (index, t_rebuild) = timed(|| build_covi(&trie, &fail, &marks, words));
    Ok(CoviBuild {
        index,
        trie_nodes,
        t_trie,
        t_fail,
        t_mark,
        t_rebuild,
    })
}

/// Parse a word file and build the baseline index, timing each step.
pub fn build_fullac_from_bytes(bytes: &[u8]) -> Result<FullAcBuild, BuildError> {
    let (words, trie, fail, t_trie, t_fail) = prepare(bytes)?;
    let trie_nodes = trie.node_count();
    let (index, t_encode) = timed(|| build_fullac(&trie, &fail, words));
    Ok(FullAcBuild {
        index,
        trie_nodes,
        t_trie,
        t_fail,
        t_encode,
    })
}

/// Build both structures over one shared trie; the shared step timings
/// are reported in both results.
pub fn build_both_from_bytes(bytes: &[u8]) -> Result<(CoviBuild, FullAcBuild), BuildError> {
    let (words, trie, fail, t_trie, t_fail) = prepare(bytes)?;
    let trie_nodes = trie.node_count();
    let (marks, t_mark) = timed(|| mark_overlap_nodes(&trie, &fail));
    let (covi_index, t_rebuild) = timed(|| build_covi(&trie, &fail, &marks, words.clone()));
    let (fullac_index, t_encode) = timed(|| build_fullac(&trie, &fail, words));
    Ok((
        CoviBuild {
            index: covi_index,
            trie_nodes,
            t_trie,
            t_fail,
            t_mark,
            t_rebuild,
        },
        FullAcBuild {
            index: fullac_index,
            trie_nodes,
            t_trie,
            t_fail,
            t_encode,
        },
    ))
}
