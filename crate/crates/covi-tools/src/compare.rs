//! Cross-validation: every query on both index structures against the
//! brute-force oracle.

use covi::oracle::{naive_correlation, naive_overlap_matrix};
use covi::queries::{
    all_left_ov, all_right_ov, correlation, global_max_ov, max_ov, threshold_ov, Direction,
    QueryScratch,
};
use covi::{CoviIndex, FullAcIndex, OverlapIndex, WordSet};
use thiserror::Error;

use crate::builder::{build_both_from_bytes, BuildError};

/// Counts of checks performed, one per query instance (each instance
/// compares the oracle and both structures).
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub word_count: usize,
    pub max_ov_checks: usize,
    pub correlation_checks: usize,
    pub all_right_checks: usize,
    pub all_left_checks: usize,
    pub global_checks: usize,
    pub threshold_checks: usize,
}

impl std::fmt::Display for CompareReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PASS over {} words:", self.word_count)?;
        writeln!(f, "  {} max-ov checks", self.max_ov_checks)?;
        writeln!(f, "  {} correlation checks", self.correlation_checks)?;
        writeln!(
            f,
            "  {}+{} all-ov checks",
            self.all_right_checks, self.all_left_checks
        )?;
        writeln!(f, "  {} global check(s)", self.global_checks)?;
        write!(f, "  {} threshold checks", self.threshold_checks)
    }
}

/// First disagreement found between an index and the oracle.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("{structure} disagrees on {query}: expected {expected}, got {got}")]
pub struct Mismatch {
    pub structure: &'static str,
    pub query: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Error)]
pub enum CompareError {
    #[error(
        "oracle budget exceeded: words x max-length = {cost} > {budget}; \
         raise --budget to force the quadratic brute-force check"
    )]
    BudgetExceeded { cost: u64, budget: u64 },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Mismatch(#[from] Box<Mismatch>),
}

fn ensure<T: PartialEq + std::fmt::Debug>(
    structure: &'static str,
    query: &str,
    expected: &T,
    got: &T,
) -> Result<(), Box<Mismatch>> {
    if expected != got {
        return Err(Box::new(Mismatch {
            structure,
            query: query.to_string(),
            expected: format!("{expected:?}"),
            got: format!("{got:?}"),
        }));
    }
    Ok(())
}

fn check_structure<I: OverlapIndex>(
    name: &'static str,
    idx: &I,
    words: &WordSet,
    matrix: &[Vec<u32>],
    report: &mut CompareReport,
    count: bool,
) -> Result<(), Box<Mismatch>> {
    let p = words.word_count();
    let mut scratch = QueryScratch::for_index(idx);
    let max_len = words.max_word_len() as u32;
    for x in 0..p {
        let row = all_right_ov(idx, x, &mut scratch).expect("valid arguments");
        ensure(name, &format!("all-right-ov({x})"), &matrix[x], &row)?;
        if count {
            report.all_right_checks += 1;
        }
        let col: Vec<u32> = (0..p).map(|z| matrix[z][x]).collect();
        let got = all_left_ov(idx, x, &mut scratch).expect("valid arguments");
        ensure(name, &format!("all-left-ov({x})"), &col, &got)?;
        if count {
            report.all_left_checks += 1;
        }
        for y in 0..p {
            let got = max_ov(idx, x, y).expect("valid arguments");
            ensure(name, &format!("max-ov({x},{y})"), &matrix[x][y], &got)?;
            if count {
                report.max_ov_checks += 1;
            }
            let expected = naive_correlation(words.word(x), words.word(y));
            let got = correlation(idx, x, y).expect("valid arguments");
            ensure(name, &format!("correlation({x},{y})"), &expected, &got)?;
            if count {
                report.correlation_checks += 1;
            }
        }
        for q in 1..=max_len {
            for dir in [Direction::Right, Direction::Left] {
                let expected: Vec<(usize, u32)> = (0..p)
                    .filter_map(|z| {
                        let l = match dir {
                            Direction::Right => matrix[x][z],
                            Direction::Left => matrix[z][x],
                        };
                        (l >= q).then_some((z, l))
                    })
                    .collect();
                let got = threshold_ov(idx, x, q, dir, &mut scratch).expect("valid arguments");
                ensure(name, &format!("threshold-ov({x},{q},{dir:?})"), &expected, &got)?;
                if count {
                    report.threshold_checks += 1;
                }
            }
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
    let got = global_max_ov(idx).expect("built index");
    ensure(name, "global-max-ov()", &(best, winners), &got)?;
    if count {
        report.global_checks += 1;
    }
    Ok(())
}

/// Run every query on both structures for every word and pair, against
/// the oracle matrix. Returns the check counts, or the first mismatch.
pub fn compare_indexes(
    covi: &CoviIndex,
    fullac: &FullAcIndex,
    words: &WordSet,
) -> Result<CompareReport, Box<Mismatch>> {
    let matrix = naive_overlap_matrix(words);
    let mut report = CompareReport {
        word_count: words.word_count(),
        ..CompareReport::default()
    };
    check_structure("covi", covi, words, &matrix, &mut report, true)?;
    check_structure("fullac", fullac, words, &matrix, &mut report, false)?;
    Ok(report)
}

/// Build both indexes from word-file bytes and cross-validate them.
/// The oracle is quadratic, so the job is refused when
/// `words x max-length` exceeds `budget`.
pub fn compare_words_file(bytes: &[u8], budget: u64) -> Result<CompareReport, CompareError> {
    let words = WordSet::from_separated_bytes(bytes).map_err(BuildError::Words)?;
    let cost = words.word_count() as u64 * words.max_word_len() as u64;
    if cost > budget {
        return Err(CompareError::BudgetExceeded { cost, budget });
    }
    let (covi, fullac) = build_both_from_bytes(bytes)?;
    Ok(compare_indexes(&covi.index, &fullac.index, &words)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_both_from_bytes;

    const EXAMPLE: &[u8] = b"ATAT\nATTA\nTAAT\nTTAA\nTTAT\n";

    #[test]
    fn running_example_passes_with_expected_counts() {
        let report = compare_words_file(EXAMPLE, 50_000).unwrap();
        assert_eq!(report.word_count, 5);
        assert_eq!(report.max_ov_checks, 25);
        assert_eq!(report.correlation_checks, 25);
        assert_eq!(report.all_right_checks, 5);
        assert_eq!(report.all_left_checks, 5);
        assert_eq!(report.global_checks, 1);
        assert_eq!(report.threshold_checks, 5 * 4 * 2);
    }

    #[test]
    fn budget_guard_refuses_large_sets() {
        let err = compare_words_file(EXAMPLE, 10).unwrap_err();
        assert!(matches!(
            err,
            CompareError::BudgetExceeded { cost: 20, budget: 10 }
        ));
    }

    #[test]
    fn inconsistent_index_fails_with_located_mismatch() {
        // negative control: pair the indexes of one word set with the
        // words and oracle of another
        let (covi, _) = build_both_from_bytes(b"AB\nCE\n").unwrap();
        let (_, fullac) = build_both_from_bytes(b"AB\nCD\n").unwrap();
        let words = WordSet::from_separated_bytes(b"AB\nBC\n").unwrap();
        let err = compare_indexes(&covi.index, &fullac.index, &words).unwrap_err();
        assert_eq!(err.structure, "covi");
        assert!(err.query.contains("max-ov") || err.query.contains("all-"));
    }
}
