//! Brute-force reference implementations of the overlap notions.
//!
//! These run in quadratic time per pair by direct character
//! comparison and exist to cross-check the index structures. Defaults
//! follow the proper-overlap semantics of the index queries: for
//! distinct words the overlap length stays strictly below both word
//! lengths, so a word equal to a whole suffix of another is not an
//! overlap. The `_unrestricted` variants lift that cap for the
//! boundary case.

use alloc::vec::Vec;

use crate::queries::CorrelationVector;
use crate::words::WordSet;

/// Longest proper overlap of `u` onto `v`: the largest `k` with
/// `u[|u|-k..] == v[..k]`, `k < min(|u|, |v|)` for distinct words and
/// `k < |u|` for `u == v`. Returns 0 when no overlap exists.
pub fn naive_max_ov(u: &[u8], v: &[u8]) -> u32 {
    assert!(!u.is_empty() && !v.is_empty(), "words are non-empty");
    let cap = if u == v {
        u.len() - 1
    } else {
        u.len().min(v.len()) - 1
    };
    for k in (1..=cap).rev() {
        if u[u.len() - k..] == v[..k] {
            return k as u32;
        }
    }
    0
}

/// Longest overlap allowing the full-length boundary case
/// (`k = min(|u|, |v|)` for distinct words).
pub fn naive_max_ov_unrestricted(u: &[u8], v: &[u8]) -> u32 {
    assert!(!u.is_empty() && !v.is_empty(), "words are non-empty");
    let cap = if u == v {
        u.len() - 1
    } else {
        u.len().min(v.len())
    };
    for k in (1..=cap).rev() {
        if u[u.len() - k..] == v[..k] {
            return k as u32;
        }
    }
    0
}

/// Correlation of `u` over `v`: bit `i` (1-based) of a `|u|`-length
/// vector marks the overlap `u[i-1..] == v[..|u|-i+1]`. Proper
/// semantics: bit 1 is set exactly for `u == v` (the autocorrelation
/// convention), and overlaps of distinct words stay below both
/// lengths.
pub fn naive_correlation(u: &[u8], v: &[u8]) -> CorrelationVector {
    assert!(!u.is_empty() && !v.is_empty(), "words are non-empty");
    let mut c = CorrelationVector::zeros(u.len());
    if u == v {
        c.set_overlap(u.len() as u32);
    }
    let cap = if u == v {
        u.len() - 1
    } else {
        u.len().min(v.len()) - 1
    };
    for k in 1..=cap {
        if u[u.len() - k..] == v[..k] {
            c.set_overlap(k as u32);
        }
    }
    c
}

/// Correlation without the proper-overlap cap: any `k <= |v|` with a
/// matching suffix/prefix pair sets a bit.
pub fn naive_correlation_unrestricted(u: &[u8], v: &[u8]) -> CorrelationVector {
    assert!(!u.is_empty() && !v.is_empty(), "words are non-empty");
    let mut c = CorrelationVector::zeros(u.len());
    for k in 1..=u.len().min(v.len()) {
        if u[u.len() - k..] == v[..k] {
            c.set_overlap(k as u32);
        }
    }
    c
}

/// All pairwise maximum overlap lengths: entry `[x][z]` is
/// `naive_max_ov` of word `x` onto word `z`. Rows are ground truth for
/// the rightward queries, columns for the leftward ones, the matrix
/// maximum for the global query. Overlaps are not symmetric, so
/// neither is the matrix.
pub fn naive_overlap_matrix(words: &WordSet) -> Vec<Vec<u32>> {
    let p = words.word_count();
    let mut matrix = Vec::with_capacity(p);
    for x in 0..p {
        let mut row = Vec::with_capacity(p);
        for z in 0..p {
            row.push(naive_max_ov(words.word(x), words.word(z)));
        }
        matrix.push(row);
    }
    matrix
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn published_pair_values() {
        assert_eq!(naive_max_ov(b"atatat", b"tggata"), 1);
        assert_eq!(naive_max_ov(b"tggata", b"atatat"), 3);
        assert_eq!(naive_max_ov(b"ATAT", b"ATAT"), 2);
    }

    #[test]
    fn published_correlation_values() {
        assert_eq!(
            naive_correlation(b"abracadabra", b"abracadabra").to_string(),
            "10000001001"
        );
        assert_eq!(naive_correlation(b"atatat", b"atatat").to_string(), "101010");
        assert_eq!(naive_correlation(b"tggata", b"tggata").to_string(), "100000");
        assert_eq!(naive_correlation(b"atatat", b"tggata").to_string(), "000001");
        assert_eq!(naive_correlation(b"tggata", b"atatat").to_string(), "000101");
    }

    #[test]
    fn disjoint_alphabets_have_zero_correlation() {
        let c = naive_correlation(b"aaa", b"bbb");
        assert_eq!(c.to_string(), "000");
        assert_eq!(naive_max_ov(b"aaa", b"bbb"), 0);
    }

    #[test]
    fn correlation_peak_matches_max_ov() {
        let pairs: [(&[u8], &[u8]); 4] = [
            (b"atatat", b"tggata"),
            (b"tggata", b"atatat"),
            (b"ATTA", b"TTAA"),
            (b"TTAA", b"TAAT"),
        ];
        for (u, v) in pairs {
            assert_eq!(
                naive_correlation(u, v).max_overlap(),
                naive_max_ov(u, v),
                "{}/{}",
                core::str::from_utf8(u).unwrap(),
                core::str::from_utf8(v).unwrap()
            );
        }
    }

    #[test]
    fn unrestricted_reports_the_boundary_case() {
        // TA is a whole suffix of ATA: not a proper overlap
        assert_eq!(naive_max_ov(b"ATA", b"TA"), 0);
        assert_eq!(naive_max_ov_unrestricted(b"ATA", b"TA"), 2);
        assert_eq!(naive_correlation(b"ATA", b"TA").to_string(), "000");
        assert_eq!(
            naive_correlation_unrestricted(b"ATA", b"TA").to_string(),
            "010"
        );
    }

    #[test]
    fn matrix_of_running_example() {
        let words = WordSet::new(
            ["ATAT", "ATTA", "TAAT", "TTAA", "TTAT"]
                .iter()
                .map(|w| w.as_bytes().to_vec())
                .collect(),
        )
        .unwrap();
        let m = naive_overlap_matrix(&words);
        assert_eq!(m[1], [1, 1, 2, 3, 3]); // row of ATTA
        let max = m.iter().flatten().max().copied().unwrap();
        assert_eq!(max, 3);
    }

    #[test]
    fn single_word_self_overlap() {
        let words = WordSet::new(alloc::vec![b"AAAA".to_vec()]).unwrap();
        let m = naive_overlap_matrix(&words);
        assert_eq!(m, alloc::vec![alloc::vec![3]]);
    }
}
