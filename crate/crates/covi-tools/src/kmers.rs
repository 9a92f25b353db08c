//! Benchmark dataset generation: k-mer windows over a text with a
//! random skip step.

use covi::words::SEPARATOR;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KmerError {
    #[error("k must be at least 2")]
    KTooSmall,
    #[error("k = {k} exceeds the text length {text_len}")]
    KTooLarge { k: usize, text_len: usize },
    #[error("the skip step must be at least 1")]
    BadSkip,
    #[error("no k-mers survive (every window crosses a separator)")]
    NoKmers,
}

/// Slide a window of length `k` over `text`: emit the window, then
/// advance by a uniform step in `1..=max_skip`. Windows containing the
/// word separator or NUL are skipped (the cursor still advances).
/// Deterministic for a given seed. The result is unsorted and may
/// contain duplicates; building a [`covi::WordSet`] sorts and
/// deduplicates.
pub fn extract_kmers(
    text: &[u8],
    k: usize,
    max_skip: usize,
    seed: u64,
) -> Result<Vec<Vec<u8>>, KmerError> {
    if max_skip < 1 {
        return Err(KmerError::BadSkip);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    extract_kmers_with_steps(text, k, || rng.random_range(1..=max_skip))
}

/// [`extract_kmers`] with an explicit step source.
pub fn extract_kmers_with_steps(
    text: &[u8],
    k: usize,
    mut next_step: impl FnMut() -> usize,
) -> Result<Vec<Vec<u8>>, KmerError> {
    if k < 2 {
        return Err(KmerError::KTooSmall);
    }
    if k > text.len() {
        return Err(KmerError::KTooLarge {
            k,
            text_len: text.len(),
        });
    }
    let mut out = Vec::new();
    let mut pos = 0usize;
    while pos + k <= text.len() {
        let window = &text[pos..pos + k];
        if !window.iter().any(|&b| b == SEPARATOR || b == 0x00) {
            out.push(window.to_vec());
        }
        let step = next_step();
        debug_assert!(step >= 1);
        pos += step.max(1);
    }
    if out.is_empty() {
        return Err(KmerError::NoKmers);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use covi::WordSet;

    #[test]
    fn forced_steps_match_hand_simulation() {
        // windows at positions 1, 3, 5 (1-based)
        let mut steps = [2usize, 2, 2].into_iter();
        let kmers = extract_kmers_with_steps(b"ATATATTA", 4, || steps.next().unwrap()).unwrap();
        assert_eq!(kmers, vec![b"ATAT".to_vec(), b"ATAT".to_vec(), b"ATTA".to_vec()]);
        let ws = WordSet::new(kmers).unwrap();
        let sorted: Vec<&[u8]> = ws.iter().collect();
        assert_eq!(sorted, vec![b"ATAT".as_slice(), b"ATTA".as_slice()]);
    }

    #[test]
    fn unit_skip_is_exhaustive() {
        let kmers = extract_kmers(b"ABCDE", 2, 1, 7).unwrap();
        assert_eq!(
            kmers,
            vec![b"AB".to_vec(), b"BC".to_vec(), b"CD".to_vec(), b"DE".to_vec()]
        );
    }

    #[test]
    fn same_seed_is_deterministic() {
        let text: Vec<u8> = (0..4000u32).map(|i| b"ACGT"[(i % 4) as usize]).collect();
        let a = extract_kmers(&text, 25, 10, 42).unwrap();
        let b = extract_kmers(&text, 25, 10, 42).unwrap();
        assert_eq!(a, b);
        let c = extract_kmers(&text, 25, 10, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn windows_over_separators_are_skipped() {
        let kmers = extract_kmers(b"AB\nCD", 2, 1, 0).unwrap();
        assert_eq!(kmers, vec![b"AB".to_vec(), b"CD".to_vec()]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(extract_kmers(b"ABC", 1, 1, 0), Err(KmerError::KTooSmall));
        assert_eq!(
            extract_kmers(b"ABC", 9, 1, 0),
            Err(KmerError::KTooLarge { k: 9, text_len: 3 })
        );
        assert_eq!(extract_kmers(b"ABC", 2, 0, 0), Err(KmerError::BadSkip));
        assert_eq!(extract_kmers(b"\n\n\n", 2, 1, 0), Err(KmerError::NoKmers));
    }
}
