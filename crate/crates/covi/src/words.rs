//! Input word sets.
//!
//! A [`WordSet`] owns the words to index: byte strings over any
//! alphabet except the end-of-word separator `0x0A` and `0x00`. The
//! builder sorts and deduplicates, so word ids are 0-based ranks in
//! lexicographic order. Sets where one word is a proper prefix of
//! another are rejected: a prefix word would occupy an internal trie
//! node and corrupt overlap semantics, and terminal-symbol padding is
//! no better because it changes the overlaps themselves. Fixed-length
//! deduplicated inputs (k-mer datasets) always pass.

use alloc::string::String;
use alloc::vec::Vec;

/// End-of-word separator in word files.
pub const SEPARATOR: u8 = 0x0A;

/// Sorted, deduplicated, prefix-free set of non-empty words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSet {
    /// Word bytes, concatenated without separators.
    data: Vec<u8>,
    /// `offsets[i]..offsets[i + 1]` delimits word `i`.
    offsets: Vec<usize>,
}

/// Rejection reasons for word set construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSetError {
    /// Words must be non-empty.
    EmptyWord,
    /// A word contains the separator or NUL byte.
    ForbiddenByte(u8),
    /// One word is a proper prefix of another.
    PrefixViolation { prefix: Vec<u8>, word: Vec<u8> },
    /// The set has no words at all.
    NoWords,
}

impl core::fmt::Display for WordSetError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            WordSetError::EmptyWord => write!(f, "empty word"),
            WordSetError::ForbiddenByte(b) => {
                write!(f, "word contains forbidden byte 0x{b:02X}")
            }
            WordSetError::PrefixViolation { prefix, word } => write!(
                f,
                "{} is a prefix of {}",
                String::from_utf8_lossy(prefix),
                String::from_utf8_lossy(word)
            ),
            WordSetError::NoWords => write!(f, "no words"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for WordSetError {}

impl WordSet {
    /// Build from arbitrary words: validates bytes, sorts,
    /// deduplicates, and rejects prefix-nested pairs.
    pub fn new(mut words: Vec<Vec<u8>>) -> Result<Self, WordSetError> {
        for w in &words {
            if w.is_empty() {
                return Err(WordSetError::EmptyWord);
            }
            if let Some(&b) = w.iter().find(|&&b| b == SEPARATOR || b == 0x00) {
                return Err(WordSetError::ForbiddenByte(b));
            }
        }
        words.sort_unstable();
        words.dedup();
        if words.is_empty() {
            return Err(WordSetError::NoWords);
        }
        // after sorting, a prefix immediately precedes its extensions
        for pair in words.windows(2) {
            if pair[1].starts_with(&pair[0]) {
                return Err(WordSetError::PrefixViolation {
                    prefix: pair[0].clone(),
                    word: pair[1].clone(),
                });
            }
        }
        let mut data = Vec::with_capacity(words.iter().map(Vec::len).sum());
        let mut offsets = Vec::with_capacity(words.len() + 1);
        offsets.push(0);
        for w in &words {
            data.extend_from_slice(w);
            offsets.push(data.len());
        }
        Ok(WordSet { data, offsets })
    }

    /// Parse a word file: words separated by `0x0A`, trailing
    /// separator optional.
    pub fn from_separated_bytes(bytes: &[u8]) -> Result<Self, WordSetError> {
        let mut words: Vec<Vec<u8>> = Vec::new();
        let mut start = 0;
        for (i, &b) in bytes.iter().enumerate() {
            if b == SEPARATOR {
                words.push(bytes[start..i].to_vec());
                start = i + 1;
            }
        }
        if start < bytes.len() {
            words.push(bytes[start..].to_vec());
        }
        Self::new(words)
    }

    /// Serialize as a word file with a separator after every word.
    pub fn to_separated_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.data.len() + self.word_count());
        for w in self.iter() {
            out.extend_from_slice(w);
            out.push(SEPARATOR);
        }
        out
    }

    #[inline]
    pub fn word_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn word(&self, id: usize) -> &[u8] {
        &self.data[self.offsets[id]..self.offsets[id + 1]]
    }

    #[inline]
    pub fn word_len(&self, id: usize) -> usize {
        self.offsets[id + 1] - self.offsets[id]
    }

    /// Id of `word`, if present.
    pub fn find(&self, word: &[u8]) -> Option<usize> {
        let mut lo = 0usize;
        let mut hi = self.word_count();
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.word(mid) < word {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        (lo < self.word_count() && self.word(lo) == word).then_some(lo)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u8]> {
        (0..self.word_count()).map(|i| self.word(i))
    }

    /// Total characters over all words.
    pub fn total_chars(&self) -> usize {
        self.data.len()
    }

    pub fn max_word_len(&self) -> usize {
        (0..self.word_count()).map(|i| self.word_len(i)).max().unwrap_or(0)
    }

    /// Number of distinct bytes appearing in the words.
    pub fn alphabet_size(&self) -> usize {
        let mut seen = [false; 256];
        for &b in &self.data {
            seen[b as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn set(words: &[&str]) -> Result<WordSet, WordSetError> {
        WordSet::new(words.iter().map(|w| w.as_bytes().to_vec()).collect())
    }

    #[test]
    fn sorts_and_deduplicates() {
        let ws = set(&["TTAA", "ATAT", "ATAT", "TAAT"]).unwrap();
        assert_eq!(ws.word_count(), 3);
        assert_eq!(ws.word(0), b"ATAT");
        assert_eq!(ws.word(2), b"TTAA");
        assert_eq!(ws.find(b"TAAT"), Some(1));
        assert_eq!(ws.find(b"TT"), None);
    }

    #[test]
    fn rejects_prefix_nesting() {
        let err = set(&["AB", "A"]).unwrap_err();
        assert_eq!(err.to_string(), "A is a prefix of AB");
        // non-adjacent after sorting, still caught
        assert!(matches!(
            set(&["A", "AC", "AB"]),
            Err(WordSetError::PrefixViolation { .. })
        ));
    }

    #[test]
    fn rejects_bad_bytes_and_empty() {
        assert_eq!(set(&[""]), Err(WordSetError::EmptyWord));
        assert_eq!(
            WordSet::new(vec![vec![b'A', 0x0A]]),
            Err(WordSetError::ForbiddenByte(0x0A))
        );
        assert_eq!(
            WordSet::new(vec![vec![0x00]]),
            Err(WordSetError::ForbiddenByte(0x00))
        );
        assert_eq!(WordSet::new(vec![]), Err(WordSetError::NoWords));
    }

    #[test]
    fn word_file_round_trip() {
        let ws = set(&["ATAT", "ATTA", "TAAT"]).unwrap();
        let bytes = ws.to_separated_bytes();
        assert_eq!(bytes, b"ATAT\nATTA\nTAAT\n");
        let back = WordSet::from_separated_bytes(&bytes).unwrap();
        assert_eq!(back, ws);
        // trailing separator is optional
        let no_trail = WordSet::from_separated_bytes(b"ATAT\nATTA\nTAAT").unwrap();
        assert_eq!(no_trail, ws);
    }

    #[test]
    fn stats() {
        let ws = set(&["AB", "CDE"]).unwrap();
        assert_eq!(ws.total_chars(), 5);
        assert_eq!(ws.max_word_len(), 3);
        assert_eq!(ws.alphabet_size(), 5);
    }
}
