//! Bit vectors: a growable builder and an immutable rank/select structure.
//!
//! [`BitBuf`] is the mutable builder (0-based positions). Once a bit
//! sequence is final it is frozen into a [`RankSelectBitVector`], which
//! exposes the 1-based `rank`/`select` convention used by the tree
//! encodings: `rank(b, i)` counts occurrences of `b` in positions
//! `1..=i` and `select(b, j)` locates the `j`-th occurrence.

use alloc::vec;
use alloc::vec::Vec;

/// Bits per rank block (4 words).
const BLOCK_BITS: usize = 256;
/// Bits per rank superblock (64 words).
const SUPER_BITS: usize = 4096;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / 64;

/// Growable bit sequence, 0-based. Storage is LSB-first within each
/// 64-bit word, matching the serialized layout.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitBuf {
    words: Vec<u64>,
    len: usize,
}

impl BitBuf {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitBuf {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    /// All-zero buffer of `len` bits.
    pub fn zeros(len: usize) -> Self {
        BitBuf {
            words: vec![0u64; len.div_ceil(64)],
            len,
        }
    }

    /// Rebuild from raw words. Fails if a bit beyond `len` is set.
    pub fn from_words(words: Vec<u64>, len: usize) -> Option<Self> {
        if words.len() != len.div_ceil(64) {
            return None;
        }
        if !len.is_multiple_of(64) {
            let tail = words[words.len() - 1] >> (len % 64);
            if tail != 0 {
                return None;
            }
        }
        Some(BitBuf { words, len })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        let (w, b) = (self.len / 64, self.len % 64);
        if b == 0 {
            self.words.push(0);
        }
        if bit {
            self.words[w] |= 1u64 << b;
        }
        self.len += 1;
    }

    /// Append `count` copies of `bit`.
    pub fn push_repeated(&mut self, bit: bool, count: usize) {
        for _ in 0..count {
            self.push(bit);
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// Reset every bit to zero, keeping the length.
    pub fn clear_bits(&mut self) {
        self.words.fill(0);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl FromIterator<bool> for BitBuf {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        let mut buf = BitBuf::new();
        for b in iter {
            buf.push(b);
        }
        buf
    }
}

/// Immutable bit vector with constant-time rank and directory-guided
/// select.
///
/// Positions are 1-based. The auxiliary directories cost 64 bits per
/// 4096-bit superblock plus 16 bits per 256-bit block, about 7.9% of
/// the raw bit storage.
#[derive(Debug, Clone)]
pub struct RankSelectBitVector {
    bits: BitBuf,
    /// Ones strictly before each superblock boundary.
    l1: Vec<u64>,
    /// Ones from the enclosing superblock start to each block boundary.
    l2: Vec<u16>,
}

impl PartialEq for RankSelectBitVector {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for RankSelectBitVector {}

impl RankSelectBitVector {
    pub fn from_buf(bits: BitBuf) -> Self {
        let n = bits.len();
        let n_blocks = n / BLOCK_BITS + 1;
        let n_supers = n / SUPER_BITS + 1;
        let mut l1 = Vec::with_capacity(n_supers);
        let mut l2 = Vec::with_capacity(n_blocks);
        let mut total: u64 = 0;
        let mut in_super: u64 = 0;
        for b in 0..n_blocks {
            if (b * BLOCK_BITS).is_multiple_of(SUPER_BITS) {
                total += in_super;
                l1.push(total);
                in_super = 0;
            }
            l2.push(in_super as u16);
            let w0 = b * WORDS_PER_BLOCK;
            for w in w0..(w0 + WORDS_PER_BLOCK).min(bits.words().len()) {
                in_super += bits.words()[w].count_ones() as u64;
            }
        }
        RankSelectBitVector { bits, l1, l2 }
    }

    pub fn from_bits(iter: impl IntoIterator<Item = bool>) -> Self {
        Self::from_buf(iter.into_iter().collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at 1-based position `i`.
    #[inline]
    pub fn bit_at(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.len());
        self.bits.get(i - 1)
    }

    pub fn words(&self) -> &[u64] {
        self.bits.words()
    }

    pub fn count(&self, bit: bool) -> usize {
        self.rank(bit, self.len())
    }

    /// Auxiliary directory size in bits, for overhead accounting.
    pub fn aux_bits(&self) -> usize {
        self.l1.len() * 64 + self.l2.len() * 16
    }

    /// Number of ones in positions `1..=i` (0-based prefix of length `i`).
    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let block = i / BLOCK_BITS;
        let mut count = self.l1[i / SUPER_BITS] + self.l2[block] as u64;
        let words = self.bits.words();
        let w0 = block * WORDS_PER_BLOCK;
        let w_end = i / 64;
        for &w in &words[w0..w_end] {
            count += w.count_ones() as u64;
        }
        let rem = i % 64;
        if rem != 0 {
            count += (words[w_end] & ((1u64 << rem) - 1)).count_ones() as u64;
        }
        count as usize
    }

    /// Number of occurrences of `bit` in positions `1..=i`.
    ///
    /// `i` may be 0 (empty prefix) up to the vector length; anything
    /// larger is a contract violation.
    #[inline]
    pub fn rank(&self, bit: bool, i: usize) -> usize {
        assert!(i <= self.len(), "rank position {i} out of range");
        let ones = self.rank1(i);
        if bit {
            ones
        } else {
            i - ones
        }
    }

    /// Position (1-based) of the `j`-th occurrence of `bit`, or `None`
    /// if there is no such occurrence.
    pub fn select(&self, bit: bool, j: usize) -> Option<usize> {
        if j == 0 || j > self.count(bit) {
            return None;
        }
        // Superblock: last s with count-before < j.
        let key = |s: usize| -> usize {
            if bit {
                self.l1[s] as usize
            } else {
                s * SUPER_BITS - self.l1[s] as usize
            }
        };
        let mut lo = 0usize;
        let mut hi = self.l1.len();
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if key(mid) < j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s = lo;
        let mut rel = j - key(s);
        // Block within the superblock.
        let b_first = s * (SUPER_BITS / BLOCK_BITS);
        let b_limit = (b_first + SUPER_BITS / BLOCK_BITS).min(self.l2.len());
        let bkey = |b: usize| -> usize {
            if bit {
                self.l2[b] as usize
            } else {
                (b - b_first) * BLOCK_BITS - self.l2[b] as usize
            }
        };
        let mut b = b_first;
        for cand in (b_first + 1)..b_limit {
            if bkey(cand) < rel {
                b = cand;
            } else {
                break;
            }
        }
        rel -= bkey(b);
        // Word scan within the block.
        let words = self.bits.words();
        let mut w = b * WORDS_PER_BLOCK;
        loop {
            let bits_here = 64.min(self.len() - w * 64);
            let raw = words[w];
            let val = if bit {
                raw
            } else if bits_here == 64 {
                !raw
            } else {
                !raw & ((1u64 << bits_here) - 1)
            };
            let c = val.count_ones() as usize;
            if rel <= c {
                return Some(w * 64 + select_in_word(val, rel) + 1);
            }
            rel -= c;
            w += 1;
        }
    }
}

/// 0-based position of the `r`-th (1-based) set bit of `w`.
#[inline]
fn select_in_word(mut w: u64, r: usize) -> usize {
    debug_assert!(r >= 1 && r <= w.count_ones() as usize);
    for _ in 1..r {
        w &= w - 1;
    }
    w.trailing_zeros() as usize
}

// Parenthesis-excess helpers shared by the tree encodings. A 0-bit
// contributes +1 to the excess, a 1-bit contributes -1. Bits within a
// byte are taken LSB-first, matching the storage order.

const fn byte_excess_tables() -> ([i8; 256], [i8; 256], [i8; 256]) {
    let mut delta = [0i8; 256];
    let mut min_prefix = [0i8; 256];
    let mut max_suffix = [0i8; 256];
    let mut b = 0usize;
    while b < 256 {
        let mut e = 0i8;
        let mut min_p = i8::MAX;
        let mut i = 0;
        while i < 8 {
            e += if (b >> i) & 1 == 0 { 1 } else { -1 };
            if e < min_p {
                min_p = e;
            }
            i += 1;
        }
        delta[b] = e;
        min_prefix[b] = min_p;
        let mut max_s = 0i8;
        let mut suf = 0i8;
        let mut i = 8usize;
        while i > 0 {
            i -= 1;
            suf += if (b >> i) & 1 == 0 { 1 } else { -1 };
            if suf > max_s {
                max_s = suf;
            }
        }
        max_suffix[b] = max_s;
        b += 1;
    }
    (delta, min_prefix, max_suffix)
}

const BYTE_TABLES: ([i8; 256], [i8; 256], [i8; 256]) = byte_excess_tables();

/// Excess contribution of a whole word.
#[inline]
pub(crate) fn word_excess_delta(w: u64) -> i64 {
    64 - 2 * w.count_ones() as i64
}

/// Minimum excess over the 64 prefixes of `w`, relative to the excess
/// before the word.
#[inline]
pub(crate) fn word_min_prefix_excess(w: u64) -> i64 {
    let mut min = i64::MAX;
    let mut acc = 0i64;
    let mut k = 0;
    while k < 8 {
        let byte = (w >> (k * 8)) as u8 as usize;
        let cand = acc + BYTE_TABLES.1[byte] as i64;
        if cand < min {
            min = cand;
        }
        acc += BYTE_TABLES.0[byte] as i64;
        k += 1;
    }
    min
}

/// Maximum excess of any suffix of `w` (including the empty suffix).
#[inline]
pub(crate) fn word_max_suffix_excess(w: u64) -> i64 {
    let mut max = 0i64;
    let mut acc = 0i64;
    let mut k = 8usize;
    while k > 0 {
        k -= 1;
        let byte = (w >> (k * 8)) as u8 as usize;
        let cand = acc + BYTE_TABLES.2[byte] as i64;
        if cand > max {
            max = cand;
        }
        acc += BYTE_TABLES.0[byte] as i64;
    }
    max
}
