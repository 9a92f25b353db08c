//! Index file format.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic      4 bytes, "COVI" or "FLAC"
//! version    u32, currently 1
//! id width   u8, node id width of the writing build (32 or 64)
//! p          u64, word count
//! m          u64, node count
//! topology   u64 bit length, then ceil(len/64) words, LSB-first
//! depths     packed array, COVI only
//! failure    packed array
//! L          packed array (word id -> leaf node id)
//! words      u64 byte length, then the words, 0x0A after each
//! checksum   u64, CRC-64/XZ of all preceding bytes
//! ```
//!
//! A packed array is `u8` bit width, `u64` element count, then the
//! values packed LSB-first into words. Widths are the minimum for the
//! largest value, so failure links and the word map cost about
//! `log2(m)` bits per entry instead of a full word.

use std::fs;
use std::io;
use std::path::Path;

use covi::{BitBuf, BpTree, CoviIndex, FullAcIndex, LoudsTree, NodeId};
use thiserror::Error;

pub const MAGIC_COVI: [u8; 4] = *b"COVI";
pub const MAGIC_FULLAC: [u8; 4] = *b"FLAC";
pub const FORMAT_VERSION: u32 = 1;

/// Load/save failures, one variant per distinct defect.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("not an index file (magic {0:02X?})")]
    BadMagic([u8; 4]),
    #[error("wrong index kind: expected {expected}, found {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u32),
    #[error("invalid node id width {0}")]
    BadIdWidth(u8),
    #[error("unexpected end of file")]
    UnexpectedEof,
    #[error("checksum mismatch: file is corrupt")]
    ChecksumMismatch,
    #[error("value {0} exceeds this build's node id width")]
    IdOverflow(u64),
    #[error("corrupt index data: {0}")]
    Corrupt(String),
}

/// Either index kind, as discriminated by the file magic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyIndex {
    Covi(CoviIndex),
    FullAc(FullAcIndex),
}

impl AnyIndex {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyIndex::Covi(_) => "covi",
            AnyIndex::FullAc(_) => "fullac",
        }
    }
}

// CRC-64/XZ: reflected polynomial, init and xorout all-ones.
const CRC64_POLY: u64 = 0xC96C_5795_D787_0F42;

const fn crc64_table() -> [u64; 256] {
    let mut table = [0u64; 256];
    let mut i = 0;
    while i < 256 {
        let mut crc = i as u64;
        let mut j = 0;
        while j < 8 {
            crc = if crc & 1 == 1 {
                (crc >> 1) ^ CRC64_POLY
            } else {
                crc >> 1
            };
            j += 1;
        }
        table[i] = crc;
        i += 1;
    }
    table
}

const CRC64_TABLE: [u64; 256] = crc64_table();

pub fn crc64(bytes: &[u8]) -> u64 {
    let mut crc = !0u64;
    for &b in bytes {
        crc = CRC64_TABLE[((crc ^ b as u64) & 0xFF) as usize] ^ (crc >> 8);
    }
    !crc
}

// -- writing --------------------------------------------------------

struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn new() -> Self {
        Writer { buf: Vec::new() }
    }

    fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    fn bytes(&mut self, v: &[u8]) {
        self.buf.extend_from_slice(v);
    }

    fn bit_vector(&mut self, words: &[u64], bit_len: usize) {
        self.u64(bit_len as u64);
        for &w in words {
            self.u64(w);
        }
    }

    /// Minimum-width packed integer array.
    fn packed(&mut self, values: impl ExactSizeIterator<Item = u64> + Clone) {
        let max = values.clone().max().unwrap_or(0);
        let width = (64 - max.leading_zeros()).max(1) as usize;
        self.u8(width as u8);
        self.u64(values.len() as u64);
        let mut word = 0u64;
        let mut filled = 0usize;
        for v in values {
            word |= v << filled;
            filled += width;
            if filled >= 64 {
                self.u64(word);
                filled -= 64;
                word = if filled == 0 { 0 } else { v >> (width - filled) };
            }
        }
        if filled > 0 {
            self.u64(word);
        }
    }

    fn finish(mut self) -> Vec<u8> {
        let crc = crc64(&self.buf);
        self.u64(crc);
        self.buf
    }
}

fn id_width() -> u8 {
    (core::mem::size_of::<NodeId>() * 8) as u8
}

/// Serialize a compressed index.
pub fn covi_to_bytes(idx: &CoviIndex) -> Vec<u8> {
    use covi::OverlapIndex;
    let mut w = Writer::new();
    w.bytes(&MAGIC_COVI);
    w.u32(FORMAT_VERSION);
    w.u8(id_width());
    w.u64(idx.word_count() as u64);
    w.u64(idx.node_count() as u64);
    let bits = idx.topology().bits();
    w.bit_vector(bits.words(), bits.len());
    w.packed(idx.depth_array()[1..].iter().map(|&d| d as u64));
    w.packed(idx.failure_links()[1..].iter().map(|&f| f as u64));
    w.packed(idx.word_leaf_map().iter().map(|&v| v as u64));
    let blob = idx.words().to_separated_bytes();
    w.u64(blob.len() as u64);
    w.bytes(&blob);
    w.finish()
}

/// Serialize a baseline index.
pub fn fullac_to_bytes(idx: &FullAcIndex) -> Vec<u8> {
    use covi::OverlapIndex;
    let mut w = Writer::new();
    w.bytes(&MAGIC_FULLAC);
    w.u32(FORMAT_VERSION);
    w.u8(id_width());
    w.u64(idx.word_count() as u64);
    w.u64(idx.node_count() as u64);
    let bits = idx.topology().bits();
    w.bit_vector(bits.words(), bits.len());
    w.packed(idx.failure_links()[1..].iter().map(|&f| f as u64));
    w.packed(idx.word_leaf_map().iter().map(|&v| v as u64));
    let blob = idx.words().to_separated_bytes();
    w.u64(blob.len() as u64);
    w.bytes(&blob);
    w.finish()
}

// -- reading --------------------------------------------------------

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], FormatError> {
        if self.buf.len() - self.pos < n {
            return Err(FormatError::UnexpectedEof);
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, FormatError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, FormatError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, FormatError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn words(&mut self, count: usize) -> Result<Vec<u64>, FormatError> {
        let raw = self.take(count * 8)?;
        Ok(raw
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    fn bit_vector(&mut self) -> Result<BitBuf, FormatError> {
        let bit_len = self.u64()? as usize;
        let words = self.words(bit_len.div_ceil(64))?;
        BitBuf::from_words(words, bit_len)
            .ok_or_else(|| FormatError::Corrupt("stray bits beyond the bit length".into()))
    }

    fn packed(&mut self) -> Result<Vec<u64>, FormatError> {
        let width = self.u8()? as usize;
        if width == 0 || width > 64 {
            return Err(FormatError::Corrupt(format!("bad packed width {width}")));
        }
        let count = self.u64()? as usize;
        let words = self.words((count * width).div_ceil(64))?;
        let mask = if width == 64 { !0u64 } else { (1u64 << width) - 1 };
        let mut out = Vec::with_capacity(count);
        let mut bit = 0usize;
        for _ in 0..count {
            let w = bit / 64;
            let off = bit % 64;
            let mut v = words[w] >> off;
            if off + width > 64 {
                v |= words[w + 1] << (64 - off);
            }
            out.push(v & mask);
            bit += width;
        }
        Ok(out)
    }

    fn finished(&self) -> bool {
        self.pos == self.buf.len()
    }
}

fn to_node_id(v: u64) -> Result<NodeId, FormatError> {
    NodeId::try_from(v).map_err(|_| FormatError::IdOverflow(v))
}

fn to_u32(v: u64) -> Result<u32, FormatError> {
    u32::try_from(v).map_err(|_| FormatError::IdOverflow(v))
}

struct Frames {
    kind: [u8; 4],
    word_count: usize,
    node_count: usize,
    topology: BitBuf,
    depths: Option<Vec<u64>>,
    failure: Vec<u64>,
    word_leaf: Vec<u64>,
    word_blob: Vec<u8>,
}

/// Frame-level parse: structure and checksum, no semantic rebuild yet.
fn parse_frames(bytes: &[u8]) -> Result<Frames, FormatError> {
    let mut r = Reader::new(bytes);
    let kind: [u8; 4] = r.take(4)?.try_into().unwrap();
    if kind != MAGIC_COVI && kind != MAGIC_FULLAC {
        return Err(FormatError::BadMagic(kind));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(FormatError::UnsupportedVersion(version));
    }
    let width = r.u8()?;
    if width != 32 && width != 64 {
        return Err(FormatError::BadIdWidth(width));
    }
    let word_count = r.u64()? as usize;
    let node_count = to_node_id(r.u64()?)? as usize;
    let topology = r.bit_vector()?;
    let depths = if kind == MAGIC_COVI {
        Some(r.packed()?)
    } else {
        None
    };
    let failure = r.packed()?;
    let word_leaf = r.packed()?;
    let blob_len = r.u64()? as usize;
    let word_blob = r.take(blob_len)?.to_vec();
    let checksum = r.u64()?;
    if !r.finished() {
        return Err(FormatError::Corrupt("trailing bytes after checksum".into()));
    }
    if crc64(&bytes[..bytes.len() - 8]) != checksum {
        return Err(FormatError::ChecksumMismatch);
    }
    Ok(Frames {
        kind,
        word_count,
        node_count,
        topology,
        depths,
        failure,
        word_leaf,
        word_blob,
    })
}

fn corrupt(e: impl std::fmt::Display) -> FormatError {
    FormatError::Corrupt(e.to_string())
}

fn rebuild(frames: Frames) -> Result<AnyIndex, FormatError> {
    let words = covi::WordSet::from_separated_bytes(&frames.word_blob).map_err(corrupt)?;
    if words.word_count() != frames.word_count {
        return Err(FormatError::Corrupt(
            "word blob does not match the recorded word count".into(),
        ));
    }
    let m = frames.node_count;
    let expect_len = |got: usize, what: &str| -> Result<(), FormatError> {
        if got != m {
            return Err(FormatError::Corrupt(format!(
                "{what} array length {got} does not match {m} nodes"
            )));
        }
        Ok(())
    };
    expect_len(frames.failure.len(), "failure")?;
    if frames.word_leaf.len() != frames.word_count {
        return Err(FormatError::Corrupt(
            "word map length does not match the word count".into(),
        ));
    }
    let mut failure = Vec::with_capacity(m + 1);
    failure.push(covi::NO_NODE);
    for &f in &frames.failure {
        failure.push(to_node_id(f)?);
    }
    let mut word_leaf = Vec::with_capacity(frames.word_leaf.len());
    for &v in &frames.word_leaf {
        word_leaf.push(to_node_id(v)?);
    }
    if frames.kind == MAGIC_COVI {
        let raw_depths = frames.depths.expect("parsed for this kind");
        expect_len(raw_depths.len(), "depth")?;
        let mut depths = Vec::with_capacity(m + 1);
        depths.push(0u32);
        for &d in &raw_depths {
            depths.push(to_u32(d)?);
        }
        let topology = LoudsTree::from_buf(frames.topology, m).map_err(corrupt)?;
        let idx = CoviIndex::from_parts(topology, failure, depths, word_leaf, words)
            .map_err(corrupt)?;
        Ok(AnyIndex::Covi(idx))
    } else {
        let topology = BpTree::from_buf(frames.topology, m).map_err(corrupt)?;
        let idx =
            FullAcIndex::from_parts(topology, failure, word_leaf, words).map_err(corrupt)?;
        Ok(AnyIndex::FullAc(idx))
    }
}

/// Deserialize either index kind.
pub fn index_from_bytes(bytes: &[u8]) -> Result<AnyIndex, FormatError> {
    rebuild(parse_frames(bytes)?)
}

pub fn covi_from_bytes(bytes: &[u8]) -> Result<CoviIndex, FormatError> {
    match index_from_bytes(bytes)? {
        AnyIndex::Covi(idx) => Ok(idx),
        AnyIndex::FullAc(_) => Err(FormatError::WrongKind {
            expected: "covi",
            found: "fullac",
        }),
    }
}

pub fn fullac_from_bytes(bytes: &[u8]) -> Result<FullAcIndex, FormatError> {
    match index_from_bytes(bytes)? {
        AnyIndex::FullAc(idx) => Ok(idx),
        AnyIndex::Covi(_) => Err(FormatError::WrongKind {
            expected: "fullac",
            found: "covi",
        }),
    }
}

/// Write a compressed index; returns the file size in bytes.
pub fn save_covi(path: &Path, idx: &CoviIndex) -> Result<u64, FormatError> {
    let bytes = covi_to_bytes(idx);
    fs::write(path, &bytes)?;
    Ok(bytes.len() as u64)
}

/// Write a baseline index; returns the file size in bytes.
pub fn save_fullac(path: &Path, idx: &FullAcIndex) -> Result<u64, FormatError> {
    let bytes = fullac_to_bytes(idx);
    fs::write(path, &bytes)?;
    Ok(bytes.len() as u64)
}

pub fn load_index(path: &Path) -> Result<AnyIndex, FormatError> {
    index_from_bytes(&fs::read(path)?)
}

pub fn load_covi(path: &Path) -> Result<CoviIndex, FormatError> {
    covi_from_bytes(&fs::read(path)?)
}

pub fn load_fullac(path: &Path) -> Result<FullAcIndex, FormatError> {
    fullac_from_bytes(&fs::read(path)?)
}
