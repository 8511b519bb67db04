//! Reads, k-mer parameters and the decomposition of reads into k-mers and
//! `(k-1)`-mer edge pairs.

use std::fmt;

use thiserror::Error;

pub const DEFAULT_K: usize = 201;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("empty read")]
    Empty,
    #[error("invalid base {found:?} at position {position}")]
    InvalidBase { found: char, position: usize },
    #[error("k must be at least 3, got {0}")]
    KTooSmall(usize),
    #[error("expected a k-mer of length {expected}, got length {found}")]
    LengthMismatch { expected: usize, found: usize },
}

#[inline]
pub fn is_base(b: u8) -> bool {
    matches!(b, b'A' | b'C' | b'G' | b'T')
}

/// A non-empty run of uppercase `A`/`C`/`G`/`T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Read {
    bases: Vec<u8>,
}

impl Read {
    /// Validates `text` as-is (case-insensitive). Use [`normalize`] for
    /// raw sequencer text that may contain ambiguity codes.
    pub fn new(text: &str) -> Result<Self, SequenceError> {
        if text.is_empty() {
            return Err(SequenceError::Empty);
        }
        let mut bases = Vec::with_capacity(text.len());
        for (position, c) in text.char_indices() {
            let up = c.to_ascii_uppercase();
            if !up.is_ascii() || !is_base(up as u8) {
                return Err(SequenceError::InvalidBase { found: c, position });
            }
            bases.push(up as u8);
        }
        Ok(Read { bases })
    }

    pub fn bases(&self) -> &[u8] {
        &self.bases
    }

    pub fn as_str(&self) -> &str {
        // only ASCII bases are ever stored
        std::str::from_utf8(&self.bases).expect("bases are ASCII")
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }
}

impl fmt::Debug for Read {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Read({:?})", self.as_str())
    }
}

impl fmt::Display for Read {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KmerParams {
    k: usize,
}

impl KmerParams {
    pub fn new(k: usize) -> Result<Self, SequenceError> {
        if k < 3 {
            return Err(SequenceError::KTooSmall(k));
        }
        Ok(KmerParams { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Length of a graph node label.
    pub fn node_len(&self) -> usize {
        self.k - 1
    }
}

impl Default for KmerParams {
    fn default() -> Self {
        KmerParams { k: DEFAULT_K }
    }
}

/// Uppercases `raw` and splits it at every byte outside `{A,C,G,T}`.
/// Each maximal valid run becomes one read, in input order.
pub fn normalize(raw: &str) -> Vec<Read> {
    let mut reads = Vec::new();
    let mut current = Vec::new();
    for b in raw.bytes().map(|b| b.to_ascii_uppercase()) {
        if is_base(b) {
            current.push(b);
        } else if !current.is_empty() {
            reads.push(Read {
                bases: std::mem::take(&mut current),
            });
        }
    }
    if !current.is_empty() {
        reads.push(Read { bases: current });
    }
    reads
}

/// All length-`k` windows of the read, left to right. Yields
/// `max(0, len - k + 1)` items.
pub fn kmers(read: &Read, params: KmerParams) -> std::slice::Windows<'_, u8> {
    read.bases.windows(params.k)
}

/// Splits a k-mer into its prefix and suffix `(k-1)`-mers.
pub fn kmer_to_edge(kmer: &[u8], params: KmerParams) -> Result<(&[u8], &[u8]), SequenceError> {
    if kmer.len() != params.k {
        return Err(SequenceError::LengthMismatch {
            expected: params.k,
            found: kmer.len(),
        });
    }
    Ok(split_kmer(kmer))
}

#[inline]
pub(crate) fn split_kmer(kmer: &[u8]) -> (&[u8], &[u8]) {
    let n = kmer.len();
    (&kmer[..n - 1], &kmer[1..])
}
