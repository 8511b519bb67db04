//! Greedy start/stop codon matching and the registry of reported genes.
//!
//! A strand is scanned for start and stop codon positions. The earliest
//! start is paired with the earliest stop that begins at least three bases
//! after it, so the gene ending at that stop is as long as possible. Any
//! start codons before the end of the emitted gene are dropped and scanning
//! resumes just after the stop codon.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodonError {
    #[error("invalid codon {0:?}: expected three of A, C, G, T")]
    Invalid(String),
    #[error("codon {0} is both a start and a stop codon")]
    Overlap(Codon),
}

#[inline]
fn base_code(b: u8) -> Option<u8> {
    match b {
        b'A' => Some(0),
        b'C' => Some(1),
        b'G' => Some(2),
        b'T' => Some(3),
        _ => None,
    }
}

/// Three uppercase nucleotides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codon([u8; 3]);

impl Codon {
    pub fn parse(token: &str) -> Result<Self, CodonError> {
        let up = token.to_ascii_uppercase();
        match up.as_bytes() {
            &[a, b, c] if [a, b, c].iter().all(|&x| base_code(x).is_some()) => Ok(Codon([a, b, c])),
            _ => Err(CodonError::Invalid(token.to_string())),
        }
    }

    fn code(self) -> u8 {
        let [a, b, c] = self.0.map(|x| base_code(x).unwrap());
        (a << 4) | (b << 2) | c
    }

    fn from_code(code: u8) -> Self {
        const BASES: [u8; 4] = *b"ACGT";
        Codon([
            BASES[(code >> 4) as usize & 3],
            BASES[(code >> 2) as usize & 3],
            BASES[code as usize & 3],
        ])
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).unwrap()
    }
}

impl fmt::Display for Codon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A set of codons as a 64-bit mask over the 2-bit base encoding.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CodonSet(u64);

impl CodonSet {
    pub fn new<I: IntoIterator<Item = Codon>>(codons: I) -> Self {
        codons.into_iter().fold(CodonSet(0), |mut set, c| {
            set.insert(c);
            set
        })
    }

    pub fn parse(tokens: &[&str]) -> Result<Self, CodonError> {
        tokens
            .iter()
            .map(|t| Codon::parse(t))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }

    pub fn insert(&mut self, codon: Codon) {
        self.0 |= 1 << codon.code();
    }

    pub fn contains(&self, codon: Codon) -> bool {
        self.0 & (1 << codon.code()) != 0
    }

    #[inline]
    pub fn matches(&self, window: &[u8]) -> bool {
        match (
            base_code(window[0]),
            base_code(window[1]),
            base_code(window[2]),
        ) {
            (Some(a), Some(b), Some(c)) => self.0 & (1 << ((a << 4) | (b << 2) | c)) != 0,
            _ => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Codon> + '_ {
        (0..64u8)
            .filter(|&c| self.0 & (1 << c) != 0)
            .map(Codon::from_code)
    }

    fn intersection(&self, other: &CodonSet) -> CodonSet {
        CodonSet(self.0 & other.0)
    }
}

impl fmt::Display for CodonSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodonConfig {
    starts: CodonSet,
    stops: CodonSet,
}

impl CodonConfig {
    pub fn new(starts: CodonSet, stops: CodonSet) -> Result<Self, CodonError> {
        if let Some(c) = starts.intersection(&stops).iter().next() {
            return Err(CodonError::Overlap(c));
        }
        Ok(CodonConfig { starts, stops })
    }

    pub fn default_starts() -> CodonSet {
        CodonSet::parse(&["ATG"]).unwrap()
    }

    pub fn default_stops() -> CodonSet {
        CodonSet::parse(&["TGA", "TAA", "TAG"]).unwrap()
    }

    pub fn starts(&self) -> CodonSet {
        self.starts
    }

    pub fn stops(&self) -> CodonSet {
        self.stops
    }
}

impl Default for CodonConfig {
    fn default() -> Self {
        CodonConfig {
            starts: Self::default_starts(),
            stops: Self::default_stops(),
        }
    }
}

/// A strand substring from a start codon through its matched stop codon.
/// Stored uppercase.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gene {
    text: String,
    start: usize,
}

impl Gene {
    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// Offset of the start codon within the source strand.
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn to_lowercase(&self) -> String {
        self.text.to_ascii_lowercase()
    }
}

/// Ascending positions where the 3-base window at `p` is in `set`.
/// Overlapping occurrences are all reported.
pub fn scan_codons(text: &[u8], set: CodonSet) -> Vec<usize> {
    if text.len() < 3 {
        return Vec::new();
    }
    text.windows(3)
        .enumerate()
        .filter(|(_, w)| set.matches(w))
        .map(|(p, _)| p)
        .collect()
}

/// Whether the stop must lie in the same reading frame as the start.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum FrameRule {
    #[default]
    Any,
    InFrame,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GeneFinder {
    pub codons: CodonConfig,
    pub frame: FrameRule,
}

impl GeneFinder {
    pub fn new(codons: CodonConfig, frame: FrameRule) -> Self {
        GeneFinder { codons, frame }
    }

    pub fn extract(&self, text: &[u8]) -> Vec<Gene> {
        let starts = scan_codons(text, self.codons.starts);
        let stops = scan_codons(text, self.codons.stops);
        let mut genes = Vec::new();
        let mut emit = |i: usize, j: usize| {
            genes.push(Gene {
                text: String::from_utf8_lossy(&text[i..j + 3]).into_owned(),
                start: i,
            });
            j + 3
        };

        match self.frame {
            FrameRule::Any => {
                let (mut si, mut sj, mut pos) = (0, 0, 0);
                loop {
                    while si < starts.len() && starts[si] < pos {
                        si += 1;
                    }
                    let Some(&i) = starts.get(si) else { break };
                    while sj < stops.len() && stops[sj] < i + 3 {
                        sj += 1;
                    }
                    let Some(&j) = stops.get(sj) else { break };
                    pos = emit(i, j);
                }
            }
            FrameRule::InFrame => {
                let mut by_frame: [Vec<usize>; 3] = Default::default();
                for &j in &stops {
                    by_frame[j % 3].push(j);
                }
                let mut pos = 0;
                let mut si = 0;
                while si < starts.len() {
                    let i = starts[si];
                    si += 1;
                    if i < pos {
                        continue;
                    }
                    let frame = &by_frame[i % 3];
                    let at = frame.partition_point(|&j| j < i + 3);
                    if let Some(&j) = frame.get(at) {
                        pos = emit(i, j);
                    }
                }
            }
        }
        genes
    }
}

/// Greedy extraction with no frame constraint.
pub fn extract_genes(text: &[u8], config: &CodonConfig) -> Vec<Gene> {
    GeneFinder::new(*config, FrameRule::Any).extract(text)
}

/// Every gene reported so far, by uppercase text.
#[derive(Debug, Default, Clone)]
pub struct GeneRegistry {
    seen: HashSet<String>,
}

impl GeneRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// `true` the first time a gene text is seen.
    pub fn register(&mut self, gene: &Gene) -> bool {
        self.register_text(&gene.text)
    }

    pub fn register_text(&mut self, text: &str) -> bool {
        if self.seen.contains(text) {
            return false;
        }
        let key = text.to_ascii_uppercase();
        if self.seen.contains(&key) {
            return false;
        }
        self.seen.insert(key)
    }

    pub fn contains(&self, text: &str) -> bool {
        self.seen.contains(&text.to_ascii_uppercase())
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }
}
