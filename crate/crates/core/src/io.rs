//! Read sources, output formatting and the interactive codon prompt.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::assembler::{RunStats, Sink};
use crate::genes::{Codon, CodonConfig, CodonSet, Gene};

#[derive(Debug, Error)]
#[error("cannot open {}: {source}", path.display())]
pub struct OpenError {
    pub path: PathBuf,
    #[source]
    pub source: io::Error,
}

/// Lazily yields one raw read text at a time.
///
/// Lines before the first `>` header are plain reads, one per non-empty
/// line. From the first header on, each record's sequence lines are
/// concatenated into one read, yielded when the next header (or EOF) is
/// reached.
pub struct ReadSource<R> {
    input: R,
    line: String,
    in_fasta: bool,
    record: Option<String>,
    done: bool,
}

impl<R: BufRead> ReadSource<R> {
    pub fn new(input: R) -> Self {
        ReadSource {
            input,
            line: String::new(),
            in_fasta: false,
            record: None,
            done: false,
        }
    }
}

impl<R: BufRead> Iterator for ReadSource<R> {
    type Item = io::Result<String>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            self.line.clear();
            match self.input.read_line(&mut self.line) {
                Ok(0) => {
                    self.done = true;
                    return self.record.take().map(Ok);
                }
                Ok(_) => {}
                Err(e) => {
                    self.done = true;
                    return Some(Err(e));
                }
            }
            let line = self.line.trim_end_matches(['\n', '\r']);
            if line.starts_with('>') {
                self.in_fasta = true;
                if let Some(record) = self.record.replace(String::new()) {
                    return Some(Ok(record));
                }
                continue;
            }
            if self.in_fasta {
                self.record
                    .get_or_insert_with(String::new)
                    .push_str(line.trim());
            } else if !line.trim().is_empty() {
                return Some(Ok(line.trim().to_string()));
            }
        }
    }
}

/// Opens `path`, or standard input for `-`.
pub fn open_read_source(path: &Path) -> Result<ReadSource<Box<dyn BufRead>>, OpenError> {
    let input: Box<dyn BufRead> = if path.as_os_str() == "-" {
        Box::new(io::stdin().lock())
    } else {
        let file = File::open(path).map_err(|source| OpenError {
            path: path.to_path_buf(),
            source,
        })?;
        Box::new(BufReader::new(file))
    };
    Ok(ReadSource::new(input))
}

pub fn format_summary(genes: usize, elapsed_ms: f64) -> String {
    format!("Found {genes} fragments in {elapsed_ms:.1}ms")
}

/// Prints each gene in lowercase on its own line as soon as it is found,
/// then the summary line.
pub struct TextSink<W: Write> {
    out: W,
}

impl<W: Write> TextSink<W> {
    pub fn new(out: W) -> Self {
        TextSink { out }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl<W: Write> Sink for TextSink<W> {
    fn gene(&mut self, gene: &Gene) -> io::Result<()> {
        writeln!(self.out, "{}", gene.to_lowercase())?;
        self.out.flush()
    }

    fn summary(&mut self, stats: &RunStats) -> io::Result<()> {
        writeln!(
            self.out,
            "{}",
            format_summary(stats.genes_found, stats.elapsed_ms)
        )?;
        self.out.flush()
    }
}

pub const START_PROMPT: &str = "Enter the initial codons separated by spaces:";
pub const STOP_PROMPT: &str = "Enter the final codons separated by spaces:";

/// Asks for start and stop codons, one line each. Tokens may be separated
/// by whitespace or commas; an empty line keeps the defaults for that set.
/// Invalid tokens, or stops that repeat a start codon, re-prompt.
pub fn prompt_codons<R: BufRead, W: Write>(
    input: &mut R,
    output: &mut W,
) -> io::Result<CodonConfig> {
    let starts = prompt_set(
        input,
        output,
        START_PROMPT,
        CodonConfig::default_starts(),
        None,
    )?;
    let stops = prompt_set(
        input,
        output,
        STOP_PROMPT,
        CodonConfig::default_stops(),
        Some(starts),
    )?;
    Ok(CodonConfig::new(starts, stops).expect("disjointness checked while prompting"))
}

fn prompt_set<R: BufRead, W: Write>(
    input: &mut R,
    output: &mut W,
    prompt: &str,
    default: CodonSet,
    exclude: Option<CodonSet>,
) -> io::Result<CodonSet> {
    let mut line = String::new();
    loop {
        writeln!(output, "{prompt}")?;
        output.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            return Ok(default);
        }
        match parse_codon_line(&line) {
            Ok(set) if set.is_empty() => return Ok(default),
            Ok(set) => match exclude.and_then(|ex| set.iter().find(|c| ex.contains(*c))) {
                Some(c) => writeln!(output, "codon {c} is already a start codon")?,
                None => return Ok(set),
            },
            Err(bad) => writeln!(output, "invalid codon: {bad}")?,
        }
    }
}

/// Parses a comma- or whitespace-separated codon list; on failure returns
/// the first offending token.
pub fn parse_codon_line(line: &str) -> Result<CodonSet, String> {
    let mut set = CodonSet::default();
    for token in line
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        set.insert(Codon::parse(token).map_err(|_| token.to_string())?);
    }
    Ok(set)
}
