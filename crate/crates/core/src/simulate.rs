//! Seeded synthetic genomes, shredding into overlapping reads, and the
//! gene-budget benchmark table.

use std::fmt::Write as _;
use std::io;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assembler::{process_stream, AssemblyConfig, RunLimits, RunStats, Sink};
use crate::genes::{CodonConfig, Gene};

const BASES: [u8; 4] = *b"ACGT";

/// Uniform i.i.d. bases from a ChaCha8 stream seeded with `seed`.
pub fn random_genome(length: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..length)
        .map(|_| BASES[rng.random_range(0..4)] as char)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShredSpec {
    pub read_length: usize,
    pub step: usize,
}

impl Default for ShredSpec {
    fn default() -> Self {
        ShredSpec {
            read_length: 400,
            step: 150,
        }
    }
}

impl ShredSpec {
    /// Whether every k-mer of a shredded genome lands in at least one read.
    pub fn covers_kmers(&self, k: usize) -> bool {
        self.read_length >= k && self.step <= self.read_length - k + 1
    }
}

/// Reads at offsets `0, step, 2*step, ...`, plus one read flush with the
/// genome end if the last regular read stops short of it.
pub fn shred(genome: &str, spec: ShredSpec) -> Vec<String> {
    let n = genome.len();
    if spec.read_length >= n {
        return vec![genome.to_string()];
    }
    let step = spec.step.max(1);
    let last = n - spec.read_length;
    let mut reads: Vec<String> = (0..=last)
        .step_by(step)
        .map(|off| genome[off..off + spec.read_length].to_string())
        .collect();
    if !last.is_multiple_of(step) {
        reads.push(genome[last..].to_string());
    }
    reads
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub requested_genes: usize,
    pub elapsed_ms: f64,
    pub nodes: usize,
    pub reads_processed: usize,
    pub genes_found: usize,
}

impl From<(usize, RunStats)> for BenchRow {
    fn from((requested_genes, stats): (usize, RunStats)) -> Self {
        BenchRow {
            requested_genes,
            elapsed_ms: stats.elapsed_ms,
            nodes: stats.nodes,
            reads_processed: stats.reads_processed,
            genes_found: stats.genes_found,
        }
    }
}

pub const BENCH_HEADER: &str = "n_genes,elapsed_ms,node_count,reads_processed,genes_found";

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{:.1},{},{},{}",
            r.requested_genes, r.elapsed_ms, r.nodes, r.reads_processed, r.genes_found
        )
        .unwrap();
    }
    out
}

struct Discard;

impl Sink for Discard {
    fn gene(&mut self, _: &Gene) -> io::Result<()> {
        Ok(())
    }

    fn summary(&mut self, _: &RunStats) -> io::Result<()> {
        Ok(())
    }
}

/// Runs the full pipeline over `reads` once per requested gene budget,
/// with no time limit.
pub fn bench(
    gene_budgets: &[usize],
    reads: &[String],
    config: AssemblyConfig,
    codons: CodonConfig,
) -> Vec<BenchRow> {
    gene_budgets
        .iter()
        .map(|&budget| {
            let source = reads.iter().map(|r| Ok(r.clone()));
            let stats = process_stream(
                source,
                config,
                codons,
                RunLimits::new(budget, u64::MAX),
                &mut Discard,
            )
            .expect("in-memory source and sink cannot fail");
            BenchRow::from((budget, stats))
        })
        .collect()
}
