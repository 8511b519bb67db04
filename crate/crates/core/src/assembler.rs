//! The on-line pipeline: fold each read into the graph, re-walk every
//! initial node into strands, and report genes not seen before.

use std::collections::VecDeque;
use std::io;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::genes::{CodonConfig, FrameRule, Gene, GeneFinder, GeneRegistry};
use crate::graph::{ConflictPolicy, DeBruijnGraph, NodeIndex, WalkScratch};
use crate::sequence::{kmers, normalize, split_kmer, KmerParams, Read};

/// Text spelled by a successor chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub text: String,
    pub origin: NodeIndex,
}

/// Folds every k-mer of `read` into `graph`. Returns the number of k-mers
/// processed; reads shorter than `k` leave the graph untouched.
pub fn ingest_read(graph: &mut DeBruijnGraph, read: &Read) -> usize {
    let mut count = 0;
    for kmer in kmers(read, graph.params()) {
        let (left, right) = split_kmer(kmer);
        let l = graph.intern_trusted(left);
        let r = graph.intern_trusted(right);
        graph
            .add_edge(l, r)
            .expect("freshly interned indices are in range");
        count += 1;
    }
    count
}

/// Appends to `out` the text of `path`: the first label in full, then the
/// last base of each following label.
pub fn spell(graph: &DeBruijnGraph, path: &[NodeIndex], out: &mut Vec<u8>) {
    let Some((first, rest)) = path.split_first() else {
        return;
    };
    out.extend_from_slice(graph.resolve(*first).expect("path node in range"));
    let last = graph.node_len() - 1;
    out.extend(
        rest.iter()
            .map(|&n| graph.resolve(n).expect("path node in range")[last]),
    );
}

/// One strand per initial node, in ascending index order.
pub fn assemble_strands(graph: &DeBruijnGraph) -> Vec<Strand> {
    let mut scratch = WalkScratch::default();
    assemble_strands_with(graph, &mut scratch)
}

pub fn assemble_strands_with(graph: &DeBruijnGraph, scratch: &mut WalkScratch) -> Vec<Strand> {
    let mut path = Vec::new();
    let mut buf = Vec::new();
    graph
        .initials()
        .into_iter()
        .map(|origin| {
            scratch.walk(graph, origin, &mut path);
            buf.clear();
            spell(graph, &path, &mut buf);
            Strand {
                text: String::from_utf8(buf.clone()).expect("labels are ASCII"),
                origin,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunLimits {
    pub max_genes: usize,
    pub time_limit_ms: u64,
}

impl RunLimits {
    pub fn new(max_genes: usize, time_limit_ms: u64) -> Self {
        RunLimits {
            max_genes,
            time_limit_ms,
        }
    }

    pub fn unlimited() -> Self {
        RunLimits::new(usize::MAX, u64::MAX)
    }

    fn reached(&self, genes_found: usize, elapsed: Duration) -> bool {
        genes_found >= self.max_genes || elapsed >= Duration::from_millis(self.time_limit_ms)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunStats {
    pub reads_processed: usize,
    pub bases_processed: usize,
    pub nodes: usize,
    pub genes_found: usize,
    pub passes: usize,
    pub elapsed_ms: f64,
}

impl RunStats {
    pub fn average_read_length(&self) -> f64 {
        if self.reads_processed == 0 {
            0.0
        } else {
            self.bases_processed as f64 / self.reads_processed as f64
        }
    }
}

/// Receives genes as they are discovered and the final summary.
pub trait Sink {
    fn gene(&mut self, gene: &Gene) -> io::Result<()>;
    fn summary(&mut self, stats: &RunStats) -> io::Result<()>;
}

/// Collects everything in memory.
#[derive(Debug, Default, Clone)]
pub struct CollectSink {
    pub genes: Vec<Gene>,
    pub summary: Option<RunStats>,
}

impl Sink for CollectSink {
    fn gene(&mut self, gene: &Gene) -> io::Result<()> {
        self.genes.push(gene.clone());
        Ok(())
    }

    fn summary(&mut self, stats: &RunStats) -> io::Result<()> {
        self.summary = Some(*stats);
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssemblyConfig {
    pub params: KmerParams,
    pub policy: ConflictPolicy,
    /// Traverse after every `interval` reads; must be at least 1.
    pub interval: usize,
    pub frame: FrameRule,
}

impl Default for AssemblyConfig {
    fn default() -> Self {
        AssemblyConfig {
            params: KmerParams::default(),
            policy: ConflictPolicy::KeepFirst,
            interval: 1,
            frame: FrameRule::Any,
        }
    }
}

impl AssemblyConfig {
    pub fn with_k(k: usize) -> Result<Self, crate::sequence::SequenceError> {
        Ok(AssemblyConfig {
            params: KmerParams::new(k)?,
            ..Default::default()
        })
    }
}

/// Incremental assembler state: graph, gene registry and traversal buffers.
#[derive(Debug)]
pub struct Assembler {
    graph: DeBruijnGraph,
    finder: GeneFinder,
    registry: GeneRegistry,
    scratch: WalkScratch,
    path: Vec<NodeIndex>,
    strand: Vec<u8>,
    interval: usize,
    unwalked_reads: usize,
    reads: usize,
    bases: usize,
    passes: usize,
}

impl Assembler {
    pub fn new(config: AssemblyConfig, codons: CodonConfig) -> Self {
        Assembler {
            graph: DeBruijnGraph::with_policy(config.params, config.policy),
            finder: GeneFinder::new(codons, config.frame),
            registry: GeneRegistry::new(),
            scratch: WalkScratch::default(),
            path: Vec::new(),
            strand: Vec::new(),
            interval: config.interval.max(1),
            unwalked_reads: 0,
            reads: 0,
            bases: 0,
            passes: 0,
        }
    }

    pub fn graph(&self) -> &DeBruijnGraph {
        &self.graph
    }

    pub fn registry(&self) -> &GeneRegistry {
        &self.registry
    }

    /// Ingests one read and, on the traversal cadence, runs a full pass.
    /// Returns the number of genes newly reported.
    pub fn push_read<S: Sink + ?Sized>(&mut self, read: &Read, sink: &mut S) -> io::Result<usize> {
        ingest_read(&mut self.graph, read);
        self.reads += 1;
        self.bases += read.len();
        self.unwalked_reads += 1;
        if self.unwalked_reads >= self.interval {
            self.pass(sink)
        } else {
            Ok(0)
        }
    }

    /// Walks every initial node, extracts genes from each strand and
    /// reports the ones not registered before, in strand then position
    /// order.
    pub fn pass<S: Sink + ?Sized>(&mut self, sink: &mut S) -> io::Result<usize> {
        self.unwalked_reads = 0;
        self.passes += 1;
        let mut new = 0;
        for (i, flag) in self.graph.initial_flags().iter().enumerate() {
            if !flag {
                continue;
            }
            self.scratch
                .walk(&self.graph, NodeIndex::new(i), &mut self.path);
            self.strand.clear();
            spell(&self.graph, &self.path, &mut self.strand);
            for gene in self.finder.extract(&self.strand) {
                if self.registry.register(&gene) {
                    new += 1;
                    sink.gene(&gene)?;
                }
            }
        }
        Ok(new)
    }

    pub fn has_unwalked_reads(&self) -> bool {
        self.unwalked_reads > 0
    }

    pub fn stats(&self, elapsed: Duration) -> RunStats {
        RunStats {
            reads_processed: self.reads,
            bases_processed: self.bases,
            nodes: self.graph.len(),
            genes_found: self.registry.len(),
            passes: self.passes,
            elapsed_ms: elapsed.as_secs_f64() * 1000.0,
        }
    }

    pub fn strands(&mut self) -> Vec<Strand> {
        assemble_strands_with(&self.graph, &mut self.scratch)
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("reading input: {source}")]
    Source {
        stats: RunStats,
        #[source]
        source: io::Error,
    },
    #[error("writing output: {0}")]
    Sink(#[from] io::Error),
}

/// Consumes raw read texts one at a time, in arrival order.
///
/// The gene and time budgets are checked before each read, so every gene
/// found during a pass is reported even when the pass crosses the gene
/// budget. The summary is always sent to the sink, including when the
/// source fails.
pub fn process_stream<I, S>(
    source: I,
    config: AssemblyConfig,
    codons: CodonConfig,
    limits: RunLimits,
    sink: &mut S,
) -> Result<RunStats, RunError>
where
    I: IntoIterator<Item = io::Result<String>>,
    S: Sink + ?Sized,
{
    let start = Instant::now();
    let mut asm = Assembler::new(config, codons);
    let mut source = source.into_iter();
    let mut pending: VecDeque<Read> = VecDeque::new();
    let mut failure = None;
    let mut exhausted = false;

    loop {
        if limits.reached(asm.registry.len(), start.elapsed()) {
            break;
        }
        let read = match pending.pop_front() {
            Some(read) => read,
            None => match source.next() {
                Some(Ok(raw)) => {
                    pending.extend(normalize(&raw));
                    continue;
                }
                Some(Err(e)) => {
                    failure = Some(e);
                    break;
                }
                None => {
                    exhausted = true;
                    break;
                }
            },
        };
        asm.push_read(&read, sink)?;
    }
    if exhausted && asm.has_unwalked_reads() {
        asm.pass(sink)?;
    }

    let stats = asm.stats(start.elapsed());
    sink.summary(&stats)?;
    match failure {
        Some(source) => Err(RunError::Source { stats, source }),
        None => Ok(stats),
    }
}
