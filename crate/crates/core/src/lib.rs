//! Streaming De Bruijn graph assembly of DNA reads.
//!
//! Reads arrive one at a time. Each read is folded into an indexed
//! functional De Bruijn graph over `(k-1)`-mers, the graph is re-walked from
//! every node that no edge points to, and genes (start codon through the
//! first eligible stop codon) are extracted from the resulting strands and
//! reported once each.

pub mod assembler;
pub mod genes;
pub mod graph;
pub mod io;
pub mod sequence;
pub mod simulate;

pub use assembler::{
    assemble_strands, ingest_read, process_stream, Assembler, AssemblyConfig, CollectSink,
    RunError, RunLimits, RunStats, Sink, Strand,
};
pub use genes::{
    extract_genes, scan_codons, Codon, CodonConfig, CodonSet, FrameRule, Gene, GeneFinder,
    GeneRegistry,
};
pub use graph::{ConflictPolicy, DeBruijnGraph, GraphError, NodeIndex};
pub use sequence::{kmer_to_edge, kmers, normalize, KmerParams, Read, SequenceError};
