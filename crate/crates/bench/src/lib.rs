//! Fixtures shared by the criterion benches.

use streamasm::simulate::{random_genome, shred, ShredSpec};
use streamasm::{ingest_read, DeBruijnGraph, KmerParams, Read};

/// Shredded reads of a seeded genome, validated once up front.
pub fn reads(genome_length: usize, seed: u64) -> Vec<Read> {
    shred(&random_genome(genome_length, seed), ShredSpec::default())
        .iter()
        .map(|r| Read::new(r).unwrap())
        .collect()
}

/// A single-chain graph with `nodes` nodes (k = 24).
pub fn path_graph(nodes: usize, seed: u64) -> DeBruijnGraph {
    let k = 24;
    let genome = Read::new(&random_genome(nodes + k - 2, seed)).unwrap();
    let mut g = DeBruijnGraph::new(KmerParams::new(k).unwrap());
    ingest_read(&mut g, &genome);
    g
}
