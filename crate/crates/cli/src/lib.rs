//! Command-line front end: argument parsing and the three commands
//! (assemble a read file, generate synthetic reads, benchmark gene budgets).

pub mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use streamasm::io::{open_read_source, prompt_codons, OpenError, TextSink};
use streamasm::simulate::{bench, bench_csv, random_genome, shred, ShredSpec};
use streamasm::{
    process_stream, AssemblyConfig, CodonConfig, FrameRule, KmerParams, RunError, RunLimits,
};
use thiserror::Error;

pub use args::{parse_args, CliConfig, Command, UsageError, USAGE};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] UsageError),
    #[error(transparent)]
    Open(#[from] OpenError),
    #[error(transparent)]
    Run(#[from] RunError),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Assembles the reads named by `config`, writing genes and the summary
/// to `out`. Codon prompts and the verbose line go to `err`.
pub fn run_assembly<W: Write, E: Write>(
    config: &CliConfig,
    out: W,
    err: &mut E,
) -> Result<(), CliError> {
    let codons = if config.custom_codons {
        prompt_codons(&mut io::stdin().lock(), err)?
    } else {
        CodonConfig::default()
    };
    let assembly = AssemblyConfig {
        params: KmerParams::new(config.k).expect("k validated by the parser"),
        policy: config.policy,
        interval: config.interval,
        frame: if config.enforce_frame {
            FrameRule::InFrame
        } else {
            FrameRule::Any
        },
    };
    let source = open_read_source(&config.file)?;
    let limits = RunLimits::new(config.n_genes, config.time_limit_ms);
    let mut sink = TextSink::new(out);
    let stats = process_stream(source, assembly, codons, limits, &mut sink)?;
    if config.verbose {
        writeln!(
            err,
            "reads={} nodes={} genes={} passes={} avg_read_length={:.1}",
            stats.reads_processed,
            stats.nodes,
            stats.genes_found,
            stats.passes,
            stats.average_read_length()
        )?;
    }
    Ok(())
}

pub fn run<W: Write, E: Write>(command: Command, mut out: W, err: &mut E) -> Result<(), CliError> {
    match command {
        Command::Help => {
            out.write_all(USAGE.as_bytes())?;
        }
        Command::Run(config) => run_assembly(&config, out, err)?,
        Command::Gen {
            length,
            seed,
            out: path,
        } => {
            let reads = shred(&random_genome(length, seed), ShredSpec::default());
            let mut dest: Box<dyn Write> = match path {
                Some(p) => Box::new(BufWriter::new(File::create(p)?)),
                None => Box::new(BufWriter::new(out)),
            };
            for r in &reads {
                writeln!(dest, "{r}")?;
            }
            dest.flush()?;
        }
        Command::Bench {
            length,
            seed,
            genes,
        } => {
            let reads = shred(&random_genome(length, seed), ShredSpec::default());
            let rows = bench(
                &genes,
                &reads,
                AssemblyConfig::default(),
                CodonConfig::default(),
            );
            out.write_all(bench_csv(&rows).as_bytes())?;
        }
    }
    Ok(())
}
