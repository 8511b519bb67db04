use std::path::PathBuf;

use streamasm::ConflictPolicy;
use thiserror::Error;

pub const USAGE: &str = "\
Usage: streamasm <file> <nGenes> <timeLimit> [ -c ]
<file>      file holding the reads, one per line or FASTA ('-' for standard input)
<nGenes>    number of genes to find
<timeLimit> computation time limit in milliseconds
-c          enter the start and stop codons interactively

Options:
  --k N                               k-mer length (default 201)
  --interval R                        walk the graph every R reads (default 1)
  --policy keep-first|overwrite-last  successor conflict policy (default keep-first)
  --frame                             only accept stop codons in the start codon's frame
  --verbose                           print read, node and gene counts to standard error

Other commands:
  streamasm gen <length> <seed> [--out FILE]
  streamasm bench <length> <seed> [--genes 15,30,45,60]
";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{reason}\n\n{USAGE}")]
pub struct UsageError {
    pub reason: String,
}

fn usage<T>(reason: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError {
        reason: reason.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub file: PathBuf,
    pub n_genes: usize,
    pub time_limit_ms: u64,
    pub custom_codons: bool,
    pub k: usize,
    pub interval: usize,
    pub policy: ConflictPolicy,
    pub enforce_frame: bool,
    pub verbose: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Run(CliConfig),
    Gen {
        length: usize,
        seed: u64,
        out: Option<PathBuf>,
    },
    Bench {
        length: usize,
        seed: u64,
        genes: Vec<usize>,
    },
    Help,
}

fn number<T: std::str::FromStr>(name: &str, value: &str) -> Result<T, UsageError> {
    value.parse().or_else(|_| {
        usage(format!(
            "{name} must be a non-negative integer, got {value:?}"
        ))
    })
}

fn positive(name: &str, value: &str) -> Result<usize, UsageError> {
    match number::<usize>(name, value)? {
        0 => usage(format!("{name} must be at least 1")),
        n => Ok(n),
    }
}

type Split<'a> = (Vec<&'a str>, Vec<(&'a str, Option<&'a str>)>);

/// Splits `args` into positionals and `--flag value` pairs. `flags_with_value`
/// lists the flags that take an argument; `switches` those that don't.
fn split<'a>(
    args: &'a [String],
    flags_with_value: &[&str],
    switches: &[&str],
) -> Result<Split<'a>, UsageError> {
    let mut positionals = Vec::new();
    let mut flags = Vec::new();
    let mut it = args.iter().map(String::as_str);
    while let Some(arg) = it.next() {
        if arg == "-" || !arg.starts_with('-') {
            positionals.push(arg);
        } else if switches.contains(&arg) {
            flags.push((arg, None));
        } else if flags_with_value.contains(&arg) {
            match it.next() {
                Some(v) => flags.push((arg, Some(v))),
                None => return usage(format!("{arg} needs a value")),
            }
        } else {
            return usage(format!("unknown option {arg}"));
        }
    }
    Ok((positionals, flags))
}

/// Parses the arguments after the program name.
pub fn parse_args(args: &[String]) -> Result<Command, UsageError> {
    if args.iter().any(|a| a == "-h" || a == "--help") {
        return Ok(Command::Help);
    }
    match args.first().map(String::as_str) {
        Some("gen") => parse_gen(&args[1..]),
        Some("bench") => parse_bench(&args[1..]),
        _ => parse_run(args).map(Command::Run),
    }
}

fn parse_run(args: &[String]) -> Result<CliConfig, UsageError> {
    let (pos, flags) = split(
        args,
        &["--k", "--interval", "--policy"],
        &["-c", "--frame", "--verbose"],
    )?;
    let [file, n_genes, time_limit] = pos[..] else {
        return usage(format!("expected 3 arguments, got {}", pos.len()));
    };
    let mut config = CliConfig {
        file: PathBuf::from(file),
        n_genes: positive("nGenes", n_genes)?,
        time_limit_ms: number("timeLimit", time_limit)?,
        custom_codons: false,
        k: streamasm::sequence::DEFAULT_K,
        interval: 1,
        policy: ConflictPolicy::KeepFirst,
        enforce_frame: false,
        verbose: false,
    };
    for (flag, value) in flags {
        let value = value.unwrap_or_default();
        match flag {
            "-c" => config.custom_codons = true,
            "--frame" => config.enforce_frame = true,
            "--verbose" => config.verbose = true,
            "--k" => {
                config.k = number("--k", value)?;
                if config.k < 3 {
                    return usage("--k must be at least 3");
                }
            }
            "--interval" => config.interval = positive("--interval", value)?,
            "--policy" => config.policy = value.parse().or_else(usage)?,
            _ => unreachable!(),
        }
    }
    Ok(config)
}

fn parse_gen(args: &[String]) -> Result<Command, UsageError> {
    let (pos, flags) = split(args, &["--out"], &[])?;
    let [length, seed] = pos[..] else {
        return usage("gen expects <length> <seed>");
    };
    Ok(Command::Gen {
        length: positive("length", length)?,
        seed: number("seed", seed)?,
        out: flags.last().and_then(|(_, v)| v.map(PathBuf::from)),
    })
}

fn parse_bench(args: &[String]) -> Result<Command, UsageError> {
    let (pos, flags) = split(args, &["--genes"], &[])?;
    let [length, seed] = pos[..] else {
        return usage("bench expects <length> <seed>");
    };
    let genes = match flags.last().and_then(|(_, v)| *v) {
        Some(list) => list
            .split(',')
            .map(|g| positive("--genes", g.trim()))
            .collect::<Result<_, _>>()?,
        None => vec![15, 30, 45, 60],
    };
    Ok(Command::Bench {
        length: positive("length", length)?,
        seed: number("seed", seed)?,
        genes,
    })
}
