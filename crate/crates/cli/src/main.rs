//! Command-line front end: build indexes, run queries, self-check against
//! the brute-force oracles, and benchmark query-time scaling.
//!
//! Exit codes: 0 success, 1 usage error, 2 check-mode mismatch, 3 I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use wtq::io::{read_index_file, write_document_index, write_sequence_index, Index};
use wtq::oracle::{naive_distinct, naive_doclist, naive_quantile, naive_range_count};
use wtq::{DocIndex, Error, WaveletTree, WaveletTree64};

const EXIT_USAGE: u8 = 1;
const EXIT_CHECK_MISMATCH: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "wtq", about = "Wavelet-tree range quantile and document-listing indexes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IndexArg {
    /// Path to a previously built index file.
    #[arg(long)]
    index: PathBuf,
}

#[derive(Args)]
struct RangeArgs {
    /// Left endpoint, 1-indexed inclusive.
    #[arg(short)]
    l: usize,
    /// Right endpoint, 1-indexed inclusive.
    #[arg(short)]
    r: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from whitespace-separated unsigned integers, or from
    /// a document corpus with --docs.
    Build {
        /// Input file(s). With --docs, each file is one document unless
        /// --delimiter is given.
        #[arg(required = true)]
        input: Vec<PathBuf>,
        /// Where to write the index.
        #[arg(long)]
        index: PathBuf,
        /// Build a document-listing index instead of a sequence index.
        #[arg(long)]
        docs: bool,
        /// Split a single input file into documents on lines equal to this
        /// delimiter (implies --docs).
        #[arg(long)]
        delimiter: Option<String>,
    },
    /// k-th smallest value in s[l..r].
    Quantile {
        #[command(flatten)]
        index: IndexArg,
        /// Rank within the range, 1-indexed.
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        range: RangeArgs,
        /// Print one "k=.. l=.. r=.." line per level of the descent.
        #[arg(long)]
        trace: bool,
        /// Also run the brute-force oracle and fail on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Median of s[l..r]: quantile at k = ceil((r-l+1)/2).
    Median {
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        check: bool,
    },
    /// Distinct values of s[l..r] with multiplicities, one per line.
    Distinct {
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        check: bool,
    },
    /// Number of positions in [l, r] with a value in [lo, hi].
    Count {
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        range: RangeArgs,
        /// Smallest value counted.
        #[arg(long)]
        lo: u64,
        /// Largest value counted.
        #[arg(long)]
        hi: u64,
        #[arg(long)]
        check: bool,
    },
    /// Documents containing the pattern, one "docid TAB count" line each.
    Doclist {
        #[command(flatten)]
        index: IndexArg,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        check: bool,
    },
    /// Mean quantile latency over random queries for each alphabet size,
    /// one "sigma TAB mean_ns" line per sigma.
    Bench {
        /// Sequence length.
        #[arg(short, default_value_t = 1_000_000)]
        n: usize,
        /// Alphabet sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,16,256,4096")]
        sigma: Vec<u64>,
        /// Queries per alphabet size.
        #[arg(long, default_value_t = 100_000)]
        queries: usize,
        /// Seed for the generated sequences and queries.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::CheckMismatch(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(EXIT_CHECK_MISMATCH)
        }
        Err(CliError::Index(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) | Error::Format(_) => ExitCode::from(EXIT_IO),
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

enum CliError {
    Index(Error),
    Usage(String),
    CheckMismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Index(e)
    }
}

type CliResult = Result<(), CliError>;

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Build {
            input,
            index,
            docs,
            delimiter,
        } => cmd_build(&input, &index, docs, delimiter.as_deref()),
        Command::Quantile {
            index,
            k,
            range,
            trace,
            check,
        } => cmd_quantile(&index, Some(k), &range, trace, check),
        Command::Median {
            index,
            range,
            trace,
            check,
        } => cmd_quantile(&index, None, &range, trace, check),
        Command::Distinct {
            index,
            range,
            check,
        } => cmd_distinct(&index, &range, check),
        Command::Count {
            index,
            range,
            lo,
            hi,
            check,
        } => cmd_count(&index, &range, lo, hi, check),
        Command::Doclist {
            index,
            pattern,
            check,
        } => cmd_doclist(&index, pattern.as_bytes(), check),
        Command::Bench {
            n,
            sigma,
            queries,
            seed,
        } => cmd_bench(n, &sigma, queries, seed),
    }
}

fn load_sequence(arg: &IndexArg) -> Result<WaveletTree64, CliError> {
    match read_index_file(&arg.index)? {
        Index::Sequence(wt) => Ok(wt),
        Index::Documents(_) => Err(CliError::Usage(
            "this command needs a sequence index, found a document index".into(),
        )),
    }
}

fn load_documents(arg: &IndexArg) -> Result<DocIndex, CliError> {
    match read_index_file(&arg.index)? {
        Index::Documents(idx) => Ok(idx),
        Index::Sequence(_) => Err(CliError::Usage(
            "this command needs a document index, found a sequence index".into(),
        )),
    }
}

/// Rebuilds the original sequence through access; the check-mode oracles
/// run against this reconstruction.
fn reconstruct(wt: &WaveletTree64) -> Result<Vec<u64>, Error> {
    (1..=wt.len()).map(|i| wt.access(i)).collect()
}

fn cmd_build(
    inputs: &[PathBuf],
    index: &Path,
    docs: bool,
    delimiter: Option<&str>,
) -> CliResult {
    if docs || delimiter.is_some() {
        let documents = read_corpus(inputs, delimiter)?;
        let idx = DocIndex::build(&documents)?;
        write_document_index(index, &idx)?;
        let wt = idx.e_tree();
        println!(
            "k={} n={} sigma={} depth={} bits={}",
            idx.doc_count(),
            idx.text_len(),
            wt.alphabet().len(),
            wt.depth(),
            wt.stored_bits()
        );
        return Ok(());
    }

    if inputs.len() != 1 {
        return Err(CliError::Usage(
            "sequence mode takes exactly one input file".into(),
        ));
    }
    let raw = fs::read_to_string(&inputs[0]).map_err(Error::from)?;
    let mut values = Vec::new();
    for tok in raw.split_whitespace() {
        let v: u64 = tok
            .parse()
            .map_err(|_| CliError::Usage(format!("malformed integer {tok:?}")))?;
        values.push(v);
    }
    let wt = WaveletTree::build(&values)?;
    write_sequence_index(index, &wt)?;
    println!(
        "n={} sigma={} depth={} bits={}",
        wt.len(),
        wt.alphabet().len(),
        wt.depth(),
        wt.stored_bits()
    );
    Ok(())
}

fn read_corpus(inputs: &[PathBuf], delimiter: Option<&str>) -> Result<Vec<Vec<u8>>, CliError> {
    match delimiter {
        Some(delim) => {
            if inputs.len() != 1 {
                return Err(CliError::Usage(
                    "--delimiter takes exactly one input file".into(),
                ));
            }
            let raw = fs::read_to_string(&inputs[0]).map_err(Error::from)?;
            let mut documents = Vec::new();
            let mut current = String::new();
            let mut first = true;
            for line in raw.lines() {
                if line == delim {
                    documents.push(std::mem::take(&mut current).into_bytes());
                    first = true;
                } else {
                    if !first {
                        current.push('\n');
                    }
                    current.push_str(line);
                    first = false;
                }
            }
            documents.push(current.into_bytes());
            Ok(documents)
        }
        None => inputs
            .iter()
            .map(|p| fs::read(p).map_err(|e| CliError::Index(e.into())))
            .collect(),
    }
}

fn cmd_quantile(
    index: &IndexArg,
    k: Option<usize>,
    range: &RangeArgs,
    trace: bool,
    check: bool,
) -> CliResult {
    let wt = load_sequence(index)?;
    let (l, r) = (range.l, range.r);
    let k = match k {
        Some(k) => k,
        None => {
            if l == 0 || l > r || r > wt.len() {
                return Err(Error::InvalidRange {
                    lo: l,
                    hi: r,
                    len: wt.len(),
                }
                .into());
            }
            (r - l + 1).div_ceil(2)
        }
    };
    let (value, steps) = wt.quantile_trace(k, l, r)?;
    println!("{value}");
    if trace {
        for s in &steps {
            println!("k={} l={} r={}", s.k, s.l, s.r);
        }
    }
    if check {
        let s = reconstruct(&wt)?;
        let expected = naive_quantile(&s, k, l, r)?;
        if expected != value {
            return Err(CliError::CheckMismatch(format!(
                "quantile({k}, {l}, {r}) = {value}, oracle says {expected}"
            )));
        }
    }
    Ok(())
}

fn cmd_distinct(index: &IndexArg, range: &RangeArgs, check: bool) -> CliResult {
    let wt = load_sequence(index)?;
    let items = wt.range_distinct(range.l, range.r)?;
    for d in &items {
        println!("{}\t{}", d.value, d.multiplicity);
    }
    if check {
        let s = reconstruct(&wt)?;
        let expected = naive_distinct(&s, range.l, range.r)?;
        let got: Vec<(u64, usize)> = items.iter().map(|d| (d.value, d.multiplicity)).collect();
        if got != expected {
            return Err(CliError::CheckMismatch(format!(
                "distinct({}, {}) disagrees with the oracle",
                range.l, range.r
            )));
        }
    }
    Ok(())
}

fn cmd_count(index: &IndexArg, range: &RangeArgs, lo: u64, hi: u64, check: bool) -> CliResult {
    let wt = load_sequence(index)?;
    let count = wt.range_count(range.l, range.r, lo, hi)?;
    println!("{count}");
    if check {
        let s = reconstruct(&wt)?;
        let expected = naive_range_count(&s, range.l, range.r, lo, hi)?;
        if expected != count {
            return Err(CliError::CheckMismatch(format!(
                "count = {count}, oracle says {expected}"
            )));
        }
    }
    Ok(())
}

fn cmd_doclist(index: &IndexArg, pattern: &[u8], check: bool) -> CliResult {
    let idx = load_documents(index)?;
    let listed = idx.list_documents(pattern)?;
    for (doc, count) in &listed {
        println!("{doc}\t{count}");
    }
    if check {
        let documents: Vec<Vec<u8>> = (1..=idx.doc_count())
            .map(|d| idx.document(d).expect("id in range").to_vec())
            .collect();
        let expected = naive_doclist(&documents, pattern)?;
        if listed != expected {
            return Err(CliError::CheckMismatch(
                "document listing disagrees with the per-document scan".into(),
            ));
        }
    }
    Ok(())
}

fn cmd_bench(n: usize, sigmas: &[u64], queries: usize, seed: u64) -> CliResult {
    if n == 0 {
        return Err(CliError::Usage("bench needs n >= 1".into()));
    }
    for &sigma in sigmas {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ sigma.wrapping_mul(0x9e3779b97f4a7c15));
        let s: Vec<u64> = (0..n).map(|_| rng.gen_range(0..sigma.max(1))).collect();
        let wt = WaveletTree::build(&s).map_err(CliError::Index)?;
        let plan: Vec<(usize, usize, usize)> = (0..queries)
            .map(|_| {
                let l = rng.gen_range(1..=n);
                let r = rng.gen_range(l..=n);
                let k = rng.gen_range(1..=r - l + 1);
                (k, l, r)
            })
            .collect();
        let start = Instant::now();
        let mut acc = 0u64;
        for &(k, l, r) in &plan {
            acc = acc.wrapping_add(wt.quantile(k, l, r).map_err(CliError::Index)?);
        }
        std::hint::black_box(acc);
        let mean_ns = if queries == 0 {
            0
        } else {
            start.elapsed().as_nanos() as u64 / queries as u64
        };
        println!("{sigma}\t{mean_ns}");
    }
    Ok(())
}
