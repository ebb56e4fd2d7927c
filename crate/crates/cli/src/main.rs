//! `runrank` command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on data or I/O errors.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use runrank::harness::{run_bench, CSV_HEADER};
use runrank::oracle::gen_instance;
use runrank::{AnyIndex, Query, RankSelect, SequenceFile, StructureKind};

#[derive(Parser, Debug)]
#[command(name = "runrank", version, about = "Run-length compressed rank/select indexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random sequence file with an exact number of runs.
    Gen {
        /// Sequence length.
        #[arg(long)]
        n: usize,
        /// Alphabet size; symbols are drawn from 0..sigma.
        #[arg(long)]
        sigma: u32,
        /// Exact number of maximal runs.
        #[arg(long)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build an index from a sequence file.
    Build {
        input: PathBuf,
        /// Sampling parameter: larger values trade query time for space.
        #[arg(long, default_value_t = 4)]
        tau: u32,
        /// Index kind: rlrs or bcgpr.
        #[arg(long, default_value = "rlrs", value_parser = parse_structure)]
        structure: StructureKind,
        /// Treat the input as raw bytes without a sequence header.
        #[arg(long)]
        raw_bytes: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Answer a workload file, one integer per line.
    Query {
        index: PathBuf,
        /// Text file with one query per line: `a i`, `r c i` or `s c j`.
        workload: PathBuf,
    },
    /// Time seeded random queries and print a CSV report.
    Bench {
        #[arg(required = true)]
        indexes: Vec<PathBuf>,
        /// Queries per kind.
        #[arg(long, default_value_t = 100_000)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Timed repetitions per query kind (at least 3).
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(3..))]
        reps: u32,
        /// Dataset label for the report (defaults to each index's file stem).
        #[arg(long)]
        dataset: Option<String>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report per-component space of an index.
    Stats { index: PathBuf },
}

fn parse_structure(s: &str) -> Result<StructureKind, String> {
    s.parse().map_err(|e: runrank::Error| e.to_string())
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<runrank::Error> for Failure {
    fn from(e: runrank::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| io_failure(path, e))
}

fn load_index(path: &Path) -> Result<AnyIndex, Failure> {
    AnyIndex::decode(&read(path)?).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn stdout_failure(e: io::Error) -> Failure {
    Failure { code: 2, message: format!("writing output: {e}") }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen { n, sigma, runs, seed, out } => {
            let symbols = gen_instance(n, sigma, runs, seed)?;
            write(&out, &SequenceFile::new(symbols, sigma)?.encode())
        }
        Command::Build { input, tau, structure, raw_bytes, out } => {
            let bytes = read(&input)?;
            let seq = if raw_bytes {
                SequenceFile::from_raw_bytes(&bytes)
            } else {
                SequenceFile::decode(&bytes).map_err(|e| Failure {
                    code: 2,
                    message: format!("{}: {e}", input.display()),
                })?
            };
            let index = AnyIndex::build(structure, &seq.symbols, seq.sigma, tau)?;
            write(&out, &index.encode())
        }
        Command::Query { index, workload } => {
            let index = load_index(&index)?;
            let text = fs::read_to_string(&workload).map_err(|e| io_failure(&workload, e))?;
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            for (no, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let answer = Query::parse(line)
                    .and_then(|q| index.answer(&q))
                    .map_err(|e| Failure {
                        code: 2,
                        message: format!("{}:{}: {e}", workload.display(), no + 1),
                    })?;
                writeln!(out, "{answer}").map_err(stdout_failure)?;
            }
            out.flush().map_err(stdout_failure)
        }
        Command::Bench { indexes, queries, seed, reps, dataset, out } => {
            let loaded = indexes
                .iter()
                .map(|p| {
                    let name = dataset.clone().unwrap_or_else(|| {
                        p.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned())
                    });
                    Ok((name, load_index(p)?))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let rows = run_bench(&loaded, queries, seed, reps as usize)?;
            let mut csv = String::from(CSV_HEADER);
            csv.push('\n');
            for row in rows {
                csv.push_str(&row.to_csv());
                csv.push('\n');
            }
            match out {
                Some(path) => write(&path, csv.as_bytes()),
                None => io::stdout().write_all(csv.as_bytes()).map_err(stdout_failure),
            }
        }
        Command::Stats { index } => {
            let loaded = load_index(&index)?;
            let s = loaded.space_report();
            let mut report = format!(
                "structure={}\nn={}\nsigma={}\nr={}\ntau={}\n\
                 bits_R={}\nbits_H={}\nbits_C={}\nbits_S={}\nbits_total={}\n\
                 container_overhead_bits={}\nbits_per_run={:.4}\n\
                 reference_bits={:.1}\nreference_per_run={:.4}\nleading_term_per_run={:.4}\n",
                s.structure,
                s.n,
                s.sigma,
                s.r,
                s.tau,
                s.bits_r,
                s.bits_h,
                s.bits_c,
                s.bits_s,
                s.bits_total,
                s.container_overhead(),
                s.bits_per_run(),
                s.reference_bits(),
                s.log_n_sigma_over_r(),
                s.leading_term_per_run(),
            );
            if let AnyIndex::Rlrs(q) = &loaded {
                let mem = q.component_bits();
                report.push_str(&format!(
                    "memory_bits_R={}\nmemory_bits_H={}\nmemory_bits_C={}\nmemory_bits_S={}\nmemory_bits_total={}\n",
                    mem.run_ends,
                    mem.heads,
                    mem.run_counts,
                    mem.samples,
                    mem.total()
                ));
            }
            io::stdout().write_all(report.as_bytes()).map_err(stdout_failure)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("runrank: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
