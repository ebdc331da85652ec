//! Command-line front end: `compute` runs one problem file, `corpus` runs a
//! directory of problems against their expected-result side files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use formindex::index::{compute_index, IndexError};
use formindex::problem::{decode_problem, encode_result, ExpectedFile, ResultFile};
use formindex::standard_basis::{BasisError, Budget};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_ORACLE: u8 = 3;

#[derive(Parser)]
#[command(name = "formindex", about = "Index of collections of 1-forms via determinantal ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the index for one problem file and emit a JSON result.
    Compute {
        file: PathBuf,
        /// Cross-check the colength with the brute-force truncation oracle.
        #[arg(long)]
        oracle: bool,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Maximum truncation degree for the oracle.
        #[arg(long, default_value_t = 24)]
        max_truncation: u32,
        /// Cap on standard-basis pairs and reduction steps.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Run every problem in a directory against its expected side file.
    Corpus {
        dir: PathBuf,
        /// Number of concurrent corpus entries.
        #[arg(long, default_value_t = 4)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Compute {
            file,
            oracle,
            out,
            max_truncation,
            budget,
        } => cmd_compute(&file, oracle, out.as_deref(), max_truncation, budget),
        Command::Corpus { dir, jobs } => cmd_corpus(&dir, jobs),
    };
    ExitCode::from(code)
}

fn make_budget(steps: Option<usize>) -> Budget {
    match steps {
        Some(s) => Budget {
            max_pairs: s,
            max_steps: s,
        },
        None => Budget::default(),
    }
}

fn run_one(
    path: &Path,
    oracle: bool,
    max_truncation: u32,
    budget: &Budget,
) -> Result<ResultFile, (u8, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (EXIT_INVALID, format!("{}: {e}", path.display())))?;
    let start = Instant::now();
    let spec = decode_problem(&text).map_err(|errs| {
        let msgs: Vec<String> = errs.iter().map(|e| e.to_string()).collect();
        (EXIT_INVALID, format!("{}: {}", path.display(), msgs.join("; ")))
    })?;
    let result = compute_index(&spec, oracle, budget, max_truncation).map_err(|e| {
        let code = match &e {
            IndexError::Validation(_) => EXIT_INVALID,
            IndexError::Basis(BasisError::Budget(_)) => EXIT_BUDGET,
            IndexError::Basis(_) => EXIT_INVALID,
            IndexError::OracleDisagreement { .. } => EXIT_ORACLE,
        };
        (code, format!("{}: {e}", path.display()))
    })?;
    let total_ms = start.elapsed().as_millis();
    Ok(encode_result(&result, &spec.ring, Some(total_ms)))
}

fn cmd_compute(
    path: &Path,
    oracle: bool,
    out: Option<&Path>,
    max_truncation: u32,
    budget_steps: Option<usize>,
) -> u8 {
    let budget = make_budget(budget_steps);
    match run_one(path, oracle, max_truncation, &budget) {
        Ok(result) => {
            let json = serde_json::to_string_pretty(&result).expect("serializable");
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, json + "\n") {
                        eprintln!("{}: {e}", p.display());
                        return EXIT_INVALID;
                    }
                }
                None => println!("{json}"),
            }
            EXIT_OK
        }
        Err((code, msg)) => {
            eprintln!("{msg}");
            code
        }
    }
}

struct CorpusEntry {
    name: String,
    outcome: Result<String, String>,
}

fn cmd_corpus(dir: &Path, jobs: usize) -> u8 {
    let mut problems: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.extension().is_some_and(|e| e == "json")
                    && !p
                        .file_name()
                        .is_some_and(|n| n.to_string_lossy().ends_with(".expected.json"))
            })
            .collect(),
        Err(e) => {
            eprintln!("{}: {e}", dir.display());
            return EXIT_INVALID;
        }
    };
    problems.sort();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let entries: Vec<CorpusEntry> = pool.install(|| {
        use rayon::prelude::*;
        problems.par_iter().map(|p| run_corpus_entry(p)).collect()
    });

    let mut failures = 0usize;
    for e in &entries {
        match &e.outcome {
            Ok(summary) => println!("PASS  {}  {}", e.name, summary),
            Err(msg) => {
                println!("FAIL  {}  {}", e.name, msg);
                failures += 1;
            }
        }
    }
    println!("{} passed, {} failed", entries.len() - failures, failures);
    if failures == 0 {
        EXIT_OK
    } else {
        EXIT_INVALID
    }
}

fn run_corpus_entry(path: &Path) -> CorpusEntry {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let expected_path = path.with_extension("expected.json");
    let outcome = (|| -> Result<String, String> {
        let expected_text = std::fs::read_to_string(&expected_path)
            .map_err(|e| format!("missing expectation {}: {e}", expected_path.display()))?;
        let expected: ExpectedFile = serde_json::from_str(&expected_text)
            .map_err(|e| format!("corrupt expectation {}: {e}", expected_path.display()))?;
        let result = run_one(path, true, 24, &Budget::default())
            .map_err(|(_, msg)| msg)?;
        if result.index != expected.index {
            return Err(format!(
                "index mismatch: got {}, expected {}",
                result.index, expected.index
            ));
        }
        if !expected.staircase.is_empty() && result.staircase != expected.staircase {
            return Err(format!(
                "staircase mismatch: got {:?}, expected {:?}",
                result.staircase, expected.staircase
            ));
        }
        Ok(format!("index = {}", result.index))
    })();
    CorpusEntry { name, outcome }
}
