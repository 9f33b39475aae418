//! Command-line front end: search, verify, export and the oracle suites.
//!
//! Exit codes: 0 valid or passed, 1 checked and invalid or a failed suite,
//! 2 malformed or inadmissible input.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sl2chain::algebra::{export_dot, export_json, ChainAlgebra};
use sl2chain::chainspec::{alpha_skeleton, layout, step1_admissible, ChainTuple, SlotIndex};
use sl2chain::jacobi::{check_chain_general, check_tuple, search, AlphaAssignment, ChainVerdict};
use sl2chain::oracle::{equivalence_suite, gordan_suite, replay_suite, SEED};
use sl2chain::{rational, Error, Rational};

#[derive(Parser)]
#[command(name = "sl2chain", version, about = "Exact search and verification of sl2-chained Lie algebras")]
struct Cli {
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    TableMd,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List every chain of the given length with n1 up to a cap.
    Search {
        /// Length of the ideal chain: 5 for three modules, 6 for four.
        #[arg(long)]
        length: i64,
        #[arg(long, default_value_t = 32)]
        max_n1: i64,
        #[arg(long, value_enum, default_value_t = TableFormat::TableMd)]
        format: TableFormat,
    },
    /// Decide one tuple and print the verdict as JSON.
    Verify {
        #[arg(required = true, allow_negative_numbers = true)]
        tuple: Vec<i64>,
        /// Structure scalar override such as `224=7/5`; repeatable.
        #[arg(long = "alpha", value_name = "SLOT=VALUE")]
        alphas: Vec<String>,
    },
    /// Build the algebra of a valid tuple and write its structure constants.
    Export {
        #[arg(required = true, allow_negative_numbers = true)]
        tuple: Vec<i64>,
        #[arg(long = "alpha", value_name = "SLOT=VALUE")]
        alphas: Vec<String>,
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
        /// Output file; standard output when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a cross-checking suite.
    Oracle {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Gordan brackets vanish under their hypothesis; family combinations
    /// replay.
    Gordan {
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Largest family parameter for the replay part.
        #[arg(long, default_value_t = 6)]
        replay_max_n: i64,
        #[arg(long, default_value_t = SEED)]
        seed: u64,
    },
    /// The general checker agrees with the specialized one.
    Equivalence {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        max_n1: i64,
        #[arg(long, default_value_t = SEED)]
        seed: u64,
    },
}

/// Why a command stopped early.
enum Stop {
    /// Exit 1.
    Invalid(String),
    /// Exit 2.
    Input(String),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::Structural(_) => Stop::Invalid(e.to_string()),
            _ => Stop::Input(e.to_string()),
        }
    }
}

type Outcome = Result<ExitCode, Stop>;

fn parse_tuple(entries: &[i64]) -> Result<ChainTuple, Stop> {
    let tuple = ChainTuple::new(entries.to_vec())?;
    let adm = step1_admissible(&tuple);
    if !adm.is_admissible() {
        let msgs: Vec<String> = adm.violations.iter().map(ToString::to_string).collect();
        return Err(Stop::Input(format!("inadmissible tuple {tuple}: {}", msgs.join("; "))));
    }
    Ok(tuple)
}

fn parse_overrides(specs: &[String]) -> Result<Vec<(SlotIndex, Rational)>, Stop> {
    specs
        .iter()
        .map(|s| {
            let (slot, value) = s
                .split_once('=')
                .ok_or_else(|| Stop::Input(format!("expected SLOT=VALUE, got {s:?}")))?;
            Ok((slot.trim().parse()?, rational::parse(value.trim())?))
        })
        .collect()
}

/// The verdict for a tuple: the specialized checker without overrides, the
/// general one on the overridden unit assignment otherwise.
fn decide(tuple: &ChainTuple, overrides: &[String]) -> Result<ChainVerdict, Stop> {
    let overrides = parse_overrides(overrides)?;
    if overrides.is_empty() {
        if tuple.len() > 4 {
            return Err(Stop::Input(format!(
                "{} modules need an explicit assignment of every required slot",
                tuple.len()
            )));
        }
        return Ok(check_tuple(tuple)?);
    }
    let skeleton = alpha_skeleton(&layout(tuple)?);
    if tuple.len() > 4 {
        for slot in skeleton.required() {
            if !overrides.iter().any(|(s, _)| *s == slot) {
                return Err(Stop::Input(format!("missing a value for required slot {slot}")));
            }
        }
    }
    let mut alphas = AlphaAssignment::unit_required(&skeleton);
    for (slot, value) in overrides {
        alphas.set(slot, value);
    }
    Ok(check_chain_general(tuple, &alphas)?)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn cmd_search(length: i64, max_n1: i64, format: TableFormat) -> Outcome {
    let t = match length {
        5 => 3,
        6 => 4,
        _ => return Err(Stop::Input(format!("--length must be 5 or 6, got {length}"))),
    };
    if max_n1 < 1 {
        return Err(Stop::Input(format!("--max-n1 must be at least 1, got {max_n1}")));
    }
    let verdicts = search(t, max_n1)?;
    let text = match format {
        TableFormat::Json => pretty(&serde_json::Value::Array(verdicts.iter().map(ChainVerdict::to_json).collect())),
        TableFormat::TableMd => render::markdown(t, &verdicts.iter().map(render::row).collect::<Vec<_>>()),
        TableFormat::Csv => render::csv(t, &verdicts.iter().map(render::row).collect::<Vec<_>>())
            .map_err(|e| Stop::Invalid(e.to_string()))?,
    };
    print!("{text}");
    if !text.ends_with('\n') {
        println!();
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(entries: &[i64], overrides: &[String]) -> Outcome {
    let tuple = parse_tuple(entries)?;
    let verdict = decide(&tuple, overrides)?;
    println!("{}", pretty(&verdict.to_json()));
    if let Some(w) = verdict.witness() {
        let triple: Vec<String> = w.triple.iter().map(ToString::to_string).collect();
        eprintln!("witness ({}): residual {}", triple.join(", "), w.residual);
    }
    Ok(if verdict.is_valid() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_export(entries: &[i64], overrides: &[String], format: ExportFormat, output: Option<PathBuf>) -> Outcome {
    let tuple = parse_tuple(entries)?;
    let verdict = decide(&tuple, overrides)?;
    let Some(alphas) = verdict.alphas().filter(|_| verdict.is_valid()) else {
        return Err(Stop::Invalid(format!("{tuple} is not a chain under this assignment")));
    };
    let alg = ChainAlgebra::build(&tuple, alphas)?;
    let report = alg.verify();
    if !report.ok() {
        return Err(Stop::Invalid(format!(
            "{tuple}: built algebra fails verification on {} triples",
            report.failing_triples.len()
        )));
    }
    let text = match format {
        ExportFormat::Json => export_json(&alg)? + "\n",
        ExportFormat::Dot => export_dot(&alg),
    };
    match output {
        Some(path) => fs::write(&path, text).map_err(|e| Stop::Input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(suite: Suite) -> Outcome {
    let passed = match suite {
        Suite::Gordan {
            max_degree,
            samples,
            replay_max_n,
            seed,
        } => {
            let g = gordan_suite(max_degree, samples, seed);
            println!(
                "gordan: {} cases, {} evaluations, {} failures",
                g.cases,
                g.evaluations,
                g.failures.len()
            );
            for f in &g.failures {
                println!("  {f}");
            }
            let r = replay_suite(replay_max_n, samples.clamp(1, 3), seed)?;
            println!("replay: {} instances, {} failures", r.instances, r.failures.len());
            for f in &r.failures {
                println!("  {f}");
            }
            g.passed() && r.passed()
        }
        Suite::Equivalence { t, max_n1, seed } => {
            let r = equivalence_suite(t, max_n1, seed)?;
            println!(
                "equivalence t={t}: {} tuples, {} valid, {} mismatches",
                r.tuples,
                r.valid,
                r.mismatches.len()
            );
            for m in &r.mismatches {
                println!("  {m}");
            }
            r.passed()
        }
    };
    println!("{}", if passed { "PASS" } else { "FAIL" });
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Search { length, max_n1, format } => cmd_search(length, max_n1, format),
        Command::Verify { tuple, alphas } => cmd_verify(&tuple, &alphas),
        Command::Export {
            tuple,
            alphas,
            format,
            output,
        } => cmd_export(&tuple, &alphas, format, output),
        Command::Oracle { suite } => cmd_oracle(suite),
    };
    match outcome {
        Ok(code) => code,
        Err(Stop::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Stop::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
