//! Thin command line interface over the library. Each subcommand prints one
//! JSON object on stdout; exit code 0 means success, 1 a negative domain
//! verdict (inadmissible triple, undefined phase, violations found), 2 a
//! usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trifid::io::{
    read_bloch, read_campaign_config, read_density, read_invariants, read_measure, read_pure,
    render_json, sequence_to_json, triple_to_json, write_json_file, IoError,
};
use trifid::{
    bargmann_product, classical_witness, classify_triple, fidelity_bloch2d, fidelity_classical,
    fidelity_pure, fidelity_uhlmann, phase_bloch_cos, phase_pure, quantum_witness, reconstruct,
    run_campaign, verify_roundtrip, Error, FidelityTriple, TripleVerdict,
};

#[derive(Parser)]
#[command(name = "trifid", version, about = "fidelity triples, witnesses, three-state phases, and sequence reconstruction")]
struct Cli {
    /// Suppress notes on stderr
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FidelityKind {
    /// probability measure files
    Classical,
    /// amplitude vector files
    Pure,
    /// density matrix files
    Mixed,
    /// Bloch vector files
    Bloch,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Classical,
    Quantum,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseKind {
    Pure,
    Bloch,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity of two states read from JSON files
    Fidelity {
        #[arg(long, value_enum)]
        kind: FidelityKind,
        a: PathBuf,
        b: PathBuf,
    },
    /// Classify a fidelity triple against the admissible region
    CheckTriple {
        #[arg(long)]
        f12: f64,
        #[arg(long)]
        f13: f64,
        #[arg(long)]
        f23: f64,
        /// Slack tolerance for the boundary and corner verdicts
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Construct states realizing an admissible triple
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        f12: f64,
        #[arg(long)]
        f13: f64,
        #[arg(long)]
        f23: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Also write the JSON result to a file
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Three-state phase invariant of states read from JSON files
    Phase {
        #[arg(long, value_enum)]
        kind: PhaseKind,
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
    },
    /// Rebuild the canonical sequence from an invariants file
    Reconstruct {
        #[arg(long)]
        input: PathBuf,
        /// Also write the sequence JSON to a file
        #[arg(long)]
        output: Option<PathBuf>,
        /// Re-extract invariants from the result and report deviations
        #[arg(long)]
        verify: bool,
    },
    /// Run a Monte Carlo campaign described by a config file
    Campaign {
        #[arg(long)]
        config: PathBuf,
        /// Also write the report JSON to a file
        #[arg(long)]
        output: Option<PathBuf>,
        /// Parallelize with this many threads (0 = all cores); serial if omitted
        #[arg(long)]
        jobs: Option<usize>,
    },
}

enum Failure {
    /// Valid input, negative answer: exit 1.
    Domain(Error),
    /// Unreadable, unparsable, or invalid input: exit 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAdmissible { .. }
            | Error::DegenerateSpread
            | Error::ZeroFidelity { .. }
            | Error::ZeroFidelityTriple { .. }
            | Error::AntipodalPair { .. }
            | Error::RankDeficient { .. }
            | Error::DegenerateSpectrum { .. }
            | Error::OptimizerFailed
            | Error::GenericityViolation { .. }
            | Error::InconsistentData { .. } => Failure::Domain(e),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn path_str(path: &PathBuf) -> Result<&str, Failure> {
    path.to_str().ok_or_else(|| Failure::Input("path is not valid UTF-8".into()))
}

fn emit(value: &Value, output: Option<&PathBuf>) -> Result<(), Failure> {
    if let Some(path) = output {
        write_json_file(path_str(path)?, value)?;
    }
    println!("{}", render_json(value));
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Fidelity { kind, a, b } => {
            let (label, fidelity) = match kind {
                FidelityKind::Classical => {
                    let x = read_measure(path_str(a)?)?;
                    let y = read_measure(path_str(b)?)?;
                    ("classical", fidelity_classical(&x, &y)?)
                }
                FidelityKind::Pure => {
                    let x = read_pure(path_str(a)?)?;
                    let y = read_pure(path_str(b)?)?;
                    ("pure", fidelity_pure(&x, &y)?)
                }
                FidelityKind::Mixed => {
                    let x = read_density(path_str(a)?)?;
                    let y = read_density(path_str(b)?)?;
                    ("mixed", fidelity_uhlmann(&x, &y)?)
                }
                FidelityKind::Bloch => {
                    let x = read_bloch(path_str(a)?)?;
                    let y = read_bloch(path_str(b)?)?;
                    ("bloch", fidelity_bloch2d(&x, &y))
                }
            };
            emit(&json!({"kind": label, "fidelity": fidelity}), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckTriple { f12, f13, f23, tol } => {
            let triple = FidelityTriple::new(*f12, *f13, *f23)?;
            let cls = classify_triple(&triple, *tol);
            let value = json!({
                "f12": triple.f12(),
                "f13": triple.f13(),
                "f23": triple.f23(),
                "slack": cls.slack,
                "verdict": cls.verdict.as_str(),
            });
            emit(&value, None)?;
            Ok(if cls.verdict == TripleVerdict::Outside {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Witness { kind, f12, f13, f23, tol, output } => {
            let triple = FidelityTriple::new(*f12, *f13, *f23)?;
            let value = match kind {
                WitnessKind::Classical => {
                    let w = classical_witness(&triple, *tol)?;
                    json!({
                        "kind": "classical",
                        "verdict": w.verdict.as_str(),
                        "space_size": w.space_size,
                        "measures": w.measures.iter().map(|m| m.weights().to_vec()).collect::<Vec<_>>(),
                        "achieved": triple_to_json(&w.achieved),
                    })
                }
                WitnessKind::Quantum => {
                    let w = quantum_witness(&triple, *tol)?;
                    json!({
                        "kind": "quantum",
                        "verdict": w.verdict.as_str(),
                        "dim": w.states[0].dim(),
                        "states": w.states.iter().map(trifid::io::pure_to_json).collect::<Vec<_>>(),
                        "achieved": triple_to_json(&w.achieved),
                    })
                }
            };
            emit(&value, output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Phase { kind, a, b, c } => {
            let value = match kind {
                PhaseKind::Pure => {
                    let x = read_pure(path_str(a)?)?;
                    let y = read_pure(path_str(b)?)?;
                    let z = read_pure(path_str(c)?)?;
                    let phi = phase_pure(&x, &y, &z)?;
                    let product = bargmann_product(&x, &y, &z)?;
                    json!({"kind": "pure", "phase": phi, "modulus": product.modulus})
                }
                PhaseKind::Bloch => {
                    let x = read_bloch(path_str(a)?)?;
                    let y = read_bloch(path_str(b)?)?;
                    let z = read_bloch(path_str(c)?)?;
                    let cos_phi = phase_bloch_cos(&x, &y, &z)?;
                    // the Bloch data determines the phase up to sign; report
                    // the nonnegative representative
                    json!({"kind": "bloch", "cos_phase": cos_phi, "phase": cos_phi.acos()})
                }
            };
            emit(&value, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct { input, output, verify } => {
            let inv = read_invariants(path_str(input)?)?;
            let seq = reconstruct(&inv)?;
            let mut value = sequence_to_json(&seq);
            let mut failed = false;
            if *verify {
                let report = verify_roundtrip(&seq.states())?;
                failed = report.gram_err > 1e-8;
                value["verify"] = json!({
                    "max_fidelity_err": report.max_fidelity_err,
                    "max_phase_err": report.max_phase_err,
                    "gram_err": report.gram_err,
                });
                if failed && !cli.quiet {
                    eprintln!("note: roundtrip gram deviation {}", report.gram_err);
                }
            }
            if let Some(path) = output {
                write_json_file(path_str(path)?, &sequence_to_json(&seq))?;
            }
            println!("{}", render_json(&value));
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Campaign { config, output, jobs } => {
            let mut cfg = read_campaign_config(path_str(config)?)?;
            if let Ok(seed_text) = std::env::var("TRIFID_SEED") {
                let seed: u64 = seed_text.trim().parse().map_err(|_| {
                    Failure::Input(format!("TRIFID_SEED is not a u64: {seed_text:?}"))
                })?;
                cfg.master_seed = seed;
            }
            let report = run_campaign(&cfg, *jobs)?;
            let value = serde_json::to_value(&report)
                .map_err(|e| Failure::Input(format!("cannot serialize report: {e}")))?;
            emit(&value, output.as_ref())?;
            if report.total_violations > 0 {
                if !cli.quiet {
                    eprintln!("note: {} violations found", report.total_violations);
                }
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            println!("{}", render_json(&json!({"error": e.to_string()})));
            if !cli.quiet {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
