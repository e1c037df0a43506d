//! Command-line front end: threshold tables, B-T grid scans, bound
//! verification and state classification.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spinwit::models::{ChainModel, ModelKind, StateLabel};
use spinwit::scan::{
    bounds_report_text, bounds_verify, bounds_verify_tolerance, classify_state, grid_scan,
    grid_to_csv, threshold_table, threshold_table_csv, threshold_table_json,
    threshold_table_text, verdict_json, verdict_text, write_atomic, Range, ScanConfig,
    StateSource,
};
use spinwit::witness::WitnessModel;

#[derive(Parser)]
#[command(name = "spinwit", version, about = "Energy-based entanglement witnesses for spin chains")]
struct Cli {
    /// Seed for every randomized step; identical seeds give identical
    /// outputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Xy,
    Heisenberg,
}

impl ModelArg {
    fn witness(self) -> WitnessModel {
        match self {
            Self::Xy => WitnessModel::Xy,
            Self::Heisenberg => WitnessModel::Heisenberg,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Threshold temperatures T_C2, T_C3, T_R3 per chain length.
    Thresholds {
        #[arg(long, value_enum, default_value = "heisenberg")]
        model: ModelArg,
        /// Even chain lengths, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,4,6,8,10")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        j: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Detection map over magnetic field and temperature.
    GridScan {
        #[arg(long, value_enum, default_value = "heisenberg")]
        model: ModelArg,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        j: f64,
        /// Single field value (shorthand for a one-point range).
        #[arg(long, conflicts_with = "b_range")]
        b: Option<f64>,
        /// Field range start:stop:step.
        #[arg(long, default_value = "0:5:0.1")]
        b_range: String,
        /// Temperature range start:stop:step.
        #[arg(long, default_value = "0.05:4:0.05")]
        t_range: String,
        #[command(flatten)]
        output: Output,
    },
    /// Optimizer minima vs closed-form bounds; exits 2 on deviation.
    BoundsVerify {
        #[arg(long, value_enum, default_value = "heisenberg")]
        model: ModelArg,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        j: f64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Certify entanglement classes of a state from its energy.
    Classify {
        #[arg(long, value_enum, default_value = "heisenberg")]
        model: ModelArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        j: f64,
        /// Named state: singlet, singlet_chain, shifted_mixture, polarized.
        #[arg(long, conflicts_with = "file")]
        state: Option<String>,
        /// JSON matrix file {n_qubits, entries: [[re, im], ...]}.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

fn emit(output: &Output, text: &str) -> spinwit::Result<()> {
    match &output.out {
        Some(path) => write_atomic(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run() -> spinwit::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Thresholds { model, n, j, output } => {
            let reports = threshold_table(model.witness(), &n, j)?;
            let text = match output.format {
                Format::Csv => match output.out {
                    Some(_) => threshold_table_csv(&reports),
                    None => threshold_table_text(model.witness(), &reports),
                },
                Format::Json => threshold_table_json(&reports),
            };
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GridScan {
            model,
            n,
            j,
            b,
            b_range,
            t_range,
            output,
        } => {
            let b_range = match b {
                Some(b) => Range { start: b, stop: b, step: 1.0 },
                None => Range::parse(&b_range)?,
            };
            let config = ScanConfig {
                kind: match model {
                    ModelArg::Xy => ModelKind::Xy,
                    ModelArg::Heisenberg => ModelKind::HeisenbergField,
                },
                n,
                j,
                b_range,
                t_range: Range::parse(&t_range)?,
            };
            let rows = grid_scan(&config)?;
            let text = match output.format {
                Format::Csv => grid_to_csv(&rows),
                Format::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
            };
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::BoundsVerify {
            model,
            n,
            j,
            restarts,
            output,
        } => {
            let checks = bounds_verify(model.witness(), n, j, restarts, cli.seed)?;
            let text = match output.format {
                Format::Csv => bounds_report_text(model.witness(), n, &checks),
                Format::Json => serde_json::to_string_pretty(&checks).expect("serializable") + "\n",
            };
            emit(&output, &text)?;
            let tolerance = bounds_verify_tolerance(n);
            if checks.iter().any(|c| c.deviation > tolerance) {
                eprintln!("deviation exceeds {tolerance:.1e}");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify {
            model,
            n,
            j,
            state,
            file,
            output,
        } => {
            let source = match (&state, &file) {
                (Some(label), None) => StateSource::Named(StateLabel::parse(label)?),
                (None, Some(path)) => StateSource::File(path.clone()),
                _ => {
                    return Err(spinwit::Error::InvalidArgument(
                        "pass exactly one of --state or --file".into(),
                    ))
                }
            };
            let n = match (n, &source) {
                (Some(n), _) => n,
                (None, StateSource::File(path)) => {
                    spinwit::scan::load_state_file(path)?.n_qubits()
                }
                (None, StateSource::Named(_)) => {
                    return Err(spinwit::Error::InvalidArgument(
                        "--n is required with --state".into(),
                    ))
                }
            };
            let chain = match model {
                ModelArg::Xy => ChainModel::xy(n, j),
                ModelArg::Heisenberg => ChainModel::heisenberg(n, j),
            };
            let verdict = classify_state(&source, &chain)?;
            let text = match output.format {
                Format::Csv => verdict_text(&verdict),
                Format::Json => verdict_json(&verdict),
            };
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
