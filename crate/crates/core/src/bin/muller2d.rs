use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use muller2d::harness::{self, Cell, Format, HarnessError, Overrides, RunRecord};
use muller2d::systems::{qnm_default_config, QnmParams};
use muller2d::{Method, SolveConfig};

#[derive(Parser)]
#[command(name = "muller2d", version, about = "Root finding for systems of two complex equations")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: OutFormat,
    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Precision exponent d of the step test 10^-d.
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Cap P on one-dimensional Müller iterations.
    #[arg(long, global = true)]
    p: Option<usize>,
    #[arg(long, global = true)]
    max_outer: Option<usize>,
    /// Initial deviation, a complex literal.
    #[arg(long, global = true, allow_hyphen_values = true)]
    deviation: Option<String>,
    /// Exchange F1 and F2.
    #[arg(long, global = true)]
    swap: bool,
    /// Mixing matrix "a1,b1,a2,b2".
    #[arg(long, global = true, allow_hyphen_values = true)]
    precondition: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    repeat: usize,
    /// Start pair "x,y" used when a command is not given --start.
    #[arg(long, global = true, allow_hyphen_values = true)]
    seed_start: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Preset systems with their cataloged roots and starts.
    ListSystems,
    /// One solve; exits nonzero unless it converges.
    Solve {
        #[arg(long)]
        system: String,
        #[arg(long, default_value = "m1")]
        method: Method,
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
    },
    /// Reference cells of a suite with every method.
    Bench {
        #[arg(long, default_value = "basic")]
        suite: String,
        /// Modes for the qnm suite, e.g. 0..7 or 0,3,5.
        #[arg(long, default_value = "0..10")]
        modes: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        eps: f64,
    },
    /// One run per value of P or of the phase shift epsilon.
    Sweep {
        #[arg(long, default_value = "RW")]
        system: String,
        #[arg(long)]
        method: Option<Method>,
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        #[arg(long)]
        param: String,
        /// lo:hi or lo:hi:step.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Mode index for epsilon sweeps.
        #[arg(long, default_value_t = 8)]
        mode: usize,
    },
    /// Schwarzschild quasinormal modes for l = 2.
    Qnm {
        #[arg(long, default_value = "0..10")]
        modes: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long)]
        method: Option<Method>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn overrides(cli: &Cli, method: Option<Method>) -> Result<Overrides, HarnessError> {
    Ok(Overrides {
        method,
        digits: cli.digits,
        inner_cap: cli.p,
        outer_cap: cli.max_outer,
        deviation: cli.deviation.as_deref().map(harness::parse_complex).transpose()?,
        swap: cli.swap,
        precondition: cli.precondition.as_deref().map(harness::parse_matrix).transpose()?,
    })
}

fn start_for(cli: &Cli, given: &Option<String>, sys: &muller2d::SystemSpec) -> Result<muller2d::PointPair, HarnessError> {
    match given.as_ref().or(cli.seed_start.as_ref()) {
        Some(s) => harness::parse_pair(s),
        None => sys.recommended_starts.first().copied().ok_or_else(|| HarnessError::NoStart(sys.name.clone())),
    }
}

fn emit(cli: &Cli, records: &[RunRecord]) -> Result<(), HarnessError> {
    let format = match cli.format {
        OutFormat::Csv => Format::Csv,
        OutFormat::Json => Format::Json,
    };
    match &cli.out {
        Some(path) => harness::write_records(records, format, BufWriter::new(File::create(path)?)),
        None => harness::write_records(records, format, io::stdout().lock()),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, HarnessError> {
    match &cli.cmd {
        Cmd::ListSystems => {
            let list = harness::list_systems();
            let mut out = io::stdout().lock();
            match cli.format {
                OutFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&list)?)?,
                OutFormat::Csv => {
                    for s in &list {
                        writeln!(out, "{}  roots: {}  starts: {}", s.name, s.known_roots.len(), s.starts.len())?;
                        for (label, x, y) in &s.known_roots {
                            writeln!(out, "    {label:<10} {x}, {y}")?;
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Solve { system, method, start } => {
            let sys = harness::lookup(system)?;
            let start = start_for(cli, start, &sys)?;
            let cfg = overrides(cli, Some(*method))?.apply(SolveConfig::default());
            let rec = harness::run_cell(&Cell::new(sys, start, cfg), cli.repeat)?;
            emit(cli, std::slice::from_ref(&rec))?;
            if let Some(msg) = &rec.result.message {
                eprintln!("{}: {msg}", rec.result.exit_reason);
            }
            Ok(if rec.result.converged() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Bench { suite, modes, eps } => {
            let ov = overrides(cli, None)?;
            let modes = harness::parse_modes(modes)?;
            let q = QnmParams::default().with_epsilon(*eps);
            let recs = harness::bench(suite, &ov, &modes, &q, cli.repeat)?;
            emit(cli, &recs)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep {
            system,
            method,
            start,
            param,
            values,
            mode,
        } => {
            let values = harness::parse_range(values)?;
            let recs = match param.as_str() {
                "p" | "P" => {
                    let sys = harness::lookup(system)?;
                    let start = start_for(cli, start, &sys)?;
                    let base = overrides(cli, *method)?.apply(SolveConfig::default());
                    harness::sweep_p(&sys, start, &base, &values, cli.repeat)?
                }
                "epsilon" | "eps" => {
                    let cfg = overrides(cli, *method)?.apply(qnm_default_config());
                    harness::sweep_epsilon(*mode, &QnmParams::default(), &cfg, &values, cli.repeat)?
                }
                other => return Err(HarnessError::UnknownParam(other.to_string())),
            };
            emit(cli, &recs)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Qnm { modes, eps, method } => {
            let cfg = overrides(cli, *method)?.apply(qnm_default_config());
            let q = QnmParams::default().with_epsilon(*eps);
            let recs = harness::qnm_records(&harness::parse_modes(modes)?, &q, &cfg, cli.repeat)?;
            emit(cli, &recs)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
