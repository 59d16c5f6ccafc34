use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use xcorr_cli::boundary::run_boundary;
use xcorr_cli::state::{parse_state, run_state};
use xcorr_cli::sweep::{parse_alpha_list, run_sweep, write_csv, write_json, Format, Outputs, SweepConfig};
use xcorr_cli::verify::run_verify;
use xcorr_cli::{CliError, CliResult};
use xcorr_core::dynamics::Scenario;

#[derive(Parser)]
#[command(name = "xcorr", version, about = "Correlation dynamics of driven two-qubit X states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Concurrence, discord and fidelity of an evolved Werner state over a τ- grid.
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        /// Comma-separated Werner parameters.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 10.0)]
        tau_max: f64,
        #[arg(long, default_value_t = 1001)]
        steps: usize,
        /// Any of concurrence, discord, fidelity, fields.
        #[arg(long, default_value = "concurrence,discord,fidelity")]
        outputs: String,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Separability boundary α(|μ|) of the generalized Werner family.
    Boundary {
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check every closed form against its brute-force oracle.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// All measures for one X state read from a JSON file ("-" for stdin).
    State {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn open_output(out: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).map_err(|e| CliError::config("--out", format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_input(path: &Path, field: &str) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::config(field, format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Sweep { scenario, alpha, tau_max, steps, outputs, format, out } => {
            let scenario: Scenario = serde_json::from_str(&read_input(&scenario, "--scenario")?)
                .map_err(|e| CliError::config("--scenario", e.to_string()))?;
            let config = SweepConfig {
                scenario,
                alpha_values: parse_alpha_list(&alpha)?,
                tau_max,
                tau_steps: steps,
                outputs: outputs.parse::<Outputs>()?,
                format: format.parse()?,
            };
            config.validate()?;
            let rows = run_sweep(&config)?;
            let mut w = open_output(out.as_deref())?;
            match config.format {
                Format::Csv => write_csv(&rows, &config.outputs, &mut w)?,
                Format::Json => write_json(&rows, &mut w)?,
            }
            w.flush()?;
        }
        Command::Boundary { steps, format, out } => {
            let format: Format = format.parse()?;
            let rows = run_boundary(steps)?;
            let mut w = open_output(out.as_deref())?;
            match format {
                Format::Csv => {
                    writeln!(w, "mu_abs,alpha")?;
                    for r in &rows {
                        writeln!(w, "{:.16e},{:.16e}", r.mu_abs, r.alpha)?;
                    }
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &rows).map_err(io::Error::from)?;
                    writeln!(w)?;
                }
            }
            w.flush()?;
        }
        Command::Verify { seed, cases } => {
            let summary = run_verify(seed, cases)?;
            println!("{summary}");
            if !summary.passed() {
                return Err(CliError::VerificationFailed(format!("seed {seed}")));
            }
        }
        Command::State { path, out } => {
            let state = parse_state(&read_input(&path, "state")?)?;
            let report = run_state(&state)?;
            let mut w = open_output(out.as_deref())?;
            serde_json::to_writer_pretty(&mut w, &report).map_err(io::Error::from)?;
            writeln!(w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
