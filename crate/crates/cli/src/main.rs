use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use statcurv::Field;
use statcurv_cli::{
    cmd_classical, cmd_quantum, run_scan, verify, write_json, write_scan, CliError, Format, Geometry, ScanConfig,
    DEFAULT_ALPHAS, DEFAULT_GRID,
};

#[derive(Parser)]
#[command(name = "statcurv", version, about = "Scalar curvature of classical and quantum state spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Curvature of the α-geometry on the probability simplex.
    Classical {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Comma-separated probabilities.
        #[arg(long, value_delimiter = ',', required = true)]
        theta: Vec<f64>,
    },
    /// Curvature of the state space with the metric generated by f.
    Quantum {
        /// One of alpha:<value>, log, wy, id.
        #[arg(long = "f")]
        function: String,
        #[arg(long, value_delimiter = ',', required = true)]
        spectrum: Vec<f64>,
        #[arg(long, default_value = "complex")]
        field: Field,
    },
    /// Curvature along a transfer path in the three-outcome simplex.
    ScanP3 {
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.3,0.2")]
        base: Vec<f64>,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Qubit curvature as a function of the Bloch radius.
    ScanM2 {
        #[arg(long, default_value = "complex")]
        field: Field,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Randomized comparison of closed forms against the finite-difference oracles.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct ScanArgs {
    /// Comma-separated α values [default: -0.9,-0.5,-0.1,0.1,0.5,0.9].
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

impl ScanArgs {
    fn config(self, geometry: Geometry) -> ScanConfig {
        let mut c = ScanConfig::new(geometry).grid(self.grid);
        c.alphas = if self.alpha.is_empty() { DEFAULT_ALPHAS.to_vec() } else { self.alpha };
        c.format = self.format;
        c.output = self.output;
        c
    }
}

fn sink(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn scan(config: ScanConfig) -> Result<ExitCode, CliError> {
    let report = run_scan(&config)?;
    for s in &report.series {
        eprintln!("alpha {}: {}", s.alpha, s.monotone_flag.as_str());
    }
    write_scan(&report, config.format, sink(config.output.as_ref())?)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Classical { alpha, theta } => {
            write_json(&cmd_classical(alpha, &theta)?, io::stdout().lock())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Quantum { function, spectrum, field } => {
            write_json(&cmd_quantum(&function, &spectrum, field)?, io::stdout().lock())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ScanP3 { base, scan: args } => scan(args.config(Geometry::P3).base(&base)),
        Command::ScanM2 { field, scan: args } => scan(args.config(match field {
            Field::Real => Geometry::M2Real,
            Field::Complex => Geometry::M2Complex,
        })),
        Command::Verify { seed, trials, output } => {
            let report = verify(seed, trials)?;
            write_json(&report, sink(output.as_ref())?)?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAILED {}: {}", c.name, c.failing_fixture.as_deref().unwrap_or(""));
            }
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
