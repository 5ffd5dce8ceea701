//! `ucp`: verify orthospaces and state spaces, condition states, synthesise
//! order-unit spaces and compute spectra.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Report, Settings};

const DEFAULT_TOL: f64 = 1e-8;
const DEFAULT_SEED: u64 = 0;
const DEFAULT_SAMPLES: usize = 50;

#[derive(Parser)]
#[command(name = "ucp", version, about = "Finite orthospaces, conditional probabilities and Jordan algebra reconstruction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the orthospace axioms and, on request, UC1, UC2 and the mixing identity.
    Verify(VerifyArgs),
    /// Condition a state (abstract or density matrix) on an event.
    Condition(ConditionArgs),
    /// Build the synthetic order-unit space, its Ue maps and product, and check the laws.
    Synthesize(SynthesizeArgs),
    /// Spectral decomposition of matrices or spectral radius of an observable.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct Common {
    /// Orthospace, matrix or observable file.
    #[arg(long)]
    input: PathBuf,
    /// State file (rational states or density matrices).
    #[arg(long)]
    states: Option<PathBuf>,
    /// Numerical tolerance for matrix checks.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Sample count for randomised checks.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Os,
    Uc1,
    Uc2,
    Mix,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Checks to run; the orthospace axioms always run.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "os")]
    check: Vec<CheckKind>,
    /// Re-verify the witnesses in a witness or report file.
    #[arg(long)]
    replay: Option<PathBuf>,
}

#[derive(Args)]
struct ConditionArgs {
    #[command(flatten)]
    common: Common,
    /// Conditioning event (label or index) for an orthospace input.
    #[arg(long)]
    event: Option<String>,
}

#[derive(Args)]
struct SynthesizeArgs {
    #[command(flatten)]
    common: Common,
    /// Write the synthetic-space dump to this file.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    common: Common,
    /// Orthospace of an observable input.
    #[arg(long)]
    space: Option<PathBuf>,
}

impl Common {
    fn settings(&self) -> Settings {
        let mut overrides = Vec::new();
        if let Some(t) = self.tol {
            overrides.push(format!("tol={t:e}"));
        }
        if let Some(s) = self.seed {
            overrides.push(format!("seed={s}"));
        }
        if let Some(n) = self.samples {
            overrides.push(format!("samples={n}"));
        }
        Settings {
            tol: self.tol.unwrap_or(DEFAULT_TOL),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            samples: self.samples.unwrap_or(DEFAULT_SAMPLES),
            overrides,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, name) = match &cli.command {
        Command::Verify(a) => (&a.common, "verify"),
        Command::Condition(a) => (&a.common, "condition"),
        Command::Synthesize(a) => (&a.common, "synthesize"),
        Command::Spectrum(a) => (&a.common, "spectrum"),
    };
    let mut common_resolved = common.settings();
    common_resolved.overrides.sort();
    let report = Report::new(name, common_resolved);
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(a, report),
        Command::Condition(a) => commands::condition_cmd(a, report),
        Command::Synthesize(a) => commands::synthesize(a, report),
        Command::Spectrum(a) => commands::spectrum(a, report),
    };
    match result {
        Ok(report) => {
            match common.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::InputError(msg)) => {
            eprintln!("ucp {name}: input error: {msg}");
            ExitCode::from(2)
        }
    }
}
