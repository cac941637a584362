//! Command-line front end: `infer`, `spectrum`, `reduce`, `verify`, `bench`.

use std::fs;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wfm::bench::parse_range;
use wfm::cli::{self, CliError, EXIT_FAILED_CHECK};
use wfm::reductions::Theorem;
use wfm::semantics::{Backend, InferenceConfig};

#[derive(Parser)]
#[command(name = "wfm", version, about = "Exact inference and spectrum reductions for weighted feature models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BackendFlags {
    /// Counting backend: `enum` (enumerate interpretations) or `wmc` (model counting).
    #[arg(long, default_value = "enum")]
    backend: Backend,
    /// Maximum number of ground atoms the backend may handle.
    #[arg(long = "cap-atoms")]
    cap_atoms: Option<usize>,
}

impl BackendFlags {
    fn config(&self) -> InferenceConfig {
        let cfg = InferenceConfig::with_backend(self.backend);
        match self.cap_atoms {
            Some(k) => cfg.with_cap(k),
            None => cfg,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Probability of a query sentence, optionally conditioned on evidence.
    Infer {
        kb_file: String,
        n: usize,
        query: String,
        #[arg(long)]
        evidence: Option<String>,
        #[command(flatten)]
        flags: BackendFlags,
    },
    /// Domain sizes 1..=n_max at which a sentence has a model.
    Spectrum {
        formula_file: String,
        n_max: usize,
        #[command(flatten)]
        flags: BackendFlags,
    },
    /// Print the reduction knowledge base (constructions 3 and 4 need n).
    Reduce {
        theorem: Theorem,
        formula_file: String,
        n: Option<usize>,
    },
    /// Check the probability gap of a construction over a range of domain sizes.
    Verify {
        theorem: Theorem,
        formula_file: String,
        #[arg(long, value_parser = parse_range, default_value = "1..4")]
        range: RangeInclusive<usize>,
        #[command(flatten)]
        flags: BackendFlags,
    },
    /// Time a query over a range of domain sizes; CSV on standard output.
    Bench {
        kb_file: String,
        query: String,
        #[arg(long, value_parser = parse_range)]
        range: RangeInclusive<usize>,
        /// Backends to time (repeatable); both when omitted.
        #[arg(long = "backend")]
        backends: Vec<Backend>,
        #[arg(long = "cap-atoms")]
        cap_atoms: Option<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Infer { kb_file, n, query, evidence, flags } => {
            let p = cli::infer(&read(&kb_file)?, n, &query, evidence.as_deref(), &flags.config())?;
            println!("{p}");
        }
        Command::Spectrum { formula_file, n_max, flags } => {
            print!("{}", cli::spectrum_table(&read(&formula_file)?, n_max, &flags.config())?);
        }
        Command::Reduce { theorem, formula_file, n } => {
            print!("{}", cli::reduce(theorem, &read(&formula_file)?, n)?);
        }
        Command::Verify { theorem, formula_file, range, flags } => {
            let report = cli::verify(theorem, &read(&formula_file)?, range, &flags.config())?;
            print!("{report}");
            if !report.passed() {
                return Ok(EXIT_FAILED_CHECK);
            }
        }
        Command::Bench { kb_file, query, range, backends, cap_atoms, repeats } => {
            let backends = if backends.is_empty() { vec![Backend::Enumerate, Backend::Wmc] } else { backends };
            let mut cfg = InferenceConfig::default();
            if let Some(k) = cap_atoms {
                cfg.enum_cap = k;
                cfg.wmc_cap = k;
            }
            let (csv, warnings) = cli::bench(&read(&kb_file)?, &query, range, &backends, repeats, &cfg)?;
            print!("{csv}");
            warnings.iter().for_each(|w| eprintln!("{w}"));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(args.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
