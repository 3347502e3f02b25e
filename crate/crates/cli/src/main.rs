use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fockfit::analysis::{run_analysis, run_check, run_construct, AnalysisConfig};
use fockfit::dataset::{load_dataset, DataFormat, Loaded};
use fockfit::report::{emit_check, emit_construct, emit_report, ReportFormat};
use fockfit_core::{tol, FitStrategy};

const DATA_DIR_VAR: &str = "FOCKFIT_DATA_DIR";

/// Two-sector Fock-space analysis of concept-combination membership data.
#[derive(Debug, Parser)]
#[command(name = "fockfit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Classicality tolerance.
    #[arg(long, global = true, allow_hyphen_values = true, default_value_t = tol::CLASSICALITY)]
    tolerance: f64,

    /// Seed for the negation-model multistart.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full analysis: deviations, fits, classicality, realizations.
    Analyze {
        file: PathBuf,
        /// Cross-check every fit against the brute-force oracles.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_parser = parse_strategy, default_value = "max-sector1")]
        strategy: FitStrategy,
    },
    /// Same as `analyze` with an explicit pair-fit strategy.
    Fit {
        file: PathBuf,
        /// fix-m2=<v> | max-sector1 | min-interference
        #[arg(long, value_parser = parse_strategy)]
        strategy: FitStrategy,
        #[arg(long)]
        verify: bool,
    },
    /// Classicality conditions only.
    Check { file: PathBuf },
    /// Entangled realizations for the classical records.
    Construct { file: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plotdata,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
            Format::Plotdata => ReportFormat::Plotdata,
        }
    }
}

fn parse_strategy(s: &str) -> Result<FitStrategy, String> {
    match s {
        "max-sector1" => Ok(FitStrategy::MaxSector1),
        "min-interference" => Ok(FitStrategy::MinInterference),
        _ => {
            let v = s
                .strip_prefix("fix-m2=")
                .ok_or_else(|| format!("unknown strategy `{s}`"))?
                .parse::<f64>()
                .map_err(|e| format!("fix-m2: {e}"))?;
            if !(0.0..=1.0).contains(&v) {
                return Err(format!("fix-m2 = {v} is outside [0, 1]"));
            }
            Ok(FitStrategy::FixM2(v))
        }
    }
}

enum Failure {
    Io(String),
    Config(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(bytes) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(&bytes).and_then(|()| stdout.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Vec<u8>, Failure> {
    if !(cli.tolerance.is_finite() && cli.tolerance >= 0.0) {
        return Err(Failure::Config(format!("--tolerance {} must be a non-negative number", cli.tolerance)));
    }
    let format = ReportFormat::from(cli.format);
    let analysis = |file: &Path, strategy, verify| {
        let loaded = load(file)?;
        let config = AnalysisConfig {
            strategy,
            classicality_tolerance: cli.tolerance,
            seed: cli.seed,
            verify,
            ..AnalysisConfig::default()
        };
        Ok(emit_report(&run_analysis(&loaded.dataset, &config), format))
    };
    match &cli.command {
        Command::Analyze { file, verify, strategy } => analysis(file, *strategy, *verify),
        Command::Fit { file, strategy, verify } => analysis(file, *strategy, *verify),
        Command::Check { file } => {
            let loaded = load(file)?;
            emit_check(&run_check(&loaded.dataset, cli.tolerance), format).map_err(|e| Failure::Config(e.to_string()))
        }
        Command::Construct { file } => {
            let loaded = load(file)?;
            emit_construct(&run_construct(&loaded.dataset), format).map_err(|e| Failure::Config(e.to_string()))
        }
    }
}

fn load(file: &Path) -> Result<Loaded, Failure> {
    let path = resolve(file);
    let loaded = load_dataset(&path, DataFormat::from_path(&path)).map_err(|e| Failure::Io(e.to_string()))?;
    for w in &loaded.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    for r in &loaded.rejected {
        eprintln!("warning: {}:{}: row rejected: {}", path.display(), r.line, r.message);
    }
    Ok(loaded)
}

/// Existing paths are used as given; otherwise `name`, `name.csv` and
/// `name.json` are tried in the data directory.
fn resolve(file: &Path) -> PathBuf {
    if file.exists() {
        return file.to_path_buf();
    }
    let dir = std::env::var_os(DATA_DIR_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data"));
    let base = dir.join(file);
    [base.clone(), base.with_extension("csv"), base.with_extension("json")]
        .into_iter()
        .find(|p| p.is_file())
        .unwrap_or(file.to_path_buf())
}
