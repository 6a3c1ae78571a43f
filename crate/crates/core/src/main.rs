use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use unihom::report::{run_analysis, run_corpus, run_properties, AnalysisConfig, Report, EXIT_CONFIG};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Induced trace, K0 and determinant maps of unitary-group homomorphisms.
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    /// Analysis config (`key = value` lines).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Tolerance for pairing and naturality comparisons; overrides the config.
    #[arg(long, value_name = "X")]
    tol: Option<f64>,
    /// Random seed; overrides the config.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Trials per randomized check; overrides the config.
    #[arg(long, value_name = "N")]
    trials: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Run the golden corpus.
    #[arg(long)]
    corpus: bool,
    /// Run every property suite (default seed 42, 100 trials).
    #[arg(long)]
    properties: bool,
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    if cli.config.is_none() && !cli.corpus && !cli.properties {
        return config_error("nothing to do; pass --config, --corpus or --properties");
    }
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return config_error("--tol must be positive");
        }
    }

    let cfg = match &cli.config {
        None => None,
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return config_error(format!("{}: {e}", path.display())),
            };
            let mut cfg: AnalysisConfig = match text.parse() {
                Ok(c) => c,
                Err(e) => return config_error(format!("{}: {e}", path.display())),
            };
            if let Some(t) = cli.tol {
                cfg.tol = t;
            }
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(n) = cli.trials {
                cfg.trials = n;
            }
            Some(cfg)
        }
    };

    let start = Instant::now();
    let analysis = cfg.as_ref().map(run_analysis);
    let corpus = cli.corpus.then(run_corpus);
    let properties = cli
        .properties
        .then(|| run_properties(cli.seed.unwrap_or(42), cli.trials.unwrap_or(100)));
    let report = Report::from_parts(analysis, corpus, properties);

    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.clone().with_timing(start.elapsed().as_secs_f64()).to_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}
