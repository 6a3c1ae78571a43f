//! Runs an analysis config and prints the JSON report.
//!
//! ```text
//! cargo run --example run_config -- crates/core/examples/configs/corner.conf
//! ```

use unihom::report::{AnalysisConfig, Report};

const DEFAULT: &str = include_str!("configs/corner.conf");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let cfg: AnalysisConfig = text.parse()?;
    let report = Report::analysis(&cfg);
    println!("{}", report.to_json());
    eprintln!("{}", if report.passed { "PASS" } else { "FAIL" });
    Ok(())
}
