//! The fixed golden cases, printed as the CLI's `--corpus` table.

use unihom::report::Report;

fn main() {
    let report = Report::corpus();
    print!("{}", report.to_text());
    std::process::exit(report.exit_code());
}
