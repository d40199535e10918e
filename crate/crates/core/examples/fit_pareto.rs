//! Pareto fit of positive data read from CSV, with linear and log-log
//! survival tables. Defaults to the bundled synthetic wealth sample.
//!
//! cargo run --example fit_pareto [-- path.csv [column]]

use std::path::PathBuf;

use heavytail::app::csvio::ingest_csv;
use heavytail::app::fit::fit_pareto;

fn main() -> heavytail::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/synthetic_forbes.csv"));
    let column = args.next();
    let data = ingest_csv(&path, column.as_deref())?;
    let report = fit_pareto(&data, None)?;
    println!(
        "{}: n {}  x_min {:.4e}  gamma_hat {:.4}  tail exponent {:.4}  KS {:.4}",
        path.display(),
        report.n,
        report.x_min,
        report.gamma_hat,
        report.tail_exponent,
        report.ks
    );
    println!("{:>12} {:>10} {:>10}", "log x", "log S_emp", "log S_fit");
    for (lx, le, lm) in report.log_log().iter().step_by(10) {
        println!("{lx:>12.4} {le:>10.4} {lm:>10.4}");
    }
    Ok(())
}
