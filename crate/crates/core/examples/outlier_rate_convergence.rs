//! Share of points beyond k sample standard deviations as n grows: it drifts
//! to zero for stable laws with α < 2 and stays put for the Gaussian.
//!
//! cargo run --example outlier_rate_convergence

use heavytail::diagnostics::{outlier_rate_sweep, theorem1_experiment};
use heavytail::dist::DistributionSpec;
use heavytail::stats::normal_sf;

fn main() -> heavytail::Result<()> {
    let grid = [1_000, 10_000, 100_000];
    let k = 3.0;
    println!("{:>8} {:>12} {:>12} {:>12}", "n", "alpha=1.5", "alpha=1.0", "gaussian");
    let a = theorem1_experiment(1.5, &grid, k, 50, 1)?;
    let b = theorem1_experiment(1.0, &grid, k, 50, 1)?;
    let g = outlier_rate_sweep(&DistributionSpec::Normal { sd: 1.0 }, &grid, k, 50, 1)?;
    for i in 0..grid.len() {
        println!(
            "{:>8} {:>12.5} {:>12.5} {:>12.5}",
            grid[i], a[i].mean_rate, b[i].mean_rate, g[i].mean_rate
        );
    }
    println!("gaussian limit 2 P(Z > 3) = {:.5}", 2.0 * normal_sf(k));
    Ok(())
}
