//! Capital compounded over a geometric horizon and annualized: bounded
//! yearly factors still give a Pareto limit with index 1/E log X.
//!
//! cargo run --example capital_model

use std::f64::consts::E;

use heavytail::dist::{self, DistributionSpec};
use heavytail::limit_models::{capital_sample, default_hill_m, gamma_hat, hill_estimator, CapitalSpec};
use heavytail::stats::ks_distance;

fn main() -> heavytail::Result<()> {
    let factor = DistributionSpec::Uniform { lo: 1.0, hi: E };
    let gamma = gamma_hat(&dist::sample(&factor, 1_000_000, 5)?.values)?;
    println!("gamma_hat = {gamma:.5}  (exact 1/(e - 1) = {:.5})", 1.0 / (E - 1.0));

    for p in [0.1, 0.03, 0.01, 0.003] {
        let z = capital_sample(&CapitalSpec::new(factor.clone(), p)?, 100_000, 5)?;
        let hill = hill_estimator(&z.values, default_hill_m(z.n()))?;
        let ks = ks_distance(&z.values, |x| if x < 1.0 { 0.0 } else { 1.0 - x.powf(-1.0 / gamma) });
        println!("p = {p:<6} Hill {hill:.3}  KS to Pareto(1/gamma) {ks:.4}");
    }
    println!("limit index 1/gamma = {:.4}", 1.0 / gamma);
    Ok(())
}
