//! The minimum of a geometric number of uniforms, scaled by 1/p, has the
//! heavy-tailed limit P(S > s) = 1/(1 + s).
//!
//! cargo run --example random_minimum

use heavytail::dist::DistributionSpec;
use heavytail::limit_models::{default_hill_m, hill_estimator, random_min_sample, CapitalSpec};
use heavytail::stats::ks_distance;

fn main() -> heavytail::Result<()> {
    for p in [0.1, 0.01, 0.001] {
        let spec = CapitalSpec::new(DistributionSpec::Uniform { lo: 0.0, hi: 1.0 }, p)?;
        let s = random_min_sample(&spec, 100_000, 6)?;
        let ks = ks_distance(&s.scaled, |x| x / (1.0 + x));
        let inv: Vec<f64> = s.minima.values.iter().map(|m| 1.0 / m).collect();
        let hill = hill_estimator(&inv, default_hill_m(inv.len()))?;
        println!("p = {p:<6} KS(min/p, 1/(1+s)) {ks:.4}  Hill of 1/min {hill:.3}");
    }
    Ok(())
}
