//! Moving mass p to the origin lowers the standard deviation, which can raise
//! the share of k-sigma outliers.
//!
//! cargo run --example put_tail_down

use heavytail::dist::DistributionSpec;
use heavytail::put_tail_down::{check_condition_4a, more_outliers_mc, outlier_prob_exact, PutTailDownSpec};

fn main() -> heavytail::Result<()> {
    let k = 3.0;
    println!("Laplace(1) base, k = {k}");
    println!("{:>5} {:>10} {:>10} {:>10}", "p", "sigma_p", "exact", "monte carlo");
    for p in [0.0, 0.25, 0.5, 0.75, 0.9] {
        let spec = PutTailDownSpec::new(DistributionSpec::Laplace { rate: 1.0 }, p)?;
        let mc = more_outliers_mc(&spec, k, 100_000, 10, 3)?;
        println!(
            "{p:>5} {:>10.4} {:>10.5} {:>10.5}",
            spec.variance().unwrap().sqrt(),
            outlier_prob_exact(&spec, k)?,
            mc.rate_ptd
        );
    }

    println!("\nsufficient condition, p = 0.5");
    for (name, base) in [
        ("laplace", DistributionSpec::Laplace { rate: 1.0 }),
        ("normal", DistributionSpec::Normal { sd: 1.0 }),
        ("sym pareto(3)", DistributionSpec::SymmetricPareto { alpha: 3.0 }),
    ] {
        let spec = PutTailDownSpec::new(base, 0.5)?;
        for k in [0.5, 3.0, 20.0, 1e4] {
            let c = check_condition_4a(&spec, k)?;
            println!(
                "{name:>14} k = {k:<7} lhs/rhs = {:<12.5e} holds: {}",
                c.ratio(),
                c.holds
            );
        }
    }
    Ok(())
}
