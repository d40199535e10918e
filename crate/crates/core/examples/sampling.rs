//! Draws from the distribution catalogue, checks the stable sampler against
//! its known special cases and runs the rotation self-check.
//!
//! cargo run --example sampling

use heavytail::dist::{self, polya_selfcheck, power_tail_parameters, survival, DistributionSpec};
use heavytail::stats::{ks_critical_1pct, ks_distance, ks_two_sample_critical_1pct, normal_sf};

fn main() -> heavytail::Result<()> {
    let n = 100_000;
    let gauss = dist::sample(&DistributionSpec::StrictlyStable { alpha: 2.0 }, n, 1)?;
    let d = ks_distance(&gauss.values, |x| 1.0 - normal_sf(x / 2f64.sqrt()));
    println!(
        "stable(2) vs N(0, 2): KS {d:.4} (1% critical {:.4})",
        ks_critical_1pct(n)
    );

    for alpha in [0.5, 1.0, 1.5, 1.9] {
        let spec = DistributionSpec::StrictlyStable { alpha };
        let tail: Vec<String> = [1.0, 10.0, 100.0]
            .iter()
            .map(|&x| format!("T({x}) = {:.3e}", survival(&spec, x).unwrap()))
            .collect();
        let pt = power_tail_parameters(&spec).unwrap();
        println!("stable({alpha}): {}, lambda {:.5}", tail.join(", "), pt.lambda);
    }

    let crit = ks_two_sample_critical_1pct(n);
    for spec in [
        DistributionSpec::Normal { sd: 1.0 },
        DistributionSpec::Laplace { rate: 1.0 },
        DistributionSpec::Exponential { rate: 1.0 },
    ] {
        let d = polya_selfcheck(&spec, n, 2)?;
        let verdict = if d < crit {
            "rotation-invariant"
        } else {
            "not invariant"
        };
        println!("X vs (X1 + X2)/sqrt 2 for {spec:?}: KS {d:.4} -> {verdict}");
    }
    Ok(())
}
