//! Largest gap between order statistics compared with the typical gap, for
//! raw, log and arctan scales.
//!
//! cargo run --example gap_diagnostics

use heavytail::diagnostics::{gap_ratio_study, gap_ratio_with, order_gaps, Transform, TypicalGap};
use heavytail::dist::{self, DistributionSpec};
use heavytail::stats::median;

fn main() -> heavytail::Result<()> {
    let pareto = DistributionSpec::ParetoI { alpha: 2.0 };
    let batch = dist::sample(&pareto, 200, 2024)?;
    for t in [Transform::Identity, Transform::Log, Transform::Arctan] {
        let profile = order_gaps(&batch.values, t)?;
        println!(
            "{:>8}: max/mean gap {:7.2}   max/median gap {:8.2}",
            t.name(),
            gap_ratio_with(&profile, TypicalGap::Mean)?,
            gap_ratio_with(&profile, TypicalGap::Median)?,
        );
    }

    println!("\nmedian over 200 samples of n = 200 (max/mean gap):");
    for (name, spec) in [
        ("pareto(2)", pareto),
        ("exponential", DistributionSpec::Exponential { rate: 1.0 }),
    ] {
        for t in [Transform::Identity, Transform::Log, Transform::Arctan] {
            let ratios = gap_ratio_study(&spec, 200, t, TypicalGap::Mean, 200, 7)?;
            println!("{name:>12} {:>8}: {:.1}", t.name(), median(&ratios));
        }
    }
    Ok(())
}
