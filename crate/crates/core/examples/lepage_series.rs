//! Signals attenuated as distance^(-a) and summed over Poisson arrivals give
//! a stable law of index 1/a.
//!
//! cargo run --example lepage_series

use heavytail::dist::DistributionSpec;
use heavytail::limit_models::{default_hill_m, hill_estimator, lepage_sample, LePageSpec, Signal};

fn main() -> heavytail::Result<()> {
    let n = 100_000;
    // Series length from a remainder tolerance where that is cheap, fixed otherwise.
    let specs = [
        LePageSpec::with_tolerance(2.0, Signal::Constant { value: 1.0 }, 1e-2)?,
        LePageSpec::new(1.5, Signal::Rademacher, 1000)?,
        LePageSpec::with_tolerance(1.0, Signal::Rademacher, 1e-2)?,
        LePageSpec::new(
            0.8,
            Signal::Law {
                law: DistributionSpec::Normal { sd: 1.0 },
            },
            1000,
        )?,
    ];
    for spec in specs {
        let batch = lepage_sample(&spec, n, 4)?;
        let hill = hill_estimator(&batch.values, default_hill_m(n))?;
        println!(
            "a = {:<4} {:<40} terms {:>5} (remainder bound {:.1e})  Hill {hill:.3}  (1/a = {:.3})",
            spec.exponent,
            format!("{:?}", spec.signal),
            spec.terms,
            spec.remainder_bound()?,
            spec.alpha()
        );
    }
    Ok(())
}
