use std::f64::consts::E;

use heavytail::dist::{self, DistributionSpec};
use heavytail::limit_models::{
    capital_sample, default_hill_m, gamma_hat, hill_estimator, lepage_sample, random_min_sample, CapitalSpec,
    LePageSpec, Signal,
};
use heavytail::stats::{ks_distance, mean, ols_slope, sample_sd, sorted};

fn top_decade_slope(values: &[f64]) -> f64 {
    let v = sorted(values);
    let n = v.len();
    let (mut lx, mut ls) = (Vec::new(), Vec::new());
    for (i, x) in v.iter().enumerate().skip(n - n / 10) {
        lx.push(x.ln());
        ls.push(((n - i) as f64 / n as f64).ln());
    }
    ols_slope(&lx, &ls)
}

#[test]
fn lepage_with_unit_signals_has_index_one_half() {
    let spec = LePageSpec::with_tolerance(2.0, Signal::Constant { value: 1.0 }, 1e-2).unwrap();
    let batch = lepage_sample(&spec, 100_000, 51).unwrap();
    let slope = top_decade_slope(&batch.values);
    assert!((slope + 0.5).abs() < 0.1, "{slope}");
}

#[test]
fn lepage_with_rademacher_signals_is_cauchy_like() {
    let spec = LePageSpec::with_tolerance(1.0, Signal::Rademacher, 1e-2).unwrap();
    let batch = lepage_sample(&spec, 100_000, 52).unwrap();
    let a = hill_estimator(&batch.values, default_hill_m(batch.n())).unwrap();
    assert!((a - 1.0).abs() < 0.15, "{a}");
}

#[test]
fn hill_recovers_pareto_index_on_average() {
    let est: Vec<f64> = (0..30)
        .map(|s| {
            let b = dist::sample(&DistributionSpec::ParetoI { alpha: 1.0 }, 100_000, 600 + s).unwrap();
            hill_estimator(&b.values, 1000).unwrap()
        })
        .collect();
    assert!((mean(&est) - 1.0).abs() < 0.1, "{}", mean(&est));
}

#[test]
fn gamma_hat_matches_log_means() {
    let n = 1_000_000;
    let u = dist::sample(&DistributionSpec::Uniform { lo: 1.0, hi: E }, n, 53).unwrap();
    let logs: Vec<f64> = u.values.iter().map(|x| x.ln()).collect();
    let se = sample_sd(&logs) / (n as f64).sqrt();
    assert!((gamma_hat(&u.values).unwrap() - 1.0 / (E - 1.0)).abs() < 3.0 * se);
    let p = dist::sample(&DistributionSpec::ParetoI { alpha: 2.0 }, n, 54).unwrap();
    let se = 0.5 / (n as f64).sqrt();
    assert!((gamma_hat(&p.values).unwrap() - 0.5).abs() < 3.0 * se);
}

#[test]
fn capital_with_constant_factor_is_unit_pareto() {
    let spec = CapitalSpec::new(DistributionSpec::Degenerate { value: E }, 0.01).unwrap();
    let z = capital_sample(&spec, 100_000, 55).unwrap();
    let d = ks_distance(&z.values, |x| if x < 1.0 { 0.0 } else { 1.0 - 1.0 / x });
    assert!(d < 0.02, "{d}");
}

#[test]
fn bounded_factors_give_a_heavy_tail() {
    let spec = CapitalSpec::new(DistributionSpec::Uniform { lo: 1.0, hi: E }, 0.01).unwrap();
    let z = capital_sample(&spec, 100_000, 56).unwrap();
    let a = hill_estimator(&z.values, default_hill_m(z.n())).unwrap();
    assert!((a - (E - 1.0)).abs() < 0.15, "{a}");
}

#[test]
fn random_minimum_limit() {
    let spec = CapitalSpec::new(DistributionSpec::Uniform { lo: 0.0, hi: 1.0 }, 1e-3).unwrap();
    let s = random_min_sample(&spec, 100_000, 57).unwrap();
    let d = ks_distance(&s.scaled, |x| x / (1.0 + x));
    assert!(d < 0.02, "{d}");
    let inv: Vec<f64> = s.minima.values.iter().map(|m| 1.0 / m).collect();
    let a = hill_estimator(&inv, default_hill_m(inv.len())).unwrap();
    assert!((a - 1.0).abs() < 0.15, "{a}");
}

#[test]
fn random_minimum_exact_law_at_moderate_p() {
    // P(min > t) = p(1 − t) / (p + t − p t) for uniform factors.
    let p = 0.2;
    let spec = CapitalSpec::new(DistributionSpec::Uniform { lo: 0.0, hi: 1.0 }, p).unwrap();
    let s = random_min_sample(&spec, 100_000, 58).unwrap();
    let d = ks_distance(&s.minima.values, |t| 1.0 - p * (1.0 - t) / (p + t - p * t));
    assert!(d < heavytail::stats::ks_critical_1pct(100_000), "{d}");
    assert!((mean(&s.counts.iter().map(|c| *c as f64).collect::<Vec<_>>()) - 1.0 / p).abs() < 0.05);
}

#[test]
fn geometric_sums_of_exponentials_stay_light() {
    // A geometric sum of unit exponentials is exponential with rate p: no
    // heavy tail appears without heavy-tailed summands.
    let p = 0.1;
    let spec = CapitalSpec::new(DistributionSpec::Exponential { rate: 1.0 }, p).unwrap();
    let counts = random_min_sample(&spec, 100_000, 60).unwrap().counts;
    let mut rng = heavytail::rng::stream(61, 0);
    let sums: Vec<f64> = counts
        .iter()
        .map(|&k| (0..k).map(|_| heavytail::rng::exp1(&mut rng)).sum::<f64>())
        .collect();
    let d = ks_distance(&sums, |x| 1.0 - (-p * x).exp());
    assert!(d < heavytail::stats::ks_critical_1pct(sums.len()), "{d}");
}
