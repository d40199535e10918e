use heavytail::diagnostics::{
    gap_ratio, gap_ratio_study, gap_ratio_with, order_gaps, outlier_rate, outlier_rate_sweep, theorem1_experiment,
    Transform, TypicalGap,
};
use heavytail::dist::DistributionSpec;
use heavytail::stats::{median, normal_sf};
use heavytail::Error;

#[test]
fn gap_examples() {
    assert_eq!(
        order_gaps(&[4.0, 1.0, 2.0], Transform::Identity).unwrap().gaps,
        vec![1.0, 2.0]
    );
    let e = std::f64::consts::E;
    let g = order_gaps(&[1.0, e, e.powi(3)], Transform::Log).unwrap().gaps;
    assert!((g[0] - 1.0).abs() < 1e-15 && (g[1] - 2.0).abs() < 1e-15);
    assert!(order_gaps(&[1e6, 1e9], Transform::Arctan).unwrap().gaps[0] < 1e-5);
    let p = order_gaps(&[0.0, 1.0, 3.0, 6.0], Transform::Identity).unwrap();
    assert_eq!(gap_ratio_with(&p, TypicalGap::Median).unwrap(), 1.5);
    assert_eq!(gap_ratio(&p).unwrap(), 1.5);
}

#[test]
fn log_of_zero_names_the_index() {
    match order_gaps(&[3.0, 0.0, 2.0], Transform::Log) {
        Err(Error::ValueDomain { index, .. }) => assert_eq!(index, 1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn arctan_gaps_stay_below_half_pi() {
    let batch = heavytail::dist::sample(&DistributionSpec::StrictlyStable { alpha: 0.5 }, 500, 3).unwrap();
    let p = order_gaps(&batch.values, Transform::Arctan).unwrap();
    assert!(p.gaps.iter().all(|g| *g >= 0.0 && *g < std::f64::consts::FRAC_PI_2));
}

#[test]
fn ties_make_the_median_profile_degenerate() {
    let p = order_gaps(&[1.0, 1.0, 1.0, 5.0], Transform::Identity).unwrap();
    assert!(matches!(
        gap_ratio_with(&p, TypicalGap::Median),
        Err(Error::Degenerate(_))
    ));
    assert!(gap_ratio_with(&p, TypicalGap::Mean).is_ok());
}

fn study_median(spec: DistributionSpec, transform: Transform, typical: TypicalGap) -> f64 {
    median(&gap_ratio_study(&spec, 200, transform, typical, 200, 99).unwrap())
}

#[test]
fn pareto_gap_ratios_fall_in_the_narrated_bands() {
    let pareto = DistributionSpec::ParetoI { alpha: 2.0 };
    let identity = study_median(pareto.clone(), Transform::Identity, TypicalGap::Mean);
    assert!((10.0..=200.0).contains(&identity), "identity {identity}");
    let log = study_median(pareto.clone(), Transform::Log, TypicalGap::Mean);
    assert!((15.0..=60.0).contains(&log), "log {log}");
    let arctan = study_median(pareto, Transform::Arctan, TypicalGap::Mean);
    assert!((5.0..=30.0).contains(&arctan), "arctan {arctan}");
    assert!(identity > log && log > arctan);
}

#[test]
fn exponential_gap_ratio_band() {
    let r = study_median(
        DistributionSpec::Exponential { rate: 1.0 },
        Transform::Identity,
        TypicalGap::Mean,
    );
    assert!((5.0..=100.0).contains(&r), "{r}");
}

#[test]
fn median_gap_is_far_smaller_than_mean_gap_for_pareto() {
    let pareto = DistributionSpec::ParetoI { alpha: 2.0 };
    let by_median = study_median(pareto.clone(), Transform::Identity, TypicalGap::Median);
    let by_mean = study_median(pareto, Transform::Identity, TypicalGap::Mean);
    assert!(by_median > 5.0 * by_mean, "{by_median} vs {by_mean}");
}

#[test]
fn outlier_rate_examples() {
    let r = outlier_rate(&[0.0, 0.0, 0.0, 10.0], 1.0).unwrap();
    assert_eq!(r.mean, 2.5);
    assert!((r.sd - 18.75f64.sqrt()).abs() < 1e-15);
    assert_eq!(r.rate, 0.25);
    assert_eq!(r.flagged, vec![3]);
    let d = outlier_rate(&[2.0; 4], 1.0).unwrap();
    assert!(d.degenerate && d.rate == 0.0);
    assert!(outlier_rate(&[1.0], 1.0).is_err());
    assert!(outlier_rate(&[1.0, 2.0], 0.0).is_err());
}

#[test]
fn normal_outlier_rate_near_two_sigma_probability() {
    let batch = heavytail::dist::sample(&DistributionSpec::Normal { sd: 1.0 }, 100_000, 8).unwrap();
    let r = outlier_rate(&batch.values, 2.0).unwrap().rate;
    assert!((r - 2.0 * normal_sf(2.0)).abs() < 0.005, "{r}");
}

#[test]
fn stable_outlier_rate_decays() {
    let rows = theorem1_experiment(1.5, &[1_000, 10_000, 100_000], 3.0, 50, 2024).unwrap();
    assert!(rows.windows(2).all(|w| w[1].mean_rate < w[0].mean_rate), "{rows:?}");
    assert!(rows[2].mean_rate < 0.5 * rows[0].mean_rate);
    assert!(rows
        .iter()
        .all(|r| r.alpha == Some(1.5) && r.trials == 50 && r.seed == 2024));
    assert_eq!(theorem1_experiment(1.5, &[500], 3.0, 30, 1).unwrap().len(), 1);
}

#[test]
fn theorem1_rejects_bad_arguments() {
    assert!(theorem1_experiment(2.0, &[100], 3.0, 30, 0).is_err());
    assert!(theorem1_experiment(1.0, &[100], 3.0, 29, 0).is_err());
    assert!(theorem1_experiment(1.0, &[100, 100], 3.0, 30, 0).is_err());
}

#[test]
fn gaussian_sweep_has_no_trend() {
    let target = 2.0 * normal_sf(3.0);
    let rows = outlier_rate_sweep(
        &DistributionSpec::StrictlyStable { alpha: 2.0 },
        &[1_000, 10_000, 100_000],
        3.0,
        50,
        7,
    )
    .unwrap();
    for r in rows {
        assert!((r.mean_rate - target).abs() < 0.005, "{r:?}");
    }
}

#[test]
fn final_rate_beats_first_in_most_repetitions() {
    let reps = 40;
    let wins = (0..reps)
        .filter(|&s| {
            let rows = theorem1_experiment(1.2, &[200, 20_000], 3.0, 30, 1000 + s).unwrap();
            rows[1].mean_rate < rows[0].mean_rate
        })
        .count();
    assert!(wins as f64 >= 0.95 * reps as f64, "{wins}/{reps}");
}
