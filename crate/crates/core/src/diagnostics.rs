//! Order-statistic gap diagnostics and the standardized outlier rate.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{self, DistributionSpec};
use crate::error::{domain, Error, Result};
use crate::stats::{mean, median, sample_sd, variance};

/// Monotone map applied to |X| before taking gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Identity,
    Log,
    Arctan,
}

impl Transform {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Transform::Identity => x,
            Transform::Log => x.ln(),
            Transform::Arctan => x.atan(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Transform::Identity => "identity",
            Transform::Log => "log",
            Transform::Arctan => "arctan",
        }
    }
}

/// Ordered absolute values and the gaps between consecutive transformed ones.
#[derive(Debug, Clone, PartialEq)]
pub struct GapProfile {
    pub transform: Transform,
    pub sorted_abs: Vec<f64>,
    pub gaps: Vec<f64>,
}

/// Yardstick for the "typical" gap in [`gap_ratio_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TypicalGap {
    /// Average gap, (max − min)/(n − 1) on the transformed scale.
    #[default]
    Mean,
    Median,
}

pub fn order_gaps(values: &[f64], transform: Transform) -> Result<GapProfile> {
    if values.len() < 2 {
        return Err(domain(format!("gap profile needs n >= 2, got {}", values.len())));
    }
    if transform == Transform::Log {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| v.abs() <= 0.0 || v.is_nan()) {
            return Err(Error::ValueDomain {
                index,
                value,
                reason: "log transform requires |x| > 0",
            });
        }
    }
    let mut sorted_abs: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    sorted_abs.sort_by(f64::total_cmp);
    let transformed: Vec<f64> = sorted_abs.iter().map(|&x| transform.apply(x)).collect();
    let gaps = transformed.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(GapProfile {
        transform,
        sorted_abs,
        gaps,
    })
}

/// Largest gap over the mean gap.
pub fn gap_ratio(profile: &GapProfile) -> Result<f64> {
    gap_ratio_with(profile, TypicalGap::Mean)
}

/// Largest gap over the typical gap.
pub fn gap_ratio_with(profile: &GapProfile, typical: TypicalGap) -> Result<f64> {
    if profile.gaps.len() < 2 {
        return Err(domain(format!(
            "gap ratio needs n >= 3, got {}",
            profile.gaps.len() + 1
        )));
    }
    let reference = match typical {
        TypicalGap::Mean => mean(&profile.gaps),
        TypicalGap::Median => median(&profile.gaps),
    };
    if !(reference > 0.0) {
        return Err(Error::Degenerate(format!(
            "{typical:?} gap is zero (tied order statistics)"
        )));
    }
    let max = profile.gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(max / reference)
}

/// Gap ratios of `reps` independent samples of size `n`, replication `r`
/// drawn on stream `r` of `seed`.
pub fn gap_ratio_study(
    spec: &DistributionSpec,
    n: usize,
    transform: Transform,
    typical: TypicalGap,
    reps: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    (0..reps as u64)
        .into_par_iter()
        .map(|r| {
            let batch = dist::sample_stream(spec, n, seed, r)?;
            gap_ratio_with(&order_gaps(&batch.values, transform)?, typical)
        })
        .collect()
}

/// Share of observations more than `k` standard deviations from the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct OutlierReport {
    pub k: f64,
    pub n: usize,
    pub mean: f64,
    /// Standard deviation with the 1/n divisor.
    pub sd: f64,
    pub rate: f64,
    pub flagged: Vec<usize>,
    /// Set when the sample has zero spread; `rate` is then 0.
    pub degenerate: bool,
}

pub fn outlier_rate(values: &[f64], k: f64) -> Result<OutlierReport> {
    let n = values.len();
    if n < 2 {
        return Err(domain(format!("outlier rate needs n >= 2, got {n}")));
    }
    if !(k > 0.0) || !k.is_finite() {
        return Err(domain(format!("threshold multiplier must be > 0, got {k}")));
    }
    let m = mean(values);
    let sd = variance(values).sqrt();
    if sd == 0.0 {
        return Ok(OutlierReport {
            k,
            n,
            mean: m,
            sd,
            rate: 0.0,
            flagged: Vec::new(),
            degenerate: true,
        });
    }
    let flagged: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, &x)| (x - m).abs() / sd > k)
        .map(|(i, _)| i)
        .collect();
    Ok(OutlierReport {
        k,
        n,
        mean: m,
        sd,
        rate: flagged.len() as f64 / n as f64,
        flagged,
        degenerate: false,
    })
}

/// One row of an outlier-rate sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub n: usize,
    pub mean_rate: f64,
    pub sd_rate: f64,
    pub trials: usize,
    /// Stable index when the sampled law is strictly stable.
    pub alpha: Option<f64>,
    pub k: f64,
    pub seed: u64,
}

/// Mean and spread of the outlier rate over `trials` samples at each size in
/// `n_grid`. Trial `t` at grid position `g` uses stream `(g << 32) | t`, so the
/// table depends only on the arguments, not on thread scheduling.
pub fn outlier_rate_sweep(
    spec: &DistributionSpec,
    n_grid: &[usize],
    k: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<RateRow>> {
    spec.validate()?;
    if n_grid.is_empty() {
        return Err(domain("n grid is empty"));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("n grid must be strictly increasing"));
    }
    if trials == 0 {
        return Err(domain("trials must be >= 1"));
    }
    let alpha = match spec {
        DistributionSpec::StrictlyStable { alpha } => Some(*alpha),
        _ => None,
    };
    n_grid
        .iter()
        .enumerate()
        .map(|(g, &n)| {
            let rates: Vec<f64> = (0..trials as u64)
                .into_par_iter()
                .map(|t| {
                    let batch = dist::sample_stream(spec, n, seed, ((g as u64) << 32) | t)?;
                    Ok(outlier_rate(&batch.values, k)?.rate)
                })
                .collect::<Result<_>>()?;
            Ok(RateRow {
                n,
                mean_rate: mean(&rates),
                sd_rate: sample_sd(&rates),
                trials,
                alpha,
                k,
                seed,
            })
        })
        .collect()
}

/// Outlier-rate sweep for the symmetric stable law of index α ∈ (0, 2),
/// whose rate tends to 0 as n grows.
pub fn theorem1_experiment(alpha: f64, n_grid: &[usize], k: f64, trials: usize, seed: u64) -> Result<Vec<RateRow>> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(domain(format!("stable index must lie in (0, 2), got {alpha}")));
    }
    if trials < 30 {
        return Err(domain(format!("need at least 30 trials, got {trials}")));
    }
    outlier_rate_sweep(&DistributionSpec::StrictlyStable { alpha }, n_grid, k, trials, seed)
}
