//! "Put tail down": the mixture F_p = (1 − p) F + p H of a symmetric law F with
//! a point mass at the origin. Scaling the tail by (1 − p) while pulling mass
//! to zero shrinks the variance faster than the tail, so more observations sit
//! beyond k standard deviations.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagnostics::outlier_rate;
use crate::dist::{DistributionSpec, SampleBatch, Source, SurvivalKind};
use crate::error::{domain, Error, Result};
use crate::rng::{self, open01};
use crate::stats::{mean, sample_sd};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PutTailDownSpec {
    pub base: DistributionSpec,
    /// Mixing weight of the atom, in (0, 1). p = 0 is accepted and yields the base law.
    pub p: f64,
    /// Half-width of the uniform law replacing the atom; 0 keeps the exact atom.
    #[serde(default)]
    pub smoothing: f64,
}

impl PutTailDownSpec {
    pub fn new(base: DistributionSpec, p: f64) -> Result<Self> {
        Self::smoothed(base, p, 0.0)
    }

    pub fn smoothed(base: DistributionSpec, p: f64, smoothing: f64) -> Result<Self> {
        let spec = PutTailDownSpec { base, p, smoothing };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if matches!(self.base, DistributionSpec::PutTailDown(_)) {
            return Err(Error::Unsupported("nested put-tail-down bases".into()));
        }
        if !self.base.is_symmetric() {
            return Err(Error::Unsupported(format!(
                "base law must be symmetric: {:?}",
                self.base
            )));
        }
        if self.base.variance().is_none() {
            return Err(Error::Unsupported(format!(
                "base law needs a finite variance: {:?}",
                self.base
            )));
        }
        if !(0.0..1.0).contains(&self.p) {
            return Err(domain(format!("mixing weight must lie in [0, 1), got {}", self.p)));
        }
        if !(self.smoothing >= 0.0) || !self.smoothing.is_finite() {
            return Err(domain(format!(
                "smoothing half-width must be >= 0, got {}",
                self.smoothing
            )));
        }
        Ok(())
    }

    /// σ² of the base law.
    pub fn base_variance(&self) -> f64 {
        self.base.variance().expect("validated base has finite variance")
    }

    /// Variance of Y_p: (1 − p)σ² plus p ε²/3 from the smoothing window.
    pub fn variance(&self) -> Option<f64> {
        let base = self.base.variance()?;
        Some((1.0 - self.p) * base + self.p * self.smoothing * self.smoothing / 3.0)
    }

    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if open01(rng) < self.p {
            if self.smoothing > 0.0 {
                self.smoothing * (2.0 * open01(rng) - 1.0)
            } else {
                0.0
            }
        } else {
            self.base.draw(rng)
        }
    }

    pub(crate) fn tail(&self, x: f64) -> f64 {
        let atom = if self.smoothing > 0.0 {
            (1.0 - x / self.smoothing).max(0.0)
        } else {
            0.0
        };
        (1.0 - self.p) * self.base.tail(x) + self.p * atom
    }

    fn analytic_base(&self) -> Result<()> {
        self.validate()?;
        if self.base.survival_kind() != SurvivalKind::Analytic {
            return Err(Error::Unsupported("base law has no closed-form survival".into()));
        }
        Ok(())
    }
}

pub fn sample_ptd(spec: &PutTailDownSpec, n: usize, seed: u64) -> Result<SampleBatch> {
    sample_ptd_stream(spec, n, seed, 0)
}

fn sample_ptd_stream(spec: &PutTailDownSpec, n: usize, seed: u64, stream: u64) -> Result<SampleBatch> {
    spec.validate()?;
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    let mut rng = rng::stream(seed, stream);
    let values = (0..n).map(|_| spec.draw(&mut rng)).collect();
    Ok(SampleBatch {
        values,
        seed,
        stream,
        source: Source::Law(DistributionSpec::PutTailDown(Box::new(spec.clone()))),
    })
}

/// P{|Y_p| > k σ_p} = 2 (1 − p) F̄(k √(1 − p) σ), with σ_p the analytic
/// standard deviation of the unsmoothed mixture.
pub fn outlier_prob_exact(spec: &PutTailDownSpec, k: f64) -> Result<f64> {
    spec.analytic_base()?;
    if spec.smoothing != 0.0 {
        return Err(Error::Unsupported(
            "exact outlier probability requires smoothing = 0".into(),
        ));
    }
    let sigma = spec.base_variance().sqrt();
    let level = k * (1.0 - spec.p).sqrt() * sigma;
    Ok(2.0 * (1.0 - spec.p) * spec.base.upper_tail(level))
}

/// Both sides of the sufficient condition (1 − p) F̄(k √(1 − p) σ) > F̄(k σ).
/// The verdict is taken on the logs, so it survives when both sides underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub holds: bool,
}

impl ConditionCheck {
    /// lhs / rhs; for a power tail of index α this tends to (1 − p)^(1 − α/2).
    pub fn ratio(&self) -> f64 {
        (self.log_lhs - self.log_rhs).exp()
    }
}

pub fn check_condition_4a(spec: &PutTailDownSpec, k: f64) -> Result<ConditionCheck> {
    spec.analytic_base()?;
    if !(k > 0.0) {
        return Err(domain(format!("k must be > 0, got {k}")));
    }
    let sigma = spec.base_variance().sqrt();
    let log_lhs = (1.0 - spec.p).ln() + spec.base.log_upper_tail(k * (1.0 - spec.p).sqrt() * sigma);
    let log_rhs = spec.base.log_upper_tail(k * sigma);
    Ok(ConditionCheck {
        lhs: log_lhs.exp(),
        rhs: log_rhs.exp(),
        log_lhs,
        log_rhs,
        holds: log_lhs > log_rhs,
    })
}

/// Monte Carlo comparison of outlier rates (sample mean and sd, as in the
/// empirical statistic) between the base law and the mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct OutlierComparison {
    pub rate_base: f64,
    pub rate_ptd: f64,
    pub sd_base: f64,
    pub sd_ptd: f64,
    /// Fraction of trials with rate_ptd > rate_base.
    pub win_fraction: f64,
    pub trials: usize,
}

pub fn more_outliers_mc(
    spec: &PutTailDownSpec,
    k: f64,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<OutlierComparison> {
    spec.validate()?;
    if trials == 0 {
        return Err(domain("trials must be >= 1"));
    }
    let pairs: Vec<(f64, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let base = crate::dist::sample_stream(&spec.base, n, seed, 2 * t)?;
            let mixed = sample_ptd_stream(spec, n, seed, 2 * t + 1)?;
            Ok((
                outlier_rate(&base.values, k)?.rate,
                outlier_rate(&mixed.values, k)?.rate,
            ))
        })
        .collect::<Result<_>>()?;
    let base: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mixed: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let wins = pairs.iter().filter(|(b, m)| m > b).count();
    Ok(OutlierComparison {
        rate_base: mean(&base),
        rate_ptd: mean(&mixed),
        sd_base: sample_sd(&base),
        sd_ptd: sample_sd(&mixed),
        win_fraction: wins as f64 / trials as f64,
        trials,
    })
}
