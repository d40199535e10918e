//! Generative models whose limits are heavy tailed even when every ingredient
//! is light tailed or bounded: the LePage series, geometric random products
//! (the capital toy model) and geometric random minima. Also the Hill and
//! mean-log estimators used to read off their tail indices.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{DistributionSpec, SampleBatch, Source};
use crate::error::{domain, Error, Result};
use crate::rng::{self, exp1, open01, StreamRng};

/// Remainder tolerance used by [`LePageSpec::with_tolerance`] callers that
/// have no specific accuracy target.
pub const DEFAULT_LEPAGE_TOLERANCE: f64 = 1e-4;

/// Upper limit on series length.
pub const MAX_LEPAGE_TERMS: usize = 100_000_000;

/// Draws per RNG stream in the chunked model samplers.
const CHUNK: usize = 4096;

/// Law of the LePage signals Y_k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Signal {
    Constant {
        value: f64,
    },
    /// Fair ±1.
    Rademacher,
    Law {
        law: DistributionSpec,
    },
}

impl Signal {
    fn draw(&self, rng: &mut StreamRng) -> f64 {
        match self {
            Signal::Constant { value } => *value,
            Signal::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            Signal::Law { law } => law.draw(rng),
        }
    }

    fn is_centered(&self) -> bool {
        match self {
            Signal::Constant { value } => *value == 0.0,
            Signal::Rademacher => true,
            Signal::Law { law } => law.is_symmetric(),
        }
    }

    /// (E|Y| bound, Var Y), or `None` without a finite second moment.
    fn moments(&self) -> Option<(f64, f64)> {
        match self {
            Signal::Constant { value } => Some((value.abs(), 0.0)),
            Signal::Rademacher => Some((1.0, 1.0)),
            Signal::Law { law } => {
                let var = law.variance()?;
                let mean = match law {
                    DistributionSpec::Exponential { rate } => 1.0 / rate,
                    DistributionSpec::Uniform { lo, hi } => 0.5 * (lo + hi),
                    DistributionSpec::Degenerate { value } => *value,
                    DistributionSpec::ParetoI { alpha } => alpha / (alpha - 1.0),
                    DistributionSpec::Empirical { sorted } => crate::stats::mean(sorted),
                    DistributionSpec::Weibull { shape } => statrs::function::gamma::gamma(1.0 + 1.0 / shape),
                    _ => 0.0,
                };
                Some(((var + mean * mean).sqrt(), var))
            }
        }
    }
}

/// Truncated LePage series Σ_{k ≤ N} Y_k Γ_k^(−a), where Γ_k are the arrival
/// times of a unit Poisson process. The full series is strictly stable with
/// index α = 1/a.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LePageSpec {
    /// Signal depression exponent a > 1/2.
    pub exponent: f64,
    pub signal: Signal,
    pub terms: usize,
    /// When set, `terms` must keep [`LePageSpec::remainder_bound`] below it.
    #[serde(default)]
    pub tolerance: Option<f64>,
}

impl LePageSpec {
    /// Series with an explicit number of terms.
    pub fn new(exponent: f64, signal: Signal, terms: usize) -> Result<Self> {
        let spec = LePageSpec {
            exponent,
            signal,
            terms,
            tolerance: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Series with the fewest terms whose remainder bound is below `tolerance`.
    pub fn with_tolerance(exponent: f64, signal: Signal, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0) {
            return Err(domain(format!("tolerance must be > 0, got {tolerance}")));
        }
        let mut spec = LePageSpec {
            exponent,
            signal,
            terms: 1,
            tolerance: Some(tolerance),
        };
        spec.check_index()?;
        let (abs_mean, var) = spec.signal_moments()?;
        let a = exponent;
        let needed = if a > 1.0 {
            (abs_mean * 2f64.powf(a) / ((a - 1.0) * tolerance)).powf(1.0 / (a - 1.0))
        } else {
            (var / ((2.0 * a - 1.0) * tolerance)).powf(1.0 / (2.0 * a - 1.0))
        };
        if !(needed <= MAX_LEPAGE_TERMS as f64) {
            return Err(domain(format!(
                "tolerance {tolerance} needs more than {MAX_LEPAGE_TERMS} terms at a = {a}"
            )));
        }
        spec.terms = (needed.ceil() as usize).max(1);
        // Guard against rounding in the closed-form inversion.
        while spec.remainder_bound()? >= tolerance {
            spec.terms += 1;
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn alpha(&self) -> f64 {
        1.0 / self.exponent
    }

    fn check_index(&self) -> Result<()> {
        if !(self.exponent > 0.5) || !self.exponent.is_finite() {
            return Err(domain(format!(
                "depression exponent must exceed 1/2 (stable index below 2), got {}",
                self.exponent
            )));
        }
        if self.exponent <= 1.0 && !self.signal.is_centered() {
            return Err(Error::Divergence(format!(
                "a = {} <= 1 requires centered signals",
                self.exponent
            )));
        }
        Ok(())
    }

    fn signal_moments(&self) -> Result<(f64, f64)> {
        if let Signal::Law { law } = &self.signal {
            law.validate()?;
        }
        self.signal
            .moments()
            .ok_or_else(|| Error::Unsupported("signal law needs a finite variance".into()))
    }

    pub fn validate(&self) -> Result<()> {
        self.check_index()?;
        if self.terms == 0 || self.terms > MAX_LEPAGE_TERMS {
            return Err(domain(format!(
                "terms must lie in 1..={MAX_LEPAGE_TERMS}, got {}",
                self.terms
            )));
        }
        if let Some(tol) = self.tolerance {
            let bound = self.remainder_bound()?;
            if bound >= tol {
                return Err(domain(format!(
                    "{} terms leave a remainder bound {bound:e} above tolerance {tol:e}",
                    self.terms
                )));
            }
        }
        Ok(())
    }

    /// Bound on the neglected tail of the series: Σ_{k>N} E|Y| (k/2)^(−a)
    /// for a > 1 (using Γ_k ≥ k/2), and the variance bound
    /// Σ_{k>N} Var(Y) k^(−2a) for a ∈ (1/2, 1]; both via integral comparison.
    pub fn remainder_bound(&self) -> Result<f64> {
        let (abs_mean, var) = self.signal_moments()?;
        let a = self.exponent;
        let n = self.terms as f64;
        Ok(if a > 1.0 {
            abs_mean * 2f64.powf(a) * n.powf(1.0 - a) / (a - 1.0)
        } else {
            var * n.powf(1.0 - 2.0 * a) / (2.0 * a - 1.0)
        })
    }

    fn draw(&self, rng: &mut StreamRng) -> f64 {
        let mut arrival = 0.0;
        let mut sum = 0.0;
        for _ in 0..self.terms {
            arrival += exp1(rng);
            sum += self.signal.draw(rng) * (-self.exponent * f64::ln(arrival)).exp();
        }
        sum
    }
}

/// Fills `n` values, chunk `c` of `CHUNK` draws coming from stream `c`.
fn chunked<T, F>(n: usize, seed: u64, draw: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut StreamRng, usize) -> Result<T> + Sync,
{
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    let chunks: Vec<Vec<T>> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut rng = rng::stream(seed, c as u64);
            let start = c * CHUNK;
            let end = (start + CHUNK).min(n);
            (start..end).map(|i| draw(&mut rng, i)).collect::<Result<Vec<T>>>()
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

pub fn lepage_sample(spec: &LePageSpec, n: usize, seed: u64) -> Result<SampleBatch> {
    spec.validate()?;
    let values = chunked(n, seed, |rng, _| Ok(spec.draw(rng)))?;
    Ok(SampleBatch {
        values,
        seed,
        stream: 0,
        source: Source::LePage(spec.clone()),
    })
}

/// ⌈n^(2/3)⌉, capped at n − 1.
pub fn default_hill_m(n: usize) -> usize {
    ((n as f64).powf(2.0 / 3.0).ceil() as usize).min(n.saturating_sub(1))
}

/// Hill estimate m / Σ_{i ≤ m} log(|X|_(n−i+1) / |X|_(n−m)) from the top
/// m + 1 absolute order statistics.
pub fn hill_estimator(values: &[f64], m: usize) -> Result<f64> {
    let n = values.len();
    if m < 2 || m >= n {
        return Err(domain(format!("need 2 <= m < n, got m = {m}, n = {n}")));
    }
    let mut abs: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    abs.sort_by(|a, b| b.total_cmp(a));
    let threshold = abs[m];
    if !(threshold > 0.0) {
        return Err(Error::Degenerate(format!(
            "order statistic |X|_(n-m) = {threshold} must be positive"
        )));
    }
    let sum: f64 = abs[..m].iter().map(|x| (x / threshold).ln()).sum();
    if sum == 0.0 {
        return Err(Error::Degenerate("top order statistics are tied".into()));
    }
    Ok(m as f64 / sum)
}

/// Capital toy model: positive factors X_j compounded over a geometric
/// horizon ν_p with P(ν = k) = p (1 − p)^(k−1), k ≥ 1, then annualized:
/// Z_p = (∏_{j ≤ ν} X_j)^p.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapitalSpec {
    pub factor: DistributionSpec,
    /// Per-period probability of the terminating event, in (0, 1].
    pub p: f64,
}

impl CapitalSpec {
    pub fn new(factor: DistributionSpec, p: f64) -> Result<Self> {
        let spec = CapitalSpec { factor, p };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.factor.validate()?;
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(domain(format!("event probability must lie in (0, 1], got {}", self.p)));
        }
        Ok(())
    }

    /// E ν_p.
    pub fn mean_horizon(&self) -> f64 {
        1.0 / self.p
    }
}

/// ν on {1, 2, …} by inversion.
pub(crate) fn geometric_count<R: Rng + ?Sized>(p: f64, rng: &mut R) -> u64 {
    if p >= 1.0 {
        return 1;
    }
    let k = (open01(rng).ln() / (-p).ln_1p()).floor();
    1 + if k >= u64::MAX as f64 { u64::MAX - 1 } else { k as u64 }
}

fn positive_factor(spec: &CapitalSpec, rng: &mut StreamRng, index: usize) -> Result<f64> {
    let x = spec.factor.draw(rng);
    if x > 0.0 {
        Ok(x)
    } else {
        Err(Error::ValueDomain {
            index,
            value: x,
            reason: "factors of the random product must be positive",
        })
    }
}

/// One Z_p draw in log space, with its horizon.
fn capital_draw(spec: &CapitalSpec, rng: &mut StreamRng, index: usize) -> Result<(f64, u64)> {
    let nu = geometric_count(spec.p, rng);
    let mut log_sum = 0.0;
    for _ in 0..nu {
        log_sum += positive_factor(spec, rng, index)?.ln();
    }
    Ok(((spec.p * log_sum).exp(), nu))
}

pub fn capital_sample(spec: &CapitalSpec, n: usize, seed: u64) -> Result<SampleBatch> {
    spec.validate()?;
    let values = chunked(n, seed, |rng, i| capital_draw(spec, rng, i).map(|d| d.0))?;
    Ok(SampleBatch {
        values,
        seed,
        stream: 0,
        source: Source::Capital(spec.clone()),
    })
}

/// γ̂ = (1/n) Σ log X_j.
pub fn gamma_hat(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(domain("gamma estimate needs at least one value"));
    }
    let mut sum = 0.0;
    for (index, &x) in values.iter().enumerate() {
        if !(x > 0.0) {
            return Err(Error::ValueDomain {
                index,
                value: x,
                reason: "log-mean needs positive values",
            });
        }
        sum += x.ln();
    }
    Ok(sum / values.len() as f64)
}

/// Geometric random minima and their rescaling by 1/p.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomMinSample {
    pub minima: SampleBatch,
    /// min / p, which converges in law as p → 0 when X has a positive density at 0.
    pub scaled: Vec<f64>,
    /// Number of factors ν behind each minimum.
    pub counts: Vec<u64>,
}

/// min(X_1, …, X_ν) with ν geometric on {1, 2, …}.
pub fn random_min_sample(spec: &CapitalSpec, n: usize, seed: u64) -> Result<RandomMinSample> {
    spec.validate()?;
    let draws = chunked(n, seed, |rng, _| {
        let nu = geometric_count(spec.p, rng);
        let mut min = f64::INFINITY;
        for _ in 0..nu {
            min = min.min(spec.factor.draw(rng));
        }
        Ok((min, nu))
    })?;
    let (values, counts): (Vec<f64>, Vec<u64>) = draws.into_iter().unzip();
    let scaled = values.iter().map(|m| m / spec.p).collect();
    Ok(RandomMinSample {
        minima: SampleBatch {
            values,
            seed,
            stream: 0,
            source: Source::RandomMinimum(spec.clone()),
        },
        scaled,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::E;

    #[test]
    fn single_term_series_is_transformed_exponential() {
        let spec = LePageSpec::new(2.0, Signal::Constant { value: 1.0 }, 1).unwrap();
        let batch = lepage_sample(&spec, 100, 11).unwrap();
        let mut rng = rng::stream(11, 0);
        for &x in &batch.values {
            let gamma1 = exp1(&mut rng);
            assert_eq!(x, (-2.0 * gamma1.ln()).exp());
        }
    }

    #[test]
    fn lepage_parameter_errors() {
        assert!(matches!(
            LePageSpec::new(0.5, Signal::Rademacher, 10),
            Err(Error::ParameterDomain(_))
        ));
        assert!(matches!(
            LePageSpec::new(0.8, Signal::Constant { value: 1.0 }, 10),
            Err(Error::Divergence(_))
        ));
        assert!(matches!(
            LePageSpec::new(
                1.0,
                Signal::Law {
                    law: DistributionSpec::Exponential { rate: 1.0 }
                },
                10
            ),
            Err(Error::Divergence(_))
        ));
        assert!(LePageSpec::new(
            1.0,
            Signal::Law {
                law: DistributionSpec::Normal { sd: 1.0 }
            },
            10
        )
        .is_ok());
    }

    #[test]
    fn truncation_meets_tolerance() {
        for (a, signal) in [
            (2.0, Signal::Constant { value: 1.0 }),
            (1.5, Signal::Rademacher),
            (1.0, Signal::Rademacher),
            (
                0.75,
                Signal::Law {
                    law: DistributionSpec::Normal { sd: 2.0 },
                },
            ),
        ] {
            for &tol in &[1e-2, 1e-3, DEFAULT_LEPAGE_TOLERANCE] {
                if (a == 1.5 || a == 0.75) && tol < 1e-3 {
                    // Both rules only drop below 1e-4 past N = 3e9 here.
                    assert!(matches!(
                        LePageSpec::with_tolerance(a, signal.clone(), tol),
                        Err(Error::ParameterDomain(_))
                    ));
                    continue;
                }
                let spec = LePageSpec::with_tolerance(a, signal.clone(), tol).unwrap();
                assert!(spec.remainder_bound().unwrap() < tol);
                let fewer = LePageSpec {
                    terms: spec.terms - 1,
                    tolerance: None,
                    ..spec.clone()
                };
                if spec.terms > 1 {
                    assert!(fewer.remainder_bound().unwrap() >= tol, "a={a} tol={tol}");
                }
            }
        }
        let mut too_short = LePageSpec::with_tolerance(2.0, Signal::Rademacher, 1e-2).unwrap();
        too_short.terms -= 1;
        assert!(too_short.validate().is_err());
    }

    #[test]
    fn partial_sums_increase_with_terms_for_unit_signals() {
        let short = LePageSpec::new(1.5, Signal::Constant { value: 1.0 }, 10).unwrap();
        let long = LePageSpec::new(1.5, Signal::Constant { value: 1.0 }, 50).unwrap();
        let mut rng = rng::stream(4, 0);
        for _ in 0..200 {
            // Both series see the same first ten arrivals.
            let s = short.draw(&mut rng.clone());
            let l = long.draw(&mut rng);
            assert!(l >= s && s > 0.0);
        }
    }

    #[test]
    fn hill_on_pareto_quantile_grid() {
        let n = 10_000;
        let grid: Vec<f64> = (1..=n).map(|i| (n as f64 / i as f64).sqrt()).collect();
        let est = hill_estimator(&grid, 100).unwrap();
        assert!((est - 2.0).abs() < 0.3, "{est}");
    }

    #[test]
    fn hill_scale_invariance_and_errors() {
        let xs: Vec<f64> = (1..=1000).map(|i| (1000.0 / i as f64).powf(1.3)).collect();
        let scaled: Vec<f64> = xs.iter().map(|x| x * 8.0).collect();
        assert_eq!(hill_estimator(&xs, 50).unwrap(), hill_estimator(&scaled, 50).unwrap());
        assert!(hill_estimator(&xs, 1).is_err());
        assert!(hill_estimator(&xs, 1000).is_err());
        assert!(matches!(hill_estimator(&[2.0; 10], 3), Err(Error::Degenerate(_))));
        assert!(matches!(
            hill_estimator(&[0.0, 0.0, 0.0, 1.0, 2.0], 3),
            Err(Error::Degenerate(_))
        ));
        assert_eq!(default_hill_m(100_000), 2155);
        assert_eq!(default_hill_m(2), 1);
    }

    #[test]
    fn geometric_count_has_mean_one_over_p() {
        let mut rng = rng::stream(3, 0);
        let n = 200_000;
        let total: u64 = (0..n).map(|_| geometric_count(0.05, &mut rng)).sum();
        let mean = total as f64 / n as f64;
        // sd of ν is sqrt(1 − p)/p ≈ 19.5; 4 standard errors ≈ 0.17
        assert!((mean - 20.0).abs() < 0.2, "{mean}");
        assert_eq!(geometric_count(1.0, &mut rng), 1);
    }

    #[test]
    fn log_space_product_matches_direct_product() {
        let spec = CapitalSpec::new(DistributionSpec::Uniform { lo: 0.5, hi: 2.0 }, 0.1).unwrap();
        let mut rng = rng::stream(8, 0);
        let mut checked = 0;
        for i in 0..500 {
            let mut replay = rng.clone();
            let (z, nu) = capital_draw(&spec, &mut rng, i).unwrap();
            if nu > 50 {
                continue;
            }
            let nu_again = geometric_count(spec.p, &mut replay);
            assert_eq!(nu, nu_again);
            let product: f64 = (0..nu).map(|_| spec.factor.draw(&mut replay)).product();
            assert_relative_eq!(z, product.powf(spec.p), max_relative = 1e-12);
            checked += 1;
        }
        assert!(checked > 400);
    }

    #[test]
    fn unit_probability_gives_single_factor() {
        let spec = CapitalSpec::new(DistributionSpec::Uniform { lo: 1.0, hi: E }, 1.0).unwrap();
        let batch = capital_sample(&spec, 100, 2).unwrap();
        let mut rng = rng::stream(2, 0);
        for &z in &batch.values {
            let nu = geometric_count(1.0, &mut rng);
            assert_eq!(nu, 1);
            let x = spec.factor.draw(&mut rng);
            assert_relative_eq!(z, x, max_relative = 1e-15);
        }
    }

    #[test]
    fn nonpositive_factor_is_a_model_violation() {
        let spec = CapitalSpec::new(DistributionSpec::Normal { sd: 1.0 }, 0.5).unwrap();
        assert!(matches!(capital_sample(&spec, 50, 0), Err(Error::ValueDomain { .. })));
        assert!(CapitalSpec::new(DistributionSpec::Normal { sd: 1.0 }, 0.0).is_err());
    }

    #[test]
    fn gamma_hat_cases() {
        assert_eq!(gamma_hat(&[E; 16]).unwrap(), 1.0);
        assert!(matches!(
            gamma_hat(&[1.0, -1.0]),
            Err(Error::ValueDomain { index: 1, .. })
        ));
        let a = [1.5, 2.0, 7.0];
        let b = [3.0, 0.25, 1.1];
        let ab: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        assert_relative_eq!(
            gamma_hat(&ab).unwrap(),
            gamma_hat(&a).unwrap() + gamma_hat(&b).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn random_min_near_unit_probability() {
        let spec = CapitalSpec::new(DistributionSpec::Uniform { lo: 0.0, hi: 1.0 }, 0.999).unwrap();
        let s = random_min_sample(&spec, 100_000, 6).unwrap();
        let single = s.counts.iter().filter(|&&c| c == 1).count() as f64 / 1e5;
        assert!(single >= 0.998, "{single}");
        for (m, z) in s.minima.values.iter().zip(&s.scaled) {
            assert_eq!(*z, m / 0.999);
        }
    }
}
