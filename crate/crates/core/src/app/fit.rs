//! Pareto fit by the mean log-excess over a threshold, with the linear and
//! log–log survival tables used to compare data against the fitted model.

use crate::error::{Error, Result};
use crate::stats::ks_distance;

pub const MIN_FIT_POINTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalRow {
    pub x: f64,
    /// Fraction of admissible values ≥ x.
    pub s_empirical: f64,
    pub s_model: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    /// Number of admissible values (≥ x_min).
    pub n: usize,
    pub x_min: f64,
    /// Mean of log(x / x_min).
    pub gamma_hat: f64,
    /// 1 / γ̂.
    pub tail_exponent: f64,
    pub ks: f64,
    pub table: Vec<SurvivalRow>,
}

impl FitReport {
    /// The table in log–log coordinates (log x, log S_emp, log S_model).
    pub fn log_log(&self) -> Vec<(f64, f64, f64)> {
        self.table
            .iter()
            .map(|r| (r.x.ln(), r.s_empirical.ln(), r.s_model.ln()))
            .collect()
    }
}

/// Fits S(x) = (x / x_min)^(−1/γ̂) to the values at or above `x_min`
/// (default: the sample minimum). Values below the threshold are dropped.
pub fn fit_pareto(data: &[f64], x_min: Option<f64>) -> Result<FitReport> {
    if let Some((index, &value)) = data.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::ValueDomain {
            index,
            value,
            reason: "Pareto fit needs positive data",
        });
    }
    let x_min = match x_min {
        Some(m) if m > 0.0 => m,
        Some(m) => return Err(crate::error::domain(format!("x_min must be > 0, got {m}"))),
        None => data.iter().copied().fold(f64::INFINITY, f64::min),
    };
    let mut kept: Vec<f64> = data.iter().copied().filter(|&x| x >= x_min).collect();
    if kept.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            found: kept.len(),
        });
    }
    kept.sort_by(f64::total_cmp);
    let n = kept.len();
    let gamma_hat = kept.iter().map(|x| (x / x_min).ln()).sum::<f64>() / n as f64;
    if !(gamma_hat > 0.0) {
        return Err(Error::Degenerate(
            "all admissible values equal x_min; no spread to fit".into(),
        ));
    }
    let tail_exponent = 1.0 / gamma_hat;
    let model = |x: f64| (x / x_min).powf(-tail_exponent);
    let ks = ks_distance(&kept, |x| 1.0 - model(x));
    let table = kept
        .iter()
        .enumerate()
        .map(|(i, &x)| SurvivalRow {
            x,
            s_empirical: (n - i) as f64 / n as f64,
            s_model: model(x),
        })
        .collect();
    Ok(FitReport {
        n,
        x_min,
        gamma_hat,
        tail_exponent,
        ks,
        table,
    })
}
