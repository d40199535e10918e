//! Tail bounds inside IFRA-type classes.
//!
//! Classical IFRA: −(1/x) log S(x) nondecreasing, which gives the exponential
//! bound S(x) ≤ S(t)^(x/t) for x ≥ t. The φ-generalization measures the tail
//! through φ⁻¹(S) on a logarithmic time scale,
//!
//! ```text
//! ρ(t) = d/dt φ⁻¹(S(t)),    r(t) = ρ(e^t) e^t,
//! ```
//!
//! and a law is φ-IFRA (φ-DFRA) when r increases (decreases) for t > 0. For
//! φ-IFRA members S(u) ≤ φ((log u / log v) φ⁻¹(S(v))) for u > v > 1, with the
//! inequality reversed for φ-DFRA. With φ(u) = e^(−u) this reads
//! S(u) ≤ u^(log S(v) / log v): a power-law envelope, attained by Pareto tails.
//!
//! The power-law bound relies on G(t) = φ⁻¹(S(e^t)) being convex with
//! G(0) = 0, i.e. S(1) = 1. Laws with mass below 1 can have increasing r and
//! still violate it for v close to 1; see the tests below.

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Tolerance for the non-strict monotonicity checks.
pub const MONOTONE_TOL: f64 = 1e-9;

/// Tabulated survival values on a strictly increasing positive grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivalCurve {
    grid: Vec<f64>,
    values: Vec<f64>,
    cure: Option<f64>,
}

impl SurvivalCurve {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(domain(format!(
                "grid has {} points but {} survival values",
                grid.len(),
                values.len()
            )));
        }
        if grid.is_empty() {
            return Err(domain("survival curve is empty"));
        }
        if let Some(i) = grid.iter().position(|t| !(*t > 0.0) || !t.is_finite()) {
            return Err(domain(format!(
                "grid point {i} = {} is not a positive finite time",
                grid[i]
            )));
        }
        if let Some(i) = grid.windows(2).position(|w| w[0] >= w[1]) {
            return Err(domain(format!("grid is not strictly increasing at index {}", i + 1)));
        }
        if let Some(i) = values.iter().position(|s| !(0.0..=1.0).contains(s)) {
            return Err(domain(format!("survival value {i} = {} is outside [0, 1]", values[i])));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] > w[0]) {
            return Err(domain(format!("survival increases at index {}", i + 1)));
        }
        Ok(SurvivalCurve {
            grid,
            values,
            cure: None,
        })
    }

    /// Tabulates `survival` on `grid`.
    pub fn from_fn<F: Fn(f64) -> f64>(grid: Vec<f64>, survival: F) -> Result<Self> {
        let values = grid.iter().map(|&t| survival(t)).collect();
        Self::new(grid, values)
    }

    pub fn with_cure(mut self, cure: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&cure) {
            return Err(domain(format!("cure mass must lie in [0, 1), got {cure}")));
        }
        self.cure = Some(cure);
        Ok(self)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cure(&self) -> Option<f64> {
        self.cure
    }
}

/// Conditional survival S_o = (S − a)/(1 − a) of the non-cured part.
pub fn cure_split(curve: &SurvivalCurve, cure: f64) -> Result<SurvivalCurve> {
    let min = curve.values.iter().copied().fold(f64::INFINITY, f64::min);
    if !(cure >= 0.0) || cure >= 1.0 || cure >= min {
        return Err(Error::InvalidCure { cure, min });
    }
    let values = curve
        .values
        .iter()
        .map(|s| ((s - cure) / (1.0 - cure)).clamp(0.0, 1.0))
        .collect();
    SurvivalCurve::new(curve.grid.clone(), values)
}

/// a + (1 − a) S_o.
pub fn cure_compose(proper: &SurvivalCurve, cure: f64) -> Result<SurvivalCurve> {
    let values = proper.values.iter().map(|s| cure + (1.0 - cure) * s).collect();
    SurvivalCurve::new(proper.grid.clone(), values)?.with_cure(cure)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IfraVerdict {
    pub member: bool,
    /// −(1/t) log S(t) on the (possibly truncated) grid.
    pub average_hazard: Vec<f64>,
    /// Index of the first zero survival value, where the check stopped.
    pub truncated_at: Option<usize>,
}

/// Whether −(1/t) log S(t) is nondecreasing on the grid, within [`MONOTONE_TOL`].
pub fn ifra_check(curve: &SurvivalCurve) -> IfraVerdict {
    let truncated_at = curve.values.iter().position(|&s| s == 0.0);
    if let Some(i) = truncated_at {
        log::warn!("survival reaches 0 at grid index {i}; IFRA check truncated there");
    }
    let end = truncated_at.unwrap_or(curve.values.len());
    let average_hazard: Vec<f64> = curve.grid[..end]
        .iter()
        .zip(&curve.values[..end])
        .map(|(t, s)| -s.ln() / t)
        .collect();
    IfraVerdict {
        member: is_monotone(&average_hazard, 1.0),
        average_hazard,
        truncated_at,
    }
}

fn is_monotone(xs: &[f64], direction: f64) -> bool {
    xs.windows(2).all(|w| direction * (w[1] - w[0]) >= -MONOTONE_TOL)
}

/// S(t)^(x/t), an upper bound on S(x) for IFRA laws.
pub fn ifra_tail_bound(s_t: f64, t: f64, x: f64) -> Result<f64> {
    if !(s_t > 0.0 && s_t < 1.0) {
        return Err(domain(format!("S(t) must lie in (0, 1), got {s_t}")));
    }
    if !(t > 0.0) {
        return Err(domain(format!("t must be > 0, got {t}")));
    }
    if !(x >= t) {
        return Err(Error::Ordering(format!("need x >= t, got x = {x}, t = {t}")));
    }
    Ok(s_t.powf(x / t))
}

/// A strictly decreasing φ on [0, ∞) with φ(0) = 1 and φ′(0) = −1.
pub trait Phi {
    fn value(&self, u: f64) -> f64;
    fn inverse(&self, s: f64) -> f64;
    fn derivative(&self, u: f64) -> f64;
}

/// φ(u) = e^(−u).
#[derive(Debug, Clone, Copy, Default)]
pub struct ExpPhi;

impl Phi for ExpPhi {
    fn value(&self, u: f64) -> f64 {
        (-u).exp()
    }
    fn inverse(&self, s: f64) -> f64 {
        -s.ln()
    }
    fn derivative(&self, u: f64) -> f64 {
        -(-u).exp()
    }
}

/// φ(u) = 1/(1 + u).
#[derive(Debug, Clone, Copy, Default)]
pub struct ReciprocalPhi;

impl Phi for ReciprocalPhi {
    fn value(&self, u: f64) -> f64 {
        1.0 / (1.0 + u)
    }
    fn inverse(&self, s: f64) -> f64 {
        1.0 / s - 1.0
    }
    fn derivative(&self, u: f64) -> f64 {
        -1.0 / ((1.0 + u) * (1.0 + u))
    }
}

/// Checks the normalization φ(0) = 1, φ′(0) = −1 (by forward difference)
/// and the inverse on a grid of survival levels.
pub fn validate_phi<P: Phi + ?Sized>(phi: &P) -> Result<()> {
    if (phi.value(0.0) - 1.0).abs() > 1e-12 {
        return Err(domain(format!("phi(0) = {} != 1", phi.value(0.0))));
    }
    let h = 1e-7;
    let slope = (phi.value(h) - phi.value(0.0)) / h;
    if (slope + 1.0).abs() > 1e-6 {
        return Err(domain(format!("numeric phi'(0) = {slope} != -1")));
    }
    if (phi.derivative(0.0) + 1.0).abs() > 1e-12 {
        return Err(domain(format!("phi'(0) = {} != -1", phi.derivative(0.0))));
    }
    for i in 1..=1000 {
        let s = i as f64 / 1000.0;
        let back = phi.value(phi.inverse(s));
        if (back - s).abs() > 1e-10 {
            return Err(domain(format!("phi(phi^-1({s})) = {back}")));
        }
    }
    Ok(())
}

/// r(τ) sampled at τ = log t for every grid point t.
#[derive(Debug, Clone, PartialEq)]
pub struct HazardProfile {
    pub log_time: Vec<f64>,
    pub rate: Vec<f64>,
}

/// Membership read off a hazard profile on τ > 0, using interior grid points
/// only (the one-sided end differences are first order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiClass {
    /// r nondecreasing and nonincreasing: constant, a boundary member of both.
    Both,
    Ifra,
    Dfra,
    Neither,
}

impl HazardProfile {
    pub fn classify(&self) -> PhiClass {
        let last = self.rate.len().saturating_sub(1);
        let r: Vec<f64> = self
            .log_time
            .iter()
            .zip(&self.rate)
            .enumerate()
            .filter(|(i, (tau, _))| *i > 0 && *i < last && **tau > 0.0)
            .map(|(_, pair)| pair)
            .map(|(_, r)| *r)
            .collect();
        match (is_monotone(&r, 1.0), is_monotone(&r, -1.0)) {
            (true, true) => PhiClass::Both,
            (true, false) => PhiClass::Ifra,
            (false, true) => PhiClass::Dfra,
            (false, false) => PhiClass::Neither,
        }
    }
}

/// φ-hazard rate with ρ from central differences of φ⁻¹(S) on the curve's
/// grid (one-sided at the ends).
pub fn phi_hazard_rate<P: Phi + ?Sized>(curve: &SurvivalCurve, phi: &P) -> Result<HazardProfile> {
    let n = curve.grid.len();
    if n < 3 {
        return Err(Error::Resolution(format!("need at least 3 grid points, got {n}")));
    }
    if let Some(i) = curve.values.iter().position(|&s| s == 0.0) {
        return Err(Error::Degenerate(format!("survival is 0 at grid index {i}")));
    }
    let g: Vec<f64> = curve.values.iter().map(|&s| phi.inverse(s)).collect();
    let t = &curve.grid;
    let rho: Vec<f64> = (0..n)
        .map(|i| {
            let (lo, hi) = match i {
                0 => (0, 1),
                i if i == n - 1 => (n - 2, n - 1),
                i => (i - 1, i + 1),
            };
            (g[hi] - g[lo]) / (t[hi] - t[lo])
        })
        .collect();
    Ok(HazardProfile {
        log_time: t.iter().map(|t| t.ln()).collect(),
        rate: rho.iter().zip(t).map(|(rho, t)| rho * t).collect(),
    })
}

fn check_levels(s_v: f64, v: f64, u: f64) -> Result<()> {
    if !(s_v > 0.0 && s_v < 1.0) {
        return Err(domain(format!("S(v) must lie in (0, 1), got {s_v}")));
    }
    if !(v > 1.0) {
        return Err(domain(format!("v must exceed 1 (log v is the scale), got {v}")));
    }
    if !(u > v) {
        return Err(Error::Ordering(format!("need u > v, got u = {u}, v = {v}")));
    }
    Ok(())
}

/// φ((log u / log v) φ⁻¹(S(v))): an upper bound on S(u) for φ-IFRA laws.
pub fn phi_ifra_bound<P: Phi + ?Sized>(s_v: f64, v: f64, u: f64, phi: &P) -> Result<f64> {
    check_levels(s_v, v, u)?;
    Ok(phi.value(u.ln() / v.ln() * phi.inverse(s_v)))
}

/// The same envelope read as a lower bound on S(u) for φ-DFRA laws.
pub fn dfra_bound<P: Phi + ?Sized>(s_v: f64, v: f64, u: f64, phi: &P) -> Result<f64> {
    phi_ifra_bound(s_v, v, u, phi)
}

/// Decay exponent certified by the φ = exp envelope: S(u) ≤ u^(−β) for u > v.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailExponent {
    pub beta: f64,
    /// S(v) is within 1e-9 of 1, so β carries essentially no information.
    pub degenerate: bool,
}

/// β = −log S(v) / log v. When S(v) is an empirical estimate this is a
/// plug-in certificate with no sampling guarantee.
pub fn tail_exponent_bound(s_v: f64, v: f64) -> Result<TailExponent> {
    if !(s_v > 0.0 && s_v < 1.0) {
        return Err(Error::Degenerate(format!(
            "S(v) must lie strictly in (0, 1), got {s_v}"
        )));
    }
    if !(v > 1.0) {
        return Err(domain(format!("v must exceed 1, got {v}")));
    }
    let degenerate = s_v > 1.0 - 1e-9;
    if degenerate {
        log::warn!("S(v) = {s_v} is indistinguishable from 1; exponent bound is uninformative");
    }
    Ok(TailExponent {
        beta: -s_v.ln() / v.ln(),
        degenerate,
    })
}
