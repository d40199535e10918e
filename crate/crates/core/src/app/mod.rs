//! Reproducible experiment driver.
//!
//! An [`ExperimentConfig`] names a command, a seed, an output format and the
//! command's parameters. The JSON form is
//!
//! ```json
//! {"command": "gaps", "seed": 7, "format": "csv",
//!  "params": {"distribution": {"kind": "pareto_i", "alpha": 2.0},
//!             "n": 200, "transform": "identity"}}
//! ```
//!
//! [`run`] validates everything before touching the filesystem, then writes
//! CSV tables (and SVG charts with `format = svg`) plus the resolved
//! `config.json` into the output directory. Outputs depend only on the config,
//! so a re-run reproduces them byte for byte.

pub mod csvio;
pub mod fit;
pub mod svg;

use std::f64::consts::E;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::diagnostics::{self, Transform, TypicalGap};
use crate::dist::{self, DistributionSpec};
use crate::error::{domain, Error, Result};
use crate::limit_models::{self, CapitalSpec, LePageSpec, Signal, DEFAULT_LEPAGE_TOLERANCE};
use crate::put_tail_down::{self, PutTailDownSpec};
use crate::stats::{ks_distance, sorted};
use crate::tail_bounds::{self, ExpPhi, Phi, ReciprocalPhi, SurvivalCurve};

use csvio::{fmt, fmt_opt, render, write_file};
use svg::{Chart, Mark, Series};

/// Seed used when neither the command line, the config nor the environment
/// supplies one.
pub const DEFAULT_SEED: u64 = 0;

/// Environment variable consulted for a seed when none is given explicitly.
pub const SEED_ENV: &str = "HEAVYTAIL_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    /// CSV plus SVG charts.
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiKind {
    /// φ(u) = e^(−u)
    #[default]
    Exp,
    /// φ(u) = 1/(1 + u)
    Reciprocal,
}

impl PhiKind {
    fn phi(self) -> &'static dyn Phi {
        match self {
            PhiKind::Exp => &ExpPhi,
            PhiKind::Reciprocal => &ReciprocalPhi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateParams {
    pub distribution: DistributionSpec,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapsParams {
    pub distribution: DistributionSpec,
    pub n: usize,
    pub transform: Transform,
    #[serde(default)]
    pub typical: TypicalGap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutlierRateParams {
    pub distribution: DistributionSpec,
    pub n: usize,
    pub k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem1Params {
    pub alpha: f64,
    pub n_grid: Vec<usize>,
    pub k: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PutTailDownParams {
    pub base: DistributionSpec,
    pub p: f64,
    #[serde(default)]
    pub smoothing: f64,
    pub k: f64,
    pub n: usize,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LePageParams {
    pub exponent: f64,
    pub signal: Signal,
    /// Explicit series length; otherwise chosen from `tolerance`.
    #[serde(default)]
    pub terms: Option<usize>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    pub n: usize,
    #[serde(default)]
    pub hill_m: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapitalParams {
    pub factor: DistributionSpec,
    pub p: f64,
    pub n: usize,
    #[serde(default)]
    pub hill_m: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomMinParams {
    pub factor: DistributionSpec,
    pub p: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailBoundParams {
    /// Two-column (t, S) CSV; S(v) is read off it as a step function.
    #[serde(default)]
    pub curve: Option<PathBuf>,
    /// Analytic law supplying S(v) when no curve is given, and the truth column.
    #[serde(default)]
    pub distribution: Option<DistributionSpec>,
    pub v: f64,
    pub u_grid: Vec<f64>,
    #[serde(default)]
    pub phi: PhiKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitParetoParams {
    pub input: PathBuf,
    #[serde(default)]
    pub column: Option<String>,
    #[serde(default)]
    pub x_min: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "params", rename_all = "kebab-case")]
pub enum Experiment {
    Simulate(SimulateParams),
    Gaps(GapsParams),
    OutlierRate(OutlierRateParams),
    Theorem1(Theorem1Params),
    PutTailDown(PutTailDownParams),
    Lepage(LePageParams),
    Capital(CapitalParams),
    RandomMin(RandomMinParams),
    TailBound(TailBoundParams),
    FitPareto(FitParetoParams),
}

/// Command names accepted in configs and on the command line.
pub const COMMANDS: [&str; 10] = [
    "simulate",
    "gaps",
    "outlier-rate",
    "theorem1",
    "put-tail-down",
    "lepage",
    "capital",
    "random-min",
    "tail-bound",
    "fit-pareto",
];

impl Experiment {
    pub fn command(&self) -> &'static str {
        match self {
            Experiment::Simulate(_) => "simulate",
            Experiment::Gaps(_) => "gaps",
            Experiment::OutlierRate(_) => "outlier-rate",
            Experiment::Theorem1(_) => "theorem1",
            Experiment::PutTailDown(_) => "put-tail-down",
            Experiment::Lepage(_) => "lepage",
            Experiment::Capital(_) => "capital",
            Experiment::RandomMin(_) => "random-min",
            Experiment::TailBound(_) => "tail-bound",
            Experiment::FitPareto(_) => "fit-pareto",
        }
    }

    /// Built-in setup for a command, or `None` for commands that need input
    /// data (`fit-pareto`) or an unknown name.
    pub fn default_for(command: &str) -> Option<Experiment> {
        let pareto2 = DistributionSpec::ParetoI { alpha: 2.0 };
        Some(match command {
            "simulate" => Experiment::Simulate(SimulateParams {
                distribution: pareto2,
                n: 200,
            }),
            "gaps" => Experiment::Gaps(GapsParams {
                distribution: pareto2,
                n: 200,
                transform: Transform::Identity,
                typical: TypicalGap::Mean,
            }),
            "outlier-rate" => Experiment::OutlierRate(OutlierRateParams {
                distribution: DistributionSpec::Normal { sd: 1.0 },
                n: 100_000,
                k: 2.0,
            }),
            "theorem1" => Experiment::Theorem1(Theorem1Params {
                alpha: 1.5,
                n_grid: vec![1_000, 10_000, 100_000],
                k: 3.0,
                trials: 50,
            }),
            "put-tail-down" => Experiment::PutTailDown(PutTailDownParams {
                base: DistributionSpec::Laplace { rate: 1.0 },
                p: 0.5,
                smoothing: 0.0,
                k: 3.0,
                n: 100_000,
                trials: 30,
            }),
            "lepage" => Experiment::Lepage(LePageParams {
                exponent: 2.0,
                signal: Signal::Constant { value: 1.0 },
                terms: None,
                tolerance: Some(1e-2),
                n: 100_000,
                hill_m: None,
            }),
            "capital" => Experiment::Capital(CapitalParams {
                factor: DistributionSpec::Uniform { lo: 1.0, hi: E },
                p: 0.01,
                n: 100_000,
                hill_m: None,
            }),
            "random-min" => Experiment::RandomMin(RandomMinParams {
                factor: DistributionSpec::Uniform { lo: 0.0, hi: 1.0 },
                p: 1e-3,
                n: 100_000,
            }),
            "tail-bound" => Experiment::TailBound(TailBoundParams {
                curve: None,
                distribution: Some(DistributionSpec::ParetoI { alpha: 1.5 }),
                v: 2.0,
                u_grid: (1..=30).map(|i| 2.0 * 10f64.powf(i as f64 / 10.0)).collect(),
                phi: PhiKind::Exp,
            }),
            _ => return None,
        })
    }

    /// Parameter checks run before any output is written.
    pub fn validate(&self) -> Result<()> {
        match self {
            Experiment::Simulate(p) => {
                p.distribution.validate()?;
                positive_n(p.n, 1)
            }
            Experiment::Gaps(p) => {
                p.distribution.validate()?;
                positive_n(p.n, 3)
            }
            Experiment::OutlierRate(p) => {
                p.distribution.validate()?;
                positive_n(p.n, 2)?;
                positive_k(p.k)
            }
            Experiment::Theorem1(p) => {
                if !(p.alpha > 0.0 && p.alpha < 2.0) {
                    return Err(domain(format!("alpha must lie in (0, 2), got {}", p.alpha)));
                }
                if p.trials < 30 {
                    return Err(domain(format!("need at least 30 trials, got {}", p.trials)));
                }
                if p.n_grid.is_empty() || p.n_grid.windows(2).any(|w| w[0] >= w[1]) || p.n_grid[0] < 2 {
                    return Err(domain(
                        "n_grid must be non-empty, strictly increasing and start at >= 2",
                    ));
                }
                positive_k(p.k)
            }
            Experiment::PutTailDown(p) => {
                PutTailDownSpec::smoothed(p.base.clone(), p.p, p.smoothing)?;
                positive_n(p.n, 2)?;
                positive_k(p.k)?;
                if p.trials == 0 {
                    return Err(domain("trials must be >= 1"));
                }
                Ok(())
            }
            Experiment::Lepage(p) => {
                lepage_spec(p)?;
                positive_n(p.n, 1)?;
                hill_m_fits(p.hill_m, p.n)
            }
            Experiment::Capital(p) => {
                CapitalSpec::new(p.factor.clone(), p.p)?;
                positive_n(p.n, 1)?;
                hill_m_fits(p.hill_m, p.n)
            }
            Experiment::RandomMin(p) => {
                CapitalSpec::new(p.factor.clone(), p.p)?;
                positive_n(p.n, 1)
            }
            Experiment::TailBound(p) => {
                if p.curve.is_none() && p.distribution.is_none() {
                    return Err(Error::Config("tail-bound needs a curve file or a distribution".into()));
                }
                if let Some(d) = &p.distribution {
                    d.validate()?;
                }
                if !(p.v > 1.0) {
                    return Err(domain(format!("v must exceed 1, got {}", p.v)));
                }
                if p.u_grid.is_empty() || p.u_grid.iter().any(|&u| !(u > p.v)) {
                    return Err(domain("u_grid must be non-empty with every u > v"));
                }
                if let Some(path) = &p.curve {
                    if !path.is_file() {
                        return Err(Error::Config(format!("curve file {} does not exist", path.display())));
                    }
                }
                Ok(())
            }
            Experiment::FitPareto(p) => {
                if !p.input.is_file() {
                    return Err(Error::Config(format!(
                        "input file {} does not exist",
                        p.input.display()
                    )));
                }
                if let Some(m) = p.x_min {
                    if !(m > 0.0) {
                        return Err(domain(format!("x_min must be > 0, got {m}")));
                    }
                }
                Ok(())
            }
        }
    }
}

fn positive_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(domain(format!("n must be at least {min}, got {n}")));
    }
    Ok(())
}

fn positive_k(k: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(domain(format!("k must be > 0, got {k}")));
    }
    Ok(())
}

fn hill_m_fits(m: Option<usize>, n: usize) -> Result<()> {
    match m {
        Some(m) if m < 2 || m >= n => Err(domain(format!("hill_m must satisfy 2 <= m < n = {n}, got {m}"))),
        None if n < 3 => Err(domain(format!("hill estimate needs n >= 3, got {n}"))),
        _ => Ok(()),
    }
}

fn lepage_spec(p: &LePageParams) -> Result<LePageSpec> {
    match (p.terms, p.tolerance) {
        (Some(terms), tolerance) => {
            let spec = LePageSpec {
                exponent: p.exponent,
                signal: p.signal.clone(),
                terms,
                tolerance,
            };
            spec.validate()?;
            Ok(spec)
        }
        (None, tol) => {
            LePageSpec::with_tolerance(p.exponent, p.signal.clone(), tol.unwrap_or(DEFAULT_LEPAGE_TOLERANCE))
        }
    }
}

/// A complete, runnable experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    pub format: OutputFormat,
    pub experiment: Experiment,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireConfig {
    command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(default)]
    format: OutputFormat,
    params: serde_json::Value,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        ExperimentConfig {
            seed: None,
            format: OutputFormat::Csv,
            experiment,
        }
    }

    /// Parses the JSON form. `expected_command`, when given, fills a missing
    /// `command` field and must match a present one.
    pub fn from_json(text: &str, expected_command: Option<&str>) -> Result<Self> {
        let mut value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed JSON: {e}")))?;
        let obj = value
            .as_object_mut()
            .ok_or_else(|| Error::Config("config must be a JSON object".into()))?;
        match (obj.get("command").and_then(|c| c.as_str()), expected_command) {
            (Some(found), Some(expected)) if found != expected => {
                return Err(Error::Config(format!(
                    "config is for command {found:?} but {expected:?} was requested"
                )))
            }
            (None, Some(expected)) => {
                obj.insert("command".into(), expected.into());
            }
            _ => {}
        }
        let wire: WireConfig =
            serde_json::from_value(value).map_err(|e| Error::Config(format!("invalid config: {e}")))?;
        if !COMMANDS.contains(&wire.command.as_str()) {
            return Err(Error::Config(format!("unknown command {:?}", wire.command)));
        }
        let experiment: Experiment = serde_json::from_value(serde_json::json!({
            "command": wire.command,
            "params": wire.params,
        }))
        .map_err(|e| Error::Config(format!("invalid parameters for {}: {e}", wire.command)))?;
        Ok(ExperimentConfig {
            seed: wire.seed,
            format: wire.format,
            experiment,
        })
    }

    pub fn to_json(&self) -> String {
        let tagged = serde_json::to_value(&self.experiment).expect("experiment serializes");
        let wire = WireConfig {
            command: self.experiment.command().to_string(),
            seed: self.seed,
            format: self.format,
            params: tagged["params"].clone(),
        };
        let mut s = serde_json::to_string_pretty(&wire).expect("config serializes");
        s.push('\n');
        s
    }

    pub fn resolved_seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

/// Command-line overrides applied on top of a config file or the built-in
/// defaults.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    /// Value of [`SEED_ENV`], if set.
    pub env_seed: Option<String>,
    pub format: Option<OutputFormat>,
    /// Data file for `fit-pareto` (or curve file for `tail-bound`).
    pub input: Option<PathBuf>,
    pub column: Option<String>,
}

/// Builds the config for `command`. Seed precedence is the `--seed` flag,
/// then the config file, then the environment, then [`DEFAULT_SEED`].
pub fn resolve(command: &str, config_text: Option<&str>, overrides: &Overrides) -> Result<ExperimentConfig> {
    let mut config = match config_text {
        Some(text) => ExperimentConfig::from_json(text, Some(command))?,
        None => match (command, &overrides.input) {
            ("fit-pareto", Some(input)) => ExperimentConfig::new(Experiment::FitPareto(FitParetoParams {
                input: input.clone(),
                column: None,
                x_min: None,
            })),
            ("fit-pareto", None) => return Err(Error::Config("fit-pareto needs --input or --config".into())),
            _ => ExperimentConfig::new(
                Experiment::default_for(command)
                    .ok_or_else(|| Error::Config(format!("unknown command {command:?}")))?,
            ),
        },
    };
    match &mut config.experiment {
        Experiment::FitPareto(p) => {
            if let Some(input) = &overrides.input {
                p.input = input.clone();
            }
            if overrides.column.is_some() {
                p.column = overrides.column.clone();
            }
        }
        Experiment::TailBound(p) => {
            if let Some(input) = &overrides.input {
                p.curve = Some(input.clone());
            }
        }
        _ => {}
    }
    if let Some(seed) = overrides.seed {
        config.seed = Some(seed);
    } else if config.seed.is_none() {
        if let Some(raw) = &overrides.env_seed {
            let seed = raw
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("{SEED_ENV}={raw:?} is not an unsigned 64-bit integer")))?;
            config.seed = Some(seed);
        }
    }
    if let Some(format) = overrides.format {
        config.format = format;
    }
    Ok(config)
}

/// Failure of [`run`], split by exit code.
#[derive(Debug)]
pub enum RunError {
    /// Rejected before running; nothing was written. Exit code 1.
    Invalid(Error),
    /// Failed while running or writing. Exit code 2.
    Failed(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Invalid(_) => 1,
            RunError::Failed(_) => 2,
        }
    }

    pub fn error(&self) -> &Error {
        match self {
            RunError::Invalid(e) | RunError::Failed(e) => e,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.error().fmt(f)
    }
}

impl std::error::Error for RunError {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub command: &'static str,
    pub files: Vec<PathBuf>,
    /// One line, printed by the binary.
    pub line: String,
}

/// Validates, runs and writes all outputs of `config` into `out_dir`.
pub fn run(config: &ExperimentConfig, out_dir: &Path) -> std::result::Result<RunSummary, RunError> {
    config.experiment.validate().map_err(RunError::Invalid)?;
    fs::create_dir_all(out_dir)
        .map_err(|source| Error::Io {
            path: out_dir.to_path_buf(),
            source,
        })
        .map_err(RunError::Failed)?;
    let mut out = Output {
        dir: out_dir,
        svg: config.format == OutputFormat::Svg,
        files: Vec::new(),
    };
    let line = execute(&config.experiment, config.resolved_seed(), &mut out).map_err(RunError::Failed)?;
    let resolved = ExperimentConfig {
        seed: Some(config.resolved_seed()),
        ..config.clone()
    };
    out.write("config.json", &resolved.to_json())
        .map_err(RunError::Failed)?;
    Ok(RunSummary {
        command: config.experiment.command(),
        files: out.files,
        line,
    })
}

struct Output<'a> {
    dir: &'a Path,
    svg: bool,
    files: Vec<PathBuf>,
}

impl Output<'_> {
    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        write_file(&path, contents)?;
        self.files.push(path);
        Ok(())
    }

    fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        self.write(name, &render(header, rows))
    }

    fn chart(&mut self, name: &str, chart: Chart<'_>) -> Result<()> {
        if self.svg {
            self.write(name, &chart.render())?;
        }
        Ok(())
    }
}

/// Empirical survival P{X ≥ x} against a model at ~100 sample points spread
/// log-uniformly in probability.
pub fn survival_table<F: Fn(f64) -> f64>(values: &[f64], model: Option<F>) -> Vec<(f64, f64, Option<f64>)> {
    let v = sorted(values);
    let n = v.len();
    let mut rows: Vec<(f64, f64, Option<f64>)> = Vec::new();
    let points = 100usize;
    for j in 0..points {
        let level = (n as f64).powf(-(j as f64) / (points - 1) as f64);
        let idx = n - ((level * n as f64).round() as usize).clamp(1, n);
        let x = v[idx];
        if rows.last().is_some_and(|r| r.0 == x) {
            continue;
        }
        let at_least = n - v.partition_point(|&y| y < x);
        rows.push((x, at_least as f64 / n as f64, model.as_ref().map(|m| m(x))));
    }
    rows
}

fn survival_rows(table: &[(f64, f64, Option<f64>)]) -> Vec<Vec<String>> {
    table
        .iter()
        .map(|(x, s, m)| vec![fmt(*x), fmt(*s), fmt_opt(*m)])
        .collect()
}

fn survival_chart<'a>(title: &'a str, table: &[(f64, f64, Option<f64>)]) -> Chart<'a> {
    let log = |x: f64| x.log10();
    let mut series = vec![Series {
        name: "empirical",
        points: table.iter().map(|r| (log(r.0), log(r.1))).collect(),
        mark: Mark::Points,
    }];
    if table.iter().any(|r| r.2.is_some()) {
        series.push(Series {
            name: "model",
            points: table.iter().filter_map(|r| r.2.map(|m| (log(r.0), log(m)))).collect(),
            mark: Mark::Line,
        });
    }
    Chart {
        title,
        x_label: "log10 x",
        y_label: "log10 P{X >= x}",
        series,
    }
}

fn index_value_rows(values: &[f64]) -> Vec<Vec<String>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| vec![i.to_string(), fmt(*v)])
        .collect()
}

/// E log X in closed form where available.
pub fn log_mean(law: &DistributionSpec) -> Option<f64> {
    match law {
        DistributionSpec::Degenerate { value } if *value > 0.0 => Some(value.ln()),
        DistributionSpec::Uniform { lo, hi } if *lo > 0.0 => Some((hi * hi.ln() - hi - lo * lo.ln() + lo) / (hi - lo)),
        DistributionSpec::ParetoI { alpha } => Some(1.0 / alpha),
        // E log E = −γ_Euler for a unit exponential.
        DistributionSpec::Exponential { rate } => Some(-0.577_215_664_901_532_9 - rate.ln()),
        DistributionSpec::Weibull { shape } => Some(-0.577_215_664_901_532_9 / shape),
        _ => None,
    }
}

/// Density of the factor law at 0+, which fixes the scale of the random-minimum limit.
fn density_at_zero(law: &DistributionSpec) -> Option<f64> {
    match law {
        DistributionSpec::Uniform { lo, hi } if *lo == 0.0 => Some(1.0 / hi),
        DistributionSpec::Exponential { rate } => Some(*rate),
        DistributionSpec::Weibull { shape } if *shape == 1.0 => Some(1.0),
        _ => None,
    }
}

fn execute(experiment: &Experiment, seed: u64, out: &mut Output<'_>) -> Result<String> {
    match experiment {
        Experiment::Simulate(p) => {
            let batch = dist::sample(&p.distribution, p.n, seed)?;
            out.csv("simulate.csv", &["index", "value"], &index_value_rows(&batch.values))?;
            let s = sorted(&batch.values);
            out.chart(
                "simulate.svg",
                Chart {
                    title: "ordered sample",
                    x_label: "rank",
                    y_label: "value",
                    series: vec![Series {
                        name: "sample",
                        points: s.iter().enumerate().map(|(i, v)| (i as f64, *v)).collect(),
                        mark: Mark::Points,
                    }],
                },
            )?;
            Ok(format!(
                "simulate: n={} min={:.6} max={:.6} -> simulate.csv",
                p.n,
                s[0],
                s[s.len() - 1]
            ))
        }
        Experiment::Gaps(p) => {
            let batch = dist::sample(&p.distribution, p.n, seed)?;
            let profile = diagnostics::order_gaps(&batch.values, p.transform)?;
            let ratio = diagnostics::gap_ratio_with(&profile, p.typical)?;
            let rows: Vec<Vec<String>> = profile
                .gaps
                .iter()
                .enumerate()
                .map(|(i, g)| vec![(i + 1).to_string(), fmt(*g)])
                .collect();
            out.csv("gaps.csv", &["index", "gap"], &rows)?;
            out.chart(
                "gaps.svg",
                Chart {
                    title: "gaps between consecutive order statistics",
                    x_label: "index",
                    y_label: "gap",
                    series: vec![Series {
                        name: p.transform.name(),
                        points: profile
                            .gaps
                            .iter()
                            .enumerate()
                            .map(|(i, g)| ((i + 1) as f64, *g))
                            .collect(),
                        mark: Mark::Points,
                    }],
                },
            )?;
            Ok(format!(
                "gaps: n={} transform={} gap_ratio={:.6} ({:?} gap) -> gaps.csv",
                p.n,
                p.transform.name(),
                ratio,
                p.typical
            ))
        }
        Experiment::OutlierRate(p) => {
            let batch = dist::sample(&p.distribution, p.n, seed)?;
            let r = diagnostics::outlier_rate(&batch.values, p.k)?;
            out.csv(
                "outlier_rate.csv",
                &["n", "k", "mean", "sd", "rate", "flagged", "degenerate"],
                &[vec![
                    r.n.to_string(),
                    fmt(r.k),
                    fmt(r.mean),
                    fmt(r.sd),
                    fmt(r.rate),
                    r.flagged.len().to_string(),
                    r.degenerate.to_string(),
                ]],
            )?;
            Ok(format!(
                "outlier-rate: n={} k={} rate={:.6} -> outlier_rate.csv",
                r.n, r.k, r.rate
            ))
        }
        Experiment::Theorem1(p) => {
            let rows = diagnostics::theorem1_experiment(p.alpha, &p.n_grid, p.k, p.trials, seed)?;
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        fmt(r.mean_rate),
                        fmt(r.sd_rate),
                        r.trials.to_string(),
                        fmt_opt(r.alpha),
                        fmt(r.k),
                        r.seed.to_string(),
                    ]
                })
                .collect();
            out.csv(
                "theorem1.csv",
                &["n", "mean_rate", "sd_rate", "trials", "alpha", "k", "seed"],
                &table,
            )?;
            out.chart(
                "theorem1.svg",
                Chart {
                    title: "mean outlier rate against sample size",
                    x_label: "log10 n",
                    y_label: "mean rate",
                    series: vec![Series {
                        name: "stable",
                        points: rows.iter().map(|r| ((r.n as f64).log10(), r.mean_rate)).collect(),
                        mark: Mark::Line,
                    }],
                },
            )?;
            let rates: Vec<String> = rows.iter().map(|r| format!("{:.6}", r.mean_rate)).collect();
            Ok(format!(
                "theorem1: alpha={} k={} mean_rate=[{}] -> theorem1.csv",
                p.alpha,
                p.k,
                rates.join(", ")
            ))
        }
        Experiment::PutTailDown(p) => {
            let spec = PutTailDownSpec::smoothed(p.base.clone(), p.p, p.smoothing)?;
            let sigma = spec.base_variance().sqrt();
            let sigma_p = spec.variance().unwrap_or(f64::NAN).sqrt();
            let unsmoothed = PutTailDownSpec::new(p.base.clone(), p.p)?;
            let at_zero = PutTailDownSpec::new(p.base.clone(), 0.0)?;
            let exact_ptd = put_tail_down::outlier_prob_exact(&spec, p.k).ok();
            let exact_base = put_tail_down::outlier_prob_exact(&at_zero, p.k).ok();
            let cond = put_tail_down::check_condition_4a(&unsmoothed, p.k).ok();
            let mc = put_tail_down::more_outliers_mc(&spec, p.k, p.n, p.trials, seed)?;
            out.csv(
                "put_tail_down.csv",
                &[
                    "p",
                    "k",
                    "sigma",
                    "sigma_p",
                    "exact_base",
                    "exact_ptd",
                    "lhs_4a",
                    "rhs_4a",
                    "condition_4a",
                    "mc_rate_base",
                    "mc_rate_ptd",
                    "mc_win_fraction",
                    "trials",
                ],
                &[vec![
                    fmt(p.p),
                    fmt(p.k),
                    fmt(sigma),
                    fmt(sigma_p),
                    fmt_opt(exact_base),
                    fmt_opt(exact_ptd),
                    fmt_opt(cond.map(|c| c.lhs)),
                    fmt_opt(cond.map(|c| c.rhs)),
                    cond.map(|c| c.holds.to_string()).unwrap_or_default(),
                    fmt(mc.rate_base),
                    fmt(mc.rate_ptd),
                    fmt(mc.win_fraction),
                    mc.trials.to_string(),
                ]],
            )?;
            Ok(format!(
                "put-tail-down: p={} k={} mc_rate_base={:.6} mc_rate_ptd={:.6} wins={:.3} -> put_tail_down.csv",
                p.p, p.k, mc.rate_base, mc.rate_ptd, mc.win_fraction
            ))
        }
        Experiment::Lepage(p) => {
            let spec = lepage_spec(p)?;
            let batch = limit_models::lepage_sample(&spec, p.n, seed)?;
            let m = p.hill_m.unwrap_or_else(|| limit_models::default_hill_m(p.n));
            let hill = limit_models::hill_estimator(&batch.values, m)?;
            out.csv("lepage.csv", &["index", "value"], &index_value_rows(&batch.values))?;
            let abs: Vec<f64> = batch.values.iter().map(|v| v.abs()).filter(|v| *v > 0.0).collect();
            let table = survival_table(&abs, None::<fn(f64) -> f64>);
            out.csv(
                "lepage_survival.csv",
                &["x", "s_empirical", "s_model"],
                &survival_rows(&table),
            )?;
            out.chart("lepage_survival.svg", survival_chart("LePage series |X|", &table))?;
            Ok(format!(
                "lepage: a={} terms={} hill_alpha={:.6} (1/a={:.6}, m={}) -> lepage.csv",
                spec.exponent,
                spec.terms,
                hill,
                spec.alpha(),
                m
            ))
        }
        Experiment::Capital(p) => {
            let spec = CapitalSpec::new(p.factor.clone(), p.p)?;
            let batch = limit_models::capital_sample(&spec, p.n, seed)?;
            let m = p.hill_m.unwrap_or_else(|| limit_models::default_hill_m(p.n));
            let hill = limit_models::hill_estimator(&batch.values, m)?;
            // γ from the factor law, or estimated from an independent factor sample.
            let gamma = match log_mean(&p.factor) {
                Some(g) => g,
                None => limit_models::gamma_hat(&dist::sample_stream(&p.factor, p.n, seed, u64::MAX)?.values)?,
            };
            let model = (gamma > 0.0).then_some(move |z: f64| if z < 1.0 { 1.0 } else { z.powf(-1.0 / gamma) });
            let ks = model.as_ref().map(|m| ks_distance(&batch.values, |z| 1.0 - m(z)));
            let table = survival_table(&batch.values, model);
            out.csv("capital.csv", &["index", "value"], &index_value_rows(&batch.values))?;
            out.csv(
                "capital_survival.csv",
                &["x", "s_empirical", "s_model"],
                &survival_rows(&table),
            )?;
            out.chart("capital_survival.svg", survival_chart("annualized capital Z_p", &table))?;
            Ok(format!(
                "capital: p={} gamma={:.6} hill_alpha={:.6} (1/gamma={:.6}) ks={} -> capital.csv",
                p.p,
                gamma,
                hill,
                1.0 / gamma,
                ks.map(|k| format!("{k:.6}")).unwrap_or_else(|| "n/a".into())
            ))
        }
        Experiment::RandomMin(p) => {
            let spec = CapitalSpec::new(p.factor.clone(), p.p)?;
            let s = limit_models::random_min_sample(&spec, p.n, seed)?;
            let model = density_at_zero(&p.factor).map(|c| move |x: f64| 1.0 / (1.0 + c * x));
            let ks = model.as_ref().map(|m| ks_distance(&s.scaled, |x| 1.0 - m(x)));
            let rows: Vec<Vec<String>> = (0..p.n)
                .map(|i| {
                    vec![
                        i.to_string(),
                        fmt(s.minima.values[i]),
                        fmt(s.scaled[i]),
                        s.counts[i].to_string(),
                    ]
                })
                .collect();
            out.csv("random_min.csv", &["index", "minimum", "scaled", "count"], &rows)?;
            let positive: Vec<f64> = s.scaled.iter().copied().filter(|x| *x > 0.0).collect();
            let table = survival_table(&positive, model);
            out.csv(
                "random_min_survival.csv",
                &["x", "s_empirical", "s_model"],
                &survival_rows(&table),
            )?;
            out.chart(
                "random_min_survival.svg",
                survival_chart("scaled random minimum", &table),
            )?;
            Ok(format!(
                "random-min: p={} ks={} -> random_min.csv",
                p.p,
                ks.map(|k| format!("{k:.6}")).unwrap_or_else(|| "n/a".into())
            ))
        }
        Experiment::TailBound(p) => {
            let phi = p.phi.phi();
            let curve = match &p.curve {
                Some(path) => {
                    let (t, s) = csvio::ingest_pairs(path)?;
                    Some(SurvivalCurve::new(t, s)?)
                }
                None => None,
            };
            let s_v = match (&curve, &p.distribution) {
                (Some(c), _) => {
                    let i = c.grid().partition_point(|&t| t <= p.v);
                    if i == 0 {
                        return Err(domain(format!("v = {} lies below the curve's first grid point", p.v)));
                    }
                    c.values()[i - 1]
                }
                (None, Some(d)) => d.tail(p.v),
                (None, None) => unreachable!("validated"),
            };
            let mut rows = Vec::with_capacity(p.u_grid.len());
            let mut chart_bound = Vec::new();
            let mut chart_truth = Vec::new();
            for &u in &p.u_grid {
                let bound = tail_bounds::phi_ifra_bound(s_v, p.v, u, phi)?;
                let truth = p.distribution.as_ref().map(|d| d.tail(u));
                rows.push(vec![fmt(u), fmt(bound), fmt_opt(truth)]);
                chart_bound.push((u.log10(), bound.log10()));
                if let Some(t) = truth {
                    chart_truth.push((u.log10(), t.log10()));
                }
            }
            out.csv("tail_bound.csv", &["u", "bound", "truth"], &rows)?;
            out.chart(
                "tail_bound.svg",
                Chart {
                    title: "tail envelope",
                    x_label: "log10 u",
                    y_label: "log10 S(u)",
                    series: vec![
                        Series {
                            name: "bound",
                            points: chart_bound,
                            mark: Mark::Line,
                        },
                        Series {
                            name: "truth",
                            points: chart_truth,
                            mark: Mark::Points,
                        },
                    ],
                },
            )?;
            let beta = tail_bounds::tail_exponent_bound(s_v, p.v)?;
            let mut line = format!("tail-bound: v={} S(v)={:.6} beta={:.6}", p.v, s_v, beta.beta);
            if let Some(c) = &curve {
                line.push_str(&format!(" ifra={}", tail_bounds::ifra_check(c).member));
                if let Ok(h) = tail_bounds::phi_hazard_rate(c, phi) {
                    line.push_str(&format!(" phi_class={:?}", h.classify()));
                }
            }
            line.push_str(" -> tail_bound.csv");
            Ok(line)
        }
        Experiment::FitPareto(p) => {
            let data = csvio::ingest_csv(&p.input, p.column.as_deref())?;
            let report = fit::fit_pareto(&data, p.x_min)?;
            let rows: Vec<Vec<String>> = report
                .table
                .iter()
                .map(|r| vec![fmt(r.x), fmt(r.s_empirical), fmt(r.s_model)])
                .collect();
            out.csv("fit_pareto.csv", &["x", "s_empirical", "s_model"], &rows)?;
            let ll = report.log_log();
            let ll_rows: Vec<Vec<String>> = ll.iter().map(|(a, b, c)| vec![fmt(*a), fmt(*b), fmt(*c)]).collect();
            out.csv(
                "fit_pareto_loglog.csv",
                &["log_x", "log_s_empirical", "log_s_model"],
                &ll_rows,
            )?;
            let linear = |pick: fn(&fit::SurvivalRow) -> f64| -> Vec<(f64, f64)> {
                report.table.iter().map(|r| (r.x, pick(r))).collect()
            };
            out.chart(
                "fit_pareto.svg",
                Chart {
                    title: "Pareto model against empirical survival",
                    x_label: "x",
                    y_label: "P{X >= x}",
                    series: vec![
                        Series {
                            name: "empirical",
                            points: linear(|r| r.s_empirical),
                            mark: Mark::Points,
                        },
                        Series {
                            name: "model",
                            points: linear(|r| r.s_model),
                            mark: Mark::Line,
                        },
                    ],
                },
            )?;
            out.chart(
                "fit_pareto_loglog.svg",
                Chart {
                    title: "Pareto model against empirical survival (log-log)",
                    x_label: "log x",
                    y_label: "log P{X >= x}",
                    series: vec![
                        Series {
                            name: "empirical",
                            points: ll.iter().map(|r| (r.0, r.1)).collect(),
                            mark: Mark::Points,
                        },
                        Series {
                            name: "model",
                            points: ll.iter().map(|r| (r.0, r.2)).collect(),
                            mark: Mark::Line,
                        },
                    ],
                },
            )?;
            Ok(format!(
                "fit-pareto: n={} x_min={} gamma_hat={:.6} tail_exponent={:.6} ks={:.6} -> fit_pareto.csv",
                report.n, report.x_min, report.gamma_hat, report.tail_exponent, report.ks
            ))
        }
    }
}
