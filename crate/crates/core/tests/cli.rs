use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use heavytail::app::csvio::{fmt, ingest_csv};
use heavytail::app::fit::fit_pareto;
use heavytail::dist::{self, DistributionSpec};

const FIXTURE_SEED: u64 = 1_000_003;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_heavytail"));
    c.env_remove("HEAVYTAIL_SEED");
    c
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/synthetic_forbes.csv")
}

fn fixture_text() -> String {
    let batch = dist::sample(&DistributionSpec::ParetoI { alpha: 1.0 }, 100, FIXTURE_SEED).unwrap();
    let mut s = String::from("wealth\n");
    for v in batch.values {
        s.push_str(&fmt(v * 1e9));
        s.push('\n');
    }
    s
}

/// Small but complete configs, one per subcommand, with the CSVs each writes
/// and their headers.
/// (command, params JSON, [(file, header)])
type Case = (&'static str, String, Vec<(&'static str, &'static str)>);

fn cases(dir: &Path) -> Vec<Case> {
    let curve = dir.join("curve.csv");
    let mut text = String::from("t,s\n");
    for i in 1..=50 {
        let t = 1.0 + i as f64 * 0.2;
        text.push_str(&format!("{t},{}\n", t.powf(-1.5)));
    }
    fs::write(&curve, text).unwrap();
    let surv = ("x,s_empirical,s_model", "");
    vec![
        (
            "simulate",
            r#"{"distribution":{"kind":"laplace","rate":1.0},"n":50}"#.into(),
            vec![("simulate.csv", "index,value")],
        ),
        (
            "gaps",
            r#"{"distribution":{"kind":"pareto_i","alpha":2.0},"n":200,"transform":"log"}"#.into(),
            vec![("gaps.csv", "index,gap")],
        ),
        (
            "outlier-rate",
            r#"{"distribution":{"kind":"normal","sd":1.0},"n":1000,"k":2.0}"#.into(),
            vec![("outlier_rate.csv", "n,k,mean,sd,rate,flagged,degenerate")],
        ),
        (
            "theorem1",
            r#"{"alpha":1.5,"n_grid":[100,1000],"k":3.0,"trials":30}"#.into(),
            vec![("theorem1.csv", "n,mean_rate,sd_rate,trials,alpha,k,seed")],
        ),
        (
            "put-tail-down",
            r#"{"base":{"kind":"laplace","rate":1.0},"p":0.5,"k":3.0,"n":2000,"trials":4}"#.into(),
            vec![(
                "put_tail_down.csv",
                "p,k,sigma,sigma_p,exact_base,exact_ptd,lhs_4a,rhs_4a,condition_4a,mc_rate_base,mc_rate_ptd,mc_win_fraction,trials",
            )],
        ),
        (
            "lepage",
            r#"{"exponent":1.0,"signal":{"kind":"rademacher"},"terms":50,"n":500}"#.into(),
            vec![("lepage.csv", "index,value"), ("lepage_survival.csv", surv.0)],
        ),
        (
            "capital",
            r#"{"factor":{"kind":"uniform","lo":1.0,"hi":2.718281828459045},"p":0.05,"n":500}"#.into(),
            vec![("capital.csv", "index,value"), ("capital_survival.csv", surv.0)],
        ),
        (
            "random-min",
            r#"{"factor":{"kind":"uniform","lo":0.0,"hi":1.0},"p":0.01,"n":500}"#.into(),
            vec![
                ("random_min.csv", "index,minimum,scaled,count"),
                ("random_min_survival.csv", surv.0),
            ],
        ),
        (
            "tail-bound",
            format!(
                r#"{{"curve":{:?},"distribution":{{"kind":"pareto_i","alpha":1.5}},"v":2.0,"u_grid":[3.0,5.0,10.0]}}"#,
                curve
            ),
            vec![("tail_bound.csv", "u,bound,truth")],
        ),
        (
            "fit-pareto",
            format!(r#"{{"input":{:?}}}"#, fixture()),
            vec![
                ("fit_pareto.csv", "x,s_empirical,s_model"),
                ("fit_pareto_loglog.csv", "log_x,log_s_empirical,log_s_model"),
            ],
        ),
    ]
}

fn run_config(dir: &Path, command: &str, params: &str, out: &Path, extra: &[&str]) -> Output {
    let cfg = dir.join(format!("{command}.json"));
    fs::write(&cfg, format!(r#"{{"command":"{command}","seed":3,"params":{params}}}"#)).unwrap();
    bin()
        .arg(command)
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn synthetic_fixture_matches_its_generator() {
    let expected = fixture_text();
    if std::env::var_os("HEAVYTAIL_BLESS").is_some() {
        fs::write(fixture(), &expected).unwrap();
    }
    assert_eq!(fs::read_to_string(fixture()).unwrap(), expected);
    assert_eq!(ingest_csv(&fixture(), None).unwrap().len(), 100);
}

#[test]
fn fixture_fit_is_near_unit_index() {
    let data = ingest_csv(&fixture(), Some("wealth")).unwrap();
    let r = fit_pareto(&data, None).unwrap();
    assert_eq!(r.n, 100);
    assert!((r.gamma_hat - 1.0).abs() < 0.35, "{}", r.gamma_hat);
    assert!((0.0..=1.0).contains(&r.ks));
}

#[test]
fn every_subcommand_writes_its_documented_headers() {
    let dir = tempfile::tempdir().unwrap();
    for (command, params, files) in cases(dir.path()) {
        let out = dir.path().join(command);
        let o = run_config(dir.path(), command, &params, &out, &[]);
        assert!(o.status.success(), "{command}: {}", String::from_utf8_lossy(&o.stderr));
        let stdout = String::from_utf8(o.stdout).unwrap();
        assert_eq!(stdout.lines().count(), 1, "{command}: {stdout}");
        assert!(stdout.starts_with(command), "{stdout}");
        for (name, header) in files {
            let text = fs::read_to_string(out.join(name)).unwrap();
            assert_eq!(text.lines().next(), Some(header), "{command}/{name}");
            assert!(!text.contains('\r'));
            assert!(text.lines().count() > 1, "{command}/{name} has no rows");
        }
        assert!(out.join("config.json").is_file());
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for (command, params, _) in cases(dir.path()) {
        let a = dir.path().join(format!("{command}-a"));
        let b = dir.path().join(format!("{command}-b"));
        assert!(run_config(dir.path(), command, &params, &a, &["--format", "svg"])
            .status
            .success());
        assert!(run_config(dir.path(), command, &params, &b, &["--format", "svg"])
            .status
            .success());
        assert_eq!(snapshot(&a), snapshot(&b), "{command}");
    }
}

#[test]
fn persisted_config_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let o = bin()
        .args(["gaps", "--seed", "41", "--out"])
        .arg(&first)
        .output()
        .unwrap();
    assert!(o.status.success());
    let second = dir.path().join("second");
    let o = bin()
        .arg("gaps")
        .arg("--config")
        .arg(first.join("config.json"))
        .arg("--out")
        .arg(&second)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(snapshot(&first), snapshot(&second));
}

#[test]
fn environment_seed_is_a_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let env = dir.path().join("env");
    let flag = dir.path().join("flag");
    let other = dir.path().join("other");
    assert!(bin()
        .env("HEAVYTAIL_SEED", "77")
        .args(["simulate", "--out"])
        .arg(&env)
        .output()
        .unwrap()
        .status
        .success());
    assert!(bin()
        .args(["simulate", "--seed", "77", "--out"])
        .arg(&flag)
        .output()
        .unwrap()
        .status
        .success());
    assert!(bin()
        .env("HEAVYTAIL_SEED", "5")
        .args(["simulate", "--seed", "78", "--out"])
        .arg(&other)
        .output()
        .unwrap()
        .status
        .success());
    assert_eq!(snapshot(&env), snapshot(&flag));
    assert_ne!(
        fs::read(env.join("simulate.csv")).unwrap(),
        fs::read(other.join("simulate.csv")).unwrap()
    );
}

#[test]
fn gaps_summary_reports_the_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["gaps", "--out"])
        .arg(dir.path().join("g"))
        .output()
        .unwrap();
    let line = String::from_utf8(o.stdout).unwrap();
    assert!(line.contains("gap_ratio="), "{line}");
    let rows = fs::read_to_string(dir.path().join("g/gaps.csv"))
        .unwrap()
        .lines()
        .count();
    assert_eq!(rows, 200);
}

#[test]
fn malformed_config_exits_one_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run_config(
        dir.path(),
        "gaps",
        r#"{"distribution":{"kind":"pareto_i","alpha":2.0},"transform":"identity"}"#,
        &out,
        &[],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"command":"gaps","params":{"distribution":{"kind":"pareto_i","alpha":-2.0},"n":200,"transform":"identity"}}"#).unwrap();
    let o = bin()
        .arg("gaps")
        .arg("--config")
        .arg(&bad)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());

    let o = bin()
        .arg("simulate")
        .arg("--config")
        .arg(&bad)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1), "command mismatch");
    let o = bin().args(["fit-pareto", "--out"]).arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(1), "no input");
    assert!(!out.exists());
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    fs::write(&data, "x\n1\n2\n1,5\n").unwrap();
    let o = bin()
        .arg("fit-pareto")
        .arg("--input")
        .arg(&data)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("data.csv:4:"), "{err}");
}

#[test]
fn svg_format_adds_charts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let o = bin()
        .arg("fit-pareto")
        .arg("--input")
        .arg(fixture())
        .args(["--format", "svg", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(o.status.success());
    for name in ["fit_pareto.svg", "fit_pareto_loglog.svg"] {
        let svg = fs::read_to_string(out.join(name)).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"), "{name}");
    }
}
