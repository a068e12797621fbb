use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ranklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ranklab"))
        .args(args)
        .env_remove("RANKLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn max_label(o: &Output) -> u32 {
    let s = stdout(o);
    let field = s.split_whitespace().find_map(|w| w.strip_prefix("max_label=")).expect("summary line");
    field.parse().unwrap()
}

#[test]
fn play_examples() {
    let o = ranklab(&["play", "--class", "induced:P2", "--presenter", "exhaustive", "--ranker", "greedy"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("max_label=2"));

    let o = ranklab(&[
        "play", "--class", "maxdegdiam:k=3,d=6", "--presenter", "random:seed=1,n_max=22", "--ranker", "rankcomplete:k=3,d=6",
    ]);
    assert!(o.status.success());
    assert!(max_label(&o) <= 21);

    let o = ranklab(&[
        "play", "--class", "fewinternal:p=2,q=3", "--presenter", "random:seed=7,n_max=10", "--ranker", "doublestar",
    ]);
    assert!(o.status.success());
    assert!(max_label(&o) <= 4);
}

#[test]
fn strategy_errors_exit_2_with_round() {
    // rankcomplete needs k >= 3
    let o = ranklab(&["play", "--class", "maxdegdiam:k=2,d=6", "--presenter", "random:seed=1,n_max=5", "--ranker", "rankcomplete:k=2,d=6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("round 0"));
    let o = ranklab(&["play", "--class", "induced:P2", "--presenter", "nope", "--ranker", "greedy"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_examples_and_budget() {
    for (class, n_cap, want) in [("induced:P3", "3", 3), ("induced:P1", "1", 1), ("fewinternal:p=2,q=3", "8", 4)] {
        let o = ranklab(&["solve", "--class", class, "--n-cap", n_cap, "--b-max", "5"]);
        assert!(o.status.success(), "{class}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["value"], want, "{class}");
        assert!(v["nodes"].as_u64().unwrap() > 0);
    }
    let o = ranklab(&["solve", "--class", "induced:P3", "--n-cap", "3", "--b-max", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "exceeds");
    let o = ranklab(&["solve", "--class", "induced:P6", "--n-cap", "6", "--budget", "50"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_ranklab"))
        .args(["solve", "--class", "induced:P6", "--n-cap", "6"])
        .env("RANKLAB_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

fn play_to(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut all = vec!["play"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    assert!(ranklab(&all).status.success());
    path
}

#[test]
fn verify_pass_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let good = play_to(dir.path(), "g.json", &["--class", "induced:P4", "--presenter", "random:seed=3,n_max=4", "--ranker", "greedy"]);
    let o = ranklab(&["verify", good.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("pass"));

    // copy a neighbour's label onto a later vertex
    let mut t: Value = serde_json::from_str(&fs::read_to_string(&good).unwrap()).unwrap();
    let events = t["events"].as_array().unwrap().clone();
    let (round, nb) = events
        .iter()
        .enumerate()
        .find_map(|(i, e)| e["attach"].as_array().and_then(|a| a.first()).map(|n| (i, n.as_u64().unwrap() as usize)))
        .expect("some vertex has a neighbour");
    t["events"][round]["label"] = events[nb]["label"].clone();
    t.as_object_mut().unwrap().remove("final_key");
    let bad = dir.path().join("bad.json");
    fs::write(&bad, t.to_string()).unwrap();
    let o = ranklab(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(&format!("round {round}")), "{}", stdout(&o));
}

#[test]
fn verify_reports_forged_y_label() {
    let dir = tempfile::tempdir().unwrap();
    let events: Vec<Value> = [(vec![], 1), (vec![0], 8), (vec![1], 2), (vec![2], 1), (vec![3], 4), (vec![4], 5)]
        .into_iter()
        .map(|(a, l): (Vec<u32>, u32)| serde_json::json!({"attach": a, "label": l}))
        .collect();
    let t = serde_json::json!({
        "class": {"kind": "maxdegdiam", "k": 3, "d": 6},
        "seed": null,
        "events": events,
        "ranker": "rankcomplete:k=3,d=6",
    });
    let path = dir.path().join("forged.json");
    fs::write(&path, t.to_string()).unwrap();
    let o = ranklab(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("lemma separate"), "{}", stdout(&o));
}

#[test]
fn play_output_always_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["--class", "induced:P5", "--presenter", "spider:a=2", "--ranker", "random:seed=4"],
        &["--class", "induced:P5", "--presenter", "startree:k=2,r=2", "--ranker", "greedy"],
        &["--class", "induced:P7", "--presenter", "lowerbound:a=2,len=2", "--ranker", "greedy"],
        &["--class", "fewinternal:p=2,q=4,n_cap=7", "--presenter", "random:seed=2", "--ranker", "ranksmall:p=2,q=4"],
        &["--class", "maxdegdiam:k=3,d=4", "--presenter", "random:seed=9,n_max=17", "--ranker", "rankcomplete:k=3,d=4"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = play_to(dir.path(), &format!("{i}.json"), args);
        let o = ranklab(&["verify", path.to_str().unwrap()]);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("reproduced=yes"), "{args:?}");
    }
}

#[test]
fn experiment_rows_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"scenarios": [
            {"scenario": "rho-formula", "k": 3, "d": 6},
            {"scenario": "spider", "a": 5, "seeds": [1, 2, 3]},
            {"scenario": "psi-paths", "n": 9},
            {"scenario": "ranksmall", "p": 1, "q": 2, "n_cap": 6}
        ]}"#,
    )
    .unwrap();
    let run = |out: &Path| {
        let o = ranklab(&["experiment", cfg.to_str().unwrap(), "--out-dir", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(out.join("report.csv")).unwrap()
    };
    let a = run(&dir.path().join("a"));
    let b = run(&dir.path().join("b"));
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("scenario,params,observed,bound,source,pass"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.iter().filter(|r| r.starts_with("rho-formula,")).count(), 7);
    assert_eq!(rows.iter().filter(|r| r.starts_with("spider,")).count(), 5 * 4);
    assert_eq!(rows.iter().filter(|r| r.starts_with("psi-paths,")).count(), 9);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn experiment_failures_exit_4_and_bad_configs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    // the solver cannot finish inside this budget, so the scenario aborts
    fs::write(&cfg, r#"{"scenarios": [{"scenario": "psi-paths", "n": 3}, {"scenario": "solve-paths", "n": 7}]}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_ranklab"))
        .args(["experiment", cfg.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()])
        .env("RANKLAB_BUDGET", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.lines().filter(|l| l.starts_with("psi-paths,")).count() == 3, "partial rows flushed");

    fs::write(&cfg, r#"{"scenarios": [{"scenario": "nope"}]}"#).unwrap();
    let o = ranklab(&["experiment", cfg.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(&cfg, r#"{"scenarios": [{"scenario": "spider", "a": 2, "rankers": ["bogus"]}]}"#).unwrap();
    let o = ranklab(&["experiment", cfg.to_str().unwrap(), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
