use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn blowup(args: &[&str]) -> Output {
    blowup_env(args, &[])
}

fn blowup_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_blowup"));
    for var in ["BLOWUP_SEED", "BLOWUP_BUDGET", "BLOWUP_NODE_BUDGET", "BLOWUP_WORKERS", "BLOWUP_OUT", "BLOWUP_FORMAT", "BLOWUP_CONFIG"] {
        cmd.env_remove(var);
    }
    cmd.args(args).envs(env.iter().copied()).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: stdout {:?} stderr {:?}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("blowup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).display().to_string()
}

#[test]
fn ramsey_f_four() {
    let out = blowup(&["ramsey", "f", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["f_value"], 5);
    assert_eq!(r["results"]["witness"]["n"], 4);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["config"]["seed"], 0);
    assert_eq!(r["command"], serde_json::json!(["ramsey", "f", "--k", "4"]));
}

#[test]
fn density_of_complete_graph() {
    let out = blowup(&["graph", "density", "--in", &fixture("complete5.json"), "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["density"], 1.0);
    assert_eq!(r["results"]["estimate"]["samples"], 10);
}

#[test]
fn partition_of_a_chain() {
    let out = blowup(&["poset", "partition", "--in", &fixture("chain.json"), "--k", "3", "--eps", "0.3", "--scale", "desk"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &report(&out)["results"];
    assert_eq!(r["check"], "passed");
    // Independent look at the output: in a total order every pair of
    // disjoint parts is homogeneous, parts are equal and V₀ is small.
    let res = &r["result"];
    assert_eq!(res["kind"], "partition");
    let parts: Vec<Vec<u64>> = serde_json::from_value(res["parts"].clone()).unwrap();
    let t = r["params"]["t"].as_u64().unwrap() as usize;
    assert!(!parts.is_empty() && parts.iter().all(|p| p.len() == t));
    assert_eq!(res["inhomogeneous"].as_array().unwrap().len(), 0);
    assert!(res["v0"].as_array().unwrap().len() as f64 <= 0.3 * 200.0);
    let mut seen: Vec<u64> = parts.iter().flatten().copied().chain(serde_json::from_value::<Vec<u64>>(res["v0"].clone()).unwrap()).collect();
    seen.sort_unstable();
    assert_eq!(seen, (1..=200).collect::<Vec<_>>());
}

#[test]
fn unknown_experiment_is_an_error() {
    let out = blowup(&["repro", "none-such"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("none-such"));
    assert!(out.stdout.is_empty());
}

#[test]
fn repro_reports_each_criterion() {
    let out = blowup(&["repro", "ramsey-small", "layers"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let ids: Vec<u64> = r["results"]["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [1, 2, 4]);
    assert_eq!(r["results"]["failed"], 0);
    assert!(r["timings"]["parts"]["criterion_4"].is_u64());
}

#[test]
fn exit_code_matrix() {
    let cases: Vec<(Vec<String>, i32)> = vec![
        // success
        (vec!["graph".into(), "complement".into(), "--in".into(), fixture("complete5.json")], 0),
        (vec!["ramsey".into(), "verify".into(), "--n".into(), "5".into(), "--k".into(), "3".into()], 0),
        // verified negatives
        (vec!["ramsey".into(), "verify".into(), "--n".into(), "4".into(), "--k".into(), "4".into()], 2),
        (vec!["vc".into(), "checks".into(), "--in".into(), fixture("complete5.json")], 0),
        (vec!["graph".into(), "path".into(), "--in".into(), fixture("complete5.json"), "--m".into(), "3".into()], 2),
        (vec!["poset".into(), "blowup".into(), "--in".into(), fixture("chain.json"), "--h".into(), "2".into()], 0),
        // errors
        (vec!["graph".into(), "complement".into(), "--in".into(), fixture("malformed.json")], 1),
        (vec!["ramsey".into(), "admissible".into(), "--in".into(), fixture("bad_coloring.json")], 1),
        (vec!["graph".into(), "complement".into(), "--in".into(), fixture("missing.json")], 1),
        (vec!["ramsey".into(), "f".into(), "--k".into(), "4".into(), "--frobnicate".into()], 1),
        (vec!["nonsense".into()], 1),
        (vec!["ramsey".into(), "f".into(), "--k".into(), "0".into()], 1),
        (vec!["ramsey".into(), "f".into(), "--k".into(), "4".into(), "--budget".into(), "-1".into()], 1),
        (vec!["ramsey".into(), "f".into(), "--k".into(), "4".into(), "--format".into(), "dot".into()], 1),
    ];
    for (args, code) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = blowup(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(blowup(&["--help"]).status.code(), Some(0));
    assert_eq!(blowup(&["--version"]).status.code(), Some(0));
}

#[test]
fn malformed_input_names_line_and_column() {
    let out = blowup(&["graph", "complement", "--in", &fixture("malformed.json")]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("malformed.json") && err.contains("line 3"), "{err}");
    let out = blowup(&["ramsey", "admissible", "--in", &fixture("bad_coloring.json")]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
}

#[test]
fn timeout_is_reported_and_resumable() {
    let snap = tmp("snap.json");
    let out = blowup(&["ramsey", "f", "--k", "6", "--budget", "0.2", "--snapshot-out", &snap]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "timeout");
    assert!(r["results"]["lower_bound"].as_u64().unwrap() >= 6);
    let out = blowup(&["ramsey", "f", "--k", "6", "--budget", "0.2", "--resume", &snap]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["k"], 6);
}

#[test]
fn identical_runs_give_identical_results() {
    let runs: [&[&str]; 5] = [
        &["graph", "gen", "--n", "30", "--p", "0.4", "--seed", "5"],
        &["vc", "gen-vc2", "--n", "40", "--seed", "2"],
        &["poset", "partition", "--in", &fixture("chain.json"), "--k", "3", "--eps", "0.3"],
        &["ramsey", "f", "--k", "4", "--workers", "1"],
        &["construct", "sphere", "--k", "4", "--h", "4", "--n", "40", "--eps", "0.4", "--seed", "9"],
    ];
    for args in runs {
        let a = report(&blowup(args));
        let b = report(&blowup(args));
        assert_eq!(serde_json::to_string(&a["results"]).unwrap(), serde_json::to_string(&b["results"]).unwrap(), "{args:?}");
        assert_eq!(a["config"], b["config"]);
    }
}

#[test]
fn seed_precedence_and_formats() {
    let seed_of = |out: &Output| report(out)["config"]["seed"].as_u64().unwrap();
    let cfg = fixture("config.toml");
    // config file < env < flag; the file also selects csv, so force json.
    let base = ["graph", "gen", "--n", "5", "--format", "json", "--config", &cfg];
    assert_eq!(seed_of(&blowup(&base)), 11);
    assert_eq!(seed_of(&blowup_env(&base, &[("BLOWUP_SEED", "12")])), 12);
    let mut flagged = base.to_vec();
    flagged.extend(["--seed", "13"]);
    assert_eq!(seed_of(&blowup_env(&flagged, &[("BLOWUP_SEED", "12")])), 13);

    let csv = blowup(&["graph", "gen", "--n", "4", "--kind", "path", "--config", &cfg]);
    assert_eq!(String::from_utf8_lossy(&csv.stdout), "u,v\n1,2\n2,3\n3,4\n");
    let dot = blowup_env(&["graph", "gen", "--n", "2", "--kind", "complete"], &[("BLOWUP_FORMAT", "dot")]);
    assert_eq!(String::from_utf8_lossy(&dot.stdout), "graph G {\n  1;\n  2;\n  1 -- 2;\n}\n");

    let path = tmp("k5c.json");
    let out = blowup(&["graph", "complement", "--in", &fixture("complete5.json"), "--out", &path]);
    assert!(out.stdout.is_empty());
    // A written report is accepted as input.
    let back = blowup(&["graph", "density", "--in", &path, "--r", "2"]);
    assert_eq!(report(&back)["results"]["density"], 0.0);
}

#[test]
fn reports_feed_later_commands() {
    let w = tmp("f4.json");
    assert_eq!(blowup(&["ramsey", "f", "--k", "4", "--out", &w]).status.code(), Some(0));
    let r = report(&blowup(&["ramsey", "check", "--in", &w]));
    assert_eq!((r["results"]["certified"].clone(), r["results"]["f_lower_bound"].clone()), (true.into(), 5.into()));

    let v = tmp("v4.json");
    assert_eq!(blowup(&["ramsey", "verify", "--n", "4", "--k", "4", "--out", &v]).status.code(), Some(2));
    assert_eq!(report(&blowup(&["ramsey", "check", "--in", &v]))["results"]["certified"], true);

    let g = tmp("sphere.json");
    let args = ["construct", "sphere", "--k", "4", "--h", "4", "--n", "40", "--eps", "0.4", "--out", &g];
    assert_eq!(blowup(&args).status.code(), Some(0));
    let built = report(&blowup(&args[..args.len() - 2]));
    let edges = built["results"]["construction"]["edges"].as_array().unwrap().len();
    let out = blowup(&["graph", "complement", "--in", &g]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["graph"]["edges"].as_array().unwrap().len(), 40 * 39 / 2 - edges);
}
