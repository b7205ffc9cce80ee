use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_radoforge"));
    c.env_remove("RADOFORGE_BUDGET");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("spawn")
}

fn report(o: &Output) -> String {
    // the report lands on stdout unless stdout carries the generated object
    let out = String::from_utf8_lossy(&o.stdout).to_string();
    if out.starts_with("command:") || out.starts_with('{') {
        out
    } else {
        String::from_utf8_lossy(&o.stderr).to_string()
    }
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

fn json_report(o: &Output) -> Value {
    serde_json::from_str(&report(o)).expect("json report")
}

/// Checks a JSON report against the published schema by hand.
fn conforms(v: &Value) {
    let schema: Value =
        serde_json::from_str(include_str!("../schema/run_report.schema.json")).unwrap();
    let obj = v.as_object().expect("object");
    let required: Vec<&str> = schema["required"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    let mut want = required.clone();
    want.sort_unstable();
    assert_eq!(keys, want);
    assert!(obj["command"].is_string());
    assert!(obj["params"].is_object());
    assert!(obj["metrics"].is_object());
    assert!(obj["seed"].is_null() || obj["seed"].is_u64());
    assert!(obj["wall_time_ms"].as_f64().unwrap() >= 0.0);
    let outcomes = schema["properties"]["outcome"]["enum"].as_array().unwrap();
    assert!(outcomes.contains(&obj["outcome"]));
}

#[test]
fn rado_graph_with_verification() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["generate", "rado-graph", "--n", "64", "--k", "1", "--seed", "7", "--verify-k", "1", "-o", "g.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(field(&r, "ea_holds"), Some("true"));
    assert_eq!(field(&r, "seed"), Some("7"));
    let g = std::fs::read_to_string(d.path().join("g.txt")).unwrap();
    assert!(g.starts_with("GRAPH n=64\n"));
}

#[test]
fn infeasible_rado_graph_exits_3() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["generate", "rado-graph", "--n", "10", "--k", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let r = report(&o);
    assert_eq!(field(&r, "outcome"), Some("infeasible"));
    assert_eq!(field(&r, "min_n"), Some("256"));
}

#[test]
fn random_graph_is_deterministic() {
    let d = tempfile::tempdir().unwrap();
    for f in ["a.txt", "b.txt"] {
        let o = run(d.path(), &["generate", "random-graph", "--n", "50", "--seed", "1", "-o", f]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read(d.path().join("a.txt")).unwrap();
    let b = std::fs::read(d.path().join("b.txt")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn stdout_carries_object_and_stderr_the_report() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["generate", "random-hypergraph", "--n", "8", "--t", "3", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("HYPERGRAPH n=8 t=3\n"));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("command: generate random-hypergraph"));
}

#[test]
fn classify_table_cell() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["classify", "--gen", "LFPparity", "--adv", "LFPparity", "--sig-from", "R 2", "--sig-to", "R 3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&report(&o), "verdict"), Some("IffOWF"));
}

#[test]
fn synthesize_worked_example() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["synthesize", "stat-transduction", "--from", "R 3; S 1; T 1", "--to", "A 2; B 2; C 2", "-o", "th.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&report(&o), "formulas"), Some("3"));
    let text = std::fs::read_to_string(d.path().join("th.txt")).unwrap();
    assert_eq!(text.matches("FORMULA ").count(), 3);

    // the file feeds straight back into `transduce qf`
    run(d.path(), &["generate", "random-structure", "--sig", "R 3; S 1; T 1", "--n", "4", "-o", "a.txt"]);
    let o = run(d.path(), &["transduce", "qf", "--transduction-file", "th.txt", "--input", "a.txt", "-o", "b.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let b = std::fs::read_to_string(d.path().join("b.txt")).unwrap();
    assert!(b.contains("REL A 2\n") && b.contains("REL C 2\n"));
}

#[test]
fn synthesize_rejects_order_violation() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["synthesize", "stat-transduction", "--from", "R 2", "--to", "R 3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(field(&report(&o), "outcome"), Some("error"));
}

#[test]
fn complete_graph_violates_ea1() {
    let d = tempfile::tempdir().unwrap();
    let mut text = String::from("GRAPH n=5\n");
    for u in 0..5 {
        for v in u + 1..5 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    std::fs::write(d.path().join("complete5.txt"), text).unwrap();
    let o = run(d.path(), &["check", "ea", "--k", "1", "--input", "complete5.txt"]);
    assert_eq!(o.status.code(), Some(1));
    let r = report(&o);
    assert_eq!(field(&r, "outcome"), Some("violated"));
    assert_eq!(field(&r, "witness"), Some("S={0} T={}"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(run(d.path(), &["generate", "rado-graph", "--n", "64"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["frobnicate"]).status.code(), Some(2));
    std::fs::write(d.path().join("bad.txt"), "GRAPH 5\n").unwrap();
    assert_eq!(run(d.path(), &["check", "ea", "--k", "1", "--input", "bad.txt"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["check", "ea", "--k", "1", "--input", "missing.txt"]).status.code(), Some(2));
    let o = run(d.path(), &["classify", "--gen", "SO", "--adv", "FO", "--sig-from", "R 1", "--sig-to", "R 1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let d = tempfile::tempdir().unwrap();
    run(d.path(), &["generate", "random-graph", "--n", "200", "-o", "g.txt"]);
    let o = bin()
        .current_dir(d.path())
        .env("RADOFORGE_BUDGET", "1000")
        .args(["check", "ea", "--k", "2", "--input", "g.txt"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(field(&report(&o), "outcome"), Some("budget-exceeded"));
}

#[test]
fn certificate_round_trip() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["generate", "rado-structure", "--sig", "R 2", "--n", "64", "--k", "1", "--seed", "3", "-o", "s.txt", "--cert", "s.cert"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(d.path(), &["check", "cert", "--input", "s.cert", "--against", "s.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&report(&o), "matches"), Some("true"));
}

#[test]
fn parity_then_check() {
    let d = tempfile::tempdir().unwrap();
    run(d.path(), &["generate", "random-graph", "--n", "40", "--seed", "5", "-o", "g.txt"]);
    let o = run(d.path(), &["transduce", "parity", "--t", "3", "--input", "g.txt", "-o", "h.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let h = std::fs::read_to_string(d.path().join("h.txt")).unwrap();
    assert!(h.starts_with("HYPERGRAPH n=40 t=3\n"));
    let o = run(d.path(), &["check", "ea", "--k", "2", "--input", "h.txt"]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
}

#[test]
fn estimate_and_distinguish() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["estimate", "ea-failure", "--kind", "graph", "--n", "60", "--k", "1", "--trials", "10", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&report(&o), "failures"), Some("0"));
    let o = run(d.path(), &["distinguish", "typecount", "--from", "R 2", "--to", "R 3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(field(&r, "c"), Some("2"));
    assert_eq!(field(&r, "distinguishes"), Some("true"));
}

#[test]
fn json_reports_match_schema() {
    let d = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["--format", "json", "generate", "random-graph", "--n", "20", "--seed", "4", "-o", "g.txt"],
        &["--format", "json", "check", "ea", "--k", "1", "--input", "g.txt"],
        &["--format", "json", "generate", "rado-graph", "--n", "10", "--k", "2"],
        &["--format", "json", "classify", "--gen", "FO", "--adv", "LFP", "--sig-from", "R 2", "--sig-to", "R 1"],
        &["--format", "json", "--threads", "1", "estimate", "ea-failure", "--kind", "structure", "--sig", "R 2", "--n", "30", "--k", "1", "--trials", "3"],
    ];
    for args in cases {
        let o = run(d.path(), args);
        let v = json_report(&o);
        conforms(&v);
        if args.contains(&"--seed") || args.contains(&"estimate") {
            assert!(v["seed"].is_u64(), "{args:?}");
        }
    }
}

#[test]
fn recorded_seed_reproduces_outcome() {
    let d = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "estimate", "ea-failure", "--kind", "graph", "--n", "30", "--k", "2", "--trials", "20", "--seed", "11"];
    let a = json_report(&run(d.path(), &args));
    let seed = a["seed"].as_u64().unwrap().to_string();
    let mut again = args.to_vec();
    *again.last_mut().unwrap() = &seed;
    let b = json_report(&run(d.path(), &again));
    assert_eq!(a["outcome"], b["outcome"]);
    assert_eq!(a["metrics"], b["metrics"]);
}
