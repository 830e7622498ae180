use std::path::PathBuf;
use std::process::{Command, Output};

use pfw::schema::{parse_str, to_string};

fn pfw(args: &[&str]) -> Output {
    pfw_with_env(args, &[])
}

fn pfw_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pfw"));
    cmd.args(args).env_remove("PFW_CAPS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write(name: &str, text: &str) -> String {
    let p: PathBuf = [env!("CARGO_TARGET_TMPDIR"), name].iter().collect();
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const C3: &str = r#"{"kind":"frame","name":"c3","payload":{"kind":"poset","points":["a","b"],"le":[["a","b"]]}}"#;
const SIERPINSKI: &str = r#"{"kind":"pervin","name":"s","payload":{"universe":["x","y"],"lattice":[[],["x"],["x","y"]]}}"#;

#[test]
fn validate_accepts_a_chain() {
    let f = write("c3.json", C3);
    let o = pfw(&["validate", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("3 elements"));
}

#[test]
fn malformed_le_pair_is_a_schema_error_with_a_path() {
    let bad = r#"{"kind":"frame","payload":{"kind":"poset","points":["a"],"le":[["a"]]}}"#;
    let f = write("bad.json", bad);
    let o = pfw(&["validate", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("$.payload.le[0]"), "{}", stderr(&o));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(pfw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pfw(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn generated_documents_round_trip() {
    for kind in ["poset", "frame", "frith", "pervin", "quni"] {
        let o = pfw(&["gen", kind, "--seed", "7"]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stderr(&o));
        let line = stdout(&o);
        let line = line.trim_end();
        assert_eq!(to_string(&parse_str(line).unwrap()), line, "{kind}");
        let f = write(&format!("gen-{kind}.json"), line);
        assert_eq!(pfw(&["validate", &f]).status.code(), Some(0));
    }
}

#[test]
fn exhaustive_generation_counts() {
    let o = pfw(&["gen", "pervins", "--max-universe", "2"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 1 + 4);
    let o = pfw(&["gen", "frames", "--max-ji", "2"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 1 + 2);
}

#[test]
fn render_draws_covers_only() {
    let f = write("c3-render.json", C3);
    let o = pfw(&["render", "--dot", &f]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert_eq!(dot.matches("[label=").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), 2);
    let s = write("s-render.json", SIERPINSKI);
    assert_eq!(pfw(&["render", "--dot", &s]).status.code(), Some(2));
}

#[test]
fn unmatched_filter_is_empty_and_passes() {
    let o = pfw(&["check", "--filter", "nonexistent"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn td_filter_reports_jsonl() {
    let o = pfw(&["check", "--filter", "td"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 35 + 500);
    assert!(lines.iter().all(|r| r["verdict"] == "pass" && r["check"] == "pervin.td-equivalence"));
}

#[test]
fn check_output_is_deterministic() {
    let a = pfw(&["check", "--filter", "extract-r", "--seed", "5"]);
    let b = pfw(&["check", "--filter", "extract-r", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn caps_from_the_environment() {
    let o = pfw_with_env(&["check", "--filter", "ideal-reflection"], &[("PFW_CAPS", "max_elements=2")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"skipped\""));
    let o = pfw_with_env(&["check", "--max-ji", "3"], &[("PFW_CAPS", "max_ji=2")]);
    assert_eq!(o.status.code(), Some(2));
    let o = pfw_with_env(&["gen", "frame"], &[("PFW_CAPS", "nonsense")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn filter_then_extract_through_files() {
    let d4 = r#"{"kind":"frame","name":"d4","payload":{"kind":"poset","points":["a","b"],"le":[]}}"#;
    let f = write("d4.json", d4);
    let o = pfw(&["construct", "filter", &f, "a"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let q = write("d4-filter.json", &stdout(&o));
    let o = pfw(&["construct", "extract-r", &q]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut r: Vec<String> = serde_json::from_value(v["r"].clone()).unwrap();
    r.sort();
    assert_eq!(r, ["0", "1", "a"]);
    assert_eq!(pfw(&["construct", "filter", &f, "nope"]).status.code(), Some(2));
}

#[test]
fn omega_of_sierpinski_is_a_chain() {
    let s = write("s-omega.json", SIERPINSKI);
    let o = pfw(&["construct", "omega", &s]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let inst = parse_str(&stdout(&o)).unwrap();
    assert!(matches!(inst.object, pfw::schema::Object::Frith(ref f) if f.frame().len() == 3));
}
