use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn job(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("entrodyn").chain(args.iter().copied());
    let code = entrodyn::run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run_job(command: &str, config: &Path, extra: &[&str]) -> Outcome {
    let mut args = vec![command, config.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn report(command: &str, config: &Path, extra: &[&str]) -> (i32, Value) {
    let mut args = extra.to_vec();
    args.extend_from_slice(&["--out", "-"]);
    let o = run_job(command, config, &args);
    let json = serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", o.stdout, o.stderr));
    (o.code, json)
}

fn float(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

const P2_SQUARE: &str = "model = \"Pd:2\"\n[action]\nhelper = \"power_map\"\nk = 2\n";
const EXE_FIB: &str = "model = \"ExE\"\n[action]\nhelper = \"abelian_matrix\"\nmatrix = [[1, 1], [1, 0]]\n";

#[test]
fn degrees_of_p2_square_map() {
    let dir = TempDir::new().unwrap();
    let (code, json) = report("degrees", &job(&dir, "p2.toml", P2_SQUARE), &[]);
    assert_eq!(code, 0);
    assert_eq!(json["format_version"], 1);
    let rows = json["degrees"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for (row, expected) in rows.iter().zip(["1", "2", "4"]) {
        assert_eq!(row["eigen_route"]["lower"]["exact"], expected);
        assert!((float(&row["seq_route"]["value"]) - expected.parse::<f64>().unwrap()).abs() < 1e-6);
        assert_eq!(row["multiplicity"], 1);
        assert_eq!(row["agree"], true);
    }
}

#[test]
fn degrees_of_identity_are_one() {
    let dir = TempDir::new().unwrap();
    let path = job(&dir, "id.toml", "model = \"P1xP2\"\n[action]\nhelper = \"identity\"\n");
    let (code, json) = report("degrees", &path, &[]);
    assert_eq!(code, 0);
    for row in json["degrees"].as_array().unwrap() {
        assert_eq!(row["eigen_route"]["lower"]["exact"], "1");
        assert!(float(&row["seq_route"]["log_value"]).abs() < 1e-9);
    }
}

#[test]
fn mismatched_degree_is_a_validation_failure() {
    let dir = TempDir::new().unwrap();
    let helper = job(&dir, "a.toml", "model = \"Pd:2\"\n[action]\nhelper = \"power_map\"\nk = 2\ndegree = 3\n");
    let o = run_job("degrees", &helper, &[]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("degree 3"), "{}", o.stderr);

    let explicit = job(&dir, "b.toml", "model = \"Pd:2\"\n[action]\npullback = [[[\"1\"]], [[\"2\"]], [[\"4\"]]]\ndegree = 3\n");
    let o = run_job("degrees", &explicit, &[]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("invalid action"), "{}", o.stderr);
}

#[test]
fn degrees_route_disagreement_exits_4() {
    let dir = TempDir::new().unwrap();
    let o = run_job("degrees", &job(&dir, "p2.toml", P2_SQUARE), &["--tol", "1e-14"]);
    assert_eq!(o.code, 4, "{}", o.stdout);
    assert!(o.stdout.contains("NO"));
}

#[test]
fn entropy_of_p1_square_map() {
    let dir = TempDir::new().unwrap();
    let path = job(&dir, "p1.toml", "model = \"Pd:1\"\n[action]\nhelper = \"power_map\"\nk = 2\n");
    let (code, json) = report("entropy", &path, &[]);
    assert_eq!(code, 0);
    assert!((float(&json["h"]["h"]) - 2f64.ln()).abs() < 1e-4);
    assert_eq!(json["verdicts"].as_array().unwrap().len(), 4);
    assert_eq!(json["pass"], true);
    // exact χ_n = -2 - 6·2^n
    assert_eq!(json["sequence"]["terms"][0]["exact"], "-14");
}

#[test]
fn entropy_of_fibonacci_on_exe() {
    let dir = TempDir::new().unwrap();
    let (code, json) = report("entropy", &job(&dir, "e.toml", EXE_FIB), &[]);
    assert_eq!(code, 0);
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((float(&json["h"]["h"]) - 2.0 * golden.ln()).abs() < 1e-4);
    assert!((float(&json["h"]["h"]) - 0.962424).abs() < 1e-6);
}

#[test]
fn broken_ring_homomorphism_exits_2() {
    let dir = TempDir::new().unwrap();
    let path = job(&dir, "b.toml", "model = \"Pd:2\"\n[action]\npullback = [[[\"1\"]], [[\"2\"]], [[\"5\"]]]\ndegree = 5\n");
    let o = run_job("entropy", &path, &[]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("f*(x ∪ y)"), "{}", o.stderr);
}

#[test]
fn entropy_verdict_failure_exits_4() {
    let dir = TempDir::new().unwrap();
    let path = job(&dir, "p1.toml", "model = \"Pd:1\"\n[action]\nhelper = \"power_map\"\nk = 2\n");
    let o = run_job("entropy", &path, &["--h-tol", "1e-12"]);
    assert_eq!(o.code, 4);
    assert!(o.stdout.contains("FAIL"));
}

#[test]
fn autoeq_examples() {
    let dir = TempDir::new().unwrap();
    let p2 = job(&dir, "p2.toml", "model = \"Pd:2\"\n[autoeq]\ntwist = 2\nshift = 1\n");
    let (code, json) = report("autoeq", &p2, &[]);
    assert_eq!(code, 0);
    assert!(float(&json["h"]["h"]).abs() <= 1e-3);
    assert_eq!(json["rho"]["lower"]["exact"], "1");

    let p1 = job(&dir, "p1.toml", "model = \"Pd:1\"\n[autoeq]\ntwist = [\"-1\"]\nshift = 0\n");
    assert_eq!(run_job("autoeq", &p1, &[]).code, 0);

    let exe = job(&dir, "e.toml", "model = \"ExE\"\n[autoeq]\ntwist = [1, 0, 0]\n");
    let o = run_job("autoeq", &exe, &[]);
    assert_eq!(o.code, 5);
    assert!(o.stderr.contains("anticanonically"));
}

#[test]
fn autoeq_rejects_non_automorphisms() {
    let dir = TempDir::new().unwrap();
    let path = job(&dir, "a.toml", "model = \"Pd:1\"\n[action]\nhelper = \"power_map\"\nk = 2\n[autoeq]\ntwist = 1\n");
    assert_eq!(run_job("autoeq", &path, &[]).code, 2);
}

#[test]
fn ht_examples() {
    let dir = TempDir::new().unwrap();
    let shift = job(&dir, "s.toml", "model = \"Pd:1\"\n[functor]\nkind = \"shift\"\nm = 2\n");
    let (code, json) = report("ht", &shift, &["--t-grid", "0,0.5"]);
    assert_eq!(code, 0);
    let h: Vec<f64> = json["points"].as_array().unwrap().iter().map(|p| float(&p["h"]["h"])).collect();
    assert!(h[0].abs() < 1e-9 && (h[1] - 1.0).abs() < 1e-9, "{h:?}");

    let twist = job(&dir, "t.toml", "model = \"Pd:1\"\n[functor]\nkind = \"twist\"\nc = 1\n");
    let (_, json) = report("ht", &twist, &[]);
    assert!(float(&json["points"][0]["h"]["h"]).abs() < 1e-3);

    let pullback = job(&dir, "p.toml", "model = \"Pd:1\"\n[functor]\nkind = \"pullback\"\nk = 3\n");
    let (_, json) = report("ht", &pullback, &[]);
    assert!((float(&json["points"][0]["h"]["h"]) - 3f64.ln()).abs() < 1e-6);
}

#[test]
fn ht_unsupported_functor_or_model_exits_6() {
    let dir = TempDir::new().unwrap();
    let kind = job(&dir, "k.toml", "model = \"Pd:1\"\n[functor]\nkind = \"spherical_twist\"\n");
    assert_eq!(run_job("ht", &kind, &[]).code, 6);
    let model = job(&dir, "m.toml", "model = \"P1xP1\"\n[functor]\nkind = \"shift\"\nm = 1\n");
    assert_eq!(run_job("ht", &model, &[]).code, 6);
}

#[test]
fn params_section_and_out_path() {
    let dir = TempDir::new().unwrap();
    let body = format!("{P2_SQUARE}[params]\nn_max = 30\ntol = 1e-5\nout = \"r.json\"\n");
    let o = run_job("degrees", &job(&dir, "p.toml", &body), &[]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("degrees on P2"));
    let json: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(json["params"]["n_max"], 30);
    assert_eq!(json["params"]["tol"], "0.000010000000");
    let (_, json) = report("degrees", &job(&dir, "q.toml", &body), &["--n-max", "20"]);
    assert_eq!(json["params"]["n_max"], 20);
}

#[test]
fn usage_and_parse_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&["degrees"]).code, 1);
    assert_eq!(run(&["frobnicate", "x.toml"]).code, 1);
    assert_eq!(run(&["degrees", "/nonexistent/job.toml"]).code, 1);
    let garbage = job(&dir, "g.toml", "model = \n");
    assert_eq!(run_job("degrees", &garbage, &[]).code, 1);
    let unknown = job(&dir, "u.toml", "model = \"Pd:1\"\n[actoin]\nk = 2\n");
    assert_eq!(run_job("degrees", &unknown, &[]).code, 1);
    let no_action = job(&dir, "n.toml", "model = \"Pd:1\"\n");
    assert_eq!(run_job("entropy", &no_action, &[]).code, 1);
    assert_eq!(run_job("degrees", &job(&dir, "p.toml", P2_SQUARE), &["--tol", "-1"]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let path = job(&dir, "e.toml", EXE_FIB);
    for command in ["degrees", "entropy"] {
        let a = run_job(command, &path, &["--out", "-"]).stdout;
        let b = run_job(command, &path, &["--out", "-"]).stdout;
        assert_eq!(a, b);
    }
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bin = env!("CARGO_BIN_EXE_entrodyn");
    let ok = Command::new(bin).args(["entropy"]).arg(job(&dir, "e.toml", EXE_FIB)).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("h_cat"));
    let exe = job(&dir, "x.toml", "model = \"ExE\"\n[autoeq]\n");
    let refused = Command::new(bin).arg("autoeq").arg(exe).output().unwrap();
    assert_eq!(refused.status.code(), Some(5));
}

#[test]
fn custom_model_job() {
    let dir = TempDir::new().unwrap();
    let quadric = r#"[model]
name = "quadric"
dim = 2
ranks = [1, 2, 1]
cup = [{ left = 1, right = 1, table = [[["0"], ["1"]], [["1"], ["0"]]] }]
integrate = [1]
c1l = [1, 1]
canonical = [-2, -2]
todd = [[1], [1, 1], [1]]
anticanonical_ample = true
"#;
    let endo = format!("{quadric}[action]\nhelper = \"divisor_action\"\ndivisor_action = [[2, 0], [0, 3]]\n");
    let (code, json) = report("entropy", &job(&dir, "e.toml", &endo), &[]);
    assert_eq!(code, 0);
    assert!((float(&json["h"]["h"]) - 6f64.ln()).abs() < 1e-4);

    let auto = format!("{quadric}[autoeq]\ntwist = [1, -1]\nshift = 1\n");
    assert_eq!(run_job("autoeq", &job(&dir, "a.toml", &auto), &[]).code, 0);
    let wrong_rank = format!("{quadric}[autoeq]\ntwist = 1\n");
    assert_eq!(run_job("autoeq", &job(&dir, "w.toml", &wrong_rank), &[]).code, 2);
}
