use std::io::Write;
use std::process::{Command, Output, Stdio};

use ratequiv_cli::{parse, parse_json, run, RunConfig, Verdict};

fn ratequiv(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ratequiv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const DIFFERENCE: &str = "ring u v; divisor D = u; divisor E = u*(1+v); verify-difference D E;";
const CUSP: &str = "ring u v; bigrat-check (u) (v^2 - u^3);";
const EQUIVARIANCE: &str = "ring u v; equivariance-check (u*v);";

#[test]
fn difference_fixture_passes() {
    let o = ratequiv(&["run", "-"], DIFFERENCE);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("lhs: [(0,-1)]"), "{out}");
    assert!(out.contains("rhs: [(0,-1)]"), "{out}");
    assert!(out.ends_with("=> PASS\n"));
}

#[test]
fn cusp_limits_are_printed() {
    let o = ratequiv(&["run"], CUSP);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("cycle: 2*[V(v, u)]").count(), 2, "{out}");
}

#[test]
fn equivariance_fixture_passes() {
    let o = ratequiv(&["run", "-"], EQUIVARIANCE);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn json_reports_round_trip() {
    for script in [DIFFERENCE, CUSP, EQUIVARIANCE] {
        let o = ratequiv(&["--format", "json", "run", "-"], script);
        let text = stdout(&o);
        let doc = parse_json(&text).expect("valid report");
        assert_eq!(ratequiv_cli::emit_json(&doc), text);
        let direct = run(&parse(script).unwrap(), &RunConfig::default());
        assert_eq!(direct, doc);
    }
}

#[test]
fn json_has_no_bare_numbers() {
    let o = ratequiv(&["--format", "json", "corpus", "fulton", "--count", "3"], "");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    fn walk(v: &serde_json::Value) {
        match v {
            serde_json::Value::Number(n) => panic!("bare number {n}"),
            serde_json::Value::Array(a) => a.iter().for_each(walk),
            serde_json::Value::Object(m) => m.values().for_each(walk),
            _ => {}
        }
    }
    walk(&v);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["--format", "json", "--seed", "7", "corpus", "reciprocity", "--count", "6"];
    let a = ratequiv(&args, "");
    let b = ratequiv(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let seq = ratequiv(&[&args[..], &["--sequential"]].concat(), "");
    assert_eq!(a.stdout, seq.stdout);
    let other = ratequiv(&["--format", "json", "--seed", "8", "corpus", "reciprocity", "--count", "6"], "");
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn failed_verification_exits_one() {
    let o = ratequiv(&["run", "-"], "ring u v; bigrat-check (u) (u*v);");
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("equals difference: true"), "{out}");
}

#[test]
fn syntax_errors_exit_two_with_position() {
    let o = ratequiv(&["run", "-"], "ring u v;\nomega D E;");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&o.stderr), "<stdin>:2:7: unbound name `D`\n");
    let o = ratequiv(&["run", "-"], "ring u v;\nx = u +* v;");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("<stdin>:2:8: syntax error"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ratequiv(&["corpus", "nonsense"], "").status.code(), Some(2));
    assert_eq!(ratequiv(&["--format", "xml", "run"], "").status.code(), Some(2));
    assert_eq!(ratequiv(&["run", "/no/such/file.rq"], "").status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_three() {
    let script = "ring u v x; cone (u^3*v - x^2, u*v^2 - x^3, v^3 - u*x^2);";
    let o = ratequiv(&["--max-steps", "2", "run", "-"], script);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("RESOURCE-EXHAUSTED"));
}

#[test]
fn empty_script_is_a_pass() {
    let o = ratequiv(&["run", "-"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn script_commands_run_in_order() {
    let src = "ring u v; x = u; y = v*(u - 1); divisor D = u^2; show weil D; verify-reciprocity x y; verify-commute D y;";
    let doc = run(&parse(src).unwrap(), &RunConfig::default());
    let got: Vec<(&str, Verdict)> = doc.reports.iter().map(|r| (r.command.as_str(), r.verdict)).collect();
    assert_eq!(
        got,
        [
            ("show weil D", Verdict::Info),
            ("verify-reciprocity x y", Verdict::Pass),
            ("verify-commute D y", Verdict::Pass)
        ]
    );
    assert_eq!(doc.reports[0].steps[0].fields["value"], "2*[V(u)]");
}
