use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morsegrowth"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_morsegrowth"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn golden(name: &str, args: &[&str]) {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let want = std::fs::read_to_string(fixture(&format!("golden/{name}"))).unwrap();
    assert_eq!(stdout(&o), want, "golden {name}");
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn golden_outputs() {
    golden(
        "invariants_two_taus.txt",
        &["invariants", &path("two_taus.json")],
    );
    golden(
        "invariants_diagonal_xi.txt",
        &["invariants", &path("diagonal_zeta.json"), "--xi", "1,-1"],
    );
    golden(
        "mu_tau.txt",
        &["mu", &path("tau_2_2t.json"), "--kmax", "10"],
    );
    golden(
        "cover_circle.txt",
        &["cover", &path("circle.json"), "--kmax", "4"],
    );
    golden("snf.txt", &["snf", &path("snf_2468.json")]);
    golden(
        "hyperplanes.txt",
        &["hyperplanes", &path("diagonal_zeta.json"), "--xi", "1,-1"],
    );
}

/// Maximal runs of digits, with sign and fraction bar, e.g. "-3", "7/2".
fn numbers(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_digit() || (ch == '/' && !cur.is_empty()) || (ch == '-' && cur.is_empty()) {
            cur.push(ch);
        } else {
            let token = cur.trim_start_matches('-').trim_end_matches('/');
            if !token.is_empty() {
                out.push(token.to_string());
            }
            cur.clear();
        }
    }
    out
}

#[test]
fn json_is_a_superset_of_human_output() {
    let cases: [Vec<String>; 6] = [
        vec!["invariants".into(), path("two_taus.json")],
        vec![
            "invariants".into(),
            path("diagonal_zeta.json"),
            "--xi".into(),
            "1,1".into(),
        ],
        vec![
            "mu".into(),
            path("tau_2_2t.json"),
            "--kmax".into(),
            "12".into(),
        ],
        vec![
            "cover".into(),
            path("tau_2_2t.json"),
            "--kmax".into(),
            "6".into(),
        ],
        vec!["snf".into(), path("snf_2468.json")],
        vec![
            "hyperplanes".into(),
            path("diagonal_zeta.json"),
            "--xi".into(),
            "1,-1".into(),
        ],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let human = stdout(&run(&args));
        let mut with_json = args.clone();
        with_json.push("--json");
        let machine = stdout(&run(&with_json));
        for n in numbers(&human) {
            assert!(machine.contains(&n), "{args:?}: {n} missing from JSON");
        }
    }
}

#[test]
fn bounds_of_documents() {
    let r = json(&run(&["invariants", &path("two_taus.json"), "--json"]));
    assert_eq!(r["report"]["bound"], 4);
    assert_eq!(r["report"]["q_total"], 2);
    let r = json(&run(&["invariants", &path("circle.json"), "--json"]));
    assert_eq!(r["report"]["bound"], 0);
}

#[test]
fn human_numbers_appear_in_json() {
    let human = stdout(&run(&["invariants", &path("two_taus.json")]));
    let machine = stdout(&run(&["invariants", &path("two_taus.json"), "--json"]));
    let r: Value = serde_json::from_str(&machine).unwrap();
    assert!(human.contains(r["input_digest"].as_str().unwrap()));
    for token in ["12+24*t+12*t^2", "6+6*t", "2+2*t"] {
        assert!(human.contains(token) && machine.contains(token), "{token}");
    }
    assert!(human.contains("bound B+2Q = 4"));
}

#[test]
fn mu_report() {
    let r = json(&run(&[
        "mu",
        &path("tau_2_2t.json"),
        "--kmax",
        "10",
        "--json",
    ]));
    let values: Vec<u64> = r["series"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(values, (1..=10).map(|k| 2 * k).collect::<Vec<_>>());
    assert_eq!(r["fit"]["slope"], "2");
    assert_eq!(r["predicted_slope"], 2);
    assert_eq!(r["agree"], true);

    let r = json(&run(&[
        "mu",
        &path("circle.json"),
        "--kmax",
        "10",
        "--json",
    ]));
    assert_eq!(r["fit"]["slope"], "0");
    assert_eq!(r["predicted_slope"], 0);

    let table = stdout(&run(&[
        "mu",
        &path("tau_2_2t.json"),
        "--kmax",
        "3",
        "--table",
    ]));
    assert_eq!(table, "1\t2\t2\n2\t4\t4\n3\t6\t6\n");
}

#[test]
fn cover_report() {
    let r = json(&run(&["cover", &path("circle.json"), "--k", "3", "--json"]));
    let row = &r["rows"][0];
    assert_eq!(
        (
            row["morse_number"].as_u64(),
            row["prediction"].as_u64(),
            row["residual"].as_i64()
        ),
        (Some(2), Some(0), Some(2))
    );

    let r = json(&run(&[
        "cover",
        &path("tau_2_2t.json"),
        "--kmax",
        "8",
        "--json",
    ]));
    let residuals: Vec<i64> = r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["residual"].as_i64().unwrap())
        .collect();
    assert!(residuals.iter().all(|x| x.abs() <= 2), "{residuals:?}");

    let r = json(&run(&[
        "cover",
        &path("diagonal_zeta.json"),
        "--k",
        "2",
        "--quotient",
        "--json",
    ]));
    assert_eq!(r["exponent"], 2);
    assert_eq!(r["rows"][0]["cover_ranks"], serde_json::json!([4, 4]));
}

#[test]
fn make_round_trips() {
    let made = run(&[
        "make",
        "principal",
        "--b",
        "1,0,0",
        "--a0",
        "2+2t",
        "--a1",
        "3+3t,6+6t",
    ]);
    assert_eq!(made.status.code(), Some(0));
    let text = stdout(&made);
    let v = run_stdin(&["validate", "-"], &text);
    assert_eq!(v.status.code(), Some(0));
    let r: Value =
        serde_json::from_slice(&run_stdin(&["invariants", "-", "--json"], &text).stdout).unwrap();
    assert_eq!(
        (
            r["report"]["b_total"].as_u64(),
            r["report"]["q_total"].as_u64()
        ),
        (Some(1), Some(3))
    );

    let s = run(&["make", "suspension", &path("tau_2_2t.json")]);
    let r: Value =
        serde_json::from_slice(&run_stdin(&["invariants", "-", "--json"], &stdout(&s)).stdout)
            .unwrap();
    assert_eq!(r["report"]["torsion"], serde_json::json!([0, 1, 0]));

    let same = stdout(&run(&["make", "tau", "--rho", "2+2*t"]));
    assert_eq!(
        same,
        std::fs::read_to_string(fixture("tau_2_2t.json")).unwrap()
    );
    let basic = stdout(&run(&["make", "tau-basic", "--rho", "2*t^-3+2*t^-2"]));
    assert_eq!(basic, same);
}

#[test]
fn polynomial_strings_are_accepted() {
    let doc = r#"{"lattice_rank": 1, "ranks": [1, 1], "boundaries": [[["2+2t"]]]}"#;
    let a = json(&run_stdin(&["invariants", "-", "--json"], doc));
    let b = json(&run(&["invariants", &path("tau_2_2t.json"), "--json"]));
    assert_eq!(a["input_digest"], b["input_digest"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let bad = run(&["validate", &path("not_a_complex.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("d1*d2 is nonzero"));
    assert_eq!(
        run(&["invariants", &path("not_a_complex.json")])
            .status
            .code(),
        Some(1)
    );

    let broken = run(&["invariants", &path("malformed.json")]);
    assert_eq!(broken.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&broken.stderr).contains("boundary 1 entry (0, 0)"));
    let truncated = run_stdin(
        &["invariants", "-"],
        "{\n  \"lattice_rank\": 1,\n  \"ranks\": [1,\n",
    );
    assert_eq!(truncated.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&truncated.stderr).contains("line 4"));

    assert_eq!(
        run(&["invariants", &path("tau_2_2t.json"), "--xi", "1,1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["invariants", &path("tau_2_2t.json"), "--xi", "0"])
            .status
            .code(),
        Some(2)
    );

    let refused = run(&["mu", &path("diagonal_zeta.json"), "--xi", "1,1", "--json"]);
    assert_eq!(refused.status.code(), Some(2));
    assert_eq!(json(&refused)["flags"]["oracle_refused"], true);
    assert_eq!(
        run(&[
            "mu",
            &path("diagonal_zeta.json"),
            "--xi",
            "1,1",
            "--augment"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&[
            "mu",
            &path("tau_2_2t.json"),
            "--kmax",
            "3",
            "--burnin",
            "2",
            "--json"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&["make", "tau", "--rho", "t-1", "--dim", "0"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["make", "principal", "--a0", "t-1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["cover", &path("diagonal_zeta.json"), "--k", "2"])
            .status
            .code(),
        Some(1)
    );
}
