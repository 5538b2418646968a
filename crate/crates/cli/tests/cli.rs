use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use dualmin::io::{self, Automaton};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn dualmin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualmin"))
        .args(args)
        .env_remove("DUALMIN_MAX_STATES")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = dualmin(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn brzozowski_on_ends_in_a_gives_two_states() {
    let v = json(&[
        "minimize",
        &fixture("ends_in_a.json"),
        "--method",
        "brzozowski",
    ]);
    assert_eq!(v["type"], "dfa");
    assert_eq!(v["states"].as_array().unwrap().len(), 2);
    assert_eq!(v["finals"].as_array().unwrap().len(), 1);
}

#[test]
fn ends_in_a_is_equivalent_to_its_minimal_form() {
    let o = dualmin(&[
        "equiv",
        &fixture("ends_in_a.json"),
        &fixture("ends_in_a_min.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "equivalent");
}

#[test]
fn inequivalence_exits_one_with_counterexample() {
    let o = dualmin(&[
        "equiv",
        &fixture("ends_in_a.json"),
        &fixture("nfa_ends_ab.json"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).starts_with("not equivalent: counterexample \"a\""),
        "{}",
        stdout(&o)
    );
}

#[test]
fn swap_automaton_minimises_to_dimension_one() {
    let v = json(&["minimize", &fixture("wa_swap.json"), "--method", "duality"]);
    assert_eq!(v["type"], "weighted");
    assert_eq!(v["semiring"], "int");
    assert_eq!(v["initial"].as_array().unwrap().len(), 1);
    assert_eq!(
        ok(&["run", &fixture("wa_swap.json"), "-w", "aa"]).trim(),
        "1"
    );
    assert_eq!(
        ok(&["hankel", &fixture("wa_swap.json"), "-L", "3"]).trim(),
        "1"
    );
}

#[test]
fn methods_agree_on_moore_fixtures() {
    for name in ["ends_in_a.json", "ends_in_a_min.json", "moore_mod3.json"] {
        let mut results = Vec::new();
        for method in ["brzozowski", "refine", "duality"] {
            let doc = io::parse(&ok(&["minimize", &fixture(name), "--method", method])).unwrap();
            let Automaton::Moore(m) = doc.automaton else {
                panic!("{name}")
            };
            results.push(m);
        }
        assert!(
            results[0].iso_check(&results[1]),
            "{name}: brzozowski vs refine"
        );
        assert!(
            results[0].iso_check(&results[2]),
            "{name}: brzozowski vs duality"
        );
    }
}

#[test]
fn dual_of_ends_in_a_names_subsets() {
    let v = json(&["dual", &fixture("ends_in_a.json")]);
    assert_eq!(v["states"], serde_json::json!(["{y,z}", "{x,y,z}", "{}"]));
    assert_eq!(v["initial"], "{y,z}");
    assert_eq!(v["finals"], serde_json::json!(["{x,y,z}"]));
}

#[test]
fn reverse_and_determinize() {
    let rev = json(&["reverse", &fixture("ends_in_a.json")]);
    assert_eq!(rev["type"], "nfa");
    assert_eq!(rev["initial"], serde_json::json!(["y", "z"]));
    let det = json(&["determinize", &fixture("nfa_ends_ab.json")]);
    assert_eq!(det["type"], "dfa");
    assert_eq!(det["initial"], "{p}");
    let afa_rev = json(&["reverse", &fixture("afa_mixed.json")]);
    assert_eq!(afa_rev["initial"], "{s1}");
}

#[test]
fn run_each_kind() {
    assert_eq!(
        ok(&["run", &fixture("ends_in_a.json"), "-w", "ba"]).trim(),
        "accept"
    );
    assert_eq!(
        ok(&["run", &fixture("ends_in_a.json"), "-w", ""]).trim(),
        "reject"
    );
    assert_eq!(
        ok(&["run", &fixture("moore_mod3.json"), "-w", "101"]).trim(),
        "two"
    );
    assert_eq!(
        ok(&["eval", &fixture("nfa_ends_ab.json"), "-w", "a,b"]).trim(),
        "accept"
    );
    assert_eq!(
        ok(&["run", &fixture("wa_tropical.json"), "-w", "ab"]).trim(),
        "5"
    );
    assert_eq!(
        ok(&["run", &fixture("dkm_ends_in_a.json"), "-w", "a"]).trim(),
        "z"
    );
}

#[test]
fn trace_logic_verbs() {
    let v: Value = serde_json::from_str(&ok(&[
        "trace-eval",
        &fixture("dkm_ends_in_a.json"),
        "-f",
        "p",
    ]))
    .unwrap();
    assert_eq!(v, serde_json::json!(["y", "z"]));
    let v: Value = serde_json::from_str(&ok(&[
        "trace-eval",
        &fixture("ends_in_a.json"),
        "-f",
        "<b>accept",
    ]))
    .unwrap();
    assert_eq!(v, serde_json::json!([]));
    let c = json(&["closure", &fixture("dkm_ends_in_a.json")]);
    assert_eq!(c.as_array().unwrap().len(), 3);
    let m = json(&["minimize", &fixture("dkm_ends_in_a.json")]);
    assert_eq!(m["states"], serde_json::json!(["{x}", "{y,z}"]));
}

#[test]
fn reach_keeps_a_reachable_fixture() {
    let doc = io::parse(&ok(&["reach", &fixture("ends_in_a.json")])).unwrap();
    let original = io::parse(&std::fs::read_to_string(fixture("ends_in_a.json")).unwrap()).unwrap();
    assert_eq!(doc.states, ["x", "z", "y"]);
    let (Automaton::Moore(a), Automaton::Moore(b)) = (doc.automaton, original.automaton) else {
        panic!()
    };
    assert!(a.iso_check(&b));
}

#[test]
fn stats_summarises() {
    let s = ok(&["stats", &fixture("ends_in_a.json")]);
    assert!(s.contains("type: dfa"));
    assert!(s.contains("states: 3"));
    assert!(s.contains("minimal: 2"));
}

#[test]
fn selftest_passes() {
    let o = dualmin(&["selftest", "--seed", "5", "--cases", "15"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 9);
    let seq = dualmin(&["selftest", "--seed", "5", "--cases", "15", "--sequential"]);
    assert_eq!(stdout(&seq), out);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["frobnicate".into()], ""),
        (vec!["run".into(), fixture("ends_in_a.json")], ""),
        (
            vec![
                "run".into(),
                "/no/such/file.json".into(),
                "-w".into(),
                "a".into(),
            ],
            "cannot read",
        ),
        (
            vec![
                "run".into(),
                fixture("ends_in_a.json"),
                "-w".into(),
                "c".into(),
            ],
            "unknown letter",
        ),
        (
            vec!["minimize".into(), fixture("wa_tropical.json")],
            "tropical",
        ),
        (
            vec![
                "minimize".into(),
                fixture("ends_in_a.json"),
                "--method".into(),
                "magic".into(),
            ],
            "",
        ),
        (
            vec![
                "hankel".into(),
                fixture("ends_in_a.json"),
                "-L".into(),
                "2".into(),
            ],
            "weighted",
        ),
        (
            vec![
                "--semiring".into(),
                "nat".into(),
                "stats".into(),
                fixture("wa_swap.json"),
            ],
            "",
        ),
    ];
    for (args, needle) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = dualmin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn crafted_bad_files_exit_two() {
    let files = [
        ("{ not json", "line 1"),
        (
            r#"{"type": "dfa", "alphabet": ["a"], "states": ["x"], "initial": "y",
            "transitions": {"a": {"x": "x"}}, "finals": []}"#,
            "$.initial",
        ),
        (
            r#"{"type": "weighted", "semiring": "int", "alphabet": ["a"], "initial": [1, 0],
            "final": [1, 1], "transitions": {"a": [[1, 0, 0], [0, 1, 0]]}}"#,
            "letter `a`",
        ),
        (
            r#"{"type": "weighted", "semiring": "octonion", "alphabet": ["a"], "initial": [1],
            "final": [1], "transitions": {"a": [[1]]}}"#,
            "$.semiring",
        ),
        (
            r#"{"type": "afa", "alphabet": ["a"], "states": ["s"], "transitions": {"a": {"s": "s &"}},
            "acceptance": "s", "finals": []}"#,
            "$.transitions.a.s",
        ),
    ];
    for (text, needle) in files {
        let f = temp_file(text);
        let o = dualmin(&["stats", f.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        assert!(stderr(&o).contains(needle), "{text}: {}", stderr(&o));
    }
}

#[test]
fn guard_violations_exit_three() {
    let o = dualmin(&["--max-states", "2", "dual", &fixture("ends_in_a.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("state bound"), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_dualmin"))
        .args(["minimize", &fixture("afa_mixed.json")])
        .env("DUALMIN_MAX_STATES", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn semiring_override_reinterprets_weights() {
    let v = json(&[
        "--semiring",
        "rational",
        "minimize",
        &fixture("wa_swap.json"),
    ]);
    assert_eq!(v["semiring"], "rational");
    assert_eq!(v["initial"].as_array().unwrap().len(), 1);
}
