use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn torsieve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsieve")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("table-g4.txt", &["table-g4"]),
    ("mprime-2.txt", &["mprime", "2"]),
    ("mprime-4.txt", &["mprime", "4"]),
    ("mprime-6.txt", &["mprime", "6"]),
    ("decomp-g1.txt", &["decomp", "--g", "1"]),
    ("decomp-g2.txt", &["decomp", "--g", "2"]),
    ("decomp-g3.txt", &["decomp", "--g", "3"]),
    ("decomp-g4.txt", &["decomp", "--g", "4"]),
];

#[test]
fn golden_outputs_across_thread_counts() {
    for (file, args) in GOLDEN {
        let want = golden(file);
        for threads in ["1", "2", "8"] {
            let mut a = vec!["--threads", threads];
            a.extend_from_slice(args);
            for _ in 0..2 {
                let o = torsieve(&a);
                assert!(o.status.success(), "{args:?}");
                assert_eq!(stdout(&o), want, "{file} with {threads} threads");
            }
        }
    }
}

#[test]
fn json_is_thread_independent() {
    let one = stdout(&torsieve(&["--json", "--threads", "1", "decomp", "--g", "5"]));
    let many = stdout(&torsieve(&["--json", "--threads", "8", "decomp", "--g", "5"]));
    assert_eq!(one, many);
}

#[test]
fn worked_examples() {
    assert_eq!(stdout(&torsieve(&["mprime", "2"])), "48 = 2^4 · 3\n");
    let v: Value = serde_json::from_str(&stdout(&torsieve(&["--json", "table-g4"]))).unwrap();
    let congruences: Vec<&str> =
        v["results"]["rows"].as_array().unwrap().iter().map(|r| r["congruence"].as_str().unwrap()).collect();
    assert_eq!(congruences, ["13 (mod 24)", "13 (mod 24)", "9 (mod 16)", "11 (mod 20)", "13 (mod 24)"]);
    let v: Value = serde_json::from_str(&stdout(&torsieve(&["--json", "decomp", "--g", "3"]))).unwrap();
    assert!(v["results"]["survivors"].as_array().unwrap().is_empty());
    assert_eq!(v["results"]["exceptions"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["mprime", "2"], 0),
        (&["--help"], 0),
        (&["--version"], 0),
        (&[], 2),
        (&["bogus"], 2),
        (&["mprime"], 2),
        (&["mprime", "two"], 2),
        (&["decomp"], 2),
        (&["mprime", "0"], 1),
        (&["decomp", "--g", "13"], 1),
        (&["weil", "forcing", "--coeffs", "1,0,2", "--q0", "2", "--elambda", "4", "--ell", "7"], 1),
        (&["weil", "cubic", "--q", "2", "--ell", "5"], 1),
        (&["bounds", "c6", "--m", "1"], 1),
        (&["elliptic-scan"], 2),
        (&["elliott-scan", "--m", "2", "--limit", "2000000"], 1),
        (&["--c3", "0.5", "mprime", "2"], 1),
        (&["goldfeld", "--disc", "8", "--count-limit", "100000000"], 1),
        (&["chain", "--max-d", "100000"], 1),
    ];
    for (args, code) in cases {
        let o = torsieve(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        if *code == 1 {
            let err = String::from_utf8_lossy(&o.stderr);
            assert!(err.starts_with("error: ") && err.len() > 10, "{args:?}: {err}");
        }
    }
}

#[test]
fn precondition_is_named() {
    let o = torsieve(&["weil", "forcing", "--coeffs", "1,0,2", "--q0", "2", "--elambda", "4", "--ell", "7"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("precondition") && err.contains("272"), "{err}");
}

#[test]
fn parameters_are_echoed() {
    for args in [
        &["--json", "mprime", "2"][..],
        &["--json", "--c3", "2.5", "--c1prime", "7", "bounds", "corollary", "--m", "2"],
        &["--json", "--c1prime", "1000", "bounds", "c8", "--g", "1"],
    ] {
        let v: Value = serde_json::from_str(&stdout(&torsieve(args))).unwrap();
        assert!(v["parameters"]["C3"].is_number() && v["parameters"]["C1_prime"].is_number(), "{args:?}");
    }
    let v: Value =
        serde_json::from_str(&stdout(&torsieve(&["--json", "--c3", "2.5", "--c1prime", "7", "mprime", "2"]))).unwrap();
    assert_eq!(v["parameters"]["C3"], 2.5);
    assert_eq!(v["parameters"]["C1_prime"], 7.0);
}

#[test]
fn out_file_matches_json() {
    let path = std::env::temp_dir().join(format!("torsieve_out_{}.json", std::process::id()));
    let o = torsieve(&["--out", path.to_str().unwrap(), "mprime", "4"]);
    assert_eq!(stdout(&o), "23040 = 2^9 · 3^2 · 5\n");
    let written = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    assert_eq!(written, stdout(&torsieve(&["--json", "mprime", "4"])));
}

#[test]
fn random_check_is_seeded() {
    let a = stdout(&torsieve(&["--json", "--seed", "3", "bounds", "random-check", "--draws", "50"]));
    let b = stdout(&torsieve(&["--json", "--seed", "3", "bounds", "random-check", "--draws", "50"]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert!(v["results"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn reports_match_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let commands: &[&[&str]] = &[
        &["mprime", "6"],
        &["decomp", "--g", "4"],
        &["decomp", "--g", "1", "--nk", "3"],
        &["decomp", "--g", "2", "--semistable"],
        &["table-g4"],
        &["threshold", "--g", "2", "--q0", "2", "--elambda", "2"],
        &["bounds", "c4c5", "--m", "2", "--nk", "2", "--log-disc", "2"],
        &["bounds", "c1", "--m", "2", "--eps", "0.1"],
        &["bounds", "c6", "--m", "2"],
        &["bounds", "c7", "--g", "2"],
        &["bounds", "c8", "--g", "1"],
        &["bounds", "corollary", "--m", "2"],
        &["bounds", "n-uniform", "--g", "1"],
        &["bounds", "q0", "--nk", "2"],
        &["bounds", "random-check", "--draws", "5"],
        &["lambertw", "-0.25"],
        &["x0", "--c", "10", "--N", "2"],
        &["residue", "--m", "3", "--ell", "13"],
        &["elliott-scan", "--m", "2", "--limit", "500"],
        &["goldfeld", "--disc", "8", "--ell", "43", "--count-limit", "200"],
        &["weil", "power-charpoly", "--coeffs", "1,0,2", "--e", "4"],
        &["weil", "forcing", "--coeffs", "1,0,2", "--q0", "2", "--elambda", "4", "--ell", "277"],
        &["weil", "mazur", "--g", "1", "--q", "2", "--ell", "11"],
        &["weil", "sixth-root", "--g", "1", "--p", "2", "--ell", "103"],
        &["weil", "cubic", "--q", "3", "--ell", "17"],
        &["weil", "mq", "--ell", "13", "--i", "1,5,7,11"],
        &["weil", "trace", "--q", "5", "--kappa", "1,1,1,1,1,1", "--mu6", "--n", "2"],
        &["weil", "degree", "--t", "4", "--p", "2"],
        &["family", "--count", "4"],
        &["chain", "--max-d", "12", "--max-ell", "30"],
    ];
    for args in commands {
        let mut a = vec!["--json"];
        a.extend_from_slice(args);
        let o = torsieve(&a);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        let back = torsieve::report::ReportEnvelope::from_json(&stdout(&o)).unwrap();
        assert_eq!(back.to_json() + "\n", stdout(&o), "{args:?} does not round-trip");
    }
    // the schema rejects a report without parameters
    let mut v: Value = serde_json::from_str(&stdout(&torsieve(&["--json", "mprime", "2"]))).unwrap();
    v.as_object_mut().unwrap().remove("parameters");
    assert!(!validator.is_valid(&v));
    // and a decomp report without its survivor list
    let mut v: Value = serde_json::from_str(&stdout(&torsieve(&["--json", "decomp", "--g", "2"]))).unwrap();
    v["results"].as_object_mut().unwrap().remove("survivors");
    assert!(!validator.is_valid(&v));
}
