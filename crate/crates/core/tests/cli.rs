use std::path::{Path, PathBuf};
use std::process::Command;

use friezelab::census::{frieze_count, CountReport, TableReport};
use friezelab::cli::{run, Outcome};
use friezelab::formats::{read_frieze, read_quiddities};
use friezelab::frieze::{build_frieze, validate_frieze};
use friezelab::Limits;

fn friezelab(args: &[&str]) -> Outcome {
    run(std::iter::once("friezelab").chain(args.iter().copied()))
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn golden_text(name: &str) -> String {
    std::fs::read_to_string(golden(name)).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn count_prints_the_value() {
    let out = friezelab(&["count", "--k", "3", "--w", "1", "--q", "2"]);
    assert_eq!(out, Outcome { code: 0, stdout: "5\n".into(), stderr: String::new() });
}

#[test]
fn exit_codes() {
    // 2: not a prime power, unsupported case, malformed arguments, unreadable input.
    assert_eq!(friezelab(&["count", "--k", "3", "--w", "1", "--q", "6"]).code, 2);
    let unsupported = friezelab(&["count", "--k", "4", "--w", "3", "--q", "2"]);
    assert_eq!(unsupported.code, 2);
    assert!(unsupported.stderr.contains("unsupported"), "{}", unsupported.stderr);
    assert_eq!(friezelab(&["count", "--k", "3", "--q", "2"]).code, 2);
    assert_eq!(friezelab(&["no-such-command"]).code, 2);
    assert_eq!(friezelab(&["validate-frieze", "--input", "/nonexistent/frieze.txt"]).code, 2);
    assert_eq!(friezelab(&["count", "--k", "4", "--w", "3", "--q", "2", "--conjecture"]).code, 2);

    // 3: caps.
    let capped = friezelab(&["enumerate-quiddities", "--k", "4", "--n", "7", "--q", "2", "--node-cap", "10"]);
    assert_eq!(capped.code, 3);
    assert!(capped.stderr.contains("resource limit"));
    let capped = friezelab(&["enumerate-configs", "--q", "2", "--family", "c4", "--n", "7", "--count-only", "--node-cap", "1000"]);
    assert_eq!(capped.code, 3);

    // 0: help.
    assert_eq!(friezelab(&["--help"]).code, 0);
}

#[test]
fn invalid_frieze_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    let text = golden_text("frieze_k3_n5_q2.txt").replacen("1 1 1 1 1\n0 0 1 1 1", "1 1 1 1 1\n1 0 1 1 1", 1);
    std::fs::write(&bad, text).unwrap();
    let out = friezelab(&["validate-frieze", "--input", path_str(&bad)]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert!(out.stdout.contains("INVALID"));

    let ok = friezelab(&["validate-frieze", "--input", path_str(&golden("frieze_k3_n5_q2.txt"))]);
    assert_eq!(ok.code, 0);
    assert!(ok.stdout.ends_with("valid\n"));
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 5] = [
        (&["enumerate-quiddities", "--k", "3", "--n", "5", "--q", "2"], "quiddities_k3_n5_q2.txt"),
        (&["enumerate-quiddities", "--k", "2", "--n", "5", "--q", "4"], "quiddities_k2_n5_q4.txt"),
        (&["tables", "--which", "fig1", "--format", "csv"], "fig1.csv"),
        (&["tables", "--which", "fig2", "--format", "csv"], "fig2.csv"),
        (&["tables", "--which", "fig1"], "fig1.txt"),
    ];
    for (args, file) in cases {
        let out = friezelab(args);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert_eq!(out.stdout, golden_text(file), "{args:?}");
    }
    let input = golden("quiddity_k3_n5_q2.txt");
    let out = friezelab(&["build-frieze", "--input", path_str(&input)]);
    assert_eq!(out.stdout, golden_text("frieze_k3_n5_q2.txt"));
}

#[test]
fn table_csv_has_25_matching_cells() {
    let out = friezelab(&["tables", "--which", "fig1", "--format", "csv"]);
    assert_eq!(out.code, 0);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().all(|r| &r[6] == "true" && r[4] == r[5]));
}

#[test]
fn json_reports_round_trip() {
    let out = friezelab(&["count", "--k", "4", "--w", "4", "--q", "7", "--format", "json"]);
    assert_eq!(out.code, 0);
    let r: CountReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(r, frieze_count(4, 4, 7, &Limits::default()).unwrap());
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out.stdout);

    let out = friezelab(&["tables", "--which", "fig2", "--format", "json"]);
    let t: TableReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(t.all_match());
    assert_eq!(t.cell(4, 7).unwrap().computed.as_ref().unwrap().to_string(), "14176726502");

    let out = friezelab(&["count", "--k", "5", "--w", "1", "--q", "2", "--conjecture", "--format", "json"]);
    let r: CountReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(r.value.to_string(), "21");
    assert!(r.notes.iter().any(|n| n.contains("conjectural")));
}

#[test]
fn output_is_independent_of_worker_count() {
    let runs: [&[&str]; 4] = [
        &["enumerate-configs", "--q", "2", "--family", "c3_star", "--n", "6"],
        &["enumerate-configs", "--q", "3", "--family", "c3", "--n", "5", "--format", "json"],
        &["enumerate-quiddities", "--k", "3", "--n", "6", "--q", "3", "--format", "csv"],
        &["tables", "--which", "fig2", "--format", "json"],
    ];
    for args in runs {
        let outs: Vec<Outcome> = ["1", "2", "4"]
            .iter()
            .map(|w| friezelab(&[args, &["--workers", w]].concat()))
            .collect();
        assert_eq!(outs[0].code, 0, "{args:?}: {}", outs[0].stderr);
        assert!(outs.windows(2).all(|p| p[0] == p[1]), "{args:?}");
    }
}

#[test]
fn count_methods_agree() {
    let out = friezelab(&["count", "--family", "c3_starstar", "--n", "6", "--q", "3", "--method", "all"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let values: Vec<&str> = out.stdout.lines().map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert!(values.iter().all(|v| *v == values[0]));

    let out = friezelab(&["count", "--family", "c4", "--n", "7", "--q", "2", "--method", "closed_form", "--format", "csv"]);
    assert!(out.stdout.contains("c4,4,7,,2,1874880,closed_form"), "{}", out.stdout);
}

#[test]
fn written_files_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let quids = dir.path().join("q.txt");
    let out = friezelab(&["enumerate-quiddities", "--k", "4", "--n", "7", "--q", "2", "--output", path_str(&quids)]);
    assert_eq!(out, Outcome::default());
    let (field, all) = read_quiddities(&std::fs::read_to_string(&quids).unwrap()).unwrap();
    assert_eq!(all.len(), 93);

    let one = dir.path().join("one.txt");
    let frieze = dir.path().join("frieze.txt");
    std::fs::write(&one, friezelab::formats::write_quiddity(&field, &all[17])).unwrap();
    assert_eq!(friezelab(&["build-frieze", "--input", path_str(&one), "--output", path_str(&frieze)]).code, 0);
    let (_, pat) = read_frieze(&std::fs::read_to_string(&frieze).unwrap()).unwrap();
    assert_eq!(pat, build_frieze(&field, &all[17]).unwrap());
    assert!(validate_frieze(&field, &pat).is_valid());
}

#[test]
fn lift_and_decompose() {
    let config = "0,0,1 0,1,0 1,0,0 1,1,1 1,0,2 1,2,1";
    let out = friezelab(&["lift", "--q", "3", "--config", config]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("star condition: true"));
    assert!(out.stdout.contains("coefficient set size: 4"));

    let out = friezelab(&["decompose", "--q", "3", "--config", config, "--bruteforce", "--format", "csv"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "dims,stabilizer_formula,stabilizer_bruteforce\n3,1,1\n");

    // Three repeated points: type (1,1,1), stabilizer (q−1)^2.
    let out = friezelab(&["decompose", "--q", "3", "--config", "1,0,0 0,1,0 0,0,1 1,0,0 0,1,0 0,0,1", "--bruteforce"]);
    assert!(out.stdout.contains("type: (1,1,1)"));
    assert!(out.stdout.contains("stabilizer (brute force): 4"));

    // Not in C_3(6): consecutive points dependent.
    let out = friezelab(&["lift", "--q", "3", "--config", "1,0,0 1,0,0 0,0,1 1,1,1 1,0,2 1,2,1"]);
    assert_ne!(out.code, 0);
}

#[test]
fn selfcheck_passes() {
    let out = friezelab(&["selfcheck"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_friezelab");
    let ok = Command::new(bin).args(["count", "--k", "3", "--w", "1", "--q", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(ok.stdout, b"5\n");
    let bad = Command::new(bin).args(["count", "--k", "4", "--w", "3", "--q", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let capped = Command::new(bin)
        .args(["enumerate-quiddities", "--k", "4", "--n", "7", "--q", "2"])
        .env("FRIEZELAB_NODE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}
