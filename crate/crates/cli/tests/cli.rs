use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn qcube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcube")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn rank_reports_distance_sum_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "# tetrahedron\n000\n011\n101\n110\n");
    let out = qcube(&["rank", &a]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("rank: 3\n"), "{text}");
    assert!(text.contains("distance sum: 12\n"));
    assert!(text.contains("bounds: [3, 4]\n"));

    let json: serde_json::Value = serde_json::from_slice(&qcube(&["rank", &a, "--json"]).stdout).unwrap();
    assert_eq!(json["rank"], 3);
    assert_eq!(json["distance_sum"], "12");
    assert_eq!(json["bounds"]["holds"], true);
}

#[test]
fn small_sets_report_closed_rank() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "0000\n0111\n1100\n");
    let text = stdout(&qcube(&["rank", &a]));
    assert!(text.contains("rank: 4\n"), "{text}");
    assert!(text.contains("closed-form rank: 4\n"));
}

#[test]
fn duplicates_are_dropped_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "01\n01\n10\n");
    let out = qcube(&["rank", &a, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dropped 1 duplicate"));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["size"], 2);
    assert_eq!(json["duplicates_dropped"], 1);
}

#[test]
fn distribution_text_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "000\n011\n101\n110\n");
    let text = stdout(&qcube(&["distribution", &a, "--k", "1"]));
    assert_eq!(text, "e=0: 0\ne=1: 12\ntotal faces: 12 ✓\n");
    let csv = stdout(&qcube(&["distribution", &a, "--k", "2", "--csv"]));
    assert_eq!(csv, "e,count\n0,0\n2,6\n");
    let json: serde_json::Value =
        serde_json::from_slice(&qcube(&["distribution", &a, "--k", "3", "--json"]).stdout).unwrap();
    assert_eq!(json["counts"], serde_json::json!([{"e": 0, "count": "0"}, {"e": 4, "count": "1"}]));
    assert_eq!(json["conserved"], true);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "000\n011\n101\n110\n");
    assert_eq!(qcube(&["verify", &a, "--k", "2", "--s", "2"]).status.code(), Some(0));
    assert_eq!(qcube(&["verify", &a, "--identity", "corollary3", "--k", "3"]).status.code(), Some(0));
    assert_eq!(
        qcube(&["verify", "--identity", "vandermonde", "--n", "6", "--nu", "2", "--k", "3"]).status.code(),
        Some(0)
    );

    let printed = qcube(&["verify", "--identity", "evenweight_printed", "--n", "4", "--k", "2"]);
    assert_eq!(printed.status.code(), Some(1));
    assert!(stdout(&printed).contains("known erratum"));
    assert_eq!(qcube(&["verify", "--identity", "evenweight_corrected", "--n", "4", "--k", "2"]).status.code(), Some(0));
}

#[test]
fn verify_breakdown_lists_terms() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "00\n01\n");
    let out = qcube(&["verify", &a, "--k", "1", "--s", "2", "--breakdown", "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["lhs"], "1");
    let terms = json["terms"].as_array().unwrap();
    assert!(terms.iter().any(|t| t["side"] == "rhs" && t["label"] == "00 01" && t["value"] == "1"), "{terms:?}");
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "000\n01\n");
    let out = qcube(&["rank", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = qcube(&["rank", &write(dir.path(), "q.txt", "012\n")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(qcube(&["rank", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(qcube(&["verify", "--identity", "nonsense", "--n", "2", "--k", "1"]).status.code(), Some(2));
    assert_eq!(qcube(&["--q", "1", "gen", "--family", "even-weight", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn guard_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "000\n011\n");
    let out = qcube(&["distribution", &a, "--k", "0", "--guard", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("instance too large"));
}

#[test]
fn gen_pipes_into_rank() {
    let generated = qcube(&["gen", "--family", "even-weight", "--n", "4"]);
    assert_eq!(stdout(&generated).lines().count(), 8);
    let mut child = Command::new(env!("CARGO_BIN_EXE_qcube"))
        .args(["rank", "/dev/stdin", "--n", "4", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&generated.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["size"], 8);
    assert_eq!(json["rank"], 4);
}

#[test]
fn gen_face_and_random_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("face.txt");
    let p = path.to_str().unwrap();
    let out =
        qcube(&["--q", "3", "gen", "--family", "face", "--n", "3", "--free", "1", "--fixed", "2,0", "--output", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "200\n210\n220\n");

    let a = qcube(&["gen", "--family", "random", "--n", "6", "--m", "5", "--seed", "9"]);
    let b = qcube(&["gen", "--family", "random", "--n", "6", "--m", "5", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 5);
}

#[test]
fn sweep_inline_and_config_agree() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "sweep.json",
        r#"{"identities": ["main", "evenweight_printed"], "n": {"min": 1, "max": 3}, "seeds": [4, 5]}"#,
    );
    let from_config = qcube(&["sweep", "--config", &config]);
    let inline = qcube(&["sweep", "--identities", "main,evenweight_printed", "--n-range", "1:3", "--seeds", "4,5"]);
    assert_eq!(from_config.status.code(), Some(0));
    assert_eq!(from_config.stdout, inline.stdout);
    let text = stdout(&from_config);
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["failed"], 0);
    assert!(last["summary"]["known_errata"].as_u64().unwrap() > 0);

    let out_path = dir.path().join("out.jsonl");
    let out = qcube(&["sweep", "--config", &config, "--output", out_path.to_str().unwrap()]);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&out_path).unwrap(), from_config.stdout);
}

#[test]
fn sweep_rejects_bad_configs() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write(dir.path(), "u.json", r#"{"identities": ["main"], "n": {"min": 1, "max": 2}, "extra": 1}"#);
    assert_eq!(qcube(&["sweep", "--config", &unknown]).status.code(), Some(2));
    let empty = write(dir.path(), "e.json", r#"{"identities": ["main"], "n": {"min": 3, "max": 2}}"#);
    assert_eq!(qcube(&["sweep", "--config", &empty]).status.code(), Some(2));
}
