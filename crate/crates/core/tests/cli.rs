mod common;

use common::*;

#[test]
fn round_trip_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(check_cli_round_trip(dir.path()), Ok(()));
}

#[test]
fn tables_have_all_cells() {
    assert_eq!(check_cli_tables(), Ok(()));
}

#[test]
fn two_distance_example() {
    let (code, out, _) = grasscode(&["bound", "two-distance", "--n", "9", "--m", "3", "--alpha", "0", "--beta", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("120") && out.contains("(applicable)"), "{out}");
    let (_, json, _) = grasscode(&["bound", "two-distance", "--n", "9", "--m", "3", "--alpha", "0", "--beta", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["value"], "120");
    assert_eq!(v["applicable"], true);
}

#[test]
fn decimals_are_exact() {
    let (_, a, _) = grasscode(&["bound", "one-distance", "--m", "2", "--n", "5", "--alpha", "0.25", "--json"]);
    let (_, b, _) = grasscode(&["bound", "one-distance", "--m", "2", "--n", "5", "--alpha", "1/4", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn pauli_file_has_thirty_members() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let (code, _, _) = grasscode(&["construct", "pauli", "--k", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, info, _) = grasscode(&["info", "--json", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&info).unwrap();
    assert_eq!(v["size"], 30);
    assert_eq!(v["m"], 2);
}

#[test]
fn stdout_output_reads_back() {
    let (code, body, _) = grasscode(&["construct", "mub", "--p", "3"]);
    assert_eq!(code, 0);
    let parsed = grasscode::linalg::format::from_json(&body, Default::default()).unwrap();
    assert_eq!(parsed.len(), 12);
}

#[test]
fn exit_codes() {
    assert_eq!(grasscode(&["bound", "absolute", "--k", "1", "--m", "3", "--n", "4"]).0, 1);
    assert_eq!(grasscode(&["bound", "one-distance", "--m", "1", "--n", "4", "--alpha", "x"]).0, 1);
    assert_eq!(grasscode(&["no-such-command"]).0, 1);
    assert_eq!(grasscode(&["construct", "pauli", "--k", "7"]).0, 3);
    assert_eq!(grasscode(&["gram", "/nonexistent/file.json"]).0, 1);
    assert_eq!(grasscode(&["--help"]).0, 0);
}

#[test]
fn corrupted_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"format\": \"something-else\"}").unwrap();
    let (code, _, err) = grasscode(&["angles", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    let p = path.to_str().unwrap();
    grasscode(&["construct", "extraspecial", "--p", "3", "--n", "2", "--k", "1", "-o", p]);
    let one = grasscode(&["verify-design", "--t", "2", "--json", "--threads", "1", p]).1;
    let four = grasscode(&["verify-design", "--t", "2", "--json", "--threads", "4", p]).1;
    assert_eq!(one, four);
}
