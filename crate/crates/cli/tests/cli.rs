use std::io::Write;
use std::process::{Command, Output};

fn gapdeck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapdeck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn equal_reports_true_for_the_k2_pair() {
    let out = gapdeck(&["equal", "010011", "001101", "--s", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "true\n");
}

#[test]
fn false_property_exits_with_one() {
    let out = gapdeck(&["equal", "010011", "001100", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "false\n");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(gapdeck(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gapdeck(&["equal", "0101", "--k", "2"]).status.code(), Some(2));
    assert_eq!(gapdeck(&["equal", "01a1", "0101", "--k", "2"]).status.code(), Some(2));
    assert_eq!(gapdeck(&["deck", "0101", "--k", "0"]).status.code(), Some(2));
}

#[test]
fn table2_has_six_rows() {
    let out = gapdeck(&["bounds", "table2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], "28 42742211");
    assert_eq!(rows[5], "33 238563374");
}

#[test]
fn padded_construction_at_depth_one() {
    let out = gapdeck(&["construct", "padded", "--k", "1"]);
    assert_eq!(stdout(&out), "0010\n0100\n");
}

#[test]
fn construction_verifies_itself() {
    let out = gapdeck(&["construct", "s-padded", "--s", "3", "--k", "3", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("# verified: true\n"));
}

#[test]
fn strings_can_come_from_a_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# k = 3 pair\n1101111010111\n1110101111011").unwrap();
    let arg = format!("@{}", file.path().display());
    let out = gapdeck(&["equal", &arg, "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_output_is_versioned() {
    let out = gapdeck(&["--format", "json", "wildcard", "count", "JX", "YXYX"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], "gapdeck/v1");
    assert_eq!(doc["result"]["count"], 4);
}

#[test]
fn search_output_does_not_depend_on_worker_count() {
    let run = |workers: &str| {
        let out = gapdeck(&[
            "--format", "json", "search", "G", "--k", "3", "--n-max", "14", "--workers", workers,
            "--quiet",
        ]);
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("8"));
    let doc: serde_json::Value = serde_json::from_slice(&one).unwrap();
    assert_eq!(doc["result"]["n"], 13);
}

#[test]
fn search_resumes_from_its_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("search.log");
    let log = log.to_str().unwrap();
    let args = ["search", "G", "--k", "2", "--n-max", "8", "--checkpoint", log];
    let first = gapdeck(&args);
    assert_eq!(first.status.code(), Some(0));
    let lines = std::fs::read_to_string(log).unwrap().lines().count();
    let second = gapdeck(&args);
    assert_eq!(first.stdout, second.stdout);
    // nothing recomputed, so nothing new appended beyond a blank separator
    let after = std::fs::read_to_string(log).unwrap();
    assert_eq!(after.lines().filter(|l| !l.is_empty()).count(), lines);
    assert!(String::from_utf8(second.stderr).unwrap().is_empty());
}

#[test]
fn search_progress_goes_to_stderr() {
    let out = gapdeck(&["search", "exactD", "--k", "2", "--n-max", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("shard=all"));
    assert!(stdout(&out).starts_with("n 3\n"));
}

#[test]
fn oracle_agrees_with_the_dynamic_program() {
    let out = gapdeck(&["oracle", "1001", "--s", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "0 2\n1 2\n01 1\n10 1\n11 1\n# dynamic program agrees: true\n"
    );
}

#[test]
fn lemma3_reports_each_flag() {
    let out = gapdeck(&["wildcard", "lemma3", "0010", "0100", "XYYX", "YXXY", "--k", "1", "--sigma", "1"]);
    let text = stdout(&out);
    assert!(text.contains("base four-way equality true"));
    assert!(text.contains("U-equivalent false"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_names_the_construct() {
    let out = gapdeck(&["bounds", "--help"]);
    assert!(stdout(&out).contains("Upper bounds on G(k)"));
    let out = gapdeck(&["eq7", "--help"]);
    assert!(stdout(&out).contains("punctured decks"));
}
