use std::process::{Command, Output};

fn dlknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlknot")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_slice(&dlknot(&all).stdout).expect("json output")
}

#[test]
fn invariants_report() {
    let v = json(&["invariants", "U1+ D+ D+ O1+ D+"]);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["parities"][0]["value"], 2);
    assert_eq!(v["parities"][0]["modulus"], 3);
    assert_eq!(v["essential"], 3);

    let v = json(&["invariants", ""]);
    assert_eq!(v["degree"], 0);
    assert_eq!(v["parities"].as_array().unwrap().len(), 0);
    assert_eq!(v["essential"], 0);

    let v = json(&["invariants", "--no-essential", "U1+ O1+"]);
    assert!(v.get("essential").is_none());
}

#[test]
fn malformed_input_exits_2() {
    let o = dlknot(&["invariants", "U1+ Q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(dlknot(&["project", "U1+ D+ O1+"]).status.code(), Some(2));
}

#[test]
fn project_is_identity_on_parity_zero() {
    let input = "U1+ D+ D- O1+ U2- O2-";
    let o = dlknot(&["project", input]);
    assert_eq!(stdout(&o), format!("{input}\n"));
}

#[test]
fn remove_writes_replayable_trace() {
    let dir = std::env::temp_dir().join(format!("dlknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let trace = dir.join("remove.trace");
    let o = dlknot(&["remove", "U1+ D- O1+ D+", "--trace-out", trace.to_str().unwrap()]);
    assert!(o.status.success());
    let end = stdout(&o);
    let arg = format!("@{}", trace.display());
    let replayed = dlknot(&["replay", &arg]);
    assert_eq!(stdout(&replayed), end);
    assert!(!end.contains('D'));

    let out = dir.join("out.txt");
    assert!(dlknot(&["-o", out.to_str().unwrap(), "strip", "U1+ D- O1+ D+"]).status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "U1+ O1+\n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn catalog_rows() {
    let o = dlknot(&["catalog", "5"]);
    let rows = stdout(&o).lines().count() - 1;
    assert!(rows >= 2);
    assert_eq!(dlknot(&["catalog", "2"]).status.code(), Some(2));
    let v = json(&["stretch", "2", "3", "1"]);
    assert_eq!(v[1]["essential"], 7);
}

#[test]
fn link_commands() {
    assert_eq!(stdout(&dlknot(&["link-convert", "U1+ C+ C+ O1+ C-"])), "U1+ D+ D+ O1+ D-\n");
    let o = dlknot(&["--json", "link-separable", "U1+ C+ C+ O1+ C- C-"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["separable"], false);
    assert_eq!(v["obstruction"]["parity"], 2);
    assert_eq!(v["certificate"], serde_json::Value::Null);

    let o = dlknot(&["--json", "link-separable", "U1+ C- O1+ C+"]);
    assert!(o.status.success());
    let v = json(&["link-family", "3"]);
    assert_eq!(v[2]["record"]["essential"], 6);
}

#[test]
fn search_and_apply() {
    let v = json(&["search", "U1+ O1+", "O1+ U1+"]);
    assert_eq!(v["found"], true);
    assert_eq!(v["trace"]["steps"].as_array().unwrap().len(), 0);

    let o = dlknot(&["search", "", "U1+ D+ O1+ D+ D+"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mismatch"));

    let o = dlknot(&[
        "search",
        "U1+ D+ O1+ D-",
        "U1- D- D- O1- D+ D+",
        "--max-moves",
        "12",
        "--kinds",
        "CrossingChange,DlPairAdd5",
    ]);
    assert!(o.status.success());

    assert_eq!(stdout(&dlknot(&["apply", "U1+ O1+", "CrossingChange", "1", "under"])), "O1- D+ U1- D-\n");
    assert_eq!(dlknot(&["apply", "U1+ D+ O1+ D-", "R1Remove", "0"]).status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let a = dlknot(&["--json", "essential", "U1+ D- D- D- O1+ D+ D+ D+"]);
    let b = dlknot(&["--json", "essential", "U1+ D- D- D- O1+ D+ D+ D+"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["subset"], serde_json::json!([1, 2, 5, 6]));
    assert_eq!(v["essential"], true);
}
