use std::process::Command;

fn expdom(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_expdom"))
        .args(args)
        .output()
        .expect("run expdom");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

#[test]
fn exact_prints_the_value() {
    assert_eq!(expdom(&["exact", "--family", "king", "--n", "8"]), (0, "6\n".into()));
    assert_eq!(expdom(&["exact", "--family", "slant", "--n", "3"]), (0, "2\n".into()));
    assert_eq!(expdom(&["exact", "--family", "hypercube", "--n", "1"]), (0, "1\n".into()));
    let (code, out) = expdom(&["exact", "--family", "torus", "--n", "4", "--m", "5", "--witness"]);
    assert_eq!(code, 0);
    assert!(out.contains("witness: ("));
}

#[test]
fn budget_limited_exact_exits_2() {
    let (code, out) = expdom(&["exact", "--family", "king", "--n", "10", "--budget-nodes", "50"]);
    assert_eq!(code, 2);
    assert!(out.contains("budget exhausted"));
}

#[test]
fn lower_reports_bounds_and_empty_blocks() {
    let (code, out) = expdom(&["lower", "--family", "king", "--r", "7", "--n", "100"]);
    assert_eq!(code, 0);
    assert!(out.contains("denominator = 23.3095033018"));
    assert!(out.contains("lower bound for n = 100: 430"));
    let (code, out) = expdom(&["lower", "--family", "slant", "--r", "9"]);
    assert_eq!(code, 0);
    assert!(out.contains('∅'));
    let (_, out) = expdom(&["lower", "--family", "king", "--r", "3"]);
    assert!(out.starts_with("k = 1 "));
    assert_eq!(expdom(&["lower", "--family", "king", "--r", "6"]).0, 64);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(expdom(&["exact", "--family", "hexagon", "--n", "3"]).0, 64);
    assert_eq!(expdom(&["exact", "--family", "king"]).0, 64);
    assert_eq!(expdom(&["tile", "construct", "--family", "king", "--n", "5"]).0, 64);
    assert_eq!(expdom(&["reproduce", "table1", "--threads", "0"]).0, 64);
    assert_eq!(expdom(&["--help"]).0, 0);
}

#[test]
fn tile_subcommands() {
    let (code, out) = expdom(&["tile", "verify", "--family", "king", "--multiple", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("valid on toroidal-king 46x46, min weight = "));
    assert!(out.trim_end().ends_with(">= 1"));
    assert_eq!(expdom(&["tile", "density", "--family", "slant"]), (0, "1/19\n".into()));
    let (_, art) = expdom(&["tile", "ascii", "--family", "torus"]);
    let lines: Vec<&str> = art.lines().collect();
    assert_eq!(lines.len(), 13);
    // Column 3 holds the cell of row 10, drawn third from the top.
    assert_eq!(lines[2].find('X'), Some(3));
    let (_, csv) = expdom(&["tile", "ascii", "--family", "king", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("period,col,row"));
    assert_eq!(csv.lines().count(), 24);
}

#[test]
fn json_and_csv_round_trip() {
    let (_, json) = expdom(&["lower", "--family", "king", "--r", "7", "--n", "100", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["lower_bound"], 430);
    let k = v["k"].as_f64().unwrap();
    assert!((k - 10.6904966982).abs() < 1e-9);

    let (_, csv_text) = expdom(&["lower", "--family", "slant", "--r", "7", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    let rec = rdr.records().next().unwrap().unwrap();
    let get = |name: &str| rec.get(header.iter().position(|h| h == name).unwrap()).unwrap().to_string();
    let k_csv: f64 = get("k").parse().unwrap();
    let (_, json) = expdom(&["lower", "--family", "slant", "--r", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    // Both encodings carry the full-precision value.
    assert_eq!(k_csv, v["k"].as_f64().unwrap());
    assert_eq!(get("feasible"), "true");

    let (_, json) = expdom(&["reproduce", "table2", "--format", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["ok"] == true));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("expdom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("density.json");
    let (code, out) = expdom(&["tile", "density", "--family", "king", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["density"], "1/23");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reproduce_tables_and_hypercube() {
    let (code, out) = expdom(&["reproduce", "table1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("7 of 7 checks match"));
    let (code, out) = expdom(&["reproduce", "hypercube", "--threads", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("note: Q_1"));
    // The text-faithful reading gives different Slant values, reported as a diff.
    let (code, out) = expdom(&["reproduce", "table2", "--mode", "text"]);
    assert_eq!(code, 1);
    assert!(out.contains("DIFF"));
}
