use std::process::Command;

use logmat::cli::{emit_report, exit_code, report_for, Format, Report, ResultItem};

fn bin(args: &str) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_logmat"))
        .args(args.split_whitespace())
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &str) -> (i32, serde_json::Value) {
    let (code, out, _) = bin(&format!("{args} --format json --no-timestamp"));
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn ord_json_example() {
    let (code, v) = json("ord --p 3 --ap 3 --eps 1 --n 2");
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "ord");
    assert_eq!(v["results"][0]["ord_matrix"], serde_json::json!([["-1/2", "-1/2"], ["-7/6", "-7/6"]]));
    assert_eq!(v["results"][0]["matches_closed_form"], true);
    assert_eq!(v["summary"], serde_json::json!({"passed": 1, "failed": 0}));
}

#[test]
fn zero_top_row_serializes_as_inf() {
    let (code, v) = json("ord --ap 0 --n 2");
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["ord_matrix"], serde_json::json!([["inf", "inf"], ["-7/6", "-7/6"]]));
}

#[test]
fn endgame_example() {
    let (code, v) = json("endgame --p 3 --e 2");
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["forced_r"], "1/4");
    assert_eq!(v["results"][0]["contradiction"], true);
    let (_, v) = json("endgame --p 3 --e 1 --r-bound 1/5");
    assert_eq!(v["results"][0]["contradiction"], false);
}

#[test]
fn input_errors_exit_2() {
    for args in [
        "ord --p 4",
        "ord --p 2",
        "ord --ap 1",
        "ord --ap x/y",
        "ord --n 1",
        "claim --p 3 --r 1/7",
        "stab --n 2 --m 2",
        "ap0 --eps 3",
        "artin --D 4",
        "bogus",
        "ord --unknown-flag",
    ] {
        let (code, out, err) = bin(args);
        assert_eq!(code, 2, "{args}");
        assert!(out.is_empty(), "{args}");
        assert!(!err.is_empty(), "{args}");
    }
    let (_, _, err) = bin("ord --unknown-flag");
    assert!(err.contains("Usage"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = bin("--help");
    assert_eq!(code, 0);
    assert!(out.contains("verify-prop"));
}

#[test]
fn tn_csv_rows() {
    let (code, out, _) = bin("tn --p 3 --n-max 4 --format csv");
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "key,t_plus,t_minus,passed");
    assert_eq!(&lines[1..], ["1,0,0,true", "2,1/9,1/3,true", "3,1/9,1/3,true", "4,10/81,10/27,true"]);
}

#[test]
fn empty_results() {
    let (code, v) = json("tn --n-max 0");
    assert_eq!(code, 0);
    assert_eq!(v["summary"], serde_json::json!({"passed": 0, "failed": 0}));
}

#[test]
fn deterministic_without_timestamp() {
    for args in ["artin --D 8 --trials 3 --seed 9 --format json --no-timestamp", "det --n 3 --format json --no-timestamp"] {
        assert_eq!(bin(args).1, bin(args).1);
    }
    let (_, v) = json("tn --n-max 1");
    assert!(v.get("timestamp").is_none());
    let (_, out, _) = bin("tn --n-max 1 --format json");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["timestamp"].is_u64());
}

#[test]
fn out_path() {
    let dir = std::env::temp_dir().join(format!("logmat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let (code, out, _) = bin(&format!("tn --n-max 2 --format json --out {}", path.display()));
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let back: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back.results.len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();

    let (code, _, err) = bin("tn --out /nonexistent-dir/x/r.json");
    assert_eq!(code, 2);
    assert!(err.contains("cannot write"));
}

#[test]
fn failed_item_gives_exit_1() {
    let r = Report::new("x", Default::default(), vec![ResultItem::new("a", true), ResultItem::new("b", false)]);
    assert_eq!(exit_code(&r), 1);
    assert_eq!(r.summary.failed, 1);
    assert_eq!(exit_code(&Report::new("x", Default::default(), vec![])), 0);
}

#[test]
fn negative_control_batch() {
    let (code, v) = json("artin --D 8 --trials 4 --hypothesis none");
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["negative_control"], true);
    assert_eq!(v["results"][0]["theorem_b"], false);
}

#[test]
fn in_memory_report_matches_emitted_json() {
    let argv: Vec<String> =
        ["logmat", "claim", "--r", "sym", "--n-max", "6", "--no-timestamp"].iter().map(|s| s.to_string()).collect();
    let (report, _) = report_for(&argv).unwrap();
    let back: Report = serde_json::from_str(&emit_report(&report, Format::Json)).unwrap();
    assert_eq!(back, report);
    assert_eq!(report.results[0].data["chain"][0][0], "r + a");
}
