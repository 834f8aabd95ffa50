use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_quadsec")).args(args).output().expect("binary runs");
    let value = serde_json::from_slice(&out.stdout).expect("json report");
    (value, out.status.code().expect("exit code"))
}

fn fixture(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quadsec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const TWISTED_CUBIC: &str = "ring R vars x0 x1 x2 x3;\n\
    ideal TC = x0*x2 - x1^2, x1*x3 - x2^2, x0*x3 - x1*x2;\n\
    point p = (1 : 0 : 0 : 1);\n";

#[test]
fn parse_errors_exit_with_code_two() {
    let path = fixture("bad.txt", "ring R vars x y z;\nideal I = x^2 - y*;\n");
    let (report, code) = run(&["gb", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(report["status"], "error");
    assert_eq!(report["error"]["code"], "parse");
}

#[test]
fn missing_input_is_an_argument_error() {
    let (report, code) = run(&["check-k2"]);
    assert_eq!(code, 2);
    assert_eq!(report["error"]["code"], "invalid_argument");
}

#[test]
fn file_input_check_k2_and_fiber() {
    let path = fixture("tc.txt", TWISTED_CUBIC);
    let path = path.to_str().unwrap();
    let (report, code) = run(&["check-k2", path]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["holds"], true);
    assert_eq!(report["result"]["linear_syzygies"], "2");
    assert_eq!(report["input_sha256"].as_str().map(str::len), Some(64));
    assert!(report.get("wall_clock_ms").is_none());

    // The point (1:0:0:1) lies on the chord through (1:0:0:0) and (0:0:0:1).
    let (report, code) = run(&["fiber", path, "--point", "p"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["kind"]["type"], "linear_space");
    assert_eq!(report["result"]["kind"]["dim"], "1");
}

#[test]
fn veronese_deficiency() {
    let (report, code) = run(&["deficiency", "--corpus", "veronese:2,2"]);
    assert_eq!(code, 0);
    let r = &report["result"];
    assert_eq!((r["r"].as_str(), r["dim_sigma"].as_str(), r["delta"].as_str()), (Some("2"), Some("4"), Some("1")));
    assert_eq!(r["degree"], "3");
    assert_eq!(r["formula_consistent"], true);
}

#[test]
fn flip_verify_reports_the_canonical_class() {
    let (report, code) = run(&["flip-verify"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["canonical_class"], "O(-n-1, n-r-1, n-2r-2)");
    assert_eq!(report["result"]["spot_n7_r1_k5"], serde_json::json!(["17", "-10", "-5"]));
}

#[test]
fn corpus_text_round_trips_through_the_parser() {
    let (report, code) = run(&["corpus", "rational-normal-curve:4"]);
    assert_eq!(code, 0);
    let path = fixture("rnc4.txt", report["result"]["input"].as_str().unwrap());
    let (gb, code) = run(&["gb", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(gb["result"]["hilbert"]["degree"], "4");
    assert_eq!(gb["result"]["hilbert"]["dimension"], "1");
}

#[test]
fn vanishing_violation_exits_with_code_one() {
    let (report, code) = run(&["vanish-scan", "--corpus", "rational-normal-curve:3", "--a-max", "2", "--window", "4"]);
    assert_eq!(code, 1);
    assert_eq!(report["status"], "violation");
    let v = &report["result"]["violations"][0];
    assert_eq!((v["i"].as_str(), v["a"].as_str(), v["k"].as_str()), (Some("1"), Some("2"), Some("2")));
}

#[test]
fn text_format_and_out_file() {
    let out = std::env::temp_dir().join(format!("quadsec-out-{}.txt", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_quadsec"))
        .args(["betti", "--corpus", "rational-normal-curve:3", "--format", "text", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("result.entries.0,2: 3\n"), "{text}");
    assert!(text.contains("result.entries.1,3: 2\n"), "{text}");
    std::fs::remove_file(out).ok();
}

#[test]
fn thresholds_from_explicit_dimensions() {
    let (report, code) = run(&["thresholds", "--n", "4", "--r", "1", "--a", "2"]);
    assert_eq!(code, 0);
    assert!(report["result"].as_object().unwrap().len() >= 3);
}
