use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_circleqm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str], stdin: &str) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let r = run(&a, stdin);
    assert_eq!(r.code, 0, "{}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn rows(v: &Value) -> &Vec<Value> {
    v.as_array().unwrap()
}

const MIN: &str = r#"{"family":"min","alpha":0.4,"l":2.25,"gamma":0.5,"s":1.5}"#;
const WZ: &str = r#"{"family":"wz","epsilon":0.8,"delta":0.25,"theta":1.1,"l":0.6}"#;

#[test]
fn verify_specfun_passes() {
    let v = json(&["verify", "specfun"], "");
    for row in rows(&v) {
        assert_eq!(row["pass"], true, "{row}");
        assert!(!row["anchor"].as_str().unwrap().is_empty());
    }
}

#[test]
fn verify_all_passes_and_lists_the_saturation_row() {
    let r = run(&["verify", "--threads", "2"], "");
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = json(&["verify", "all"], "");
    let row = rows(&v).iter().find(|r| r["id"] == "mincs.saturation.c-l").unwrap();
    assert!(row["residual"].as_f64().unwrap() < 1e-10);
    let ids: Vec<&str> = rows(&v).iter().map(|r| r["id"].as_str().unwrap()).collect();
    for prefix in ["specfun.", "mincs.", "zakcs.", "ladder.", "evolve.", "e2."] {
        assert!(ids.iter().any(|i| i.starts_with(prefix)), "{prefix}");
    }
}

#[test]
fn tolerance_override_forces_failure() {
    let r = run(&["verify", "ladder", "--tol", "1e-30", "--format", "json"], "");
    assert_eq!(r.code, 1);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert!(rows(&v).iter().any(|r| r["pass"] == false));
    assert!(r.stderr.contains("failed"));
}

#[test]
fn g_table_rows() {
    let v = json(&["table", "mincs-g"], "");
    let at = |x: f64| rows(&v).iter().find(|r| r["x"].as_f64() == Some(x)).unwrap().clone();
    let r = at(2.0);
    assert!((r["i1_over_i0"].as_f64().unwrap() - 0.6977).abs() < 5e-4);
    assert!((r["i1_over_x_i0"].as_f64().unwrap() - 0.3489).abs() < 5e-4);
    assert!((r["g"].as_f64().unwrap() - 0.1644).abs() < 5e-4);
    assert_eq!(r["printed"], true);
    let r = at(0.0);
    assert_eq!(r["i1_over_i0"].as_f64(), Some(0.0));
    assert_eq!(r["i1_over_x_i0"].as_f64(), Some(0.5));
    assert_eq!(r["g"].as_f64(), Some(0.5));
    assert!(rows(&v).len() > 100);
}

#[test]
fn transition_rows_sum_to_one() {
    let v = json(&["table", "transition"], r#"{"epsilon":1,"delta":0.3,"theta":1,"l":0.7}"#);
    let sum: f64 = rows(&v).iter().map(|r| r["probability"].as_f64().unwrap()).sum();
    assert!((sum - 1.0).abs() < 1e-8, "{sum}");
}

#[test]
fn kj_table_saturates() {
    let v = json(&["table", "kj"], r#"{"epsilon":0.5,"delta":0,"theta":[0,1,2],"l":[-0.5,0,2]}"#);
    assert_eq!(rows(&v).len(), 9);
    for r in rows(&v) {
        assert_eq!(r["saturated"], true);
    }
}

#[test]
fn wz_state_at_the_sector_point_has_real_positive_u() {
    let v = json(&["state"], r#"{"family":"wz","epsilon":1,"delta":0.3,"theta":0,"l":0.3}"#);
    assert!(v["closed_u_re"].as_f64().unwrap() > 0.0);
    assert_eq!(v["closed_u_im"].as_f64().unwrap().abs(), 0.0);
    assert!((v["c"].as_f64().unwrap() - v["closed_c"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn state_reports_agree_with_closed_forms() {
    for cfg in [MIN, WZ] {
        let v = json(&["state"], cfg);
        for k in ["c", "s", "l", "var_c", "var_s", "var_l", "cov_cl", "cov_sl"] {
            let a = v[k].as_f64().unwrap();
            let b = v[format!("closed_{k}")].as_f64().unwrap();
            assert!((a - b).abs() < 1e-10, "{k}: {a} {b}");
        }
    }
}

#[test]
fn overlap_of_identical_states_is_one() {
    for s in [MIN, WZ] {
        let v = json(&["overlap"], &format!(r#"{{"a":{s},"b":{s}}}"#));
        assert!((v["re"].as_f64().unwrap() - 1.0).abs() < 1e-13, "{v}");
        assert!(v["im"].as_f64().unwrap().abs() < 1e-13);
        assert!((v["matrix_re"].as_f64().unwrap() - 1.0).abs() < 1e-13);
    }
}

#[test]
fn overlap_of_distinct_states_matches_matrix_element() {
    let b = r#"{"family":"wz","epsilon":0.8,"delta":0.25,"theta":-0.4,"l":1.3}"#;
    let v = json(&["overlap"], &format!(r#"{{"a":{WZ},"b":{b}}}"#));
    assert!((v["re"].as_f64().unwrap() - v["matrix_re"].as_f64().unwrap()).abs() < 1e-12);
    assert!((v["im"].as_f64().unwrap() - v["matrix_im"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn evolve_at_zero_reproduces_the_state_report() {
    for (cfg, extra) in [(MIN, r#","epsilon":1.3"#), (WZ, "")] {
        let state = json(&["state"], cfg);
        let ev = json(&["evolve"], &format!(r#"{{"state":{cfg}{extra},"times":[0]}}"#));
        let row = &rows(&ev)[0];
        assert_eq!(rows(&ev).len(), 1);
        for k in ["c", "s", "l", "var_c", "var_s", "var_l", "cov_cl", "cov_sl", "gap_cl", "gap_sl"] {
            assert_eq!(row[k], state[k], "{k}");
        }
        assert_eq!(row["fidelity"].as_f64(), Some(1.0));
    }
}

#[test]
fn evolve_revives() {
    let cfg = r#"{"state":{"family":"wz","epsilon":1,"delta":0,"theta":0.3,"l":0.2},"times":[1,12.566370614359172]}"#;
    let v = json(&["evolve"], cfg);
    assert!(rows(&v)[0]["fidelity"].as_f64().unwrap() < 0.999);
    assert!(rows(&v)[1]["fidelity"].as_f64().unwrap() >= 1.0 - 1e-12);
}

#[test]
fn kernel_forms_agree() {
    let v = json(&["kernel"], r#"{"epsilon":1,"delta":0.3,"t":0.7,"eta":1e-6,"points":16}"#);
    assert_eq!(rows(&v).len(), 16);
    for r in rows(&v) {
        let scale = r["series_re"].as_f64().unwrap().hypot(r["series_im"].as_f64().unwrap()).max(1.0);
        assert!(r["abs_diff"].as_f64().unwrap() < 1e-9 * scale);
    }
}

#[test]
fn output_is_deterministic() {
    let cfg = r#"{"state":{"family":"min","alpha":0.4,"l":2.25,"gamma":0.5,"s":1.5},"epsilon":1,"times":[0,0.1,0.2,0.3,0.4,0.5,0.6,0.7]}"#;
    let a = run(&["evolve", "--threads", "1"], cfg);
    let b = run(&["evolve", "--threads", "4"], cfg);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["verify", "e2"], "").stdout, run(&["verify", "e2"], "").stdout);
}

#[test]
fn csv_uses_seventeen_digits() {
    let r = run(&["table", "mincs-g"], "");
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("x,i1_over_i0,i1_over_x_i0,g,printed"));
    let first = lines.next().unwrap();
    let mantissa = first.split(',').nth(2).unwrap().split('e').next().unwrap();
    assert_eq!(mantissa, "5.0000000000000000");
}

#[test]
fn config_from_file_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("circleqm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("state.json");
    std::fs::write(&cfg, MIN).unwrap();
    let out = dir.join("out.csv");
    let r = run(&["state", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, run(&["state"], MIN).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_configs_exit_2() {
    let cases = [
        (vec!["state"], r#"{"family":"min","alpha":0,"l":1}"#, "`gamma`"),
        (vec!["state"], r#"{"family":"wz","epsilon":1,"delta":0,"theta":0,"l":0,"extra":1}"#, "`extra`"),
        (vec!["state"], r#"{"family":"wz","epsilon":0,"delta":0,"theta":0,"l":0}"#, "epsilon"),
        (vec!["state"], "not json", "config"),
        (vec!["state"], "", "no config"),
        (vec!["overlap"], &format!(r#"{{"a":{MIN},"b":{WZ}}}"#), "same family"),
        (vec!["evolve"], &format!(r#"{{"state":{MIN},"times":[0]}}"#), "`epsilon`"),
        (vec!["evolve"], &format!(r#"{{"state":{WZ},"times":[]}}"#), "`times`"),
        (vec!["kernel"], r#"{"epsilon":1,"delta":0,"t":1,"eta":0,"points":4}"#, "`eta`"),
        (vec!["table", "transition"], r#"{"epsilon":1,"delta":0.3}"#, "`theta`"),
        (vec!["state", "--tol", "2"], MIN, "--tol"),
    ];
    for (args, input, needle) in cases {
        let r = run(&args, input);
        assert_eq!(r.code, 2, "{args:?} {input}: {}", r.stderr);
        assert!(r.stderr.contains(needle), "{args:?}: {}", r.stderr);
    }
    assert_eq!(run(&["table", "nope"], "").code, 2);
    assert_eq!(run(&["bogus"], "").code, 2);
}
