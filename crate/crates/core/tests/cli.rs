use std::process::{Command, Output};

fn qks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qks")).args(args).output().expect("qks runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["scan", "--case", "ii", "--samples", "4", "--seed", "9", "--format", "json"];
    let a = qks(&args);
    let b = qks(&args);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["case", "params", "seed", "conductor", "points", "verdict", "expected_d", "pass"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["case"], "ii");
    assert_eq!(v["seed"], 9);
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
    for p in v["points"].as_array().unwrap() {
        for key in ["values", "fiber_dim", "certificate", "d"] {
            assert!(p.get(key).is_some(), "point missing {key}");
        }
    }
}

#[test]
fn different_seeds_draw_different_points() {
    let a = qks(&["scan", "--case", "0", "--samples", "3", "--seed", "1", "--format", "json"]);
    let b = qks(&["scan", "--case", "0", "--samples", "3", "--seed", "2", "--format", "json"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("qks-cli-{}.json", std::process::id()));
    let args = ["center", "--case", "iv", "--degree", "4", "--format", "json"];
    let direct = qks(&args);
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let written = qks(&with_out);
    assert_eq!(code(&written), 0);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(code(&qks(&["scan", "--case", "i", "--samples", "2"])), 0);
    assert_eq!(code(&qks(&["scan", "--case", "iv"])), 2);
    assert_eq!(code(&qks(&["auslander", "--case", "0", "--degree", "2", "--guard", "4"])), 1);
    assert_eq!(code(&qks(&["scan", "--case", "iv", "--localization", "torus"])), 3);
    assert_eq!(code(&qks(&["fiber", "--case", "ii", "--point", "x=1"])), 3);
    assert_eq!(code(&qks(&["scan", "--case", "vii"])), 3);
    assert_eq!(code(&qks(&["--help"])), 0);
}

#[test]
fn human_fiber_report() {
    let out = qks(&["fiber", "--case", "0", "--localization", "none", "--point", "x=2,y=1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("not-central-simple"), "{text}");
}

#[test]
fn every_subcommand_runs() {
    for args in [
        vec!["invariants", "--case", "iii", "--n", "3", "--degree", "6"],
        vec!["molien", "--case", "iii", "--m", "2", "--degree", "8"],
        vec!["freeness", "--case", "ii", "--localization", "torus", "--samples", "3"],
        vec!["rank", "--case", "i", "--samples", "3"],
        vec!["scan", "--case", "ii", "--samples", "2", "--timings", "--format", "json"],
    ] {
        let out = qks(&args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty());
    }
}
