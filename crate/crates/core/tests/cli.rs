//! The `unihom` binary: flags, exit codes and output formats.

use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_unihom");

fn config_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("unihom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const PAD: &str = "# corner embedding\nsource = M2\ntarget = M3\nhom = pad(1)\nseed = 7\ntrials = 5\n";

#[test]
fn analysis_text_and_json() {
    let path = config_file("pad.conf", PAD);
    let p = path.to_str().unwrap();
    let text = run(&["--config", p]);
    assert_eq!(code(&text), 0, "{}", String::from_utf8_lossy(&text.stderr));
    let out = String::from_utf8(text.stdout).unwrap();
    assert!(out.contains("0.666667") && out.trim_end().ends_with("PASS"));

    let json = run(&["--config", p, "--format", "json"]);
    assert_eq!(code(&json), 0);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["analysis"]["config"]["seed"], 7);
    assert!(v.get("timing").is_none());
    let lambda = &v["analysis"]["results"]["lambda"];
    assert_eq!(lambda["status"], "ok");
    let entry = lambda["value"]["lambda"]["matrix"][0][0].as_f64().unwrap();
    assert!((entry - 2.0 / 3.0).abs() < 1e-9);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let path = config_file("repeat.conf", PAD);
    let args = ["--config", path.to_str().unwrap(), "--format", "json", "--corpus"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn flags_override_the_config() {
    let path = config_file("override.conf", PAD);
    let o = run(&["--config", path.to_str().unwrap(), "--format", "json", "--seed", "99", "--trials", "2", "--tol", "1e-5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let c = &v["analysis"]["config"];
    assert_eq!((c["seed"].as_u64(), c["trials"].as_u64(), c["tol"].as_f64()), (Some(99), Some(2), Some(1e-5)));
}

#[test]
fn failing_checks_exit_2() {
    let path = config_file("tight.conf", "source = M2\nhom = pad(1)\nanalyses = thomsen, stone\ntol = 1e-300\n");
    let o = run(&["--config", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stdout).unwrap().trim_end().ends_with("FAIL"));
}

#[test]
fn config_errors_exit_3() {
    let cases = [
        ("unknown.conf", "source = M2\nhom = pad(1)\ncolour = red\n", "line 3"),
        ("badhom.conf", "source = M2\nhom = power(2)\n", "line 2"),
        ("target.conf", "source = M2\ntarget = M4\nhom = pad(1)\n", "line 2"),
        ("gl.conf", "source = M1\nhom = modtwist(0.5, 0.1)\n", "mode = gl"),
    ];
    for (name, body, needle) in cases {
        let o = run(&["--config", config_file(name, body).to_str().unwrap()]);
        assert_eq!(code(&o), 3, "{name}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.contains(needle), "{name}: {err}");
    }
    assert_eq!(code(&run(&["--config", "/nonexistent/unihom.conf"])), 3);
    assert_eq!(code(&run(&[])), 3);
    assert_eq!(code(&run(&["--corpus", "--tol", "-1"])), 3);
    assert_eq!(code(&run(&["--bogus"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn gl_mode_config() {
    let path = config_file("twist.conf", "source = M1\nmode = gl\nhom = modtwist(0.5, -0.3) . power(1)\n");
    let o = run(&["--config", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let g = &v["analysis"]["results"]["gl"]["value"];
    assert_eq!(g["c_linear"], false);
    assert!((g["matrix"][1][1].as_f64().unwrap() - 1.3).abs() < 1e-8);
}

#[test]
fn corpus_flag() {
    let o = run(&["--corpus", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["corpus"]["cases"].as_array().unwrap().len(), 7);
    assert_eq!(v["corpus"]["self_test_detected"], true);
}
