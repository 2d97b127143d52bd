use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ylab(args: &[&str]) -> Output {
    ylab_with(args, None, None)
}

fn ylab_with(args: &[&str], stdin: Option<&str>, cache_env: Option<&Path>) -> Output {
    use std::io::Write;
    use std::process::Stdio;
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ylab"));
    cmd.args(args).env_remove("YLAB_CACHE");
    if let Some(dir) = cache_env {
        cmd.env("YLAB_CACHE", dir);
    }
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn build_from_json_spec() {
    let out = ylab_with(&["build", "--input", "-"], Some(r#"{"n":2,"m":2,"mu":["0","0"],"nu":[2,1]}"#), None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["lambda_bar"], serde_json::json!(["2", "1"]));
    assert_eq!(v["lambda_bar_dominant"], true);
}

#[test]
fn build_rejects_large_nu() {
    let out = ylab(&["build", "--n", "2", "--nu", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "invalid_input");
    let out = ylab(&["build", "--n", "2", "--nu", "1", "--mu", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_covector_power() {
    let out = ylab(&["build", "--n", "2", "--m", "1", "--mu", "0", "--nu", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["eps"], serde_json::json!([-1]));
}

#[test]
fn intertwine_outputs() {
    let out = ylab(&["intertwine", "--n", "2", "--nu", "2,1,1", "--mu", "0,1/2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["highest_vector_ok"], true);
    assert_eq!(v["word"], serde_json::json!([1, 2, 1]));

    let out = ylab(&["intertwine", "--n", "3", "--nu", "2", "--mu", "1/2"]);
    let v = json_of(&out);
    assert_eq!(v["intertwiner"]["matrix"], serde_json::json!([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]));

    let out = ylab(&["intertwine", "--n", "2", "--nu", "1,2"]);
    assert_eq!(out.status.code(), Some(3));
    let e = stderr_json(&out);
    assert_eq!((e["a"].clone(), e["b"].clone()), (1.into(), 2.into()));

    let out = ylab(&["intertwine", "--n", "2", "--nu", "1,1,1", "--word", "1,1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = ylab(&["verify", "--suite", "rtt", "--n", "2", "--nu", "1,-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["pass"], true);

    let out = ylab(&["verify", "--suite", "rtt", "--n", "2", "--nu", "1,-1", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ylab(&["verify", "--suite", "eigen", "--n", "3", "--nu", "2,1"]);
    assert_eq!(out.status.code(), Some(0));

    for suite in ["intertwine", "words", "lemma41", "drinfeld"] {
        let out = ylab(&["verify", "--suite", suite, "--n", "2", "--nu", "1,-1,2", "--mu", "2,1/2,0"]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", String::from_utf8_lossy(&out.stdout));
    }

    let out = ylab(&["verify", "--suite", "iso", "--n", "3", "--nu", "-2", "--mu", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn composite_suite_reports_counters() {
    let out = ylab(&["verify", "--suite", "composite", "--n", "3", "--nu", "-1,2,-3", "--mu", "1/2,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["counters"]["K"], 1);
    assert_eq!(v["counters"]["L"], -3);
    assert_eq!(v["counters"]["M"], 7);

    // the counter sign (-1)^(K+L) is wrong here; the failure carries the data
    let out = ylab(&["verify", "--suite", "composite", "--n", "2", "--nu", "1,-1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["analysis"]["composite_sign"], 1);
    assert_eq!(v["analysis"]["counter_sign"], -1);
}

#[test]
fn drinfeld_realize_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let out = ylab(&["drinfeld", "--n", "2", "--nu", "1,-2", "--mu", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let data_path = dir.path().join("data.json");
    std::fs::write(&data_path, v["data"].to_string()).unwrap();

    let out = ylab(&["realize", "--input", data_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let spec = json_of(&out)["spec"].clone();
    let spec_path = dir.path().join("spec.json");
    std::fs::write(&spec_path, spec.to_string()).unwrap();
    let out = ylab(&["drinfeld", "--input", spec_path.to_str().unwrap()]);
    assert_eq!(json_of(&out)["data"], v["data"]);

    let out = ylab(&["reduce", "--n", "2", "--nu", "1,-2", "--mu", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["reduced"], serde_json::json!([[-1, "0"]]));
    assert_eq!(r["data_preserved"], true);
}

#[test]
fn output_is_deterministic_and_cached() {
    let args = ["verify", "--suite", "intertwine", "--n", "2", "--nu", "2,1,1", "--mu", "0,1/2,1"];
    let a = ylab(&args);
    let b = ylab(&args);
    assert_eq!(a.stdout, b.stdout);

    let cache = tempfile::tempdir().unwrap();
    let dir = cache.path().to_str().unwrap();
    let mut cached_args = args.to_vec();
    cached_args.extend(["--cache-dir", dir]);
    let first = ylab(&cached_args);
    let files: Vec<_> = std::fs::read_dir(cache.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = ylab(&cached_args);
    assert_eq!(first.stdout, a.stdout);
    assert_eq!(second.stdout, a.stdout);
    assert_eq!(second.status.code(), Some(0));

    // the environment variable wins over the flag
    let other = tempfile::tempdir().unwrap();
    let out = ylab_with(&cached_args, None, Some(other.path()));
    assert_eq!(out.stdout, a.stdout);
    assert_eq!(std::fs::read_dir(other.path()).unwrap().count(), 1);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = ylab(&["build", "--n", "2", "--nu", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with('\n'));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["dim"], 2);
}
