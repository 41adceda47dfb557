//! The `qsym` binary end to end: outputs, exit codes and report shape.

use serde_json::Value;
use std::process::{Command, Output};

fn qsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsym")).args(args).env_remove("QSYM_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn compute_examples() {
    let o = qsym(&["compute", "bernoulli", "--n", "0"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "L/(q-1)\n"));
    let o = qsym(&["compute", "powersum", "--k", "2", "--n", "2"]);
    assert_eq!(stdout(&o), "q + 4*q^2\n");
    let o = qsym(&["compute", "bernoulli", "--n", "1", "--rebase", "2", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["value"], "(-1 + q^2 - 2*q^2*L)/((q-1)^2*(q+1)^2)");
    assert_eq!(v["l_coefficient"], "-2*q^2/((q-1)^2*(q+1)^2)");
    let o = qsym(&["compute", "poly", "--n", "1"]);
    assert!(stdout(&o).contains("*x"));
}

#[test]
fn verify_exit_codes_and_flags() {
    let o = qsym(&["verify", "--family", "F1", "--n-max", "2", "--w", "1,1,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["summary"]["total"], 1);
    assert_eq!(v["results"][0]["status"], "pass");
    assert!(v["results"][0]["millis"].is_null());

    let o = qsym(&["verify", "--family", "F5", "--n-max", "3", "--w-max", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let flagged = v["results"].as_array().unwrap().iter().filter(|r| !r["flags"].as_array().unwrap().is_empty()).count();
    assert!(flagged > 0);

    let o = qsym(&["verify", "--family", "F2,F6", "--n-max", "3", "--w", "1,2,3", "--inject-fault", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["summary"]["failed"], 2);
    assert_eq!(v["results"][0]["mismatch"]["monomial"], "1");
}

#[test]
fn corollary_and_chain_selection() {
    let o = qsym(&["verify", "--corollary", "F4@w2=w3=1", "--chain", "--n-max", "4", "--w-max", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert!(rows[0].starts_with("suite,id,params,status"));
    // two corollary points (w1 = 1, 2) and four chain points
    assert_eq!(rows.len(), 1 + 2 + 4);
    assert!(rows[1..].iter().all(|r| r.contains(",pass,")));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--bogus"][..],
        &["verify", "--family", "F9"],
        &["verify", "--w", "1,0,2"],
        &["padic", "--q", "1"],
        &["padic", "--p", "4"],
        &["padic", "--q", "2"],
        &["compute", "bernoulli", "--n", "2", "--rebase", "0"],
        &["limit", "--format", "yaml"],
        &[],
    ] {
        assert_eq!(qsym(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn padic_and_limit() {
    let o = qsym(&["padic", "--p", "3", "--q", "4", "--n-max", "0", "--N", "1,2,3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let moment = v["results"].as_array().unwrap().iter().find(|r| r["suite"] == "padic-moment").unwrap();
    assert!(moment["detail"].as_str().unwrap().contains("2,3,4"));
    let o = qsym(&["limit", "--n-max", "12"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn reports_do_not_depend_on_threads() {
    let dir = std::env::temp_dir();
    let a = dir.join(format!("qsym-{}-a.json", std::process::id()));
    let b = dir.join(format!("qsym-{}-b.json", std::process::id()));
    let base = ["crosscheck", "--order", "4", "--w-max", "2", "--geometric-w-max", "3", "--format", "json", "--out"];
    let mut args1 = base.to_vec();
    let a_s = a.to_str().unwrap();
    args1.extend([a_s, "--threads", "1"]);
    assert_eq!(qsym(&args1).status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_qsym"))
        .args(base)
        .arg(&b)
        .env("QSYM_THREADS", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = (std::fs::remove_file(&a), std::fs::remove_file(&b));
    assert_eq!(x, y);
}

#[test]
fn timings_are_opt_in() {
    let o = qsym(&["limit", "--n-max", "4", "--format", "json", "--timings"]);
    assert!(json(&o)["results"][0]["millis"].is_u64());
}
