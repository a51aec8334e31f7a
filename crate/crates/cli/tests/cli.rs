use serde_json::Value;
use std::io::Write;
use std::process::{Command, Stdio};

fn twistq(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_twistq")).args(args).output().unwrap();
    let mut s = String::from_utf8(o.stdout).unwrap();
    s.push_str(&String::from_utf8(o.stderr).unwrap());
    (o.status.code().unwrap(), s)
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out) = twistq(&a);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn a2_2_second_kr_module() {
    let v = json(&["qchar", "--type", "A2-2", "--node", "0", "--k", "2"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 6);
    assert_eq!(v["dimension"], "6");
    assert_eq!(v["special"], true);
}

#[test]
fn e6_2_node_4() {
    let v = json(&["qchar", "--type", "E6-2", "--node", "4", "--k", "1"]);
    assert_eq!(v["distinct_monomials"], 78);
    assert_eq!(v["dimension"], "79");
}

#[test]
fn tsystem_exit_codes() {
    assert_eq!(twistq(&["tsystem", "--type", "D4-3", "--node", "2", "--k", "1"]).0, 0);
    let (code, out) = twistq(&["tsystem", "--type", "A2-2", "--node", "0", "--k", "3", "--sweep"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn usage_and_engine_errors() {
    assert_eq!(twistq(&["qchar", "--type", "B3", "--node", "1"]).0, 2);
    assert_eq!(twistq(&["qchar", "--type", "A2-2", "--node", "7"]).0, 2);
    assert_eq!(twistq(&["qchar", "--type", "A2-2", "--engine", "nope"]).0, 2);
    assert_eq!(twistq(&["qchar", "--type", "A2-2", "--shift", "q^x"]).0, 2);
    assert_eq!(twistq(&["frobnicate"]).0, 2);
    let (code, out) = twistq(&["qchar", "--type", "E6-2", "--node", "3", "--budget", "10"]);
    assert_eq!(code, 3, "{out}");
    assert_eq!(twistq(&["tableaux", "--type", "E6-2", "--node", "1"]).0, 3);
}

#[test]
fn engines_agree() {
    for (ty, node) in [("A4-2", "0"), ("D4-3", "1"), ("A3-2", "2")] {
        let (code, out) = twistq(&["qchar", "--type", ty, "--node", node, "--k", "2", "--engine", "all"]);
        assert_eq!(code, 0, "{ty} {out}");
    }
}

#[test]
fn screen_round_trip() {
    let v = json(&["qchar", "--type", "A4-2", "--node", "1", "--k", "2"]);
    let ch = serde_json::json!({"terms": v["terms"]});
    let run = |doc: &Value| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_twistq"))
            .args(["screen", "--type", "A4-2"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        c.stdin.take().unwrap().write_all(doc.to_string().as_bytes()).unwrap();
        c.wait().unwrap().code().unwrap()
    };
    assert_eq!(run(&ch), 0);
    let mut broken = ch.clone();
    broken["terms"].as_array_mut().unwrap().pop();
    assert_eq!(run(&broken), 1);
}

#[test]
fn deterministic_output() {
    let args = ["qchar", "--type", "D4-3", "--node", "2", "--k", "1", "--format", "json"];
    assert_eq!(twistq(&args), twistq(&args));
}

#[test]
fn branch_and_qsystem() {
    let v = json(&["branch", "--type", "A4-2", "--node", "1", "--k", "1", "--side", "tilde"]);
    let parts: Vec<(Value, Value)> = v.as_array().unwrap().iter().map(|x| (x["weight"].clone(), x["multiplicity"].clone())).collect();
    assert_eq!(parts.len(), 2);
    let v = json(&["branch", "--type", "A4-2", "--node", "1", "--k", "1", "--side", "bar"]);
    assert_eq!(v.as_array().unwrap().len(), 1);
    for side in ["tilde", "bar"] {
        let v = json(&["qsystem", "--type", "D4-3", "--node", "1", "--k", "2", "--side", side]);
        assert_eq!(v["holds"], true);
    }
}

#[test]
fn fermionic_and_dims() {
    let v = json(&["fermionic", "--type", "A2-2", "--nu", "0:1:1,0:2:1", "--side", "tilde"]);
    assert_eq!(v["holds"], true);
    assert_eq!(twistq(&["fermionic", "--type", "A2-2", "--nu", "0:0:1"]).0, 2);
    let v = json(&["dims", "--type", "E6-2", "--k", "1", "--budget", "100000"]).as_array().unwrap().len();
    assert_eq!(v, 4);
}

#[test]
fn tableaux_and_strings() {
    let (code, out) = twistq(&["tableaux", "--type", "D4-3", "--node", "2", "--k", "1", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 29);
    let v = json(&["tableaux", "--type", "A4-2", "--node", "0", "--k", "2"]);
    let w = json(&["qchar", "--type", "A4-2", "--node", "0", "--k", "2"]);
    assert_eq!(v["terms"], w["terms"]);
    let v = json(&["string", "--type", "A2-2", "--node", "0", "--k", "1"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    let (_, latex) = twistq(&["qchar", "--type", "A4-2", "--node", "1", "--format", "latex"]);
    assert!(latex.contains("Z_{1,-aq^5}^{-1}"));
}
