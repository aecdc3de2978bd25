use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subprofile")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn expand_examples() {
    let o = run(&["expand", "hn", "--n", "2", "--to", "W"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{(2): 1, (1,1): -t}");
    assert_eq!(stdout(&run(&["expand", "W", "--part", "[2]", "--to", "s"])), "{(2): 1, (1,1): t}");
    assert_eq!(stdout(&run(&["expand", "pn", "--n", "1", "--to", "m"])), "{(1): 1}");
}

#[test]
fn expand_flag_generating_function() {
    let o = run(&["expand", "flaggf", "--type", "[[1,[1]]]", "--to", "m"]);
    assert_eq!(stdout(&o), "{(1): 1}");
}

#[test]
fn profile_examples() {
    assert_eq!(stdout(&run(&["profile", "--type", "[[1,[2]]]", "--mu", "[1,1]"])), "t");
    assert_eq!(stdout(&run(&["profile", "--type", "[[2,[1]]]", "--mu", "[1,1]", "--at-prime", "2"])), "3");
    assert_eq!(stdout(&run(&["profile", "--type", r#"{"blocks":[{"d":2,"lambda":[1]}]}"#, "--mu", "[]"])), "1");
}

#[test]
fn json_output() {
    let o = run(&["profile", "--type", "[[1,[2]]]", "--mu", "[1,1]", "--at-prime", "3", "--json", "-"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "3");
    assert_eq!(v["query"], serde_json::json!([1, 1]));

    let dir = std::env::temp_dir().join(format!("subprofile-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ty = dir.join("type.json");
    std::fs::write(&ty, r#"{"blocks":[{"d":1,"lambda":[1]},{"d":1,"lambda":[1]}]}"#).unwrap();
    let out = dir.join("table.json");
    let o = run(&["profile-table", "--type", ty.to_str().unwrap(), "--json", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn counting_commands() {
    assert_eq!(stdout(&run(&["krylov", "--type", "[[1,[2]]]", "--k", "1", "--l", "2", "--at-prime", "2"])), "1/2");
    assert_eq!(stdout(&run(&["krylov", "--type", "[[1,[1,1]]]", "--k", "2", "--l", "1", "--at-prime", "2"])), "3/8");
    assert_eq!(stdout(&run(&["partial", "--type", "[[1,[2]]]", "--rho", "[1]"])), "1 + t");
    assert_eq!(stdout(&run(&["anti-invariant", "--type", "[[1,[3]]]", "--m", "1", "--fold", "1"])), "t + t^2");
}

#[test]
fn verify_and_selftest() {
    let o = run(&["verify", "sigma", "--max-n", "3", "--primes", "2,3", "--json", "-"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["counterexample"].is_null());
    assert!(run(&["verify", "identities", "--max-n", "4"]).status.success());
    assert!(run(&["verify", "krylov", "--max-n", "2", "--primes", "2"]).status.success());
    assert!(run(&["selftest"]).status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["profile", "--type", "[[1,[2]]]", "--mu", "[3]"]).status.code(), Some(2));
    assert_eq!(run(&["profile", "--type", "not json", "--mu", "[1]"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "nosuch", "--part", "[1]"]).status.code(), Some(2));
    assert_eq!(run(&["profile", "--type", "[[1,[1]],[1,[1]],[1,[1]]]", "--mu", "[1]", "--at-prime", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "sigma", "--primes", "4"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "hn", "--n", "30"]).status.code(), Some(4));
    assert_eq!(run(&["verify", "sigma", "--max-n", "9", "--primes", "2"]).status.code(), Some(4));
}
