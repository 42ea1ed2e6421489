use std::process::{Command, Output};

fn submon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_submon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_csv_and_json() {
    let out = submon(&["count", "--monoid", "chain:1 x chain:1", "--n", "2", "--oracle"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,S_n\n0,7\n1,61\n2,449\n");

    let out = submon(&["count", "--monoid", "cyclic:2", "--n", "1", "--format", "json"]);
    assert_eq!(stdout(&out), "{\"counts\":[\"2\",\"5\"]}\n");

    let out = submon(&["count", "--monoid", "chain:0", "--n", "5"]);
    assert_eq!(stdout(&out), "n,S_n\n0,1\n1,2\n2,4\n3,8\n4,16\n5,32\n");
}

#[test]
fn spectrum_rows() {
    let out = submon(&["spectrum", "--monoid", "chain:1 x chain:1"]);
    assert_eq!(
        stdout(&out),
        "lambda,b,normalized\n2,1/2,4\n3,1,-3\n4,-12,-48\n6,35/2,-420\n"
    );
    let out = submon(&["spectrum", "--monoid", "mk:3"]);
    assert!(stdout(&out).contains("\n4,0,0\n"));
    let out = submon(&["spectrum", "--monoid", "n5"]);
    let lambdas: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(lambdas, ["2", "3", "4", "5", "6", "8"]);
}

#[test]
fn exit_codes() {
    assert_eq!(submon(&["count", "--monoid", "nonsense", "--n", "1"]).status.code(), Some(2));
    assert_eq!(submon(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(submon(&["count", "--monoid", "cyclic:21", "--n", "1"]).status.code(), Some(3));
    assert_eq!(
        submon(&["count", "--monoid", "chain:3", "--n", "3", "--oracle", "--max-oracle-size", "4"])
            .status
            .code(),
        Some(0),
        "the oracle only checks what fits in its budget"
    );
    assert_eq!(submon(&["verify", "oracle", "--monoid", "chain:3", "--n", "9"]).status.code(), Some(3));
    assert_eq!(submon(&["spectrum", "--monoid", "cyclic:2"]).status.code(), Some(4));
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "appendix"],
        vec!["verify", "transfer-iso", "--monoid", "chain:1 x chain:1"],
        vec!["verify", "oracle", "--monoid", "chain:2", "--n", "2"],
        vec!["verify", "triangular"],
        vec!["verify", "recurrence"],
        vec!["verify", "closed-forms"],
    ] {
        let out = submon(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).ends_with("passed\n"));
    }
}

#[test]
fn other_commands() {
    let out = submon(&["matrix", "--monoid", "chain:1"]);
    assert_eq!(stdout(&out), "submonoid,0x1,0x3\n0x1,2,0\n0x3,2,3\n");
    let out = submon(&["ogf", "--monoid", "chain:1"]);
    assert_eq!(stdout(&out), "(2 - 3x)/((1 - 2x)(1 - 3x))\n");
    let out = submon(&["polybernoulli", "--m", "9", "--n", "9"]);
    assert_eq!(stdout(&out), "m,n,B\n9,9,44222780245622\n");
    let out = submon(&["sattr", "--monoid", "chain:1", "--n", "2"]);
    assert_eq!(stdout(&out), "n,S_n\n0,2\n1,7\n2,23\n");
    let out = submon(&["sattr", "--monoid", "chain:1", "--list"]);
    assert_eq!(stdout(&out), "[{\"size\":2,\"pairs\":[]},{\"size\":2,\"pairs\":[[0,1]]}]\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["--jobs", "3", "matrix", "--monoid", "mk:3", "--format", "json"];
    assert_eq!(stdout(&submon(&args)), stdout(&submon(&args)));
}
