use std::process::{Command, Output};

fn latori(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latori")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    latori(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(latori(args).stdout).unwrap()
}

#[test]
fn classify_listed_group() {
    assert_eq!(code(&["classify", "C9xD5"]), 0);
    assert!(stdout(&["classify", "C9xD5"]).contains("classification list true"));
}

#[test]
fn tower_all_true() {
    let out = latori(&["tower", "D15", "--n", "15"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("all true"));
}

#[test]
fn unknown_class_group_is_inconclusive() {
    assert_eq!(code(&["classgroup", "SD32"]), 3);
    assert_eq!(code(&["classgroup", "D9"]), 0);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["bogus"]), 1);
    assert_eq!(code(&["group", "D4", "--frobnicate"]), 1);
    assert_eq!(code(&["group", "X7"]), 1);
    assert_eq!(code(&["lattice", "D3", "--kind", "perm=rho"]), 1);
    assert!(latori(&["bogus"]).stdout.is_empty());
}

#[test]
fn structured_output_is_deterministic() {
    for args in [
        &["group", "Q12", "--format", "structured"][..],
        &["resolve", "C2", "--kind", "sign", "--format", "structured"],
        &["classgroup", "C23", "--format", "structured"],
    ] {
        let a = stdout(args);
        assert_eq!(a, stdout(args));
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["exit_code"], 0);
    }
}

#[test]
fn lattice_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("latori-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("perm.json");
    std::fs::write(&path, stdout(&["lattice", "D3", "--kind", "perm=tau"])).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&["cohomology", "--lattice", p]), 0);
    assert!(stdout(&["cohomology", "--lattice", p]).contains("flabby: true, coflabby: true"));
    assert_eq!(code(&["tower", "D5", "--lattice", p]), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn class_number_table_audit() {
    let dir = std::env::temp_dir().join(format!("latori-tsv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.tsv");
    let bad = dir.join("bad.tsv");
    std::fs::write(&good, "m\th_minus\th_plus_status\tsource\n23\t3\tKnown(1)\tref\n").unwrap();
    std::fs::write(&bad, "m\th_minus\th_plus_status\tsource\n23\t4\tKnown(1)\tref\n").unwrap();
    assert_eq!(code(&["classgroup", "C23", "--table", good.to_str().unwrap()]), 0);
    assert_eq!(code(&["classgroup", "C23", "--table", bad.to_str().unwrap()]), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_single_criterion() {
    let out = stdout(&["selftest", "--criterion", "12"]);
    assert!(out.starts_with("PASS 12"));
}
