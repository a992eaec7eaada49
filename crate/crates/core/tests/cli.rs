use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lintrans")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

#[test]
fn translate_and_simplify() {
    assert_eq!(stdout(&["translate", "--translation", "kolm-outer", "(P & Q) * R"]), "~~(~~(~~P & ~~Q) * ~~R)\n");
    assert_eq!(stdout(&["simplify", "--simplification", "gg-from-kolm", "~~(~~(~~P & ~~Q) * ~~R)"]), "(~~P & ~~Q) * ~~R\n");
    assert_eq!(
        stdout(&["simplify", "--simplification", "gg-from-kolm", "--strategy", "inside", "~~(~~(~~P & ~~Q) * ~~R)"]),
        "~~((~~P & ~~Q) * ~~R)\n"
    );
    assert_eq!(stdout(&["--format", "records", "translate", "--translation", "gg", "P + Q"]), "input=P + Q\ttranslation=gg\toutput=~~(~~P + ~~Q)\n");
    assert_eq!(stdout(&["translate", "--translation", "dagger", "--from", "il", "P /\\ Q"]), "P & Q\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["translate", "--translation", "gg", "P"]), 0);
    assert_eq!(code(&["prove", "--theory", "ill", "--expect", "proved", "P |- P"]), 0);
    assert_eq!(code(&["prove", "--theory", "ill", "--expect", "unprovable", "P |- P"]), 1);
    assert_eq!(code(&["prove", "--theory", "ill", "--expect", "proved", "~~P |- P"]), 1);
    assert_eq!(code(&["prove", "--theory", "cllb", "--expect", "proved", "~~P |- P"]), 0);
    assert_eq!(code(&["refute", "--theory", "ill", "--max-size", "3", "P |- P * P"]), 0);
    assert_eq!(code(&["refute", "--theory", "ill", "--max-size", "3", "--expect", "none", "P |- P * P"]), 1);
    assert_eq!(code(&["refute", "--theory", "ill", "--max-size", "3", "P |- P"]), 3);
    assert_eq!(code(&["prove", "P |-"]), 2);
    assert_eq!(code(&["translate", "--translation", "nope", "P"]), 2);
    assert_eq!(code(&["translate", "--translation", "gg", "--from", "il", "P"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn errors_go_to_stderr() {
    let o = run(&["prove", "P &"]);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8(o.stderr).unwrap().contains("byte"));
}

#[test]
fn input_file() {
    let path = std::env::temp_dir().join("lintrans_cli_input.txt");
    std::fs::write(&path, "P * Q\n\nP -o Q\n").unwrap();
    let out = stdout(&["translate", "--translation", "kolm-outer", "--input", path.to_str().unwrap()]);
    assert_eq!(out, "~~(~~P * ~~Q)\n~~(~~P -o ~~Q)\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["corpus", "--count", "20", "--seed", "4"][..],
        &["refute", "--theory", "ill", "--max-size", "4", "~~P |- P"][..],
        &["prove", "--show-proof", "--theory", "ilb", "A & B |- A * B"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
