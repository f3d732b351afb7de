use super::*;
use crate::tm::samples;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with(std::iter::once("indeplab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn trace_of_halt_only_is_one_line() {
    let lines = trace_run(&samples::halt_only(), &"101".parse().unwrap(), 100);
    assert_eq!(lines, vec!["Halted steps=0 output=101"]);
}

#[test]
fn trace_of_move_right() {
    let lines = trace_run(&samples::move_right(), &"11".parse().unwrap(), 100);
    // off the left end, over two ones, then the blank
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("step 0: state=") && lines[0].ends_with("read=> write=> move=R"));
    assert!(lines[1].contains("head=1 read=1 write=1 move=R"));
    assert_eq!(lines[4], "Halted steps=4 output=11");
}

#[test]
fn trace_truncates_at_budget() {
    let lines = trace_run(&samples::self_loop(), &BinaryString::empty(), 3);
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3], "Budget-Exhausted steps=3");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["run"]).0, 2);
    let (code, _, err) = cli(&["build-o", "O(machine=@halt-only)"]);
    assert_eq!(code, 2);
    assert!(err.contains("O(machine=..., w=...)"), "{err}");
    assert_eq!(cli(&["run", "@halt-only", "--input", "12"]).0, 2);
    assert_eq!(cli(&["verify", "--suite", "nope"]).0, 2);
}

#[test]
fn domain_errors_exit_one() {
    let (code, _, err) = cli(&["run", "/nonexistent/machine.tm"]);
    assert_eq!(code, 1);
    assert!(err.contains("/nonexistent/machine.tm"));
    assert_eq!(cli(&["run", "@ping-pong", "--trace", "--budget", "4"]).0, 0);
    assert_eq!(cli(&["run", "@halt-only"]).1, "Halted steps=0 output=\n");
}

#[test]
fn run_reports_match_library() {
    let (code, out, _) = cli(&["run", "@halt-only", "--input", "101", "--budget", "1000"]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("{}\n", run_bounded(&samples::halt_only(), &"101".parse().unwrap(), 1000)));
}

#[test]
fn tmo_dump_format() {
    assert_eq!(tmo_line(3, true, 9, false), "3\tmember:1\tT:9\tf:0");
    let (code, out, _) = cli(&["tmo", "@halt-only", "--to", "2"]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn seed_code_argument() {
    let m0 = Machine::threshold(Machine::Raw(samples::self_loop()), BinaryString::empty());
    assert_eq!(parse_seed(&m0, "10=50").unwrap().code, 10);
    assert!(matches!(parse_seed(&m0, "10"), Err(CliError::Usage(_))));
}
