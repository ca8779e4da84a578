use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/corpus/golden.txt");

fn lambek(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambek"))
        .args(args)
        .output()
        .expect("run lambek")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn exchange_is_not_provable_in_l() {
    let o = lambek(&["prove", "--level", "l", "a, b |- b * a"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not provable"));
}

#[test]
fn kappa_exchange_is_provable() {
    let o = lambek(&["prove", "--level", "lkappa", "k a, b |- b * k a"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("provable"));
    assert!(out.contains("E1"), "{out}");
}

#[test]
fn tiny_budget_is_indeterminate() {
    let o = lambek(&["prove", "--level", "lbang", "--budget", "1", "!a, b |- b * b"]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(code(&lambek(&["prove", "a, |- "])), 3);
    assert_eq!(code(&lambek(&["prove", "--level", "l", "!a |- a"])), 3);
    assert_eq!(code(&lambek(&["prove", "--level", "nope", "a |- a"])), 3);
    assert_eq!(code(&lambek(&["eval", "--model", "builtin:nope", "a |- a"])), 3);
    assert_eq!(code(&lambek(&["corpus", "/nonexistent/corpus.txt"])), 3);
    assert_eq!(code(&lambek(&["frobnicate"])), 3);
    assert_eq!(code(&lambek(&["--help"])), 0);
}

#[test]
fn prove_then_check_round_trip() {
    let o = lambek(&["prove", "--level", "lbang", "--sexp", "!a |- a * a"]);
    assert_eq!(code(&o), 0);
    let sexp = stdout(&o).lines().last().unwrap().to_string();
    let f = corpus_file(&sexp);
    assert_eq!(code(&lambek(&["check", "--level", "lbang", path(&f)])), 0);
    // contraction is not a rule of L
    assert_eq!(code(&lambek(&["check", "--level", "l", path(&f)])), 1);
    let bad = corpus_file("(rule Ax");
    assert_eq!(code(&lambek(&["check", path(&bad)])), 3);
}

#[test]
fn typecheck_and_normalize() {
    let o = lambek(&["typecheck", "x:a, y:b |- x * y"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(": a * b"));
    assert_eq!(code(&lambek(&["typecheck", "x:a, y:b |- y * x"])), 1);

    let o = lambek(&[
        "normalize",
        "--format",
        "machine",
        "y:a |- appl (\\l x:a. x) y",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "result=normal term=y steps=1 type=a\n");
    // ill-typed input is rejected before rewriting
    assert_eq!(code(&lambek(&["normalize", "x:a |- x * x"])), 3);
}

#[test]
fn trace_lines() {
    let o = lambek(&["normalize", "--trace", "f:b / a, y:a |- appl (\\l z:a. appl f z) y"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("BetaL @ root : (appl (var f) (var y))\n"));
}

#[test]
fn embed_preserves() {
    let o = lambek(&["embed", "--level", "lkappa", "x:k a, y:b |- exchl x, y with u, v in u * v"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("preserved"));
}

#[test]
fn eval_and_countermodel() {
    assert_eq!(code(&lambek(&["eval", "--model", "builtin:rel2", "a, b |- b * a"])), 1);
    assert_eq!(code(&lambek(&["eval", "--model", "builtin:two", "a, b |- b * a"])), 0);
    assert_eq!(code(&lambek(&["eval", "--model", "builtin:two", "--valuation", "a=0", "a, a |- a"])), 0);
    assert_eq!(code(&lambek(&["eval", "--model", "builtin:two", "--valuation", "b=0", "a |- a"])), 3);
    let o = lambek(&["countermodel", "a, b |- b * a"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("rel2"));
    assert_eq!(code(&lambek(&["countermodel", "a * b |- a * b"])), 0);
}

#[test]
fn model_file_is_accepted() {
    let text = "name: chain\nelements: lo hi\nunit: hi\nleq:\n  1 1\n  0 1\nop:\n  lo lo\n  lo hi\n";
    let f = corpus_file(text);
    let o = lambek(&["eval", "--model", path(&f), "a, a |- a"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("chain"));
    let bad = corpus_file("name: broken\nelements: x\n");
    assert_eq!(code(&lambek(&["eval", "--model", path(&bad), "a |- a"])), 3);
}

#[test]
fn golden_corpus_passes() {
    let o = lambek(&["corpus", GOLDEN]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed, 0 indeterminate"));
}

#[test]
fn flipped_expectation_fails_and_is_listed() {
    let f = corpus_file(
        "ok   l sequent a |- a => provable\n\
         flip l sequent a, b |- b * a => provable\n",
    );
    let o = lambek(&["corpus", "--format", "machine", path(&f)]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("id=flip line=2 kind=sequent result=fail"), "{out}");
    assert!(out.contains("id=ok line=1 kind=sequent result=pass"));
    assert!(out.ends_with("record=summary entries=2 passed=1 failed=1 indeterminate=0\n"));
}

#[test]
fn empty_corpus_passes() {
    let f = corpus_file("# nothing here\n\n");
    let o = lambek(&["corpus", "--format", "machine", path(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "record=summary entries=0 passed=0 failed=0 indeterminate=0\n");
}

#[test]
fn malformed_corpus_is_input_error() {
    let f = corpus_file("x l sequent a |- a\n");
    assert_eq!(code(&lambek(&["corpus", path(&f)])), 3);
}

#[test]
fn laws_on_two_pass() {
    let o = lambek(&["laws", "--model", "builtin:two", "--samples", "10"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

// On rel2 the `!` laws meet order-sensitive instances, so the run ends with
// a definite negative rather than a clean pass.
#[test]
fn laws_on_rel2_report_order_sensitivity() {
    let o = lambek(&["laws", "--model", "builtin:rel2", "--bound", "2", "--format", "machine"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    for line in out.lines() {
        let sensitive = line.contains("status=order-sensitive");
        assert_eq!(sensitive, line.contains("law=bang-"), "{line}");
        assert!(!line.contains("status=fail"), "{line}");
    }
}

#[test]
fn machine_output_is_deterministic() {
    let runs = |args: &[&str]| {
        let a = lambek(args);
        let b = lambek(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(code(&a), code(&b));
    };
    runs(&["corpus", "--format", "machine", GOLDEN]);
    runs(&["laws", "--model", "builtin:rel2", "--samples", "8", "--format", "machine"]);
    runs(&["countermodel", "--format", "machine", "--seed", "7", "a, b |- b * a"]);
    // the sequential and parallel paths agree
    let par = lambek(&["corpus", "--format", "machine", GOLDEN]);
    let seq = lambek(&["corpus", "--format", "machine", "--sequential", GOLDEN]);
    assert_eq!(par.stdout, seq.stdout);
}

#[test]
fn parse_round_trips_sequents() {
    for s in ["a, b |- b * a", "(a \\ b) / c |- a \\ (b / c)", "k a, !b |- !b * k a", "|- I"] {
        let o = lambek(&["parse", "--format", "machine", s]);
        assert_eq!(code(&o), 0, "{s}");
        let out = stdout(&o);
        let render = out.split("render=\"").nth(1).unwrap().split('"').next().unwrap();
        let render = render.replace("\\\\", "\\");
        let again = lambek(&["parse", "--format", "machine", &render]);
        assert_eq!(stdout(&again), out);
    }
    assert!(Path::new(GOLDEN).exists());
}
