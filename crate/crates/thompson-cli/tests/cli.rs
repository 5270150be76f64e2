//! End-to-end runs of the `thompson` binary on small files.

use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;
use thompson::genwords::tau_word_over_finite_gens;
use thompson_cli::formats::{parse_factorization, parse_generator_set, parse_table, write_genword};

const OR_CKT: &str = "inputs 2\ngate g OR in.0 in.1\noutputs g\n";
const OR_SWAPPED_CKT: &str = "inputs 2\ngate g OR in.1 in.0\noutputs g\n";
const AND_CKT: &str = "inputs 2\ngate g AND in.0 in.1\noutputs g\n";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn thompson(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_thompson")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn wp_of_cancelling_pair_is_identity() {
    let dir = TempDir::new().unwrap();
    let gw = file(&dir, "kk.gw", "K K'\n");
    let r = thompson(&["wp", s(&gw)]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "identity-proven\n"));
    let r = thompson(&["wp", s(&gw), "--method", "witness", "--cap", "200"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "identity-proven\n"));
    let r = thompson(&["wp", s(&gw), "--method", "witness", "--cap", "5"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "identity-up-to 5\n"));
}

#[test]
fn wp_reports_a_witness() {
    let dir = TempDir::new().unwrap();
    let gw = file(&dir, "t.gw", "t0\n");
    for method in ["table", "normal-form", "witness"] {
        let r = thompson(&["wp", s(&gw), "--method", method]);
        assert_eq!(r.code, 1, "{method}: {}", r.stderr);
        assert!(r.stdout.starts_with("not-identity "), "{method}: {}", r.stdout);
    }
    let r = thompson(&["wp", s(&gw), "--method", "witness"]);
    assert_eq!(r.stdout, "not-identity 01#\n");
}

#[test]
fn equiv_or_and_is_inequivalent() {
    let dir = TempDir::new().unwrap();
    let or = file(&dir, "or.ckt", OR_CKT);
    let and = file(&dir, "and.ckt", AND_CKT);
    let r = thompson(&["equiv", s(&or), s(&and), "--mode", "both"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stdout.starts_with("inequivalent\ninput 01 gives 1 and 0\nmoved "), "{}", r.stdout);
    let swapped = file(&dir, "or2.ckt", OR_SWAPPED_CKT);
    for mode in ["oracle", "group", "both"] {
        let r = thompson(&["equiv", s(&or), s(&swapped), "--mode", mode]);
        assert_eq!((r.code, r.stdout.as_str()), (0, "equivalent\n"), "{mode}");
    }
}

#[test]
fn metrics_of_a_transposition_word() {
    let dir = TempDir::new().unwrap();
    let gw = file(&dir, "tau5.gw", &write_genword(&tau_word_over_finite_gens(5)));
    let r = thompson(&["metrics", s(&gw), "--unary"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let field = |name: &str| -> String {
        r.stdout
            .lines()
            .find_map(|l| l.strip_prefix(name).map(|v| v.trim().to_string()))
            .unwrap_or_else(|| panic!("no {name} in {}", r.stdout))
    };
    assert!(field("tokens").parse::<usize>().unwrap() <= 12);
    assert_eq!(field("table-size"), "255");
    assert_eq!(field("max-tau"), "1");
}

#[test]
fn compiled_circuit_simulates_on_the_command_line() {
    let dir = TempDir::new().unwrap();
    let ckt = file(&dir, "and.ckt", AND_CKT);
    let out = dir.path().join("and.gw");
    let r = thompson(&["compile", s(&ckt), "-o", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    // One output gives two padding zeros after the leading one.
    let r = thompson(&["apply", s(&out), "011#"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "000111#\n"));
    let r = thompson(&["apply", s(&out), "010#"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "000010#\n"));
    let r = thompson(&["metrics", s(&ckt)]);
    assert!(r.stdout.starts_with("circuit-size 3\ntokens "), "{}", r.stdout);
    let strong = thompson(&["compile", s(&ckt), "--strong"]);
    assert!(strong.stdout.starts_with("# strong simulation"), "{}", strong.stdout);
}

#[test]
fn factor_round_trips_through_files() {
    let dir = TempDir::new().unwrap();
    let table = file(&dir, "swap.table", "00 -> 01\n01 -> 00\n0# -> 0#\n1 -> 1\n# -> #\n");
    let gens = dir.path().join("gens.txt");
    let r = thompson(&["factor", s(&table), "--bound", "5", "--write-gens", s(&gens)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let ids = parse_factorization(&r.stdout).unwrap();
    let set = parse_generator_set(&std::fs::read_to_string(&gens).unwrap()).unwrap();
    let phi = parse_table(&std::fs::read_to_string(&table).unwrap()).unwrap();
    assert_eq!(set.evaluate(&ids), phi);
    let again = thompson(&["factor", s(&table), "--bound", "5", "--gens", s(&gens)]);
    assert_eq!(again.stdout, r.stdout);
    let outside = file(&dir, "out.table", "00 -> 0\n01 -> 10\n1 -> 11\n0# -> 1#\n# -> #\n");
    let r = thompson(&["factor", s(&outside), "--tag", "G31_MOD3_01_SHARP"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
}

#[test]
fn bad_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.ckt", "inputs 2\ngate g XOR in.0 in.1\noutputs g\n");
    let good = file(&dir, "or.ckt", OR_CKT);
    let r = thompson(&["equiv", s(&bad), s(&good)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
    assert_eq!(thompson(&["wp", "/nonexistent.gw"]).code, 2);
    assert_eq!(thompson(&["frobnicate"]).code, 2);
    assert_eq!(thompson(&["wp"]).code, 2);
    let one = file(&dir, "one.ckt", "inputs 1\ngate n NOT in.0\noutputs n\n");
    assert_eq!(thompson(&["equiv", s(&one), s(&good)]).code, 2);
}

#[test]
fn help_documents_every_command() {
    let r = thompson(&["--help"]);
    assert_eq!(r.code, 0);
    for cmd in ["apply", "compile", "equiv", "wp", "factor", "metrics", "selftest"] {
        assert!(r.stdout.contains(cmd), "{cmd} missing from help");
    }
    assert!(r.stdout.contains("--seed"));
}

#[test]
fn selftest_single_criterion() {
    let r = thompson(&["selftest", "--only", "1"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("PASS  1 "), "{}", r.stdout);
    let again = thompson(&["selftest", "--only", "1", "--seed", "7"]);
    assert_eq!(again.code, 0);
    assert_eq!(thompson(&["selftest", "--only", "11"]).code, 2);
}

#[test]
fn reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let ckt = file(&dir, "and.ckt", AND_CKT);
    let a = thompson(&["compile", s(&ckt), "--strong"]);
    let b = thompson(&["compile", s(&ckt), "--strong"]);
    assert_eq!(a.stdout, b.stdout);
    let r1 = thompson(&["selftest", "--only", "6"]);
    let r2 = thompson(&["selftest", "--only", "6"]);
    let strip = |t: &str| t.split(" [").next().unwrap().to_string();
    assert_eq!(strip(&r1.stdout), strip(&r2.stdout));
}
