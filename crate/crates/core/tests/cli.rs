use std::io::Write as _;

use rotamap::cli::{self, EXIT_FAILED, EXIT_GEOMETRY, EXIT_NOT_GRAPHICAL, EXIT_OK, EXIT_ORIENT, EXIT_PARSE};

const FIG4: &str = "P (1 8 7 5 3)(2 6 4)\nQ normalized\n";
const TORUS_PARTIAL: &str = "P (1 5)(2 6)(3 7)(4 8)\nQ (1 7 4 5 2 8 3 6)\n";
const K4: &str = "P (1 8 11)(2 6 10)(3 5 12)(4 7 9)\nQ (1 7 10)(2 5 11)(3 6 9)(4 8 12)\n";

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], stdin: &str) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rotamap").chain(args.iter().copied());
    let code = cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn info_reports() {
    let k4 = run(&["info", "-"], K4);
    assert_eq!(k4.code, EXIT_OK);
    assert!(
        k4.stdout.starts_with("graphical map; genus 0; V=4 E=6 F=4\n"),
        "{}",
        k4.stdout
    );

    let partial = run(&["info", "-"], TORUS_PARTIAL);
    assert_eq!(partial.code, EXIT_OK);
    assert!(partial
        .stdout
        .starts_with("partial map; hyperedges [4,2,2]; genus 1"));

    let empty = run(&["info", "-"], "degree 0\nP id\nQ id\n");
    assert_eq!(empty.code, EXIT_OK);
    assert!(empty.stdout.contains("V=0 E=0 F=0") && empty.stdout.contains("components=0 chi=0 genus=0"));

    let json = run(&["info", "-", "--out-format", "json"], FIG4);
    let value: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(value["census"]["genus"], 1);
    assert_eq!(value["passports"]["P"], serde_json::json!([5, 3]));
}

#[test]
fn edges_and_knot_reports() {
    let edges = run(&["edges", "-"], FIG4);
    assert_eq!(edges.code, EXIT_OK);
    let lines: Vec<&str> = edges.stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("⟨1,3,2,4⟩ regular link"));
    assert!(lines[3].starts_with("⟨7,8,8,1⟩ hanging-loop loop"));
    assert!(run(&["edges", "-"], "degree 2\nP id\nQ normalized\n")
        .stdout
        .starts_with("⟨1,1,2,2⟩ isolated-edge"));

    let knot = run(&["knot", "-"], FIG4);
    assert_eq!(knot.code, EXIT_OK);
    assert!(knot.stdout.contains("μ = (1 2 7 8)(3 4)(5 6)\n"));
    assert!(knot.stdout.contains("exact equal"));
    assert!(knot.stdout.contains("partially normalized: yes"));
    assert!(!knot.stdout.contains("[FAIL]"));

    let flipped = run(&["knot", "-", "--orient", "010"], FIG4);
    assert_eq!(flipped.code, EXIT_OK);
    assert!(flipped.stdout.contains("partially normalized: no"));
}

#[test]
fn random_is_deterministic_and_round_trips() {
    let a = run(&["random", "4", "--seed", "1"], "");
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, run(&["random", "4", "--seed", "1"], "").stdout);
    let info = run(&["info", "-"], &a.stdout);
    assert!(info.stdout.contains("corners m=8") && info.stdout.contains("normalized: yes"));
    let zero = run(&["random", "0"], "");
    assert!(zero.stdout.contains("degree 0\n"));
}

#[test]
fn draw_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("fig4.map");
    std::fs::File::create(&input)
        .unwrap()
        .write_all(FIG4.as_bytes())
        .unwrap();
    let output = dir.path().join("fig4.svg");
    let args = [
        "draw",
        input.to_str().unwrap(),
        "-o",
        output.to_str().unwrap(),
        "--knot",
        "--move",
        "1:100,-20",
    ];
    let done = run(&args, "");
    assert_eq!(done.code, EXIT_OK, "{}", done.stderr);
    let svg = std::fs::read_to_string(&output).unwrap();
    assert_eq!(svg.matches("<circle ").count(), 2);
    assert_eq!(svg.matches("<path ").count(), 4);
    assert_eq!(svg.matches("fill=\"green\"").count(), 4);
    assert_eq!(svg.matches("fill=\"red\"").count(), 4);
    assert!(svg.contains("cx=\"100.00\" cy=\"-20.00\""));
}

#[test]
fn check_command() {
    let report = run(&["check", "--trials", "20", "--max-k", "15", "--seed", "3"], "");
    assert_eq!(report.code, EXIT_OK);
    assert!(report.stdout.ends_with("trials=20 failures=0\n"));
    assert_eq!(run(&["check", "--trials", "1", "--max-k", "1"], "").code, EXIT_OK);
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], &str, i32)] = &[
        (&["info", "-"], "P (1 2\nQ id\n", EXIT_PARSE),
        (&["info", "-"], "P (1 2)(2 3)\nQ id\n", EXIT_PARSE),
        (&["info", "-"], "degree 2\nP (1 3)\nQ id\n", EXIT_PARSE),
        (&["info", "-"], "P (1 2 3)\nQ normalized\n", EXIT_PARSE),
        (&["info", "-"], "P id\nP id\nQ id\n", EXIT_PARSE),
        (&["info", "-"], "colour red\n", EXIT_PARSE),
        (&["edges", "-"], TORUS_PARTIAL, EXIT_NOT_GRAPHICAL),
        (&["knot", "-"], TORUS_PARTIAL, EXIT_NOT_GRAPHICAL),
        (&["draw", "-"], TORUS_PARTIAL, EXIT_NOT_GRAPHICAL),
        (&["knot", "-", "--orient", "01"], FIG4, EXIT_ORIENT),
        (&["knot", "-", "--orient", "0101"], FIG4, EXIT_ORIENT),
        (&["knot", "-", "--orient", "0a0"], FIG4, EXIT_ORIENT),
        (&["draw", "-", "--orient", "1"], FIG4, EXIT_ORIENT),
        (&["draw", "-", "--move", "99:0,0"], FIG4, EXIT_GEOMETRY),
        (&["draw", "-", "--move", "0:1"], FIG4, EXIT_GEOMETRY),
        (&["draw", "-", "--move", "x:1,2"], FIG4, EXIT_GEOMETRY),
        (&["draw", "-", "--width", "-5"], FIG4, EXIT_GEOMETRY),
        (&["draw", "-", "--move", "1:-3.5,7"], FIG4, EXIT_OK),
        (&["info", "/nonexistent/map"], "", EXIT_FAILED),
        (&["frobnicate"], "", EXIT_PARSE),
        (&["random"], "", EXIT_PARSE),
        (&["random", "3", "--seed", "-1"], "", EXIT_PARSE),
        (&["check", "--trials", "0"], "", EXIT_PARSE),
        (&["info", "-"], FIG4, EXIT_OK),
        (&["knot", "-", "--orient", "111"], FIG4, EXIT_OK),
    ];
    for (args, stdin, expected) in cases {
        let outcome = run(args, stdin);
        assert_eq!(
            outcome.code, *expected,
            "{args:?} on {stdin:?}: {}",
            outcome.stderr
        );
        if *expected != EXIT_OK {
            assert!(!outcome.stderr.is_empty(), "{args:?} should explain itself");
        }
    }
}

#[test]
fn non_graphical_message_names_orbit() {
    let outcome = run(&["edges", "-"], TORUS_PARTIAL);
    assert!(outcome.stderr.contains("(1 4 2 3)"), "{}", outcome.stderr);
}
