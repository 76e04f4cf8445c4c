use std::path::{Path, PathBuf};
use std::process::Command as Process;

use openbook_cli::syntax::{Command, StmtKind};
use openbook_cli::{check::round_trip, parse, run, ErrorKind, Options};

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|f| f.unwrap().path()).collect();
    files.retain(|p| p.extension().is_some_and(|x| x == "ob"));
    files.sort();
    files
}

fn obook(args: &[&str], stdin: &str) -> (i32, String, String) {
    use std::io::Write;
    let mut child = Process::new(env!("CARGO_BIN_EXE_obook"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

const TREFOIL: &str = "surface S=(1,1)\nword w=R(a1)*R(a2)\nbook B=(S,w)\ncmd h1 B\n";

#[test]
fn four_statements() {
    let s = parse(TREFOIL).unwrap();
    assert_eq!(s.stmts.len(), 4);
    assert_eq!(s.declarations(), 3);
}

#[test]
fn unknown_standard_curve() {
    let e = parse("surface S = (1, 1)\nword w = R(a9)").unwrap_err();
    assert_eq!(e.kind, ErrorKind::UndefinedIdentifier);
    assert_eq!((e.pos.line, e.pos.column), (2, 12));
}

#[test]
fn sum_has_four_arguments() {
    let text = "book B1 = hopf(+1)\nbook B2 = hopf(-1)\nsurface A = (0, 2)\narc b1 = [] from 1.1 to 2.1\narc b2 = [] from 1.1 to 2.1\ncmd sum B1 B2 along b1 b2";
    let s = parse(text).unwrap();
    let StmtKind::Cmd { command: Command::Sum { first, second, along: Some((x, y)) }, .. } = &s.stmts[5].kind else {
        panic!("not a sum");
    };
    let names: Vec<_> = [first, second, x, y].iter().map(|i| i.name.clone()).collect();
    assert_eq!(names, ["B1", "B2", "b1", "b2"]);
}

#[test]
fn error_kinds_are_distinct() {
    let cases = [
        ("surface S = (1, 1\n", ErrorKind::Syntax),
        ("surface S = (1, 1)\ncmd h1 B\n", ErrorKind::UndefinedIdentifier),
        ("surface S = (1, 1)\nsurface T = (2, 1)\ncurve k = chain(T, 3)\nbook B = (S, R(k))\n", ErrorKind::SurfaceMismatch),
        ("surface S = (1, 1)\ncmd h1 S\n", ErrorKind::WrongKind),
        ("surface S = (1, 1)\nsurface S = (1, 2)\n", ErrorKind::DuplicateDefinition),
        ("surface S = (1, 1)\ncurve k = [x1, x1]\n", ErrorKind::InvalidDeclaration),
        ("surface S = (1, 1)\ncurve k = [q1]\n", ErrorKind::UndefinedIdentifier),
        ("surface S = (1, 1)\nbook B = (S, id)\ncmd h1 B as C\n", ErrorKind::WrongKind),
    ];
    for (text, kind) in cases {
        assert_eq!(parse(text).unwrap_err().kind, kind, "{text}");
    }
}

#[test]
fn corpus_round_trips() {
    for f in corpus() {
        round_trip(&std::fs::read_to_string(&f).unwrap()).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
    }
}

#[test]
fn corpus_runs_cleanly() {
    for f in corpus() {
        let s = parse(&std::fs::read_to_string(&f).unwrap()).unwrap();
        let r = run(&s, &Options::default()).unwrap();
        assert!(!r.failed(), "{}:\n{}", f.display(), r.text());
    }
}

#[test]
fn trefoil_is_a_homology_sphere() {
    let r = run(&parse(TREFOIL).unwrap(), &Options::default()).unwrap();
    assert_eq!(r.text(), "h1 B: 0 (homology sphere)\n");
}

#[test]
fn trivial_page_with_two_boundaries() {
    let r = run(&parse("surface S = (1, 2)\nbook T = (S, id)\ncmd h1 T").unwrap(), &Options::default()).unwrap();
    let j = r.json();
    assert_eq!(j["schema"], 1);
    assert_eq!(j["results"][0]["book"]["h1"]["rank"], 3);
    assert_eq!(j["results"][0]["book"]["h1"]["torsion"].as_array().unwrap().len(), 0);
}

#[test]
fn negative_hopf_certificate() {
    let r = run(&parse("book H = hopf(-1)\ncmd certify H budget 2").unwrap(), &Options::default()).unwrap();
    let c = &r.json()["results"][0];
    assert_eq!(c["verdict"], "overtwisted");
    assert_eq!(c["certificate"]["kind"], "sobering");
    assert_eq!(c["certificate"]["signs"]["endpoints"], serde_json::json!([1, 1]));
    assert_eq!(c["certificate"]["i"], 1);
}

#[test]
fn positive_factorization_schema() {
    let r = run(&parse(&format!("{TREFOIL}cmd certify B")).unwrap(), &Options::default()).unwrap();
    let c = &r.json()["results"][1]["certificate"];
    assert_eq!(c["kind"], "positive_factorization");
    assert_eq!(c["word"].as_array().unwrap().len(), 2);
    assert!(c["transcript"].is_array());
}

#[test]
fn failed_commands_do_not_stop_the_run() {
    let text = "surface S = (0, 3)\nword w = id\ncmd positify w\ncmd equal w w\n";
    let r = run(&parse(text).unwrap(), &Options::default()).unwrap();
    assert!(r.failed());
    assert!(r.entries[0].outcome.is_err());
    assert!(r.entries[1].outcome.is_ok());
}

#[test]
fn exit_codes() {
    assert_eq!(obook(&[], TREFOIL).0, 0);
    assert_eq!(obook(&[], "surface S = (0, 3)\nword w = id\ncmd positify w\n").0, 1);
    let (code, out, _) = obook(&["--json"], "surface S = (1, 1)\nword w = R(a9)\n");
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "undefined_identifier");
    assert_eq!(v["error"]["line"], 2);
}

#[test]
fn json_is_byte_identical_across_runs() {
    for f in corpus() {
        let p = f.to_str().unwrap();
        let (c1, a, _) = obook(&["--json", "--budget", "2", p], "");
        let (c2, b, _) = obook(&["--json", "--budget", "2", p], "");
        assert_eq!((c1, c2), (0, 0), "{p}");
        assert_eq!(a, b, "{p}");
    }
}

#[test]
fn invariant_suite_passes() {
    let (code, out, _) = obook(&["--check", "--seed", "3"], "");
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn two_positive_bands_plumb_to_the_trefoil() {
    let r = run(&parse("book P = hopf(+1)\nbook Q = hopf(+1)\ncmd sum P Q as T\ncmd h1 T").unwrap(), &Options::default()).unwrap();
    let t = &r.books["T"];
    assert_eq!((t.page().genus(), t.page().boundary_count()), (1, 1));
    assert!(t.monodromy().is_positive() && t.monodromy().len() == 2);
    assert_eq!(r.entries[1].outcome.as_ref().unwrap().text, "h1 T: 0 (homology sphere)");
}
