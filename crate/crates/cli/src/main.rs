use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use openbook_cli::check::{invariant_suite, round_trip};
use openbook_cli::{parse, run, Options};

/// Run open book scripts.
#[derive(Parser, Debug)]
#[command(name = "obook", version)]
struct Args {
    /// Script files; standard input when none are given.
    files: Vec<PathBuf>,
    /// Emit one JSON document per script.
    #[arg(long)]
    json: bool,
    /// Search budget for certify and destabilize commands without one.
    #[arg(long, default_value_t = openbook_cli::run::DEFAULT_BUDGET)]
    budget: usize,
    /// Seed for the randomized invariant suite.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run the invariant suite, and check that the given scripts survive printing.
    #[arg(long)]
    check: bool,
}

fn read(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn label(path: Option<&PathBuf>) -> String {
    path.map_or("<stdin>".to_string(), |p| p.display().to_string())
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn check(args: &Args) -> ExitCode {
    let mut results = invariant_suite(args.seed);
    for f in &args.files {
        let r = read(Some(f)).map_err(|e| e.to_string()).and_then(|t| round_trip(&t));
        results.push((format!("round trip {}", f.display()), r));
    }
    let mut ok = true;
    for (name, r) in &results {
        match r {
            Ok(()) => emit(&format!("PASS {name}\n")),
            Err(e) => {
                ok = false;
                emit(&format!("FAIL {name}: {e}\n"));
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.check {
        return check(&args);
    }
    let options = Options { budget: args.budget };
    let paths: Vec<Option<&PathBuf>> =
        if args.files.is_empty() { vec![None] } else { args.files.iter().map(Some).collect() };
    let mut code = 0u8;
    for path in paths {
        let text = match read(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{}: {e}", label(path));
                return ExitCode::from(2);
            }
        };
        let report = parse(&text).and_then(|s| run(&s, &options));
        match report {
            Err(e) => {
                if args.json {
                    emit(&format!("{}\n", e.to_json()));
                } else {
                    eprintln!("{}:{e}", label(path));
                }
                return ExitCode::from(2);
            }
            Ok(r) => {
                if args.json {
                    emit(&format!("{}\n", serde_json::to_string_pretty(&r.json()).expect("json")));
                } else {
                    emit(&r.text());
                }
                if r.failed() {
                    code = 1;
                }
            }
        }
    }
    ExitCode::from(code)
}
