//! `cpnroot`: marks, Mahowald invariants, fixed lattices and verification suites.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 domain error,
//! 4 verification failure.

use std::fmt;
use std::io::{IsTerminal, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cpnroot::burnside::BurnsideElement;
use cpnroot::ktheory::{fixed_lattice, LatticeMode};
use cpnroot::mahowald::mahowald_invariant;
use cpnroot::repring::{is_prime, GroupSpec};
use cpnroot::verify::{parse_suites, run_suite, SuiteReport, VerifyConfig};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cpnroot", version, about = "C_{p^n}-equivariant Mahowald invariants and fixed lattices")]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Group {
    /// The prime p.
    #[arg(long)]
    p: u64,
    /// The exponent n of the group C_{p^n}.
    #[arg(long)]
    n: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Marks of an element of A(C_{p^n}).
    Marks {
        #[command(flatten)]
        group: Group,
        /// t:[..], z:[..], marks:[..], an integer, element JSON, a file path, or - for stdin.
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// The C_{p^n}-Mahowald invariant of an element of A(C_{p^{n-1}}).
    Mahowald {
        #[command(flatten)]
        group: Group,
        /// t:[..], z:[..], marks:[..], an integer, element JSON, a file path, or - for stdin.
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// HNF basis of the fixed lattice M_k in payload coordinates.
    Mk {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        k: usize,
        /// oracle, closed or real.
        #[arg(long, default_value = "closed")]
        mode: String,
    },
    /// Run verification suites; exits 4 if any check fails.
    Verify {
        /// burnside, repring, oracle-vs-closed, f-tables, examples, presentation, quotients or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_n: u32,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        parallel: bool,
        /// Random elements per group in the burnside suite.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    Verification(Value, String),
}

impl Failure {
    fn domain<E: fmt::Debug + fmt::Display>(e: E) -> Self {
        let debug = format!("{e:?}");
        let name: String = debug.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
        let text = e.to_string();
        if text.starts_with(&name) {
            Failure::Domain(text)
        } else {
            Failure::Domain(format!("{name}: {text}"))
        }
    }
}

struct Output {
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let as_json = cli.json;
    match run(cli.command) {
        Ok(out) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => report_error(as_json, "usage", &msg, 2),
        Err(Failure::Domain(msg)) => report_error(as_json, "domain", &msg, 3),
        Err(Failure::Verification(doc, text)) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                println!("{text}");
            }
            ExitCode::from(4)
        }
    }
}

fn report_error(as_json: bool, kind: &str, msg: &str, code: u8) -> ExitCode {
    if as_json {
        println!("{}", json!({ "error": kind, "message": msg }));
    } else {
        eprintln!("error: {msg}");
    }
    ExitCode::from(code)
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Marks { group, elem } => {
            check_prime(group.p)?;
            let x = parse_element(&elem, group.p, group.n)?;
            let marks = x.marks();
            Ok(Output {
                json: json!({ "p": group.p, "m": group.n, "marks": decimal(&marks) }),
                text: format!("[{}]", join(&marks)),
            })
        }
        Command::Mahowald { group, elem } => {
            check_prime(group.p)?;
            if group.n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let x = parse_element(&elem, group.p, group.n - 1)?;
            let r = mahowald_invariant(&x).map_err(Failure::domain)?;
            Ok(Output {
                json: serde_json::to_value(&r).expect("serializable"),
                text: r.to_string(),
            })
        }
        Command::Mk { group, k, mode } => {
            check_prime(group.p)?;
            let mode_value: LatticeMode = mode.parse().map_err(Failure::domain)?;
            let g = GroupSpec::new(group.p, group.n).map_err(Failure::domain)?;
            let lattice = fixed_lattice(g, k, mode_value).map_err(Failure::domain)?;
            let rows = lattice.lattice.basis().to_rows();
            let text_rows: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
            Ok(Output {
                json: json!({
                    "p": group.p,
                    "n": group.n,
                    "k": k,
                    "mode": mode,
                    "provenance": lattice.provenance,
                    "stabilized": lattice.stabilized,
                    "rows": rows.iter().map(|r| decimal(r)).collect::<Vec<_>>(),
                }),
                text: format!(
                    "M_{k} for C_{} ({mode}), rank {}\n{}",
                    g.order(),
                    rows.len(),
                    text_rows.join("\n")
                ),
            })
        }
        Command::Verify {
            suite,
            max_n,
            max_k,
            parallel,
            samples,
            seed,
        } => {
            let suites = parse_suites(&suite).map_err(Failure::Usage)?;
            let cfg = VerifyConfig {
                max_n,
                max_k,
                parallel,
                samples,
                seed,
            };
            let reports: Vec<SuiteReport> = suites.into_iter().map(|s| run_suite(s, &cfg)).collect();
            let passed = reports.iter().all(SuiteReport::passed);
            let doc = json!({ "passed": passed, "suites": reports });
            let text = verify_text(&reports);
            if passed {
                Ok(Output { json: doc, text })
            } else {
                Err(Failure::Verification(doc, text))
            }
        }
    }
}

fn verify_text(reports: &[SuiteReport]) -> String {
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    let paint = |ok: bool| match (ok, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    };
    let mut lines = Vec::new();
    for r in reports {
        lines.push(format!("{} {} ({} checks)", paint(r.passed()), r.suite, r.checks));
        lines.extend(r.failures.iter().map(|f| format!("    failure: {f}")));
        lines.extend(r.notes.iter().map(|n| format!("    note: {n}")));
    }
    lines.join("\n")
}

fn check_prime(p: u64) -> Result<(), Failure> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--p {p} is not prime")))
    }
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn decimal(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Parses an element of `A(C_{p^level})`.
fn parse_element(source: &str, p: u64, level: u32) -> Result<BurnsideElement, Failure> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        buf
    } else {
        source.to_string()
    };
    match parse_inline(text.trim(), p, level) {
        Err(Failure::Usage(msg)) if source != "-" && std::path::Path::new(source).is_file() => {
            let contents = std::fs::read_to_string(source)
                .map_err(|e| Failure::Usage(format!("reading {source}: {e} ({msg})")))?;
            parse_inline(contents.trim(), p, level)
        }
        other => other,
    }
}

fn parse_inline(text: &str, p: u64, level: u32) -> Result<BurnsideElement, Failure> {
    if text.starts_with('{') {
        let x: BurnsideElement =
            serde_json::from_str(text).map_err(|e| Failure::Usage(format!("element JSON: {e}")))?;
        if x.p() != p || x.level() != level {
            return Err(Failure::Domain(format!(
                "GroupMismatch: element of A(C_{}^{}) where A(C_{p}^{level}) was expected",
                x.p(),
                x.level()
            )));
        }
        return Ok(x);
    }
    if let Some((kind, rest)) = text.split_once(':') {
        let coeffs = parse_int_list(rest)?;
        let result = match kind.trim() {
            "t" => BurnsideElement::from_t(p, level, coeffs),
            "z" => BurnsideElement::from_z(p, level, coeffs),
            "marks" => BurnsideElement::from_marks(p, level, &coeffs),
            other => return Err(Failure::Usage(format!("unknown element encoding {other:?}"))),
        };
        return result.map_err(Failure::domain);
    }
    let value: BigInt = text
        .parse()
        .map_err(|_| Failure::Usage(format!("cannot parse element {text:?}")))?;
    BurnsideElement::integer(p, level, value).map_err(Failure::domain)
}

fn parse_int_list(text: &str) -> Result<Vec<BigInt>, Failure> {
    let value: Value =
        serde_json::from_str(text.trim()).map_err(|e| Failure::Usage(format!("coefficient list: {e}")))?;
    let Value::Array(items) = value else {
        return Err(Failure::Usage("coefficients must be a JSON array".into()));
    };
    items
        .iter()
        .map(|item| match item {
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer literal")),
            Value::String(s) => s
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad integer {s:?}"))),
            other => Err(Failure::Usage(format!("bad coefficient {other}"))),
        })
        .collect()
}
