//! `tlwords`: sequence tables, diagram products, and verification reports.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tlwords::combin::{catalan, fine, first_peak_count_b, jacobsthal_number};
use tlwords::verify::{run_checks, Check, Status, VerificationReport, VerifyOptions};
use tlwords::{build_complex, AlgebraElement, Convention, ConventionTag, Diagram, Rational};

#[derive(Parser)]
#[command(name = "tlwords", version, about = "Temperley-Lieb diagrams, planar injective words, and Fine numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a sequence table.
    Tables {
        kind: TableKind,
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Multiply two diagrams given as Dyck words.
    Mul { n: usize, x: String, y: String },
    /// Run verification suites for 1 <= n <= n-max.
    Verify {
        /// Check names, or `all`.
        #[arg(required = true)]
        checks: Vec<String>,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value = "A")]
        convention: String,
        /// Comma-separated rational points.
        #[arg(long, default_value = "2,3")]
        points: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the bases and differential matrices as JSON.
        #[arg(long)]
        emit_matrices: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Catalan,
    Fine,
    Jacobsthal,
    Bgrid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Tables {
            kind,
            max_n,
            format,
        } => {
            print!("{}", tables(kind, max_n, format));
            ExitCode::SUCCESS
        }
        Command::Mul { n, x, y } => match mul(n, &x, &y) {
            Ok(s) => {
                println!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
        Command::Verify {
            checks,
            n_max,
            convention,
            points,
            format,
            emit_matrices,
        } => {
            let checks = match parse_checks(&checks) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let convention: ConventionTag = match convention.parse() {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let points = match parse_points(&points) {
                Ok(p) => p,
                Err(e) => return usage(e),
            };
            if n_max == 0 {
                return usage("--n-max must be at least 1");
            }
            let opts = VerifyOptions {
                n_max,
                convention,
                points,
            };
            if let Some(path) = emit_matrices {
                if let Err(e) = emit(&path, &opts) {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            let report = match run_checks(&checks, &opts) {
                Ok(r) => r,
                Err(e @ tlwords::Error::NotEnoughPoints) | Err(e @ tlwords::Error::NotAUnit) => {
                    return usage(e)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            print!("{}", render_report(&report, format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// JSON number when it fits in a `u64`, otherwise its decimal string.
fn number(x: &impl std::fmt::Display) -> Value {
    let s = x.to_string();
    s.parse::<u64>().map_or_else(|_| json!(s), |v| json!(v))
}

/// `(n, m, value)`; `m` only for the B-grid.
type Row = (usize, Option<usize>, String);

fn tables(kind: TableKind, max_n: usize, format: Format) -> String {
    let (name, rows): (&str, Vec<Row>) = match kind {
        TableKind::Catalan => ("catalan", (0..=max_n).map(|n| (n, None, catalan(n).to_string())).collect()),
        TableKind::Fine => ("fine", (0..=max_n).map(|n| (n, None, fine(n).to_string())).collect()),
        TableKind::Jacobsthal => (
            "jacobsthal",
            (1..=max_n).map(|n| (n, None, jacobsthal_number(n).to_string())).collect(),
        ),
        TableKind::Bgrid => (
            "bgrid",
            (0..=max_n)
                .flat_map(|n| (0..=n).map(move |m| (n, Some(m), first_peak_count_b(n, m).to_string())))
                .collect(),
        ),
    };
    let grid = matches!(kind, TableKind::Bgrid);
    let mut out = String::new();
    match format {
        Format::Text if grid => {
            for n in 0..=max_n {
                let line: Vec<&str> = rows
                    .iter()
                    .filter(|r| r.0 == n)
                    .map(|r| r.2.as_str())
                    .collect();
                out.push_str(&format!("n={n}: {}\n", line.join(" ")));
            }
        }
        Format::Text => {
            for (n, _, v) in &rows {
                out.push_str(&format!("{n}\t{v}\n"));
            }
        }
        Format::Csv => {
            out.push_str(if grid { "n,m,value\n" } else { "n,value\n" });
            for (n, m, v) in &rows {
                match m {
                    Some(m) => out.push_str(&format!("{n},{m},{v}\n")),
                    None => out.push_str(&format!("{n},{v}\n")),
                }
            }
        }
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|(n, m, v)| match m {
                    Some(m) => json!({ "n": n, "m": m, "value": number(v) }),
                    None => json!({ "n": n, "value": number(v) }),
                })
                .collect();
            let doc = json!({ "schema": 1, "table": name, "max_n": max_n, "rows": values });
            out.push_str(&serde_json::to_string_pretty(&doc).expect("serializable"));
            out.push('\n');
        }
    }
    out
}

fn mul(n: usize, x: &str, y: &str) -> Result<String, String> {
    let parse = |w: &str| -> Result<Diagram, String> {
        let d: Diagram = w.parse().map_err(|e: tlwords::Error| e.to_string())?;
        if d.strands() != n {
            return Err(format!("`{w}` has {} strands, expected {n}", d.strands()));
        }
        Ok(d)
    };
    let (x, y) = (parse(x)?, parse(y)?);
    let prod = AlgebraElement::from_diagram(x)
        .mul(&AlgebraElement::from_diagram(y))
        .map_err(|e| e.to_string())?;
    Ok(prod.to_string())
}

fn parse_checks(names: &[String]) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    for name in names.iter().flat_map(|s| s.split(',')).filter(|s| !s.is_empty()) {
        if name.eq_ignore_ascii_case("all") {
            out.extend(Check::ALL);
        } else {
            out.push(name.parse::<Check>().map_err(|e| e.to_string())?);
        }
    }
    if out.is_empty() {
        return Err("no checks given".into());
    }
    Ok(out)
}

fn parse_points(s: &str) -> Result<Vec<Rational>, String> {
    let pts = s
        .split(',')
        .map(|p| p.trim().parse::<Rational>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut distinct = pts.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < 2 || pts.iter().any(Rational::is_zero) {
        return Err("--points needs at least two distinct nonzero rationals".into());
    }
    Ok(pts)
}

fn emit(path: &PathBuf, opts: &VerifyOptions) -> Result<(), String> {
    let conv = Convention::new(opts.convention);
    let dumps = (1..=opts.n_max)
        .map(|n| build_complex(n, &conv).map(|cx| cx.dump()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let doc = json!({ "schema": 1, "convention": opts.convention, "complexes": dumps });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
    fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))
}

fn render_report(report: &VerificationReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(report).expect("serializable"));
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("check,status,failing_n\n");
            for c in &report.checks {
                out.push_str(&format!("{},{},{}\n", c.name, status(c.status), failing(&c.details).join(" ")));
            }
        }
        Format::Text => {
            let pts: Vec<String> = report.points.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!(
                "tlwords {}: n = 1..{}, convention {}, points {}\n",
                report.tool_version,
                report.n_max,
                report.convention,
                pts.join(", ")
            ));
            for c in &report.checks {
                let bad = failing(&c.details);
                let note = if bad.is_empty() {
                    String::new()
                } else {
                    format!("  (failing n: {})", bad.join(", "))
                };
                out.push_str(&format!("{:<10} {}{note}\n", c.name, status(c.status)));
            }
            out.push_str(if report.passed() {
                "all checks passed\n"
            } else {
                "some checks failed\n"
            });
        }
    }
    out
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
    }
}

fn failing(details: &Value) -> Vec<String> {
    details["per_n"]
        .as_array()
        .map(|a| {
            a.iter()
                .filter(|e| e["ok"] == json!(false))
                .map(|e| e["n"].to_string())
                .collect()
        })
        .unwrap_or_default()
}
