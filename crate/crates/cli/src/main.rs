use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use loopbrauer::algebra::{check_relations, multiply_in_quotient, Element, Mode, TwoParamElement};
use loopbrauer::analysis::{branching_check, central_checks, ind_res_check, radical_scan, XMode};
use loopbrauer::cellmod::CellModule;
use loopbrauer::diagrams::{enumerate, family_size_formula, Diagram, Family, GeneratorKind};
use loopbrauer::par::{with_jobs, Exec};
use loopbrauer::report::{run_report, ReportConfig};
use loopbrauer::scalars::{format_rational, parse_rational, Rational};
use loopbrauer::symgroup::{partitions_of, Partition};
use loopbrauer::Error;

/// Exact computations in the loop-augmented Brauer algebra and its loopless
/// subalgebra.
#[derive(Parser, Debug)]
#[command(name = "loopbrauer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for cached multiplication tables.
    #[arg(long, global = true, env = "LOOPBRAUER_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// Diagram family: A (loop-Brauer) or L (loopless).
    #[arg(long, default_value = "A", value_parser = parse_family)]
    family: Family,
    /// Number of strands.
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diagram counts by closed formula and by enumeration.
    Dims {
        /// Family; both when omitted.
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        #[arg(long)]
        n: usize,
    },
    /// List the diagrams of a family in canonical order.
    Enumerate {
        #[command(flatten)]
        target: Target,
    },
    /// Multiply two diagrams, given as `n; p0 p1 ...` or by name (`e1`, `u2`,
    /// `g1`, `id`, which need `--n`).
    Mult {
        left: String,
        right: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "one-param", value_parser = parse_mode)]
        mode: Mode,
        /// Multiply in the rank-m quotient.
        #[arg(long)]
        quotient: Option<usize>,
    },
    /// Brauer relations, loop relations and the generator words of the
    /// special pictures.
    Relations {
        #[arg(long)]
        n: usize,
    },
    /// Cell module dimension, optionally with radical dimensions.
    Cell {
        #[command(flatten)]
        target: Target,
        /// Partition, e.g. `2,1`; empty string for the empty partition.
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        lambda: Partition,
        #[arg(long = "x0", value_parser = parse_x0, allow_hyphen_values = true)]
        x0: Vec<Rational>,
    },
    /// Radical basis of one module, or radical dimensions of all modules.
    Radical {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        lambda: Option<Partition>,
        /// Only scan modules with this many strands removed.
        #[arg(long, conflicts_with = "lambda")]
        t: Option<usize>,
        #[arg(long = "x0", value_parser = parse_x0, allow_hyphen_values = true, required = true)]
        x0: Vec<Rational>,
    },
    /// Restriction to n-1 strands (and, with --ind-res, from n+2 to n+1).
    Branch {
        #[command(flatten)]
        target: Target,
        /// Single partition; all partitions of size <= n when omitted.
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        lambda: Option<Partition>,
        #[arg(long)]
        ind_res: bool,
    },
    /// Central-element identities, symbolic in x unless --x0 is given.
    Central {
        #[command(flatten)]
        target: Target,
        #[arg(long = "x0", value_parser = parse_x0, allow_hyphen_values = true)]
        x0: Option<Rational>,
    },
    /// Full verification run as one JSON document.
    Report {
        /// Restrict to one family, up to `--n` strands.
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "x0", value_parser = parse_x0, allow_hyphen_values = true)]
        x0: Vec<Rational>,
        /// Drop timing fields, for byte-stable output.
        #[arg(long)]
        no_timing: bool,
    },
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    match s.parse::<Family>() {
        Ok(Family::S) | Err(_) => Err(format!("expected A or L, got {s:?}")),
        Ok(f) => Ok(f),
    }
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_partition(s: &str) -> std::result::Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_x0(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Exit statuses beyond 0/1.
const EXIT_MISMATCH: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_EVAL_AT_ZERO: u8 = 4;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let jobs = cli.global.jobs;
    match with_jobs(jobs, || run(&cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::EvalAtZero) => EXIT_EVAL_AT_ZERO,
                Some(
                    Error::Parse(_)
                    | Error::StrandMismatch { .. }
                    | Error::IndexOutOfRange { .. }
                    | Error::InvalidT { .. }
                    | Error::InvalidShapes(_)
                    | Error::RankMismatch { .. }
                    | Error::NotInFamily { .. },
                ) => EXIT_PARSE,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    let exec = if g.sequential { Exec::Sequential } else { Exec::Parallel };
    match &cli.command {
        Command::Dims { family, n } => cmd_dims(g, *family, *n),
        Command::Enumerate { target } => cmd_enumerate(g, target),
        Command::Mult {
            left,
            right,
            n,
            mode,
            quotient,
        } => cmd_mult(g, left, right, *n, *mode, *quotient),
        Command::Relations { n } => {
            let checks = check_relations(*n)?;
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "holds": c.holds, "detail": c.detail}))
                .collect();
            emit_table(
                g,
                &json!({"n": n, "relations": rows}),
                &rows,
                &["name", "holds", "detail"],
            )?;
            Ok(if checks.iter().all(|c| c.holds) {
                0
            } else {
                EXIT_MISMATCH
            })
        }
        Command::Cell { target, lambda, x0 } => {
            let m = CellModule::new(target.family, target.n, lambda)?;
            let mut radical = serde_json::Map::new();
            for x in x0 {
                radical.insert(format_rational(x), json!(m.radical_dim(x, exec)?));
            }
            let mut doc = json!({
                "family": target.family,
                "n": target.n,
                "t": m.t(),
                "lambda": lambda,
                "dim": m.dim(),
            });
            if !x0.is_empty() {
                doc["radical_dim"] = Value::Object(radical);
            }
            emit_table(
                g,
                &doc,
                &[doc.clone()],
                &["family", "n", "t", "lambda", "dim", "radical_dim"],
            )?;
            Ok(0)
        }
        Command::Radical { target, lambda, t, x0 } => match lambda {
            Some(lambda) => {
                let m = CellModule::new(target.family, target.n, lambda)?;
                let mut rows = Vec::new();
                for x in x0 {
                    let basis = m.radical(x, exec)?;
                    let vectors: Vec<Vec<String>> =
                        basis.iter().map(|v| v.iter().map(format_rational).collect()).collect();
                    rows.push(json!({"x0": format_rational(x), "radical_dim": basis.len(), "basis": vectors}));
                }
                let doc = json!({
                    "family": target.family, "n": target.n, "t": m.t(), "lambda": lambda,
                    "dim": m.dim(), "radical": rows,
                });
                emit_table(g, &doc, &rows, &["x0", "radical_dim"])?;
                Ok(0)
            }
            None => {
                let mut r = radical_scan(target.family, target.n, x0, exec)?;
                if let Some(t) = t {
                    if *t > target.n {
                        return Err(Error::InvalidT { n: target.n, t: *t }.into());
                    }
                    r.probes.retain(|p| p.t == *t);
                    r.flagged.retain(|f| f.t == *t);
                }
                let rows: Vec<Value> = r
                    .probes
                    .iter()
                    .map(|p| serde_json::to_value(p).expect("serializable"))
                    .collect();
                emit_table(
                    g,
                    &serde_json::to_value(&r)?,
                    &rows,
                    &["t", "lambda", "dim", "x0", "radical_dim"],
                )?;
                Ok(0)
            }
        },
        Command::Branch {
            target,
            lambda,
            ind_res,
        } => cmd_branch(g, target, lambda.as_ref(), *ind_res),
        Command::Central { target, x0 } => {
            let mode = match x0 {
                Some(x) => XMode::At(x.clone()),
                None => XMode::Symbolic,
            };
            let checks = central_checks(target.family, target.n, &mode)?;
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "holds": c.holds}))
                .collect();
            let doc = json!({"family": target.family, "n": target.n, "checks": rows});
            emit_table(g, &doc, &rows, &["name", "holds"])?;
            Ok(if checks.iter().all(|c| c.holds) {
                0
            } else {
                EXIT_MISMATCH
            })
        }
        Command::Report {
            family,
            n,
            x0,
            no_timing,
        } => {
            let families = match (family, n) {
                (Some(f), Some(n)) => vec![(*f, *n)],
                (Some(f), None) => vec![(*f, if *f == Family::A { 3 } else { 4 })],
                (None, Some(n)) => vec![(Family::A, *n), (Family::L, *n)],
                (None, None) => ReportConfig::default().families,
            };
            let config = ReportConfig {
                families,
                x0: (!x0.is_empty()).then(|| x0.clone()),
                cache_dir: g.cache_dir.clone(),
                exec,
            };
            let report = run_report(&config)?;
            let mut doc = serde_json::to_value(&report)?;
            if *no_timing {
                strip_timing(&mut doc);
            }
            let rows: Vec<Value> = report
                .checks
                .iter()
                .map(|c| serde_json::to_value(c).expect("serializable"))
                .collect();
            emit_table(g, &doc, &rows, &["section", "family", "n", "name", "passed", "proven"])?;
            Ok(if report.proven_failures() == 0 {
                0
            } else {
                EXIT_MISMATCH
            })
        }
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn cmd_dims(g: &Global, family: Option<Family>, n: usize) -> Result<u8> {
    let families = match family {
        Some(f) => vec![f],
        None => vec![Family::A, Family::L],
    };
    let mut rows = Vec::new();
    let mut agree = true;
    for f in families {
        let formula = family_size_formula(f, n);
        let enumerated = enumerate(f, n).len() as u128;
        agree &= formula == enumerated;
        rows.push(
            json!({"family": f, "n": n, "formula": formula, "enumerated": enumerated, "agree": formula == enumerated}),
        );
    }
    let doc = Value::Array(rows.clone());
    emit_table(g, &doc, &rows, &["family", "n", "formula", "enumerated", "agree"])?;
    Ok(if agree { 0 } else { EXIT_MISMATCH })
}

fn cmd_enumerate(g: &Global, target: &Target) -> Result<u8> {
    let rows: Vec<Value> = enumerate(target.family, target.n)
        .iter()
        .enumerate()
        .map(|(i, d)| json!({"index": i, "name": d.name(), "text": d.to_text(), "rank": d.rank()}))
        .collect();
    let doc = json!({"family": target.family, "n": target.n, "count": rows.len(), "diagrams": rows});
    emit_table(g, &doc, &rows, &["index", "name", "text", "rank"])?;
    Ok(0)
}

/// Reads `n; p0 ...`, `[n; p0 ...]`, or a generator name with `n` given.
fn parse_diagram(spec: &str, n: Option<usize>) -> Result<Diagram> {
    let s = spec.trim();
    let s = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
    if s.contains(';') {
        return Ok(s.parse::<Diagram>()?);
    }
    let Some(n) = n else {
        return Err(Error::Parse(format!("`{spec}` needs --n")).into());
    };
    if s == "id" {
        return Ok(Diagram::identity(n));
    }
    let (kind, idx) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
    let kind = match kind {
        "e" => GeneratorKind::E,
        "u" => GeneratorKind::U,
        "g" | "s" => GeneratorKind::G,
        _ => return Err(Error::Parse(format!("unknown diagram `{spec}`")).into()),
    };
    let i: usize = idx
        .parse()
        .map_err(|_| Error::Parse(format!("unknown diagram `{spec}`")))?;
    Ok(Diagram::generator(kind, i, n)?)
}

fn cmd_mult(g: &Global, left: &str, right: &str, n: Option<usize>, mode: Mode, quotient: Option<usize>) -> Result<u8> {
    let a = parse_diagram(left, n)?;
    let b = parse_diagram(right, n)?;
    let (text, terms): (String, Vec<Value>) = match mode {
        Mode::OneParam => {
            let (ea, eb) = (Element::basis(a), Element::basis(b));
            let p = match quotient {
                Some(m) => multiply_in_quotient(&ea, &eb, m)?,
                None => ea.mul(&eb)?,
            };
            let terms = p
                .terms()
                .map(|(d, c)| json!({"diagram": d, "name": d.name(), "coefficient": c}))
                .collect();
            (p.to_string(), terms)
        }
        Mode::TwoParam => {
            let (ea, eb) = (TwoParamElement::basis(a), TwoParamElement::basis(b));
            let p = match quotient {
                Some(m) => multiply_in_quotient(&ea, &eb, m)?,
                None => ea.mul(&eb)?,
            };
            let terms = p
                .terms()
                .map(|(d, c)| json!({"diagram": d, "name": d.name(), "coefficient": c.to_string()}))
                .collect();
            (p.to_string(), terms)
        }
    };
    let doc = json!({"mode": mode, "product": text, "terms": terms});
    match g.format {
        Format::Text => println!("{text}"),
        _ => emit_table(g, &doc, &[json!({"product": text})], &["product"])?,
    }
    Ok(0)
}

fn cmd_branch(g: &Global, target: &Target, lambda: Option<&Partition>, ind_res: bool) -> Result<u8> {
    let shapes: Vec<Partition> = match lambda {
        Some(l) => vec![l.clone()],
        None => (0..=target.n).rev().flat_map(partitions_of).collect(),
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for l in &shapes {
        if ind_res {
            let r = ind_res_check(target.family, target.n, l)?;
            ok &= r.holds();
            rows.push(serde_json::to_value(&r)?);
        } else {
            let r = branching_check(target.family, target.n, l)?;
            ok &= r.holds();
            let mut v = serde_json::to_value(&r)?;
            v["holds"] = json!(r.holds());
            rows.push(v);
        }
    }
    let cols: &[&str] = if ind_res {
        &[
            "lambda",
            "restricted_dim",
            "sub_dim",
            "quotient_dim",
            "dimension_holds",
            "witness_invariant",
        ]
    } else {
        &["lambda", "t", "dim", "vertical_block", "loop_block", "holds"]
    };
    emit_table(g, &Value::Array(rows.clone()), &rows, cols)?;
    Ok(if ok { 0 } else { EXIT_MISMATCH })
}

fn cell_text(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(Value::Array(items)) if items.iter().all(Value::is_u64) => {
            let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
            format!("({})", parts.join(","))
        }
        Some(other) => other.to_string(),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Prints `doc` as JSON, or `rows` projected onto `columns` as CSV or
/// aligned text.
fn emit_table(g: &Global, doc: &Value, rows: &[Value], columns: &[&str]) -> Result<()> {
    let out = match g.format {
        Format::Json => serde_json::to_string_pretty(doc).context("serializing output")?,
        Format::Csv => {
            let mut s = columns.join(",");
            for r in rows {
                let cells: Vec<String> = columns.iter().map(|c| csv_escape(&cell_text(r.get(c)))).collect();
                write!(s, "\n{}", cells.join(","))?;
            }
            s
        }
        Format::Text => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| columns.iter().map(|c| cell_text(r.get(c))).collect())
                .collect();
            let widths: Vec<usize> = (0..columns.len())
                .map(|i| {
                    table
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain([columns[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<String>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let mut s = line(columns.iter().map(|c| c.to_string()).collect());
            for r in table {
                write!(s, "\n{}", line(r))?;
            }
            s
        }
    };
    println!("{out}");
    Ok(())
}
