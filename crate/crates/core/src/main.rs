use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dlknot::catalog::{degree_k_family, stretch_family};
use dlknot::links::{distinguish_l_family, parse_sewed, separability_check, to_dl_diagram, Obstruction};
use dlknot::projection::{essential_diagram, essential_subset, pr_wp, remove_double_lines};
use dlknot::search::{search, SearchParams};
use dlknot::{DlDiagram, InvariantReport, Move, MoveKind, MoveTrace};

/// Double-line knot diagrams: invariants, moves, projections and searches.
///
/// Diagram and link arguments are literal token words, `@path` to read a
/// file, or `-` for stdin.
#[derive(Parser)]
#[command(name = "dlknot", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree, winding parities, counts and essential count.
    Invariants {
        diagram: String,
        /// Skip the (exponential) essential-count search.
        #[arg(long)]
        no_essential: bool,
    },
    /// Normalize all winding parities to 0 (degree-0 diagrams only).
    Project { diagram: String },
    /// Delete all double lines.
    Strip { diagram: String },
    /// Remove every double line from a degree-0 diagram with parities in {0,-1}.
    Remove {
        diagram: String,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Essential set and the essential diagram it induces.
    Essential {
        diagram: String,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Nontrivial one-crossing classes of degree k.
    Catalog { k: i64 },
    /// Essential counts of (m+sk, k-sk-m)_+ for s = 0..=s_max.
    Stretch { m: i64, k: i64, s_max: i64 },
    /// Convert a sewed link to a double-line diagram.
    LinkConvert { link: String },
    /// Check the separability criterion for a sewed link.
    LinkSeparable {
        link: String,
        #[arg(long)]
        certificate_out: Option<PathBuf>,
    },
    /// Invariant records of L_(m,-m)_+ for m = 1..=m_max.
    LinkFamily { m_max: i64 },
    /// Bounded search for a move sequence between two diagrams.
    Search {
        from: String,
        to: String,
        #[arg(long, default_value_t = 8)]
        max_moves: usize,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        /// Comma-separated move kinds, or `all`.
        #[arg(long, default_value = "all")]
        kinds: String,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Apply one move, written as in a trace file.
    Apply {
        diagram: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, required = true)]
        mv: Vec<String>,
    },
    /// Replay a trace (text or JSON) and print the final diagram.
    Replay { trace: String },
}

enum Failure {
    Negative,
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read_arg(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn diagram_arg(arg: &str) -> Result<DlDiagram, Failure> {
    Ok(DlDiagram::parse(&read_arg(arg)?)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn trace_value(t: &MoveTrace) -> Value {
    serde_json::from_str(&t.to_json()).expect("trace json is valid")
}

fn parse_kinds(s: &str) -> Result<Vec<MoveKind>, Failure> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(MoveKind::ALL.to_vec());
    }
    Ok(s.split(',').map(|k| k.trim().parse()).collect::<Result<Vec<MoveKind>, _>>()?)
}

fn run(cli: &Cli) -> Outcome {
    let json = cli.json;
    let out = match &cli.command {
        Command::Invariants { diagram, no_essential } => {
            let d = diagram_arg(diagram)?;
            let mut report = InvariantReport::of(&d);
            if !no_essential {
                report.essential = Some(dlknot::projection::essential_count(&d));
            }
            if json {
                pretty(&serde_json::to_value(&report)?)
            } else {
                let ps: Vec<String> = d.parities().iter().map(|(c, p)| format!("{c}:{p}")).collect();
                let mut s = format!(
                    "degree\t{}\nparities\t{}\ncrossings\t{}\ndouble_lines\t{}\n",
                    report.degree,
                    ps.join(" "),
                    report.crossings,
                    report.double_lines
                );
                if let Some(e) = report.essential {
                    s += &format!("essential\t{e}\n");
                }
                s
            }
        }
        Command::Project { diagram } => {
            let p = pr_wp(&diagram_arg(diagram)?)?;
            if json {
                pretty(&json!({ "diagram": p.serialize() }))
            } else {
                format!("{p}\n")
            }
        }
        Command::Strip { diagram } => {
            let p = diagram_arg(diagram)?.proj();
            if json {
                pretty(&json!({ "diagram": p.serialize() }))
            } else {
                format!("{p}\n")
            }
        }
        Command::Remove { diagram, trace_out } => {
            let cert = remove_double_lines(&diagram_arg(diagram)?)?;
            if let Some(path) = trace_out {
                write_file(path, &cert.trace.to_text())?;
            }
            if json {
                pretty(&json!({ "result": cert.result.serialize(), "trace": trace_value(&cert.trace) }))
            } else if trace_out.is_some() {
                format!("{}\n", cert.result)
            } else {
                format!("{}# result {}\n", cert.trace.to_text(), cert.result)
            }
        }
        Command::Essential { diagram, trace_out } => {
            let d = diagram_arg(diagram)?;
            let report = essential_subset(&d);
            let (ess, trace) = essential_diagram(&d)?;
            if let Some(path) = trace_out {
                write_file(path, &trace.to_text())?;
            }
            if json {
                let mut v = serde_json::to_value(&report)?;
                v["diagram"] = json!(ess.serialize());
                pretty(&v)
            } else {
                let subset: Vec<String> = report.subset.iter().map(|i| i.to_string()).collect();
                format!("essential\t{}\nsubset\t{}\ndiagram\t{}\n", report.cardinality, subset.join(" "), ess)
            }
        }
        Command::Catalog { k } => {
            let classes = degree_k_family(*k)?;
            if json {
                pretty(&serde_json::to_value(&classes)?)
            } else {
                let mut s = String::from("m\tn\teps\tdegree\tparity\tessential\tmembers\n");
                for c in &classes {
                    let r = &c.representative;
                    let ps: Vec<String> = c.record.parity_orbits.iter().map(|p| p.to_string()).collect();
                    let ms: Vec<String> = c.members.iter().map(|m| format!("({},{})", m.m, m.n)).collect();
                    s += &format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                        r.m,
                        r.n,
                        r.eps.symbol(),
                        c.record.degree,
                        ps.join(" "),
                        c.record.essential,
                        ms.join(" ")
                    );
                }
                s
            }
        }
        Command::Stretch { m, k, s_max } => {
            let rows = stretch_family(*m, *k, *s_max)?;
            if json {
                let v: Vec<Value> = rows
                    .iter()
                    .enumerate()
                    .map(|(s, (o, e))| json!({ "s": s, "m": o.m, "n": o.n, "eps": o.eps, "essential": e }))
                    .collect();
                pretty(&Value::Array(v))
            } else {
                let mut s = String::from("s\tm\tn\teps\tessential\n");
                for (i, (o, e)) in rows.iter().enumerate() {
                    s += &format!("{i}\t{}\t{}\t{}\t{e}\n", o.m, o.n, o.eps.symbol());
                }
                s
            }
        }
        Command::LinkConvert { link } => {
            let l = parse_sewed(&read_arg(link)?)?;
            let d = to_dl_diagram(&l);
            if json {
                pretty(&json!({ "diagram": d.serialize(), "linking_number": d.degree() }))
            } else {
                format!("{d}\n")
            }
        }
        Command::LinkSeparable { link, certificate_out } => {
            let l = parse_sewed(&read_arg(link)?)?;
            let v = separability_check(&l)?;
            if let (Some(path), Some(cert)) = (certificate_out, &v.witness) {
                write_file(path, &cert.trace.to_text())?;
            }
            let text = if json {
                let certificate = match (&v.witness, certificate_out) {
                    (Some(_), Some(path)) => json!(path.display().to_string()),
                    _ => Value::Null,
                };
                let mut o = json!({
                    "separable": v.separable,
                    "obstruction": v.obstruction,
                    "certificate": certificate,
                });
                if let Some(e) = v.essential {
                    o["essential"] = json!(e);
                }
                pretty(&o)
            } else {
                let mut s = format!("separable\t{}\n", v.separable);
                match v.obstruction {
                    Some(Obstruction::LinkingNumber { linking_number }) => {
                        s += &format!("obstruction\tlinking number {linking_number}\n")
                    }
                    Some(Obstruction::Parity { crossing, parity }) => {
                        s += &format!("obstruction\tcrossing {crossing} parity {parity}\n")
                    }
                    None => {}
                }
                if let Some(e) = v.essential {
                    s += &format!("essential\t{e}\n");
                }
                if let (Some(cert), None) = (&v.witness, certificate_out) {
                    s += &cert.trace.to_text();
                }
                s
            };
            return Ok((text, v.separable));
        }
        Command::LinkFamily { m_max } => {
            let rows = distinguish_l_family(*m_max)?;
            if json {
                pretty(&serde_json::to_value(&rows)?)
            } else {
                let mut s = String::from("m\tlink\tessential\n");
                for r in &rows {
                    s += &format!("{}\t{}\t{}\n", r.m, r.link, r.record.essential);
                }
                s
            }
        }
        Command::Search { from, to, max_moves, max_len, kinds, trace_out } => {
            let (a, b) = (diagram_arg(from)?, diagram_arg(to)?);
            let params = SearchParams { max_moves: *max_moves, max_len: *max_len, kinds: parse_kinds(kinds)? };
            let r = search(&a, &b, &params);
            if let (Some(path), Some(t)) = (trace_out, &r.trace) {
                write_file(path, &t.to_text())?;
            }
            let text = if json {
                pretty(&json!({
                    "found": r.found,
                    "explored": r.explored,
                    "max_moves": params.max_moves,
                    "max_len": params.max_len,
                    "mismatch": r.mismatch,
                    "trace": r.trace.as_ref().map(trace_value),
                }))
            } else {
                let mut s = format!("found\t{}\nexplored\t{}\n", r.found, r.explored);
                if let Some(m) = &r.mismatch {
                    s += &format!("mismatch\t{m}\n");
                }
                if let (Some(t), None) = (&r.trace, trace_out) {
                    s += &t.to_text();
                }
                s
            };
            return Ok((text, r.found));
        }
        Command::Apply { diagram, mv } => {
            let d = diagram_arg(diagram)?;
            let m: Move = mv.join(" ").parse()?;
            let next = m.apply(&d)?;
            if json {
                pretty(&json!({ "diagram": next.serialize() }))
            } else {
                format!("{next}\n")
            }
        }
        Command::Replay { trace } => {
            let text = read_arg(trace)?;
            let t = if text.trim_start().starts_with('{') {
                MoveTrace::from_json(&text)?
            } else {
                MoveTrace::from_text(&text)?
            };
            let end = t.replay()?;
            if json {
                pretty(&json!({ "diagram": end.serialize(), "steps": t.steps.len() }))
            } else {
                format!("{end}\n")
            }
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(text, positive)| {
        match &cli.output {
            Some(path) => write_file(path, &text)?,
            None => print!("{text}"),
        }
        if positive {
            Ok(())
        } else {
            Err(Failure::Negative)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
