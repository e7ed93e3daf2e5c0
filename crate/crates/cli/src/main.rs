use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use loccodes::bounds::{self, format_rational};
use loccodes::check;
use loccodes::codes::{ClassKind, CodeClass, Failure};
use loccodes::constructions::linear::{self, WordCode};
use loccodes::constructions::patterns::{builtin_pattern, pattern_search, search_lattices, PeriodicPattern};
use loccodes::graph::{Graph, GridFamily};
use loccodes::io;
use loccodes::solver::{self, SolveBudget};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "loccodes", version, about = "Verify, bound, construct and solve identifying-type codes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a code against a class.
    Verify {
        #[command(flatten)]
        target: CodeArgs,
        #[arg(long)]
        class: ClassKind,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Find a minimum code exactly.
    Solve {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        class: ClassKind,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, visible_alias = "budget-nodes")]
        max_nodes: Option<u64>,
        #[arg(long, visible_alias = "budget-secs")]
        max_seconds: Option<f64>,
        /// Search downward from this size instead of upward from the bound.
        #[arg(long)]
        size_hint: Option<usize>,
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Exact shares of the codewords of a covering code.
    Share {
        #[command(flatten)]
        target: CodeArgs,
        /// Report only this codeword.
        #[arg(long)]
        vertex: Option<String>,
        /// List every codeword in text output, not just the maximum.
        #[arg(long)]
        per_codeword: bool,
    },
    /// Counting lower bounds and construction upper bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Hamming codes, lifts and periodic grid patterns.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Recompute the published values.
    PaperCheck {
        /// Group (hypercube, grids, general) or row id substring.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long)]
    graph: String,
    /// File of vertex labels, or `inline:a,b,...`.
    #[arg(long)]
    code: String,
}

#[derive(Subcommand)]
enum BoundCmd {
    /// ceil(3·2^n / (3n − 2)).
    LidLower {
        #[arg(long)]
        n: u32,
    },
    /// 2^(2^s + k − s − 1) in dimension 2^s + k − 1.
    LidUpper {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
    },
    /// Minimum codeword count over all w×w torus windows.
    Window {
        #[command(flatten)]
        target: CodeArgs,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        kmin: usize,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    Hamming {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    HammingLift {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// F² ⊕ C for a covering code C of F^n.
    LiftCover {
        #[arg(long)]
        input: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realise a shipped pattern (or a pattern file) on a torus.
    Pattern {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        id: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// `PXxPY`; defaults to the smallest compatible torus.
        #[arg(long)]
        torus: Option<String>,
        #[arg(long)]
        class: Option<ClassKind>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search residue sets of a lattice (or all lattices of a determinant).
    Search {
        #[arg(long)]
        family: String,
        #[arg(long, required_unless_present = "v1")]
        det: Option<i64>,
        #[arg(long, value_parser = parse_vec, requires = "v2")]
        v1: Option<(i64, i64)>,
        #[arg(long, value_parser = parse_vec)]
        v2: Option<(i64, i64)>,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        class: ClassKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_vec(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] io::IoError),
    #[error(transparent)]
    Code(#[from] loccodes::codes::CodeError),
    #[error(transparent)]
    Bounds(#[from] loccodes::bounds::BoundsError),
    #[error(transparent)]
    Solve(#[from] solver::SolveError),
    #[error(transparent)]
    Construction(#[from] loccodes::constructions::ConstructionError),
    #[error(transparent)]
    Graph(#[from] loccodes::graph::GraphError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
}

/// Exit status of a completed command.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Negative = 1,
    Unknown = 3,
}

struct Outcome {
    status: Status,
    inputs: Value,
    payload: Value,
    text: String,
}

#[derive(Serialize)]
struct RunReport<'a> {
    schema_version: u32,
    tool: String,
    command: &'a str,
    seed: u64,
    inputs: Value,
    exit_code: i32,
    outcome: Value,
    elapsed_ms: u128,
}

fn class(kind: ClassKind, r: usize) -> Result<CodeClass, CliError> {
    Ok(CodeClass::new(kind, r)?)
}

fn failure_json(graph: &Graph, failure: &Option<Failure>) -> Value {
    match failure {
        None => Value::Null,
        Some(Failure::UncoveredVertex { v }) => json!({"kind": "uncovered_vertex", "vertex": graph.label(*v)}),
        Some(Failure::UnseparatedPair { u, v, shared }) => json!({
            "kind": "unseparated_pair",
            "u": graph.label(*u),
            "v": graph.label(*v),
            "shared": shared.iter().map(|&x| graph.label(x)).collect::<Vec<_>>(),
        }),
    }
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        fs::write(p, text).map_err(|source| CliError::Write { path: p.display().to_string(), source })?;
    }
    Ok(())
}

fn cmd_verify(target: &CodeArgs, kind: ClassKind, r: usize) -> Result<Outcome, CliError> {
    let graph = io::graph_from_uri(&target.graph)?;
    let code = io::load_code(&graph, &target.code)?;
    let report = code.verify(class(kind, r)?);
    let failure = failure_json(&graph, &report.failure);
    let text = if report.valid {
        format!("valid {} code of size {} on {}", report.class, code.len(), target.graph)
    } else {
        format!("invalid {} code: {failure}", report.class)
    };
    Ok(Outcome {
        status: if report.valid { Status::Ok } else { Status::Negative },
        inputs: json!({"graph": target.graph, "code": target.code, "class": kind.short_name(), "r": r}),
        payload: json!({"valid": report.valid, "size": code.len(), "failure": failure}),
        text,
    })
}

fn cmd_solve(
    uri: &str,
    kind: ClassKind,
    r: usize,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
    size_hint: Option<usize>,
    no_symmetry: bool,
) -> Result<Outcome, CliError> {
    let graph = io::graph_from_uri(uri)?;
    let budget = SolveBudget {
        max_nodes,
        max_time: max_seconds.map(Duration::from_secs_f64),
        size_hint,
        symmetry: !no_symmetry,
    };
    let inputs = json!({"graph": uri, "class": kind.short_name(), "r": r, "budget": budget});
    let res = match solver::solve_min(&graph, class(kind, r)?, &budget) {
        Err(solver::SolveError::Inadmissible { class, u, v }) => {
            return Ok(Outcome {
                status: Status::Negative,
                inputs,
                payload: json!({"admissible": false, "twins": [graph.label(u), graph.label(v)]}),
                text: format!("no {class} code exists: {} and {} are twins", graph.label(u), graph.label(v)),
            })
        }
        Err(solver::SolveError::Isolated(v)) => {
            return Ok(Outcome {
                status: Status::Negative,
                inputs,
                payload: json!({"admissible": false, "isolated": graph.label(v)}),
                text: format!("no total dominating code exists: {} is isolated", graph.label(v)),
            })
        }
        other => other?,
    };
    let witness: Vec<&str> = res.witness.iter().map(|&v| graph.label(v)).collect();
    let text = if res.exhausted_below {
        format!("optimal {} size {} ({} nodes): {}", res.class, res.optimal_size, res.nodes_explored, witness.join(" "))
    } else {
        format!(
            "budget exhausted: best size {}, proven lower bound {} ({} nodes)",
            res.optimal_size, res.proven_lower_bound, res.nodes_explored
        )
    };
    Ok(Outcome {
        status: if res.exhausted_below { Status::Ok } else { Status::Unknown },
        inputs,
        payload: json!({
            "optimal": res.exhausted_below,
            "size": res.optimal_size,
            "witness": witness,
            "nodes_explored": res.nodes_explored,
            "lower_bound_used": res.lower_bound_used,
            "proven_lower_bound": res.proven_lower_bound,
            "symmetry_used": res.symmetry_used,
        }),
        text,
    })
}

fn cmd_share(target: &CodeArgs, vertex: &Option<String>, per_codeword: bool) -> Result<Outcome, CliError> {
    let graph = io::graph_from_uri(&target.graph)?;
    let code = io::load_code(&graph, &target.code)?;
    let inputs = json!({"graph": target.graph, "code": target.code, "vertex": vertex});
    if let Some(label) = vertex {
        let v = graph.vertex_by_label(label).ok_or_else(|| CliError::Usage(format!("unknown vertex `{label}`")))?;
        let s = bounds::share(&code, v)?;
        return Ok(Outcome {
            status: Status::Ok,
            inputs,
            payload: json!({"vertex": label, "share": format_rational(&s)}),
            text: format!("s({label}) = {}", format_rational(&s)),
        });
    }
    let profile = bounds::share_profile(&code)?;
    let shares: serde_json::Map<String, Value> = profile
        .shares
        .iter()
        .map(|(&c, s)| (graph.label(c).to_string(), Value::from(format_rational(s))))
        .collect();
    let lower = bounds::max_share_lower_bound(&code)?;
    let listed = profile.shares.iter().filter(|_| per_codeword);
    let mut text: String = listed.map(|(&c, s)| format!("{}\t{}\n", graph.label(c), format_rational(s))).collect();
    text.push_str(&format!("max share {}, |V|/max = {}", format_rational(&profile.max_share), format_rational(&lower)));
    Ok(Outcome {
        status: Status::Ok,
        inputs,
        payload: json!({
            "shares": shares,
            "max_share": format_rational(&profile.max_share),
            "total": format_rational(&profile.total()),
            "lower_bound": format_rational(&lower),
        }),
        text,
    })
}

fn cmd_bound(cmd: &BoundCmd) -> Result<Outcome, CliError> {
    Ok(match cmd {
        BoundCmd::LidLower { n } => {
            let b = bounds::hypercube_lid_lower_bound(*n)?;
            Outcome { status: Status::Ok, inputs: json!({"n": n}), payload: json!({"bound": b}), text: b.to_string() }
        }
        BoundCmd::LidUpper { s, k } => {
            let b = bounds::hypercube_lid_upper_bound(*s, *k)?;
            Outcome {
                status: Status::Ok,
                inputs: json!({"s": s, "k": k}),
                payload: json!({"n": (1u64 << s) + *k as u64 - 1, "bound": b}),
                text: b.to_string(),
            }
        }
        BoundCmd::Window { target, w, kmin } => {
            let graph = io::graph_from_uri(&target.graph)?;
            let code = io::load_code(&graph, &target.code)?;
            let rep = bounds::window_count_bound(&code, *w, *kmin)?;
            let spec = graph.torus_spec().expect("window bound checked for a torus");
            let implied = rep.implied_lower_bound(&spec).map(|q| format_rational(&q));
            let text = match (&implied, rep.witness) {
                (Some(b), _) => format!("every {w}x{w} window holds >= {kmin} codewords; |C| >= {b}"),
                (None, Some((i, j))) => format!("window at ({i},{j}) holds only {} codewords", rep.min_count),
                (None, None) => unreachable!("failed window reports carry a witness"),
            };
            Outcome {
                status: if rep.holds { Status::Ok } else { Status::Negative },
                inputs: json!({"graph": target.graph, "code": target.code, "w": w, "kmin": kmin}),
                payload: json!({
                    "holds": rep.holds,
                    "min_count": rep.min_count,
                    "witness": rep.witness,
                    "implied_lower_bound": implied,
                    "code_size": code.len(),
                }),
                text,
            }
        }
    })
}

fn word_outcome(code: &WordCode, inputs: Value, out: &Option<PathBuf>, kind: ClassKind) -> Result<Outcome, CliError> {
    let labels = code.labels();
    write_out(out, &labels.iter().map(|l| format!("{l}\n")).collect::<String>())?;
    let valid = code.is_valid(kind)?;
    Ok(Outcome {
        status: if valid { Status::Ok } else { Status::Negative },
        inputs,
        payload: json!({"dimension": code.dim, "size": code.len(), "class": kind.short_name(), "valid": valid, "codewords": labels}),
        text: format!("{} codewords in F^{}, {} valid: {valid}", code.len(), code.dim, kind.short_name()),
    })
}

fn pattern_json(p: &PeriodicPattern) -> Value {
    json!({
        "family": p.family.name(),
        "v1": p.v1,
        "v2": p.v2,
        "residues": p.residues,
        "density": format_rational(&p.density()),
    })
}

fn parse_torus(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("bad torus size `{s}`, expected PXxPY"));
    let (a, b) = s.split_once('x').ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

fn cmd_construct(cmd: &ConstructCmd) -> Result<Outcome, CliError> {
    match cmd {
        ConstructCmd::Hamming { s, out } => {
            let code = linear::hamming(*s)?;
            if code.length > loccodes::graph::MAX_HYPERCUBE_DIM {
                return Err(CliError::Usage(format!("hamming({s}) has length {}; too long to list", code.length)));
            }
            word_outcome(&code.codewords(), json!({"s": s}), out, ClassKind::Covering)
        }
        ConstructCmd::HammingLift { s, k, out } => {
            let code = linear::hamming_lift(*s, *k)?.codewords();
            word_outcome(&code, json!({"s": s, "k": k}), out, ClassKind::LocalIdentifying)
        }
        ConstructCmd::LiftCover { input, n, out } => {
            let graph = Graph::hypercube(*n)?;
            let code = io::load_code(&graph, input)?;
            let words = WordCode::new(*n, code.vertices().into_iter().map(|v| v as u64))?;
            let lifted = linear::lift_covering_to_lid(&words)?;
            word_outcome(&lifted, json!({"input": input, "n": n}), out, ClassKind::LocalIdentifying)
        }
        ConstructCmd::Pattern { id, file, torus, class: kind, out } => {
            let (pattern, default_class) = match (id, file) {
                (Some(id), _) => {
                    let named = builtin_pattern(id)?;
                    (named.pattern, Some(named.class))
                }
                (None, Some(path)) => {
                    let text = fs::read_to_string(path).map_err(|source| {
                        CliError::Io(io::IoError::File { path: path.display().to_string(), source })
                    })?;
                    (io::parse_pattern(&text)?, None)
                }
                (None, None) => unreachable!("clap requires one of --id and --file"),
            };
            let class = match (kind, default_class) {
                (Some(k), _) => CodeClass::unit(*k),
                (None, Some(c)) => c,
                (None, None) => return Err(CliError::Usage("--class is required with --file".into())),
            };
            let (px, py) = match torus {
                Some(t) => parse_torus(t)?,
                None => pattern.base_torus(),
            };
            let graph = pattern.torus(px, py)?;
            let code = pattern.code_on(&graph)?;
            write_out(out, &io::format_code(&code))?;
            let report = code.verify(class);
            Ok(Outcome {
                status: if report.valid { Status::Ok } else { Status::Negative },
                inputs: json!({"id": id, "file": file, "torus": [px, py], "class": class.kind.short_name()}),
                payload: json!({
                    "pattern": pattern_json(&pattern),
                    "torus": format!("torus:{}:{px}x{py}", pattern.family.name()),
                    "size": code.len(),
                    "valid": report.valid,
                    "failure": failure_json(&graph, &report.failure),
                }),
                text: format!(
                    "{} codewords on {}x{} {} torus (density {}), {} valid: {}",
                    code.len(),
                    px,
                    py,
                    pattern.family.name(),
                    format_rational(&pattern.density()),
                    class,
                    report.valid
                ),
            })
        }
        ConstructCmd::Search { family, det, v1, v2, count, class: kind, out } => {
            let fam = GridFamily::parse(family).ok_or_else(|| CliError::Usage(format!("unknown family `{family}`")))?;
            let class = CodeClass::unit(*kind);
            let found = match (v1, v2) {
                (Some(v1), Some(v2)) => pattern_search(fam, *v1, *v2, *count, class)?,
                _ => search_lattices(fam, det.expect("clap requires --det without --v1"), *count, class)?,
            };
            let inputs = json!({"family": family, "det": det, "v1": v1, "v2": v2, "count": count, "class": kind.short_name()});
            Ok(match found {
                Some(p) => {
                    write_out(out, &io::format_pattern(&p))?;
                    Outcome {
                        status: Status::Ok,
                        inputs,
                        text: io::format_pattern(&p).trim_end().to_string(),
                        payload: json!({"found": true, "pattern": pattern_json(&p)}),
                    }
                }
                None => Outcome {
                    status: Status::Negative,
                    inputs,
                    payload: json!({"found": false}),
                    text: "no valid residue set for the searched lattices".into(),
                },
            })
        }
    }
}

fn cmd_paper_check(only: &Option<String>, seed: u64) -> Outcome {
    let rows = check::run(only.as_deref(), seed);
    let all = rows.iter().all(|r| r.passed);
    let text = rows
        .iter()
        .map(|r| format!("{:4} {:9} {:28} {:>7}ms  {}", if r.passed { "PASS" } else { "FAIL" }, r.group, r.id, r.millis, r.detail))
        .collect::<Vec<_>>()
        .join("\n");
    Outcome {
        status: if all { Status::Ok } else { Status::Negative },
        inputs: json!({"only": only}),
        payload: json!({
            "passed": rows.iter().filter(|r| r.passed).count(),
            "failed": rows.iter().filter(|r| !r.passed).count(),
            "rows": rows,
        }),
        text,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Solve { .. } => "solve",
        Command::Share { .. } => "share",
        Command::Bound(_) => "bound",
        Command::Construct(_) => "construct",
        Command::PaperCheck { .. } => "paper-check",
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify { target, class, r } => cmd_verify(target, *class, *r),
        Command::Solve { graph, class, r, max_nodes, max_seconds, size_hint, no_symmetry } => {
            cmd_solve(graph, *class, *r, *max_nodes, *max_seconds, *size_hint, *no_symmetry)
        }
        Command::Share { target, vertex, per_codeword } => cmd_share(target, vertex, *per_codeword),
        Command::Bound(b) => cmd_bound(b),
        Command::Construct(c) => cmd_construct(c),
        Command::PaperCheck { only } => Ok(cmd_paper_check(only, cli.seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match cli.format {
        Format::Text => println!("{}", outcome.text),
        Format::Json => {
            let report = RunReport {
                schema_version: SCHEMA_VERSION,
                tool: format!("loccodes {}", env!("CARGO_PKG_VERSION")),
                command: command_name(&cli.command),
                seed: cli.seed,
                inputs: outcome.inputs,
                exit_code: outcome.status as i32,
                outcome: outcome.payload,
                elapsed_ms: start.elapsed().as_millis(),
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            eprintln!("{}", outcome.text);
        }
    }
    ExitCode::from(outcome.status as u8)
}
