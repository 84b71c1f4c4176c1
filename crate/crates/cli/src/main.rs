//! `spanlf`: maximum spanning linear forests, Hamiltonian completion,
//! forest augmentation and exact Turán numbers from the command line.
//!
//! Exit codes: 0 success, 2 bad input, 3 budget exhausted, 4 precondition
//! failure, 5 internal invariant violation.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spanlf_core::bounds::CellStatus;
use spanlf_core::{
    augment_forest, from_graph6, hamiltonian_completion_with, max_linear_forest_with, sweep,
    to_graph6, verify_spec, witness_catalog, AugmentError, Budget, Graph, LinearForest, Method,
    SearchError, SearchSpec, SolverConfig, SolverError, Strategy, Verdict,
};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "spanlf",
    version,
    about = "Exact spanning linear forest toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum spanning linear forest of each input graph.
    Maxlf(GraphArgs),
    /// Hamiltonian completion number of each input graph.
    Hcn(GraphArgs),
    /// Extend a forest with n - k edges to one with n - k + 1 edges.
    Augment(AugmentArgs),
    /// Exact Turán number of the linear forests with at least n - k + 1 edges.
    Ex(ExArgs),
    /// Exact values over a grid of (n, k).
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Node budget; 0 means unlimited.
    #[arg(long, default_value_t = 100_000_000)]
    budget_nodes: u64,
    /// Time budget in seconds; 0 means unlimited.
    #[arg(long, env = "SPANLF_BUDGET_SECS", default_value_t = 60.0)]
    budget_secs: f64,
    /// Worker threads for parallel searches. Output does not depend on it.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report wall-clock time (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

impl Common {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: (self.budget_nodes > 0).then_some(self.budget_nodes),
            max_time: (self.budget_secs > 0.0).then(|| Duration::from_secs_f64(self.budget_secs)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Graph6,
    /// Sweep only.
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Dp,
    Bnb,
}

#[derive(Args)]
struct GraphArgs {
    /// Inline graph6 string. Without it, graphs are read from --input or stdin.
    graph: Option<String>,
    /// File with one graph6 string per line; "-" for stdin.
    #[arg(long, conflicts_with = "graph")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AugmentArgs {
    /// Graph in graph6.
    #[arg(long)]
    graph: String,
    /// Forest as JSON ({"paths":[[...],...]}), or @path to read it from a file.
    #[arg(long)]
    forest: String,
    /// Family parameter; defaults to n minus the forest's edge count.
    #[arg(long)]
    k: Option<usize>,
    /// Path endpoint to join.
    #[arg(long)]
    u: usize,
    /// Endpoint of a different path.
    #[arg(long)]
    v: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Closure,
    Exhaustive,
}

#[derive(Args)]
struct ExArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Family parameter: forests with at least n - k + 1 edges are forbidden.
    #[arg(long)]
    k: usize,
    /// Override the complement edge limit.
    #[arg(long)]
    max_complement_edges: Option<usize>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Closure)]
    strategy: StrategyArg,
    /// Write the witness catalog (graph6, one per line) here.
    #[arg(long)]
    witnesses_out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    /// Vertex counts: a number or an inclusive range such as 6..12.
    #[arg(long)]
    n: String,
    /// Family parameters: a number or an inclusive range such as 2..4.
    #[arg(long)]
    k: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Status {
    Ok = 0,
    Input = 2,
    Budget = 3,
    Precondition = 4,
    Invariant = 5,
}

struct Failure {
    status: Status,
    message: String,
}

impl Failure {
    fn new(status: Status, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

fn solver_failure(e: SolverError) -> Failure {
    let status = match e {
        SolverError::BudgetExhausted { .. } => Status::Budget,
        SolverError::TooFewVertices(_) | SolverError::TooLarge { .. } => Status::Precondition,
        SolverError::OrderMismatch { .. } | SolverError::BadFamily => Status::Input,
    };
    Failure::new(status, e.to_string())
}

fn search_failure(e: SearchError) -> Failure {
    Failure::new(Status::Input, e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Maxlf(args) => cmd_graphs(args, GraphCommand::MaxLf),
        Command::Hcn(args) => cmd_graphs(args, GraphCommand::Hcn),
        Command::Augment(args) => cmd_augment(args),
        Command::Ex(args) => cmd_ex(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match outcome {
        Ok(status) => ExitCode::from(status as u8),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status as u8)
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, text).map_err(|e| {
            Failure::new(
                Status::Input,
                format!("cannot write {}: {e}", path.display()),
            )
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::new(Status::Input, format!("cannot write output: {e}")))
        }
    }
}

fn json_line(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("values serialise");
    s.push('\n');
    s
}

fn read_source(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = fs::read_to_string(p).map_err(|e| {
                Failure::new(Status::Input, format!("cannot read {}: {e}", p.display()))
            })?
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::new(Status::Input, format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

#[derive(Clone, Copy)]
enum GraphCommand {
    MaxLf,
    Hcn,
}

fn cmd_graphs(args: GraphArgs, which: GraphCommand) -> Result<Status, Failure> {
    if matches!(args.common.format, Format::Graph6 | Format::Csv) {
        return Err(Failure::new(
            Status::Input,
            "this command supports --format json or table",
        ));
    }
    let lines: Vec<String> = match &args.graph {
        Some(g) => vec![g.clone()],
        None => read_source(args.input.as_ref())?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect(),
    };
    if lines.is_empty() {
        return Err(Failure::new(Status::Input, "no graphs given"));
    }
    let config = SolverConfig {
        method: match args.method {
            MethodArg::Auto => Method::Auto,
            MethodArg::Dp => Method::SubsetDp,
            MethodArg::Bnb => Method::BranchAndBound,
        },
        budget: args.common.budget(),
        workers: args.common.workers as usize,
    };

    let mut worst = Status::Ok;
    let mut records = Vec::new();
    for line in &lines {
        let started = std::time::Instant::now();
        let outcome = from_graph6(line)
            .map_err(|e| Failure::new(Status::Input, format!("bad graph6 {line:?}: {e}")))
            .and_then(|g| graph_record(&g, which, &config));
        let mut record = match outcome {
            Ok(fields) => fields,
            Err(f) => {
                worst = worst.max(f.status);
                json!({ "error": f.message, "exit": f.status as u8 })
            }
        };
        let map = record.as_object_mut().expect("records are objects");
        map.insert("graph".into(), json!(line));
        if args.common.timing {
            map.insert(
                "elapsed_ms".into(),
                json!(started.elapsed().as_millis() as u64),
            );
        }
        records.push(record);
    }

    let text = match args.common.format {
        Format::Json => records
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.as_object_mut()
                    .unwrap()
                    .insert("schema".into(), json!(SCHEMA));
                json_line(&r)
            })
            .collect(),
        _ => graph_table(&records, which),
    };
    emit(&args.common, &text)?;
    if lines.len() == 1 && worst != Status::Ok {
        // single input: report the failure on stderr as well
        let message = records[0]["error"].as_str().unwrap_or_default().to_string();
        return Err(Failure::new(worst, message));
    }
    Ok(worst)
}

fn graph_record(g: &Graph, which: GraphCommand, config: &SolverConfig) -> Result<Value, Failure> {
    match which {
        GraphCommand::MaxLf => {
            let r = max_linear_forest_with(g, config).map_err(solver_failure)?;
            Ok(json!({
                "n": g.n(),
                "size": r.size,
                "min_paths": g.n() - r.size,
                "witness": r.witness,
            }))
        }
        GraphCommand::Hcn => {
            let h = hamiltonian_completion_with(g, config).map_err(solver_failure)?;
            Ok(json!({ "n": g.n(), "hcn": h }))
        }
    }
}

fn graph_table(records: &[Value], which: GraphCommand) -> String {
    let value_key = match which {
        GraphCommand::MaxLf => "size",
        GraphCommand::Hcn => "hcn",
    };
    let mut rows = vec![["graph".to_string(), "n".to_string(), value_key.to_string()]];
    for r in records {
        let cell = |key: &str| match &r[key] {
            Value::Null => "-".to_string(),
            Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        let value = if r.get("error").is_some() {
            format!("error: {}", cell("error"))
        } else {
            cell(value_key)
        };
        rows.push([cell("graph"), cell("n"), value]);
    }
    align(&rows)
}

fn align<const N: usize>(rows: &[[String; N]]) -> String {
    let mut widths = [0usize; N];
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (i, (c, w)) in r.iter().zip(widths).enumerate() {
            if i + 1 == N {
                line.push_str(c);
            } else {
                line.push_str(&format!("{c:<w$}  "));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn cmd_augment(args: AugmentArgs) -> Result<Status, Failure> {
    if !matches!(args.common.format, Format::Json) {
        return Err(Failure::new(
            Status::Input,
            "augment supports --format json only",
        ));
    }
    let g = from_graph6(&args.graph)
        .map_err(|e| Failure::new(Status::Input, format!("bad graph6: {e}")))?;
    let forest_text = match args.forest.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::new(Status::Input, format!("cannot read {path}: {e}")))?,
        None => args.forest.clone(),
    };
    let f = LinearForest::from_json(&forest_text)
        .map_err(|e| Failure::new(Status::Input, format!("bad forest JSON: {e}")))?;
    let k = match args.k {
        Some(k) => k,
        None => g.n().checked_sub(f.edge_count()).ok_or_else(|| {
            Failure::new(
                Status::Precondition,
                "forest has more edges than the graph has vertices",
            )
        })?,
    };
    let out = augment_forest(&g, &f, k, args.u, args.v).map_err(|e| {
        let status = match e {
            AugmentError::Graph(_) if k == 0 => Status::Input,
            _ => Status::Precondition,
        };
        Failure::new(status, e.to_string())
    })?;
    if out.check(&g).is_err() || out.edge_count() != g.n() - k + 1 {
        return Err(Failure::new(
            Status::Invariant,
            "augmented forest failed validation",
        ));
    }
    let record = json!({
        "schema": SCHEMA,
        "graph": to_graph6(&g),
        "k": k,
        "edges": out.edge_count(),
        "forest": out,
    });
    emit(&args.common, &json_line(&record))?;
    Ok(Status::Ok)
}

fn cmd_ex(args: ExArgs) -> Result<Status, Failure> {
    if args.common.format == Format::Csv {
        return Err(Failure::new(
            Status::Input,
            "ex supports --format json, table or graph6",
        ));
    }
    let mut spec = SearchSpec::new(args.n, args.k)
        .map_err(search_failure)?
        .with_budget(args.common.budget())
        .with_workers(args.common.workers as usize)
        .with_strategy(match args.strategy {
            StrategyArg::Closure => Strategy::Closure,
            StrategyArg::Exhaustive => Strategy::Exhaustive,
        });
    if let Some(m) = args.max_complement_edges {
        spec = spec.with_max_complement_edges(m);
    }
    let v = verify_spec(&spec).map_err(search_failure)?;
    let r = &v.result;
    let catalog = witness_catalog(r);
    if let Some(path) = &args.witnesses_out {
        fs::write(path, &catalog).map_err(|e| {
            Failure::new(
                Status::Input,
                format!("cannot write {}: {e}", path.display()),
            )
        })?;
    }
    let record = json!({
        "schema": SCHEMA,
        "n": r.n,
        "k": r.k,
        "exact": r.exact_value,
        "lower": r.lower,
        "upper": r.upper,
        "within_bounds": r.within_bounds,
        "best_found": r.best_found,
        "witness_count": r.witnesses.len(),
        "witnesses_file": args.witnesses_out.as_ref().map(|p| p.display().to_string()),
        "classes_enumerated": r.enumerated,
        "max_complement_edges": r.max_complement_edges,
        "strategy": r.strategy,
        "verdict": v.verdict,
        "failures": v.failures,
        "elapsed_ms": args.common.timing.then_some(r.elapsed.as_millis() as u64),
        "complete": r.complete,
    });
    let text = match args.common.format {
        Format::Graph6 => catalog,
        Format::Table => {
            let show = |v: &Value| match v {
                Value::Null => "-".to_string(),
                Value::String(s) => s.clone(),
                v => v.to_string(),
            };
            let keys = [
                "n",
                "k",
                "exact",
                "lower",
                "upper",
                "within_bounds",
                "witness_count",
                "classes_enumerated",
                "verdict",
                "complete",
            ];
            let rows: Vec<[String; 2]> = keys
                .iter()
                .map(|k| [k.to_string(), show(&record[k])])
                .collect();
            align(&rows)
        }
        _ => json_line(&record),
    };
    emit(&args.common, &text)?;
    match v.verdict {
        Verdict::Fail => Err(Failure::new(Status::Invariant, v.failures.join("; "))),
        Verdict::Inconclusive => Err(Failure::new(
            Status::Budget,
            "search budget exhausted; the result is not exact",
        )),
        Verdict::Pass => Ok(Status::Ok),
    }
}

fn parse_range(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::new(Status::Input, format!("bad range {text:?}; use A or A..B"));
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let a = parse(text)?;
            (a, a)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn cmd_sweep(args: SweepArgs) -> Result<Status, Failure> {
    if args.common.format == Format::Graph6 {
        return Err(Failure::new(
            Status::Input,
            "sweep supports --format json, table or csv",
        ));
    }
    let ns = parse_range(&args.n)?;
    let ks = parse_range(&args.k)?;
    let report = sweep(ns, ks, args.common.budget(), args.common.workers as usize)
        .map_err(search_failure)?;
    let text = match args.common.format {
        Format::Table => report.to_table(),
        Format::Csv => report.to_csv(),
        _ => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    };
    emit(&args.common, &text)?;
    let violated = report.cells.iter().any(|c| {
        c.exact
            .is_some_and(|e| c.lower.is_some_and(|l| e < l) || c.upper.is_some_and(|u| e > u))
    });
    if violated {
        return Err(Failure::new(
            Status::Invariant,
            "an exact value lies outside its bounds",
        ));
    }
    if report.cells.iter().any(|c| c.status == CellStatus::Partial) {
        return Err(Failure::new(Status::Budget, "some cells ran out of budget"));
    }
    Ok(Status::Ok)
}
