use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use primebound::oracle::{exhaustive_prime_bound, OracleBudget};
use primebound::{
    build_prime_extension, compute_families, parse_graph, prime_bound, strong_module_tree,
    verify_extension, write_edge_list, Error, ExtensionReport, ExtensionResult, Format, Graph,
};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_INPUT: u8 = 1;
const EXIT_CONTRACT: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "primebound",
    version,
    about = "Modular decomposition and optimal prime extensions of graphs"
)]
struct Cli {
    /// Input format: auto, edgelist or graph6.
    #[arg(long, global = true, default_value = "auto")]
    format: Format,
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the JSON report.
    #[arg(long, global = true)]
    timing: bool,
    /// Reserved. Every construction is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strong-module tree.
    Decompose { path: PathBuf },
    /// Clique, stable and prime module families and the vertex partitions.
    Families { path: PathBuf },
    /// The prime bound with its certificate.
    Bound { path: PathBuf },
    /// Build a prime extension with the optimal number of added vertices.
    Extend {
        path: PathBuf,
        /// Write the extension as an edge list to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an extension produced by `extend --json` against its input graph.
    Verify { graph: PathBuf, extension: PathBuf },
    /// Exhaustive search for the prime bound on small graphs.
    Oracle {
        path: PathBuf,
        /// Largest number of added vertices to try.
        #[arg(long, default_value_t = 4)]
        max_added: usize,
        /// Largest number of attachment patterns per size.
        #[arg(long, default_value_t = 1 << 26)]
        budget: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Decompose { .. } => "decompose",
            Command::Families { .. } => "families",
            Command::Bound { .. } => "bound",
            Command::Extend { .. } => "extend",
            Command::Verify { .. } => "verify",
            Command::Oracle { .. } => "oracle",
        }
    }

    fn input(&self) -> &Path {
        match self {
            Command::Decompose { path }
            | Command::Families { path }
            | Command::Bound { path }
            | Command::Extend { path, .. }
            | Command::Oracle { path, .. } => path,
            Command::Verify { graph, .. } => graph,
        }
    }
}

#[derive(Serialize)]
struct InputInfo {
    path: String,
    vertices: usize,
    edges: usize,
}

#[derive(Serialize)]
struct RunReport {
    input: InputInfo,
    subcommand: &'static str,
    payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

enum Failure {
    Input(String),
    Contract(String),
    /// The command ran but its check did not pass; output is still printed.
    Rejected(Output),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Contract(e.to_string())
        }
    }
}

struct Output {
    payload: Value,
    text: String,
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path, format: Format) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    parse_graph(&text, format).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn fmt_set(g: &Graph, members: &[usize]) -> String {
    let names: Vec<String> = members.iter().map(|&v| g.label(v)).collect();
    format!("{{{}}}", names.join(", "))
}

fn fmt_family(g: &Graph, family: &[primebound::VertexSet]) -> String {
    let parts: Vec<String> = family.iter().map(|s| fmt_set(g, &s.to_vec())).collect();
    format!("[{}]", parts.join(", "))
}

fn run(cli: &Cli, g: &Graph) -> Result<Output, Failure> {
    match &cli.command {
        Command::Decompose { .. } => {
            let tree = strong_module_tree(g)?;
            Ok(Output {
                payload: to_value(&tree.to_json_tree()),
                text: tree.render(g),
            })
        }
        Command::Families { .. } => {
            let r = compute_families(g)?;
            let mut text = String::new();
            let _ = writeln!(text, "cliques: {}", fmt_family(g, &r.cliques));
            let _ = writeln!(text, "stables: {}", fmt_family(g, &r.stables));
            let _ = writeln!(text, "primes: {}", fmt_family(g, &r.primes));
            let _ = writeln!(text, "singles: {}", fmt_set(g, &r.singles.to_vec()));
            let _ = writeln!(text, "approx classes: {}", fmt_family(g, &r.approx_classes));
            let _ = writeln!(text, "twin classes: {}", fmt_family(g, &r.twin_classes));
            Ok(Output {
                payload: to_value(&r),
                text,
            })
        }
        Command::Bound { .. } => {
            let cert = prime_bound(g)?;
            let payload = to_value(&cert);
            let text = format!(
                "p = {} ({}), m = {}, omega_m = {}, alpha_m = {}\n",
                cert.p,
                payload["case"].as_str().unwrap_or(""),
                cert.m,
                cert.omega_m,
                cert.alpha_m
            );
            Ok(Output { payload, text })
        }
        Command::Extend { out, .. } => {
            let r = build_prime_extension(g)?;
            let edges = write_edge_list(&r.h);
            if let Some(out) = out {
                fs::write(out, &edges).map_err(|e| {
                    Failure::Contract(format!("cannot write {}: {e}", out.display()))
                })?;
            }
            let payload = to_value(&r.report());
            let mut text = format!(
                "added: {} ({})\n",
                r.p,
                payload["case"].as_str().unwrap_or("")
            );
            if out.is_none() {
                text.push_str(&edges);
            }
            Ok(Output { payload, text })
        }
        Command::Verify { extension, .. } => {
            let value: Value = serde_json::from_str(&read_text(extension)?).map_err(|e| {
                Failure::Input(format!("{}: invalid JSON: {e}", extension.display()))
            })?;
            // Accept either a bare extension report or a full run report.
            let body = value.get("payload").cloned().unwrap_or(value);
            let report: ExtensionReport = serde_json::from_value(body).map_err(|e| {
                Failure::Input(format!(
                    "{}: not an extension report: {e}",
                    extension.display()
                ))
            })?;
            let result = ExtensionResult::from_report(&report)?;
            let verdict = verify_extension(g, &result);
            let text = if verdict.ok {
                "ok\n".to_string()
            } else {
                verdict.diagnoses.iter().map(|d| format!("{d}\n")).collect()
            };
            let output = Output {
                payload: to_value(&verdict),
                text,
            };
            if verdict.ok {
                Ok(output)
            } else {
                Err(Failure::Rejected(output))
            }
        }
        Command::Oracle {
            max_added, budget, ..
        } => {
            let caps =
                OracleBudget::new(OracleBudget::default().max_vertices, *max_added, *budget)?;
            let found = exhaustive_prime_bound(g, &caps)?;
            let payload = json!({
                "p": found.p,
                "extension": write_edge_list(&found.extension),
                "max_added": caps.max_added,
                "max_candidates": caps.max_candidates,
            });
            Ok(Output {
                text: format!("p = {}\n", found.p),
                payload,
            })
        }
    }
}

fn emit(cli: &Cli, g: &Graph, output: &Output, started: Instant) {
    if cli.json {
        let report = RunReport {
            input: InputInfo {
                path: cli.command.input().display().to_string(),
                vertices: g.n(),
                edges: g.edge_count(),
            },
            subcommand: cli.command.name(),
            payload: output.payload.clone(),
            elapsed_ms: cli.timing.then(|| started.elapsed().as_millis()),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        print!("{}", output.text);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let g = match read_graph(cli.command.input(), cli.format) {
        Ok(g) => g,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_INPUT);
        }
        Err(_) => unreachable!("reading a graph fails only on input"),
    };
    match run(&cli, &g) {
        Ok(output) => {
            emit(&cli, &g, &output, started);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Contract(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONTRACT)
        }
        Err(Failure::Rejected(output)) => {
            emit(&cli, &g, &output, started);
            ExitCode::from(EXIT_CONTRACT)
        }
    }
}
