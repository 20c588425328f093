//! Command-line front end: decide and construct difference-k colourings,
//! build configurations, enumerate colouring spaces, reduce and classify
//! graphs, convert alternating sign matrices, and run the brute-force
//! oracles. Outputs are deterministic: identical inputs give byte-identical
//! stdout. Exit codes: 0 success/colourable, 1 negative answer, 2 invalid
//! input.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use asbg_core::asm::{asbg_to_asm, asm_to_asbg, natural_orders, SignMatrix};
use asbg_core::colouring::{decide_difference1, verify_difference1, Decision};
use asbg_core::config_space::{
    brute_force_configuration, configure_cactus, enumerate_colourings, Configuration,
};
use asbg_core::flow::{decide_difference_0, decide_difference_k};
use asbg_core::graph::{Colouring, Graph};
use asbg_core::oracle::{
    oracle_configurable, oracle_cycle_relation, oracle_difference_k, OracleBudget,
};
use asbg_core::structure::{analyze, is_cactus, reduce};
use asbg_core::ColouredGraph;

#[derive(Parser)]
#[command(name = "asbg", version, about = "Difference-k colourings of bipartite graphs and alternating sign matrix conversion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Process input files with up to N worker threads (output order is
    /// still the input order).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write a run report (command echo, input digest, outcome, timing) per
    /// input to stderr.
    #[arg(long, global = true)]
    report: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Method {
    /// Layer construction on cacti, permutation search otherwise.
    #[default]
    Auto,
    Cactus,
    Brute,
}

#[derive(Args)]
struct InputFiles {
    /// Input files in the graph JSON schema.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide difference-k colourability (JSON decision per input).
    Decide {
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[command(flatten)]
        files: InputFiles,
    },
    /// Construct a difference-k colouring and print the coloured graph.
    Colour {
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        files: InputFiles,
    },
    /// Find a configuration witnessing that a colouring is an ASBG.
    Configure {
        #[arg(long, value_enum, default_value_t)]
        method: Method,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        files: InputFiles,
    },
    /// Enumerate every difference-1 colouring via rotation closure.
    Enumerate {
        #[command(flatten)]
        files: InputFiles,
    },
    /// Print the reduced form (leaf-twig configurations removed).
    Reduce {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        files: InputFiles,
    },
    /// Print the structure report: classification, limbs, cycle classes.
    Classify {
        #[command(flatten)]
        files: InputFiles,
    },
    /// Alternating sign matrix operations.
    Asm {
        #[command(subcommand)]
        op: AsmCommand,
    },
    /// Brute-force reference implementations.
    Oracle {
        #[command(subcommand)]
        op: OracleCommand,
    },
}

#[derive(Subcommand)]
enum AsmCommand {
    /// Count n-by-n alternating sign matrices (n up to 5).
    Count { n: u32 },
    /// Convert matrices (text files) to coloured bipartite graphs.
    ToGraph {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        files: InputFiles,
    },
    /// Convert coloured graphs back to sign matrices.
    FromGraph {
        /// Comma-separated row order (defaults to sorted part1).
        #[arg(long)]
        rows: Option<String>,
        /// Comma-separated column order (defaults to sorted part2).
        #[arg(long)]
        cols: Option<String>,
        #[command(flatten)]
        files: InputFiles,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// All difference-k colourings by scanning 2^|E| assignments.
    DifferenceK {
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[command(flatten)]
        files: InputFiles,
    },
    /// Common cycle classes from explicit cycle enumeration.
    CycleClasses {
        #[command(flatten)]
        files: InputFiles,
    },
    /// Exhaustive configurability check (coloured input, parts up to 8).
    Configurable {
        #[command(flatten)]
        files: InputFiles,
    },
}

#[derive(Serialize)]
struct DecisionJson {
    colourable: bool,
    colouring: Option<BTreeMap<String, String>>,
    certificate: Option<String>,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    input: String,
    digest: String,
    outcome: String,
    elapsed_ms: u128,
}

fn colouring_map(c: &Colouring) -> BTreeMap<String, String> {
    c.to_json_map()
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT output: edges carry color attributes; a configuration adds two
/// rank=same blocks with invisible chains pinning the vertex order.
fn to_dot(g: &Graph, colouring: Option<&Colouring>, cfg: Option<&Configuration>) -> String {
    let mut out = String::from("graph asbg {\n");
    if let Some(cfg) = cfg {
        for order in [&cfg.order1, &cfg.order2] {
            out.push_str("  { rank=same; ");
            for v in order {
                out.push_str(&format!("\"{}\"; ", dot_escape(v)));
            }
            out.push('}');
            out.push('\n');
            if order.len() > 1 {
                out.push_str("  ");
                let chain: Vec<String> = order
                    .iter()
                    .map(|v| format!("\"{}\"", dot_escape(v)))
                    .collect();
                out.push_str(&chain.join(" -- "));
                out.push_str(" [style=invis];\n");
            }
        }
    } else {
        for v in g.vertex_names() {
            out.push_str(&format!("  \"{}\";\n", dot_escape(v)));
        }
    }
    for e in g.edges() {
        let (a, b) = e.endpoints();
        match colouring.and_then(|c| c.get(&e)) {
            Some(colour) => out.push_str(&format!(
                "  \"{}\" -- \"{}\" [color={colour}];\n",
                dot_escape(a),
                dot_escape(b)
            )),
            None => out.push_str(&format!(
                "  \"{}\" -- \"{}\";\n",
                dot_escape(a),
                dot_escape(b)
            )),
        }
    }
    out.push_str("}\n");
    out
}

/// Outcome of one input file: stdout payload plus exit code.
struct Outcome {
    stdout: String,
    code: i32,
}

fn ok(stdout: String) -> anyhow::Result<Outcome> {
    Ok(Outcome { stdout, code: 0 })
}

fn negative(stdout: String) -> anyhow::Result<Outcome> {
    Ok(Outcome { stdout, code: 1 })
}

fn decide_general(g: &Graph, k: u64) -> anyhow::Result<DecisionJson> {
    Ok(match k {
        1 => match decide_difference1(g) {
            Decision::Colourable(c) => DecisionJson {
                colourable: true,
                colouring: Some(colouring_map(&c)),
                certificate: None,
            },
            Decision::NotColourable(cert) => DecisionJson {
                colourable: false,
                colouring: None,
                certificate: Some(cert.to_string()),
            },
        },
        0 => match decide_difference_0(g)? {
            Some(c) => DecisionJson {
                colourable: true,
                colouring: Some(colouring_map(&c)),
                certificate: None,
            },
            None => DecisionJson {
                colourable: false,
                colouring: None,
                certificate: Some("no difference-0 colouring: odd degree present".into()),
            },
        },
        k => match decide_difference_k(g, k)? {
            Some(c) => DecisionJson {
                colourable: true,
                colouring: Some(colouring_map(&c)),
                certificate: None,
            },
            None => DecisionJson {
                colourable: false,
                colouring: None,
                certificate: Some(format!("no difference-{k} colouring")),
            },
        },
    })
}

/// Reads a coloured graph when the input carries colours, otherwise decides
/// a difference-1 colouring first.
fn coloured_from_input(content: &str) -> anyhow::Result<Option<ColouredGraph>> {
    let has_colours = serde_json::from_str::<serde_json::Value>(content)
        .ok()
        .map(|v| v.get("colours").is_some())
        .unwrap_or(false);
    if has_colours {
        let cg = ColouredGraph::from_json(content)?;
        if !verify_difference1(&cg) {
            return Err(anyhow!("input colouring is not a difference-1 colouring"));
        }
        return Ok(Some(cg));
    }
    let g = Graph::from_json(content)?;
    match decide_difference1(&g) {
        Decision::Colourable(c) => Ok(Some(ColouredGraph::new(g, c)?)),
        Decision::NotColourable(_) => Ok(None),
    }
}

fn run_command(command: &Command, content: &str) -> anyhow::Result<Outcome> {
    match command {
        Command::Decide { k, .. } => {
            let g = Graph::from_json(content)?;
            let decision = decide_general(&g, *k)?;
            let code = i32::from(!decision.colourable);
            Ok(Outcome {
                stdout: serde_json::to_string(&decision)?,
                code,
            })
        }
        Command::Colour { k, format, .. } => {
            let g = Graph::from_json(content)?;
            let decision = decide_general(&g, *k)?;
            match decision.colouring {
                Some(map) => {
                    let colouring = Colouring::from_json_map(&g, &map)?;
                    match format {
                        Format::Json => ok(ColouredGraph::new(g, colouring)?.to_json()),
                        Format::Dot => ok(to_dot(&g, Some(&colouring), None)),
                    }
                }
                None => negative(serde_json::to_string(&decision)?),
            }
        }
        Command::Configure { method, format, .. } => {
            let Some(cg) = coloured_from_input(content)? else {
                return negative(
                    serde_json::to_string(&serde_json::json!({
                        "configurable": false,
                        "configuration": null,
                    }))?,
                );
            };
            let configuration = match method {
                Method::Cactus => Some(configure_cactus(&cg)?),
                Method::Brute => brute_force_configuration(&cg)?,
                Method::Auto => {
                    if is_cactus(&cg.graph) {
                        Some(configure_cactus(&cg)?)
                    } else {
                        brute_force_configuration(&cg)?
                    }
                }
            };
            match configuration {
                Some(cfg) => match format {
                    Format::Json => ok(serde_json::to_string(&serde_json::json!({
                        "configurable": true,
                        "configuration": cfg,
                    }))?),
                    Format::Dot => ok(to_dot(&cg.graph, Some(&cg.colouring), Some(&cfg))),
                },
                None => negative(serde_json::to_string(&serde_json::json!({
                    "configurable": false,
                    "configuration": null,
                }))?),
            }
        }
        Command::Enumerate { .. } => {
            let g = Graph::from_json(content)?;
            if !decide_difference1(&g).is_colourable() {
                return negative(serde_json::to_string(&serde_json::json!({
                    "count": 0,
                    "colourings": [],
                }))?);
            }
            let list = enumerate_colourings(&g)?;
            let maps: Vec<BTreeMap<String, String>> = list.iter().map(colouring_map).collect();
            ok(serde_json::to_string(&serde_json::json!({
                "count": maps.len(),
                "colourings": maps,
            }))?)
        }
        Command::Reduce { format, .. } => {
            let g = Graph::from_json(content)?;
            let reduced = reduce(&g);
            match format {
                Format::Json => ok(reduced.to_json()),
                Format::Dot => ok(to_dot(&reduced, None, None)),
            }
        }
        Command::Classify { .. } => {
            let g = Graph::from_json(content)?;
            let report = analyze(&g)?;
            ok(serde_json::to_string(&report.to_summary())?)
        }
        Command::Asm { op } => run_asm(op, content),
        Command::Oracle { op } => run_oracle(op, content),
    }
}

fn run_asm(op: &AsmCommand, content: &str) -> anyhow::Result<Outcome> {
    match op {
        AsmCommand::Count { .. } => unreachable!("count takes no input files"),
        AsmCommand::ToGraph { format, .. } => {
            let m = SignMatrix::parse(content)?;
            let cg = asm_to_asbg(&m)?;
            match format {
                Format::Json => ok(cg.to_json()),
                Format::Dot => ok(to_dot(&cg.graph, Some(&cg.colouring), None)),
            }
        }
        AsmCommand::FromGraph { rows, cols, .. } => {
            let cg = ColouredGraph::from_json(content)?;
            let (default_rows, default_cols) = natural_orders(&cg);
            let parse_order = |spec: &Option<String>, default: Vec<String>| match spec {
                Some(s) => s.split(',').map(|t| t.trim().to_string()).collect(),
                None => default,
            };
            let rows = parse_order(rows, default_rows);
            let cols = parse_order(cols, default_cols);
            let m = asbg_to_asm(&cg, &rows, &cols)?;
            ok(m.to_text())
        }
    }
}

fn run_oracle(op: &OracleCommand, content: &str) -> anyhow::Result<Outcome> {
    let budget = OracleBudget::default();
    match op {
        OracleCommand::DifferenceK { k, .. } => {
            let g = Graph::from_json(content)?;
            let list = oracle_difference_k(&g, *k, &budget)?;
            let maps: Vec<BTreeMap<String, String>> = list.iter().map(colouring_map).collect();
            ok(serde_json::to_string(&serde_json::json!({
                "count": maps.len(),
                "colourings": maps,
            }))?)
        }
        OracleCommand::CycleClasses { .. } => {
            let g = Graph::from_json(content)?;
            let classes = oracle_cycle_relation(&g, &budget)?;
            ok(serde_json::to_string(&serde_json::json!({ "classes": classes }))?)
        }
        OracleCommand::Configurable { .. } => {
            let cg = ColouredGraph::from_json(content)?;
            let configurable = oracle_configurable(&cg, &budget)?;
            let body = serde_json::to_string(&serde_json::json!({
                "configurable": configurable
            }))?;
            if configurable {
                ok(body)
            } else {
                negative(body)
            }
        }
    }
}

fn command_echo() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn input_files(command: &Command) -> Option<&[PathBuf]> {
    let files = match command {
        Command::Decide { files, .. }
        | Command::Colour { files, .. }
        | Command::Configure { files, .. }
        | Command::Enumerate { files }
        | Command::Reduce { files, .. }
        | Command::Classify { files } => files,
        Command::Asm { op } => match op {
            AsmCommand::Count { .. } => return None,
            AsmCommand::ToGraph { files, .. } | AsmCommand::FromGraph { files, .. } => files,
        },
        Command::Oracle { op } => match op {
            OracleCommand::DifferenceK { files, .. }
            | OracleCommand::CycleClasses { files }
            | OracleCommand::Configurable { files } => files,
        },
    };
    Some(&files.inputs)
}

/// Per-input result: stdout payload, optional report line, exit code.
type InputResult = (String, Option<String>, i32);

fn process_one(command: &Command, path: &PathBuf, report: bool) -> InputResult {
    let started = Instant::now();
    let result = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .and_then(|content| run_command(command, &content).map(|o| (content, o)));
    let (stdout, outcome, digest) = match result {
        Ok((content, outcome)) => {
            let digest = hex::encode(Sha256::digest(content.as_bytes()));
            let label = format!("exit {}", outcome.code);
            (outcome.stdout + "\n", label, digest)
        }
        Err(err) => {
            eprintln!("asbg: {}: {err:#}", path.display());
            (String::new(), "error".to_string(), String::new())
        }
    };
    let code = match outcome.as_str() {
        "exit 0" => 0,
        "exit 1" => 1,
        _ => 2,
    };
    let report_line = report.then(|| {
        serde_json::to_string(&RunReport {
            command: command_echo(),
            input: path.display().to_string(),
            digest,
            outcome,
            elapsed_ms: started.elapsed().as_millis(),
        })
        .expect("report serializes")
    });
    (stdout, report_line, code)
}

fn main() {
    let cli = Cli::parse();

    // `asm count` is the one subcommand without input files.
    if let Command::Asm {
        op: AsmCommand::Count { n },
    } = &cli.command
    {
        match asbg_core::asm::count_asms(*n) {
            Ok(count) => {
                println!(
                    "{}",
                    serde_json::json!({ "n": n, "count": count })
                );
                std::process::exit(0);
            }
            Err(err) => {
                eprintln!("asbg: {err}");
                std::process::exit(2);
            }
        }
    }

    let inputs = input_files(&cli.command)
        .expect("all other commands take input files")
        .to_vec();
    let jobs = cli.jobs.max(1).min(inputs.len().max(1));
    let mut results: Vec<Option<InputResult>> = vec![None; inputs.len()];

    if jobs <= 1 {
        for (i, path) in inputs.iter().enumerate() {
            results[i] = Some(process_one(&cli.command, path, cli.report));
        }
    } else {
        let slots: Vec<std::sync::Mutex<Option<InputResult>>> =
            results.iter().map(|_| std::sync::Mutex::new(None)).collect();
        let next = std::sync::atomic::AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i >= inputs.len() {
                        break;
                    }
                    let out = process_one(&cli.command, &inputs[i], cli.report);
                    *slots[i].lock().expect("slot lock") = Some(out);
                });
            }
        });
        for (i, slot) in slots.into_iter().enumerate() {
            results[i] = slot.into_inner().expect("slot lock");
        }
    }

    let mut exit = 0;
    let stdout = std::io::stdout();
    let mut handle = stdout.lock();
    for result in results.into_iter().flatten() {
        let (payload, report_line, code) = result;
        handle.write_all(payload.as_bytes()).expect("stdout");
        if let Some(line) = report_line {
            eprintln!("{line}");
        }
        exit = exit.max(code);
    }
    drop(handle);
    std::process::exit(exit);
}
