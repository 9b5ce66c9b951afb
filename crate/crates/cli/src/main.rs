//! `walkreg`: analyse, construct and draw walk-regular graphs.
//!
//! Exit codes: 0 success, 1 input error, 2 theorem violation, 3 search
//! budget exhausted.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use walkreg::constructions::{self, ConstructionResult};
use walkreg::exact_walk::walk_regularity_order;
use walkreg::graph::catalog;
use walkreg::graph::graph6::encode_graph6;
use walkreg::graph::io::{read_graph, Format};
use walkreg::report::{
    analyze, emit_diagram, to_rounded_json, AnalysisOptions, GeometryStatus, Provenance,
};
use walkreg::{clique, Error, Graph};

const THREADS_VAR: &str = "WALKREG_THREADS";

#[derive(Parser)]
#[command(
    name = "walkreg",
    version,
    about = "Walk-regularity analysis for finite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Graph6,
    Json,
}

impl From<InputFormat> for Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Graph6 => Format::Graph6,
            InputFormat::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Operation {
    BipartiteDouble,
    /// Distance-i graph; needs `--param i=N`.
    Distance,
    /// Both halves of a bipartite graph, one per line.
    Halved,
    Line,
    /// Needs two inputs.
    Kronecker,
    CartesianSquare,
    /// Needs `--param s=N`.
    CocliqueExtension,
    ComplementBlockDouble,
}

#[derive(Subcommand)]
enum Command {
    /// Full verification report as JSON.
    Analyze {
        /// Graph file, or `-` for standard input.
        input: String,
        /// Input format; detected from content when omitted.
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Refuse graphs with more vertices than this.
        #[arg(long, default_value_t = 2000)]
        max_n: usize,
        /// Skip clique enumeration and the geometric decomposition.
        #[arg(long)]
        no_geometry: bool,
        #[arg(long, default_value_t = clique::DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Apply a construction and print the result as graph6.
    Construct {
        #[arg(value_enum)]
        op: Operation,
        #[arg(required = true)]
        inputs: Vec<String>,
        /// `name=value`; repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, usize)>,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        /// Write vertex labelling and order guarantee as JSON here.
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Print a named graph as graph6.
    Catalog { name: String, params: Vec<usize> },
    /// Delsarte cliques, clique geometry and its dual, as JSON.
    Geometry {
        input: String,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        #[arg(long, default_value_t = clique::DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Distance-distribution diagram in DOT.
    Diagram {
        input: String,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_param(s: &str) -> Result<(String, usize), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let value = value
        .parse()
        .map_err(|_| format!("parameter `{name}` needs a non-negative integer"))?;
    Ok((name.to_string(), value))
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TheoremViolation(_)
            | Error::OracleDisagreement { .. }
            | Error::ConstancyViolation { .. } => 2,
            Error::BudgetExceeded(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn read(path: &str, format: Option<InputFormat>) -> Result<Graph, Failure> {
    read_graph(path, format.map(Format::from)).map_err(|e| match e {
        Error::Io(io) => input_error(format!("{path}: {io}")),
        other => other.into(),
    })
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn param(params: &[(String, usize)], name: &str) -> Result<usize, Failure> {
    params
        .iter()
        .rev()
        .find(|(n, _)| n == name)
        .map(|&(_, v)| v)
        .ok_or_else(|| input_error(format!("this construction needs --param {name}=N")))
}

#[derive(Serialize)]
struct Meta<'a> {
    operation: &'a str,
    results: Vec<serde_json::Value>,
}

fn construct(
    op: Operation,
    inputs: &[String],
    params: &[(String, usize)],
    format: Option<InputFormat>,
    meta: Option<&PathBuf>,
) -> Result<(), Failure> {
    let want = if matches!(op, Operation::Kronecker) {
        2
    } else {
        1
    };
    if inputs.len() != want {
        return Err(input_error(format!(
            "this construction takes {want} input graph(s), got {}",
            inputs.len()
        )));
    }
    let graphs = inputs
        .iter()
        .map(|p| read(p, format))
        .collect::<Result<Vec<_>, _>>()?;
    let g = &graphs[0];
    let mut extra = None;
    let results: Vec<ConstructionResult> = match op {
        Operation::BipartiteDouble => vec![constructions::bipartite_double(g)?],
        Operation::Distance => vec![constructions::distance_k_graph(g, param(params, "i")?)?],
        Operation::Halved => {
            let (a, b) = constructions::halved_graphs(g)?;
            vec![a, b]
        }
        Operation::Line => vec![constructions::line_graph(g)?],
        Operation::Kronecker => vec![constructions::kronecker_product(g, &graphs[1])?],
        Operation::CartesianSquare => vec![constructions::cartesian_square(g)?],
        Operation::CocliqueExtension => {
            vec![constructions::coclique_extension(g, param(params, "s")?)?]
        }
        Operation::ComplementBlockDouble => {
            let cbd = constructions::complement_block_double(g)?;
            extra = Some(serde_json::to_value(&cbd).expect("serializable"));
            vec![cbd.result]
        }
    };
    let mut text = String::new();
    for r in &results {
        text.push_str(&encode_graph6(&r.graph)?);
        text.push('\n');
    }
    print!("{text}");
    if let Some(path) = meta {
        let name = op.to_possible_value().expect("no skipped variants");
        let values = match extra {
            Some(v) => vec![v],
            None => results
                .iter()
                .map(|r| serde_json::to_value(r).expect("serializable"))
                .collect(),
        };
        let doc = Meta {
            operation: name.get_name(),
            results: values,
        };
        let mut json = serde_json::to_string_pretty(&doc).expect("serializable");
        json.push('\n');
        std::fs::write(path, json)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            input,
            format,
            out,
            max_n,
            no_geometry,
            node_budget,
        } => {
            let g = read(&input, format)?;
            if g.n() > max_n {
                return Err(input_error(format!(
                    "graph has {} vertices, above --max-n {max_n}",
                    g.n()
                )));
            }
            let options = AnalysisOptions {
                node_budget,
                geometry: !no_geometry,
                provenance: Some(Provenance {
                    operation: "input".into(),
                    inputs: vec![input],
                    guaranteed_order: None,
                }),
                ..AnalysisOptions::default()
            };
            let report = analyze(&g, &options)?;
            emit(out.as_ref(), &report.to_json())
        }
        Command::Construct {
            op,
            inputs,
            params,
            format,
            meta,
        } => construct(op, &inputs, &params, format, meta.as_ref()),
        Command::Catalog { name, params } => {
            let g = catalog(&name, &params)?;
            println!("{}", encode_graph6(&g)?);
            Ok(())
        }
        Command::Geometry {
            input,
            format,
            node_budget,
        } => {
            let g = read(&input, format)?;
            let options = AnalysisOptions {
                node_budget,
                ..AnalysisOptions::default()
            };
            let report = analyze(&g, &options)?;
            let Some(section) = report.cliques else {
                return Err(input_error(format!(
                    "geometry needs a connected regular graph ({})",
                    report.skipped.unwrap_or_default()
                )));
            };
            print!("{}", to_rounded_json(&section));
            if section.geometry.status == GeometryStatus::Unknown {
                return Err(Error::BudgetExceeded(node_budget).into());
            }
            Ok(())
        }
        Command::Diagram { input, format, out } => {
            let g = read(&input, format)?;
            let order = match walk_regularity_order(&g) {
                Ok(o) => o.order,
                Err(Error::NotRegular) => None,
                Err(e) => return Err(e.into()),
            };
            emit(out.as_ref(), &emit_diagram(&g, order)?)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        input_error(format!(
            "{THREADS_VAR} must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| input_error(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("walkreg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
