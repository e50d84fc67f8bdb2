use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gigraph::autgroup::{aut_order, generators, AutOrderReport};
use gigraph::canon::{canonical_form, standard_form};
use gigraph::census::{self, check_spec, Census, CensusError, CensusOptions, RowCheck};
use gigraph::classify::{classify, ClassificationReport};
use gigraph::export::{to_dot, to_edge_list, to_json};
use gigraph::graph::{build, GiSpec};
use gigraph::layout::{
    concentric_layout, edge_length_stats, svg, unit_distance_layout_713, Layout, SvgOptions,
};
use gigraph::oracle::{
    brute_aut, edge_orbits, find_regular_subgroup, girth_and_c4, is_isomorphic, vertex_orbits,
    OracleConfig, OracleError,
};

/// GI-graphs: build, canonicalize, count automorphisms, classify.
#[derive(Parser)]
#[command(name = "gigraph", version)]
struct Cli {
    /// Largest graph handed to the brute-force oracle
    /// (default: $GIGRAPH_MAX_VERTICES or 60).
    #[arg(long, global = true)]
    max_vertices: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Number of vertices per layer.
    n: i64,
    /// Steps j_0 … j_{t-1}.
    #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
    steps: Vec<i64>,
}

impl SpecArgs {
    fn spec(&self) -> Result<GiSpec> {
        GiSpec::new(self.n, &self.steps).map_err(|e| usage(e.to_string()))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Export the graph as JSON, DOT or an edge list.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Standard and canonical forms of a step multiset.
    Canon {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Automorphism group order from the closed formula.
    Aut {
        #[command(flatten)]
        spec: SpecArgs,
        /// List every automorphism (brute force, capped).
        #[arg(long)]
        elements: bool,
        /// Recount with the brute-force oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Edge-transitivity, vertex-transitivity and Cayley verdicts.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Cross-check every verdict with the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// One row per canonical class over a range of n.
    Census {
        /// Range of n, as A..B (inclusive) or a single value.
        #[arg(long = "n", value_name = "A..B")]
        range: String,
        /// Number of layers.
        #[arg(long)]
        t: usize,
        #[arg(long)]
        connected_only: bool,
        /// Cross-check each row with the oracle and look for isomorphic
        /// classes.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Concentric drawing, or the unit-distance drawing of GI(7;1,2,3).
    Layout {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Print edge-length statistics.
        #[arg(long)]
        check_unit: bool,
        /// Rim radii, outermost layer first.
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
    },
    /// Brute-force computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Automorphism group order, generators and orbits.
    Aut {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Isomorphism test between GI(n;J1) and GI(n;J2).
    Iso {
        n: i64,
        /// Comma-separated steps of the first graph.
        #[arg(allow_negative_numbers = true)]
        first: String,
        /// Comma-separated steps of the second graph.
        #[arg(allow_negative_numbers = true)]
        second: String,
    },
    /// Search for a subgroup acting regularly on the vertices.
    Cayley {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Girth and presence of 4-cycles.
    Girth {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Cap(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Failure {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Failure::Usage(msg.into()).into()
}

fn oracle_err(e: OracleError) -> anyhow::Error {
    Failure::Cap(e.to_string()).into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = match e.downcast_ref::<Failure>() {
                Some(Failure::Cap(_)) => 2,
                _ => 1,
            };
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = OracleConfig::from_env();
    if let Some(cap) = cli.max_vertices {
        cfg.max_vertices = cap;
    }
    match cli.command {
        Command::Build { spec, format, out } => {
            let graph = build(&spec.spec()?);
            let text = match format {
                GraphFormat::Json => to_json(&graph),
                GraphFormat::Dot => to_dot(&graph),
                GraphFormat::Edges => to_edge_list(&graph),
            };
            match out {
                Some(path) => fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => io::stdout().lock().write_all(text.as_bytes())?,
            }
            Ok(())
        }
        Command::Canon { spec: args } => {
            let spec = args.spec()?;
            let n = spec.n();
            let canon = canonical_form(&spec);
            print_json(&CanonOutput {
                n,
                input: args.steps.clone(),
                standard: standard_form(n, &args.steps).map_err(|e| usage(e.to_string()))?,
                canonical: canon.steps,
                witness_unit: canon.witness_unit,
            })
        }
        Command::Aut {
            spec,
            elements,
            verify,
        } => aut(&spec.spec()?, elements, verify, &cfg),
        Command::Classify { spec, oracle } => {
            let spec = spec.spec()?;
            let report = classify(&spec);
            let check = if oracle {
                if spec.vertex_count() > cfg.max_vertices {
                    return Err(oracle_err(OracleError::TooLarge {
                        vertices: spec.vertex_count(),
                        cap: cfg.max_vertices,
                    }));
                }
                Some(check_spec(&spec, &cfg))
            } else {
                None
            };
            print_json(&ClassifyOutput {
                report,
                oracle: check,
            })
        }
        Command::Census {
            range,
            t,
            connected_only,
            verify,
            format,
        } => {
            let (n_min, n_max) = parse_range(&range)?;
            let result = census::run(&CensusOptions {
                n_min,
                n_max,
                t,
                connected_only,
                verify,
                oracle: cfg,
            })
            .map_err(|e| match e {
                CensusError::CapExceeded { .. } => anyhow::Error::from(Failure::Cap(e.to_string())),
                CensusError::BadRange => usage(e.to_string()),
            })?;
            match format {
                TableFormat::Json => print_json(&result)?,
                TableFormat::Csv => write_csv(&result, verify)?,
            }
            if verify {
                for f in &result.findings {
                    eprintln!(
                        "FINDING: GI({};{}) is isomorphic to GI({};{})",
                        f.n,
                        join(&f.first, ","),
                        f.n,
                        join(&f.second, ",")
                    );
                }
                eprintln!(
                    "verified {} rows: {} mismatches, {} findings",
                    result.rows.len(),
                    result.mismatches,
                    result.findings.len()
                );
            }
            Ok(())
        }
        Command::Layout {
            spec,
            svg: svg_path,
            check_unit,
            radii,
        } => {
            let spec = spec.spec()?;
            let graph = build(&spec);
            let layout = make_layout(&spec, radii.as_deref())?;
            if let Some(path) = &svg_path {
                fs::write(path, svg(&graph, &layout, &SvgOptions::default()))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if check_unit {
                print_json(&edge_length_stats(&graph, &layout))
            } else if svg_path.is_none() {
                print_json(&layout)
            } else {
                Ok(())
            }
        }
        Command::Oracle(cmd) => oracle(cmd, &cfg),
    }
}

#[derive(Serialize)]
struct CanonOutput {
    n: u32,
    input: Vec<i64>,
    standard: Vec<u32>,
    canonical: Vec<u32>,
    witness_unit: u32,
}

#[derive(Serialize)]
struct ClassifyOutput {
    #[serde(flatten)]
    report: ClassificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<RowCheck>,
}

#[derive(Serialize)]
struct AutOutput {
    spec: GiSpec,
    #[serde(flatten)]
    report: AutOrderReport,
    /// Generators of the automorphisms preserving spokes; for the sporadic
    /// graphs these do not generate the whole group.
    partition_generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_order: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<String>>,
}

fn aut(spec: &GiSpec, elements: bool, verify: bool, cfg: &OracleConfig) -> Result<()> {
    let report = aut_order(spec);
    let gens = generators(spec).map_err(|e| anyhow!(e))?;
    let mut out = AutOutput {
        spec: spec.clone(),
        partition_generators: gens.on_whole_graph().iter().map(|p| p.cycle_string()).collect(),
        report,
        oracle_order: None,
        agrees: None,
        elements: None,
    };
    if elements || verify {
        let mut group = brute_aut(&build(spec), cfg).map_err(oracle_err)?;
        if verify {
            out.oracle_order = Some(group.order());
            out.agrees = Some(group.order() == out.report.order);
        }
        if elements {
            let all = group.materialize(cfg.element_cap).map_err(oracle_err)?;
            out.elements = Some(all.iter().map(|p| p.cycle_string()).collect());
        }
    }
    print_json(&out)
}

fn parse_range(s: &str) -> Result<(u32, u32)> {
    let parse = |x: &str| {
        x.trim()
            .parse::<u32>()
            .map_err(|_| usage(format!("bad range bound {x:?}")))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}

fn join(xs: &[u32], sep: &str) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

fn write_csv(census: &Census, verify: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(io::stdout().lock());
    let mut header = vec!["n", "t", "J", "canonical", "d", "order", "case", "ET", "VT", "Cayley", "rule"];
    if verify {
        header.extend(["oracle_order", "oracle_VT", "oracle_ET", "oracle_Cayley", "mismatches"]);
    }
    w.write_record(&header)?;
    let opt = |x: Option<bool>| x.map_or(String::new(), |b| b.to_string());
    for row in &census.rows {
        let mut rec = vec![
            row.n.to_string(),
            row.t.to_string(),
            join(&row.steps, " "),
            join(&row.steps, " "),
            row.d.to_string(),
            row.order.to_string(),
            row.case.to_string(),
            row.edge_transitive.to_string(),
            row.vertex_transitive.to_string(),
            row.cayley.as_str().to_string(),
            row.rule.clone(),
        ];
        if let Some(c) = &row.check {
            rec.extend([
                c.oracle_order.map_or(String::new(), |o| o.to_string()),
                opt(c.oracle_vt),
                opt(c.oracle_et),
                opt(c.oracle_cayley),
                c.mismatches.join("; "),
            ]);
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn make_layout(spec: &GiSpec, radii: Option<&[f64]>) -> Result<Layout> {
    if radii.is_none() && spec.n() == 7 && spec.steps() == [1, 2, 3] {
        return Ok(unit_distance_layout_713());
    }
    concentric_layout(spec, radii).map_err(|e| usage(e.to_string()))
}

#[derive(Serialize)]
struct OracleAutOutput {
    spec: GiSpec,
    order: u128,
    formula_order: u128,
    generators: Vec<String>,
    base: Vec<usize>,
    vertex_orbits: Vec<Vec<usize>>,
    edge_orbits: usize,
}

#[derive(Serialize)]
struct IsoOutput {
    first: GiSpec,
    second: GiSpec,
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct CayleyOutput {
    spec: GiSpec,
    group_order: u128,
    regular_subgroup: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<String>>,
}

fn parse_steps(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("bad step {x:?}")))
        })
        .collect()
}

fn oracle(cmd: OracleCommand, cfg: &OracleConfig) -> Result<()> {
    match cmd {
        OracleCommand::Aut { spec } => {
            let spec = spec.spec()?;
            let graph = build(&spec);
            let group = brute_aut(&graph, cfg).map_err(oracle_err)?;
            print_json(&OracleAutOutput {
                formula_order: aut_order(&spec).order,
                order: group.order(),
                generators: group.generators().iter().map(|p| p.cycle_string()).collect(),
                base: group.base().to_vec(),
                vertex_orbits: vertex_orbits(&group),
                edge_orbits: edge_orbits(&group, &graph).len(),
                spec,
            })
        }
        OracleCommand::Iso { n, first, second } => {
            let a = GiSpec::new(n, &parse_steps(&first)?).map_err(|e| usage(e.to_string()))?;
            let b = GiSpec::new(n, &parse_steps(&second)?).map_err(|e| usage(e.to_string()))?;
            let witness = is_isomorphic(&build(&a), &build(&b), cfg).map_err(oracle_err)?;
            print_json(&IsoOutput {
                first: a,
                second: b,
                isomorphic: witness.is_some(),
                witness,
            })
        }
        OracleCommand::Cayley { spec } => {
            let spec = spec.spec()?;
            let mut group = brute_aut(&build(&spec), cfg).map_err(oracle_err)?;
            let found = find_regular_subgroup(&mut group, cfg).map_err(oracle_err)?;
            print_json(&CayleyOutput {
                spec,
                group_order: group.order(),
                regular_subgroup: found.is_some(),
                elements: found.map(|sub| sub.iter().map(|p| p.cycle_string()).collect()),
            })
        }
        OracleCommand::Girth { spec } => {
            let spec = spec.spec()?;
            if spec.vertex_count() > cfg.max_vertices {
                return Err(oracle_err(OracleError::TooLarge {
                    vertices: spec.vertex_count(),
                    cap: cfg.max_vertices,
                }));
            }
            print_json(&girth_and_c4(&build(&spec)))
        }
    }
}
