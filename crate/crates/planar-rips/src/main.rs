//! Command-line surface: build Rips complexes from point files, classify
//! them, run property campaigns, compute homology, search the obstruction
//! catalog, and attempt unit-distance realizations of graphs.
//!
//! Exit codes: 0 success / nothing found / certified; 1 obstruction found
//! or realization inconclusive; 2 campaign counterexample; 3 capacity
//! exceeded; 64 usage errors; 65 unreadable or malformed input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Serialize;

use planar_rips::campaign::{run_campaign, Campaign, CampaignReport, Suite};
use planar_rips::classify::{classify_cloud, classify_complex, ClassificationReport};
use planar_rips::homology::{betti_numbers, Field};
use planar_rips::io::{
    self, catalog_from_json, catalog_to_json, cloud_from_json, complex_from_json,
    complex_to_json, content_fingerprint, graph_from_json, parse_points_csv, CloudJson,
    ComplexJson, GraphJson,
};
use planar_rips::obstructions::{catalog, find_obstruction_with, CatalogEntry};
use planar_rips::realizer::{realize, RealizationProblem, RealizationVerdict};
use planar_rips::rips::{build_rips, PointCloud, ThresholdMode};

#[derive(Parser)]
#[command(
    name = "planar-rips",
    version,
    about = "Rips complexes of planar point sets: build, classify, verify, realize"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default)]
enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format '{other}' (expected json or text)")),
        }
    }
}

/// Restart and iteration budget for the realizer, written `200x2000`.
#[derive(Clone, Copy)]
struct Budget {
    restarts: usize,
    iters: usize,
}

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("budget must look like 200x2000, got '{s}'");
        let (r, i) = s.split_once('x').ok_or_else(bad)?;
        let restarts: usize = r.trim().parse().map_err(|_| bad())?;
        let iters: usize = i.trim().parse().map_err(|_| bad())?;
        if restarts == 0 || iters == 0 {
            return Err("budget parts must be positive".to_string());
        }
        Ok(Budget { restarts, iters })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the Rips complex of a point file and emit complex JSON.
    Build {
        /// Point file: CSV with an `x,y` header, or cloud JSON.
        input: PathBuf,
        /// Threshold mode: strict (distance < r) or atmost (distance <= r).
        #[arg(long, default_value = "strict", value_parser = ThresholdMode::from_str)]
        mode: ThresholdMode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = Format::from_str)]
        format: Format,
    },
    /// Classify a point file or a complex JSON file.
    Classify {
        /// Point file (CSV or cloud JSON) or complex JSON. A complex input
        /// is classified combinatorially and keeps its own mode stamp.
        input: PathBuf,
        #[arg(long, default_value = "strict", value_parser = ThresholdMode::from_str)]
        mode: ThresholdMode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = Format::from_str)]
        format: Format,
    },
    /// Run a property campaign over seeded random clouds plus constructed
    /// positive cases. Suites: lemmas, theoremA, theoremB, theoremC, all.
    Verify {
        suite: String,
        /// Number of random clouds (constructed positives are added on top).
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "strict", value_parser = ThresholdMode::from_str)]
        mode: ThresholdMode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = Format::from_str)]
        format: Format,
    },
    /// Betti numbers of a complex JSON file over a chosen field.
    Homology {
        input: PathBuf,
        #[arg(long, default_value = "gf2", value_parser = Field::from_str)]
        field: Field,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = Format::from_str)]
        format: Format,
    },
    /// Search a graph JSON file for induced catalog obstructions.
    Obstruct {
        input: PathBuf,
        /// Extra catalog entries (JSON list) merged after the built-ins.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = Format::from_str)]
        format: Format,
    },
    /// Search for unit-distance coordinates realizing a graph JSON file.
    Realize {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restarts and iterations per restart, written `200x2000`.
        #[arg(long, default_value = "200x2000", value_parser = Budget::from_str)]
        budget: Budget,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = Format::from_str)]
        format: Format,
    },
    /// Print the obstruction catalog: `list` for a summary, `export` for
    /// the full JSON.
    Catalog {
        action: String,
        /// Extra catalog entries (JSON list) merged after the built-ins.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Data(String),
    Capacity(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Data(_) => 65,
            CliError::Capacity(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Capacity(m) => m,
        }
    }
}

fn data_err(e: impl std::fmt::Display) -> CliError {
    CliError::Data(e.to_string())
}

/// Exact homology enumerates every subset of every facet, so refuse
/// complexes where that count blows up.
const MAX_FACET_CARD: usize = 10;
const MAX_FACE_BOUND: u64 = 32_768;

fn check_homology_capacity(k: &planar_rips::complex::FlagComplex) -> Result<(), CliError> {
    let max_card = k
        .facets()
        .iter()
        .map(|f| f.vertices().len())
        .max()
        .unwrap_or(0);
    if max_card > MAX_FACET_CARD {
        return Err(CliError::Capacity(format!(
            "facet with {max_card} vertices exceeds the exact-homology bound of {MAX_FACET_CARD}"
        )));
    }
    let bound: u64 = k.facets().iter().map(|f| 1u64 << f.vertices().len()).sum();
    if bound > MAX_FACE_BOUND {
        return Err(CliError::Capacity(format!(
            "complex may have up to {bound} faces, beyond the exact-homology bound of {MAX_FACE_BOUND}"
        )));
    }
    Ok(())
}

fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))
}

fn to_json_line<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string(value).map_err(data_err)?;
    s.push('\n');
    Ok(s)
}

fn load_catalog(extension: &Option<PathBuf>) -> Result<Vec<CatalogEntry>, CliError> {
    let mut entries = catalog();
    if let Some(path) = extension {
        let text = read_input(path)?;
        entries.extend(catalog_from_json(&text).map_err(data_err)?);
    }
    Ok(entries)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli.command) {
        Ok((output, out_path, code)) => {
            match out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, output) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        std::process::exit(65);
                    }
                }
                None => print!("{output}"),
            }
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.code());
        }
    }
}

/// Dispatches a command to (rendered output, output path, exit code).
fn run(command: Command) -> Result<(String, Option<PathBuf>, i32), CliError> {
    match command {
        Command::Build {
            input,
            mode,
            out,
            format,
        } => {
            let text = read_input(&input)?;
            let cloud = io::parse_points_file(&text).map_err(data_err)?;
            let complex = build_rips(&cloud, mode);
            let json = complex_to_json(&complex, &mode.to_string());
            let rendered = match format {
                Format::Json => to_json_line(&json)?,
                Format::Text => render_complex_text(&json),
            };
            Ok((rendered, out, 0))
        }
        Command::Classify {
            input,
            mode,
            out,
            format,
        } => {
            let text = read_input(&input)?;
            let stamp = content_fingerprint(text.as_bytes());
            let report = classify_input(&text, mode, stamp)?;
            let rendered = match format {
                Format::Json => to_json_line(&report)?,
                Format::Text => render_report_text(&report),
            };
            Ok((rendered, out, 0))
        }
        Command::Verify {
            suite,
            count,
            seed,
            mode,
            out,
            format,
        } => {
            let suite = Suite::from_str(&suite).map_err(CliError::Usage)?;
            let report = run_campaign(&Campaign {
                suite,
                count,
                seed,
                mode,
            });
            let code = if report.ok() { 0 } else { 2 };
            let rendered = match format {
                Format::Json => to_json_line(&report)?,
                Format::Text => render_campaign_text(&report),
            };
            Ok((rendered, out, code))
        }
        Command::Homology {
            input,
            field,
            out,
            format,
        } => {
            let text = read_input(&input)?;
            let json: ComplexJson = serde_json::from_str(&text).map_err(data_err)?;
            let (complex, _mode) = complex_from_json(&json).map_err(data_err)?;
            check_homology_capacity(&complex)?;
            let betti = betti_numbers(&complex, field);
            let payload = BettiJson {
                field: field.to_string(),
                b: betti.b,
            };
            let rendered = match format {
                Format::Json => to_json_line(&payload)?,
                Format::Text => {
                    let b: Vec<String> = payload.b.iter().map(|x| x.to_string()).collect();
                    format!("field: {}\nb: {}\n", payload.field, b.join(" "))
                }
            };
            Ok((rendered, out, 0))
        }
        Command::Obstruct {
            input,
            catalog: extension,
            out,
            format,
        } => {
            let text = read_input(&input)?;
            let json: GraphJson = serde_json::from_str(&text).map_err(data_err)?;
            let graph = graph_from_json(&json).map_err(data_err)?;
            let entries = load_catalog(&extension)?;
            let finding = find_obstruction_with(&graph, &entries);
            let code = if finding.is_some() { 1 } else { 0 };
            let payload = FindingJson {
                found: finding.is_some(),
                entry: finding.as_ref().map(|(id, _)| id.clone()),
                embedding: finding.map(|(_, emb)| emb),
                input: content_fingerprint(text.as_bytes()),
            };
            let rendered = match format {
                Format::Json => to_json_line(&payload)?,
                Format::Text => match (&payload.entry, &payload.embedding) {
                    (Some(id), Some(emb)) => {
                        let emb: Vec<String> = emb.iter().map(|v| v.to_string()).collect();
                        format!("found: {id}\nembedding: {}\n", emb.join(" "))
                    }
                    _ => "no obstruction found\n".to_string(),
                },
            };
            Ok((rendered, out, code))
        }
        Command::Realize {
            input,
            seed,
            budget,
            out,
            format,
        } => {
            let text = read_input(&input)?;
            let json: GraphJson = serde_json::from_str(&text).map_err(data_err)?;
            let graph = graph_from_json(&json).map_err(data_err)?;
            let mut problem = RealizationProblem::new(graph, seed);
            problem.restarts = budget.restarts;
            problem.iters = budget.iters;
            let outcome = realize(&problem).map_err(data_err)?;
            let code = if outcome.is_certified() { 0 } else { 1 };
            let payload = match outcome.verdict {
                RealizationVerdict::Certified(points) => OutcomeJson {
                    verdict: "certified".to_string(),
                    points: Some(
                        points
                            .iter()
                            .map(|p| [p.x.to_string(), p.y.to_string()])
                            .collect(),
                    ),
                    best_loss: None,
                    restarts_run: outcome.trace.len(),
                    seed,
                    epsilon: problem.epsilon.to_string(),
                    input: content_fingerprint(text.as_bytes()),
                },
                RealizationVerdict::Inconclusive { best_loss } => OutcomeJson {
                    verdict: "inconclusive".to_string(),
                    points: None,
                    best_loss: Some(best_loss),
                    restarts_run: outcome.trace.len(),
                    seed,
                    epsilon: problem.epsilon.to_string(),
                    input: content_fingerprint(text.as_bytes()),
                },
            };
            let rendered = match format {
                Format::Json => to_json_line(&payload)?,
                Format::Text => render_outcome_text(&payload),
            };
            Ok((rendered, out, code))
        }
        Command::Catalog {
            action,
            catalog: extension,
            out,
        } => {
            let entries = load_catalog(&extension)?;
            match action.as_str() {
                "list" => {
                    let mut s = String::new();
                    for e in &entries {
                        writeln!(
                            s,
                            "{}  n={}  edges={}  status={}",
                            e.id,
                            e.graph.n(),
                            e.graph.edge_count(),
                            e.status
                        )
                        .unwrap();
                    }
                    Ok((s, out, 0))
                }
                "export" => Ok((to_json_line(&catalog_to_json(&entries))?, out, 0)),
                other => Err(CliError::Usage(format!(
                    "unknown catalog action '{other}' (expected list or export)"
                ))),
            }
        }
    }
}

/// Classify either a point file (CSV or cloud JSON) or a complex JSON file,
/// distinguished by the presence of a `facets` key.
fn classify_input(
    text: &str,
    mode: ThresholdMode,
    stamp: String,
) -> Result<ClassificationReport, CliError> {
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text).map_err(data_err)?;
        if value.get("facets").is_some() {
            let json: ComplexJson = serde_json::from_value(value).map_err(data_err)?;
            let (complex, mode_label) = complex_from_json(&json).map_err(data_err)?;
            check_homology_capacity(&complex)?;
            return Ok(classify_complex(&complex, &mode_label, Some(stamp)));
        }
        let json: CloudJson = serde_json::from_value(value).map_err(data_err)?;
        let cloud = cloud_from_json(&json).map_err(data_err)?;
        check_homology_capacity(&build_rips(&cloud, mode))?;
        Ok(classify_cloud(&cloud, mode, Some(stamp)))
    } else {
        let cloud: PointCloud = parse_points_csv(text).map_err(data_err)?;
        check_homology_capacity(&build_rips(&cloud, mode))?;
        Ok(classify_cloud(&cloud, mode, Some(stamp)))
    }
}

#[derive(Serialize)]
struct BettiJson {
    field: String,
    b: Vec<usize>,
}

#[derive(Serialize)]
struct FindingJson {
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    entry: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    embedding: Option<Vec<usize>>,
    input: String,
}

#[derive(Serialize)]
struct OutcomeJson {
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<[String; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    best_loss: Option<f64>,
    restarts_run: usize,
    seed: u64,
    epsilon: String,
    input: String,
}

fn render_complex_text(json: &ComplexJson) -> String {
    format!(
        "vertices: {}\nedges: {}\nfacets: {}\nmode: {}\n",
        json.n,
        json.edges.len(),
        json.facets.len(),
        json.mode
    )
}

fn render_report_text(report: &ClassificationReport) -> String {
    let mut s = String::new();
    let opt = |v: Option<usize>| v.map_or("none".to_string(), |x| x.to_string());
    writeln!(s, "vertices: {}", report.vertices).unwrap();
    writeln!(s, "edges: {}", report.edges).unwrap();
    writeln!(s, "facets: {}", report.facets).unwrap();
    writeln!(s, "pure_dimension: {}", opt(report.pure_dimension)).unwrap();
    writeln!(s, "closed: {}", report.closed).unwrap();
    writeln!(s, "weak_pseudomanifold: {}", report.weak_pseudomanifold).unwrap();
    writeln!(s, "pseudomanifold: {}", report.pseudomanifold).unwrap();
    writeln!(s, "normal_pseudomanifold: {}", report.normal_pseudomanifold).unwrap();
    writeln!(s, "cross_polytope: {}", opt(report.cross_polytope)).unwrap();
    match (&report.wedge, &report.chain_obstruction) {
        (Some(w), _) => writeln!(s, "chain: m={} p={} n={}", w.m, w.p, w.n).unwrap(),
        (None, Some(reason)) => writeln!(s, "chain: none ({reason})").unwrap(),
        (None, None) => writeln!(s, "chain: none").unwrap(),
    }
    writeln!(s, "octahedron_census: {}", report.octahedron_census).unwrap();
    writeln!(s, "crossing_pairs: {}", opt(report.crossing_pairs)).unwrap();
    let fmt_b = |b: &[usize]| {
        b.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(s, "betti_gf2: {}", fmt_b(&report.betti_gf2)).unwrap();
    writeln!(s, "betti_q: {}", fmt_b(&report.betti_q)).unwrap();
    writeln!(s, "mode: {}", report.threshold_mode).unwrap();
    s
}

fn render_campaign_text(report: &CampaignReport) -> String {
    let mut s = String::new();
    writeln!(s, "suite: {}", report.suite).unwrap();
    writeln!(s, "seed: {}", report.seed).unwrap();
    writeln!(s, "mode: {}", report.mode).unwrap();
    writeln!(
        s,
        "clouds: {} random + {} injected",
        report.random_clouds, report.injected_clouds
    )
    .unwrap();
    writeln!(s, "violations: {}", report.violations.len()).unwrap();
    for v in &report.violations {
        writeln!(s, "  {v}").unwrap();
    }
    writeln!(s, "hits:").unwrap();
    for (name, count) in &report.hits {
        writeln!(s, "  {name}: {count}").unwrap();
    }
    s
}

fn render_outcome_text(payload: &OutcomeJson) -> String {
    let mut s = String::new();
    writeln!(s, "verdict: {}", payload.verdict).unwrap();
    if let Some(points) = &payload.points {
        writeln!(s, "points:").unwrap();
        for (i, [x, y]) in points.iter().enumerate() {
            writeln!(s, "  {i}: {x}, {y}").unwrap();
        }
    }
    if let Some(loss) = payload.best_loss {
        writeln!(s, "best_loss: {loss}").unwrap();
    }
    writeln!(s, "restarts_run: {}", payload.restarts_run).unwrap();
    writeln!(s, "seed: {}", payload.seed).unwrap();
    writeln!(s, "epsilon: {}", payload.epsilon).unwrap();
    s
}
