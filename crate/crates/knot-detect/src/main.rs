use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knot_detect::corpus::{self, KnotRecord};
use knot_detect::evaluate::{evaluate, EvalOptions, InvariantId};
use knot_detect::growth_report::growth_report;
use knot_detect::report::{decay_fit, detection_report};
use knot_detect_core::diagram::{dt_to_pd, parse_dt, parse_pd, serialize_pd};
use knot_detect_core::invariants::Caps;
use knot_detect_core::tangle::{find_tangle_regions, is_oriented_mutation, mutate, SquareSymmetry};
use serde::Serialize;
use serde_json::json;

#[derive(Debug, Parser, Serialize)]
#[command(name = "knot-detect", version, about = "Knot invariants, mutation, detection tables and growth constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for evaluation; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Directory for cached invariant values.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Csv)]
    output: Output,
    /// Largest diagram for the bracket, Jones, Alexander and Goeritz data.
    #[arg(long, global = true, default_value_t = Caps::default().bracket)]
    bracket_cap: usize,
    #[arg(long, global = true, default_value_t = Caps::default().homflypt)]
    homflypt_cap: usize,
    #[arg(long, global = true, default_value_t = Caps::default().khovanov)]
    khovanov_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Output {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Dt,
    Pd,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Validate diagrams and print them in both encodings.
    Parse(Source),
    /// Print canonical invariant values.
    Invariant {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "jones")]
        invariant: String,
        #[arg(long)]
        fold_mirror: bool,
    },
    /// List the Conway mutants of a diagram.
    Mutate {
        #[command(flatten)]
        source: Source,
        /// Largest number of crossings inside a tangle region.
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// Distinct-value table of an invariant over a knot table.
    Detect(DetectArgs),
    /// Growth constants, decay certificate and counting series.
    Growth {
        #[arg(long, default_value_t = 200)]
        series_order: usize,
    },
}

#[derive(Debug, Args, Serialize)]
struct Source {
    #[arg(long, conflicts_with_all = ["pd", "input"])]
    dt: Option<String>,
    #[arg(long, conflicts_with = "input")]
    pd: Option<String>,
    /// File with one code per line, or a knot table.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args, Serialize)]
struct DetectArgs {
    /// Knot table; the embedded 3 to 10 crossing table by default.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = "jones")]
    invariant: String,
    #[arg(long)]
    max_n: Option<usize>,
    /// Count knots with at most n crossings (default).
    #[arg(long, overrides_with = "per_n")]
    cumulative: bool,
    /// Count knots with exactly n crossings.
    #[arg(long, overrides_with = "cumulative")]
    per_n: bool,
    #[arg(long)]
    alternating_only: bool,
    #[arg(long)]
    fold_mirror: bool,
}

enum Failure {
    Usage(String),
    Data(String),
}

fn data<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Data(e.to_string())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(()) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn caps(cli: &Cli) -> Caps {
    Caps { bracket: cli.bracket_cap, homflypt: cli.homflypt_cap, khovanov: cli.khovanov_cap, ..Caps::default() }
}

fn records(src: &Source) -> Result<Vec<KnotRecord>, Failure> {
    let one = |d: knot_detect_core::LinkDiagram| vec![KnotRecord::from_diagram("input", d)];
    if let Some(dt) = &src.dt {
        return Ok(one(dt_to_pd(&parse_dt(dt).map_err(data)?).map_err(data)?));
    }
    if let Some(pd) = &src.pd {
        return Ok(one(parse_pd(pd).map_err(data)?));
    }
    let Some(path) = &src.input else {
        return Err(Failure::Usage("one of --dt, --pd or --input is required".into()));
    };
    if src.format == Format::Csv {
        return corpus::ingest(path).map_err(data);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let d = match src.format {
            Format::Dt => parse_dt(line).and_then(|c| dt_to_pd(&c)),
            _ => parse_pd(line),
        }
        .map_err(|e| Failure::Data(format!("line {}: {e}", i + 1)))?;
        out.push(KnotRecord::from_diagram(format!("line{}", i + 1), d));
    }
    Ok(out)
}

fn invariant_id(s: &str) -> Result<InvariantId, Failure> {
    s.parse().map_err(|e: knot_detect::evaluate::UnknownInvariant| Failure::Usage(e.to_string()))
}

fn to_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn run(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    let config = serde_json::to_value(cli).expect("config serializes");
    let opts =
        |fold_mirror| EvalOptions { caps: caps(cli), fold_mirror, jobs: cli.jobs, cache_dir: cli.cache_dir.clone() };
    match &cli.command {
        Command::Parse(src) => {
            let rows: Vec<_> = records(src)?
                .iter()
                .map(|r| {
                    let d = r.diagram();
                    json!({
                        "name": r.name,
                        "crossings": d.n_crossings(),
                        "components": d.n_components(),
                        "writhe": d.writhe(),
                        "alternating": d.is_alternating(),
                        "pd": serialize_pd(d),
                        "dt": d.dt_code().ok().map(|c| c.to_string()),
                    })
                })
                .collect();
            if cli.output == Output::Json {
                out.push_str(&to_json(&json!({ "config": config, "diagrams": rows })));
            } else {
                out.push_str("name,crossings,components,writhe,alternating,dt,pd\n");
                for r in rows {
                    let dt = r["dt"].as_str().unwrap_or("");
                    out.push_str(&format!(
                        "{},{},{},{},{},{},\"{}\"\n",
                        r["name"].as_str().unwrap(),
                        r["crossings"],
                        r["components"],
                        r["writhe"],
                        r["alternating"],
                        dt,
                        r["pd"].as_str().unwrap()
                    ));
                }
            }
        }
        Command::Invariant { source, invariant, fold_mirror } => {
            let id = invariant_id(invariant)?;
            let recs = records(source)?;
            let eval = evaluate(&recs, &id, &opts(*fold_mirror)).map_err(data)?;
            if cli.output == Output::Json {
                out.push_str(&to_json(&json!({
                    "config": config,
                    "values": eval.values,
                    "failures": eval.failures,
                })));
            } else if source.input.is_none() {
                match (eval.values.values().next(), eval.failures.values().next()) {
                    (Some(v), _) => out.push_str(&format!("{v}\n")),
                    (None, Some(e)) => return Err(Failure::Data(e.clone())),
                    (None, None) => unreachable!("one record is evaluated"),
                }
            } else {
                for r in &recs {
                    match (eval.values.get(&r.name), eval.failures.get(&r.name)) {
                        (Some(v), _) => out.push_str(&format!("{}\t{v}\n", r.name)),
                        (_, Some(e)) => out.push_str(&format!("{}\terror: {e}\n", r.name)),
                        _ => unreachable!("every record is evaluated"),
                    }
                }
            }
        }
        Command::Mutate { source, max_size } => {
            let mut rows = Vec::new();
            for r in records(source)? {
                for region in find_tangle_regions(r.diagram(), *max_size) {
                    for s in SquareSymmetry::ALL.into_iter().filter(|s| *s != SquareSymmetry::Identity) {
                        let m = mutate(r.diagram(), &region, s).map_err(data)?;
                        rows.push(json!({
                            "name": r.name,
                            "region": region.crossings(),
                            "symmetry": format!("{s:?}"),
                            "oriented": is_oriented_mutation(&region, s),
                            "pd": serialize_pd(&m),
                        }));
                    }
                }
            }
            if cli.output == Output::Json {
                out.push_str(&to_json(&json!({ "config": config, "mutants": rows })));
            } else {
                out.push_str("name,region,symmetry,oriented,pd\n");
                for r in rows {
                    let region: Vec<String> = r["region"].as_array().unwrap().iter().map(|c| c.to_string()).collect();
                    out.push_str(&format!(
                        "{},{},{},{},\"{}\"\n",
                        r["name"].as_str().unwrap(),
                        region.join(" "),
                        r["symmetry"].as_str().unwrap(),
                        r["oriented"],
                        r["pd"].as_str().unwrap()
                    ));
                }
            }
        }
        Command::Detect(args) => {
            let id = invariant_id(&args.invariant)?;
            let mut recs = match &args.input {
                Some(path) => corpus::ingest(path).map_err(data)?,
                None => corpus::knots_3_10(),
            };
            if let Some(max) = args.max_n {
                recs.retain(|r| r.crossing_number <= max);
            }
            let eval = evaluate(&recs, &id, &opts(args.fold_mirror)).map_err(data)?;
            for (name, e) in &eval.failures {
                log::warn!("{name} excluded: {e}");
            }
            let report = detection_report(&eval, &recs, !args.per_n, args.alternating_only).map_err(data)?;
            if cli.output == Output::Json {
                let fit = match decay_fit(&report) {
                    Ok(f) => json!({ "estimate": f }),
                    Err(e) => json!({ "unavailable": e.to_string() }),
                };
                out.push_str(&to_json(&json!({
                    "config": config,
                    "report": report,
                    "failures": eval.failures,
                    "decay_fit": fit,
                })));
            } else {
                out.push_str(&report.to_csv());
            }
        }
        Command::Growth { series_order } => {
            if *series_order < 8 {
                return Err(Failure::Usage("--series-order must be at least 8".into()));
            }
            let mut report = growth_report(*series_order).map_err(data)?;
            report["config"] = config;
            out.push_str(&to_json(&report));
        }
    }
    Ok(())
}
