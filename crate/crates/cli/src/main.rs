use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kstates::diagram::{build_diagram, parse_pd_input, Diagram};
use kstates::frontend::json::{
    alexander_json, census_csv, census_json, input_json, mutation_json, order_dot, report_csv, report_json,
};
use kstates::frontend::table::lookup;
use kstates::frontend::{build_family, load_table, shipped_table, FamilySpec, KnotTableEntry};
use kstates::invariants::{determinant_of, genus_bounds, signature};
use kstates::reduce::{hfk_report, mutation_compare, ReportOptions};
use kstates::states::{enumerate_states_capped, BiGradedCensus, DEFAULT_STATE_CAP};
use kstates::Error;

/// Knot Floer homology from Kauffman states.
#[derive(Parser)]
#[command(name = "kstates", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// States per (s, m)
    Census(Common),
    /// Knot Floer homology ranks, exact or bounded
    Report(Common),
    /// Symmetrized Alexander polynomial and determinant
    Alexander(Common),
    /// Signature from the Goeritz matrix
    Signature(Common),
    /// Hasse diagrams of the essential states
    Order(Common),
    /// Lower and upper genus bounds
    Genus(Common),
    /// Compares the reports of two diagrams
    CompareMutants(Common),
}

#[derive(Args)]
struct Common {
    /// PD file, optionally with a `mark: <label>` line
    #[arg(long, value_name = "FILE")]
    pd: Vec<PathBuf>,
    /// Kinoshita-Terasaka knot KT(r, n)
    #[arg(long, value_name = "R,N", allow_hyphen_values = true)]
    kt: Vec<String>,
    /// Conway knot C(r, n)
    #[arg(long, value_name = "R,N", allow_hyphen_values = true)]
    conway: Vec<String>,
    /// Pretzel knot P(p, q, r)
    #[arg(long, value_name = "P,Q,R", allow_hyphen_values = true)]
    pretzel: Vec<String>,
    /// Torus knot T(2, m)
    #[arg(long, value_name = "M", allow_hyphen_values = true)]
    torus2: Vec<i64>,
    /// Knot table entry by name, e.g. 9_43
    #[arg(long, value_name = "NAME")]
    table: Vec<String>,
    /// Table file to use instead of the shipped one
    #[arg(long, value_name = "FILE")]
    table_file: Option<PathBuf>,
    /// Override the marked edge (PD label)
    #[arg(long)]
    mark: Option<usize>,
    #[arg(long, conflicts_with_all = ["csv", "dot"])]
    json: bool,
    #[arg(long, conflicts_with = "dot")]
    csv: bool,
    #[arg(long)]
    dot: bool,
    /// Keep all states instead of the essential ones
    #[arg(long)]
    all_states: bool,
    /// Ignore curated arrows from the knot table
    #[arg(long)]
    no_curated: bool,
    /// Largest number of states to enumerate
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    cap: u128,
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type CliResult<T> = Result<T, Failure>;

/// One resolved input: its diagram, a description and any curated arrows.
struct Input {
    diagram: Diagram,
    source: Value,
    curated: Vec<(String, String)>,
}

fn parse_params<const K: usize>(flag: &str, text: &str) -> CliResult<[i64; K]> {
    let values: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("--{flag} expects {K} comma-separated integers, got `{text}`")))?;
    values.try_into().map_err(|_| Failure::Usage(format!("--{flag} expects {K} comma-separated integers, got `{text}`")))
}

fn family(spec: FamilySpec) -> CliResult<Input> {
    let fd = build_family(spec)?;
    Ok(Input { diagram: fd.diagram().clone(), source: json!(spec), curated: vec![] })
}

fn table_input(entry: &KnotTableEntry) -> CliResult<Input> {
    Ok(Input {
        diagram: entry.diagram()?,
        source: json!({ "table": entry.name }),
        curated: entry.curated.clone(),
    })
}

fn resolve_inputs(c: &Common) -> CliResult<Vec<Input>> {
    let mut inputs = vec![];
    for path in &c.pd {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let pd = parse_pd_input(&text)?;
        let diagram = build_diagram(&pd.pd, pd.mark)?;
        inputs.push(Input { diagram, source: json!({ "file": path.display().to_string() }), curated: vec![] });
    }
    for t in &c.kt {
        let [r, n] = parse_params("kt", t)?;
        inputs.push(family(FamilySpec::Kt { r, n })?);
    }
    for t in &c.conway {
        let [r, n] = parse_params("conway", t)?;
        inputs.push(family(FamilySpec::Conway { r, n })?);
    }
    for t in &c.pretzel {
        let [p, q, r] = parse_params("pretzel", t)?;
        inputs.push(family(FamilySpec::Pretzel { p, q, r })?);
    }
    for &m in &c.torus2 {
        inputs.push(family(FamilySpec::Torus2 { m })?);
    }
    if !c.table.is_empty() {
        let table = match &c.table_file {
            Some(path) => load_table(path)?,
            None => shipped_table(),
        };
        for name in &c.table {
            let entry = lookup(&table, name).ok_or_else(|| Error::BadSpec(format!("no table entry named `{name}`")))?;
            inputs.push(table_input(entry)?);
        }
    }
    if let Some(mark) = c.mark {
        for input in &mut inputs {
            input.diagram = build_diagram(input.diagram.pd(), mark)?;
            input.source["mark"] = json!(mark);
        }
    }
    Ok(inputs)
}

fn options(c: &Common, input: &Input) -> ReportOptions {
    let curated = if c.no_curated { vec![] } else { input.curated.clone() };
    ReportOptions { essential: !c.all_states, use_curated: !curated.is_empty(), curated, cap: c.cap, ..Default::default() }
}

fn single(c: &Common) -> CliResult<Input> {
    let mut inputs = resolve_inputs(c)?;
    match inputs.len() {
        1 => Ok(inputs.remove(0)),
        0 => Err(Failure::Usage("no input given; use --pd, --kt, --conway, --pretzel, --torus2 or --table".into())),
        n => Err(Failure::Usage(format!("expected one input, got {n}"))),
    }
}

fn reject(c: &Common, csv: bool, dot: bool) -> CliResult<()> {
    if (c.csv && !csv) || (c.dot && !dot) {
        return Err(Failure::Usage("output format not available for this subcommand".into()));
    }
    Ok(())
}

fn census_text(census: &BiGradedCensus) -> String {
    let mut out = String::new();
    for s in census.levels().into_iter().rev() {
        let cells: Vec<String> = census.level(s).into_iter().map(|(m, k)| format!("m={m}:{k}")).collect();
        out.push_str(&format!("s={s}  {}\n", cells.join("  ")));
    }
    out
}

fn emit_json(v: &Value) -> String {
    format!("{}\n", serde_json::to_string(v).expect("values serialize"))
}

fn run(command: Command) -> CliResult<String> {
    match command {
        Command::Census(c) => {
            reject(&c, true, false)?;
            let input = single(&c)?;
            let states = enumerate_states_capped(&input.diagram, c.cap)?;
            let census = BiGradedCensus::from_states(&states);
            Ok(if c.json {
                emit_json(&json!({
                    "input": input_json(&input.diagram, input.source),
                    "states": states.len(),
                    "census": census_json(&census),
                }))
            } else if c.csv {
                census_csv(&census)
            } else {
                format!("states: {}\n{}", states.len(), census_text(&census))
            })
        }
        Command::Report(c) => {
            reject(&c, true, false)?;
            let input = single(&c)?;
            let report = hfk_report(&input.diagram, &options(&c, &input))?;
            let sigma = signature(&input.diagram)?;
            let genus = genus_bounds(&input.diagram, &report);
            Ok(if c.json {
                emit_json(&report_json(input_json(&input.diagram, input.source), &report, Some(sigma), genus))
            } else if c.csv {
                report_csv(&report)
            } else {
                let mut out = format!(
                    "states: {}  essential: {}\nalexander: {}\nsignature: {sigma}\ngenus: {} <= g <= {}\n",
                    report.states,
                    report.essential_census.total(),
                    report.alexander,
                    genus.0,
                    genus.1
                );
                for lv in report.levels.values().rev() {
                    let cells: Vec<String> = lv
                        .ranks
                        .iter()
                        .map(|(m, &(lo, hi))| if lo == hi { format!("m={m}:{lo}") } else { format!("m={m}:{lo}..{hi}") })
                        .collect();
                    let status = if lv.exact { "exact" } else { "bounded" };
                    let cells = if cells.is_empty() { vec!["0".to_string()] } else { cells };
                    out.push_str(&format!("s={}  {status}  {}\n", lv.s, cells.join("  ")));
                }
                for w in &report.warnings {
                    out.push_str(&format!("warning: {w}\n"));
                }
                out
            })
        }
        Command::Alexander(c) => {
            reject(&c, false, false)?;
            let input = single(&c)?;
            let delta = kstates::invariants::alexander_poly(&input.diagram)?;
            let det = determinant_of(&delta);
            Ok(if c.json {
                emit_json(&json!({
                    "input": input_json(&input.diagram, input.source),
                    "alexander": alexander_json(&delta),
                    "determinant": det,
                }))
            } else {
                format!("{delta}\ndeterminant: {det}\n")
            })
        }
        Command::Signature(c) => {
            reject(&c, false, false)?;
            let input = single(&c)?;
            let sigma = signature(&input.diagram)?;
            Ok(if c.json {
                emit_json(&json!({ "input": input_json(&input.diagram, input.source), "signature": sigma }))
            } else {
                format!("{sigma}\n")
            })
        }
        Command::Order(c) => {
            if c.json || c.csv {
                return Err(Failure::Usage("order writes DOT only".into()));
            }
            let input = single(&c)?;
            let states = enumerate_states_capped(&input.diagram, c.cap)?;
            Ok(order_dot(&input.diagram, &states))
        }
        Command::Genus(c) => {
            reject(&c, false, false)?;
            let input = single(&c)?;
            let report = hfk_report(&input.diagram, &options(&c, &input))?;
            let (lower, upper) = genus_bounds(&input.diagram, &report);
            let degree = report.alexander.degree().unwrap_or(0);
            Ok(if c.json {
                emit_json(&json!({
                    "input": input_json(&input.diagram, input.source),
                    "alexander_degree": degree,
                    "hfk_degree": report.hfk_degree,
                    "genus": { "lower": lower, "upper": upper },
                }))
            } else {
                format!("{lower} <= g <= {upper}\n")
            })
        }
        Command::CompareMutants(c) => {
            reject(&c, false, false)?;
            let inputs = resolve_inputs(&c)?;
            let [left, right] = <[Input; 2]>::try_from(inputs)
                .map_err(|v| Failure::Usage(format!("compare-mutants needs two inputs, got {}", v.len())))?;
            let opts = options(&c, &left);
            let m = mutation_compare(&left.diagram, &right.diagram, &opts)?;
            Ok(if c.json {
                emit_json(&mutation_json(
                    input_json(&left.diagram, left.source),
                    input_json(&right.diagram, right.source),
                    &m,
                ))
            } else {
                match m.witness {
                    Some((s, mm)) => format!("distinguished: true (s={s}, m={mm})\n"),
                    None => "distinguished: false\n".to_string(),
                }
            })
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::StateExplosion { .. }) { 3 } else { 2 })
        }
    }
}
