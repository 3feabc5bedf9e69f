//! `superedge`: connectivity analysis, filtering, theorem scans and graph
//! generation over graph6 / edge-list streams.
//!
//! Exit status: 0 on success, 1 on violations, disagreements or an
//! inconclusive search, 2 on usage errors, 3 on I/O or decode errors.

mod input;

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use superedge::connectivity::CutWitness;
use superedge::enumerate::{enumerate_classes, EnumSpec};
use superedge::families::{make, FamilySpec};
use superedge::harness::{
    precedence_gate, search_counterexample, theorem, verify_sufficiency, Outcome, ScanReport,
    ScanSource, SearchBudget,
};
use superedge::io::{encode_graph6, write_edge_list};
use superedge::patterns::{contains_induced, is_free, pattern_atlas, PairSpec};
use superedge::{
    analyze, is_maximally_edge_connected, is_super_edge_connected, Catalog, ConnectivityReport,
    Graph, Jobs,
};

use input::{usage, Format};

const ANALYZE_SCHEMA: &str = "superedge.analyze/1";
const SEARCH_SCHEMA: &str = "superedge.search/1";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    /// A scan or search finished but did not confirm the claim.
    Failed,
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "superedge", version, about = "Super edge-connectivity and forbidden induced subgraphs")]
struct Cli {
    /// Worker threads (default: all cores); never changes output.
    #[arg(long, short = 'j', global = true, env = "SUPEREDGE_JOBS")]
    jobs: Option<usize>,
    /// Write results here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Connectivity parameters and pattern containment for each input graph.
    Analyze(AnalyzeArgs),
    /// Pass through the input graphs that satisfy every given predicate.
    Filter(FilterArgs),
    /// Scan a theorem's hypothesis class for violations of its conclusion.
    Verify(VerifyArgs),
    /// Look for a pair-free graph that is not super-edge-connected.
    Search(SearchArgs),
    /// Emit graph6 for family instances or isomorphism classes.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
}

#[derive(Args, Debug)]
struct PatternArgs {
    /// Register a custom pattern as NAME=<graph6> or NAME=@<edge-list file>.
    #[arg(long = "pattern", value_name = "NAME=GRAPH")]
    patterns: Vec<String>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    patterns: PatternArgs,
    /// One JSON object per graph instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FilterArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    patterns: PatternArgs,
    /// Keep graphs free of every listed pattern (comma separated, repeatable).
    #[arg(long, value_name = "LIST")]
    free: Vec<String>,
    /// Keep graphs containing this pattern as an induced subgraph (repeatable).
    #[arg(long, value_name = "NAME")]
    contains: Vec<String>,
    #[arg(long = "super", value_name = "BOOL")]
    super_edge: Option<bool>,
    /// Filter on lambda == delta.
    #[arg(long, value_name = "BOOL")]
    maximal: Option<bool>,
    #[arg(long, value_name = "BOOL")]
    connected: Option<bool>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// 2.1, 2.2, 2.2i, 2.2ii, 1.1, 1.2, 1.3 or 1.4.
    #[arg(long)]
    theorem: String,
    /// Largest order to scan.
    #[arg(long, default_value_t = 7)]
    nmax: usize,
    /// Scan labeled graphs instead of isomorphism classes.
    #[arg(long, conflicts_with = "input")]
    labeled: bool,
    /// Allow the labeled scan at n = 8.
    #[arg(long, requires = "labeled")]
    extended: bool,
    /// Scan the graphs in this file instead of an enumeration.
    #[arg(long)]
    input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Write violating graphs as graph6 to this file.
    #[arg(long, value_name = "FILE")]
    violations: Option<String>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    patterns: PatternArgs,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// The forbidden pair, e.g. `Z1,P5`.
    #[arg(long)]
    pair: String,
    #[arg(long, default_value_t = 7)]
    nmax: usize,
    /// With --nmax 8, also scan every labeled graph on 8 vertices.
    #[arg(long)]
    extended: bool,
    /// Skip the registered non-super families.
    #[arg(long)]
    no_families: bool,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    patterns: PatternArgs,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// FAMILY:SIZE tokens; SIZE may be a range such as 4..8.
    specs: Vec<String>,
    /// Also emit every isomorphism class on this many vertices.
    #[arg(long, value_name = "N")]
    classes: Option<usize>,
    /// Restrict --classes to connected graphs.
    #[arg(long, requires = "classes")]
    connected: bool,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let jobs = cli.jobs.map_or_else(Jobs::all, Jobs::new);
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args, &mut out),
        Command::Filter(args) => cmd_filter(args, &mut out),
        Command::Verify(args) => cmd_verify(args, jobs, &mut out),
        Command::Search(args) => cmd_search(args, jobs, &mut out),
        Command::Gen(args) => cmd_gen(args, jobs, &mut out),
    };
    out.flush()?;
    result
}

fn describe_witness(w: &CutWitness) -> String {
    let side: Vec<String> = w.side.iter().map(|v| v.to_string()).collect();
    let cut: Vec<String> = w.boundary.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("side {{{}}}, cut [{}]", side.join(","), cut.join(" "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct AnalyzeRecord<'a> {
    schema: &'static str,
    record: usize,
    graph6: String,
    report: &'a ConnectivityReport,
    contains: Vec<Containment>,
}

#[derive(Serialize)]
struct Containment {
    pattern: String,
    induced: bool,
}

fn cmd_analyze(args: AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let graphs = input::read_graphs(&args.input.input, args.input.format)?;
    let cat = input::catalog(&args.patterns.patterns)?;
    let mut patterns = pattern_atlas();
    patterns.extend(cat.custom().iter().cloned());
    for (record, g) in &graphs {
        let report = analyze(g);
        let contains: Vec<Containment> = patterns
            .iter()
            .map(|p| Containment {
                pattern: p.name().to_string(),
                induced: contains_induced(g, p).is_some(),
            })
            .collect();
        if args.json {
            let rec = AnalyzeRecord {
                schema: ANALYZE_SCHEMA,
                record: *record,
                graph6: encode_graph6(g),
                report: &report,
                contains,
            };
            writeln!(out, "{}", serde_json::to_string(&rec).expect("serializable"))?;
            continue;
        }
        let mut s = String::new();
        let r = &report;
        let _ = writeln!(s, "graph {record}: {}", encode_graph6(g));
        let _ = writeln!(
            s,
            "  n={} m={} connected={} min_degree={} max_degree={}",
            r.order,
            r.size,
            yes(r.connected),
            r.min_degree,
            r.max_degree
        );
        let restricted = r.lambda_restricted.map_or("undefined".into(), |v| v.to_string());
        let _ = writeln!(s, "  kappa={} lambda={} lambda_restricted={restricted}", r.kappa, r.lambda);
        let _ = writeln!(s, "  maximally edge-connected: {}", yes(r.maximally_edge_connected));
        let note = if r.tiny_convention { " (by convention for n <= 2)" } else { "" };
        let _ = writeln!(s, "  super edge-connected: {}{note}", yes(r.super_edge_connected));
        if let Some(w) = &r.witness {
            let _ = writeln!(s, "  minimum cut: {}", describe_witness(w));
        }
        let inside: Vec<&str> = contains
            .iter()
            .filter(|c| c.induced)
            .map(|c| c.pattern.as_str())
            .collect();
        let _ = writeln!(s, "  contains: {}", if inside.is_empty() { "-".into() } else { inside.join(" ") });
        write!(out, "{s}")?;
    }
    Ok(())
}

fn cmd_filter(args: FilterArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cat = input::catalog(&args.patterns.patterns)?;
    let free: Vec<PairSpec> = args
        .free
        .iter()
        .map(|l| free_list(&cat, l))
        .collect::<Result<_, _>>()?;
    let contains = args
        .contains
        .iter()
        .map(|n| cat.lookup(n).map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    let graphs = input::read_graphs(&args.input.input, args.input.format)?;
    let mut passed = 0;
    for (_, g) in &graphs {
        let keep = args.connected.is_none_or(|c| g.is_connected() == c)
            && free.iter().all(|p| is_free(g, p))
            && contains.iter().all(|p| contains_induced(g, p).is_some())
            && args.super_edge.is_none_or(|want| super_edge(g) == want)
            && args.maximal.is_none_or(|want| maximal(g) == want);
        if keep {
            passed += 1;
            writeln!(out, "{}", encode_graph6(g))?;
        }
    }
    eprintln!("passed {passed} of {}", graphs.len());
    Ok(())
}

/// A `--free` list may name any number of patterns; pairs are the usual case.
fn free_list(cat: &Catalog, list: &str) -> Result<PairSpec, CliError> {
    cat.pair(list).map_err(usage)
}

fn super_edge(g: &Graph) -> bool {
    g.is_connected() && is_super_edge_connected(g).expect("connected").0
}

fn maximal(g: &Graph) -> bool {
    if g.order() == 1 {
        return true;
    }
    g.is_connected() && is_maximally_edge_connected(g).expect("n >= 2").0
}

fn cmd_verify(args: VerifyArgs, jobs: Jobs, out: &mut dyn Write) -> Result<(), CliError> {
    let cat = input::catalog(&args.patterns.patterns)?;
    let specs = theorem(&args.theorem, &cat).map_err(usage)?;
    let source = match &args.input {
        Some(path) => ScanSource::Graphs {
            label: path.clone(),
            graphs: input::read_graphs(path, args.format)?,
        },
        None if args.labeled => ScanSource::Labeled {
            orders: 1..=args.nmax,
            extended: args.extended,
        },
        None => ScanSource::Classes(1..=args.nmax),
    };
    let reports: Vec<ScanReport> = specs
        .iter()
        .map(|spec| verify_sufficiency(spec, &source, jobs).map_err(usage))
        .collect::<Result<_, _>>()?;
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("serializable"))?;
    } else {
        let texts: Vec<String> = reports.iter().map(ScanReport::to_text).collect();
        write!(out, "{}", texts.join("\n"))?;
    }
    if let Some(path) = &args.violations {
        let mut file = BufWriter::new(
            File::create(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        );
        for v in reports.iter().flat_map(|r| &r.violating) {
            writeln!(file, "{}", v.graph6)?;
        }
        file.flush()?;
    }
    if reports.iter().all(ScanReport::success) {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

#[derive(Serialize)]
struct SearchRecord {
    schema: &'static str,
    pair: String,
    predicted_super: bool,
    outcome: Outcome,
    counterexample: Option<superedge::harness::Counterexample>,
}

fn cmd_search(args: SearchArgs, jobs: Jobs, out: &mut dyn Write) -> Result<(), CliError> {
    let cat = input::catalog(&args.patterns.patterns)?;
    let pair = cat.pair(&args.pair).map_err(usage)?;
    let predicted = precedence_gate(&pair).map_err(usage)?;
    let budget = SearchBudget {
        max_order: args.nmax,
        families: !args.no_families,
        extended: args.extended,
    };
    let found = search_counterexample(&pair, &budget, jobs).map_err(usage)?;
    let outcome = match (predicted, found.is_some()) {
        (true, false) | (false, true) => Outcome::Agree,
        (true, true) => Outcome::Disagree,
        (false, false) => Outcome::InconclusiveBudget,
    };
    if args.json {
        let rec = SearchRecord {
            schema: SEARCH_SCHEMA,
            pair: pair.label().to_string(),
            predicted_super: predicted,
            outcome,
            counterexample: found,
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&rec).expect("serializable"))?;
    } else {
        match &found {
            Some(c) => {
                writeln!(out, "{}", c.graph6)?;
                eprintln!("found in {}", c.source);
                if let Some(w) = &c.witness {
                    eprintln!("non-trivial minimum cut: {}", describe_witness(w));
                }
            }
            None => writeln!(out, "none within budget")?,
        }
        eprintln!(
            "{}: predicted {}, {outcome}",
            pair.label(),
            if predicted { "super-edge-connected" } else { "not always super-edge-connected" }
        );
    }
    match outcome {
        Outcome::Agree => Ok(()),
        _ => Err(CliError::Failed),
    }
}

/// Expands `family:4..8` into one token per size.
fn expand(token: &str) -> Result<Vec<FamilySpec>, CliError> {
    if let Some((name, range)) = token.split_once(':') {
        if let Some((lo, hi)) = range.split_once("..") {
            let bound = |s: &str| {
                s.trim_start_matches('=')
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad size range in {token:?}")))
            };
            return (bound(lo)?..=bound(hi)?)
                .map(|n| format!("{name}:{n}").parse().map_err(usage))
                .collect();
        }
    }
    Ok(vec![token.parse().map_err(usage)?])
}

fn cmd_gen(args: GenArgs, jobs: Jobs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.specs.is_empty() && args.classes.is_none() {
        return Err(CliError::Usage("gen needs FAMILY:SIZE tokens or --classes N".into()));
    }
    let mut graphs = Vec::new();
    for token in &args.specs {
        for spec in expand(token)? {
            graphs.push(make(&spec).map_err(usage)?);
        }
    }
    if let Some(n) = args.classes {
        let mut spec = EnumSpec::classes(n);
        if args.connected {
            spec = spec.connected();
        }
        graphs.extend(enumerate_classes(&spec, jobs).map_err(usage)?);
    }
    for g in &graphs {
        match args.format {
            Format::Graph6 => writeln!(out, "{}", encode_graph6(g))?,
            Format::Edgelist => write!(out, "{}", write_edge_list(g))?,
        }
    }
    Ok(())
}
