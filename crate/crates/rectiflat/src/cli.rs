//! The `rectiflat` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rectiflat_core::flat::{flat_separator, LadderConfig, SeparatorConfig};
use rectiflat_core::free::free_norm_report;
use rectiflat_core::hausdorff::{
    content_interval_union, content_on_ordered_arc, content_upper_greedy, ArcTarget, CoverSolution, PieceKind,
};
use rectiflat_core::lipschitz::{
    de_leeuw, flatness_modulus, lip_norm, mcshane_extend, separation_report, FlatnessProfile, ScalarField,
};
use rectiflat_core::metric::{validate_metric, FiniteMetricSpace, PointSubset, Violation};
use rectiflat_core::ur::{dl_arc, dl_tree, dur_interval_union, gap_certificate, iterate_collapse, Tag};
use rectiflat_core::zoo;
use serde_json::{json, Value};

use crate::acceptance;
use crate::error::{CliError, Result};
use crate::io;

/// Exit status for malformed command lines.
pub const EXIT_USAGE: i32 = 64;
/// Exit status for rejected input files and failed preconditions.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rectiflat", version, about = "Finite-scale toolkit for rectifiability, flat Lipschitz functions and the ur-collapse")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for reported pass flags.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Accept distance matrices that fail the metric axioms.
    #[arg(long, global = true)]
    pub allow_pseudometric: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// Tables only: flatness profiles, separation reports, acceptance results.
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the metric axioms on a distance matrix and list every violation.
    Validate(ValidateArgs),
    /// Generate an example space: Cantor unions and samples, the filled Cantor
    /// arc, the topologist's sine curve and the unit interval.
    Zoo(ZooArgs),
    /// Hausdorff 1-content: exact on interval unions and model arcs, an upper
    /// bound by contiguous covers on finite spaces.
    Content(ContentArgs),
    /// Lipschitz norm, flatness modulus, McShane extension or uniform
    /// separation constant of a field.
    Lip(LipArgs),
    /// Build the locally flat separator g with g(x) - g(p) >= d(p, x) - delta
    /// through the ambient graph and neighborhood ladder.
    Flatsep(FlatsepArgs),
    /// The collapse pseudometric on a union of closed intervals: the total
    /// length of gaps between the two points, with its curve-flat certificate.
    Dur(DurArgs),
    /// Iterate the tag-model collapse of a bounded turning arc.
    Collapse(CollapseArgs),
    /// The d_Λ pseudometric on a bounded turning arc or tree: the least cover
    /// cost of its non-sigma-finite material between two points.
    Dl(DlArgs),
    /// Free-space norm of a finitely supported vector as a transport problem,
    /// with a 1-Lipschitz dual certificate and duality gap.
    Freenorm(FreenormArgs),
    /// Run the acceptance suite; exits 1 if any criterion fails.
    Accept(AcceptArgs),
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Distance matrix JSON.
    #[arg(long)]
    pub space: PathBuf,
    /// Maximum number of violations listed.
    #[arg(long, default_value_t = 100)]
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZooName {
    Cantor,
    CantorEndpoints,
    SnowflakeCantor,
    FilledCantorArc,
    TopologistSine,
    UnitInterval,
    /// Value of the Cantor staircase at --x.
    Staircase,
}

#[derive(Debug, Args)]
pub struct ZooArgs {
    #[arg(value_enum)]
    pub name: ZooName,
    /// Cantor level.
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    /// Sample size.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long)]
    pub x: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArcTargetKind {
    /// Every segment that is not rectifiable.
    NonRectifiable,
    SigmaFinite,
    Fat,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["space", "interval_union", "arc"]))]
pub struct ContentArgs {
    /// Finite metric space JSON; gives an upper bound.
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// Interval union JSON; gives the exact content.
    #[arg(long)]
    pub interval_union: Option<PathBuf>,
    /// Model arc JSON; gives the exact content of the target segments.
    #[arg(long)]
    pub arc: Option<PathBuf>,
    /// Comma separated point ids; all points by default.
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<String>>,
    /// Cover pieces must have diameter below delta.
    #[arg(long, default_value_t = f64::INFINITY)]
    pub delta: f64,
    /// Segments to cover on an arc.
    #[arg(long, value_enum, default_value_t = ArcTargetKind::NonRectifiable)]
    pub target: ArcTargetKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LipOp {
    /// Lipschitz norm and largest de Leeuw quotient.
    Norm,
    /// Largest quotient over pairs within each radius.
    Modulus,
    /// McShane extension of values given on a subset.
    Extend,
    /// Uniform separation constant of a family.
    Separation,
}

#[derive(Debug, Args)]
pub struct LipArgs {
    /// Finite metric space JSON.
    #[arg(long)]
    pub space: PathBuf,
    /// Field JSON: values, subset plus values, or a family.
    #[arg(long)]
    pub field: PathBuf,
    #[arg(value_enum)]
    pub op: LipOp,
    /// Radii for the modulus; powers of 1/2 times the diameter by default.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    /// Lipschitz constant of the extension.
    #[arg(long, default_value_t = 1.0)]
    pub lipschitz: f64,
}

#[derive(Debug, Args)]
pub struct FlatsepArgs {
    /// Finite metric space JSON.
    #[arg(long)]
    pub space: PathBuf,
    /// Point id (or index) of p.
    #[arg(long)]
    pub p: String,
    /// Additive separation loss.
    #[arg(long)]
    pub delta: f64,
    /// Each pair segment of the ambient is split into 2^depth pieces.
    #[arg(long, default_value_t = 1)]
    pub steiner_depth: u32,
    /// Number of ladder shells.
    #[arg(long, default_value_t = 4)]
    pub shells: usize,
    /// Random curves checked per shell.
    #[arg(long, default_value_t = 16)]
    pub curves: usize,
    /// Floor of the ladder halving search; a quarter of the smallest sample
    /// distance by default.
    #[arg(long)]
    pub min_radius: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DurArgs {
    /// Interval union JSON.
    #[arg(long)]
    pub interval_union: PathBuf,
    /// First point; must lie in the union.
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    /// Second point; must lie in the union.
    #[arg(long, allow_negative_numbers = true)]
    pub y: f64,
}

#[derive(Debug, Args)]
pub struct CollapseArgs {
    /// Model arc JSON.
    #[arg(long)]
    pub arc: PathBuf,
    /// Maximum number of collapse steps.
    #[arg(long, default_value_t = 16)]
    pub steps: usize,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["arc", "tree"]))]
pub struct DlArgs {
    /// Model arc JSON.
    #[arg(long, requires_all = ["i", "j"])]
    pub arc: Option<PathBuf>,
    /// Breakpoint index on the arc.
    #[arg(long)]
    pub i: Option<usize>,
    /// Breakpoint index on the arc.
    #[arg(long)]
    pub j: Option<usize>,
    /// Model tree JSON.
    #[arg(long, requires_all = ["x", "y"])]
    pub tree: Option<PathBuf>,
    /// Tree point index.
    #[arg(long)]
    pub x: Option<usize>,
    /// Tree point index.
    #[arg(long)]
    pub y: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FreenormArgs {
    /// Finite metric space JSON with its base point.
    #[arg(long)]
    pub space: PathBuf,
    /// Free vector JSON: a list of [point id, coefficient] terms.
    #[arg(long)]
    pub mu: PathBuf,
}

#[derive(Debug, Args)]
pub struct AcceptArgs {
    /// Run the criteria one after another.
    #[arg(long)]
    pub serial: bool,
    /// Run one criterion only.
    #[arg(long)]
    pub only: Option<u8>,
}

/// A report with an optional tabular form for CSV output.
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    pub exit: i32,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

impl Report {
    fn json(json: Value) -> Self {
        Self { json, table: None, exit: 0 }
    }

    fn with_table(json: Value, table: Table) -> Self {
        Self { json, table: Some(table), exit: 0 }
    }
}

/// Parses `argv`, runs the command and prints its output; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|r| emit(&cli, r)) {
        Ok(code) => code,
        Err(e) => {
            println!("{}", e.to_json());
            EXIT_INPUT
        }
    }
}

fn emit(cli: &Cli, report: Report) -> Result<i32> {
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => report
            .table
            .as_ref()
            .map(Table::to_csv)
            .ok_or_else(|| CliError::Input("CSV output is only available for tabular reports".into()))?,
    };
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write { path: path.clone(), source })?,
        None => print!("{text}"),
    }
    Ok(report.exit)
}

/// Runs a parsed command line and returns its report.
pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Validate(a) => validate(a),
        Command::Zoo(a) => zoo_cmd(a),
        Command::Content(a) => content(cli, a),
        Command::Lip(a) => lip(cli, a),
        Command::Flatsep(a) => flatsep(cli, a),
        Command::Dur(a) => dur(a),
        Command::Collapse(a) => collapse(a),
        Command::Dl(a) => dl(a),
        Command::Freenorm(a) => freenorm(cli, a),
        Command::Accept(a) => accept(cli, a),
    }
}

fn validate(a: &ValidateArgs) -> Result<Report> {
    let (ids, rows) = io::load_raw_space(&a.space)?;
    if ids.len() != rows.len() {
        return Err(CliError::Input(format!("{} ids for {} rows", ids.len(), rows.len())));
    }
    let report = validate_metric(&rows)?;
    let listed: Vec<Value> = report.violations.iter().take(a.limit).map(|v| violation_json(&ids, v)).collect();
    Ok(Report::json(json!({
        "valid": report.is_valid(),
        "points": ids.len(),
        "violation_count": report.violations.len(),
        "violations": listed,
    })))
}

fn violation_json(ids: &[String], v: &Violation) -> Value {
    match *v {
        Violation::NonzeroDiagonal { i, value } => json!({"axiom": "zero_diagonal", "points": [ids[i]], "value": value}),
        Violation::Asymmetric { i, j, forward, backward } => {
            json!({"axiom": "symmetry", "points": [ids[i], ids[j]], "forward": forward, "backward": backward})
        }
        Violation::NonPositive { i, j, value } => {
            json!({"axiom": "positivity", "points": [ids[i], ids[j]], "value": value})
        }
        Violation::Triangle { i, j, k, direct, via } => {
            json!({"axiom": "triangle", "points": [ids[i], ids[j], ids[k]], "direct": direct, "via": via})
        }
    }
}

fn zoo_cmd(a: &ZooArgs) -> Result<Report> {
    let v = match a.name {
        ZooName::Cantor => io::interval_union_json(&zoo::cantor_interval_union(a.k)?),
        ZooName::CantorEndpoints => io::space_json(&zoo::cantor_endpoint_sample(a.k)?),
        ZooName::SnowflakeCantor => io::space_json(&zoo::snowflake_cantor_sample(a.k)?),
        ZooName::FilledCantorArc => io::arc_json(&zoo::filled_cantor_arc(a.k)?),
        ZooName::TopologistSine => io::space_json(&zoo::topologist_sine_sample(a.n)?),
        ZooName::UnitInterval => io::space_json(&zoo::unit_interval_sample(a.n)?),
        ZooName::Staircase => {
            let x = a.x.ok_or_else(|| CliError::Input("staircase needs --x".into()))?;
            json!({ "x": x, "value": zoo::cantor_staircase(x)? })
        }
    };
    Ok(Report::json(v))
}

fn cover_json(sol: &CoverSolution, ids: Option<&[String]>) -> Value {
    let cover: Vec<Value> = sol
        .pieces
        .iter()
        .map(|p| match &p.kind {
            PieceKind::Interval(a, b) => json!({"interval": [a, b], "diam": p.diam}),
            PieceKind::Span(i, j) => json!({"span": [i, j], "diam": p.diam}),
            PieceKind::Points(pts) => {
                let named: Vec<Value> = match ids {
                    Some(ids) => pts.iter().map(|&i| json!(ids[i])).collect(),
                    None => pts.iter().map(|&i| json!(i)).collect(),
                };
                json!({"points": named, "diam": p.diam})
            }
        })
        .collect();
    json!({ "value": sol.total, "cover": cover, "exact": sol.exact })
}

fn content(cli: &Cli, a: &ContentArgs) -> Result<Report> {
    if let Some(path) = &a.interval_union {
        return Ok(Report::json(cover_json(&content_interval_union(&io::load_interval_union(path)?), None)));
    }
    if let Some(path) = &a.arc {
        let arc = io::load_arc(path)?;
        let segments = arc
            .segments()
            .iter()
            .enumerate()
            .filter(|(_, t)| match a.target {
                ArcTargetKind::NonRectifiable => !t.is_rectifiable(),
                ArcTargetKind::SigmaFinite => matches!(t, Tag::SigmaFinite),
                ArcTargetKind::Fat => matches!(t, Tag::Fat),
            })
            .map(|(i, _)| i)
            .collect();
        let sol = content_on_ordered_arc(&arc, &ArcTarget { segments, points: Vec::new() }, None, true)?;
        return Ok(Report::json(cover_json(&sol, None)));
    }
    let path = a.space.as_ref().expect("argument group requires an input");
    let space = io::load_space(path, cli.allow_pseudometric)?;
    let subset = subset_of(&space, a.subset.as_deref())?;
    let sol = content_upper_greedy(&space, &subset, a.delta)?;
    Ok(Report::json(cover_json(&sol, Some(space.ids()))))
}

fn subset_of(space: &FiniteMetricSpace, ids: Option<&[String]>) -> Result<PointSubset> {
    match ids {
        None => Ok(PointSubset::all(space)),
        Some(ids) => {
            let members = ids.iter().map(|t| io::resolve_point(space, t)).collect::<Result<Vec<_>>>()?;
            Ok(PointSubset::new(space, members)?)
        }
    }
}

fn full_field(space: &FiniteMetricSpace, doc: &io::FieldDoc) -> Result<ScalarField> {
    match (&doc.values, &doc.subset) {
        (Some(v), None) => Ok(ScalarField::new(space, v.clone())?),
        _ => Err(CliError::Input("expected a field file with \"values\" on every point".into())),
    }
}

fn profile_table(p: &FlatnessProfile) -> Table {
    Table {
        header: vec!["radius", "omega"],
        rows: p.radii.iter().zip(&p.omega).map(|(r, w)| vec![r.to_string(), w.to_string()]).collect(),
    }
}

fn profile_json(p: &FlatnessProfile) -> Value {
    json!({ "radii": p.radii, "omega": p.omega })
}

fn default_radii(space: &FiniteMetricSpace) -> Vec<f64> {
    let mut r: Vec<f64> = (0..=10).map(|j| space.diam() * 0.5f64.powi(j)).collect();
    r.extend(space.min_distance());
    r
}

fn lip(cli: &Cli, a: &LipArgs) -> Result<Report> {
    let space = io::load_space(&a.space, cli.allow_pseudometric)?;
    let doc = io::load_field(&a.field)?;
    match a.op {
        LipOp::Norm => {
            let f = full_field(&space, &doc)?;
            Ok(Report::json(json!({
                "lip_norm": lip_norm(&space, &f),
                "max_quotient": de_leeuw(&space, &f).sup_abs(),
            })))
        }
        LipOp::Modulus => {
            let f = full_field(&space, &doc)?;
            let radii = a.radii.clone().unwrap_or_else(|| default_radii(&space));
            let p = flatness_modulus(&space, &f, &radii)?;
            Ok(Report::with_table(profile_json(&p), profile_table(&p)))
        }
        LipOp::Extend => {
            let (Some(subset), Some(values)) = (&doc.subset, &doc.values) else {
                return Err(CliError::Input("extension needs \"subset\" and \"values\"".into()));
            };
            let idx = io::subset_indices(&space, subset)?;
            let mut pairs: Vec<(usize, f64)> = idx.into_iter().zip(values.iter().copied()).collect();
            if pairs.len() != subset.len() || subset.len() != values.len() {
                return Err(CliError::Input("one value per subset point expected".into()));
            }
            pairs.sort_by_key(|p| p.0);
            if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(CliError::Input("subset lists a point twice".into()));
            }
            let members = PointSubset::new(&space, pairs.iter().map(|p| p.0).collect())?;
            let vals: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            let f = mcshane_extend(&space, &members, &vals, a.lipschitz)?;
            Ok(Report::json(json!({ "values": f.values(), "lipschitz": a.lipschitz })))
        }
        LipOp::Separation => {
            let family = doc
                .family
                .as_ref()
                .ok_or_else(|| CliError::Input("separation needs a \"family\" of fields".into()))?
                .iter()
                .map(|v| ScalarField::new(&space, v.clone()))
                .collect::<rectiflat_core::Result<Vec<_>>>()?;
            let r = separation_report(&space, &family);
            let ids = space.ids();
            let scores: Vec<Value> =
                r.scores.iter().map(|&(x, y, s)| json!({"x": ids[x], "y": ids[y], "score": s})).collect();
            let worst = r.worst.map(|(x, y)| json!([ids[x], ids[y]]));
            let table = Table {
                header: vec!["x", "y", "score"],
                rows: r.scores.iter().map(|&(x, y, s)| vec![ids[x].clone(), ids[y].clone(), s.to_string()]).collect(),
            };
            let constant = if r.constant.is_finite() { json!(r.constant) } else { json!("inf") };
            Ok(Report::with_table(json!({ "constant": constant, "worst": worst, "scores": scores }), table))
        }
    }
}

fn flatsep(cli: &Cli, a: &FlatsepArgs) -> Result<Report> {
    let space = io::load_space(&a.space, cli.allow_pseudometric)?;
    let p = io::resolve_point(&space, &a.p)?;
    let config = SeparatorConfig {
        steiner_depth: a.steiner_depth,
        edge_radius: None,
        ladder: LadderConfig {
            shells: a.shells,
            curves: a.curves,
            seed: cli.seed,
            min_radius: a.min_radius,
            ..LadderConfig::default()
        },
    };
    let (g, r) = flat_separator(&space, p, a.delta, &config)?;
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({"shell": c.shell, "radius": c.radius, "halvings": c.halvings,
                   "threshold": c.threshold, "worst_content": c.worst_content, "passed": c.passed})
        })
        .collect();
    let json = json!({
        "points": space.ids(),
        "g": g.values(),
        "certified": r.certified,
        "diagnostic": r.diagnostic,
        "success": r.success,
        "min_slack": r.min_slack,
        "lip_norm": r.lip_norm,
        "flatness": profile_json(&r.flatness),
        "radii": r.radii,
        "levels": r.levels,
        "omega_innermost": r.omega_innermost,
        "lower_bound": {"curves": r.lower_bound.curves, "holding": r.lower_bound.holding,
                        "worst_margin": r.lower_bound.worst_margin},
        "checks": checks,
        "ambient": {"nodes": r.nodes, "edges": r.edges},
    });
    Ok(Report::with_table(json, profile_table(&r.flatness)))
}

fn dur(a: &DurArgs) -> Result<Report> {
    let u = io::load_interval_union(&a.interval_union)?;
    let value = dur_interval_union(&u, a.x, a.y)?;
    let cert = gap_certificate(&u);
    Ok(Report::json(json!({
        "value": value,
        "certificate": {"knots": cert.knots, "values": cert.values, "slopes": cert.slopes},
    })))
}

fn collapse(a: &CollapseArgs) -> Result<Report> {
    let arc = io::load_arc(&a.arc)?;
    let trace = iterate_collapse(&arc, a.steps);
    let stages: Vec<Value> = trace.stages.iter().map(io::arc_json).collect();
    let ends: Vec<f64> = trace.stages.iter().map(|s| s.endpoint_distance()).collect();
    Ok(Report::json(json!({
        "stages": stages,
        "maps": trace.maps,
        "endpoint_distances": ends,
        "stabilized_at": trace.stabilized_at,
    })))
}

fn dl(a: &DlArgs) -> Result<Report> {
    if let (Some(path), Some(i), Some(j)) = (&a.arc, a.i, a.j) {
        let arc = io::load_arc(path)?;
        return Ok(Report::json(json!({ "value": dl_arc(&arc, i, j)? })));
    }
    if let (Some(path), Some(x), Some(y)) = (&a.tree, a.x, a.y) {
        let tree = io::load_tree(path)?;
        let r = dl_tree(&tree, x, y)?;
        return Ok(Report::json(json!({
            "value": r.value,
            "path": r.path,
            "retraction_quotient": r.retraction_quotient,
        })));
    }
    Err(CliError::Input("dl needs --arc with --i and --j, or --tree with --x and --y".into()))
}

fn freenorm(cli: &Cli, a: &FreenormArgs) -> Result<Report> {
    let space = io::load_space(&a.space, cli.allow_pseudometric)?;
    let mu = io::load_free_vector(&a.mu, &space)?;
    let r = free_norm_report(&space, &mu);
    let ids = space.ids();
    let plan: Vec<Value> = r
        .plan
        .flows
        .iter()
        .map(|f| json!({"from": ids[f.source], "to": ids[f.sink], "mass": f.mass}))
        .collect();
    Ok(Report::json(json!({
        "value": r.value,
        "plan": plan,
        "certificate": r.certificate.values(),
        "gap": r.gap,
        "optimal": r.gap <= cli.tol * r.value.max(1.0),
    })))
}

fn accept(cli: &Cli, a: &AcceptArgs) -> Result<Report> {
    let outcomes = match a.only {
        Some(id) => vec![acceptance::run_criterion(id, cli.seed)
            .ok_or_else(|| CliError::Input(format!("no criterion numbered {id}")))?],
        None if a.serial => acceptance::run_serial(cli.seed),
        None => acceptance::run_all(cli.seed),
    };
    for o in &outcomes {
        eprintln!("criterion {:>2} {} in {:.3} s", o.id, if o.passed { "pass" } else { "FAIL" }, o.elapsed.as_secs_f64());
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let table = Table {
        header: vec!["id", "name", "passed", "detail"],
        rows: outcomes
            .iter()
            .map(|o| vec![o.id.to_string(), o.name.to_string(), o.passed.to_string(), o.detail.clone()])
            .collect(),
    };
    let mut report = Report::with_table(json!({ "passed": passed, "criteria": outcomes }), table);
    report.exit = if passed { 0 } else { 1 };
    Ok(report)
}
