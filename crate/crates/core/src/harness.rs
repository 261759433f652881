//! Experiment commands behind the `rsudp` binary: `generate`, `solve`,
//! `compare`, `metrics` and `sweep`.
//!
//! Every command is a plain function over parsed arguments, so tests and
//! examples can drive them without spawning a process. All randomness comes
//! from explicit seeds.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::heuristics::{budget_grid, knapsack_front, pagerank_constructive};
use crate::metrics::{
    cost_at_qos, front_to_string, hypervolume, merge_nondominated, qos_at_cost, read_front_csv, relative_hypervolume,
    write_front_csv, NormBox, ParetoFront,
};
use crate::nsga2::{self, EaConfig};
use crate::objective::{Evaluator, QosMode};
use crate::scenario::{
    apply_traffic_pattern, generate_instance, load_scenario, save_scenario, Application, GeometryParams, Scenario,
    TrafficParams, TrafficPattern,
};

/// Margin added on each side of the bounding box of all compared fronts.
pub const BOX_MARGIN: f64 = 0.01;

#[derive(Debug, Parser)]
#[command(name = "rsudp", version, about = "Bi-objective RSU deployment experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic scenario file.
    Generate(GenerateArgs),
    /// Run one algorithm on a scenario and write its front.
    Solve(SolveArgs),
    /// HV/RHV table and fixed-anchor comparison over several fronts.
    Compare(CompareArgs),
    /// HV/RHV of fronts against a reference or a given box.
    Metrics(MetricsArgs),
    /// NSGA-II over a grid of crossover and mutation rates.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Nsga2,
    Pagerank,
    Knapsack,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Nsga2 => "nsga2",
            Algorithm::Pagerank => "pagerank",
            Algorithm::Knapsack => "knapsack",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub segments: u32,
    #[arg(long, default_value = "normal")]
    pub pattern: TrafficPattern,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "data")]
    pub app: Application,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_enum, default_value = "nsga2")]
    pub algo: Algorithm,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Inclusive seed range `a..b`; overrides `--seed`.
    #[arg(long, value_parser = parse_seeds)]
    pub seeds: Option<SeedRange>,
    #[arg(long, default_value_t = 200)]
    pub generations: usize,
    #[arg(long, default_value_t = 72)]
    pub population: usize,
    #[arg(long, default_value_t = 0.7)]
    pub p_crossover: f64,
    #[arg(long, default_value_t = 0.1)]
    pub p_mutation: f64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value = "literal")]
    pub qos_mode: QosMode,
    /// Knapsack budgets `lo:hi:step` in USD; defaults to 40 even steps up to
    /// the cost of a full deployment.
    #[arg(long, value_parser = parse_grid)]
    pub budget_grid: Option<BudgetGrid>,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Fronts as `ALGO=PATH` or `ALGO#RUN=PATH`.
    #[arg(required = true, num_args = 2.., value_parser = parse_labeled)]
    pub fronts: Vec<LabeledFront>,
    #[arg(long, default_value = "instance")]
    pub instance: String,
    #[arg(long, value_delimiter = ',', default_value = "10000,15000")]
    pub cost_anchors: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "2500")]
    pub qos_anchors: Vec<f64>,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct MetricsArgs {
    #[arg(required = true, value_parser = parse_labeled)]
    pub fronts: Vec<LabeledFront>,
    /// Reference front; defaults to the merge of the inputs.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Normalization box `qos_min,qos_max,cost_min,cost_max`.
    #[arg(long, value_delimiter = ',')]
    pub r#box: Option<Vec<f64>>,
    #[arg(long, default_value = "instance")]
    pub instance: String,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.7,0.9")]
    pub p_crossover: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.05,0.1")]
    pub p_mutation: Vec<f64>,
    #[arg(long, value_parser = parse_seeds, default_value = "1..5")]
    pub seeds: SeedRange,
    #[arg(long, default_value_t = 200)]
    pub generations: usize,
    #[arg(long, default_value_t = 72)]
    pub population: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value = "literal")]
    pub qos_mode: QosMode,
    #[arg(long)]
    pub out_dir: PathBuf,
}

/// Inclusive seed range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeedRange {
    pub first: u64,
    pub last: u64,
}

impl SeedRange {
    pub fn seeds(&self) -> Vec<u64> {
        (self.first..=self.last).collect()
    }
}

pub fn parse_seeds(s: &str) -> Result<SeedRange, String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let first: u64 = a.trim().parse().map_err(|e| format!("bad seed `{a}`: {e}"))?;
    let last: u64 = b.trim().parse().map_err(|e| format!("bad seed `{b}`: {e}"))?;
    if last < first {
        return Err(format!("empty seed range `{s}`"));
    }
    Ok(SeedRange { first, last })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BudgetGrid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl BudgetGrid {
    pub fn budgets(&self) -> Vec<f64> {
        budget_grid(self.lo, self.hi, self.step)
    }

    /// Forty even steps up to the cost of putting the priciest type on
    /// every segment.
    pub fn full_deployment(ev: &Evaluator) -> Self {
        let full = (1..=ev.num_types() as u32).map(|t| ev.type_cost(t)).fold(0.0, f64::max) * ev.num_segments() as f64;
        let step = full / 40.0;
        BudgetGrid { lo: step, hi: full, step }
    }
}

pub fn parse_grid(s: &str) -> Result<BudgetGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(format!("expected `lo:hi:step`, got `{s}`"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("bad number `{x}`: {e}"));
    let g = BudgetGrid {
        lo: num(lo)?,
        hi: num(hi)?,
        step: num(step)?,
    };
    if !(g.step > 0.0 && g.lo >= 0.0 && g.hi >= g.lo) {
        return Err(format!("need 0 <= lo <= hi and step > 0, got `{s}`"));
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledFront {
    pub algorithm: String,
    pub run: u32,
    pub path: PathBuf,
}

pub fn parse_labeled(s: &str) -> Result<LabeledFront, String> {
    let (label, path) = s.split_once('=').unwrap_or(("front", s));
    let (algorithm, run) = match label.split_once('#') {
        Some((a, r)) => (a, r.parse().map_err(|e| format!("bad run index `{r}`: {e}"))?),
        None => (label, 0),
    };
    if algorithm.is_empty() || path.is_empty() {
        return Err(format!("expected `ALGO=PATH`, got `{s}`"));
    }
    Ok(LabeledFront {
        algorithm: algorithm.to_string(),
        run,
        path: PathBuf::from(path),
    })
}

/// Parses `args` (program name first) and runs the command. Usage errors
/// exit with 2, runtime errors with 1.
pub fn main_from_args(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> ExitCode {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a).map(|_| ()),
        Command::Solve(a) => cmd_solve(&a).map(|_| ()),
        Command::Compare(a) => cmd_compare(&a).map(|_| ()),
        Command::Metrics(a) => cmd_metrics(&a).map(|_| ()),
        Command::Sweep(a) => cmd_sweep(&a).map(|_| ()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Synthetic scenario with default geometry, the given traffic pattern and
/// the default catalog and capacity table.
pub fn generate_scenario(segments: usize, pattern: TrafficPattern, app: Application, seed: u64) -> Result<Scenario> {
    let base = generate_instance(segments, &GeometryParams::default(), &TrafficParams::default(), seed)?;
    let network = apply_traffic_pattern(&base, pattern, seed);
    let mut sc = Scenario::with_defaults(network, app);
    sc.name = format!("synthetic-{segments}-{pattern}-{app}-s{seed}");
    sc.traffic_pattern = pattern;
    sc.seed = seed;
    sc.validate()?;
    Ok(sc)
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<Scenario> {
    let sc = generate_scenario(args.segments as usize, args.pattern, args.app, args.seed)?;
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    save_scenario(&sc, &args.out)?;
    Ok(sc)
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    scenario: &'a Path,
    algorithm: Algorithm,
    seeds: &'a [u64],
    qos_mode: QosMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    nsga2: Option<&'a EaConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget_grid: Option<BudgetGrid>,
    outputs: &'a [String],
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Fronts produced by `solve`, keyed by output file name.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub fronts: Vec<(String, ParetoFront)>,
}

pub fn cmd_solve(args: &SolveArgs) -> Result<SolveOutcome> {
    let sc = load_scenario(&args.scenario).with_context(|| format!("loading {}", args.scenario.display()))?;
    let ev = Evaluator::new(&sc, args.qos_mode)?;
    let seeds = args.seeds.map(|r| r.seeds()).unwrap_or_else(|| vec![args.seed]);
    fs::create_dir_all(&args.out_dir).with_context(|| format!("creating {}", args.out_dir.display()))?;
    let out = |name: &str| args.out_dir.join(name);

    let mut fronts = Vec::new();
    let mut outputs = Vec::new();
    let mut config = None;
    let mut grid = None;
    match args.algo {
        Algorithm::Nsga2 => {
            let base = EaConfig {
                population_size: args.population,
                generations: args.generations,
                p_crossover: args.p_crossover,
                p_mutation: args.p_mutation,
                qos_mode: args.qos_mode,
                workers: args.workers,
                ..EaConfig::default()
            };
            base.validate()?;
            for &seed in &seeds {
                let res = nsga2::run_with_evaluator(&ev, &EaConfig { seed, ..base.clone() })?;
                let suffix = if seeds.len() == 1 { String::new() } else { format!("-{seed}") };
                let (front_name, log_name) = (format!("front{suffix}.csv"), format!("log{suffix}.csv"));
                write_front_csv(&res.front, out(&front_name))?;
                nsga2::write_log_csv(&res.log, out(&log_name)).with_context(|| format!("writing {log_name}"))?;
                outputs.push(front_name.clone());
                outputs.push(log_name);
                fronts.push((front_name, res.front));
            }
            config = Some(base);
        }
        Algorithm::Pagerank => {
            let res = pagerank_constructive(&ev, &sc.network);
            let front = res.front(&ev, "pagerank");
            write_front_csv(&front, out("front.csv"))?;
            outputs.push("front.csv".into());
            fronts.push(("front.csv".into(), front));
        }
        Algorithm::Knapsack => {
            let g = args.budget_grid.unwrap_or_else(|| BudgetGrid::full_deployment(&ev));
            let front = knapsack_front(&ev, &g.budgets(), &seeds);
            write_front_csv(&front, out("front.csv"))?;
            outputs.push("front.csv".into());
            fronts.push(("front.csv".into(), front));
            grid = Some(g);
        }
    }
    let manifest = Manifest {
        scenario: &args.scenario,
        algorithm: args.algo,
        seeds: &seeds,
        qos_mode: args.qos_mode,
        nsga2: config.as_ref(),
        budget_grid: grid,
        outputs: &outputs,
    };
    write_json(&out("manifest.json"), &manifest)?;
    Ok(SolveOutcome { fronts })
}

/// One row of the HV/RHV report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricRow {
    pub instance: String,
    pub algorithm: String,
    pub run: u32,
    pub hv: f64,
    pub rhv: f64,
    pub front_size: usize,
}

/// One fixed-anchor query: QoS at a cost budget or cost at a QoS target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnchorRow {
    pub instance: String,
    pub algorithm: String,
    /// `cost` or `qos`: which objective is held fixed.
    pub fixed: String,
    pub anchor: f64,
    /// QoS reached (fixed cost) or cost paid (fixed QoS); 0 when infeasible.
    pub value: f64,
    pub feasible: bool,
    /// Improvement of the first listed algorithm over this one, in percent.
    pub improvement_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub norm_box: NormBox,
    pub metrics: Vec<MetricRow>,
    pub anchors: Vec<AnchorRow>,
}

fn load_fronts(list: &[LabeledFront]) -> Result<Vec<(LabeledFront, ParetoFront)>> {
    list.iter()
        .map(|l| {
            let label = format!("{}#{}", l.algorithm, l.run);
            Ok((l.clone(), read_front_csv(&l.path, &label)?))
        })
        .collect()
}

fn metric_rows(instance: &str, fronts: &[(LabeledFront, ParetoFront)], reference: &ParetoFront, bx: &NormBox) -> Result<Vec<MetricRow>> {
    fronts
        .iter()
        .map(|(l, f)| {
            Ok(MetricRow {
                instance: instance.to_string(),
                algorithm: l.algorithm.clone(),
                run: l.run,
                hv: hypervolume(f, bx)?,
                rhv: relative_hypervolume(f, reference, bx)?,
                front_size: f.len(),
            })
        })
        .collect()
}

/// Metrics for in-memory fronts against their merged reference.
pub fn compare_fronts(
    instance: &str,
    fronts: &[(LabeledFront, ParetoFront)],
    cost_anchors: &[f64],
    qos_anchors: &[f64],
) -> Result<Comparison> {
    ensure!(!fronts.is_empty(), "no fronts to compare");
    let reference = merge_nondominated(fronts.iter().map(|f| &f.1), "reference");
    let norm_box = NormBox::enclosing(fronts.iter().map(|f| &f.1), BOX_MARGIN)?;
    let metrics = metric_rows(instance, fronts, &reference, &norm_box)?;

    // anchors use each algorithm's merged front, in first-appearance order
    let mut algos: Vec<&str> = Vec::new();
    for (l, _) in fronts {
        if !algos.contains(&l.algorithm.as_str()) {
            algos.push(&l.algorithm);
        }
    }
    let merged: Vec<ParetoFront> = algos
        .iter()
        .map(|a| merge_nondominated(fronts.iter().filter(|f| f.0.algorithm == *a).map(|f| &f.1), *a))
        .collect();
    let mut anchors = Vec::new();
    for &c in cost_anchors {
        let subject = qos_at_cost(&merged[0], c);
        for (a, f) in algos.iter().zip(&merged) {
            let q = qos_at_cost(f, c);
            let improvement = match (subject, q) {
                (Some(s), Some(q)) if q > 0.0 => Some((s - q) / q * 100.0),
                _ => None,
            };
            anchors.push(AnchorRow {
                instance: instance.to_string(),
                algorithm: a.to_string(),
                fixed: "cost".into(),
                anchor: c,
                value: q.unwrap_or(0.0),
                feasible: q.is_some(),
                improvement_pct: improvement,
            });
        }
    }
    for &q in qos_anchors {
        let subject = cost_at_qos(&merged[0], q);
        for (a, f) in algos.iter().zip(&merged) {
            let c = cost_at_qos(f, q);
            let improvement = match (subject, c) {
                (Some(s), Some(c)) if c > 0.0 => Some((c - s) / c * 100.0),
                _ => None,
            };
            anchors.push(AnchorRow {
                instance: instance.to_string(),
                algorithm: a.to_string(),
                fixed: "qos".into(),
                anchor: q,
                value: c.unwrap_or(0.0),
                feasible: c.is_some(),
                improvement_pct: improvement,
            });
        }
    }
    Ok(Comparison {
        norm_box,
        metrics,
        anchors,
    })
}

fn rows_to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String> {
    let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    wtr.write_record(header)?;
    for r in rows {
        wtr.serialize(r)?;
    }
    Ok(String::from_utf8(wtr.into_inner()?)?)
}

pub const METRICS_HEADER: [&str; 6] = ["instance", "algorithm", "run", "hv", "rhv", "front_size"];
const ANCHORS_HEADER: [&str; 7] = ["instance", "algorithm", "fixed", "anchor", "value", "feasible", "improvement_pct"];

#[derive(Serialize)]
struct BoxFile {
    qos_min: f64,
    qos_max: f64,
    cost_min: f64,
    cost_max: f64,
    margin: f64,
}

impl BoxFile {
    fn new(b: &NormBox, margin: f64) -> Self {
        BoxFile {
            qos_min: b.qos_min,
            qos_max: b.qos_max,
            cost_min: b.cost_min,
            cost_max: b.cost_max,
            margin,
        }
    }
}

/// Writes `metrics.csv`, `anchors.csv`, `reference.csv` and `box.json`.
pub fn cmd_compare(args: &CompareArgs) -> Result<Comparison> {
    let fronts = load_fronts(&args.fronts)?;
    let cmp = compare_fronts(&args.instance, &fronts, &args.cost_anchors, &args.qos_anchors)?;
    let dir = &args.out_dir;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(dir.join("metrics.csv"), rows_to_csv(&cmp.metrics, &METRICS_HEADER)?)?;
    fs::write(dir.join("anchors.csv"), rows_to_csv(&cmp.anchors, &ANCHORS_HEADER)?)?;
    let reference = merge_nondominated(fronts.iter().map(|f| &f.1), "reference");
    fs::write(dir.join("reference.csv"), front_to_string(&reference))?;
    write_json(&dir.join("box.json"), &BoxFile::new(&cmp.norm_box, BOX_MARGIN))?;
    for row in &cmp.anchors {
        if !row.feasible {
            eprintln!(
                "note: {} has no feasible point at fixed {} = {}",
                row.algorithm, row.fixed, row.anchor
            );
        }
    }
    Ok(cmp)
}

pub fn cmd_metrics(args: &MetricsArgs) -> Result<Vec<MetricRow>> {
    let fronts = load_fronts(&args.fronts)?;
    let reference = match &args.reference {
        Some(p) => read_front_csv(p, "reference")?,
        None => merge_nondominated(fronts.iter().map(|f| &f.1), "reference"),
    };
    let bx = match args.r#box.as_deref() {
        Some(&[q0, q1, c0, c1]) => NormBox::new(q0, q1, c0, c1)?,
        Some(other) => bail!("--box needs 4 values, got {}", other.len()),
        None => {
            let all: Vec<&ParetoFront> = fronts.iter().map(|f| &f.1).chain([&reference]).collect();
            NormBox::enclosing(all, BOX_MARGIN)?
        }
    };
    let rows = metric_rows(&args.instance, &fronts, &reference, &bx)?;
    let text = rows_to_csv(&rows, &METRICS_HEADER)?;
    match &args.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub p_crossover: f64,
    pub p_mutation: f64,
    pub seed: u64,
    pub hv: f64,
    pub rhv: f64,
    pub front_size: usize,
}

/// Runs NSGA-II for every `(p_c, p_m, seed)` and writes `sweep.csv`. HV is
/// taken in a box enclosing all runs; RHV against their merged front.
pub fn cmd_sweep(args: &SweepArgs) -> Result<Vec<SweepRow>> {
    let sc = load_scenario(&args.scenario).with_context(|| format!("loading {}", args.scenario.display()))?;
    let ev = Evaluator::new(&sc, args.qos_mode)?;
    let mut runs = Vec::new();
    for &pc in &args.p_crossover {
        for &pm in &args.p_mutation {
            for seed in args.seeds.seeds() {
                let cfg = EaConfig {
                    population_size: args.population,
                    generations: args.generations,
                    p_crossover: pc,
                    p_mutation: pm,
                    qos_mode: args.qos_mode,
                    workers: args.workers,
                    seed,
                    ..EaConfig::default()
                };
                runs.push((pc, pm, seed, nsga2::run_with_evaluator(&ev, &cfg)?.front));
            }
        }
    }
    let reference = merge_nondominated(runs.iter().map(|r| &r.3), "reference");
    let bx = NormBox::enclosing(runs.iter().map(|r| &r.3), BOX_MARGIN)?;
    let rows = runs
        .iter()
        .map(|(pc, pm, seed, f)| {
            Ok(SweepRow {
                p_crossover: *pc,
                p_mutation: *pm,
                seed: *seed,
                hv: hypervolume(f, &bx)?,
                rhv: relative_hypervolume(f, &reference, &bx)?,
                front_size: f.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    fs::create_dir_all(&args.out_dir).with_context(|| format!("creating {}", args.out_dir.display()))?;
    fs::write(
        args.out_dir.join("sweep.csv"),
        rows_to_csv(&rows, &["p_crossover", "p_mutation", "seed", "hv", "rhv", "front_size"])?,
    )?;
    write_json(&args.out_dir.join("box.json"), &BoxFile::new(&bx, BOX_MARGIN))?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!(parse_seeds("1..30").unwrap().seeds().len(), 30);
        assert_eq!(parse_seeds("7").unwrap().seeds(), vec![7]);
        assert_eq!(parse_seeds("2..=3").unwrap().seeds(), vec![2, 3]);
        assert!(parse_seeds("5..1").is_err());
    }

    #[test]
    fn budget_grids() {
        let g = parse_grid("500:20000:500").unwrap();
        assert_eq!(g.budgets().len(), 40);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("5:1:1").is_err());
    }

    #[test]
    fn labels() {
        let l = parse_labeled("nsga2#3=out/f.csv").unwrap();
        assert_eq!((l.algorithm.as_str(), l.run), ("nsga2", 3));
        assert_eq!(parse_labeled("x.csv").unwrap().algorithm, "front");
    }

    #[test]
    fn zero_segments_is_usage_error() {
        let err = Cli::try_parse_from(["rsudp", "generate", "--segments", "0", "--out", "x.json"]).unwrap_err();
        assert!(err.use_stderr());
    }
}
