use std::path::PathBuf;

use clap::{Args, ValueEnum};
use lcycle::constructions::codegree_floor;
use lcycle::extremal::{run_pipeline, PipelineOutcome};
use lcycle::paths::validate_cycle;
use lcycle::rng::derive_seed;
use lcycle::search::find_hamilton_ell_cycle;
use lcycle::tiling::TilingOutcome;
use lcycle::{KGraph, SearchOutcome};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::generate::{build, uses_seed, Family, Params};
use crate::report::{emit, emit_json, versioned, Stopwatch};
use crate::{exit, CliResult, Failure, SearchFlags};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Exact search finds no Hamilton l-cycle.
    NoHamilton,
    /// Exact search finds a Hamilton l-cycle.
    HasHamilton,
    /// The pipeline alone (no exact fallback) returns a cycle.
    PipelineFindsCycle,
    /// Minimum codegree is at least n/(2(k-l)), rounded up.
    CodegreeAtThreshold,
    /// Tiling leaves at most beta n vertices uncovered.
    TilingVariant,
    /// Tiling falls back to an extremal certificate.
    CertificateVariant,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::NoHamilton => "no-hamilton",
            Check::HasHamilton => "has-hamilton",
            Check::PipelineFindsCycle => "pipeline-finds-cycle",
            Check::CodegreeAtThreshold => "codegree-at-threshold",
            Check::TilingVariant => "tiling-variant",
            Check::CertificateVariant => "certificate-variant",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

fn default_trials() -> usize {
    1
}

fn default_add_remove() -> usize {
    3
}

fn default_gamma() -> f64 {
    0.1
}

fn default_beta() -> f64 {
    0.25
}

/// A construction and the parameter values to sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub name: Family,
    pub k: Vec<usize>,
    #[serde(default)]
    pub l: Vec<usize>,
    pub n: Vec<usize>,
    #[serde(default)]
    pub b: Vec<usize>,
    #[serde(default = "default_add_remove")]
    pub add: usize,
    #[serde(default = "default_add_remove")]
    pub remove: usize,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub p: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: TableFormat,
}

/// A sweep: every parameter combination, `trials` times each.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub family: FamilySpec,
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Trial `i` uses seed `derive_seed(seed, i)`.
    #[serde(default)]
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Uncovered fraction allowed by the tiling checks.
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_output")]
    pub output: OutputSpec,
}

fn default_output() -> OutputSpec {
    OutputSpec {
        path: None,
        format: TableFormat::Csv,
    }
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    /// JSON sweep description; replaces the family and sweep flags.
    #[arg(long, conflicts_with_all = ["family", "k", "l", "n", "b", "check"])]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Comma-separated values.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub l: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub b: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub add: usize,
    #[arg(long, default_value_t = 3)]
    pub remove: usize,
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Named checks, comma-separated or repeated.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub check: Vec<Check>,
    #[arg(long, default_value_t = 0.25)]
    pub beta: f64,
    #[arg(long, value_enum)]
    pub format: Option<TableFormat>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchFlags,
}

impl ExperimentArgs {
    fn to_spec(&self) -> CliResult<ExperimentSpec> {
        let mut spec = match &self.spec {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                serde_json::from_str::<ExperimentSpec>(&text)
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
            }
            None => ExperimentSpec {
                family: FamilySpec {
                    name: self
                        .family
                        .ok_or_else(|| Failure::input("--family or --spec is required"))?,
                    k: self.k.clone(),
                    l: self.l.clone(),
                    n: self.n.clone(),
                    b: self.b.clone(),
                    add: self.add,
                    remove: self.remove,
                    gamma: self.gamma,
                    p: self.p,
                },
                trials: self.trials,
                seed: self.seed,
                checks: self.check.clone(),
                beta: self.beta,
                output: default_output(),
            },
        };
        if let Some(f) = self.format {
            spec.output.format = f;
        }
        if self.output.is_some() {
            spec.output.path = self.output.clone();
        }
        Ok(spec)
    }
}

/// One parameter combination and trial.
#[derive(Clone, Debug)]
struct Task {
    index: usize,
    params: Params,
    seed: u64,
}

fn expand(spec: &ExperimentSpec) -> CliResult<Vec<Task>> {
    let f = &spec.family;
    let needs_l = matches!(f.name, Family::H0 | Family::Ideal | Family::Perturbed)
        || spec.checks.iter().any(|c| {
            matches!(
                c,
                Check::NoHamilton | Check::HasHamilton | Check::PipelineFindsCycle | Check::CodegreeAtThreshold
            )
        });
    let needs_b = f.name == Family::Ystar
        || spec
            .checks
            .iter()
            .any(|c| matches!(c, Check::TilingVariant | Check::CertificateVariant));
    let mut empty = Vec::new();
    for (name, list, needed) in [
        ("k", &f.k, true),
        ("n", &f.n, true),
        ("l", &f.l, needs_l),
        ("b", &f.b, needs_b),
    ] {
        if needed && list.is_empty() {
            empty.push(name);
        }
    }
    if !empty.is_empty() {
        return Err(Failure::input(format!("empty range for {}", empty.join(", "))));
    }
    if spec.trials == 0 {
        return Err(Failure::input("trials must be at least 1"));
    }
    if spec.checks.is_empty() {
        return Err(Failure::input("no checks given"));
    }
    let opt = |v: &Vec<usize>| -> Vec<Option<usize>> {
        if v.is_empty() {
            vec![None]
        } else {
            v.iter().copied().map(Some).collect()
        }
    };
    let mut tasks = Vec::new();
    for &k in &f.k {
        for l in opt(&f.l) {
            for &n in &f.n {
                for b in opt(&f.b) {
                    for _ in 0..spec.trials {
                        let index = tasks.len();
                        tasks.push(Task {
                            index,
                            params: Params {
                                k: Some(k),
                                l,
                                n: Some(n),
                                b,
                                add: f.add,
                                remove: f.remove,
                                gamma: f.gamma,
                                p: f.p,
                            },
                            seed: derive_seed(spec.seed, index as u64),
                        });
                    }
                }
            }
        }
    }
    Ok(tasks)
}

#[derive(Clone, Debug, Serialize)]
struct Row {
    trial: usize,
    family: &'static str,
    k: usize,
    l: Option<usize>,
    n: usize,
    b: Option<usize>,
    seed: Option<u64>,
    edges: Option<usize>,
    min_codegree: Option<usize>,
    /// `pass`, `fail`, `exhausted` or `error`.
    outcome: &'static str,
    checks: Vec<(&'static str, &'static str)>,
    error: Option<String>,
    wall_ms: f64,
}

fn exact_check(h: &KGraph, l: usize, flags: &SearchFlags, want_cycle: bool) -> CliResult<&'static str> {
    Ok(match find_hamilton_ell_cycle(h, l, &flags.budget()?)? {
        SearchOutcome::Found(c) => {
            if !validate_cycle(h, &c)? {
                return Err(Failure::input("exact search returned an invalid cycle"));
            }
            if want_cycle {
                "pass"
            } else {
                "fail"
            }
        }
        SearchOutcome::NotFound if want_cycle => "fail",
        SearchOutcome::NotFound => "pass",
        SearchOutcome::Exhausted => "exhausted",
    })
}

fn run_check(
    check: Check,
    h: &KGraph,
    t: &Task,
    spec: &ExperimentSpec,
    flags: &SearchFlags,
) -> CliResult<&'static str> {
    let l = || {
        t.params
            .l
            .ok_or_else(|| Failure::input(format!("{} needs l", check.name())))
    };
    let b = || {
        t.params
            .b
            .ok_or_else(|| Failure::input(format!("{} needs b", check.name())))
    };
    let pass = |ok: bool| if ok { "pass" } else { "fail" };
    match check {
        Check::NoHamilton => exact_check(h, l()?, flags, false),
        Check::HasHamilton => exact_check(h, l()?, flags, true),
        Check::PipelineFindsCycle => {
            let config = flags.solver_config()?.with_fallback(false);
            let run = run_pipeline(h, l()?, &config, &flags.budget()?)?;
            Ok(match run.outcome {
                PipelineOutcome::Cycle { cycle, .. } => pass(validate_cycle(h, &cycle)?),
                _ => "fail",
            })
        }
        Check::CodegreeAtThreshold => Ok(pass(h.min_codegree() >= codegree_floor(h.k(), l()?, h.n()))),
        Check::TilingVariant | Check::CertificateVariant => {
            let out = crate::solve::tile(h, b()?, spec.beta, spec.family.gamma)?;
            let tiled = matches!(out, TilingOutcome::Tiling { .. });
            Ok(pass(tiled == (check == Check::TilingVariant)))
        }
    }
}

fn run_task(t: &Task, spec: &ExperimentSpec, flags: &SearchFlags) -> Row {
    let clock = Stopwatch::start(flags.deterministic);
    let family = spec.family.name;
    let mut row = Row {
        trial: t.index,
        family: family.name(),
        k: t.params.k.unwrap_or(0),
        l: t.params.l,
        n: t.params.n.unwrap_or(0),
        b: t.params.b,
        seed: uses_seed(family).then_some(t.seed),
        edges: None,
        min_codegree: None,
        outcome: "pass",
        checks: Vec::new(),
        error: None,
        wall_ms: 0.0,
    };
    let h = match build(family, &t.params, t.seed) {
        Ok((h, _)) => h,
        Err(e) => {
            row.outcome = "error";
            row.error = Some(e.message);
            row.checks = spec.checks.iter().map(|c| (c.name(), "error")).collect();
            row.wall_ms = clock.ms();
            return row;
        }
    };
    row.edges = Some(h.edge_count());
    row.min_codegree = Some(h.min_codegree());
    for &c in &spec.checks {
        let result = match run_check(c, &h, t, spec, flags) {
            Ok(r) => r,
            Err(e) => {
                row.error.get_or_insert(e.message);
                "error"
            }
        };
        row.checks.push((c.name(), result));
    }
    row.outcome = row
        .checks
        .iter()
        .map(|&(_, r)| r)
        .max_by_key(|r| rank(r))
        .unwrap_or("pass");
    row.wall_ms = clock.ms();
    row
}

/// Severity order of check results: pass, exhausted, fail, error.
fn rank(result: &str) -> usize {
    match result {
        "error" => 3,
        "fail" => 2,
        "exhausted" => 1,
        _ => 0,
    }
}

fn csv_bytes(spec: &ExperimentSpec, rows: &[Row]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = [
        "trial",
        "family",
        "k",
        "l",
        "n",
        "b",
        "seed",
        "edges",
        "min_codegree",
        "outcome",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend(spec.checks.iter().map(|c| c.name().to_string()));
    header.extend(["error", "wall_ms", "schema_version", "library_version"].map(String::from));
    let csv_err = |e: csv::Error| Failure::input(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    let opt = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
    for r in rows {
        let mut rec = vec![
            r.trial.to_string(),
            r.family.to_string(),
            r.k.to_string(),
            opt(r.l),
            r.n.to_string(),
            opt(r.b),
            r.seed.map_or(String::new(), |s| s.to_string()),
            opt(r.edges),
            opt(r.min_codegree),
            r.outcome.to_string(),
        ];
        rec.extend(r.checks.iter().map(|&(_, v)| v.to_string()));
        rec.push(r.error.clone().unwrap_or_default());
        rec.push(format!("{}", r.wall_ms));
        rec.push(lcycle::SCHEMA_VERSION.to_string());
        rec.push(lcycle::LIBRARY_VERSION.to_string());
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Failure::input(e.to_string()))
}

pub fn run(a: &ExperimentArgs) -> CliResult<u8> {
    let spec = a.to_spec()?;
    let tasks = expand(&spec)?;
    // validate the config once so a bad file is an input error, not a row error
    a.search.solver_config()?;
    let rows: Vec<Row> = if a.search.deterministic {
        tasks.iter().map(|t| run_task(t, &spec, &a.search)).collect()
    } else {
        tasks.par_iter().map(|t| run_task(t, &spec, &a.search)).collect()
    };
    let path = spec.output.path.as_deref();
    match spec.output.format {
        TableFormat::Csv => emit(path, &csv_bytes(&spec, &rows)?)?,
        TableFormat::Json => {
            let rows_json: Vec<_> = rows
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("rows serialize");
                    let checks: serde_json::Map<String, serde_json::Value> =
                        r.checks.iter().map(|&(c, x)| (c.to_string(), json!(x))).collect();
                    v["checks"] = serde_json::Value::Object(checks);
                    v
                })
                .collect();
            emit_json(path, &versioned(json!({ "spec": spec, "rows": rows_json })))?
        }
    }
    let worst = rows.iter().map(|r| rank(r.outcome)).max().unwrap_or(0);
    Ok([exit::OK, exit::EXHAUSTED, exit::CHECK_FAILED, exit::INPUT][worst])
}
