use std::path::PathBuf;

use clap::Args;
use lcycle::extremal::{run_pipeline, PipelineOutcome};
use lcycle::io::InstanceMeta;
use lcycle::paths::validate_cycle;
use lcycle::search::find_hamilton_ell_cycle;
use lcycle::tiling::{tile_or_certify, TilingParams};
use lcycle::{EllCycle, KGraph, SearchOutcome};
use serde_json::{json, Value};

use crate::report::{emit_json, read_instance, versioned, Stopwatch};
use crate::{exit, CliResult, Failure, Method, SearchFlags};

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Instance file (JSON or binary).
    pub instance: PathBuf,
    /// Overlap l; taken from the instance metadata when absent.
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    #[command(flatten)]
    pub search: SearchFlags,
    /// Report file; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TileArgs {
    pub instance: PathBuf,
    /// Y_{k,b} overlap size.
    #[arg(long)]
    pub b: usize,
    /// Allowed uncovered fraction.
    #[arg(long, default_value_t = 0.25)]
    pub beta: f64,
    /// Sparseness parameter of the certificate.
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    #[arg(long)]
    pub deterministic: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn meta_l(meta: &Option<InstanceMeta>) -> Option<usize> {
    meta.as_ref()?.params.get("l")?.as_u64().map(|l| l as usize)
}

/// The `found`, `cycle`, `method` and `stage_trace` fields of a report and
/// the exit code they imply.
pub struct SolveResult {
    pub fields: Value,
    pub code: u8,
}

fn checked(h: &KGraph, c: &EllCycle) -> CliResult<Vec<usize>> {
    if !validate_cycle(h, c)? {
        return Err(Failure {
            code: exit::CHECK_FAILED,
            message: "solver returned an invalid cycle".into(),
        });
    }
    Ok(c.order().to_vec())
}

pub fn solve(h: &KGraph, l: usize, method: Method, flags: &SearchFlags) -> CliResult<SolveResult> {
    let budget = flags.budget()?;
    let k = h.k();
    let exact_only = method == Method::Exact || (method == Method::Auto && (l == 0 || 2 * l >= k));
    if exact_only {
        let (found, cycle, code) = match find_hamilton_ell_cycle(h, l, &budget)? {
            SearchOutcome::Found(c) => (json!(true), json!(checked(h, &c)?), exit::OK),
            SearchOutcome::NotFound => (json!(false), Value::Null, exit::OK),
            SearchOutcome::Exhausted => (json!("exhausted"), Value::Null, exit::EXHAUSTED),
        };
        let fields = json!({ "found": found, "cycle": cycle, "method": "exact", "stage_trace": null });
        return Ok(SolveResult { fields, code });
    }
    let config = flags.solver_config()?.with_fallback(method == Method::Auto);
    let mut run = run_pipeline(h, l, &config, &budget)?;
    if flags.deterministic {
        run.trace.zero_timings();
    }
    let trace = serde_json::to_value(&run.trace)?;
    let result = match &run.outcome {
        PipelineOutcome::Cycle { cycle, method } => SolveResult {
            fields: json!({ "found": true, "cycle": checked(h, cycle)?, "method": method.as_str() }),
            code: exit::OK,
        },
        PipelineOutcome::NoCycle => SolveResult {
            fields: json!({ "found": false, "cycle": null, "method": "exact" }),
            code: exit::OK,
        },
        PipelineOutcome::Exhausted => SolveResult {
            fields: json!({ "found": "exhausted", "cycle": null, "method": "exact" }),
            code: exit::EXHAUSTED,
        },
        PipelineOutcome::Failed { stage, reason } => SolveResult {
            fields: json!({
                "found": false, "cycle": null, "method": "pipeline",
                "failure": { "stage": stage, "reason": reason },
            }),
            code: exit::CHECK_FAILED,
        },
    };
    let mut fields = result.fields;
    fields["stage_trace"] = trace;
    Ok(SolveResult { fields, ..result })
}

pub fn run_solve(a: &SolveArgs) -> CliResult<u8> {
    let clock = Stopwatch::start(a.search.deterministic);
    let (h, meta) = read_instance(&a.instance)?;
    let l =
        a.l.or_else(|| meta_l(&meta))
            .ok_or_else(|| Failure::input("--l is required when the instance metadata has no l"))?;
    let r = solve(&h, l, a.method, &a.search)?;
    let mut report = versioned(json!({ "n": h.n(), "k": h.k(), "l": l }));
    if let (Value::Object(map), Value::Object(extra)) = (&mut report, r.fields) {
        map.extend(extra);
    }
    report["wall_ms"] = json!(clock.ms());
    emit_json(a.output.as_deref(), &report)?;
    Ok(r.code)
}

pub fn tile(h: &KGraph, b: usize, beta: f64, gamma: f64) -> CliResult<lcycle::tiling::TilingOutcome> {
    Ok(tile_or_certify(h, &TilingParams::new(b, beta, gamma))?)
}

pub fn run_tile(a: &TileArgs) -> CliResult<u8> {
    let clock = Stopwatch::start(a.deterministic);
    let (h, _) = read_instance(&a.instance)?;
    let outcome = tile(&h, a.b, a.beta, a.gamma)?;
    let report = versioned(json!({
        "n": h.n(), "k": h.k(), "b": a.b, "beta": a.beta, "gamma": a.gamma,
        "uncovered": outcome.tiling().uncovered_count,
        "outcome": outcome,
        "wall_ms": clock.ms(),
    }));
    emit_json(a.output.as_deref(), &report)?;
    Ok(exit::OK)
}
