use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructions::codegree_floor;
use crate::error::{invalid, Error, Result};
use crate::extremal::{
    assemble_hamilton_path, build_short_path, classify_ell_sets, classify_vertices, find_extremal_partition,
    SolverConfig,
};
use crate::graph::KGraph;
use crate::paths::{validate_cycle, EllCycle};
use crate::search::{find_hamilton_ell_cycle, SearchBudget, SearchOutcome};

/// How a cycle was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    /// Every stage was constructive.
    Pipeline,
    /// Constructive overall, but some stage used exact search inside.
    PipelineWithFallback,
    /// The pipeline failed and exact search on the whole graph took over.
    Exact,
}

impl SolveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::Pipeline => "pipeline",
            SolveMethod::PipelineWithFallback => "pipeline-with-fallback",
            SolveMethod::Exact => "exact",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PipelineOutcome {
    Cycle {
        cycle: EllCycle,
        method: SolveMethod,
    },
    /// Exact search proved there is no Hamilton ℓ-cycle.
    NoCycle,
    /// A stage failed and fallback was off.
    Failed {
        stage: String,
        reason: String,
    },
    /// The exact search ran out of budget.
    Exhausted,
}

impl PipelineOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            PipelineOutcome::Cycle { .. } => "cycle",
            PipelineOutcome::NoCycle => "no-cycle",
            PipelineOutcome::Failed { .. } => "failed",
            PipelineOutcome::Exhausted => "exhausted",
        }
    }

    pub fn cycle(&self) -> Option<&EllCycle> {
        match self {
            PipelineOutcome::Cycle { cycle, .. } => Some(cycle),
            _ => None,
        }
    }
}

/// One stage of a run: what it produced and what looked off.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: String,
    /// `ok`, `fallback`, `failed` or `skipped`.
    pub status: String,
    pub wall_ms: f64,
    pub output: Value,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub schema_version: u32,
    pub library_version: String,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub config: SolverConfig,
    pub stages: Vec<StageRecord>,
    pub outcome: String,
    pub method: Option<SolveMethod>,
}

impl PipelineTrace {
    /// Sets every timing to zero so traces of equal runs compare equal.
    pub fn zero_timings(&mut self) {
        for s in &mut self.stages {
            s.wall_ms = 0.0;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineRun {
    pub outcome: PipelineOutcome,
    pub trace: PipelineTrace,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalSolution {
    pub cycle: EllCycle,
    pub method: SolveMethod,
    pub trace: PipelineTrace,
}

struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Stopwatch {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn ms(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_secs_f64() * 1000.0
        }
        #[cfg(target_arch = "wasm32")]
        {
            0.0
        }
    }
}

struct Recorder {
    stages: Vec<StageRecord>,
}

impl Recorder {
    fn push(&mut self, stage: &str, status: &str, clock: Stopwatch, output: Value, diagnostics: Vec<String>) {
        self.stages.push(StageRecord {
            stage: stage.to_string(),
            status: status.to_string(),
            wall_ms: clock.ms(),
            output,
            diagnostics,
        });
    }
}

/// Runs the pipeline, recording every stage.
///
/// Errors only on invalid arguments; a failing stage is reported in the
/// outcome. With `config.fallback` a failure hands the whole graph to exact
/// search under `budget`.
pub fn run_pipeline(h: &KGraph, l: usize, config: &SolverConfig, budget: &SearchBudget) -> Result<PipelineRun> {
    config.validate()?;
    let (n, k) = (h.n(), h.k());
    if l == 0 || 2 * l >= k {
        return invalid(format!("the pipeline needs 1 <= l < k/2, got k = {k}, l = {l}"));
    }
    if n % (k - l) != 0 {
        return invalid(format!("k - l = {} does not divide n = {n}", k - l));
    }
    let mut rec = Recorder { stages: Vec::new() };
    let result = stages(h, l, config, &mut rec);
    let outcome = match result {
        Ok((cycle, method)) => PipelineOutcome::Cycle { cycle, method },
        Err((stage, reason)) if config.fallback => {
            let clock = Stopwatch::start();
            let found = find_hamilton_ell_cycle(h, l, budget)?;
            let (status, outcome) = match found {
                SearchOutcome::Found(cycle) => (
                    "ok",
                    PipelineOutcome::Cycle {
                        cycle,
                        method: SolveMethod::Exact,
                    },
                ),
                SearchOutcome::NotFound => ("ok", PipelineOutcome::NoCycle),
                SearchOutcome::Exhausted => ("failed", PipelineOutcome::Exhausted),
            };
            let output = json!({
                "result": outcome.tag(),
                "cycle": outcome.cycle().map(|c| c.order().to_vec()),
            });
            rec.push(
                "exact",
                status,
                clock,
                output,
                vec![format!("pipeline failed at {stage}: {reason}")],
            );
            outcome
        }
        Err((stage, reason)) => PipelineOutcome::Failed {
            stage: stage.to_string(),
            reason,
        },
    };
    let method = match &outcome {
        PipelineOutcome::Cycle { method, .. } => Some(*method),
        _ => None,
    };
    let trace = PipelineTrace {
        schema_version: crate::SCHEMA_VERSION,
        library_version: crate::LIBRARY_VERSION.to_string(),
        n,
        k,
        l,
        config: config.clone(),
        stages: rec.stages,
        outcome: outcome.tag().to_string(),
        method,
    };
    Ok(PipelineRun { outcome, trace })
}

type StageError = (&'static str, String);

fn stages(
    h: &KGraph,
    l: usize,
    config: &SolverConfig,
    rec: &mut Recorder,
) -> std::result::Result<(EllCycle, SolveMethod), StageError> {
    let (n, k) = (h.n(), h.k());

    let clock = Stopwatch::start();
    let floor = codegree_floor(k, l, n);
    let min = h.min_codegree();
    let mut diag = Vec::new();
    if min < floor {
        diag.push(format!(
            "minimum codegree {min} is below n/(2(k-l)) rounded up = {floor}"
        ));
    }
    rec.push(
        "precheck",
        "ok",
        clock,
        json!({ "min_codegree": min, "floor": floor }),
        diag,
    );

    let clock = Stopwatch::start();
    let Some(partition) = find_extremal_partition(h, l, config.delta) else {
        let reason = format!("no split with e(B) <= {} n^k", config.delta);
        rec.push("partition", "failed", clock, Value::Null, vec![reason.clone()]);
        return Err(("partition", reason));
    };
    rec.push(
        "partition",
        "ok",
        clock,
        json!({ "a": partition.a.to_vec(), "b": partition.b.to_vec(), "e_b": partition.e_b, "delta": partition.delta }),
        Vec::new(),
    );

    let clock = Stopwatch::start();
    let cv = classify_vertices(h, &partition, config);
    rec.push("classify-vertices", "ok", clock, cv.summary(), cv.diagnostics.clone());

    let clock = Stopwatch::start();
    let table = classify_ell_sets(h, l, &partition, &cv, config);
    rec.push(
        "classify-ell-sets",
        "ok",
        clock,
        table.summary(),
        table.diagnostics.clone(),
    );

    let clock = Stopwatch::start();
    let mut state = match build_short_path(h, &partition, &cv, &table, config) {
        Ok(s) => s,
        Err(e) => {
            let reason = reason_of(e);
            rec.push("short-path", "failed", clock, Value::Null, vec![reason.clone()]);
            return Err(("short-path", reason));
        }
    };
    let mut used_search = state.by_search;
    let status = if state.by_search { "fallback" } else { "ok" };
    rec.push("short-path", status, clock, state.summary(), state.diagnostics.clone());

    let clock = Stopwatch::start();
    let before = state.diagnostics.len();
    let path = match assemble_hamilton_path(h, &mut state, config) {
        Ok(p) => p,
        Err(e) => {
            let reason = reason_of(e);
            let mut diag = state.diagnostics[before..].to_vec();
            diag.push(reason.clone());
            rec.push("assemble", "failed", clock, Value::Null, diag);
            return Err(("assemble", reason));
        }
    };
    let by_search = state.blocks.is_empty();
    used_search |= by_search;
    rec.push(
        "assemble",
        if by_search { "fallback" } else { "ok" },
        clock,
        json!({ "path": path.order(), "blocks": state.blocks }),
        state.diagnostics[before..].to_vec(),
    );

    let clock = Stopwatch::start();
    let mut order = state.q.order().to_vec();
    let p = path.order();
    order.extend_from_slice(&p[l..p.len() - l]);
    let cycle = EllCycle::new(k, l, order).map_err(|e| ("close", e.to_string()))?;
    assert!(
        validate_cycle(h, &cycle).unwrap_or(false),
        "spliced cycle is not a Hamilton l-cycle"
    );
    assert_eq!(cycle.edge_count(), n / (k - l));
    rec.push("close", "ok", clock, json!({ "cycle": cycle.order() }), Vec::new());
    let method = if used_search {
        SolveMethod::PipelineWithFallback
    } else {
        SolveMethod::Pipeline
    };
    Ok((cycle, method))
}

fn reason_of(e: Error) -> String {
    match e {
        Error::Pipeline { reason, .. } => reason,
        other => other.to_string(),
    }
}

/// Hamilton ℓ-cycle of an extremal graph: the pipeline, then exact search
/// without a budget when `config.fallback` is set.
pub fn solve_extremal(h: &KGraph, l: usize, config: &SolverConfig) -> Result<ExtremalSolution> {
    let run = run_pipeline(h, l, config, &SearchBudget::unlimited())?;
    match run.outcome {
        PipelineOutcome::Cycle { cycle, method } => Ok(ExtremalSolution {
            cycle,
            method,
            trace: run.trace,
        }),
        PipelineOutcome::NoCycle => Err(Error::Pipeline {
            stage: "exact",
            reason: "the graph has no Hamilton l-cycle".into(),
        }),
        PipelineOutcome::Exhausted => Err(Error::Pipeline {
            stage: "exact",
            reason: "search budget exhausted".into(),
        }),
        PipelineOutcome::Failed { stage, reason } => Err(Error::Pipeline {
            stage: stage_name(&stage),
            reason,
        }),
    }
}

fn stage_name(s: &str) -> &'static str {
    ["partition", "short-path", "assemble", "close"]
        .into_iter()
        .find(|&t| t == s)
        .unwrap_or("pipeline")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_h0, build_ideal_extremal, build_threshold_extremal, perturb_extremal};

    fn strict() -> SolverConfig {
        SolverConfig::default().with_fallback(false)
    }

    #[test]
    fn ideal_instances_give_cycles() {
        for (k, l, n) in [(3, 1, 8), (3, 1, 12), (5, 2, 12), (4, 1, 12), (3, 1, 10)] {
            let inst = build_ideal_extremal(k, l, n)
                .or_else(|_| build_threshold_extremal(k, l, n))
                .unwrap();
            let sol = solve_extremal(&inst.graph, l, &strict()).unwrap();
            assert_eq!(sol.cycle.edge_count(), n / (k - l), "({k},{l},{n})");
            assert_eq!(sol.method, SolveMethod::Pipeline, "({k},{l},{n})");
        }
    }

    #[test]
    fn perturbed_instance_gives_cycle() {
        let base = build_ideal_extremal(3, 1, 12).unwrap();
        let inst = perturb_extremal(&base, 7, 2, 0).unwrap().instance;
        let sol = solve_extremal(&inst.graph, 1, &strict()).unwrap();
        assert!(validate_cycle(&inst.graph, &sol.cycle).unwrap());
    }

    #[test]
    fn space_barrier_has_no_cycle() {
        let inst = build_h0(3, 1, 8).unwrap();
        let run = run_pipeline(&inst.graph, 1, &SolverConfig::default(), &SearchBudget::unlimited()).unwrap();
        assert_eq!(run.outcome, PipelineOutcome::NoCycle);
        let run = run_pipeline(&inst.graph, 1, &strict(), &SearchBudget::unlimited()).unwrap();
        assert!(matches!(run.outcome, PipelineOutcome::Failed { .. }));
    }

    #[test]
    fn trace_lists_stages() {
        let inst = build_ideal_extremal(3, 1, 8).unwrap();
        let mut run = run_pipeline(&inst.graph, 1, &strict(), &SearchBudget::unlimited()).unwrap();
        let names: Vec<&str> = run.trace.stages.iter().map(|s| s.stage.as_str()).collect();
        assert_eq!(
            names,
            [
                "precheck",
                "partition",
                "classify-vertices",
                "classify-ell-sets",
                "short-path",
                "assemble",
                "close"
            ]
        );
        run.trace.zero_timings();
        let text = serde_json::to_string(&run.trace).unwrap();
        let back: PipelineTrace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, run.trace);
    }

    #[test]
    fn bad_arguments_are_errors() {
        let inst = build_ideal_extremal(3, 1, 8).unwrap();
        assert!(run_pipeline(&inst.graph, 2, &strict(), &SearchBudget::unlimited()).is_err());
        let h = KGraph::complete(9, 3).unwrap();
        assert!(run_pipeline(&h, 1, &strict(), &SearchBudget::unlimited()).is_err());
    }
}
