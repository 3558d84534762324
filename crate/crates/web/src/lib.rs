//! Browser bindings. Every entry point takes and returns JSON strings.

use lcycle::constructions::{
    build_h0, build_ideal_extremal, build_threshold_extremal, codegree_floor, perturb_extremal, ExtremalInstance,
};
use lcycle::extremal::{run_pipeline, PipelineOutcome, SolverConfig};
use lcycle::io::{from_json, to_json, InstanceMeta};
use lcycle::tiling::{tile_or_certify, TilingParams};
use lcycle::{Error, KGraph, Result, SearchBudget};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `n` the page accepts; keeps exact fallback searches short.
pub const MAX_N: usize = 24;

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::InvalidArgument(format!("the demo is limited to n <= {MAX_N}")));
    }
    Ok(())
}

fn read(instance: &str) -> Result<KGraph> {
    let (g, _) = from_json(instance)?;
    check_n(g.n())?;
    Ok(g)
}

/// `family` is `h0`, `ideal` or `perturbed`; the last one perturbs the
/// ideal (or, for odd `n/(k-l)`, the threshold) instance.
pub fn generate(family: &str, k: usize, l: usize, n: usize, seed: u64, add: usize, remove: usize) -> Result<Value> {
    check_n(n)?;
    let base = |k, l, n| -> Result<ExtremalInstance> {
        if l < k && n % (2 * (k - l)) == 0 {
            build_ideal_extremal(k, l, n)
        } else {
            build_threshold_extremal(k, l, n)
        }
    };
    let inst = match family {
        "h0" => build_h0(k, l, n)?,
        "ideal" => build_ideal_extremal(k, l, n)?,
        "perturbed" => perturb_extremal(&base(k, l, n)?, seed, add, remove)?.instance,
        other => return Err(Error::InvalidArgument(format!("unknown family `{other}`"))),
    };
    let g = &inst.graph;
    let meta = InstanceMeta::new(
        family,
        json!({ "k": k, "l": l, "n": n }),
        (family == "perturbed").then_some(seed),
    );
    let file: Value = serde_json::from_str(&to_json(g, Some(meta))?)?;
    Ok(json!({
        "instance": file,
        "a": inst.partition.a,
        "b": inst.partition.b,
        "edges": g.edge_count(),
        "min_codegree": g.min_codegree(),
        "floor": codegree_floor(k, l, n),
    }))
}

/// Runs the extremal pipeline; `nodes` caps every exact search.
pub fn solve(instance: &str, l: usize, fallback: bool, nodes: u64) -> Result<Value> {
    let g = read(instance)?;
    let config = SolverConfig {
        search_nodes: nodes,
        ..SolverConfig::default()
    }
    .with_fallback(fallback);
    let run = run_pipeline(&g, l, &config, &SearchBudget::nodes(nodes).with_parallel(false))?;
    let (found, method) = match &run.outcome {
        PipelineOutcome::Cycle { method, .. } => (json!(true), json!(method.as_str())),
        PipelineOutcome::Exhausted => (json!("exhausted"), Value::Null),
        _ => (json!(false), Value::Null),
    };
    let failure = match &run.outcome {
        PipelineOutcome::Failed { stage, reason } => json!({ "stage": stage, "reason": reason }),
        _ => Value::Null,
    };
    Ok(json!({
        "found": found,
        "method": method,
        "cycle": run.outcome.cycle().map(|c| c.order().to_vec()),
        "failure": failure,
        "trace": run.trace,
    }))
}

pub fn tile(instance: &str, b: usize, beta: f64, gamma: f64) -> Result<Value> {
    let g = read(instance)?;
    Ok(serde_json::to_value(tile_or_certify(
        &g,
        &TilingParams::new(b, beta, gamma),
    )?)?)
}

fn to_js(r: Result<Value>) -> std::result::Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = generate)]
pub fn generate_js(
    family: &str,
    k: usize,
    l: usize,
    n: usize,
    seed: u32,
    add: usize,
    remove: usize,
) -> std::result::Result<String, JsError> {
    to_js(generate(family, k, l, n, seed.into(), add, remove))
}

#[wasm_bindgen(js_name = solve)]
pub fn solve_js(instance: &str, l: usize, fallback: bool, nodes: u32) -> std::result::Result<String, JsError> {
    to_js(solve(instance, l, fallback, nodes.into()))
}

#[wasm_bindgen(js_name = tile)]
pub fn tile_js(instance: &str, b: usize, beta: f64, gamma: f64) -> std::result::Result<String, JsError> {
    to_js(tile(instance, b, beta, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance(v: &Value) -> String {
        v["instance"].to_string()
    }

    #[test]
    fn ideal_instance_is_solved_by_the_pipeline() {
        let g = generate("ideal", 3, 1, 12, 0, 0, 0).unwrap();
        assert!(g["min_codegree"].as_u64().unwrap() >= g["floor"].as_u64().unwrap());
        let r = solve(&instance(&g), 1, false, 100_000).unwrap();
        assert_eq!(r["found"], true);
        assert_eq!(r["method"], "pipeline");
        assert_eq!(r["cycle"].as_array().unwrap().len(), 12);
    }

    #[test]
    fn space_barrier_has_no_cycle() {
        let g = generate("h0", 3, 1, 8, 0, 0, 0).unwrap();
        assert_eq!(g["edges"], 21);
        let r = solve(&instance(&g), 1, true, 1_000_000).unwrap();
        assert_eq!(r["found"], false);
        let r = solve(&instance(&g), 1, true, 1).unwrap();
        assert_eq!(r["found"], "exhausted");
    }

    #[test]
    fn perturbed_generation_depends_on_seed() {
        let a = generate("perturbed", 3, 1, 12, 1, 3, 3).unwrap();
        assert_eq!(a, generate("perturbed", 3, 1, 12, 1, 3, 3).unwrap());
        assert_eq!(a["instance"]["meta"]["seed"], 1);
    }

    #[test]
    fn tiling_reports_a_variant() {
        let g = generate("h0", 3, 1, 20, 0, 0, 0).unwrap();
        let t = tile(&instance(&g), 2, 0.05, 0.1).unwrap();
        assert_eq!(t["variant"], "certificate");
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(generate("ideal", 3, 1, 30, 0, 0, 0).is_err());
        assert!(generate("bogus", 3, 1, 8, 0, 0, 0).is_err());
        assert!(solve("not json", 1, true, 10).is_err());
    }
}
