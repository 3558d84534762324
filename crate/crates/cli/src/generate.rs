use std::path::PathBuf;

use clap::{Args, ValueEnum};
use lcycle::constructions::{
    build_h0, build_ideal_extremal, build_threshold_extremal, build_y_free_star, perturb_extremal,
    random_above_threshold, random_k_graph,
};
use lcycle::io::{to_binary, to_json, InstanceMeta};
use lcycle::KGraph;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::report::emit;
use crate::{exit, CliResult, Failure};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Space barrier: all k-sets meeting a small side A.
    H0,
    /// All k-sets meeting A with |A| = n/(2(k-l)); needs n/(k-l) even.
    Ideal,
    /// Ideal instance (threshold instance for odd n/(k-l)) with B-edges
    /// added and A-edges removed.
    Perturbed,
    /// All k-sets containing {0, .., b}; free of Y_{k,b}.
    Ystar,
    /// Random k-graph; with --l, resampled until above the codegree floor.
    Random,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::H0 => "h0",
            Family::Ideal => "ideal",
            Family::Perturbed => "perturbed",
            Family::Ystar => "ystar",
            Family::Random => "random",
        }
    }
}

/// Parameters of one instance.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Params {
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub n: Option<usize>,
    pub b: Option<usize>,
    pub add: usize,
    pub remove: usize,
    pub gamma: f64,
    pub p: Option<f64>,
}

fn need(v: Option<usize>, flag: &str, family: Family) -> CliResult<usize> {
    v.ok_or_else(|| Failure::input(format!("`{}` needs --{flag}", family.name())))
}

/// Builds one instance; the returned JSON records the parameters used.
pub fn build(family: Family, p: &Params, seed: u64) -> CliResult<(KGraph, serde_json::Value)> {
    let n = need(p.n, "n", family)?;
    let k = need(p.k, "k", family)?;
    let (graph, params) = match family {
        Family::H0 | Family::Ideal => {
            let l = need(p.l, "l", family)?;
            let inst = if family == Family::H0 {
                build_h0(k, l, n)?
            } else {
                build_ideal_extremal(k, l, n)?
            };
            (inst.graph, json!({ "k": k, "l": l, "n": n }))
        }
        Family::Perturbed => {
            let l = need(p.l, "l", family)?;
            let base = if l < k && n % (2 * (k - l)) == 0 {
                build_ideal_extremal(k, l, n)?
            } else {
                build_threshold_extremal(k, l, n)?
            };
            let out = perturb_extremal(&base, seed, p.add, p.remove)?;
            let params = json!({
                "k": k, "l": l, "n": n, "add": p.add, "remove": p.remove,
                "added": out.added, "removed": out.removed, "restored": out.restored,
            });
            (out.instance.graph, params)
        }
        Family::Ystar => {
            let b = need(p.b, "b", family)?;
            (build_y_free_star(n, k, b)?, json!({ "k": k, "b": b, "n": n }))
        }
        Family::Random => match p.l {
            Some(l) => {
                let r = random_above_threshold(k, l, n, p.gamma, p.p, seed)?;
                let params = json!({
                    "k": k, "l": l, "n": n, "gamma": p.gamma, "p": r.p,
                    "attempts": r.attempts, "floor": r.floor,
                });
                (r.graph, params)
            }
            None => {
                let prob =
                    p.p.ok_or_else(|| Failure::input("`random` needs --p, or --l for a codegree floor"))?;
                (random_k_graph(n, k, prob, seed)?, json!({ "k": k, "n": n, "p": prob }))
            }
        },
    };
    Ok((graph, params))
}

pub fn uses_seed(family: Family) -> bool {
    matches!(family, Family::Perturbed | Family::Random)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum InstanceFormat {
    Json,
    Binary,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    pub family: Family,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edges added inside B (perturbed).
    #[arg(long, default_value_t = 3)]
    pub add: usize,
    /// Edges meeting A removed (perturbed).
    #[arg(long, default_value_t = 3)]
    pub remove: usize,
    /// Codegree margin above n/(2(k-l)) (random with --l).
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    /// Edge probability (random).
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_enum, default_value_t = InstanceFormat::Json)]
    pub format: InstanceFormat,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn run(a: &GenerateArgs) -> CliResult<u8> {
    let params = Params {
        k: a.k,
        l: a.l,
        n: a.n,
        b: a.b,
        add: a.add,
        remove: a.remove,
        gamma: a.gamma,
        p: a.p,
    };
    let (graph, used) = build(a.family, &params, a.seed)?;
    let seed = uses_seed(a.family).then_some(a.seed);
    match a.format {
        InstanceFormat::Json => {
            let meta = InstanceMeta::new(a.family.name(), used, seed);
            let mut text = to_json(&graph, Some(meta))?;
            text.push('\n');
            emit(a.output.as_deref(), text.as_bytes())?;
        }
        InstanceFormat::Binary => emit(a.output.as_deref(), &to_binary(&graph))?,
    }
    log::info!("{} with {} edges", a.family.name(), graph.edge_count());
    Ok(exit::OK)
}
