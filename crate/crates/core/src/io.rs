//! Instance file formats.
//!
//! JSON: `{"n": int, "k": int, "edges": [[v, ...], ...], "meta": {...}}` with
//! sorted 0-based vertex lists; `meta` is optional on input.
//!
//! Binary: `n`, `k` and the edge count as little-endian `u32`, followed by one
//! little-endian `u64` mask per edge in ascending mask order.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::KGraph;
use crate::vset::VSet;

/// Provenance block embedded in generated instance files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub generator: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub prng: Option<String>,
    pub schema_version: u32,
    pub library_version: String,
}

impl InstanceMeta {
    pub fn new(generator: &str, params: Value, seed: Option<u64>) -> InstanceMeta {
        InstanceMeta {
            generator: generator.to_string(),
            params,
            seed,
            prng: seed.map(|_| crate::rng::PRNG_NAME.to_string()),
            schema_version: crate::SCHEMA_VERSION,
            library_version: crate::LIBRARY_VERSION.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<InstanceMeta>,
}

impl InstanceFile {
    pub fn from_graph(g: &KGraph, meta: Option<InstanceMeta>) -> InstanceFile {
        InstanceFile {
            n: g.n(),
            k: g.k(),
            edges: g.edge_sets().map(VSet::to_vec).collect(),
            meta,
        }
    }

    pub fn to_graph(&self) -> Result<KGraph> {
        for e in &self.edges {
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Format(format!(
                    "edge {e:?} is not a strictly increasing vertex list"
                )));
            }
        }
        KGraph::from_vertex_lists(self.n, self.k, &self.edges).map_err(|e| Error::Format(e.to_string()))
    }
}

pub fn to_json(g: &KGraph, meta: Option<InstanceMeta>) -> Result<String> {
    Ok(serde_json::to_string(&InstanceFile::from_graph(g, meta))?)
}

pub fn from_json(s: &str) -> Result<(KGraph, Option<InstanceMeta>)> {
    let file: InstanceFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
    let g = file.to_graph()?;
    Ok((g, file.meta))
}

pub fn to_binary(g: &KGraph) -> Vec<u8> {
    let mut out = Vec::with_capacity(12 + 8 * g.edge_count());
    out.extend_from_slice(&(g.n() as u32).to_le_bytes());
    out.extend_from_slice(&(g.k() as u32).to_le_bytes());
    out.extend_from_slice(&(g.edge_count() as u32).to_le_bytes());
    for &e in g.edges() {
        out.extend_from_slice(&e.to_le_bytes());
    }
    out
}

pub fn from_binary(bytes: &[u8]) -> Result<KGraph> {
    let word = |i: usize| -> Result<u32> {
        bytes
            .get(4 * i..4 * i + 4)
            .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
            .ok_or_else(|| Error::Format("truncated header".into()))
    };
    let (n, k, m) = (word(0)? as usize, word(1)? as usize, word(2)? as usize);
    let body = &bytes[12..];
    if body.len() != 8 * m {
        return Err(Error::Format(format!(
            "expected {} bytes of edge data, found {}",
            8 * m,
            body.len()
        )));
    }
    let masks: Vec<u64> = body
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let g = KGraph::new(n, k, masks.iter().copied()).map_err(|e| Error::Format(e.to_string()))?;
    if g.edge_count() != m {
        return Err(Error::Format("duplicate edges in binary instance".into()));
    }
    Ok(g)
}
