//! `Y_{k,b}`-tilings and the tiling-or-extremal dichotomy.
//!
//! `Y_{k,b}` is the k-graph made of two edges sharing exactly `b` vertices.
//! [`tile_or_certify`] either returns a tiling leaving at most `βn` vertices
//! uncovered or a set `B` of size `⌊(2k-b-1)n/(2k-b)⌋` together with the
//! sets it was derived from, so a caller can check that `B` is sparse.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::KGraph;
use crate::search::{all_y_copies, max_y_tiling, SearchBudget, SearchOutcome};
use crate::vset::{binom, VSet};

/// Two edges `shared ∪ privates[0]` and `shared ∪ privates[1]` meeting
/// exactly in `shared`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YCopy {
    pub shared: VSet,
    pub privates: [VSet; 2],
}

impl YCopy {
    pub fn from_edges(e: VSet, f: VSet) -> YCopy {
        YCopy {
            shared: e & f,
            privates: [e - f, f - e],
        }
    }

    pub fn edges(&self) -> [VSet; 2] {
        [self.shared | self.privates[0], self.shared | self.privates[1]]
    }

    pub fn vertices(&self) -> VSet {
        self.shared | self.privates[0] | self.privates[1]
    }

    /// True when both edges are in `h` and meet in exactly `b` vertices.
    pub fn is_valid_in(&self, h: &KGraph, b: usize) -> bool {
        let [e, f] = self.edges();
        self.shared.len() == b
            && self.privates[0].len() == h.k() - b
            && self.privates[0].is_disjoint(self.privates[1])
            && h.contains(e)
            && h.contains(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub copies: Vec<YCopy>,
    pub covered: VSet,
    pub uncovered_count: usize,
}

impl Tiling {
    /// Tiling of an `n`-vertex graph; the copies must be vertex-disjoint.
    pub fn new(n: usize, copies: Vec<YCopy>) -> Result<Tiling> {
        let mut covered = VSet::EMPTY;
        for c in &copies {
            if !c.vertices().is_disjoint(covered) {
                return invalid("tiles overlap");
            }
            covered = covered | c.vertices();
        }
        if !covered.fits(n) {
            return invalid("tile outside the vertex set");
        }
        Ok(Tiling {
            uncovered_count: n - covered.len(),
            copies,
            covered,
        })
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn uncovered(&self, n: usize) -> VSet {
        VSet::full(n) - self.covered
    }
}

/// The sparse-set side of the dichotomy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalCertificate {
    /// The certificate set, of size `⌊(2k-b-1)n/(2k-b)⌋`.
    pub b_set: VSet,
    pub e_b: usize,
    /// High-degree covered vertices.
    pub c_set: VSet,
    /// Non-`C` vertices of tiles meeting `C`, plus the uncovered vertices.
    pub a_set: VSet,
    pub e_a: usize,
    /// Whether `H[A]` has no `Y_{k,b}` copy.
    pub a_y_free: bool,
    /// Whether `e(B) < 6γn^k`.
    pub sparse: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum TilingOutcome {
    Tiling {
        tiling: Tiling,
        /// No copy of `Y_{k,b}` exists at all (including `n < 2k-b`).
        degenerate: bool,
    },
    Certificate {
        tiling: Tiling,
        certificate: ExtremalCertificate,
    },
}

impl TilingOutcome {
    pub fn tiling(&self) -> &Tiling {
        match self {
            TilingOutcome::Tiling { tiling, .. } | TilingOutcome::Certificate { tiling, .. } => tiling,
        }
    }

    pub fn is_tiling(&self) -> bool {
        matches!(self, TilingOutcome::Tiling { .. })
    }

    pub fn certificate(&self) -> Option<&ExtremalCertificate> {
        match self {
            TilingOutcome::Certificate { certificate, .. } => Some(certificate),
            _ => None,
        }
    }
}

/// Parameters of [`tile_or_certify`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingParams {
    pub b: usize,
    pub beta: f64,
    pub gamma: f64,
    /// Degree into the uncovered set that puts a covered vertex in `C`;
    /// `None` means `max(1, (2k-b)^2 C(|U|, k-2))`.
    pub c_threshold: Option<f64>,
    /// Exchange attempts when `H[A]` turns out to contain a copy.
    pub max_retries: usize,
    /// Node budget of each local exact re-tiling.
    pub local_nodes: u64,
}

impl TilingParams {
    pub fn new(b: usize, beta: f64, gamma: f64) -> TilingParams {
        TilingParams {
            b,
            beta,
            gamma,
            c_threshold: None,
            max_retries: 8,
            local_nodes: 200_000,
        }
    }
}

pub fn default_c_threshold(k: usize, b: usize, uncovered: usize) -> f64 {
    let w = (2 * k - b) as f64;
    (w * w * binom(uncovered, k.saturating_sub(2)) as f64).max(1.0)
}

/// A copy of `Y_{k,b}` inside `avail`, or `None`.
///
/// The `b`-subsets of edges are scanned in lexicographic order; for each one
/// the first pair (in mask order) of edges through it with disjoint
/// remainders is returned.
pub fn find_y_in(h: &KGraph, avail: VSet, b: usize) -> Option<YCopy> {
    if b >= h.k() {
        return None;
    }
    let mut by_core: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
    for e in h.edge_sets().filter(|e| e.is_subset(avail)) {
        for s in e.subsets(b) {
            by_core.entry(s.to_vec()).or_default().push((e - s).mask());
        }
    }
    for (core, rests) in &by_core {
        for (i, &r) in rests.iter().enumerate() {
            if let Some(&q) = rests[i + 1..].iter().find(|&&q| q & r == 0) {
                let s = VSet::from_vertices(core.iter().copied());
                return Some(YCopy {
                    shared: s,
                    privates: [VSet(r), VSet(q)],
                });
            }
        }
    }
    None
}

/// Covered vertices `v` with `deg(v, U) >= threshold`, `U` the uncovered set.
pub fn compute_c_set(h: &KGraph, tiling: &Tiling, b: usize, threshold: Option<f64>) -> Result<VSet> {
    let u = tiling.uncovered(h.n());
    if u.is_empty() || u.len() < h.k().saturating_sub(2) {
        return invalid(format!(
            "C is undefined: {} uncovered vertices, need at least max(1, k-2)",
            u.len()
        ));
    }
    let t = threshold.unwrap_or_else(|| default_c_threshold(h.k(), b, u.len()));
    Ok(tiling
        .covered
        .iter()
        .filter(|&v| h.deg_into(VSet::singleton(v), u) as f64 >= t)
        .collect())
}

fn fill(h: &KGraph, b: usize, copies: &mut Vec<YCopy>) {
    let mut covered = copies.iter().fold(VSet::EMPTY, |a, c| a | c.vertices());
    while let Some(y) = find_y_in(h, h.vertices() - covered, b) {
        covered = covered | y.vertices();
        copies.push(y);
    }
}

/// Two disjoint copies inside `U ∪ V(tile)`, the first one meeting the tile.
fn two_for_one(h: &KGraph, b: usize, u: VSet, tile: &YCopy) -> Option<(YCopy, YCopy)> {
    let region = u | tile.vertices();
    for y1 in all_y_copies(h, b, region) {
        if y1.vertices().is_disjoint(tile.vertices()) {
            continue;
        }
        if let Some(y2) = find_y_in(h, region - y1.vertices(), b) {
            return Some((y1, y2));
        }
    }
    None
}

/// Greedy fill followed by exchanges: a tile holding a vertex of `C` is
/// replaced by two copies inside the tile plus the uncovered set whenever
/// possible. Tiles are scanned in insertion order and the first improving
/// exchange is applied, then the process repeats.
fn augment(h: &KGraph, b: usize, mut copies: Vec<YCopy>, threshold: Option<f64>) -> Result<Tiling> {
    loop {
        fill(h, b, &mut copies);
        let tiling = Tiling::new(h.n(), copies.clone())?;
        let u = tiling.uncovered(h.n());
        if u.is_empty() || u.len() < h.k().saturating_sub(2) {
            return Ok(tiling);
        }
        let c = compute_c_set(h, &tiling, b, threshold)?;
        let swap = (0..copies.len())
            .filter(|&i| !copies[i].vertices().is_disjoint(c))
            .find_map(|i| two_for_one(h, b, u, &copies[i]).map(|p| (i, p)));
        match swap {
            Some((i, (y1, y2))) => {
                copies[i] = y1;
                copies.push(y2);
            }
            None => return Ok(tiling),
        }
    }
}

/// Maximal `Y_{k,b}`-tiling with the default `C` threshold.
pub fn greedy_y_tiling(h: &KGraph, b: usize) -> Result<Tiling> {
    greedy_y_tiling_with(h, b, None)
}

/// Maximal `Y_{k,b}`-tiling; `threshold` as in [`TilingParams::c_threshold`].
pub fn greedy_y_tiling_with(h: &KGraph, b: usize, threshold: Option<f64>) -> Result<Tiling> {
    if b >= h.k() {
        return invalid(format!("need b < k, got b = {b}, k = {}", h.k()));
    }
    let t = augment(h, b, Vec::new(), threshold)?;
    debug_assert!(find_y_in(h, t.uncovered(h.n()), b).is_none());
    Ok(t)
}

/// Replace the tiles meeting `y0` by a maximum tiling of their vertices plus
/// the uncovered set, if that is larger.
fn exchange_around(
    h: &KGraph,
    b: usize,
    tiling: &Tiling,
    y0: &YCopy,
    budget: &SearchBudget,
) -> Result<Option<Vec<YCopy>>> {
    let u = tiling.uncovered(h.n());
    let (touched, kept): (Vec<&YCopy>, Vec<&YCopy>) = tiling
        .copies
        .iter()
        .partition(|c| !c.vertices().is_disjoint(y0.vertices()));
    let region = touched.iter().fold(u, |a, c| a | c.vertices());
    let local = match max_y_tiling(&h.induced(region), b, budget)? {
        SearchOutcome::Found(t) => t,
        _ => return Ok(None),
    };
    if local.len() <= touched.len() {
        return Ok(None);
    }
    let mut copies: Vec<YCopy> = kept.into_iter().cloned().collect();
    copies.extend(local.copies);
    Ok(Some(copies))
}

/// Tiling covering all but `βn` vertices, or an extremal certificate.
pub fn tile_or_certify(h: &KGraph, params: &TilingParams) -> Result<TilingOutcome> {
    let (n, k, b) = (h.n(), h.k(), params.b);
    if b >= k {
        return invalid(format!("need b < k, got b = {b}, k = {k}"));
    }
    if params.beta.is_nan() || params.beta < 0.0 || params.gamma.is_nan() || params.gamma <= 0.0 {
        return invalid("need beta >= 0 and gamma > 0");
    }
    let width = 2 * k - b;
    if n < width || find_y_in(h, h.vertices(), b).is_none() {
        return Ok(TilingOutcome::Tiling {
            tiling: Tiling::new(n, Vec::new())?,
            degenerate: true,
        });
    }
    let limit = params.beta * n as f64;
    let budget = SearchBudget::nodes(params.local_nodes);
    let mut tiling = greedy_y_tiling_with(h, b, params.c_threshold)?;
    let mut diagnostics = Vec::new();
    let mut retries = 0;
    loop {
        if tiling.uncovered_count as f64 <= limit {
            return Ok(TilingOutcome::Tiling {
                tiling,
                degenerate: false,
            });
        }
        let u = tiling.uncovered(n);
        let c = if u.len() < k.saturating_sub(2) {
            diagnostics.push(format!("only {} uncovered vertices; C taken empty", u.len()));
            VSet::EMPTY
        } else {
            compute_c_set(h, &tiling, b, params.c_threshold)?
        };
        let a = tiling
            .copies
            .iter()
            .filter(|t| !t.vertices().is_disjoint(c))
            .fold(u, |acc, t| acc | (t.vertices() - c));
        let Some(y0) = find_y_in(h, a, b) else {
            return certify(h, params, tiling, c, a, true, diagnostics);
        };
        if retries >= params.max_retries {
            diagnostics.push(format!("H[A] still contains a copy after {retries} exchanges"));
            return certify(h, params, tiling, c, a, false, diagnostics);
        }
        retries += 1;
        match exchange_around(h, b, &tiling, &y0, &budget)? {
            Some(copies) => tiling = augment(h, b, copies, params.c_threshold)?,
            None => {
                diagnostics.push("a copy inside A admits no improving exchange".to_string());
                return certify(h, params, tiling, c, a, false, diagnostics);
            }
        }
    }
}

fn certify(
    h: &KGraph,
    params: &TilingParams,
    tiling: Tiling,
    c: VSet,
    a: VSet,
    a_y_free: bool,
    mut diagnostics: Vec<String>,
) -> Result<TilingOutcome> {
    let (n, k, b) = (h.n(), h.k(), params.b);
    let width = 2 * k - b;
    let target = (width - 1) * n / width;
    let pool = h.vertices() - c;
    if pool.len() < target {
        return Err(Error::Pipeline {
            stage: "certificate",
            reason: format!("|V \\ C| = {} is below the certificate size {target}", pool.len()),
        });
    }
    let e_a = h.edges_within(a);
    if a_y_free && e_a as u64 >= binom(n, k - 1) {
        diagnostics.push(format!("e(A) = {e_a} is not below C(n, k-1)"));
    }
    // A first, then the rest of V \ C; each step adds the vertex creating the
    // fewest new edges, lowest index on ties
    let mut set = VSet::EMPTY;
    for source in [a & pool, pool - a] {
        let mut left = source;
        while set.len() < target && !left.is_empty() {
            let v = left
                .iter()
                .min_by_key(|&v| (h.deg_into(VSet::singleton(v), set), v))
                .expect("non-empty");
            set.insert(v);
            left.remove(v);
        }
    }
    let e_b = h.edges_within(set);
    let sparse = (e_b as f64) < 6.0 * params.gamma * (n as f64).powi(k as i32);
    Ok(TilingOutcome::Certificate {
        tiling,
        certificate: ExtremalCertificate {
            b_set: set,
            e_b,
            c_set: c,
            a_set: a,
            e_a,
            a_y_free,
            sparse,
            diagnostics,
        },
    })
}
