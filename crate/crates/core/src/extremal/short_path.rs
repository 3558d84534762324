use serde_json::{json, Value};

use crate::constructions::ExtremalPartition;
use crate::error::{Error, Result};
use crate::extremal::connect::{b_edge_paths, connect, cover_vertex, extend};
use crate::extremal::{Block, ClassifiedVertices, SolverConfig, TypicalityTable};
use crate::graph::KGraph;
use crate::paths::EllPath;
use crate::search::{path_windows, OrderProblem, SearchBudget, SearchOutcome};
use crate::vset::VSet;

/// The short path `Q` and what is left for the long path: `A₁ = A' \ V(Q)`
/// and `B₁ = (B' \ V(Q)) ∪ L₀ ∪ L₁`, where `L₀`, `L₁` are the first and
/// last ℓ vertices of `Q`.
#[derive(Clone, Debug)]
pub struct AssemblyState {
    pub q: EllPath,
    pub a1: VSet,
    pub b1: VSet,
    pub l0: VSet,
    pub l1: VSet,
    /// Blocks `L_i R_i S_i x_i R'_i` of the long path once assembled.
    pub blocks: Vec<Block>,
    /// 1 when `A ∩ B'` is non-empty, otherwise 2.
    pub case: u8,
    /// `(2k-2ℓ-1)|A' \ V(P)| - |B' \ V(P)|` before extensions.
    pub s: isize,
    pub extensions: usize,
    pub b_edges: usize,
    /// `Q` came from exact search rather than the constructive steps.
    pub by_search: bool,
    pub diagnostics: Vec<String>,
}

impl AssemblyState {
    /// State for a short path `q`; panics if the balance
    /// `|B₁| = (2k-2ℓ-1)|A₁| + ℓ` fails.
    fn from_path(q: EllPath, classified: &ClassifiedVertices) -> AssemblyState {
        let (k, l) = (q.k(), q.l());
        let vq = q.vertex_set();
        let (l0, l1) = (q.start(), q.end());
        let a1 = classified.a_prime - vq;
        let b1 = (classified.b_prime - vq) | l0 | l1;
        assert_eq!(
            b1.len(),
            (2 * k - 2 * l - 1) * a1.len() + l,
            "short path breaks the balance |B1| = (2k-2l-1)|A1| + l"
        );
        AssemblyState {
            q,
            a1,
            b1,
            l0,
            l1,
            blocks: Vec::new(),
            case: 2,
            s: l as isize,
            extensions: 0,
            b_edges: 0,
            by_search: false,
            diagnostics: Vec::new(),
        }
    }

    pub fn summary(&self) -> Value {
        json!({
            "q": self.q.order(),
            "a1": self.a1.to_vec(),
            "b1": self.b1.to_vec(),
            "l0": self.l0.to_vec(),
            "l1": self.l1.to_vec(),
            "case": self.case,
            "s": self.s,
            "extensions": self.extensions,
            "b_edges": self.b_edges,
            "by_search": self.by_search,
        })
    }
}

fn pipeline(reason: String) -> Error {
    Error::Pipeline {
        stage: "short-path",
        reason,
    }
}

/// Short ℓ-path `Q` covering `V₀`, with typical ends in `B'` and
/// `|B₁| = (2k-2ℓ-1)|A₁| + ℓ`.
///
/// The pieces are `2q` disjoint `B'`-edges when `q = |A ∩ B'| > 0`, one
/// length-two path per vertex of `V₀`, or, when there is nothing to cover,
/// one length-two path through the lowest usable vertex of `A'`. Pieces are
/// joined by [`connect`] and the end is pushed by [`extend`] until the
/// balance holds. With `config.fallback` a failed step is replaced by an
/// exact search for a path with the same properties.
pub fn build_short_path(
    h: &KGraph,
    partition: &ExtremalPartition,
    classified: &ClassifiedVertices,
    table: &TypicalityTable,
    config: &SolverConfig,
) -> Result<AssemblyState> {
    match constructive(h, partition, classified, table, config) {
        Ok(state) => Ok(state),
        Err(reason) if config.fallback => {
            let budget = SearchBudget::nodes(config.search_nodes);
            match short_path_by_search(h, classified, table, &budget) {
                Some(q) => {
                    let mut state = AssemblyState::from_path(q, classified);
                    state.case = case_of(partition, classified);
                    state.by_search = true;
                    state.diagnostics.push(format!("{reason}; used exact search"));
                    Ok(state)
                }
                None => Err(pipeline(format!("{reason}; exact search found no short path"))),
            }
        }
        Err(reason) => Err(pipeline(reason)),
    }
}

fn case_of(partition: &ExtremalPartition, classified: &ClassifiedVertices) -> u8 {
    if (partition.a & classified.b_prime).is_empty() {
        2
    } else {
        1
    }
}

fn constructive(
    h: &KGraph,
    partition: &ExtremalPartition,
    cv: &ClassifiedVertices,
    table: &TypicalityTable,
    config: &SolverConfig,
) -> std::result::Result<AssemblyState, String> {
    let (n, k, l) = (h.n(), h.k(), table.l());
    let q = (partition.a & cv.b_prime).len();
    let mut diagnostics = Vec::new();
    let mut pieces: Vec<EllPath> = Vec::new();
    let mut used = VSet::EMPTY;

    if q > 0 {
        if !partition.b.is_subset(cv.b_prime) {
            diagnostics.push("A ∩ B' is non-empty but B is not inside B'".to_string());
        }
        let edges = b_edge_paths(h, cv.b_prime, table, 2 * q)
            .ok_or_else(|| format!("fewer than {} disjoint B'-edges with typical ends", 2 * q))?;
        for p in edges {
            used = used | p.vertex_set();
            pieces.push(p);
        }
    }
    for x in cv.v0 {
        let p = cover_vertex(h, x, cv.b_prime - used, table)
            .ok_or_else(|| format!("no length-two path with typical ends covers {x} in V0"))?;
        used = used | p.vertex_set();
        pieces.push(p);
    }
    if pieces.is_empty() {
        let p = cv
            .a_prime
            .iter()
            .find_map(|v| cover_vertex(h, v, cv.b_prime, table))
            .ok_or("no vertex of A' lies in a length-two path with typical ends")?;
        used = p.vertex_set();
        pieces.push(p);
    }

    let (wide, narrow) = ((2 * k - 2 * l - 1) as isize, (2 * k - 3 * l - 1) as isize);
    let step = (k - l) as isize;
    let predicted = |pieces: usize, used: VSet| -> isize {
        let c = pieces as isize - 1;
        wide * ((cv.a_prime - used).len() as isize - c) - ((cv.b_prime - used).len() as isize - c * narrow)
    };
    let mut s = predicted(pieces.len(), used);
    let mut b_edges = 2 * q;
    if s < l as isize {
        let need = l as isize - s;
        if need % step != 0 {
            return Err(format!("s = {s} is not l mod (k-l)"));
        }
        let extra = (need / step) as usize;
        let more = b_edge_paths(h, cv.b_prime - used, table, extra)
            .ok_or_else(|| format!("s = {s} < l and fewer than {extra} spare B'-edges"))?;
        diagnostics.push(format!("s = {s} < l: added {extra} B'-edges"));
        for p in more {
            used = used | p.vertex_set();
            pieces.push(p);
        }
        b_edges += extra;
        s = predicted(pieces.len(), used);
    }
    if (s - l as isize) % step != 0 {
        return Err(format!("s = {s} is not l mod (k-l)"));
    }

    let limit = n as f64 / (4.0 * (k - l) as f64);
    let mut path = pieces[0].clone();
    for next in &pieces[1..] {
        if used.len() as f64 > limit {
            diagnostics.push(format!(
                "connecting with {} used vertices, above n/(4(k-l)) = {limit:.2}",
                used.len()
            ));
        }
        let c = connect(h, path.end(), next.start(), used, cv, table).ok_or_else(|| {
            format!(
                "no connector from {:?} to {:?}",
                path.end().to_vec(),
                next.start().to_vec()
            )
        })?;
        used = used | c.vertex_set();
        path = path
            .concat(&c)
            .and_then(|p| p.concat(next))
            .map_err(|e| e.to_string())?;
    }
    debug_assert_eq!(
        s,
        wide * (cv.a_prime - used).len() as isize - (cv.b_prime - used).len() as isize
    );

    let extensions = ((s - l as isize) / step) as usize;
    for _ in 0..extensions {
        let c = extend(h, path.end(), used, cv, table)
            .ok_or_else(|| format!("no extension of the end {:?}", path.end().to_vec()))?;
        let a = (c & cv.a_prime).first().expect("extension holds an A' vertex");
        let mut order = path.order().to_vec();
        order.push(a);
        order.extend(c.without(a).iter());
        path = EllPath::new(k, l, order).map_err(|e| e.to_string())?;
        used = used | c;
    }

    for end in [path.start(), path.end()] {
        if !table.is_typical(end) {
            return Err(format!("end {:?} is not a typical set of B'", end.to_vec()));
        }
    }
    let bound = 10.0 * k as f64 * config.eps2 * partition.b.len() as f64;
    if path.len() as f64 > bound {
        diagnostics.push(format!("|V(Q)| = {} exceeds 10k eps2 |B| = {bound:.2}", path.len()));
    }
    let mut state = AssemblyState::from_path(path, cv);
    state.case = case_of(partition, cv);
    state.s = s;
    state.extensions = extensions;
    state.b_edges = b_edges;
    state.diagnostics = diagnostics;
    Ok(state)
}

/// Exact search for a short path with the same contract, trying 1, 2, ...
/// edges.
fn short_path_by_search(
    h: &KGraph,
    cv: &ClassifiedVertices,
    table: &TypicalityTable,
    budget: &SearchBudget,
) -> Option<EllPath> {
    let (n, k, l) = (h.n(), h.k(), table.l());
    let wide = 2 * k - 2 * l - 1;
    let mut t = k;
    while t <= n {
        let allowed: Vec<VSet> = (0..t)
            .map(|p| if p < l || p >= t - l { cv.b_prime } else { h.vertices() })
            .collect();
        let problem = OrderProblem::new(h, path_windows(t, k, l), allowed).ok()?;
        let mut found = None;
        let out = problem.for_each_solution(budget, |order| {
            let set = VSet::from_vertices(order.iter().copied());
            let start = VSet::from_vertices(order[..l].iter().copied());
            let end = VSet::from_vertices(order[t - l..].iter().copied());
            if !cv.v0.is_subset(set) || !table.is_typical(start) || !table.is_typical(end) {
                return false;
            }
            let a1 = (cv.a_prime - set).len();
            let b1 = (cv.b_prime - set).len() + 2 * l;
            if a1 == 0 || b1 != wide * a1 + l {
                return false;
            }
            found = Some(order.to_vec());
            true
        });
        if let SearchOutcome::Found(()) = out {
            return EllPath::new(k, l, found?).ok();
        }
        t += k - l;
    }
    None
}
