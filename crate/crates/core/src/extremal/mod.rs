//! The extremal-case pipeline.
//!
//! Given a k-graph whose `(k-1)`-sets all have codegree at least
//! `n / (2(k-ℓ))` and which is close to the space barrier, the pipeline
//!
//! 1. finds a sparse side `B` by local search ([`find_extremal_partition`]),
//! 2. sorts vertices into `A'`, `B'` and the leftover `V₀`
//!    ([`classify_vertices`]) and marks typical ℓ-sets of `B'`
//!    ([`classify_ell_sets`]),
//! 3. builds a short ℓ-path `Q` that absorbs `V₀` and leaves
//!    `|B₁| = (2k-2ℓ-1)|A₁| + ℓ` ([`build_short_path`]),
//! 4. threads the rest into an ℓ-path between the ends of `Q`
//!    ([`assemble_hamilton_path`]),
//!
//! and closes the two paths into a Hamilton ℓ-cycle ([`solve_extremal`]).
//! Every stage is deterministic: vertices are tried lowest first and sets
//! in lexicographic order.

mod assemble;
mod classify;
mod connect;
mod partition;
mod short_path;
mod solve;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use assemble::{assemble_hamilton_path, Block};
pub use classify::{classify_ell_sets, classify_vertices, ClassifiedVertices, TypicalityTable};
pub use connect::{connect, cover_vertex, extend};
pub use partition::find_extremal_partition;
pub use short_path::{build_short_path, AssemblyState};
pub use solve::{
    run_pipeline, solve_extremal, ExtremalSolution, PipelineOutcome, PipelineRun, PipelineTrace, SolveMethod,
    StageRecord,
};

/// Thresholds and switches of the pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Vertex and ℓ-set classification threshold.
    pub eps1: f64,
    /// Tolerance for the size checks reported after classification.
    pub eps2: f64,
    /// Slack of the long-path assembly.
    pub rho: f64,
    /// Largest `e(B) / n^k` accepted for the sparse side.
    pub delta: f64,
    /// Use exact search when a pipeline stage fails.
    pub fallback: bool,
    /// Node limit for each exact search run inside the pipeline.
    pub search_nodes: u64,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        let eps1 = 0.3;
        SolverConfig {
            eps1,
            eps2: 2.0 * eps1 * eps1,
            rho: 0.3,
            delta: 0.01,
            fallback: true,
            search_nodes: 5_000_000,
        }
    }
}

impl SolverConfig {
    pub fn with_fallback(mut self, on: bool) -> SolverConfig {
        self.fallback = on;
        self
    }

    /// Checks `0 < eps2 < eps1 < 1/2`, `0 < rho < 1` and `delta >= 0`.
    /// Below one half the `A'` and `B'` thresholds cannot both hold.
    pub fn validate(&self) -> Result<()> {
        let finite = [self.eps1, self.eps2, self.rho, self.delta]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return invalid("solver thresholds must be finite");
        }
        if !(0.0 < self.eps2 && self.eps2 < self.eps1 && self.eps1 < 0.5) {
            return invalid(format!(
                "need 0 < eps2 < eps1 < 0.5, got eps1 = {}, eps2 = {}",
                self.eps1, self.eps2
            ));
        }
        if !(0.0 < self.rho && self.rho < 1.0) {
            return invalid(format!("need 0 < rho < 1, got {}", self.rho));
        }
        if self.delta < 0.0 {
            return invalid(format!("need delta >= 0, got {}", self.delta));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let c = SolverConfig::default();
        c.validate().unwrap();
        assert!((c.eps2 - 2.0 * c.eps1 * c.eps1).abs() < 1e-12);
    }

    #[test]
    fn bad_configs_are_rejected() {
        let mut c = SolverConfig::default();
        c.eps2 = c.eps1;
        assert!(c.validate().is_err());
        let c = SolverConfig {
            eps1: 0.6,
            ..SolverConfig::default()
        };
        assert!(c.validate().is_err());
        let c = SolverConfig {
            rho: 1.0,
            ..SolverConfig::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn config_json_round_trip() {
        let c: SolverConfig = serde_json::from_str(r#"{"eps1": 0.2, "eps2": 0.08}"#).unwrap();
        assert_eq!(c.eps1, 0.2);
        assert_eq!(c.rho, SolverConfig::default().rho);
        assert!(serde_json::from_str::<SolverConfig>(r#"{"eps": 1}"#).is_err());
    }
}
