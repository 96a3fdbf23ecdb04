//! Per-run statistics and corpus aggregation.

use serde::{Deserialize, Serialize};

use crate::merge::{MergeReason, PipelineResult};

/// Summary numbers for one pipeline run. `total_merges` always equals
/// `planarity_merges + concurrency_merges` for a standard run, and the
/// final concurrency of a completed run is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    /// Number of sets in the input system.
    pub n_sets: usize,
    /// Number of nonempty zones of the input system.
    pub n_zones: usize,
    pub planarity_merges: usize,
    pub concurrency_merges: usize,
    pub total_merges: usize,
    pub final_concurrency: usize,
}

/// Collection means over a corpus of runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub mean_sets: f64,
    pub mean_zones: f64,
    pub mean_planarity: f64,
    pub mean_concurrency_merges: f64,
    pub mean_total: f64,
}

/// Extracts the run statistics from a pipeline result.
pub fn run_stats(result: &PipelineResult) -> RunStats {
    RunStats {
        n_sets: result.initial.active().len(),
        n_zones: result.initial.nonempty_zone_count(),
        planarity_merges: result.log.count(MergeReason::Planarity),
        concurrency_merges: result.log.count(MergeReason::Concurrency),
        total_merges: result.log.steps.len(),
        final_concurrency: result.final_graph.concurrency(),
    }
}

/// Means over a set of runs. Panics on an empty slice.
pub fn aggregate(stats: &[RunStats]) -> Aggregates {
    assert!(!stats.is_empty(), "aggregation needs at least one run");
    let n = stats.len() as f64;
    let sum = |f: fn(&RunStats) -> usize| stats.iter().map(f).sum::<usize>() as f64 / n;
    Aggregates {
        mean_sets: sum(|s| s.n_sets),
        mean_zones: sum(|s| s.n_zones),
        mean_planarity: sum(|s| s.planarity_merges),
        mean_concurrency_merges: sum(|s| s.concurrency_merges),
        mean_total: sum(|s| s.total_merges),
    }
}

/// Renders a CSV table of named runs followed by one aggregate mean row.
pub fn to_csv(rows: &[(String, RunStats)]) -> String {
    let mut out = String::from(
        "name,n_sets,n_zones,planarity_merges,concurrency_merges,total_merges,final_concurrency\n",
    );
    for (name, s) in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            name,
            s.n_sets,
            s.n_zones,
            s.planarity_merges,
            s.concurrency_merges,
            s.total_merges,
            s.final_concurrency
        ));
    }
    if !rows.is_empty() {
        let stats: Vec<RunStats> = rows.iter().map(|(_, s)| s.clone()).collect();
        let a = aggregate(&stats);
        let mean_conc =
            stats.iter().map(|s| s.final_concurrency).sum::<usize>() as f64 / stats.len() as f64;
        out.push_str(&format!(
            "mean,{:.2},{:.2},{:.2},{:.2},{:.2},{:.2}\n",
            a.mean_sets,
            a.mean_zones,
            a.mean_planarity,
            a.mean_concurrency_merges,
            a.mean_total,
            mean_conc
        ));
    }
    out
}
