//! The merge pipeline: repair planarity, then remove concurrency.
//!
//! Both phases repeatedly merge a pair of sets and keep a full log. The
//! planarity phase restricts candidate pairs to the sets mentioned by an
//! edge-minimal nonplanar witness; the concurrency phase considers every
//! active pair. In both cases the chosen pair minimizes the concurrency of
//! the merged graph, with ties broken by the lexicographically smallest
//! (kept, absorbed) pair, which makes the whole pipeline deterministic.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dual_graph::{ConnectEdge, DualGraph, Edge};
use crate::planarity;
use crate::set_system::{SetSystem, ZoneLabel};

/// Why a merge was performed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MergeReason {
    /// The dual graph was nonplanar.
    Planarity,
    /// Edges still carried more than one label.
    Concurrency,
    /// Removing a set's zones disconnected the rest of the system.
    Genus,
}

impl std::fmt::Display for MergeReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MergeReason::Planarity => "planarity",
            MergeReason::Concurrency => "concurrency",
            MergeReason::Genus => "genus",
        };
        write!(f, "{s}")
    }
}

/// One logged merge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeStep {
    pub reason: MergeReason,
    /// The surviving set label (lexicographically smaller).
    pub kept: String,
    /// The set label rewritten away.
    pub absorbed: String,
    pub concurrency_before: usize,
    pub concurrency_after: usize,
    /// Total zone count (outer zone included) before the merge.
    pub zones_before: usize,
    pub zones_after: usize,
}

/// Full record of one pipeline run: the connectivity-repair edges added
/// during construction and every merge in order. Merge steps are grouped
/// by phase: planarity first, then concurrency; a genus pass may append
/// further groups of the same shape after a genus step.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeLog {
    pub connects: Vec<ConnectEdge>,
    pub steps: Vec<MergeStep>,
}

impl MergeLog {
    /// Number of merges performed for `reason`.
    pub fn count(&self, reason: MergeReason) -> usize {
        self.steps.iter().filter(|s| s.reason == reason).count()
    }
}

/// Everything produced by a pipeline run.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    /// The dual graph as constructed, before any merge.
    pub initial: DualGraph,
    /// Snapshot after the planarity phase.
    pub planar: DualGraph,
    /// The simplified graph: planar and concurrency-free.
    pub final_graph: DualGraph,
    pub log: MergeLog,
}

/// Tests planarity of a dual graph.
pub fn graph_is_planar(g: &DualGraph) -> bool {
    let (verts, edges) = g.index_graph();
    planarity::is_planar(verts.len(), &edges)
}

/// Extracts an edge-minimal nonplanar subgraph by deleting edges in
/// canonical order; returns its vertices and edges in zone terms.
pub fn kuratowski_witness(g: &DualGraph) -> (Vec<ZoneLabel>, Vec<Edge>) {
    let (verts, edges) = g.index_graph();
    let core = planarity::minimal_nonplanar(verts.len(), &edges);
    let mut vset: BTreeSet<ZoneLabel> = BTreeSet::new();
    let mut out_edges = Vec::new();
    for (a, b) in core {
        vset.insert(verts[a].clone());
        vset.insert(verts[b].clone());
        out_edges.push((verts[a].clone(), verts[b].clone()));
    }
    (vset.into_iter().collect(), out_edges)
}

/// Merges the candidate pair whose merged graph has the least concurrency,
/// breaking ties by the smallest (kept, absorbed) pair. Candidates must be
/// given with each pair already ordered.
fn best_merge(g: &DualGraph, candidates: &[(String, String)]) -> (String, String, DualGraph) {
    let mut best: Option<(usize, &(String, String), DualGraph)> = None;
    for pair in candidates {
        let merged = g.merge_sets(&pair.0, &pair.1);
        let conc = merged.concurrency();
        let better = match &best {
            None => true,
            Some((bc, bp, _)) => (conc, pair) < (*bc, bp),
        };
        if better {
            best = Some((conc, pair, merged));
        }
    }
    let (_, pair, merged) = best.expect("at least one candidate pair");
    (pair.0.clone(), pair.1.clone(), merged)
}

fn ordered_pairs(names: &[String]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for i in 0..names.len() {
        for j in (i + 1)..names.len() {
            out.push((names[i].clone(), names[j].clone()));
        }
    }
    out
}

fn log_step(
    log: &mut MergeLog,
    reason: MergeReason,
    kept: &str,
    absorbed: &str,
    before: &DualGraph,
    after: &DualGraph,
) {
    log.steps.push(MergeStep {
        reason,
        kept: kept.to_string(),
        absorbed: absorbed.to_string(),
        concurrency_before: before.concurrency(),
        concurrency_after: after.concurrency(),
        zones_before: before.zone_count(),
        zones_after: after.zone_count(),
    });
}

/// Merges sets until the dual graph is planar. Candidates are the pairs of
/// active sets mentioned by the current nonplanar witness.
pub fn nonplanar_to_planar(mut g: DualGraph, log: &mut MergeLog) -> DualGraph {
    while !graph_is_planar(&g) {
        let (witness_verts, _) = kuratowski_witness(&g);
        let mut mentioned: BTreeSet<String> = BTreeSet::new();
        for label in &witness_verts {
            for name in label.iter() {
                if g.active().contains(name) {
                    mentioned.insert(name.clone());
                }
            }
        }
        let names: Vec<String> = mentioned.into_iter().collect();
        let (kept, absorbed, merged) = best_merge(&g, &ordered_pairs(&names));
        log_step(log, MergeReason::Planarity, &kept, &absorbed, &g, &merged);
        g = merged;
    }
    g
}

/// Merges sets until no edge carries more than one label, then re-runs the
/// planarity phase in case a merge reintroduced a crossing obstruction.
pub fn concurrency_removal(mut g: DualGraph, log: &mut MergeLog) -> DualGraph {
    while g.concurrency() > 0 {
        let names: Vec<String> = g.active().iter().cloned().collect();
        let (kept, absorbed, merged) = best_merge(&g, &ordered_pairs(&names));
        log_step(log, MergeReason::Concurrency, &kept, &absorbed, &g, &merged);
        g = merged;
    }
    if !graph_is_planar(&g) {
        g = nonplanar_to_planar(g, log);
    }
    g
}

/// Runs the full pipeline on a set system: build the dual graph, make it
/// planar, then remove concurrency.
pub fn euler_merge(system: &SetSystem) -> PipelineResult {
    let (initial, connects) = DualGraph::from_system(system);
    let mut log = MergeLog {
        connects,
        steps: Vec::new(),
    };
    let planar = nonplanar_to_planar(initial.clone(), &mut log);
    let final_graph = concurrency_removal(planar.clone(), &mut log);
    PipelineResult {
        initial,
        planar,
        final_graph,
        log,
    }
}
