//! Separation analysis and the optional genus-removal pass.
//!
//! A planar, concurrency-free dual graph can still fail to yield a diagram
//! in the plane: removing one set's zones may disconnect the remaining
//! zones, meaning the set's curve would have to enclose material that does
//! not belong to it. The separation score measures how far the system is
//! from being free of such pockets, and the removal pass merges sets until
//! the score reaches zero, re-running the planarity and concurrency phases
//! after every merge.

use std::collections::BTreeMap;

use crate::dual_graph::DualGraph;
use crate::merge::{self, MergeLog, MergeReason, MergeStep};

/// Computes the total separation score and a per-set breakdown (sets with
/// score zero are omitted).
///
/// For each active set, take the components of the subgraph induced by the
/// zones not covered by it. If there is more than one, form the complete
/// graph on those components, weighted by the smallest symmetric-difference
/// distance across each pair, and charge `weight - 1` for every edge of a
/// minimum spanning tree: the number of extra boundary crossings some other
/// curve would need to reach the cut-off material.
pub fn genus_separation(g: &DualGraph) -> (usize, BTreeMap<String, usize>) {
    let mut total = 0;
    let mut detail = BTreeMap::new();
    for s in g.active() {
        let comps = g.components_without(s);
        if comps.len() <= 1 {
            continue;
        }
        // Pairwise component distances: cheapest label change across the gap.
        let k = comps.len();
        let mut dist = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in (i + 1)..k {
                let w = comps[i]
                    .iter()
                    .flat_map(|zi| comps[j].iter().map(move |zj| zi.sym_diff(zj).len()))
                    .min()
                    .expect("components are nonempty");
                dist[i][j] = w;
                dist[j][i] = w;
            }
        }
        // Prim's algorithm; the MST total weight does not depend on ties.
        let mut in_tree = vec![false; k];
        let mut best = vec![usize::MAX; k];
        best[0] = 0;
        let mut mst_weight = 0;
        for _ in 0..k {
            let v = (0..k)
                .filter(|&v| !in_tree[v])
                .min_by_key(|&v| best[v])
                .expect("tree spans all components");
            in_tree[v] = true;
            mst_weight += best[v];
            for u in 0..k {
                if !in_tree[u] && dist[v][u] < best[u] {
                    best[u] = dist[v][u];
                }
            }
        }
        let sep = mst_weight - (k - 1);
        if sep > 0 {
            detail.insert(s.clone(), sep);
        }
        total += sep;
    }
    (total, detail)
}

/// True when every active set's zones form a connected region, the shape
/// required to route one closed curve per set.
fn regions_connected(g: &DualGraph) -> bool {
    g.active().iter().all(|s| g.region_components(s).len() <= 1)
}

/// Merges sets until the separation score is zero. Each round picks the
/// pair whose merge minimizes the score, preferring merges that keep every
/// region connected (relabeling can strand a set's zones without a linking
/// edge, which no later phase repairs), with ties broken by smallest pair.
/// After each merge the planarity and concurrency phases re-run, since the
/// merge may have reintroduced either defect.
pub fn genus_removal(mut g: DualGraph, log: &mut MergeLog) -> DualGraph {
    loop {
        let (sep, _) = genus_separation(&g);
        if sep == 0 {
            return g;
        }
        let names: Vec<String> = g.active().iter().cloned().collect();
        let mut best: Option<((bool, usize, (&String, &String)), DualGraph)> = None;
        for i in 0..names.len() {
            for j in (i + 1)..names.len() {
                let merged = g.merge_sets(&names[i], &names[j]);
                let (s2, _) = genus_separation(&merged);
                let key = (!regions_connected(&merged), s2, (&names[i], &names[j]));
                let better = match &best {
                    None => true,
                    Some((bk, _)) => key < *bk,
                };
                if better {
                    best = Some((key, merged));
                }
            }
        }
        let ((_, _, (kept, absorbed)), merged) = best.expect("two or more active sets");
        log.steps.push(MergeStep {
            reason: MergeReason::Genus,
            kept: kept.clone(),
            absorbed: absorbed.clone(),
            concurrency_before: g.concurrency(),
            concurrency_after: merged.concurrency(),
            zones_before: g.zone_count(),
            zones_after: merged.zone_count(),
        });
        g = merged;
        g = merge::nonplanar_to_planar(g, log);
        g = merge::concurrency_removal(g, log);
    }
}
