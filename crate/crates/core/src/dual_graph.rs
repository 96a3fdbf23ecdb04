//! The labeled dual graph of a set system.
//!
//! Vertices are zones; an edge's label is always the symmetric difference
//! of its endpoint zone labels, so labels are derived rather than stored.
//! Construction adds a natural edge between every pair of zones whose
//! labels differ in exactly one set, then repairs per-set connectivity by
//! inserting the cheapest extra edges (fewest label changes, ties broken
//! by zone-label order). The total concurrency of the graph is the sum of
//! `label size - 1` over all edges; a concurrency-free graph only has
//! edges between zones that differ in a single set.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::set_system::{SetSystem, ZoneLabel};

/// An undirected edge between two zones, stored with endpoints in sorted
/// order so edge sets iterate canonically.
pub type Edge = (ZoneLabel, ZoneLabel);

/// Normalizes an endpoint pair into canonical order.
pub fn edge(a: ZoneLabel, b: ZoneLabel) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// One connectivity-repair edge added during construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectEdge {
    /// The set whose zones were disconnected.
    pub set: String,
    /// First endpoint (sorted before `b`).
    pub a: ZoneLabel,
    /// Second endpoint.
    pub b: ZoneLabel,
    /// The edge label, i.e. the symmetric difference of `a` and `b`.
    pub label: ZoneLabel,
}

#[derive(Serialize, Deserialize)]
struct ZoneDoc {
    label: ZoneLabel,
    elements: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    a: ZoneLabel,
    b: ZoneLabel,
    label: ZoneLabel,
}

#[derive(Serialize, Deserialize)]
struct ProvenanceDoc {
    set: String,
    merged: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    zones: Vec<ZoneDoc>,
    edges: Vec<EdgeDoc>,
    active: Vec<String>,
    provenance: Vec<ProvenanceDoc>,
}

/// The labeled dual graph of a (possibly partially merged) set system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    zones: BTreeMap<ZoneLabel, BTreeSet<String>>,
    edges: BTreeSet<Edge>,
    active: BTreeSet<String>,
    provenance: BTreeMap<String, BTreeSet<String>>,
}

impl DualGraph {
    /// Builds the initial dual graph of a set system and reports the edges
    /// inserted by per-set connectivity repair, in insertion order.
    pub fn from_system(system: &SetSystem) -> (DualGraph, Vec<ConnectEdge>) {
        let zones = system.zones();
        let active: BTreeSet<String> = system.sets().keys().cloned().collect();
        let provenance = active
            .iter()
            .map(|s| (s.clone(), BTreeSet::from([s.clone()])))
            .collect();
        let mut g = DualGraph {
            zones,
            edges: BTreeSet::new(),
            active,
            provenance,
        };
        let labels: Vec<ZoneLabel> = g.zones.keys().cloned().collect();
        for i in 0..labels.len() {
            for j in (i + 1)..labels.len() {
                if labels[i].sym_diff(&labels[j]).len() == 1 {
                    g.edges.insert(edge(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let mut connects = Vec::new();
        let sets: Vec<String> = g.active.iter().cloned().collect();
        for s in sets {
            loop {
                let comps = g.region_components(&s);
                if comps.len() <= 1 {
                    break;
                }
                let mut comp_of: BTreeMap<&ZoneLabel, usize> = BTreeMap::new();
                for (i, comp) in comps.iter().enumerate() {
                    for z in comp {
                        comp_of.insert(z, i);
                    }
                }
                let verts: Vec<&ZoneLabel> = comp_of.keys().cloned().collect();
                let mut best: Option<(usize, (&ZoneLabel, &ZoneLabel))> = None;
                for i in 0..verts.len() {
                    for j in (i + 1)..verts.len() {
                        if comp_of[verts[i]] == comp_of[verts[j]] {
                            continue;
                        }
                        let d = verts[i].sym_diff(verts[j]).len();
                        let cand = (d, (verts[i], verts[j]));
                        if best.is_none() || cand < best.unwrap() {
                            best = Some(cand);
                        }
                    }
                }
                let (_, (a, b)) = best.expect("disconnected region always has a cross pair");
                let (a, b) = (a.clone(), b.clone());
                connects.push(ConnectEdge {
                    set: s.clone(),
                    a: a.clone(),
                    b: b.clone(),
                    label: a.sym_diff(&b),
                });
                g.edges.insert(edge(a, b));
            }
        }
        (g, connects)
    }

    /// The zones and their elements. The outer zone is always present and
    /// always empty.
    pub fn zones(&self) -> &BTreeMap<ZoneLabel, BTreeSet<String>> {
        &self.zones
    }

    /// The edges in canonical order.
    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// The surviving set names.
    pub fn active(&self) -> &BTreeSet<String> {
        &self.active
    }

    /// For each surviving set, the original sets merged into it.
    pub fn provenance(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.provenance
    }

    /// An edge's label: the symmetric difference of its endpoints.
    pub fn edge_label(e: &Edge) -> ZoneLabel {
        e.0.sym_diff(&e.1)
    }

    /// Total concurrency: the sum over edges of `label size - 1`.
    pub fn concurrency(&self) -> usize {
        self.edges
            .iter()
            .map(|e| Self::edge_label(e).len() - 1)
            .sum()
    }

    /// Total zone count, including the outer zone.
    pub fn zone_count(&self) -> usize {
        self.zones.len()
    }

    /// Number of zones covered by at least one set.
    pub fn nonempty_zone_count(&self) -> usize {
        self.zones.keys().filter(|l| !l.is_empty()).count()
    }

    /// The zones covered by `set` together with the edges joining them.
    pub fn region(&self, set: &str) -> (Vec<ZoneLabel>, Vec<Edge>) {
        let verts: Vec<ZoneLabel> = self
            .zones
            .keys()
            .filter(|l| l.contains(set))
            .cloned()
            .collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|(a, b)| a.contains(set) && b.contains(set))
            .cloned()
            .collect();
        (verts, edges)
    }

    /// Connected components of the region of `set`, each a sorted zone set.
    pub fn region_components(&self, set: &str) -> Vec<BTreeSet<ZoneLabel>> {
        let (verts, edges) = self.region(set);
        components(&verts, &edges)
    }

    /// Connected components of the subgraph induced by the zones NOT
    /// covered by `set`.
    pub fn components_without(&self, set: &str) -> Vec<BTreeSet<ZoneLabel>> {
        let verts: Vec<ZoneLabel> = self
            .zones
            .keys()
            .filter(|l| !l.contains(set))
            .cloned()
            .collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|(a, b)| !a.contains(set) && !b.contains(set))
            .cloned()
            .collect();
        components(&verts, &edges)
    }

    /// Merges two sets: the lexicographically smaller label is kept and the
    /// other absorbed. Zone labels mentioning the absorbed set are rewritten
    /// to the kept set; zones whose rewritten labels collide are unified and
    /// their elements pooled. Edges are rewritten the same way, dropping
    /// self-loops and collapsing parallels.
    pub fn merge_sets(&self, l1: &str, l2: &str) -> DualGraph {
        let (kept, absorbed) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let mut zones: BTreeMap<ZoneLabel, BTreeSet<String>> = BTreeMap::new();
        for (label, elements) in &self.zones {
            let entry = zones.entry(label.rename(absorbed, kept)).or_default();
            entry.extend(elements.iter().cloned());
        }
        let mut edges = BTreeSet::new();
        for (a, b) in &self.edges {
            let a2 = a.rename(absorbed, kept);
            let b2 = b.rename(absorbed, kept);
            if a2 != b2 {
                edges.insert(edge(a2, b2));
            }
        }
        let mut active = self.active.clone();
        active.remove(absorbed);
        let mut provenance = self.provenance.clone();
        let merged_in = provenance.remove(absorbed).unwrap_or_default();
        provenance
            .entry(kept.to_string())
            .or_default()
            .extend(merged_in);
        DualGraph {
            zones,
            edges,
            active,
            provenance,
        }
    }

    /// Flattens the graph to indexed form for the planarity algorithms:
    /// vertices in zone-label order, edges in canonical order.
    pub fn index_graph(&self) -> (Vec<ZoneLabel>, Vec<(usize, usize)>) {
        let verts: Vec<ZoneLabel> = self.zones.keys().cloned().collect();
        let index: BTreeMap<&ZoneLabel, usize> =
            verts.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|(a, b)| (index[a], index[b]))
            .collect();
        (verts, edges)
    }
}

impl Serialize for DualGraph {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let doc = GraphDoc {
            zones: self
                .zones
                .iter()
                .map(|(label, elements)| ZoneDoc {
                    label: label.clone(),
                    elements: elements.iter().cloned().collect(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(a, b)| EdgeDoc {
                    a: a.clone(),
                    b: b.clone(),
                    label: a.sym_diff(b),
                })
                .collect(),
            active: self.active.iter().cloned().collect(),
            provenance: self
                .provenance
                .iter()
                .map(|(set, merged)| ProvenanceDoc {
                    set: set.clone(),
                    merged: merged.iter().cloned().collect(),
                })
                .collect(),
        };
        doc.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DualGraph {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(deserializer)?;
        Ok(DualGraph {
            zones: doc
                .zones
                .into_iter()
                .map(|z| (z.label, z.elements.into_iter().collect()))
                .collect(),
            edges: doc.edges.into_iter().map(|e| edge(e.a, e.b)).collect(),
            active: doc.active.into_iter().collect(),
            provenance: doc
                .provenance
                .into_iter()
                .map(|p| (p.set, p.merged.into_iter().collect()))
                .collect(),
        })
    }
}

/// Connected components by breadth-first search over an explicit vertex and
/// edge list; components come back sorted by their smallest vertex.
pub fn components(verts: &[ZoneLabel], edges: &[Edge]) -> Vec<BTreeSet<ZoneLabel>> {
    let mut adj: BTreeMap<&ZoneLabel, Vec<&ZoneLabel>> =
        verts.iter().map(|v| (v, Vec::new())).collect();
    for (a, b) in edges {
        adj.get_mut(a)
            .expect("edge endpoint in vertex list")
            .push(b);
        adj.get_mut(b)
            .expect("edge endpoint in vertex list")
            .push(a);
    }
    let mut seen: BTreeSet<&ZoneLabel> = BTreeSet::new();
    let mut out = Vec::new();
    for v in verts {
        if seen.contains(v) {
            continue;
        }
        let mut comp: BTreeSet<ZoneLabel> = BTreeSet::new();
        let mut queue = VecDeque::from([v]);
        seen.insert(v);
        while let Some(u) = queue.pop_front() {
            comp.insert(u.clone());
            for w in &adj[u] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()));
    out
}
