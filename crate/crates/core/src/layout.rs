//! Straight-line crossing-free layout of a planar dual graph.
//!
//! Each connected component is embedded combinatorially, its face
//! structure is made biconnected by splitting face walks with short
//! virtual paths, every interior face gets a virtual hub vertex, and the
//! resulting triangulation is drawn by pinning the outer face on a convex
//! polygon and relaxing interior vertices to the barycenter of their
//! neighbors. That construction yields a crossing-free drawing; the
//! virtual vertices are dropped afterwards. Components are placed side by
//! side with the outer zone's component first, so the outer zone always
//! lies on the outer boundary of the drawing.
//!
//! Not every planar embedding of the dual supports a diagram: when a
//! set's region subgraph contains a cycle, no zone outside that set may
//! end up enclosed by it, or the set's curve would have to enclose a zone
//! it must exclude. Before embedding, any component of non-member zones
//! that could be trapped that way is tied to a virtual outer vertex so
//! the embedder keeps it on the unbounded side.
//!
//! `refine_layout` then polishes vertex spacing with a force step that
//! rejects any move that would introduce a crossing, sweep a vertex
//! across an edge, decrease the global minimum vertex distance or
//! vertex-to-edge clearance, pull the outer zone off its component's
//! convex hull, or make component bounding boxes overlap.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::dual_graph::DualGraph;
use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::planarity;
use crate::set_system::ZoneLabel;

/// A straight-line drawing of the dual graph, together with the rotation
/// system and face structure it realizes. Rotation and faces are always
/// derived from the positions, so they stay consistent after refinement.
#[derive(Debug, Clone)]
pub struct Layout {
    /// Zone coordinates.
    pub positions: BTreeMap<ZoneLabel, Point>,
    /// Neighbors of each zone in counterclockwise angular order.
    pub rotation: BTreeMap<ZoneLabel, Vec<ZoneLabel>>,
    /// Face walks of the drawing.
    pub faces: Vec<Vec<ZoneLabel>>,
    /// Index into `faces` of the unbounded face of the outer zone's
    /// component.
    pub outer_face: usize,
}

/// Computes a crossing-free straight-line drawing. The graph must be
/// planar; the seed only rotates the phase of the pinned outer polygon.
pub fn planar_layout(g: &DualGraph, seed: u64) -> Result<Layout> {
    let (verts, edges) = g.index_graph();
    let n = verts.len();
    let comps = index_components(n, &edges);
    let comp_of = {
        let mut m = vec![0usize; n];
        for (ci, comp) in comps.iter().enumerate() {
            for &v in comp {
                m[v] = ci;
            }
        }
        m
    };
    let anchors = outer_anchors(g, &verts, &comp_of);
    let phase = seed_phase(seed);

    let mut positions: Vec<Point> = vec![(0.0, 0.0); n];
    let mut offset_x = 0.0;
    for (ci, comp) in comps.iter().enumerate() {
        let empty = BTreeSet::new();
        let comp_anchors = anchors.get(&ci).unwrap_or(&empty);
        let local = solve_component(comp, &edges, phase, comp.contains(&0), comp_anchors)?;
        // Normalize the component into its own box and shift it right of
        // everything placed so far.
        let min_x = local.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let min_y = local.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_x = local.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        for (slot, &v) in comp.iter().enumerate() {
            positions[v] = (local[slot].0 - min_x + offset_x, local[slot].1 - min_y);
        }
        offset_x += (max_x - min_x) + 0.8;
    }

    let position_map: BTreeMap<ZoneLabel, Point> = verts
        .iter()
        .cloned()
        .zip(positions.iter().copied())
        .collect();
    finish(g, position_map)
}

/// Improves vertex spacing in place while preserving every structural
/// property of the drawing. The minimum pairwise vertex distance never
/// decreases.
pub fn refine_layout(g: &DualGraph, layout: &mut Layout, iterations: usize) {
    let (verts, edges) = g.index_graph();
    let n = verts.len();
    let mut pos: Vec<Point> = verts.iter().map(|v| layout.positions[v]).collect();
    let comps = index_components(n, &edges);
    let comp_of: Vec<usize> = {
        let mut m = vec![0usize; n];
        for (ci, comp) in comps.iter().enumerate() {
            for &v in comp {
                m[v] = ci;
            }
        }
        m
    };
    let adj = {
        let mut a: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &edges {
            a[u].push(v);
            a[v].push(u);
        }
        a
    };

    let k = if edges.is_empty() {
        1.0
    } else {
        edges
            .iter()
            .map(|&(u, v)| geom::dist(pos[u], pos[v]))
            .sum::<f64>()
            / edges.len() as f64
    };
    let mut temp = 0.3 * k;

    for _ in 0..iterations {
        for v in 0..n {
            let mut force = (0.0, 0.0);
            for u in 0..n {
                if u == v {
                    continue;
                }
                let d = geom::sub(pos[v], pos[u]);
                let len = geom::norm(d).max(1e-9);
                let rep = k * k / len;
                force = geom::add(force, geom::scale(d, rep / len));
            }
            for &u in &adj[v] {
                let d = geom::sub(pos[u], pos[v]);
                let len = geom::norm(d).max(1e-9);
                let att = len * len / k;
                force = geom::add(force, geom::scale(d, att / len));
            }
            let len = geom::norm(force);
            if len < 1e-12 {
                continue;
            }
            let mut step = geom::scale(force, temp.min(len) / len);
            for _ in 0..12 {
                if geom::norm(step) < 1e-4 * k {
                    break;
                }
                let cand = geom::add(pos[v], step);
                if move_ok(v, cand, &pos, &edges, &adj, &comps, &comp_of) {
                    pos[v] = cand;
                    break;
                }
                step = geom::scale(step, 0.5);
            }
        }
        temp *= 0.92;
    }

    let position_map: BTreeMap<ZoneLabel, Point> =
        verts.iter().cloned().zip(pos.iter().copied()).collect();
    *layout = finish(g, position_map).expect("refinement preserves layout validity");
}

/// Checks every refinement guard for moving vertex `v` to `cand`.
fn move_ok(
    v: usize,
    cand: Point,
    pos: &[Point],
    edges: &[(usize, usize)],
    adj: &[Vec<usize>],
    comps: &[Vec<usize>],
    comp_of: &[usize],
) -> bool {
    let n = pos.len();
    // The global minimum pairwise distance must not decrease.
    let mut old_min = f64::INFINITY;
    let mut rest_min = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = geom::dist(pos[i], pos[j]);
            old_min = old_min.min(d);
            if i != v && j != v {
                rest_min = rest_min.min(d);
            }
        }
    }
    let mut new_min = rest_min;
    for u in 0..n {
        if u != v {
            new_min = new_min.min(geom::dist(cand, pos[u]));
        }
    }
    if new_min < old_min - 1e-12 {
        return false;
    }

    // The minimum clearance between a vertex and a non-incident edge must
    // not decrease either. Attractive forces otherwise flatten a path onto
    // a chord edge joining its endpoints, and a vertex resting exactly on a
    // foreign edge leaves no room to route curves around it.
    let mut old_clear = f64::INFINITY;
    let mut rest_clear = f64::INFINITY;
    for i in 0..n {
        for &(a, b) in edges {
            if i == a || i == b {
                continue;
            }
            let d = geom::point_segment_dist(pos[i], pos[a], pos[b]);
            old_clear = old_clear.min(d);
            if i != v && a != v && b != v {
                rest_clear = rest_clear.min(d);
            }
        }
    }
    let mut new_clear = rest_clear;
    let at = |u: usize| if u == v { cand } else { pos[u] };
    for i in 0..n {
        for &(a, b) in edges {
            if i == a || i == b {
                continue;
            }
            if i != v && a != v && b != v {
                continue;
            }
            new_clear = new_clear.min(geom::point_segment_dist(at(i), at(a), at(b)));
        }
    }
    if new_clear < old_clear - 1e-12 {
        return false;
    }

    // No edge crossing may appear among non-adjacent edge pairs.
    for &w in &adj[v] {
        for &(a, b) in edges {
            if a == v || b == v || a == w || b == w {
                continue;
            }
            if geom::segments_cross(cand, pos[w], pos[a], pos[b]) {
                return false;
            }
        }
    }

    // The vertex itself must not sweep across an edge on its way to the
    // new position, or it could switch sides of a cycle without any edge
    // pair ever crossing (for example, a zone whose edges all attach to
    // the cycle slipping into its interior).
    for &(a, b) in edges {
        if a == v || b == v {
            continue;
        }
        if geom::segments_cross(pos[v], cand, pos[a], pos[b]) {
            return false;
        }
    }

    // The outer zone must stay on the convex hull of its component.
    let z0_comp = comp_of[0];
    if comp_of[v] == z0_comp {
        let pts: Vec<Point> = comps[z0_comp]
            .iter()
            .map(|&u| if u == v { cand } else { pos[u] })
            .collect();
        let z0_slot = comps[z0_comp]
            .iter()
            .position(|&u| u == 0)
            .expect("outer zone in its component");
        if pts.len() > 2 && !geom::convex_hull(&pts).contains(&z0_slot) {
            return false;
        }
    }

    // Component bounding boxes must stay disjoint.
    if comps.len() > 1 {
        let boxes: Vec<(f64, f64, f64, f64)> = comps
            .iter()
            .enumerate()
            .map(|(ci, comp)| {
                let mut bb = (
                    f64::INFINITY,
                    f64::INFINITY,
                    f64::NEG_INFINITY,
                    f64::NEG_INFINITY,
                );
                for &u in comp {
                    let p = if u == v && comp_of[v] == ci {
                        cand
                    } else {
                        pos[u]
                    };
                    bb.0 = bb.0.min(p.0);
                    bb.1 = bb.1.min(p.1);
                    bb.2 = bb.2.max(p.0);
                    bb.3 = bb.3.max(p.1);
                }
                bb
            })
            .collect();
        for i in 0..boxes.len() {
            for j in (i + 1)..boxes.len() {
                let (a, b) = (boxes[i], boxes[j]);
                let overlap_x = a.0 <= b.2 && b.0 <= a.2;
                let overlap_y = a.1 <= b.3 && b.1 <= a.3;
                if overlap_x && overlap_y {
                    return false;
                }
            }
        }
    }
    true
}

/// Derives rotation, faces, and the outer face from final coordinates.
fn finish(g: &DualGraph, positions: BTreeMap<ZoneLabel, Point>) -> Result<Layout> {
    let (verts, edges) = g.index_graph();
    let n = verts.len();
    let pos: Vec<Point> = verts.iter().map(|v| positions[v]).collect();

    let mut rotation_idx: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &edges {
        rotation_idx[u].push(v);
        rotation_idx[v].push(u);
    }
    for (v, list) in rotation_idx.iter_mut().enumerate() {
        list.sort_by(|&a, &b| {
            let ang = |w: usize| {
                let d = geom::sub(pos[w], pos[v]);
                d.1.atan2(d.0)
            };
            ang(a)
                .partial_cmp(&ang(b))
                .expect("positions are finite")
                .then(a.cmp(&b))
        });
    }

    let faces_idx = planarity::faces_from_rotation(n, &rotation_idx);
    let comps = index_components(n, &edges);
    let z0_comp: BTreeSet<usize> = comps
        .iter()
        .find(|c| c.contains(&0))
        .expect("outer zone exists")
        .iter()
        .copied()
        .collect();

    // Face traces follow the next-counterclockwise successor rule, so bounded
    // faces come out clockwise (negative signed area) and the unbounded face
    // counterclockwise: it is the one with the largest signed area. A tree
    // component has a single zero-area walk, which is trivially the maximum.
    let mut outer_face = None;
    let mut best_area = f64::NEG_INFINITY;
    for (fi, face) in faces_idx.iter().enumerate() {
        if !z0_comp.contains(&face[0]) {
            continue;
        }
        let poly: Vec<Point> = face.iter().map(|&v| pos[v]).collect();
        let area = geom::polygon_area(&poly);
        if area > best_area {
            best_area = area;
            outer_face = Some(fi);
        }
    }
    let outer_face = outer_face.expect("outer zone's component has a face");
    if !faces_idx[outer_face].contains(&0) {
        return Err(Error::Contract(
            "outer zone fell off the unbounded face".into(),
        ));
    }

    Ok(Layout {
        positions,
        rotation: verts
            .iter()
            .enumerate()
            .map(|(v, label)| {
                (
                    label.clone(),
                    rotation_idx[v].iter().map(|&w| verts[w].clone()).collect(),
                )
            })
            .collect(),
        faces: faces_idx
            .iter()
            .map(|face| face.iter().map(|&v| verts[v].clone()).collect())
            .collect(),
        outer_face,
    })
}

fn seed_phase(seed: u64) -> f64 {
    let mixed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 11;
    (mixed as f64 / (1u64 << 53) as f64) * std::f64::consts::TAU
}

/// Connected components over indexed vertices, the outer zone's component
/// first, the rest ordered by smallest vertex.
fn index_components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_by_key(|c| if c.contains(&0) { (0, 0) } else { (1, c[0]) });
    comps
}

/// Finds the zones that must stay on the unbounded side of the drawing.
/// For each set whose region subgraph contains a cycle, a drawing is only
/// usable if no zone outside the set is enclosed by that cycle. Zones can
/// reach the outside through other zones outside the set, so it suffices
/// to keep one representative of each component of non-member zones on
/// the outer face; the component holding the outer zone is already there.
/// Returns, per graph component, the representatives to anchor.
fn outer_anchors(
    g: &DualGraph,
    verts: &[ZoneLabel],
    comp_of: &[usize],
) -> BTreeMap<usize, BTreeSet<usize>> {
    let slot: BTreeMap<&ZoneLabel, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut anchors: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for s in g.active() {
        let (zones, redges) = g.region(s);
        let parts = g.region_components(s).len();
        if redges.len() + parts <= zones.len() {
            continue; // the region is a forest; it cannot enclose anything
        }
        let region_comp = comp_of[slot[&zones[0]]];
        for k in g.components_without(s) {
            if k.iter().any(|z| z.is_empty()) {
                continue;
            }
            let rep = slot[k.iter().next().expect("components are nonempty")];
            if comp_of[rep] == region_comp {
                anchors.entry(region_comp).or_default().insert(rep);
            }
        }
    }
    anchors
}

/// Draws one component in local coordinates (vertex order = `comp` order).
fn solve_component(
    comp: &[usize],
    edges: &[(usize, usize)],
    phase: f64,
    has_outer_zone: bool,
    anchors: &BTreeSet<usize>,
) -> Result<Vec<Point>> {
    let ln = comp.len();
    if ln == 1 {
        return Ok(vec![(0.0, 0.0)]);
    }
    if ln == 2 {
        return Ok(vec![(0.0, 0.0), (1.0, 0.0)]);
    }
    let slot: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let local_edges: Vec<(usize, usize)> = edges
        .iter()
        .filter(|(u, v)| slot.contains_key(u) && slot.contains_key(v))
        .map(|(u, v)| (slot[u], slot[v]))
        .collect();

    // Anchored zones are tied to a virtual vertex that will sit on the
    // outer face, forcing the embedder to leave them outside every region
    // cycle. The virtual vertex shares the outer face with the outer zone
    // when the component has it. Should the augmented graph be nonplanar,
    // the anchors are unsatisfiable and the plain embedding is used; the
    // curve stage then reports any zone the drawing traps.
    let omega = ln;
    let mut picked = None;
    if !anchors.is_empty() {
        let mut aug = local_edges.clone();
        for &a in anchors {
            aug.push((slot[&a], omega));
        }
        if has_outer_zone {
            aug.push((slot[&0], omega));
        }
        if let Some(e) = planarity::embed(ln + 1, &aug) {
            let keep = if has_outer_zone {
                vec![slot[&0], omega]
            } else {
                vec![omega]
            };
            picked = Some((ln + 1, e, aug, keep));
        }
    }
    let (en, embedding, used_edges, keep) = match picked {
        Some(p) => p,
        None => {
            let e = planarity::embed(ln, &local_edges)
                .ok_or_else(|| Error::Contract("layout requires a planar graph".into()))?;
            let keep = if has_outer_zone {
                vec![slot[&0]]
            } else {
                Vec::new()
            };
            (ln, e, local_edges, keep)
        }
    };

    let mut faces = embedding.faces.clone();
    let mut outer = choose_outer(&faces, &keep);
    let mut aug_edges: BTreeSet<(usize, usize)> = used_edges
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    let mut next_id = en;

    biconnect(&mut faces, &mut outer, &mut aug_edges, &mut next_id, &keep);

    // A virtual hub in every interior face triangulates the drawing.
    for fi in 0..faces.len() {
        if fi == outer {
            continue;
        }
        let hub = next_id;
        next_id += 1;
        for &v in &faces[fi] {
            aug_edges.insert((v.min(hub), v.max(hub)));
        }
    }

    Ok(tutte_solve(next_id, ln, &aug_edges, &faces[outer], phase))
}

/// Picks the starting outer face: among the faces whose walk contains all
/// vertices in `keep`, the longest, first on ties. When `keep` holds two
/// adjacent vertices, faces where they appear consecutively are preferred
/// so that face splits can never separate them.
fn choose_outer(faces: &[Vec<usize>], keep: &[usize]) -> usize {
    let consecutive = |face: &[usize]| {
        if keep.len() != 2 {
            return true;
        }
        (0..face.len()).any(|i| {
            let pair = [face[i], face[(i + 1) % face.len()]];
            pair == [keep[0], keep[1]] || pair == [keep[1], keep[0]]
        })
    };
    let mut best = None;
    let mut best_rank = (false, 0);
    for (fi, face) in faces.iter().enumerate() {
        if !keep.iter().all(|v| face.contains(v)) {
            continue;
        }
        let rank = (consecutive(face), face.len());
        if best.is_none() || rank > best_rank {
            best = Some(fi);
            best_rank = rank;
        }
    }
    best.expect("every vertex lies on some face")
}

/// Splits every face walk with repeated vertices by inserting virtual
/// two-edge paths until all faces are simple cycles, keeping track of
/// which face is the outer one.
fn biconnect(
    faces: &mut Vec<Vec<usize>>,
    outer: &mut usize,
    edges: &mut BTreeSet<(usize, usize)>,
    next_id: &mut usize,
    keep: &[usize],
) {
    loop {
        let mut target = None;
        'scan: for (fi, face) in faces.iter().enumerate() {
            let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
            for (t, &v) in face.iter().enumerate() {
                if let Some(&first) = seen.get(&v) {
                    target = Some((fi, first, t));
                    break 'scan;
                }
                seen.insert(v, t);
            }
        }
        let Some((fi, i, j)) = target else { break };
        let face = faces[fi].clone();
        let k = face.len();
        let w1 = face[(i + 1) % k];
        let w2 = face[(j + 1) % k];
        debug_assert_ne!(w1, w2, "directed edges occur once, so arcs differ");
        let x = *next_id;
        *next_id += 1;
        edges.insert((w1.min(x), w1.max(x)));
        edges.insert((w2.min(x), w2.max(x)));

        // Walk from w1 to the second occurrence, return through x.
        let mut part_a = vec![x];
        let mut t = (i + 1) % k;
        loop {
            part_a.push(face[t]);
            if t == (j + 1) % k {
                break;
            }
            t = (t + 1) % k;
        }
        // Walk from w2 back to the first occurrence, return through x.
        let mut part_b = vec![x];
        let mut t = (j + 1) % k;
        loop {
            part_b.push(face[t]);
            if t == (i + 1) % k {
                break;
            }
            t = (t + 1) % k;
        }

        let was_outer = fi == *outer;
        faces[fi] = part_a;
        faces.push(part_b);
        if was_outer {
            // The part holding more of the must-keep vertices stays outer;
            // a consecutive pair always survives into one part together.
            let b_idx = faces.len() - 1;
            let score = |f: &[usize]| (keep.iter().filter(|v| f.contains(v)).count(), f.len());
            *outer = if score(&faces[fi]) >= score(&faces[b_idx]) {
                fi
            } else {
                b_idx
            };
        }
    }
}

/// Barycentric relaxation with the outer cycle pinned on a convex polygon.
/// Only the first `real_n` vertices are reported.
fn tutte_solve(
    n: usize,
    real_n: usize,
    edges: &BTreeSet<(usize, usize)>,
    outer_cycle: &[usize],
    phase: f64,
) -> Vec<Point> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut pos: Vec<Point> = vec![(0.0, 0.0); n];
    let mut pinned = vec![false; n];
    let k = outer_cycle.len();
    for (t, &v) in outer_cycle.iter().enumerate() {
        let ang = phase + std::f64::consts::TAU * t as f64 / k as f64;
        pos[v] = (ang.cos(), ang.sin());
        pinned[v] = true;
    }
    for _ in 0..3000 {
        let mut max_move = 0.0f64;
        for v in 0..n {
            if pinned[v] || adj[v].is_empty() {
                continue;
            }
            let mut sum = (0.0, 0.0);
            for &u in &adj[v] {
                sum = geom::add(sum, pos[u]);
            }
            let next = geom::scale(sum, 1.0 / adj[v].len() as f64);
            max_move = max_move.max(geom::dist(next, pos[v]));
            pos[v] = next;
        }
        if max_move < 1e-10 {
            break;
        }
    }
    pos.truncate(real_n);
    pos
}
