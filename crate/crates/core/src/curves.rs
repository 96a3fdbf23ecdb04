//! Closed set curves routed around the laid-out dual graph.
//!
//! Each surviving set gets one closed simple curve. The curve is the outer
//! boundary of a tube around the set's region: a disc around every region
//! vertex and a corridor along every edge joining two region vertices, all
//! at a per-set radius. Edges that leave the region are then crossed by
//! inserting a narrow finger into the boundary that reaches out to the
//! edge midpoint and back, so every boundary edge of the set is crossed
//! exactly once and every other edge not at all.
//!
//! The geometry is verified after construction: curves must be simple,
//! cross exactly the edges they should, and enclose exactly the zones of
//! their set. Any violation is reported as a contract error rather than
//! silently drawing a wrong diagram.

use std::collections::{BTreeMap, BTreeSet};

use crate::dual_graph::{components, DualGraph};
use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::layout::Layout;
use crate::set_system::ZoneLabel;

/// Fixed stroke palette; curves cycle through it in label order.
pub const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f", "#aec7e8", "#98df8a",
];

/// One routed set curve: a closed polyline (no repeated last point) and
/// the indices of points that smoothing must not move (the finger bases,
/// which realize the edge crossings).
#[derive(Debug, Clone)]
pub struct Curve {
    /// The surviving set this curve encloses.
    pub set: String,
    pub points: Vec<Point>,
    pub anchors: BTreeSet<usize>,
}

/// A complete diagram: the underlying layout, one curve per surviving set,
/// the palette assignment, and the legend mapping each curve to the
/// original sets merged into it.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub layout: Layout,
    pub curves: Vec<Curve>,
    /// Surviving set label to stroke color.
    pub colors: BTreeMap<String, String>,
    /// Surviving set label to the original set names it stands for.
    pub legend: BTreeMap<String, Vec<String>>,
}

fn ang_norm(a: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = a % tau;
    if r < 0.0 {
        r + tau
    } else {
        r
    }
}

fn dir_angle(from: Point, to: Point) -> f64 {
    (to.1 - from.1).atan2(to.0 - from.0)
}

fn unit(a: f64) -> Point {
    (a.cos(), a.sin())
}

/// Intersection of lines `p + t d` and `q + s e`; returns `t` and the point.
fn line_intersect(p: Point, d: Point, q: Point, e: Point) -> Option<(f64, Point)> {
    let den = d.0 * e.1 - d.1 * e.0;
    if den.abs() < 1e-12 {
        return None;
    }
    let w = geom::sub(q, p);
    let t = (w.0 * e.1 - w.1 * e.0) / den;
    Some((t, geom::add(p, geom::scale(d, t))))
}

struct WalkGeometry {
    pos: Vec<Point>,
    /// Incident internal-edge neighbor directions per region vertex.
    dirs: BTreeMap<usize, Vec<(usize, f64)>>,
    radius: f64,
}

impl WalkGeometry {
    /// The next directed edge of the tube boundary after traversing
    /// `u -> v`, together with the points the junction contributes: either
    /// an arrival point plus an arc to the departure point, or a single
    /// clip point where the two corridor sides meet inside a tight corner.
    fn junction(&self, u: usize, v: usize) -> Result<(usize, Vec<Point>)> {
        let r = self.radius;
        let beta_u = dir_angle(self.pos[v], self.pos[u]);
        let arrival = ang_norm(beta_u + std::f64::consts::FRAC_PI_2);
        let candidates = &self.dirs[&v];

        // Turn extents, measured counterclockwise from the continuation of
        // the incoming direction. Extents beyond a half turn mean the
        // candidate's corridor covers the arrival point.
        let extent = |beta_w: f64| {
            let e = ang_norm(beta_w - beta_u - std::f64::consts::PI);
            // Walking back along the incoming edge is exactly a half turn.
            if (e - std::f64::consts::TAU).abs() < 1e-9 {
                0.0
            } else {
                e
            }
        };
        let eps = 1e-9;
        let pi = std::f64::consts::PI;

        let covering: Vec<(usize, f64)> = candidates
            .iter()
            .filter(|&&(_, beta_w)| {
                let e = extent(beta_w);
                e > pi + eps && e < std::f64::consts::TAU - eps
            })
            .copied()
            .collect();

        if !covering.is_empty() {
            // Clip: follow the incoming corridor side until it first meets
            // the side line of a covering corridor, then switch onto it.
            let theta_in = dir_angle(self.pos[u], self.pos[v]);
            let side_start = geom::add(
                self.pos[u],
                geom::scale(unit(theta_in - std::f64::consts::FRAC_PI_2), r),
            );
            let mut best: Option<(f64, usize, Point)> = None;
            for &(w, beta_w) in &covering {
                let w_start = geom::add(
                    self.pos[v],
                    geom::scale(unit(beta_w - std::f64::consts::FRAC_PI_2), r),
                );
                if let Some((t, x)) =
                    line_intersect(side_start, unit(theta_in), w_start, unit(beta_w))
                {
                    if t <= 1e-9 {
                        continue;
                    }
                    let better = match &best {
                        None => true,
                        Some((bt, bw, _)) => (t, w) < (*bt, *bw),
                    };
                    if better {
                        best = Some((t, w, x));
                    }
                }
            }
            let (_, w, x) = best
                .ok_or_else(|| Error::Contract("tube corner too tight to clip cleanly".into()))?;
            return Ok((w, vec![x]));
        }

        // Free arc: sweep counterclockwise to the nearest departure.
        let (w, e) = candidates
            .iter()
            .map(|&(w, beta_w)| (w, extent(beta_w)))
            .min_by(|a, b| (a.1, a.0).partial_cmp(&(b.1, b.0)).expect("finite"))
            .expect("region vertices on the walk have incident edges");
        let mut pts = Vec::new();
        let center = self.pos[v];
        pts.push(geom::add(center, geom::scale(unit(arrival), r)));
        let steps = (e / 0.3).ceil().max(1.0) as usize;
        for k in 1..=steps {
            let a = arrival + e * k as f64 / steps as f64;
            pts.push(geom::add(center, geom::scale(unit(a), r)));
        }
        Ok((w, pts))
    }
}

/// All closed boundary walks of the tube around the given internal edges.
fn tube_walks(geomdata: &WalkGeometry, internal: &[(usize, usize)]) -> Result<Vec<Vec<Point>>> {
    let mut directed: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(a, b) in internal {
        directed.insert((a, b));
        directed.insert((b, a));
    }
    let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut walks = Vec::new();
    while let Some(&start) = directed.iter().find(|d| !visited.contains(d)) {
        let mut sequence = vec![start];
        let mut cur = start;
        loop {
            let (w, _) = geomdata.junction(cur.0, cur.1)?;
            let next = (cur.1, w);
            if next == start {
                break;
            }
            if visited.contains(&next) || sequence.contains(&next) {
                return Err(Error::Contract(
                    "tube boundary walk collapsed onto itself".into(),
                ));
            }
            sequence.push(next);
            cur = next;
        }
        let mut pts: Vec<Point> = Vec::new();
        for &(u, v) in &sequence {
            let (_, jpts) = geomdata.junction(u, v)?;
            for p in jpts {
                if pts
                    .last()
                    .map(|&q| geom::dist(q, p) > 1e-12)
                    .unwrap_or(true)
                {
                    pts.push(p);
                }
            }
        }
        while pts.len() > 1 && geom::dist(pts[0], *pts.last().unwrap()) <= 1e-12 {
            pts.pop();
        }
        visited.extend(sequence);
        walks.push(pts);
    }
    Ok(walks)
}

/// Cumulative arclength table; entry `i` is the length up to point `i`,
/// with one extra entry for the closing segment.
fn arclengths(pts: &[Point]) -> Vec<f64> {
    let n = pts.len();
    let mut acc = vec![0.0; n + 1];
    for i in 0..n {
        acc[i + 1] = acc[i] + geom::dist(pts[i], pts[(i + 1) % n]);
    }
    acc
}

/// Point at arclength `t` (wrapped) along the closed polyline.
fn point_at(pts: &[Point], acc: &[f64], t: f64) -> Point {
    let total = acc[pts.len()];
    let t = t.rem_euclid(total);
    let mut i = match acc.binary_search_by(|probe| probe.partial_cmp(&t).expect("finite")) {
        Ok(i) => i,
        Err(i) => i - 1,
    };
    if i >= pts.len() {
        i = pts.len() - 1;
    }
    let a = pts[i];
    let b = pts[(i + 1) % pts.len()];
    let seg = acc[i + 1] - acc[i];
    if seg <= 1e-15 {
        return a;
    }
    let f = (t - acc[i]) / seg;
    geom::add(a, geom::scale(geom::sub(b, a), f))
}

struct Finger {
    pos: f64,
    width: f64,
    first: Point,
    second: Point,
}

/// Splices fingers (sorted by position) into the closed polyline, returning
/// the new polyline and the anchor indices of the finger bases.
fn splice_fingers(pts: &[Point], acc: &[f64], fingers: &[Finger]) -> (Vec<Point>, BTreeSet<usize>) {
    let total = acc[pts.len()];
    let mut out: Vec<Point> = Vec::new();
    let mut anchors = BTreeSet::new();
    let push = |out: &mut Vec<Point>, p: Point| {
        if out
            .last()
            .map(|&q| geom::dist(q, p) > 1e-12)
            .unwrap_or(true)
        {
            out.push(p);
        }
    };
    let mut cursor = -1e-12;
    for f in fingers {
        let qa = f.pos - f.width;
        let qb = f.pos + f.width;
        // Original points strictly between the previous cut and this one.
        for (i, &p) in pts.iter().enumerate() {
            if acc[i] > cursor && acc[i] < qa {
                push(&mut out, p);
            }
        }
        push(&mut out, point_at(pts, acc, qa));
        push(&mut out, f.first);
        anchors.insert(out.len() - 1);
        push(&mut out, f.second);
        anchors.insert(out.len() - 1);
        push(&mut out, point_at(pts, acc, qb));
        cursor = qb;
    }
    for (i, &p) in pts.iter().enumerate() {
        if acc[i] > cursor && acc[i] < total {
            push(&mut out, p);
        }
    }
    while out.len() > 1 && geom::dist(out[0], *out.last().unwrap()) <= 1e-12 {
        out.pop();
    }
    (out, anchors)
}

struct Indexed {
    verts: Vec<ZoneLabel>,
    pos: Vec<Point>,
    edges: Vec<(usize, usize)>,
}

fn index_layout(g: &DualGraph, layout: &Layout) -> Result<Indexed> {
    let (verts, edges) = g.index_graph();
    let mut pos = Vec::with_capacity(verts.len());
    for v in &verts {
        let p = layout
            .positions
            .get(v)
            .ok_or_else(|| Error::Contract(format!("layout is missing zone {v}")))?;
        pos.push(*p);
    }
    Ok(Indexed { verts, pos, edges })
}

/// The base radius scale: everything tube-shaped must stay well inside the
/// local free space of the drawing.
fn radius_scale(ix: &Indexed) -> f64 {
    let mut bound = f64::INFINITY;
    for &(u, v) in &ix.edges {
        bound = bound.min(0.5 * geom::dist(ix.pos[u], ix.pos[v]));
        for (w, &p) in ix.pos.iter().enumerate() {
            if w != u && w != v {
                bound = bound.min(geom::point_segment_dist(p, ix.pos[u], ix.pos[v]));
            }
        }
    }
    for i in 0..ix.pos.len() {
        for j in (i + 1)..ix.pos.len() {
            bound = bound.min(0.5 * geom::dist(ix.pos[i], ix.pos[j]));
        }
    }
    if bound.is_finite() {
        0.45 * bound
    } else {
        0.45
    }
}

/// Per-set radius cap from corner geometry: a tight corner between two
/// region edges clips the tube at distance `r / sin(angle / 2)` from the
/// vertex, which must stay well inside both edges.
fn corner_cap(ix: &Indexed, internal: &[(usize, usize)]) -> f64 {
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in internal {
        incident.entry(a).or_default().push(b);
        incident.entry(b).or_default().push(a);
    }
    let mut cap = f64::INFINITY;
    for (&v, nbrs) in &incident {
        for i in 0..nbrs.len() {
            for j in (i + 1)..nbrs.len() {
                let a1 = dir_angle(ix.pos[v], ix.pos[nbrs[i]]);
                let a2 = dir_angle(ix.pos[v], ix.pos[nbrs[j]]);
                let mut gamma = ang_norm(a1 - a2);
                if gamma > std::f64::consts::PI {
                    gamma = std::f64::consts::TAU - gamma;
                }
                let len = geom::dist(ix.pos[v], ix.pos[nbrs[i]])
                    .min(geom::dist(ix.pos[v], ix.pos[nbrs[j]]));
                cap = cap.min(0.45 * (gamma / 2.0).sin() * len);
            }
        }
    }
    cap
}

/// Routes one closed simple curve per surviving set around the laid-out
/// dual graph. The graph must be concurrency-free. Every curve is verified
/// geometrically before the diagram is returned: simplicity, one crossing
/// per boundary edge of its set and none elsewhere, and enclosure of
/// exactly its own zones.
pub fn route_curves(g: &DualGraph, layout: &Layout) -> Result<Diagram> {
    let conc = g.concurrency();
    if conc > 0 {
        return Err(Error::Contract(format!(
            "curve routing requires a concurrency-free graph, found concurrency {conc}"
        )));
    }
    let ix = index_layout(g, layout)?;
    let r_scale = radius_scale(&ix);

    // Rank sets by region size (larger regions get larger radii, so nested
    // regions come out visually nested).
    let mut order: Vec<(usize, &String)> = g
        .active()
        .iter()
        .map(|s| {
            let size = ix.verts.iter().filter(|l| l.contains(s)).count();
            (size, s)
        })
        .collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(b.1)));
    let n = order.len();
    let rank: BTreeMap<&String, usize> = order
        .iter()
        .enumerate()
        .map(|(i, &(_, s))| (s, i))
        .collect();

    let mut curves = Vec::new();
    for s in g.active() {
        let region: Vec<usize> = (0..ix.verts.len())
            .filter(|&i| ix.verts[i].contains(s))
            .collect();
        let internal: Vec<(usize, usize)> = ix
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| ix.verts[a].contains(s) && ix.verts[b].contains(s))
            .collect();
        let boundary: Vec<(usize, usize)> = ix
            .edges
            .iter()
            .map(|&(a, b)| {
                if ix.verts[a].contains(s) {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .filter(|&(a, b)| ix.verts[a].contains(s) && !ix.verts[b].contains(s))
            .collect();

        let region_labels: Vec<ZoneLabel> = region.iter().map(|&i| ix.verts[i].clone()).collect();
        let region_edges: Vec<(ZoneLabel, ZoneLabel)> = internal
            .iter()
            .map(|&(a, b)| (ix.verts[a].clone(), ix.verts[b].clone()))
            .collect();
        if components(&region_labels, &region_edges).len() != 1 {
            return Err(Error::Contract(format!(
                "region of set '{s}' is disconnected; its curve cannot be closed"
            )));
        }

        let frac = if n > 1 {
            (n - 1 - rank[s]) as f64 / (n - 1) as f64
        } else {
            0.0
        };
        let r = r_scale.min(corner_cap(&ix, &internal)) * (0.55 + 0.40 * frac);

        // Outer boundary of the tube around the region.
        let base = if internal.is_empty() {
            // Half-step phase so no circle vertex sits on an axis-aligned
            // ray from the center; degenerate layouts are often collinear.
            let c = ix.pos[region[0]];
            (0..36)
                .map(|k| {
                    let a = std::f64::consts::TAU * (k as f64 + 0.5) / 36.0;
                    geom::add(c, geom::scale(unit(a), r))
                })
                .collect::<Vec<Point>>()
        } else {
            let mut dirs: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
            for &(a, b) in &internal {
                dirs.entry(a)
                    .or_default()
                    .push((b, dir_angle(ix.pos[a], ix.pos[b])));
                dirs.entry(b)
                    .or_default()
                    .push((a, dir_angle(ix.pos[b], ix.pos[a])));
            }
            let wg = WalkGeometry {
                pos: ix.pos.clone(),
                dirs,
                radius: r,
            };
            let walks = tube_walks(&wg, &internal)?;
            walks
                .into_iter()
                .max_by(|a, b| {
                    geom::polygon_area(a)
                        .partial_cmp(&geom::polygon_area(b))
                        .expect("finite areas")
                })
                .ok_or_else(|| Error::Contract(format!("empty tube boundary for set '{s}'")))?
        };

        let (points, anchors) = attach_fingers(&ix, s, &base, &boundary, r)?;
        verify_curve(&ix, s, &points)?;
        curves.push(Curve {
            set: s.clone(),
            points,
            anchors,
        });
    }

    let colors: BTreeMap<String, String> = g
        .active()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), PALETTE[i % PALETTE.len()].to_string()))
        .collect();
    let legend: BTreeMap<String, Vec<String>> = g
        .provenance()
        .iter()
        .map(|(s, merged)| (s.clone(), merged.iter().cloned().collect()))
        .collect();
    Ok(Diagram {
        layout: layout.clone(),
        curves,
        colors,
        legend,
    })
}

/// Inserts one finger per boundary edge of the set: a narrow detour from
/// the tube boundary out past the edge midpoint, crossing the edge exactly
/// once, with the two outer corners pinned as smoothing anchors.
fn attach_fingers(
    ix: &Indexed,
    s: &str,
    base: &[Point],
    boundary: &[(usize, usize)],
    r: f64,
) -> Result<(Vec<Point>, BTreeSet<usize>)> {
    if boundary.is_empty() {
        return Ok((base.to_vec(), BTreeSet::new()));
    }
    let acc = arclengths(base);
    let nb = base.len();
    let mut fingers: Vec<Finger> = Vec::new();
    for &(v, w) in boundary {
        let pv = ix.pos[v];
        let m = geom::scale(geom::add(pv, ix.pos[w]), 0.5);
        // The exit point is the last tube-boundary crossing on the way from
        // the region vertex out to the edge midpoint. Straddling is decided
        // by the half-open side rule so that a probe passing exactly through
        // a walk vertex still counts as one crossing instead of vanishing
        // from a strict segment test.
        let side = |p: Point| geom::cross(pv, m, p) > 0.0;
        let mut crossings: Vec<(f64, f64)> = Vec::new();
        for i in 0..nb {
            let a = base[i];
            let b = base[(i + 1) % nb];
            if side(a) == side(b) {
                continue;
            }
            if let Some((t, x)) = line_intersect(pv, geom::sub(m, pv), a, geom::sub(b, a)) {
                if t > 1e-9 && t <= 1.0 + 1e-9 {
                    let along = acc[i] + geom::dist(a, x);
                    crossings.push((t, along));
                }
            }
        }
        if crossings.len() % 2 == 0 {
            return Err(Error::Contract(format!(
                "edge out of set '{s}' does not leave its tube cleanly"
            )));
        }
        crossings.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let (_, q_pos) = *crossings.last().expect("odd count is nonzero");

        // Finger half-width: small against the tube, the local clearance
        // around the midpoint, and the gaps to neighboring fingers.
        let mut clear = f64::INFINITY;
        for (x, &p) in ix.pos.iter().enumerate() {
            if x != v && x != w {
                clear = clear.min(geom::dist(m, p));
            }
        }
        for &(a, b) in &ix.edges {
            if (a, b) != (v, w) && (a, b) != (w, v) {
                clear = clear.min(geom::point_segment_dist(m, ix.pos[a], ix.pos[b]));
            }
        }
        let width = (0.3 * r).min(0.45 * clear);
        if width <= 1e-12 {
            return Err(Error::Contract(format!(
                "no room for the boundary crossing of set '{s}'"
            )));
        }

        let qa = point_at(base, &acc, q_pos - width);
        let qb = point_at(base, &acc, q_pos + width);
        let side_a = geom::cross(pv, m, qa);
        let side_b = geom::cross(pv, m, qb);
        if side_a == 0.0 || side_b == 0.0 || side_a.signum() == side_b.signum() {
            return Err(Error::Contract(format!(
                "boundary crossing of set '{s}' is degenerate at the tube wall"
            )));
        }
        let e_dir = geom::sub(m, pv);
        let e_len = geom::norm(e_dir);
        let n_hat = geom::scale((-e_dir.1, e_dir.0), 1.0 / e_len);
        let sgn = side_a.signum();
        fingers.push(Finger {
            pos: q_pos,
            width,
            first: geom::add(m, geom::scale(n_hat, width * sgn)),
            second: geom::add(m, geom::scale(n_hat, -width * sgn)),
        });
    }

    fingers.sort_by(|a, b| a.pos.partial_cmp(&b.pos).expect("finite"));
    let total = acc[nb];
    let mut widest_gap = (f64::NEG_INFINITY, 0.0);
    for i in 0..fingers.len() {
        let j = (i + 1) % fingers.len();
        let gap = if j == 0 {
            fingers[j].pos + total - fingers[i].pos
        } else {
            fingers[j].pos - fingers[i].pos
        };
        if gap <= fingers[i].width + fingers[j].width {
            return Err(Error::Contract(format!(
                "boundary crossings of set '{s}' collide on the tube wall"
            )));
        }
        let free = gap - fingers[i].width - fingers[j].width;
        if free > widest_gap.0 {
            widest_gap = (free, fingers[i].pos + fingers[i].width + free / 2.0);
        }
    }

    // Re-root the closed polyline in the middle of the widest finger-free
    // stretch so no finger interval wraps the seam of the parameterization.
    let t0 = widest_gap.1.rem_euclid(total);
    let start_i = match acc[..nb].binary_search_by(|probe| probe.partial_cmp(&t0).expect("finite"))
    {
        Ok(i) => i,
        Err(i) => i,
    };
    let mut rotated = vec![point_at(base, &acc, t0)];
    for k in 0..nb {
        let p = base[(start_i + k) % nb];
        if geom::dist(*rotated.last().unwrap(), p) > 1e-12 {
            rotated.push(p);
        }
    }
    if rotated.len() > 1 && geom::dist(rotated[0], *rotated.last().unwrap()) <= 1e-12 {
        rotated.pop();
    }
    for f in &mut fingers {
        f.pos = (f.pos - t0).rem_euclid(total);
    }
    fingers.sort_by(|a, b| a.pos.partial_cmp(&b.pos).expect("finite"));
    let acc2 = arclengths(&rotated);
    let (pts, anchors) = splice_fingers(&rotated, &acc2, &fingers);
    Ok((pts, anchors))
}

/// Checks the geometric contract of one finished curve.
fn verify_curve(ix: &Indexed, s: &str, pts: &[Point]) -> Result<()> {
    let n = pts.len();
    if n < 3 {
        return Err(Error::Contract(format!(
            "curve for set '{s}' degenerated to {n} points"
        )));
    }
    // Simplicity: no two non-adjacent segments may cross.
    for i in 0..n {
        for j in (i + 1)..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if geom::segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]) {
                return Err(Error::Contract(format!(
                    "curve for set '{s}' intersects itself"
                )));
            }
        }
    }
    // Crossing counts: exactly one for the set's boundary edges, zero
    // otherwise.
    for &(a, b) in &ix.edges {
        let expect = usize::from(ix.verts[a].contains(s) != ix.verts[b].contains(s));
        let mut count = 0;
        for i in 0..n {
            if geom::segments_cross(pts[i], pts[(i + 1) % n], ix.pos[a], ix.pos[b]) {
                count += 1;
            }
        }
        if count != expect {
            return Err(Error::Contract(format!(
                "curve for set '{s}' crosses edge {}-{} {count} times, expected {expect}",
                ix.verts[a], ix.verts[b]
            )));
        }
    }
    // Containment: exactly the zones of the set lie inside.
    for (i, label) in ix.verts.iter().enumerate() {
        let inside = geom::point_in_polygon(ix.pos[i], pts);
        if inside != label.contains(s) {
            return Err(Error::Contract(format!(
                "curve for set '{s}' misclassifies zone {label}"
            )));
        }
    }
    Ok(())
}

/// Smooths every curve in place by pulling each non-anchor point toward the
/// midpoint of its neighbors, rejecting any step that would sweep a zone
/// vertex to the other side of the curve, change which graph edges a moved
/// segment crosses, or introduce a self-intersection. Zone classification
/// and crossing structure are therefore exactly preserved.
pub fn smooth_curves(diagram: &mut Diagram, iterations: usize) {
    let positions: Vec<Point> = diagram.layout.positions.values().copied().collect();
    let mut edges: Vec<(Point, Point)> = Vec::new();
    for (v, nbrs) in &diagram.layout.rotation {
        for w in nbrs {
            if v < w {
                edges.push((diagram.layout.positions[v], diagram.layout.positions[w]));
            }
        }
    }
    let min_edge = edges
        .iter()
        .map(|&(a, b)| geom::dist(a, b))
        .fold(f64::INFINITY, f64::min);
    let min_vv = {
        let mut m = f64::INFINITY;
        for i in 0..positions.len() {
            for j in (i + 1)..positions.len() {
                m = m.min(geom::dist(positions[i], positions[j]));
            }
        }
        m
    };
    let delta = 0.25 * min_edge.min(min_vv);
    let delta = if delta.is_finite() { delta } else { 0.05 };

    for _ in 0..iterations {
        for curve in &mut diagram.curves {
            let n = curve.points.len();
            if n < 4 {
                continue;
            }
            for i in 0..n {
                if curve.anchors.contains(&i) {
                    continue;
                }
                let prev = curve.points[(i + n - 1) % n];
                let next = curve.points[(i + 1) % n];
                let p = curve.points[i];
                let target = geom::scale(geom::add(prev, next), 0.5);
                let mut step = geom::scale(geom::sub(target, p), 0.5);
                let len = geom::norm(step);
                if len < 1e-12 {
                    continue;
                }
                if len > delta / 2.0 {
                    step = geom::scale(step, delta / (2.0 * len));
                }
                let cand = geom::add(p, step);
                if smooth_move_ok(&curve.points, i, cand, &positions, &edges) {
                    curve.points[i] = cand;
                }
            }
        }
    }
}

fn smooth_move_ok(
    pts: &[Point],
    i: usize,
    cand: Point,
    vertices: &[Point],
    edges: &[(Point, Point)],
) -> bool {
    let n = pts.len();
    let prev = pts[(i + n - 1) % n];
    let next = pts[(i + 1) % n];
    let p = pts[i];

    if geom::dist(cand, prev) < 1e-9 || geom::dist(cand, next) < 1e-9 {
        return false;
    }

    // No zone vertex may lie in the region swept by the move (the even-odd
    // interior of the quad old-path/new-path), nor too close to the new
    // segments.
    let quad = [prev, p, next, cand];
    for &x in vertices {
        if geom::point_in_polygon(x, &quad) {
            return false;
        }
        if geom::point_segment_dist(x, prev, cand) < 1e-9
            || geom::point_segment_dist(x, cand, next) < 1e-9
            || geom::point_segment_dist(x, prev, p) < 1e-9
            || geom::point_segment_dist(x, p, next) < 1e-9
        {
            return false;
        }
    }

    // The set of graph edges each moved segment crosses must not change.
    for (old_a, old_b, new_a, new_b) in [(prev, p, prev, cand), (p, next, cand, next)] {
        for &(ea, eb) in edges {
            let before = geom::segments_cross(old_a, old_b, ea, eb);
            let after = geom::segments_cross(new_a, new_b, ea, eb);
            if before != after {
                return false;
            }
        }
    }

    // No self-intersection: the two moved segments against all others.
    for j in 0..n {
        if j == i || (j + 1) % n == i {
            continue;
        }
        let a = pts[j];
        let b = pts[(j + 1) % n];
        let adj_prev = (j + 1) % n == (i + n - 1) % n;
        let adj_next = j == (i + 1) % n;
        if !adj_prev && geom::segments_cross(prev, cand, a, b) {
            return false;
        }
        if !adj_next && geom::segments_cross(cand, next, a, b) {
            return false;
        }
    }
    true
}
