//! Shared helpers for the integration tests: a deterministic RNG, a random
//! set-system corpus, fixture loading, and planarity plus geometry oracles
//! implemented independently of the library's own code so that its laws are
//! checked against a second opinion.
#![allow(dead_code)]

use std::collections::BTreeSet;

use euler_merge::{DualGraph, Layout, SetSystem};

/// Minimal xorshift64* generator: the tests need reproducible corpora, not
/// statistical quality.
pub struct XorShift64(u64);

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        XorShift64(seed | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform value in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }
}

/// Random set system with up to `max_sets` sets over up to `max_elements`
/// elements. Every set is guaranteed nonempty.
pub fn random_system(rng: &mut XorShift64, max_sets: usize, max_elements: usize) -> SetSystem {
    let names = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let m = 1 + rng.below(max_sets);
    let u = 1 + rng.below(max_elements);
    let mut sets: Vec<(String, Vec<String>)> = Vec::new();
    for label in names.iter().take(m) {
        let mut elements: Vec<String> = Vec::new();
        for e in 0..u {
            if rng.chance(2, 5) {
                elements.push(format!("e{e}"));
            }
        }
        if elements.is_empty() {
            elements.push(format!("e{}", rng.below(u)));
        }
        sets.push((label.to_string(), elements));
    }
    SetSystem::new(sets).expect("generated systems are valid")
}

/// Loads one of the bundled datasets by stem name.
pub fn load_fixture(name: &str) -> SetSystem {
    let path = format!(
        "{}/../cli/fixtures/{name}.lines",
        env!("CARGO_MANIFEST_DIR")
    );
    let text =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading fixture {path}: {e}"));
    SetSystem::parse(&text).expect("fixture parses")
}

pub fn initial_graph(system: &SetSystem) -> DualGraph {
    DualGraph::from_system(system).0
}

// -------------------------------------------------------------------------
// Independent planarity oracle: reduce the graph (minor-safe operations
// only), then search for K5 / K3,3 minors by enumerating partitions into
// connected branch sets. Valid by Wagner's theorem.
// -------------------------------------------------------------------------

#[derive(Clone)]
struct SimpleGraph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u != v {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        SimpleGraph { n, adj }
    }

    /// Deletes isolated and pendant vertices and suppresses degree-2
    /// vertices; none of these can create or destroy a K5/K3,3 minor.
    fn reduce(&mut self) {
        loop {
            let mut changed = false;
            for v in 0..self.n {
                match self.adj[v].len() {
                    1 => {
                        let u = *self.adj[v].iter().next().unwrap();
                        self.adj[u].remove(&v);
                        self.adj[v].clear();
                        changed = true;
                    }
                    2 => {
                        let mut it = self.adj[v].iter();
                        let a = *it.next().unwrap();
                        let b = *it.next().unwrap();
                        self.adj[a].remove(&v);
                        self.adj[b].remove(&v);
                        self.adj[v].clear();
                        if a != b {
                            self.adj[a].insert(b);
                            self.adj[b].insert(a);
                        }
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn live_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.adj[v].is_empty()).collect()
    }

    fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }
}

/// Searches for a minor with `blocks` branch sets; `check` receives the
/// block adjacency matrix once every block is connected and decides
/// whether the target pattern is present.
fn has_minor(g: &SimpleGraph, blocks: usize, check: &dyn Fn(&[Vec<bool>]) -> bool) -> bool {
    let verts = g.live_vertices();
    let mut assignment: Vec<Option<usize>> = vec![None; g.n];

    fn blocks_connected(g: &SimpleGraph, assignment: &[Option<usize>], blocks: usize) -> bool {
        for b in 0..blocks {
            let members: Vec<usize> = (0..g.n).filter(|&v| assignment[v] == Some(b)).collect();
            if members.is_empty() {
                return false;
            }
            let mut seen = BTreeSet::from([members[0]]);
            let mut queue = vec![members[0]];
            while let Some(v) = queue.pop() {
                for &w in &g.adj[v] {
                    if assignment[w] == Some(b) && seen.insert(w) {
                        queue.push(w);
                    }
                }
            }
            if seen.len() != members.len() {
                return false;
            }
        }
        true
    }

    fn rec(
        g: &SimpleGraph,
        verts: &[usize],
        i: usize,
        used: usize,
        blocks: usize,
        assignment: &mut Vec<Option<usize>>,
        check: &dyn Fn(&[Vec<bool>]) -> bool,
    ) -> bool {
        if used + (verts.len() - i) < blocks {
            return false;
        }
        if i == verts.len() {
            if used != blocks || !blocks_connected(g, assignment, blocks) {
                return false;
            }
            let mut madj = vec![vec![false; blocks]; blocks];
            for v in 0..g.n {
                if let Some(a) = assignment[v] {
                    for &w in &g.adj[v] {
                        if let Some(b) = assignment[w] {
                            if a != b {
                                madj[a][b] = true;
                            }
                        }
                    }
                }
            }
            return check(&madj);
        }
        let v = verts[i];
        if rec(g, verts, i + 1, used, blocks, assignment, check) {
            return true;
        }
        // New blocks open in index order, killing permutation symmetry.
        for b in 0..(used + 1).min(blocks) {
            assignment[v] = Some(b);
            let next_used = used.max(b + 1);
            if rec(g, verts, i + 1, next_used, blocks, assignment, check) {
                assignment[v] = None;
                return true;
            }
        }
        assignment[v] = None;
        false
    }

    rec(g, &verts, 0, 0, blocks, &mut assignment, check)
}

/// Planarity by Wagner's theorem, for small graphs only.
pub fn planar_oracle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut g = SimpleGraph::new(n, edges);
    g.reduce();
    let live = g.live_vertices().len();
    if live <= 4 {
        return true;
    }
    if g.edge_count() > 3 * live - 6 {
        return false;
    }
    let k5 = |madj: &[Vec<bool>]| (0..5).all(|a| (0..5).all(|b| a == b || madj[a][b]));
    let k33 = |madj: &[Vec<bool>]| {
        // Block 0's side plus two of the remaining five.
        for x in 1..6 {
            for y in x + 1..6 {
                let side_a = [0, x, y];
                let side_b: Vec<usize> = (1..6).filter(|v| *v != x && *v != y).collect();
                if side_a.iter().all(|&a| side_b.iter().all(|&b| madj[a][b])) {
                    return true;
                }
            }
        }
        false
    };
    !has_minor(&g, 5, &k5) && !has_minor(&g, 6, &k33)
}

pub type Pt = (f64, f64);

/// Twice the signed area of triangle abc; positive when counterclockwise.
pub fn orient(a: Pt, b: Pt, c: Pt) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Strict proper crossing of open segments: the segments meet at a single
/// interior point of both.
pub fn proper_cross(p1: Pt, p2: Pt, p3: Pt, p4: Pt) -> bool {
    let o1 = orient(p1, p2, p3);
    let o2 = orient(p1, p2, p4);
    let o3 = orient(p3, p4, p1);
    let o4 = orient(p3, p4, p2);
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Even-odd point-in-polygon by horizontal ray cast, half-open in y so a
/// ray through a vertex is counted once.
pub fn point_in_polygon_oracle(poly: &[Pt], p: Pt) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.1 > p.1) != (b.1 > p.1) {
            let x = a.0 + (p.1 - a.1) / (b.1 - a.1) * (b.0 - a.0);
            if x > p.0 {
                inside = !inside;
            }
        }
    }
    inside
}

/// The closed polygon's segments, including the wrap-around one.
pub fn closed_segments(points: &[Pt]) -> Vec<(Pt, Pt)> {
    let n = points.len();
    (0..n).map(|i| (points[i], points[(i + 1) % n])).collect()
}

/// True when any two non-adjacent segments of the closed polyline cross.
pub fn polyline_self_intersects(points: &[Pt]) -> bool {
    let segs = closed_segments(points);
    let n = segs.len();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if proper_cross(segs[i].0, segs[i].1, segs[j].0, segs[j].1) {
                return true;
            }
        }
    }
    false
}

/// Number of proper crossings between segment ab and the closed polyline.
pub fn segment_curve_crossings(a: Pt, b: Pt, points: &[Pt]) -> usize {
    closed_segments(points)
        .iter()
        .filter(|(c, d)| proper_cross(a, b, *c, *d))
        .count()
}

/// Number of proper crossings between pairs of dual-graph edges that share
/// no endpoint, drawn as straight segments at the layout's positions.
pub fn layout_crossings(g: &DualGraph, layout: &Layout) -> usize {
    let (verts, edges) = g.index_graph();
    let pos: Vec<Pt> = verts.iter().map(|v| layout.positions[v]).collect();
    let mut count = 0;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if proper_cross(pos[a], pos[b], pos[c], pos[d]) {
                count += 1;
            }
        }
    }
    count
}

/// Minimal well-formedness check for the emitted SVG: tags balance, and
/// the document has a single svg root.
pub fn assert_well_formed_xml(text: &str) {
    let mut stack: Vec<String> = Vec::new();
    let mut roots = 0;
    let mut rest = text;
    while let Some(start) = rest.find('<') {
        rest = &rest[start + 1..];
        let end = rest.find('>').expect("unterminated tag");
        let tag = &rest[..end];
        rest = &rest[end + 1..];
        if tag.starts_with('?') || tag.starts_with('!') {
            continue;
        }
        if let Some(name) = tag.strip_prefix('/') {
            let open = stack
                .pop()
                .unwrap_or_else(|| panic!("stray closing tag </{name}>"));
            assert_eq!(open, name.trim(), "mismatched closing tag");
            continue;
        }
        let name: String = tag
            .chars()
            .take_while(|c| !c.is_whitespace() && *c != '/')
            .collect();
        if stack.is_empty() {
            roots += 1;
        }
        if !tag.ends_with('/') {
            stack.push(name);
        }
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
    assert_eq!(roots, 1, "document must have exactly one root");
}
