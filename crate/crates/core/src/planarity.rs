//! Planarity testing, combinatorial embedding, and extraction of minimal
//! nonplanar witnesses.
//!
//! The embedder follows the classical face-by-face insertion scheme: each
//! biconnected block is grown from an initial cycle by repeatedly routing a
//! path of some unembedded fragment through a face that contains all of the
//! fragment's attachment vertices. A fragment with no admissible face
//! certifies nonplanarity; a fragment with exactly one admissible face is
//! forced and embedded first. Block embeddings are merged at cut vertices,
//! and the faces of the whole graph are traced from the combined rotation
//! system. Every embedding is validated against the Euler formula per
//! connected component before being returned.
//!
//! Witness extraction works by edge deletion: scanning edges in canonical
//! order, an edge is dropped whenever the rest stays nonplanar. What
//! survives is an edge-minimal nonplanar subgraph, i.e. a subdivision of
//! one of the two forbidden minors.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A combinatorial embedding of a planar graph.
#[derive(Debug, Clone)]
pub struct Embedding {
    /// For each vertex, its neighbors in cyclic order.
    pub rotation: Vec<Vec<usize>>,
    /// Face walks: each face lists the tail vertices of its directed
    /// boundary edges (an isolated vertex yields the one-vertex walk).
    pub faces: Vec<Vec<usize>>,
}

impl Embedding {
    /// The neighbor that follows `from` in the cyclic order around `at`.
    pub fn next_around(&self, at: usize, from: usize) -> usize {
        let rot = &self.rotation[at];
        let pos = rot
            .iter()
            .position(|&w| w == from)
            .expect("from must be a neighbor of at");
        rot[(pos + 1) % rot.len()]
    }
}

/// Tests planarity.
pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    embed(n, edges).is_some()
}

/// Computes a combinatorial embedding, or `None` when the graph is not
/// planar. Deterministic for a fixed input.
pub fn embed(n: usize, edges: &[(usize, usize)]) -> Option<Embedding> {
    embed_with_variant(n, edges, 0)
}

/// Like [`embed`] but `variant` rotates the tie-breaking among equally
/// valid fragment and face choices, producing a different (still valid)
/// embedding. Useful when a caller wants to retry with another face
/// structure.
pub fn embed_with_variant(n: usize, edges: &[(usize, usize)], variant: usize) -> Option<Embedding> {
    let edges = normalize_edges(n, edges);
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(n, &edges) {
        if block.len() == 1 {
            let (u, v) = block[0];
            rotation[u].push(v);
            rotation[v].push(u);
            continue;
        }
        let rot = embed_block(&block, variant)?;
        for (v, order) in rot {
            rotation[v].extend(order);
        }
    }
    let faces = trace_faces(n, &rotation);
    validate_euler(n, &edges, &rotation, &faces);
    Some(Embedding { rotation, faces })
}

/// Edge-deletion extraction of an edge-minimal nonplanar subgraph. The
/// input must be nonplanar; edges are scanned in the order given.
pub fn minimal_nonplanar(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let edges = normalize_edges(n, edges);
    assert!(
        !is_planar(n, &edges),
        "minimal_nonplanar requires a nonplanar graph"
    );
    let mut present: Vec<bool> = vec![true; edges.len()];
    for i in 0..edges.len() {
        present[i] = false;
        let remaining: Vec<(usize, usize)> = edges
            .iter()
            .zip(&present)
            .filter(|(_, &p)| p)
            .map(|(&e, _)| e)
            .collect();
        if is_planar(n, &remaining) {
            present[i] = true;
        }
    }
    edges
        .iter()
        .zip(&present)
        .filter(|(_, &p)| p)
        .map(|(&e, _)| e)
        .collect()
}

fn normalize_edges(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    let mut seen = BTreeSet::new();
    for &(a, b) in edges {
        assert!(a < n && b < n, "edge endpoint out of range");
        assert!(a != b, "self-loops are not supported");
        let e = (a.min(b), a.max(b));
        if seen.insert(e) {
            out.push(e);
        }
    }
    out
}

/// Biconnected blocks via the lowpoint algorithm; each block is a list of
/// edges. Bridges come out as single-edge blocks; isolated vertices belong
/// to no block.
fn blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let adj = adjacency(n, edges);
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out: Vec<Vec<(usize, usize)>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // Iterative DFS: (vertex, parent, next neighbor index to try).
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (u, _, _)) = stack.last_mut() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        // u is a cut vertex (or the root): pop one block.
                        let mut block = Vec::new();
                        while let Some(&(a, b)) = edge_stack.last() {
                            if disc[a] >= disc[v] || (a == u && b == v) {
                                block.push((a.min(b), a.max(b)));
                                edge_stack.pop();
                                if a == u && b == v {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        block.sort();
                        out.push(block);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// One unembedded piece relative to the partial embedding `H`: either a
/// single chord between embedded vertices, or a connected component of
/// unembedded vertices plus all edges touching it.
struct Fragment {
    edges: Vec<(usize, usize)>,
    attachments: BTreeSet<usize>,
    interior: BTreeSet<usize>,
}

/// Embeds one biconnected block (at least two edges, no cut vertices) and
/// returns the cyclic neighbor order per block vertex.
fn embed_block(block: &[(usize, usize)], variant: usize) -> Option<BTreeMap<usize, Vec<usize>>> {
    let verts: BTreeSet<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    let block_edges: BTreeSet<(usize, usize)> = block.iter().copied().collect();
    let adj = {
        let mut m: BTreeMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in block {
            m.get_mut(&a).unwrap().push(b);
            m.get_mut(&b).unwrap().push(a);
        }
        for list in m.values_mut() {
            list.sort_unstable();
        }
        m
    };

    let cycle = find_cycle(&adj);
    let mut h_verts: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut h_edges: BTreeSet<(usize, usize)> = cycle_edges(&cycle).collect();
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while h_edges.len() < block_edges.len() {
        let fragments = find_fragments(&block_edges, &adj, &h_verts, &h_edges);
        // Admissible faces per fragment: those containing every attachment.
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|f| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(_, face)| {
                        let fv: BTreeSet<usize> = face.iter().copied().collect();
                        f.attachments.iter().all(|a| fv.contains(a))
                    })
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let min_count = admissible.iter().map(|a| a.len()).min().unwrap();
        if min_count == 0 {
            return None;
        }
        let tied: Vec<usize> = (0..fragments.len())
            .filter(|&i| admissible[i].len() == min_count)
            .collect();
        let pick = tied[variant % tied.len()];
        let face_idx = admissible[pick][variant % admissible[pick].len()];
        let path = fragment_path(&fragments[pick]);

        split_face(&mut faces, face_idx, &path);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path[1..path.len() - 1] {
            h_verts.insert(v);
        }
    }

    Some(rotation_from_faces(&faces, &verts))
}

/// Finds some cycle in a biconnected block by walking from vertex to
/// vertex, never doubling back, until the walk revisits itself. Every
/// vertex in such a block has degree at least two, so the walk never gets
/// stuck; the revisited suffix is the cycle.
fn find_cycle(adj: &BTreeMap<usize, Vec<usize>>) -> Vec<usize> {
    let start = *adj.keys().next().unwrap();
    let mut path = vec![start];
    let mut on_path: BTreeMap<usize, usize> = BTreeMap::from([(start, 0)]);
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = *adj[&cur]
            .iter()
            .find(|&&w| w != prev)
            .expect("block vertices have degree at least two");
        if let Some(&pos) = on_path.get(&next) {
            return path[pos..].to_vec();
        }
        on_path.insert(next, path.len());
        path.push(next);
        prev = cur;
        cur = next;
    }
}

fn cycle_edges(cycle: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..cycle.len()).map(|i| {
        let a = cycle[i];
        let b = cycle[(i + 1) % cycle.len()];
        (a.min(b), a.max(b))
    })
}

fn find_fragments(
    block_edges: &BTreeSet<(usize, usize)>,
    adj: &BTreeMap<usize, Vec<usize>>,
    h_verts: &BTreeSet<usize>,
    h_edges: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    // Chords: unembedded edges with both endpoints already embedded.
    for &(a, b) in block_edges {
        if !h_edges.contains(&(a, b)) && h_verts.contains(&a) && h_verts.contains(&b) {
            out.push(Fragment {
                edges: vec![(a, b)],
                attachments: BTreeSet::from([a, b]),
                interior: BTreeSet::new(),
            });
        }
    }
    // Components of unembedded vertices, with their attachment edges.
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &start in adj.keys() {
        if h_verts.contains(&start) || seen.contains(&start) {
            continue;
        }
        let mut interior = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            interior.insert(v);
            for &w in &adj[&v] {
                if !h_verts.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        let mut edges = Vec::new();
        let mut attachments = BTreeSet::new();
        for &(a, b) in block_edges {
            let ia = interior.contains(&a);
            let ib = interior.contains(&b);
            if ia || ib {
                edges.push((a, b));
                if !ia {
                    attachments.insert(a);
                }
                if !ib {
                    attachments.insert(b);
                }
            }
        }
        out.push(Fragment {
            edges,
            attachments,
            interior,
        });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(f: &Fragment) -> Vec<usize> {
    if f.interior.is_empty() {
        let (a, b) = f.edges[0];
        return vec![a, b];
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &f.edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    let start = *f.attachments.iter().next().unwrap();
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    let mut seen = BTreeSet::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            if seen.contains(&w) {
                continue;
            }
            seen.insert(w);
            parent.insert(w, v);
            if f.attachments.contains(&w) {
                let mut path = vec![w];
                let mut cur = w;
                while cur != start {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
            if f.interior.contains(&w) {
                queue.push_back(w);
            }
        }
    }
    unreachable!("a fragment in a biconnected block joins two attachments")
}

/// Splits the face at `face_idx` along `path`, whose endpoints lie on the
/// face. Faces stay simple cycles throughout block embedding.
fn split_face(faces: &mut Vec<Vec<usize>>, face_idx: usize, path: &[usize]) {
    let face = faces[face_idx].clone();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face
        .iter()
        .position(|&v| v == a)
        .expect("path start on face");
    let j = face.iter().position(|&v| v == b).expect("path end on face");
    let k = face.len();
    let inner: Vec<usize> = path[1..path.len() - 1].to_vec();

    // Walk the face from a to b, return along the path.
    let mut face1 = Vec::new();
    let mut t = i;
    loop {
        face1.push(face[t]);
        if t == j {
            break;
        }
        t = (t + 1) % k;
    }
    face1.extend(inner.iter().rev().copied());

    // Walk the face from b to a, return along the path.
    let mut face2 = Vec::new();
    let mut t = j;
    loop {
        face2.push(face[t]);
        if t == i {
            break;
        }
        t = (t + 1) % k;
    }
    face2.extend(inner.iter().copied());

    faces[face_idx] = face1;
    faces.push(face2);
}

/// Recovers the cyclic neighbor order at each vertex from a face system in
/// which every directed edge occurs exactly once.
fn rotation_from_faces(
    faces: &[Vec<usize>],
    verts: &BTreeSet<usize>,
) -> BTreeMap<usize, Vec<usize>> {
    // For each corner (prev -> v -> next), record next = succ[v][prev].
    let mut succ: BTreeMap<usize, BTreeMap<usize, usize>> =
        verts.iter().map(|&v| (v, BTreeMap::new())).collect();
    for face in faces {
        let k = face.len();
        for t in 0..k {
            let prev = face[(t + k - 1) % k];
            let v = face[t];
            let next = face[(t + 1) % k];
            let old = succ.get_mut(&v).unwrap().insert(prev, next);
            assert!(old.is_none(), "directed edge repeated across faces");
        }
    }
    let mut rotation = BTreeMap::new();
    for (&v, map) in &succ {
        let start = *map.keys().next().unwrap();
        let mut order = vec![start];
        let mut cur = map[&start];
        while cur != start {
            order.push(cur);
            cur = map[&cur];
        }
        assert_eq!(order.len(), map.len(), "rotation must be a single cycle");
        rotation.insert(v, order);
    }
    rotation
}

/// Traces all faces of a graph from a rotation system: faces are the
/// orbits of the map sending a directed edge `(u, v)` to `(v, w)` where `w`
/// follows `u` in the cyclic order around `v`. Isolated vertices each
/// contribute a single one-vertex face.
pub fn faces_from_rotation(n: usize, rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    trace_faces(n, rotation)
}

fn trace_faces(n: usize, rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut faces = Vec::new();
    let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
    for u in 0..n {
        if rotation[u].is_empty() {
            faces.push(vec![u]);
            continue;
        }
        for &v in &rotation[u] {
            if visited.contains(&(u, v)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                visited.insert((a, b));
                walk.push(a);
                let next = next_in_rotation(rotation, b, a);
                a = b;
                b = next;
                if (a, b) == (u, v) {
                    break;
                }
            }
            faces.push(walk);
        }
    }
    faces
}

fn next_in_rotation(rotation: &[Vec<usize>], at: usize, from: usize) -> usize {
    let rot = &rotation[at];
    let pos = rot
        .iter()
        .position(|&w| w == from)
        .expect("from must be a neighbor of at");
    rot[(pos + 1) % rot.len()]
}

/// Checks the Euler formula for every connected component; panics on any
/// inconsistency, since the embedder must never emit an invalid embedding.
fn validate_euler(
    n: usize,
    edges: &[(usize, usize)],
    rotation: &[Vec<usize>],
    faces: &[Vec<usize>],
) {
    let mut comp = vec![usize::MAX; n];
    let adj = adjacency(n, edges);
    let mut n_comp = 0usize;
    for v in 0..n {
        if comp[v] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([v]);
        comp[v] = n_comp;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if comp[w] == usize::MAX {
                    comp[w] = n_comp;
                    queue.push_back(w);
                }
            }
        }
        n_comp += 1;
    }
    let mut v_count = vec![0usize; n_comp];
    let mut e_count = vec![0usize; n_comp];
    let mut f_count = vec![0usize; n_comp];
    for v in 0..n {
        v_count[comp[v]] += 1;
    }
    for &(a, _) in edges {
        e_count[comp[a]] += 1;
    }
    for face in faces {
        f_count[comp[face[0]]] += 1;
    }
    for c in 0..n_comp {
        assert_eq!(
            v_count[c] + f_count[c],
            e_count[c] + 2,
            "embedding violates the Euler formula"
        );
    }
    let degree_sum: usize = rotation.iter().map(|r| r.len()).sum();
    assert_eq!(
        degree_sum,
        2 * edges.len(),
        "rotation system degree mismatch"
    );
}
