//! Planarity testing, embedding validity, and minimal nonplanar subgraph
//! extraction, checked against an independent minor-search oracle.

mod common;

use std::collections::BTreeSet;

use euler_merge::planarity::{embed, faces_from_rotation, is_planar, minimal_nonplanar};
use euler_merge::DualGraph;

use common::{planar_oracle, random_system, XorShift64};

// -------------------------------------------------------------------------
// Named graphs
// -------------------------------------------------------------------------

fn complete(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn complete_bipartite(a: usize, b: usize) -> Vec<(usize, usize)> {
    (0..a)
        .flat_map(|i| (0..b).map(move |j| (i, a + j)))
        .collect()
}

/// Replaces every edge by a path through one fresh vertex.
fn subdivide_all(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<(usize, usize)>) {
    let mut out = Vec::new();
    let mut next = n;
    for &(u, v) in edges {
        out.push((u, next));
        out.push((next, v));
        next += 1;
    }
    (next, out)
}

#[test]
fn classifies_named_graphs() {
    assert!(is_planar(4, &complete(4)));
    assert!(!is_planar(5, &complete(5)));
    assert!(!is_planar(6, &complete_bipartite(3, 3)));
    assert!(!is_planar(7, &complete(7)));

    // K5 and K3,3 minus any single edge are planar.
    let k5 = complete(5);
    for skip in 0..k5.len() {
        let rest: Vec<_> = k5
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, &e)| e)
            .collect();
        assert!(is_planar(5, &rest));
    }
    let k33 = complete_bipartite(3, 3);
    for skip in 0..k33.len() {
        let rest: Vec<_> = k33
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, &e)| e)
            .collect();
        assert!(is_planar(6, &rest));
    }

    // Subdivisions preserve nonplanarity.
    let (n5, s5) = subdivide_all(5, &complete(5));
    assert!(!is_planar(n5, &s5));
    let (n33, s33) = subdivide_all(6, &complete_bipartite(3, 3));
    assert!(!is_planar(n33, &s33));

    // Petersen graph.
    let petersen: Vec<(usize, usize)> = vec![
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0),
        (5, 7),
        (7, 9),
        (9, 6),
        (6, 8),
        (8, 5),
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 8),
        (4, 9),
    ];
    assert!(!is_planar(10, &petersen));

    // Cube and octahedron are planar, as is a 3x3 grid.
    let cube: Vec<(usize, usize)> = vec![
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 0),
        (4, 5),
        (5, 6),
        (6, 7),
        (7, 4),
        (0, 4),
        (1, 5),
        (2, 6),
        (3, 7),
    ];
    assert!(is_planar(8, &cube));
    let octahedron: Vec<(usize, usize)> = vec![
        (0, 2),
        (0, 3),
        (0, 4),
        (0, 5),
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 4),
        (4, 3),
        (3, 5),
        (5, 2),
    ];
    assert!(is_planar(6, &octahedron));
    let mut grid = Vec::new();
    for r in 0..3 {
        for c in 0..3 {
            if c + 1 < 3 {
                grid.push((3 * r + c, 3 * r + c + 1));
            }
            if r + 1 < 3 {
                grid.push((3 * r + c, 3 * (r + 1) + c));
            }
        }
    }
    assert!(is_planar(9, &grid));

    // Disconnected graphs are planar iff every component is.
    let mut two_k4: Vec<(usize, usize)> = complete(4);
    two_k4.extend(complete(4).iter().map(|&(u, v)| (u + 4, v + 4)));
    assert!(is_planar(8, &two_k4));
    let mut k5_and_k4: Vec<(usize, usize)> = complete(5);
    k5_and_k4.extend(complete(4).iter().map(|&(u, v)| (u + 5, v + 5)));
    assert!(!is_planar(9, &k5_and_k4));

    assert!(is_planar(0, &[]));
    assert!(is_planar(3, &[]));
}

/// Random graphs for the oracle comparison: Erdős–Rényi style plus every
/// corpus dual graph small enough for the brute-force search.
fn oracle_corpus() -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    let mut rng = XorShift64::new(0x9a11);
    for _ in 0..300 {
        let n = 4 + rng.below(6);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.chance(2, 5) {
                    edges.push((i, j));
                }
            }
        }
        out.push((n, edges));
    }
    let mut seen = BTreeSet::new();
    let mut duals = 0;
    while duals < 150 {
        let system = random_system(&mut rng, 6, 12);
        let (g, _) = DualGraph::from_system(&system);
        let (verts, edges) = g.index_graph();
        if verts.len() > 9 || !seen.insert((verts.len(), edges.clone())) {
            continue;
        }
        out.push((verts.len(), edges));
        duals += 1;
    }
    out
}

#[test]
fn agrees_with_minor_search_oracle() {
    let mut nonplanar_seen = 0;
    for (n, edges) in oracle_corpus() {
        let got = is_planar(n, &edges);
        let expected = planar_oracle(n, &edges);
        assert_eq!(got, expected, "disagreement on n={n} edges={edges:?}");
        if !expected {
            nonplanar_seen += 1;
        }
    }
    assert!(
        nonplanar_seen > 20,
        "corpus too easy: {nonplanar_seen} nonplanar"
    );
}

#[test]
fn extracted_subgraphs_are_nonplanar_and_edge_minimal() {
    let mut rng = XorShift64::new(0x517e);
    let mut tested = 0;
    while tested < 60 {
        let n = 5 + rng.below(8);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.chance(1, 2) {
                    edges.push((i, j));
                }
            }
        }
        if is_planar(n, &edges) {
            continue;
        }
        tested += 1;
        let core = minimal_nonplanar(n, &edges);
        let all: BTreeSet<(usize, usize)> =
            edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        for &(u, v) in &core {
            assert!(
                all.contains(&(u.min(v), u.max(v))),
                "witness edge not in graph"
            );
        }
        assert!(!is_planar(n, &core), "witness must be nonplanar");
        for skip in 0..core.len() {
            let rest: Vec<_> = core
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &e)| e)
                .collect();
            assert!(
                is_planar(n, &rest),
                "witness not edge-minimal: still nonplanar without {:?}",
                core[skip]
            );
        }
    }
}

/// Every embedding must use each directed edge exactly once across all
/// face walks and satisfy Euler's formula per connected component.
fn assert_embedding_valid(n: usize, edges: &[(usize, usize)]) {
    let emb = embed(n, edges).expect("graph is planar");
    for v in 0..n {
        let from_edges: BTreeSet<usize> = edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        let in_rotation: BTreeSet<usize> = emb.rotation[v].iter().copied().collect();
        assert_eq!(
            in_rotation, from_edges,
            "rotation at {v} is not its neighbor set"
        );
        assert_eq!(
            emb.rotation[v].len(),
            from_edges.len(),
            "duplicate in rotation"
        );
    }

    let mut directed: BTreeSet<(usize, usize)> = BTreeSet::new();
    for face in &emb.faces {
        if face.len() == 1 {
            continue;
        }
        for i in 0..face.len() {
            let e = (face[i], face[(i + 1) % face.len()]);
            assert!(directed.insert(e), "directed edge {e:?} in two face walks");
        }
    }
    assert_eq!(directed.len(), 2 * edges.len());

    // Euler's formula per component.
    let mut comp = vec![usize::MAX; n];
    let mut n_comp = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = n_comp;
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for &(a, b) in edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if comp[w] == usize::MAX {
                    comp[w] = n_comp;
                    queue.push(w);
                }
            }
        }
        n_comp += 1;
    }
    for c in 0..n_comp {
        let vs = comp.iter().filter(|&&x| x == c).count();
        let es = edges.iter().filter(|&&(a, _)| comp[a] == c).count();
        let fs = emb.faces.iter().filter(|f| comp[f[0]] == c).count();
        assert_eq!(vs + fs, es + 2, "Euler's formula fails on component {c}");
    }
}

#[test]
fn embeddings_are_valid_on_random_planar_graphs() {
    let mut rng = XorShift64::new(0xe3b3);
    let mut tested = 0;
    while tested < 150 {
        let system = random_system(&mut rng, 6, 12);
        let (g, _) = DualGraph::from_system(&system);
        let (verts, edges) = g.index_graph();
        if !is_planar(verts.len(), &edges) {
            continue;
        }
        tested += 1;
        assert_embedding_valid(verts.len(), &edges);
    }
    // A few named planar graphs too.
    assert_embedding_valid(4, &complete(4));
    assert_embedding_valid(
        8,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
        ],
    );
}

#[test]
fn embedding_is_deterministic() {
    let (g, _) = DualGraph::from_system(&common::load_fixture("movies"));
    let (verts, edges) = g.index_graph();
    let a = embed(verts.len(), &edges).map(|e| e.rotation);
    let b = embed(verts.len(), &edges).map(|e| e.rotation);
    assert_eq!(a, b);
}

#[test]
fn face_walks_follow_the_rotation() {
    // Triangle: one rotation system, two faces (inside and outside).
    let rotation = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    let faces = faces_from_rotation(3, &rotation);
    assert_eq!(faces.len(), 2);
    for face in &faces {
        assert_eq!(face.len(), 3);
    }
}
