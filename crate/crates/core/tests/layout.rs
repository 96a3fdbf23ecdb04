//! Straight-line drawing of the simplified dual graph: crossing-freedom,
//! outer-face placement of the empty zone, determinism, and stability
//! under force-directed refinement.

mod common;

use euler_merge::{euler_merge, planar_layout, refine_layout, DualGraph, SetSystem, ZoneLabel};

use common::{layout_crossings, random_system, XorShift64};

fn finite(layout: &euler_merge::Layout) -> bool {
    layout
        .positions
        .values()
        .all(|p| p.0.is_finite() && p.1.is_finite())
}

#[test]
fn fixture_layouts_are_crossing_free_with_outer_zone_outside() {
    for name in ["movies", "hooker_keith", "twitter", "southern_women"] {
        let r = euler_merge(&common::load_fixture(name));
        let layout = planar_layout(&r.final_graph, 0).unwrap();
        assert!(finite(&layout), "{name}: non-finite coordinates");
        assert_eq!(
            layout_crossings(&r.final_graph, &layout),
            0,
            "{name} crosses"
        );
        assert!(
            layout.faces[layout.outer_face].contains(&ZoneLabel::empty()),
            "{name}: empty zone must lie on the unbounded face"
        );
    }
}

#[test]
fn layout_rejects_nonplanar_graphs() {
    let (g, _) = DualGraph::from_system(&common::load_fixture("hooker_keith"));
    assert!(planar_layout(&g, 0).is_err());
}

#[test]
fn layout_is_deterministic_and_seed_sensitive() {
    let r = euler_merge(&common::load_fixture("movies"));
    let a = planar_layout(&r.final_graph, 42).unwrap();
    let b = planar_layout(&r.final_graph, 42).unwrap();
    assert_eq!(a.positions, b.positions);
    assert_eq!(a.faces, b.faces);
    let c = planar_layout(&r.final_graph, 43).unwrap();
    assert_ne!(a.positions, c.positions, "seed must rotate the drawing");
}

#[test]
fn refinement_preserves_crossing_freedom_through_500_iterations() {
    let r = euler_merge(&common::load_fixture("movies"));
    let mut layout = planar_layout(&r.final_graph, 0).unwrap();

    // One long run...
    let mut long_run = layout.clone();
    refine_layout(&r.final_graph, &mut long_run, 500);
    assert!(finite(&long_run));
    assert_eq!(layout_crossings(&r.final_graph, &long_run), 0);

    // ...and a stepwise run, checking the oracle after every iteration.
    for i in 0..500 {
        refine_layout(&r.final_graph, &mut layout, 1);
        assert_eq!(
            layout_crossings(&r.final_graph, &layout),
            0,
            "crossing appeared at iteration {i}"
        );
    }
}

#[test]
fn refinement_is_safe_on_random_corpus() {
    let mut rng = XorShift64::new(0x1a40);
    for i in 0..60 {
        let system = random_system(&mut rng, 5, 10);
        let r = euler_merge(&system);
        let mut layout = match planar_layout(&r.final_graph, i) {
            Ok(l) => l,
            Err(e) => panic!("layout failed on instance {i}: {e}"),
        };
        assert_eq!(layout_crossings(&r.final_graph, &layout), 0);
        refine_layout(&r.final_graph, &mut layout, 150);
        assert!(finite(&layout));
        assert_eq!(layout_crossings(&r.final_graph, &layout), 0, "instance {i}");
        assert!(
            layout.faces[layout.outer_face].contains(&ZoneLabel::empty()),
            "instance {i}: outer zone left the unbounded face"
        );
    }
}

#[test]
fn disconnected_duals_get_disjoint_component_boxes() {
    // Two sets over the same element produce the two-vertex edgeless dual
    // {} and {a,b}; the outer zone's component must be drawn apart from
    // the other one.
    let system = SetSystem::new(vec![("a", vec!["x"]), ("b", vec!["x"])]).unwrap();
    let r = euler_merge(&system);
    assert_eq!(r.final_graph.zone_count(), 2);
    assert!(r.final_graph.edges().is_empty());
    let layout = planar_layout(&r.final_graph, 0).unwrap();
    let p0 = layout.positions[&ZoneLabel::empty()];
    let p1 = layout.positions[&ZoneLabel::from_iter(["a", "b"])];
    assert!(finite(&layout));
    assert!(
        (p0.0 - p1.0).abs() + (p0.1 - p1.1).abs() > 0.5,
        "components drawn on top of each other"
    );

    // A larger split: a connected block plus a separate two-set island.
    let system = SetSystem::new(vec![
        ("a", vec!["x", "y"]),
        ("b", vec!["y"]),
        ("c", vec!["z"]),
        ("d", vec!["z"]),
    ])
    .unwrap();
    let r = euler_merge(&system);
    let layout = planar_layout(&r.final_graph, 0).unwrap();
    assert_eq!(layout_crossings(&r.final_graph, &layout), 0);

    // Bounding boxes of the connected components must not overlap.
    let (verts, edges) = r.final_graph.index_graph();
    let comps = euler_merge::dual_graph::components(
        &verts,
        &edges
            .iter()
            .map(|&(u, v)| euler_merge::dual_graph::edge(verts[u].clone(), verts[v].clone()))
            .collect::<Vec<_>>(),
    );
    let boxes: Vec<(f64, f64, f64, f64)> = comps
        .iter()
        .map(|comp| {
            let ps: Vec<(f64, f64)> = comp.iter().map(|z| layout.positions[z]).collect();
            let xs: Vec<f64> = ps.iter().map(|p| p.0).collect();
            let ys: Vec<f64> = ps.iter().map(|p| p.1).collect();
            (
                xs.iter().cloned().fold(f64::INFINITY, f64::min),
                ys.iter().cloned().fold(f64::INFINITY, f64::min),
                xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            )
        })
        .collect();
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            let (ax0, ay0, ax1, ay1) = boxes[i];
            let (bx0, by0, bx1, by1) = boxes[j];
            let overlap = ax0 <= bx1 && bx0 <= ax1 && ay0 <= by1 && by0 <= ay1;
            assert!(!overlap, "component boxes {i} and {j} overlap");
        }
    }
}

#[test]
fn tiny_graphs_lay_out() {
    // Single set: path {} - {a}.
    let system = SetSystem::new(vec![("a", vec!["x"])]).unwrap();
    let r = euler_merge(&system);
    let layout = planar_layout(&r.final_graph, 0).unwrap();
    assert_eq!(layout.positions.len(), 2);
    assert!(finite(&layout));

    // Nested sets: path {} - {a} - {a,b}.
    let system = SetSystem::new(vec![("a", vec!["x", "y"]), ("b", vec!["y"])]).unwrap();
    let r = euler_merge(&system);
    let layout = planar_layout(&r.final_graph, 0).unwrap();
    assert_eq!(layout.positions.len(), 3);
    assert_eq!(layout_crossings(&r.final_graph, &layout), 0);
}

#[test]
fn faces_of_the_layout_match_its_rotation() {
    // The reported face walks must use each directed edge exactly once.
    let r = euler_merge(&common::load_fixture("southern_women"));
    let layout = planar_layout(&r.final_graph, 0).unwrap();
    let mut directed: std::collections::BTreeSet<(ZoneLabel, ZoneLabel)> =
        std::collections::BTreeSet::new();
    for face in &layout.faces {
        if face.len() == 1 {
            continue;
        }
        for i in 0..face.len() {
            let e = (face[i].clone(), face[(i + 1) % face.len()].clone());
            assert!(directed.insert(e.clone()), "directed edge {e:?} twice");
        }
    }
    assert_eq!(directed.len(), 2 * r.final_graph.edges().len());
}
