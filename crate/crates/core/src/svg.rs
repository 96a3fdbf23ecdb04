//! Standalone SVG 1.1 rendering for diagrams and for intermediate dual
//! graphs.
//!
//! Output is fully deterministic: coordinates are formatted with fixed
//! precision and all collections iterate in canonical order, so the same
//! input and seed always produce byte-identical documents.

use std::fmt::Write as _;

use crate::curves::{Curve, Diagram, PALETTE};
use crate::dual_graph::DualGraph;
use crate::geom::Point;
use crate::layout::Layout;

/// Canvas size in pixels.
pub type Canvas = (u32, u32);

fn fmt(v: f64) -> String {
    let v = if v.abs() < 0.005 { 0.0 } else { v };
    format!("{v:.2}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Maps world coordinates into the canvas with a margin, flipping the
/// y-axis into screen orientation.
struct Mapper {
    scale: f64,
    min: Point,
    offset: Point,
    height: f64,
}

impl Mapper {
    fn new(points: impl Iterator<Item = Point>, canvas: Canvas) -> Mapper {
        let (w, h) = (canvas.0 as f64, canvas.1 as f64);
        let margin = 0.05 * w.min(h);
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min.0 = min.0.min(p.0);
            min.1 = min.1.min(p.1);
            max.0 = max.0.max(p.0);
            max.1 = max.1.max(p.1);
        }
        if !min.0.is_finite() {
            min = (0.0, 0.0);
            max = (1.0, 1.0);
        }
        let bw = (max.0 - min.0).max(1e-9);
        let bh = (max.1 - min.1).max(1e-9);
        let scale = ((w - 2.0 * margin) / bw).min((h - 2.0 * margin) / bh);
        let offset = (
            margin + ((w - 2.0 * margin) - bw * scale) / 2.0,
            margin + ((h - 2.0 * margin) - bh * scale) / 2.0,
        );
        Mapper {
            scale,
            min,
            offset,
            height: h,
        }
    }

    fn map(&self, p: Point) -> Point {
        (
            self.offset.0 + (p.0 - self.min.0) * self.scale,
            self.height - (self.offset.1 + (p.1 - self.min.1) * self.scale),
        )
    }
}

fn header(out: &mut String, canvas: Canvas) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = canvas.0,
        h = canvas.1
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##,
        w = canvas.0,
        h = canvas.1
    );
}

fn legend_block(out: &mut String, entries: impl Iterator<Item = (String, String, String)>) {
    let _ = writeln!(
        out,
        r#"<g id="legend" font-family="sans-serif" font-size="12">"#
    );
    for (i, (color, label, detail)) in entries.enumerate() {
        let y = 16 + 18 * i as i32;
        let _ = writeln!(
            out,
            r#"<rect x="10" y="{ry}" width="12" height="12" fill="{color}" fill-opacity="0.5" stroke="{color}"/>"#,
            ry = y - 10
        );
        let text = if detail.is_empty() {
            label
        } else {
            format!("{label}: {detail}")
        };
        let _ = writeln!(
            out,
            r##"<text x="27" y="{y}" fill="#333333">{}</text>"##,
            escape(&text)
        );
    }
    let _ = writeln!(out, "</g>");
}

fn vertex_block(out: &mut String, g: &DualGraph, layout: &Layout, mapper: &Mapper) {
    let _ = writeln!(
        out,
        r#"<g id="zones" font-family="sans-serif" font-size="10">"#
    );
    for label in g.zones().keys() {
        let p = mapper.map(layout.positions[label]);
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="3" fill="#444444"/>"##,
            fmt(p.0),
            fmt(p.1)
        );
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" fill="#333333">{}</text>"##,
            fmt(p.0 + 5.0),
            fmt(p.1 - 5.0),
            escape(&label.to_string())
        );
    }
    let _ = writeln!(out, "</g>");
}

fn curve_path(curve: &Curve, mapper: &Mapper) -> String {
    let mut d = String::new();
    for (i, &p) in curve.points.iter().enumerate() {
        let q = mapper.map(p);
        let cmd = if i == 0 { "M" } else { "L" };
        let _ = write!(d, "{cmd} {} {} ", fmt(q.0), fmt(q.1));
    }
    d.push('Z');
    d
}

fn centroid(points: &[Point]) -> Point {
    let n = points.len().max(1) as f64;
    let sum = points
        .iter()
        .fold((0.0, 0.0), |a, &p| (a.0 + p.0, a.1 + p.1));
    (sum.0 / n, sum.1 / n)
}

/// Renders a finished diagram: the dual graph drawn lightly underneath,
/// one closed translucent path per set curve, a label at each curve's
/// centroid, and a legend mapping every curve to the original sets it
/// stands for.
pub fn emit_svg(g: &DualGraph, diagram: &Diagram, canvas: Canvas) -> String {
    let layout = &diagram.layout;
    let points = layout
        .positions
        .values()
        .copied()
        .chain(diagram.curves.iter().flat_map(|c| c.points.iter().copied()));
    let mapper = Mapper::new(points, canvas);
    let mut out = String::new();
    header(&mut out, canvas);

    let _ = writeln!(out, r##"<g id="edges" stroke="#dddddd" stroke-width="1">"##);
    for (a, b) in g.edges() {
        let p = mapper.map(layout.positions[a]);
        let q = mapper.map(layout.positions[b]);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            fmt(p.0),
            fmt(p.1),
            fmt(q.0),
            fmt(q.1)
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="curves">"#);
    for curve in &diagram.curves {
        let color = &diagram.colors[&curve.set];
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="{color}" fill-opacity="0.12" stroke="{color}" stroke-width="2"/>"#,
            curve_path(curve, &mapper)
        );
    }
    let _ = writeln!(out, "</g>");

    vertex_block(&mut out, g, layout, &mapper);

    let _ = writeln!(
        out,
        r#"<g id="labels" font-family="sans-serif" font-size="14" font-weight="bold" text-anchor="middle">"#
    );
    for curve in &diagram.curves {
        let c = mapper.map(centroid(&curve.points));
        let color = &diagram.colors[&curve.set];
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            fmt(c.0),
            fmt(c.1),
            escape(&curve.set)
        );
    }
    let _ = writeln!(out, "</g>");

    legend_block(
        &mut out,
        diagram.curves.iter().map(|curve| {
            let color = diagram.colors[&curve.set].clone();
            let merged = &diagram.legend[&curve.set];
            let detail = if merged.len() > 1 || merged[0] != curve.set {
                merged.join(", ")
            } else {
                String::new()
            };
            (color, curve.set.clone(), detail)
        }),
    );
    let _ = writeln!(out, "</svg>");
    out
}

/// Renders an intermediate dual graph. Edges whose label still carries
/// several sets are drawn as parallel segments, one per set, side by side
/// with a fixed offset, each in its set's color.
pub fn emit_stage_svg(g: &DualGraph, layout: &Layout, canvas: Canvas) -> String {
    let mapper = Mapper::new(layout.positions.values().copied(), canvas);
    let colors: std::collections::BTreeMap<&String, &str> = g
        .active()
        .iter()
        .enumerate()
        .map(|(i, s)| (s, PALETTE[i % PALETTE.len()]))
        .collect();
    let mut out = String::new();
    header(&mut out, canvas);

    let _ = writeln!(out, r#"<g id="edges" stroke-width="2">"#);
    for e in g.edges() {
        let p = mapper.map(layout.positions[&e.0]);
        let q = mapper.map(layout.positions[&e.1]);
        let label = DualGraph::edge_label(e);
        let k = label.len();
        let d = (q.0 - p.0, q.1 - p.1);
        let len = (d.0 * d.0 + d.1 * d.1).sqrt().max(1e-9);
        let normal = (-d.1 / len, d.0 / len);
        for (i, set) in label.iter().enumerate() {
            let shift = 3.5 * (i as f64 - (k as f64 - 1.0) / 2.0);
            let color = colors.get(set).copied().unwrap_or("#999999");
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}"/>"#,
                fmt(p.0 + normal.0 * shift),
                fmt(p.1 + normal.1 * shift),
                fmt(q.0 + normal.0 * shift),
                fmt(q.1 + normal.1 * shift)
            );
        }
    }
    let _ = writeln!(out, "</g>");

    vertex_block(&mut out, g, layout, &mapper);

    legend_block(
        &mut out,
        g.active().iter().map(|s| {
            let color = colors[s].to_string();
            let merged = &g.provenance()[s];
            let detail = if merged.len() > 1 {
                merged.iter().cloned().collect::<Vec<_>>().join(", ")
            } else {
                String::new()
            };
            (color, s.clone(), detail)
        }),
    );
    let _ = writeln!(out, "</svg>");
    out
}
