//! Small planar geometry helpers shared by layout, curve routing, and
//! rendering. Everything works on `(f64, f64)` points.

pub type Point = (f64, f64);

pub fn sub(a: Point, b: Point) -> Point {
    (a.0 - b.0, a.1 - b.1)
}

pub fn add(a: Point, b: Point) -> Point {
    (a.0 + b.0, a.1 + b.1)
}

pub fn scale(a: Point, s: f64) -> Point {
    (a.0 * s, a.1 * s)
}

pub fn norm(a: Point) -> f64 {
    (a.0 * a.0 + a.1 * a.1).sqrt()
}

pub fn dist(a: Point, b: Point) -> f64 {
    norm(sub(a, b))
}

/// Twice the signed area of the triangle `a, b, c`; positive when the turn
/// is counterclockwise.
pub fn cross(a: Point, b: Point, c: Point) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// True when segments `a-b` and `c-d` properly cross (intersect in a
/// single interior point of both). Shared endpoints and touching do not
/// count.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Distance from point `p` to segment `a-b`.
pub fn point_segment_dist(p: Point, a: Point, b: Point) -> f64 {
    let ab = sub(b, a);
    let len2 = ab.0 * ab.0 + ab.1 * ab.1;
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = ((p.0 - a.0) * ab.0 + (p.1 - a.1) * ab.1) / len2;
    let t = t.clamp(0.0, 1.0);
    dist(p, add(a, scale(ab, t)))
}

/// Signed area of a closed polygon given without a repeated last point.
pub fn polygon_area(points: &[Point]) -> f64 {
    let n = points.len();
    let mut acc = 0.0;
    for i in 0..n {
        let p = points[i];
        let q = points[(i + 1) % n];
        acc += p.0 * q.1 - q.0 * p.1;
    }
    acc / 2.0
}

/// Indices of the convex hull of `points` (counterclockwise). Only
/// strictly convex corners are kept; points interior to a hull edge are
/// dropped.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&i, &j| {
        points[i]
            .partial_cmp(&points[j])
            .expect("positions must be finite")
    });
    if idx.len() <= 2 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let order: Vec<usize> = if pass == 0 {
            idx.clone()
        } else {
            idx.iter().rev().copied().collect()
        };
        for &i in &order {
            while hull.len() >= start + 2 {
                let a = points[hull[hull.len() - 2]];
                let b = points[hull[hull.len() - 1]];
                if cross(a, b, points[i]) < 1e-12 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// True when `p` lies strictly inside the closed polygon (ray casting).
pub fn point_in_polygon(p: Point, poly: &[Point]) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.1 > p.1) != (b.1 > p.1) {
            let x = a.0 + (p.1 - a.1) / (b.1 - a.1) * (b.0 - a.0);
            if p.0 < x {
                inside = !inside;
            }
        }
    }
    inside
}
