//! Minimal-area circumscribed parallelograms and quadrilaterals.

use std::f64::consts::{PI, TAU};

use super::{cross, ConvexBody, Vec2};
use crate::optim::nelder_mead;

#[derive(Debug, Clone, PartialEq)]
pub struct Parallelogram {
    /// Counterclockwise corners.
    pub vertices: [Vec2; 4],
    /// Unit normals of the two side pairs.
    pub normals: [Vec2; 2],
    pub area: f64,
}

fn unit(t: f64) -> Vec2 {
    Vec2::new(t.cos(), t.sin())
}

fn meet(n1: Vec2, c1: f64, n2: Vec2, c2: f64) -> Vec2 {
    let det = cross(n1, n2);
    Vec2::new((c1 * n2.y - c2 * n1.y) / det, (n1.x * c2 - n2.x * c1) / det)
}

/// The parallelogram bounded by the supporting lines of `k` with normals ±a, ±b.
pub fn circumscribed_parallelogram(k: &ConvexBody, a: Vec2, b: Vec2) -> Parallelogram {
    let a = a.normalize();
    let mut b = b.normalize();
    if cross(a, b) < 0.0 {
        b = -b;
    }
    let (ha, la) = (k.support_unit(a), -k.support_unit(-a));
    let (hb, lb) = (k.support_unit(b), -k.support_unit(-b));
    let area = (ha - la) * (hb - lb) / cross(a, b).abs();
    let v = [
        meet(a, la, b, lb),
        meet(a, ha, b, lb),
        meet(a, ha, b, hb),
        meet(a, la, b, hb),
    ];
    // a × b > 0 makes the corner order above counterclockwise
    Parallelogram {
        vertices: v,
        normals: [a, b],
        area,
    }
}

/// □(K). For polygons an optimum has both side pairs parallel to edges of K; the area
/// `w(a)w(b)/|sin∠(a,b)|` is monotone in each angle between consecutive edge normals,
/// so enumerating pairs of edge normals is exact.
pub fn min_area_parallelogram(k: &ConvexBody) -> Parallelogram {
    match k {
        ConvexBody::Disk(_) => circumscribed_parallelogram(k, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)),
        _ => {
            let mut dirs: Vec<f64> = match k {
                ConvexBody::Polygon(p) => p
                    .outward_normals()
                    .iter()
                    .map(|n| n.y.atan2(n.x).rem_euclid(PI))
                    .collect(),
                // a flat body: any parallelogram has zero area; use the segment direction
                _ => {
                    let g = k.generators();
                    let d = if g.len() > 1 {
                        g[1].0 - g[0].0
                    } else {
                        Vec2::new(1.0, 0.0)
                    };
                    vec![d.y.atan2(d.x).rem_euclid(PI) + PI / 2.0, d.y.atan2(d.x).rem_euclid(PI)]
                }
            };
            dirs.sort_by(f64::total_cmp);
            dirs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            let mut best: Option<Parallelogram> = None;
            for i in 0..dirs.len() {
                for j in i + 1..dirs.len() {
                    let s = (dirs[j] - dirs[i]).sin().abs();
                    if s < 1e-9 {
                        continue;
                    }
                    let p = circumscribed_parallelogram(k, unit(dirs[i]), unit(dirs[j]));
                    if best.as_ref().is_none_or(|b| p.area < b.area) {
                        best = Some(p);
                    }
                }
            }
            best.expect("a polygon has two non-parallel edges")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quadrilateral {
    pub vertices: [Vec2; 4],
    pub area: f64,
}

/// Circumscribed quadrilateral with the given (increasing) normal angles.
pub fn circumscribed_quadrilateral(k: &ConvexBody, angles: [f64; 4]) -> Option<Quadrilateral> {
    let mut t = angles;
    t.sort_by(f64::total_cmp);
    for i in 0..4 {
        let gap = if i == 3 { t[0] + TAU - t[3] } else { t[i + 1] - t[i] };
        if !(gap > 1e-9 && gap < PI - 1e-9) {
            return None;
        }
    }
    let n: Vec<Vec2> = t.iter().map(|&a| unit(a)).collect();
    let h: Vec<f64> = n.iter().map(|&u| k.support_unit(u)).collect();
    let v = [0, 1, 2, 3].map(|i| meet(n[i], h[i], n[(i + 1) % 4], h[(i + 1) % 4]));
    let area = 0.5 * (0..4).map(|i| cross(v[i], v[(i + 1) % 4])).sum::<f64>();
    Some(Quadrilateral { vertices: v, area })
}

/// □*(K) by multi-start local search over the four normal angles. Approximate.
pub fn min_area_quadrilateral(k: &ConvexBody, starts: usize) -> Quadrilateral {
    let f = |x: &[f64]| circumscribed_quadrilateral(k, [x[0], x[1], x[2], x[3]]).map_or(f64::INFINITY, |q| q.area);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for s in 0..starts.max(1) {
        let phase = PI / 2.0 * s as f64 / starts.max(1) as f64;
        let x0: Vec<f64> = (0..4).map(|i| phase + PI / 2.0 * i as f64).collect();
        let (x, v) = nelder_mead(f, &x0, 0.2, 4000);
        if best.as_ref().is_none_or(|b| v < b.1) {
            best = Some((x, v));
        }
    }
    let (x, _) = best.unwrap();
    circumscribed_quadrilateral(k, [x[0], x[1], x[2], x[3]]).expect("search keeps a valid quadrilateral")
}
