//! Minimal enclosing circles and Chebyshev centers.

use super::{cross, Polygon, Vec2};
use crate::error::Result;
use crate::lp::{Cmp, Lp, Sense};

const SLACK: f64 = 1e-10;

/// Smallest circle containing every disk `(center, radius)`.
pub fn min_enclosing_circle(disks: &[(Vec2, f64)]) -> (Vec2, f64) {
    assert!(!disks.is_empty(), "enclosing circle of nothing");
    let r0 = disks[0].1;
    if disks.iter().all(|d| d.1 == r0) {
        let pts: Vec<Vec2> = disks.iter().map(|d| d.0).collect();
        let (c, r) = min_enclosing_circle_points(&pts);
        return (c, r + r0);
    }
    brute_force(disks)
}

fn encloses(c: Vec2, r: f64, disks: &[(Vec2, f64)]) -> bool {
    let scale = 1.0 + r;
    disks.iter().all(|&(p, s)| (p - c).norm() + s <= r + SLACK * scale)
}

fn brute_force(disks: &[(Vec2, f64)]) -> (Vec2, f64) {
    let n = disks.len();
    let mut best: Option<(Vec2, f64)> = None;
    let mut consider = |c: Vec2, r: f64| {
        if best.is_none_or(|b| r < b.1) && encloses(c, r, disks) {
            best = Some((c, r));
        }
    };
    for &(c, r) in disks {
        consider(c, r);
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some((c, r)) = pair_circle(disks[i], disks[j]) {
                consider(c, r);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for (c, r) in triple_circles(disks[i], disks[j], disks[k]) {
                    consider(c, r);
                }
            }
        }
    }
    best.expect("the largest pair circle always encloses a finite family")
}

fn pair_circle((a, ra): (Vec2, f64), (b, rb): (Vec2, f64)) -> Option<(Vec2, f64)> {
    let d = (b - a).norm();
    if d == 0.0 {
        return None;
    }
    let r = 0.5 * (d + ra + rb);
    Some((a + (r - ra) * (b - a) / d, r))
}

/// Circles internally tangent to three disks.
fn triple_circles(d1: (Vec2, f64), d2: (Vec2, f64), d3: (Vec2, f64)) -> Vec<(Vec2, f64)> {
    let (c1, r1) = d1;
    // 2(c_k - c_1)·p = |c_k|² - |c_1|² - r_k² + r_1² + 2R(r_k - r_1), k = 2,3
    let rows = [d2, d3].map(|(ck, rk)| {
        let a = 2.0 * (ck - c1);
        let b0 = ck.norm_squared() - c1.norm_squared() - rk * rk + r1 * r1;
        let b1 = 2.0 * (rk - r1);
        (a, b0, b1)
    });
    let det = cross(rows[0].0, rows[1].0);
    if det.abs() < 1e-14 {
        return Vec::new();
    }
    let solve = |b: [f64; 2]| -> Vec2 {
        Vec2::new(
            (b[0] * rows[1].0.y - b[1] * rows[0].0.y) / det,
            (rows[0].0.x * b[1] - rows[1].0.x * b[0]) / det,
        )
    };
    let p0 = solve([rows[0].1, rows[1].1]);
    let p1 = solve([rows[0].2, rows[1].2]);
    // |p0 + R p1 - c1|² = (R - r1)²
    let w = p0 - c1;
    let qa = p1.norm_squared() - 1.0;
    let qb = 2.0 * (w.dot(&p1) + r1);
    let qc = w.norm_squared() - r1 * r1;
    let mut roots = Vec::new();
    if qa.abs() < 1e-14 {
        if qb.abs() > 1e-14 {
            roots.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= -1e-12 {
            let s = disc.max(0.0).sqrt();
            roots.push((-qb + s) / (2.0 * qa));
            roots.push((-qb - s) / (2.0 * qa));
        }
    }
    let rmax = r1.max(d2.1).max(d3.1);
    roots
        .into_iter()
        .filter(|r| r.is_finite() && *r >= rmax - 1e-12)
        .map(|r| (p0 + r * p1, r))
        .collect()
}

/// Incremental Welzl-style smallest enclosing circle of points.
pub fn min_enclosing_circle_points(pts: &[Vec2]) -> (Vec2, f64) {
    assert!(!pts.is_empty(), "enclosing circle of nothing");
    let inside = |c: Vec2, r: f64, p: Vec2| (p - c).norm() <= r + SLACK * (1.0 + r);
    let mut c = pts[0];
    let mut r = 0.0;
    for i in 1..pts.len() {
        if inside(c, r, pts[i]) {
            continue;
        }
        c = pts[i];
        r = 0.0;
        for j in 0..i {
            if inside(c, r, pts[j]) {
                continue;
            }
            c = 0.5 * (pts[i] + pts[j]);
            r = 0.5 * (pts[i] - pts[j]).norm();
            for k in 0..j {
                if inside(c, r, pts[k]) {
                    continue;
                }
                (c, r) = circumcircle(pts[i], pts[j], pts[k]);
            }
        }
    }
    (c, r)
}

fn circumcircle(a: Vec2, b: Vec2, c: Vec2) -> (Vec2, f64) {
    let ab = b - a;
    let ac = c - a;
    let d = 2.0 * cross(ab, ac);
    if d.abs() < 1e-300 {
        // collinear: the widest pair
        let cands = [(a, b), (a, c), (b, c)];
        let (p, q) = cands
            .into_iter()
            .max_by(|x, y| (x.0 - x.1).norm().total_cmp(&(y.0 - y.1).norm()))
            .unwrap();
        return (0.5 * (p + q), 0.5 * (p - q).norm());
    }
    let ux = (ac.y * ab.norm_squared() - ab.y * ac.norm_squared()) / d;
    let uy = (ab.x * ac.norm_squared() - ac.x * ab.norm_squared()) / d;
    let off = Vec2::new(ux, uy);
    (a + off, off.norm())
}

/// Largest inscribed disk of a polygon via LP.
pub fn chebyshev_center(poly: &Polygon) -> Result<(Vec2, f64)> {
    let mut lp = Lp::new(Sense::Maximize);
    let x = lp.var(0.0, f64::NEG_INFINITY, f64::INFINITY);
    let y = lp.var(0.0, f64::NEG_INFINITY, f64::INFINITY);
    let r = lp.var(1.0, 0.0, f64::INFINITY);
    for ((a, _), n) in poly.edges().zip(poly.outward_normals()) {
        lp.constraint(&[(x, n.x), (y, n.y), (r, 1.0)], Cmp::Le, n.dot(&a));
    }
    let s = lp.solve()?;
    Ok((Vec2::new(s.values[x], s.values[y]), s.values[r]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_circle() {
        let pts = [
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 0.5),
            Vec2::new(1.0, -0.2),
        ];
        let (c, r) = min_enclosing_circle_points(&pts);
        assert!((c - Vec2::new(1.0, 0.0)).norm() < 1e-12);
        assert!((r - 1.0).abs() < 1e-12);
        let tri = [Vec2::new(0.0, 0.0), Vec2::new(2.0, 0.0), Vec2::new(1.0, 3f64.sqrt())];
        let (_, r) = min_enclosing_circle_points(&tri);
        assert!((r - 2.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn disks_brute_force_matches_points_path() {
        let disks = [
            (Vec2::new(0.0, 0.0), 1.0),
            (Vec2::new(2.0, 0.0), 1.0),
            (Vec2::new(1.0, 3f64.sqrt()), 1.0),
        ];
        let (c1, r1) = min_enclosing_circle(&disks);
        let (c2, r2) = brute_force(&disks);
        assert!((r1 - r2).abs() < 1e-10 && (c1 - c2).norm() < 1e-8);
        assert!((r1 - (1.0 + 2.0 / 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn unequal_disks() {
        let disks = [
            (Vec2::new(0.0, 0.0), 2.0),
            (Vec2::new(4.0, 0.0), 1.0),
            (Vec2::new(0.5, 0.0), 0.1),
        ];
        let (c, r) = min_enclosing_circle(&disks);
        assert!((r - 3.5).abs() < 1e-10);
        assert!((c - Vec2::new(1.5, 0.0)).norm() < 1e-10);
        // triangle of unequal disks: every disk is internally tangent at the optimum
        let disks = [
            (Vec2::new(0.0, 0.0), 1.0),
            (Vec2::new(4.0, 0.0), 0.5),
            (Vec2::new(1.5, 3.5), 0.8),
        ];
        let (c, r) = min_enclosing_circle(&disks);
        let gaps: Vec<f64> = disks.iter().map(|&(p, s)| r - (p - c).norm() - s).collect();
        assert!(gaps.iter().all(|g| *g > -1e-9));
        assert!(gaps.iter().filter(|g| g.abs() < 1e-8).count() >= 2);
    }

    #[test]
    fn chebyshev_square() {
        let sq = Polygon::rectangle(Vec2::new(0.0, 0.0), Vec2::new(2.0, 2.0)).unwrap();
        let (c, r) = chebyshev_center(&sq).unwrap();
        assert!((r - 1.0).abs() < 1e-9);
        assert!((c - Vec2::new(1.0, 1.0)).norm() < 1e-9);
    }
}
