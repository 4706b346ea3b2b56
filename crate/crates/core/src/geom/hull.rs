use std::f64::consts::TAU;

use super::{cross, enclosing, ConvexBody, Vec2};
use crate::error::{Error, Result};

/// Andrew's monotone chain. Counterclockwise, collinear points dropped.
/// Fewer than three points come back when the input is flat.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| (*a - *b).norm() <= 1e-14 * (1.0 + a.norm()));
    if pts.len() < 3 {
        return pts;
    }
    let scale = pts.iter().map(|p| p.norm()).fold(1.0, f64::max);
    let eps = 1e-13 * scale * scale;
    let mut lower: Vec<Vec2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && cross(
                lower[lower.len() - 1] - lower[lower.len() - 2],
                p - lower[lower.len() - 2],
            ) <= eps
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(
                upper[upper.len() - 1] - upper[upper.len() - 2],
                p - upper[upper.len() - 2],
            ) <= eps
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // all collinear: keep the two extremes
        return vec![pts[0], pts[pts.len() - 1]];
    }
    lower
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Piece {
    disk: usize,
    from: f64,
    to: f64,
}

/// Convex hull of finitely many disks (radius 0 allowed), described through its support
/// envelope `h(θ) = max_i ⟨c_i, u(θ)⟩ + r_i`. Polygons, segments, disks, Minkowski sums
/// and parallel bodies of any of these are all of this form.
#[derive(Debug, Clone)]
pub struct DiskHull {
    disks: Vec<(Vec2, f64)>,
    pieces: Vec<Piece>,
}

fn unit(t: f64) -> Vec2 {
    Vec2::new(t.cos(), t.sin())
}

impl DiskHull {
    pub fn new(disks: Vec<(Vec2, f64)>) -> Result<Self> {
        if disks.is_empty() {
            return Err(Error::InvalidInput("empty generator list".into()));
        }
        if disks
            .iter()
            .any(|&(c, r)| !(r >= 0.0) || !r.is_finite() || !c.x.is_finite() || !c.y.is_finite())
        {
            return Err(Error::InvalidInput(
                "generator radii must be finite and nonnegative".into(),
            ));
        }
        let disks = prune(disks);
        let pieces = envelope(&disks);
        Ok(DiskHull { disks, pieces })
    }

    pub fn of_body(body: &ConvexBody) -> Self {
        DiskHull::new(body.generators()).expect("bodies have valid generators")
    }

    /// conv of the union of the bodies.
    pub fn of_union(bodies: &[ConvexBody]) -> Result<Self> {
        DiskHull::new(bodies.iter().flat_map(|b| b.generators()).collect())
    }

    /// Minkowski sum `a + b`.
    pub fn minkowski_sum(a: &ConvexBody, b: &ConvexBody) -> Self {
        let ga = a.generators();
        let gb = b.generators();
        let mut g = Vec::with_capacity(ga.len() * gb.len());
        for &(p, r) in &ga {
            for &(q, s) in &gb {
                g.push((p + q, r + s));
            }
        }
        DiskHull::new(g).expect("sum of valid generators")
    }

    /// Parallel body `self + rho·B`.
    pub fn offset(&self, rho: f64) -> Result<Self> {
        DiskHull::new(self.disks.iter().map(|&(c, r)| (c, r + rho)).collect())
    }

    pub fn generators(&self) -> &[(Vec2, f64)] {
        &self.disks
    }

    pub fn support_unit(&self, u: Vec2) -> f64 {
        self.disks
            .iter()
            .map(|&(c, r)| c.dot(&u) + r)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn width_unit(&self, u: Vec2) -> f64 {
        self.support_unit(u) + self.support_unit(-u)
    }

    /// Boundary length: arcs plus tangent segments.
    pub fn perimeter(&self) -> f64 {
        let arcs: f64 = self.pieces.iter().map(|p| self.disks[p.disk].1 * (p.to - p.from)).sum();
        let segs: f64 = self.transitions().map(|(a, b)| (b - a).norm()).sum();
        arcs + segs
    }

    /// Green's theorem over the arc/segment boundary.
    pub fn area(&self) -> f64 {
        let mut twice = 0.0;
        for p in &self.pieces {
            let (c, r) = self.disks[p.disk];
            let (sa, ca) = p.from.sin_cos();
            let (sb, cb) = p.to.sin_cos();
            twice += r * (c.x * (sb - sa) - c.y * (cb - ca)) + r * r * (p.to - p.from);
        }
        for (a, b) in self.transitions() {
            twice += cross(a, b);
        }
        0.5 * twice
    }

    pub fn diameter(&self) -> f64 {
        let mut best: f64 = self.disks.iter().map(|d| 2.0 * d.1).fold(0.0, f64::max);
        for i in 0..self.disks.len() {
            for j in i + 1..self.disks.len() {
                let (ci, ri) = self.disks[i];
                let (cj, rj) = self.disks[j];
                best = best.max((ci - cj).norm() + ri + rj);
            }
        }
        best
    }

    /// Smallest enclosing circle (center, radius).
    pub fn circumcircle(&self) -> (Vec2, f64) {
        enclosing::min_enclosing_circle(&self.disks)
    }

    /// Minimal width; the width function is extremal only at support breakpoints.
    pub fn min_width(&self) -> f64 {
        let mut angles: Vec<f64> = self.pieces.iter().map(|p| p.from).collect();
        let n = angles.len();
        for i in 0..n {
            angles.push(angles[i] + std::f64::consts::PI);
        }
        angles.push(0.0);
        angles
            .iter()
            .map(|&t| self.width_unit(unit(t)))
            .fold(f64::INFINITY, f64::min)
    }

    /// Boundary points where consecutive pieces are joined by a tangent segment.
    fn transitions(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let m = self.pieces.len();
        (0..m).filter_map(move |k| {
            let p = self.pieces[k];
            let q = self.pieces[(k + 1) % m];
            if p.disk == q.disk {
                return None;
            }
            let u = unit(p.to);
            let (ci, ri) = self.disks[p.disk];
            let (cj, rj) = self.disks[q.disk];
            Some((ci + ri * u, cj + rj * u))
        })
    }
}

/// Drops exact duplicates; with a common radius only hull vertices of the centers matter.
fn prune(mut disks: Vec<(Vec2, f64)>) -> Vec<(Vec2, f64)> {
    let r0 = disks[0].1;
    if disks.iter().all(|d| d.1 == r0) {
        let centers: Vec<Vec2> = disks.iter().map(|d| d.0).collect();
        return convex_hull(&centers).into_iter().map(|c| (c, r0)).collect();
    }
    disks.sort_by(|a, b| {
        a.0.x
            .total_cmp(&b.0.x)
            .then(a.0.y.total_cmp(&b.0.y))
            .then(b.1.total_cmp(&a.1))
    });
    disks.dedup_by(|a, b| a.0 == b.0);
    // a disk inside another never reaches the envelope
    let keep: Vec<bool> = (0..disks.len())
        .map(|i| {
            !(0..disks.len()).any(|j| {
                j != i && {
                    let slack = disks[j].1 - disks[i].1 - (disks[i].0 - disks[j].0).norm();
                    slack > 1e-15 || (slack >= 0.0 && j < i)
                }
            })
        })
        .collect();
    disks
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(d, _)| d)
        .collect()
}

fn envelope(disks: &[(Vec2, f64)]) -> Vec<Piece> {
    let n = disks.len();
    if n == 1 {
        return vec![Piece {
            disk: 0,
            from: 0.0,
            to: TAU,
        }];
    }
    let mut angles = vec![0.0, TAU];
    for i in 0..n {
        for j in i + 1..n {
            let d = disks[j].0 - disks[i].0;
            let dist = d.norm();
            let dr = disks[i].1 - disks[j].1;
            if dist > 0.0 && dr.abs() <= dist {
                let phi = d.y.atan2(d.x);
                let a = (dr / dist).clamp(-1.0, 1.0).acos();
                for t in [phi + a, phi - a] {
                    angles.push(t.rem_euclid(TAU));
                }
            }
        }
    }
    angles.sort_by(f64::total_cmp);
    angles.dedup();
    let mut pieces: Vec<Piece> = Vec::new();
    for w in angles.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= 0.0 {
            continue;
        }
        let u = unit(0.5 * (a + b));
        let mut best = 0;
        let mut best_v = f64::NEG_INFINITY;
        for (k, &(c, r)) in disks.iter().enumerate() {
            let v = c.dot(&u) + r;
            if v > best_v || (v == best_v && r > disks[best].1) {
                best = k;
                best_v = v;
            }
        }
        match pieces.last_mut() {
            Some(last) if last.disk == best => last.to = b,
            _ => pieces.push(Piece {
                disk: best,
                from: a,
                to: b,
            }),
        }
    }
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn hull_drops_interior_and_collinear() {
        let pts = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.0, 2.0),
            Vec2::new(0.0, 2.0),
            Vec2::new(1.0, 1.0),
        ];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert_eq!(h[0], Vec2::new(0.0, 0.0));
        let flat = convex_hull(&[Vec2::new(0.0, 0.0), Vec2::new(1.0, 1.0), Vec2::new(3.0, 3.0)]);
        assert_eq!(flat.len(), 2);
    }

    #[test]
    fn single_disk() {
        let h = DiskHull::new(vec![(Vec2::new(1.0, 2.0), 1.5)]).unwrap();
        assert!((h.area() - PI * 2.25).abs() < 1e-12);
        assert!((h.perimeter() - 3.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn stadium() {
        // two tangent unit disks
        let h = DiskHull::new(vec![(Vec2::new(0.0, 0.0), 1.0), (Vec2::new(2.0, 0.0), 1.0)]).unwrap();
        assert!((h.perimeter() - (2.0 * PI + 4.0)).abs() < 1e-12);
        assert!((h.area() - (PI + 4.0)).abs() < 1e-12);
        assert!((h.diameter() - 4.0).abs() < 1e-15);
        assert!((h.min_width() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn polygon_generators() {
        let sq = DiskHull::new(vec![
            (Vec2::new(0.0, 0.0), 0.0),
            (Vec2::new(1.0, 0.0), 0.0),
            (Vec2::new(1.0, 1.0), 0.0),
            (Vec2::new(0.0, 1.0), 0.0),
            (Vec2::new(0.5, 0.5), 0.0),
        ])
        .unwrap();
        assert!((sq.area() - 1.0).abs() < 1e-14);
        assert!((sq.perimeter() - 4.0).abs() < 1e-14);
        let rounded = sq.offset(1.0).unwrap();
        assert!((rounded.area() - (1.0 + 4.0 + PI)).abs() < 1e-12);
    }

    #[test]
    fn unequal_disks_with_nesting() {
        // small disk inside the big one contributes nothing
        let h = DiskHull::new(vec![
            (Vec2::zeros(), 2.0),
            (Vec2::new(0.5, 0.0), 1.0),
            (Vec2::new(5.0, 0.0), 1.0),
        ])
        .unwrap();
        // belt: arcs on both disks plus two external tangents
        let d: f64 = 5.0;
        let beta = (1.0 / d).asin();
        let tangent = (d * d - 1.0).sqrt();
        let expect = 2.0 * tangent + 2.0 * (PI / 2.0 + beta) * 2.0 + 1.0 * (PI - 2.0 * beta);
        assert!(
            (h.perimeter() - expect).abs() < 1e-12,
            "{} vs {}",
            h.perimeter(),
            expect
        );
    }
}
