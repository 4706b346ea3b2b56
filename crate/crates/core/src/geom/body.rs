use super::{cross, Vec2};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Disk {
    center: Vec2,
    radius: f64,
}

impl Disk {
    pub fn new(center: Vec2, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidBody(format!(
                "disk radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Disk { center, radius })
    }

    pub fn center(&self) -> Vec2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Counterclockwise, strictly convex vertex chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidBody("polygon needs at least 3 vertices".into()));
        }
        if !vertices.iter().all(|v| v.x.is_finite() && v.y.is_finite()) {
            return Err(Error::InvalidBody("non-finite vertex".into()));
        }
        let scale = vertices.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let eps = 1e-12 * scale * scale;
        let mut turn = 0.0;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let t = cross(b - a, c - b);
            if t <= eps {
                return Err(Error::InvalidBody(
                    "vertices must be in strictly convex counterclockwise position".into(),
                ));
            }
            turn += (b - a).angle(&(c - b));
        }
        // a star-shaped chain also has only left turns; total turning must be one revolution
        if (turn - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::InvalidBody("vertex chain winds more than once".into()));
        }
        Ok(Polygon { vertices })
    }

    /// Convex hull of the points; fails when the hull is not full-dimensional.
    pub fn from_points(points: &[Vec2]) -> Result<Self> {
        let hull = super::hull::convex_hull(points);
        if hull.len() < 3 {
            return Err(Error::NotFullDimensional);
        }
        Polygon::new(hull)
    }

    pub fn regular(n: usize, circumradius: f64, center: Vec2, phase: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidBody("regular polygon needs n >= 3".into()));
        }
        let verts = (0..n)
            .map(|k| {
                let t = phase + std::f64::consts::TAU * k as f64 / n as f64;
                center + circumradius * Vec2::new(t.cos(), t.sin())
            })
            .collect();
        Polygon::new(verts)
    }

    pub fn rectangle(min: Vec2, max: Vec2) -> Result<Self> {
        Polygon::new(vec![min, Vec2::new(max.x, min.y), max, Vec2::new(min.x, max.y)])
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Unit outward normals, one per edge in vertex order.
    pub fn outward_normals(&self) -> Vec<Vec2> {
        self.edges()
            .map(|(a, b)| {
                let e = b - a;
                Vec2::new(e.y, -e.x).normalize()
            })
            .collect()
    }

    pub fn area(&self) -> f64 {
        0.5 * self.edges().map(|(a, b)| cross(a, b)).sum::<f64>()
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| (b - a).norm()).sum()
    }

    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        self.edges().all(|(a, b)| cross(b - a, p - a) / (b - a).norm() >= -tol)
    }
}

/// Point or segment; only accepted where a flat body is meaningful.
#[derive(Debug, Clone, PartialEq)]
pub struct Degenerate {
    a: Vec2,
    b: Vec2,
}

impl Degenerate {
    pub fn endpoints(&self) -> (Vec2, Vec2) {
        (self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    Disk(Disk),
    Polygon(Polygon),
    Degenerate(Degenerate),
}

impl From<Disk> for ConvexBody {
    fn from(d: Disk) -> Self {
        ConvexBody::Disk(d)
    }
}

impl From<Polygon> for ConvexBody {
    fn from(p: Polygon) -> Self {
        ConvexBody::Polygon(p)
    }
}

impl ConvexBody {
    pub fn disk(center: Vec2, radius: f64) -> Result<Self> {
        Disk::new(center, radius).map(ConvexBody::Disk)
    }

    pub fn unit_disk() -> Self {
        ConvexBody::Disk(Disk {
            center: Vec2::zeros(),
            radius: 1.0,
        })
    }

    pub fn polygon(vertices: Vec<Vec2>) -> Result<Self> {
        Polygon::new(vertices).map(ConvexBody::Polygon)
    }

    pub fn segment(a: Vec2, b: Vec2) -> Self {
        ConvexBody::Degenerate(Degenerate { a, b })
    }

    pub fn point(p: Vec2) -> Self {
        ConvexBody::Degenerate(Degenerate { a: p, b: p })
    }

    pub fn is_full_dimensional(&self) -> bool {
        !matches!(self, ConvexBody::Degenerate(_))
    }

    pub fn require_full_dimensional(&self) -> Result<()> {
        if self.is_full_dimensional() {
            Ok(())
        } else {
            Err(Error::NotFullDimensional)
        }
    }

    /// h(u/|u|).
    pub fn support(&self, u: Vec2) -> Result<f64> {
        let n = u.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::DegenerateDirection);
        }
        Ok(self.support_unit(u / n))
    }

    /// Support value for an already normalized direction.
    pub fn support_unit(&self, u: Vec2) -> f64 {
        match self {
            ConvexBody::Disk(d) => d.center.dot(&u) + d.radius,
            ConvexBody::Polygon(p) => p.vertices.iter().map(|v| v.dot(&u)).fold(f64::NEG_INFINITY, f64::max),
            ConvexBody::Degenerate(s) => s.a.dot(&u).max(s.b.dot(&u)),
        }
    }

    /// Projection onto span(u) as offsets `[-h(-u), h(u)]`.
    pub fn project_interval(&self, u: Vec2) -> Result<(f64, f64)> {
        let n = u.norm();
        if !(n > 0.0) {
            return Err(Error::DegenerateDirection);
        }
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "direction must be a unit vector, |u| = {n}"
            )));
        }
        Ok(self.interval_unit(u / n))
    }

    pub fn interval_unit(&self, u: Vec2) -> (f64, f64) {
        (-self.support_unit(-u), self.support_unit(u))
    }

    /// The body as a finite union of disks (radius 0 for points): its convex hull is the body.
    pub fn generators(&self) -> Vec<(Vec2, f64)> {
        match self {
            ConvexBody::Disk(d) => vec![(d.center, d.radius)],
            ConvexBody::Polygon(p) => p.vertices.iter().map(|&v| (v, 0.0)).collect(),
            ConvexBody::Degenerate(s) => {
                if s.a == s.b {
                    vec![(s.a, 0.0)]
                } else {
                    vec![(s.a, 0.0), (s.b, 0.0)]
                }
            }
        }
    }

    /// `x + tau * self`.
    pub fn homothetic(&self, x: Vec2, tau: f64) -> ConvexBody {
        match self {
            ConvexBody::Disk(d) => ConvexBody::Disk(Disk {
                center: x + tau * d.center,
                radius: tau * d.radius,
            }),
            ConvexBody::Polygon(p) => ConvexBody::Polygon(Polygon {
                vertices: p.vertices.iter().map(|v| x + tau * v).collect(),
            }),
            ConvexBody::Degenerate(s) => ConvexBody::Degenerate(Degenerate {
                a: x + tau * s.a,
                b: x + tau * s.b,
            }),
        }
    }

    pub fn translate(&self, x: Vec2) -> ConvexBody {
        self.homothetic(x, 1.0)
    }

    /// `-self`.
    pub fn reflect(&self) -> ConvexBody {
        match self {
            ConvexBody::Disk(d) => ConvexBody::Disk(Disk {
                center: -d.center,
                radius: d.radius,
            }),
            ConvexBody::Polygon(p) => {
                let n = p.vertices.len();
                // negation preserves orientation, so the chain stays counterclockwise
                ConvexBody::Polygon(Polygon {
                    vertices: (0..n).map(|i| -p.vertices[i]).collect(),
                })
            }
            ConvexBody::Degenerate(s) => ConvexBody::Degenerate(Degenerate { a: -s.a, b: -s.b }),
        }
    }

    /// A representative interior point (disk center, vertex average).
    pub fn reference_point(&self) -> Vec2 {
        match self {
            ConvexBody::Disk(d) => d.center,
            ConvexBody::Polygon(p) => p.vertices.iter().sum::<Vec2>() / p.vertices.len() as f64,
            ConvexBody::Degenerate(s) => 0.5 * (s.a + s.b),
        }
    }

    /// Symmetric about the origin within `tol` (support test in vertex/edge directions).
    pub fn is_o_symmetric(&self, tol: f64) -> bool {
        match self {
            ConvexBody::Disk(d) => d.center.norm() <= tol,
            ConvexBody::Polygon(p) => p
                .vertices
                .iter()
                .all(|v| p.vertices.iter().any(|w| (v + w).norm() <= tol * (1.0 + v.norm()))),
            ConvexBody::Degenerate(s) => (s.a + s.b).norm() <= tol,
        }
    }

    /// Directions where support dominance certifies containment of homothets of `self`.
    pub fn facet_normals(&self) -> Option<Vec<Vec2>> {
        match self {
            ConvexBody::Polygon(p) => Some(p.outward_normals()),
            _ => None,
        }
    }

    pub fn contains_point(&self, q: Vec2, tol: f64) -> bool {
        match self {
            ConvexBody::Disk(d) => (q - d.center).norm() <= d.radius + tol,
            ConvexBody::Polygon(p) => p.contains(q, tol),
            ConvexBody::Degenerate(s) => {
                let e = s.b - s.a;
                let l2 = e.norm_squared();
                let t = if l2 == 0.0 {
                    0.0
                } else {
                    ((q - s.a).dot(&e) / l2).clamp(0.0, 1.0)
                };
                (s.a + t * e - q).norm() <= tol
            }
        }
    }

    /// Outline points for drawing: vertices, or `segments` points on a circle.
    pub fn outline(&self, segments: usize) -> Vec<Vec2> {
        match self {
            ConvexBody::Disk(d) => (0..segments)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / segments as f64;
                    d.center + d.radius * Vec2::new(t.cos(), t.sin())
                })
                .collect(),
            ConvexBody::Polygon(p) => p.vertices.clone(),
            ConvexBody::Degenerate(s) => vec![s.a, s.b],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn square() -> ConvexBody {
        ConvexBody::polygon(vec![
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn support_examples() {
        assert_eq!(ConvexBody::unit_disk().support(Vec2::new(1.0, 0.0)).unwrap(), 1.0);
        assert_eq!(square().support(Vec2::new(1.0, 0.0)).unwrap(), 1.0);
        let h = square().support(Vec2::new(1.0, 1.0) / SQRT_2).unwrap();
        assert!((h - SQRT_2).abs() < 1e-15);
        assert_eq!(square().support(Vec2::zeros()), Err(Error::DegenerateDirection));
    }

    #[test]
    fn projection_examples() {
        let d = ConvexBody::disk(Vec2::new(3.0, 0.0), 1.0).unwrap();
        assert_eq!(d.project_interval(Vec2::new(1.0, 0.0)).unwrap(), (2.0, 4.0));
        assert_eq!(
            ConvexBody::unit_disk().project_interval(Vec2::new(0.0, 1.0)).unwrap(),
            (-1.0, 1.0)
        );
        let t = ConvexBody::polygon(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]).unwrap();
        let (lo, hi) = t.project_interval(Vec2::new(1.0, 0.0)).unwrap();
        assert_eq!((lo + 0.0, hi), (0.0, 1.0));
    }

    #[test]
    fn rejects_bad_polygons() {
        let clockwise = vec![Vec2::new(0.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)];
        assert!(Polygon::new(clockwise).is_err());
        let collinear = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 1.0),
        ];
        assert!(Polygon::new(collinear).is_err());
        let pentagram: Vec<Vec2> = (0..5)
            .map(|k| {
                let t = std::f64::consts::TAU * (2 * k) as f64 / 5.0;
                Vec2::new(t.cos(), t.sin())
            })
            .collect();
        assert!(Polygon::new(pentagram).is_err());
        assert!(Disk::new(Vec2::zeros(), 0.0).is_err());
    }

    #[test]
    fn symmetry_detection() {
        assert!(square().is_o_symmetric(1e-9));
        assert!(!square().translate(Vec2::new(0.1, 0.0)).is_o_symmetric(1e-9));
        assert!(square().reflect() == square() || square().reflect().is_o_symmetric(1e-9));
    }
}
