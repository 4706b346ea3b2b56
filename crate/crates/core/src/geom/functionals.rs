use std::f64::consts::PI;

use super::{enclosing, ConvexBody, DiskHull, Polygon, Vec2};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeReport {
    pub area: f64,
    pub perimeter: f64,
    pub diameter: f64,
    pub circumradius: f64,
    pub inradius: f64,
    pub min_width: f64,
    pub mean_width: f64,
}

pub fn size_report(body: &ConvexBody) -> Result<SizeReport> {
    match body {
        ConvexBody::Disk(d) => {
            let r = d.radius();
            Ok(SizeReport {
                area: PI * r * r,
                perimeter: 2.0 * PI * r,
                diameter: 2.0 * r,
                circumradius: r,
                inradius: r,
                min_width: 2.0 * r,
                mean_width: 2.0 * r,
            })
        }
        ConvexBody::Polygon(p) => {
            let v = p.vertices();
            let mut diameter: f64 = 0.0;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    diameter = diameter.max((v[i] - v[j]).norm());
                }
            }
            let (_, circumradius) = enclosing::min_enclosing_circle_points(v);
            let (_, inradius) = enclosing::chebyshev_center(p)?;
            let perimeter = p.perimeter();
            Ok(SizeReport {
                area: p.area(),
                perimeter,
                diameter,
                circumradius,
                inradius,
                min_width: polygon_min_width(p),
                mean_width: perimeter / PI,
            })
        }
        ConvexBody::Degenerate(_) => Err(Error::NotFullDimensional),
    }
}

/// Minimal width of a polygon is attained with one supporting line through an edge.
pub fn polygon_min_width(p: &Polygon) -> f64 {
    p.edges()
        .zip(p.outward_normals())
        .map(|((a, _), n)| p.vertices().iter().map(|v| (a - v).dot(&n)).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

pub fn area(body: &ConvexBody) -> f64 {
    match body {
        ConvexBody::Disk(d) => PI * d.radius() * d.radius(),
        ConvexBody::Polygon(p) => p.area(),
        ConvexBody::Degenerate(_) => 0.0,
    }
}

/// Perimeter; a segment counts both sides.
pub fn perimeter(body: &ConvexBody) -> f64 {
    match body {
        ConvexBody::Disk(d) => 2.0 * PI * d.radius(),
        ConvexBody::Polygon(p) => p.perimeter(),
        ConvexBody::Degenerate(s) => {
            let (a, b) = s.endpoints();
            2.0 * (b - a).norm()
        }
    }
}

/// Gauge `min{λ ≥ 0 : x ∈ λK}` of an o-symmetric body.
pub fn minkowski_norm(k: &ConvexBody, x: Vec2) -> Result<f64> {
    k.require_full_dimensional()?;
    if !k.is_o_symmetric(1e-9) {
        return Err(Error::NotSymmetric);
    }
    gauge(k, x)
}

/// Gauge of a body with the origin in its interior; no symmetry required.
pub fn gauge(k: &ConvexBody, x: Vec2) -> Result<f64> {
    match k {
        ConvexBody::Disk(d) => {
            if d.center().norm() > 1e-12 * d.radius() {
                // only the centered disk is needed by callers
                if d.center().norm() >= d.radius() {
                    return Err(Error::OriginNotInterior);
                }
                let c = d.center();
                let r = d.radius();
                // |x/λ - c| = r  ⇔  (|c|² - r²)λ² - 2⟨x,c⟩λ + |x|² = 0, take the positive root
                let a = c.norm_squared() - r * r;
                let b = -2.0 * x.dot(&c);
                let cc = x.norm_squared();
                let disc = (b * b - 4.0 * a * cc).max(0.0);
                return Ok(((-b - disc.sqrt()) / (2.0 * a)).max(0.0));
            }
            Ok(x.norm() / d.radius())
        }
        ConvexBody::Polygon(p) => {
            let mut best: f64 = 0.0;
            for ((a, _), n) in p.edges().zip(p.outward_normals()) {
                let h = a.dot(&n);
                if h <= 1e-12 {
                    return Err(Error::OriginNotInterior);
                }
                best = best.max(x.dot(&n) / h);
            }
            Ok(best)
        }
        ConvexBody::Degenerate(_) => Err(Error::NotFullDimensional),
    }
}

/// `K + (-K)`, always o-symmetric.
pub fn difference_body(k: &ConvexBody) -> Result<ConvexBody> {
    match k {
        ConvexBody::Disk(d) => ConvexBody::disk(Vec2::zeros(), 2.0 * d.radius()),
        ConvexBody::Polygon(p) => {
            let v = p.vertices();
            let mut pts = Vec::with_capacity(v.len() * v.len());
            for a in v {
                for b in v {
                    pts.push(a - b);
                }
            }
            Polygon::from_points(&pts).map(ConvexBody::Polygon)
        }
        ConvexBody::Degenerate(_) => Err(Error::NotFullDimensional),
    }
}

/// A(Q, K) = (area(Q + K) − area Q − area K) / 2.
pub fn mixed_area(q: &ConvexBody, k: &ConvexBody) -> f64 {
    let sum = DiskHull::minkowski_sum(q, k).area();
    0.5 * (sum - area(q) - area(k))
}

/// area(T + ρB) by the Steiner polynomial.
pub fn steiner_area(t: &ConvexBody, rho: f64) -> Result<f64> {
    if !(rho >= 0.0) {
        return Err(Error::Domain(format!("offset radius must be nonnegative, got {rho}")));
    }
    Ok(area(t) + rho * perimeter(t) + PI * rho * rho)
}
