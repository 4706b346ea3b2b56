//! Planar convex bodies: support functions, gauges, size functionals, circumscribed
//! parallelograms.

mod body;
pub mod enclosing;
mod functionals;
mod hull;
mod parallelogram;

pub use body::{ConvexBody, Degenerate, Disk, Polygon};
pub use enclosing::{chebyshev_center, min_enclosing_circle, min_enclosing_circle_points};
pub use functionals::{
    area, difference_body, gauge, minkowski_norm, mixed_area, perimeter, polygon_min_width, size_report, steiner_area,
    SizeReport,
};
pub use hull::{convex_hull, DiskHull};
pub use parallelogram::{
    circumscribed_parallelogram, circumscribed_quadrilateral, min_area_parallelogram, min_area_quadrilateral,
    Parallelogram, Quadrilateral,
};

pub type Vec2 = nalgebra::Vector2<f64>;
pub type Vec3 = nalgebra::Vector3<f64>;

/// Predicate tolerance used when callers do not pass one.
pub const DEFAULT_TOL: f64 = 1e-9;

/// z-component of the planar cross product.
#[inline]
pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Unit vector at angle `t`.
#[inline]
pub fn dir(t: f64) -> Vec2 {
    Vec2::new(t.cos(), t.sin())
}

/// `x + τK`.
#[derive(Debug, Clone, PartialEq)]
pub struct Homothet {
    pub reference: ConvexBody,
    pub center: Vec2,
    pub ratio: f64,
}

impl Homothet {
    pub fn body(&self) -> ConvexBody {
        self.reference.homothetic(self.center, self.ratio)
    }
}
