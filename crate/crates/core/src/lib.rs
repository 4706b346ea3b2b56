//! Separability toolkit for finite families and packings of convex bodies: non-separable
//! families and their covering homothets, totally/locally separable packings in the plane
//! and on the sphere, contact numbers, and the density bounds of λ-separable packings.

// `!(x > 0.0)` rejects NaN as well, which is the point
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod covering;
pub mod error;
pub mod geom;
pub mod lambda_density;
pub mod lp;
pub mod optim;
pub mod packing;
pub mod separability;
pub mod spherical;

pub use error::{Error, Result};
pub use geom::{ConvexBody, Disk, DiskHull, Homothet, Polygon, SizeReport, Vec2, Vec3, DEFAULT_TOL};
