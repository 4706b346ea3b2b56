//! Deterministic fixtures shared by the benchmarks.

use sepgeom_core::packing::TranslatePacking;
use sepgeom_core::separability::HomothetFamily;
use sepgeom_core::{ConvexBody, Vec2};

/// Unit disks on a `side × side` square grid of spacing 2.
pub fn square_grid(side: usize) -> TranslatePacking {
    let centers = (0..side)
        .flat_map(|y| (0..side).map(move |x| Vec2::new(2.0 * x as f64, 2.0 * y as f64)))
        .collect();
    TranslatePacking::new(ConvexBody::unit_disk(), centers).expect("grid packing")
}

/// `n` homothets of a regular hexagon, spread on a spiral with shrinking ratios.
pub fn hexagon_spiral(n: usize) -> HomothetFamily {
    let hex = sepgeom_core::Polygon::regular(6, 1.0, Vec2::zeros(), 0.0).expect("hexagon");
    let members: Vec<(Vec2, f64)> = (0..n)
        .map(|i| {
            let t = i as f64 * 2.399_963;
            let r = 0.9 * (i as f64).sqrt();
            (Vec2::new(r * t.cos(), r * t.sin()), 1.0 / (1.0 + 0.1 * i as f64))
        })
        .collect();
    HomothetFamily::from_pairs(ConvexBody::Polygon(hex), &members).expect("family")
}
