use std::f64::consts::PI;

use super::TranslatePacking;
use crate::error::{Error, Result};
use crate::geom::{area, convex_hull, min_area_parallelogram, ConvexBody, DiskHull, Polygon, Vec2};
use crate::separability::{is_ts_packing, meets_hull_of};

/// Largest density of TS-packings of translates: area(K)/area(□(K)).
pub fn delta_sep(k: &ConvexBody) -> Result<f64> {
    k.require_full_dimensional()?;
    if let ConvexBody::Disk(_) = k {
        // □ of a disk is the circumscribed square, keep the ratio exact
        return Ok(PI / 4.0);
    }
    Ok(area(k) / min_area_parallelogram(k).area)
}

/// Density inside the square `[0, side]²` of the □(K)-lattice packing tiled from the
/// corner; only translates lying entirely in the window are counted.
pub fn lattice_window_density(k: &ConvexBody, side: f64) -> Result<f64> {
    k.require_full_dimensional()?;
    if !(side > 0.0) {
        return Err(Error::InvalidInput(format!("window side must be positive, got {side}")));
    }
    let p = min_area_parallelogram(k);
    let [v0, v1, _, v3] = p.vertices;
    let (a, b) = (v1 - v0, v3 - v0);
    let det = a.x * b.y - a.y * b.x;
    let inside = |t: Vec2| {
        let (lx, hx) = k.interval_unit(Vec2::new(1.0, 0.0));
        let (ly, hy) = k.interval_unit(Vec2::new(0.0, 1.0));
        lx + t.x >= -1e-12 && hx + t.x <= side + 1e-12 && ly + t.y >= -1e-12 && hy + t.y <= side + 1e-12
    };
    // lattice coordinates (i, j) of every translate whose cell corner can reach the window
    let corners = [
        Vec2::zeros(),
        Vec2::new(side, 0.0),
        Vec2::new(0.0, side),
        Vec2::new(side, side),
    ];
    let coords: Vec<(f64, f64)> = corners
        .iter()
        .map(|c| ((c.x * b.y - c.y * b.x) / det, (a.x * c.y - a.y * c.x) / det))
        .collect();
    let lo_i = coords.iter().map(|c| c.0).fold(f64::INFINITY, f64::min).floor() as i64 - 1;
    let hi_i = coords.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max).ceil() as i64 + 1;
    let lo_j = coords.iter().map(|c| c.1).fold(f64::INFINITY, f64::min).floor() as i64 - 1;
    let hi_j = coords.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max).ceil() as i64 + 1;
    let mut count = 0u64;
    for i in lo_i..=hi_i {
        for j in lo_j..=hi_j {
            if inside(-v0 + a * i as f64 + b * j as f64) {
                count += 1;
            }
        }
    }
    Ok(count as f64 * area(k) / (side * side))
}

/// Density of the members of `packing` lying entirely in the box `[lo, hi]`.
pub fn window_density(packing: &TranslatePacking, lo: Vec2, hi: Vec2) -> Result<f64> {
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    if !(w > 0.0 && h > 0.0) {
        return Err(Error::InvalidInput("empty window".into()));
    }
    let (ex, ey) = (Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0));
    let count = packing
        .members()
        .iter()
        .filter(|m| {
            let (lx, hx) = m.interval_unit(ex);
            let (ly, hy) = m.interval_unit(ey);
            lx >= lo.x - 1e-12 && hx <= hi.x + 1e-12 && ly >= lo.y - 1e-12 && hy <= hi.y + 1e-12
        })
        .count();
    Ok(count as f64 * area(packing.body()) / (w * h))
}

pub(crate) fn hull_body(points: &[Vec2]) -> Result<ConvexBody> {
    let h = convex_hull(points);
    match h.len() {
        0 => Err(Error::InvalidInput("no points".into())),
        1 => Ok(ConvexBody::point(h[0])),
        2 => Ok(ConvexBody::segment(h[0], h[1])),
        _ => Polygon::new(h).map(ConvexBody::Polygon),
    }
}

/// Point-symmetric about some center (not necessarily the origin).
pub(crate) fn is_centrally_symmetric(k: &ConvexBody, tol: f64) -> bool {
    match k {
        ConvexBody::Disk(_) | ConvexBody::Degenerate(_) => true,
        ConvexBody::Polygon(p) => {
            let v = p.vertices();
            let m = v.len();
            if m % 2 == 1 {
                return false;
            }
            let c = v[0] + v[m / 2];
            let scale = v.iter().map(|x| x.norm()).fold(1.0, f64::max);
            (0..m / 2).all(|i| (v[i] + v[i + m / 2] - c).norm() <= tol * scale)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AreaBoundReport {
    pub n: usize,
    /// area(C + K), C the hull of the centers.
    pub hull_area: f64,
    pub general_bound: f64,
    pub general_slack: f64,
    /// Present when K or C is centrally symmetric.
    pub symmetric_bound: Option<f64>,
    pub symmetric_slack: Option<f64>,
    pub holds: bool,
}

/// Lower bounds on the area of the convex hull of a finite TS-packing.
pub fn area_bound_check(packing: &TranslatePacking) -> Result<AreaBoundReport> {
    if packing.is_empty() {
        return Err(Error::InvalidInput("empty packing".into()));
    }
    if !is_ts_packing(packing, None, 1e-9)?.is_verified() {
        return Err(Error::Precondition("packing is not verified totally separable".into()));
    }
    let n = packing.len();
    let k = packing.body();
    let c = hull_body(packing.centers())?;
    let hull_area = DiskHull::minkowski_sum(&c, k).area();
    let sq = min_area_parallelogram(k).area;
    let ak = area(k);
    let general_bound = 2.0 / 3.0 * (n - 1) as f64 * sq + ak + area(&c) / 3.0;
    let symmetric_bound =
        (is_centrally_symmetric(k, 1e-9) || is_centrally_symmetric(&c, 1e-9)).then(|| (n - 1) as f64 * sq + ak);
    let eps = 1e-9 * hull_area.max(1.0);
    let general_slack = hull_area - general_bound;
    let symmetric_slack = symmetric_bound.map(|b| hull_area - b);
    Ok(AreaBoundReport {
        n,
        hull_area,
        general_bound,
        general_slack,
        symmetric_bound,
        symmetric_slack,
        holds: general_slack >= -eps && symmetric_slack.is_none_or(|s| s >= -eps),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnsPerimeterReport {
    pub order: Vec<usize>,
    pub perimeter: f64,
    pub bound: f64,
    pub slack: f64,
    /// Perimeter equals the bound within tolerance.
    pub equality: bool,
    pub mean_width: f64,
    pub mean_width_bound: f64,
}

/// Perimeter of the hull of an SNS family of unit disks against `2π + 4n − 4`.
/// A supplied ordering is validated; otherwise one is searched for.
pub fn sns_perimeter_check(centers: &[Vec2], order: Option<&[usize]>, tol: f64) -> Result<SnsPerimeterReport> {
    let n = centers.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty family".into()));
    }
    let disks: Vec<ConvexBody> = centers
        .iter()
        .map(|&c| ConvexBody::disk(c, 1.0))
        .collect::<Result<_>>()?;
    let order = match order {
        Some(o) => {
            let mut seen = vec![false; n];
            if o.len() != n || o.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidInput("ordering is not a permutation".into()));
            }
            for k in 1..n {
                let preds: Vec<ConvexBody> = o[..k].iter().map(|&j| disks[j].clone()).collect();
                if !meets_hull_of(&disks[o[k]], &preds)? {
                    return Err(Error::Precondition("ordering is not successively non-separable".into()));
                }
            }
            o.to_vec()
        }
        None => crate::separability::is_sns(&disks)?
            .ok_or_else(|| Error::Precondition("family is not successively non-separable".into()))?,
    };
    let perimeter = DiskHull::new(centers.iter().map(|&c| (c, 1.0)).collect())?.perimeter();
    let bound = 2.0 * PI + 4.0 * (n as f64 - 1.0);
    let slack = bound - perimeter;
    Ok(SnsPerimeterReport {
        order,
        perimeter,
        bound,
        slack,
        equality: slack.abs() <= tol,
        mean_width: perimeter / PI,
        mean_width_bound: 2.0 + (4.0 * n as f64 - 4.0) / PI,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> ConvexBody {
        ConvexBody::polygon(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn densities() {
        assert_eq!(delta_sep(&ConvexBody::unit_disk()).unwrap(), PI / 4.0);
        let sq = ConvexBody::polygon(
            Polygon::rectangle(Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0))
                .unwrap()
                .vertices()
                .to_vec(),
        )
        .unwrap();
        assert!((delta_sep(&sq).unwrap() - 1.0).abs() < 1e-12);
        assert!((delta_sep(&tri()).unwrap() - 0.5).abs() < 1e-12);
        assert!(delta_sep(&ConvexBody::point(Vec2::zeros())).is_err());
    }

    #[test]
    fn lattice_window() {
        let d = lattice_window_density(&ConvexBody::disk(Vec2::zeros(), 0.5).unwrap(), 100.0).unwrap();
        assert!((d - PI / 4.0).abs() < 1e-12);
        let t = lattice_window_density(&tri(), 100.0).unwrap();
        assert!((t - 0.5).abs() < 0.01 * 0.5, "{t}");
    }

    #[test]
    fn square_grid_area_equality() {
        let k = ConvexBody::disk(Vec2::zeros(), 0.5).unwrap();
        let c = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
        ];
        let r = area_bound_check(&TranslatePacking::new(k, c).unwrap()).unwrap();
        assert!((r.hull_area - (3.0 + PI / 4.0)).abs() < 1e-12);
        assert!(r.symmetric_slack.unwrap().abs() < 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn triangle_lattice_general_equality() {
        // m = 2: translates at 0, u, v fill 2K
        let c = vec![Vec2::zeros(), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)];
        let r = area_bound_check(&TranslatePacking::new(tri(), c).unwrap()).unwrap();
        assert!((r.hull_area - 2.0).abs() < 1e-12);
        assert!(r.general_slack.abs() < 1e-12);
        assert!(r.symmetric_bound.is_none());
    }

    #[test]
    fn single_member() {
        let r = area_bound_check(&TranslatePacking::new(tri(), vec![Vec2::zeros()]).unwrap()).unwrap();
        assert!(r.symmetric_slack.unwrap().abs() < 1e-12);
    }

    #[test]
    fn hex_triple_not_ts() {
        let k = ConvexBody::disk(Vec2::zeros(), 1.0).unwrap();
        let c = vec![Vec2::zeros(), Vec2::new(2.0, 0.0), Vec2::new(1.0, 3f64.sqrt())];
        assert!(matches!(
            area_bound_check(&TranslatePacking::new(k, c).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sns_perimeter() {
        let chain: Vec<Vec2> = (0..3).map(|i| Vec2::new(2.0 * i as f64, 0.0)).collect();
        let r = sns_perimeter_check(&chain, None, 1e-9).unwrap();
        assert!(r.equality);
        assert!((r.perimeter - (2.0 * PI + 8.0)).abs() < 1e-12);
        let bent = [Vec2::new(0.0, 0.0), Vec2::new(2.0, 0.0), Vec2::new(2.0, 2.0)];
        let r = sns_perimeter_check(&bent, Some(&[0, 1, 2]), 1e-9).unwrap();
        assert!(r.slack > 0.1 && !r.equality);
        let one = sns_perimeter_check(&[Vec2::zeros()], None, 1e-9).unwrap();
        assert!(one.equality);
        assert!(matches!(
            sns_perimeter_check(&[Vec2::zeros(), Vec2::new(3.0, 0.0)], None, 1e-9),
            Err(Error::Precondition(_))
        ));
    }
}
