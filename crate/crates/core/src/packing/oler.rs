use super::TranslatePacking;
use crate::error::{Error, Result};
use crate::geom::{cross, min_area_parallelogram, minkowski_norm, mixed_area, ConvexBody, Polygon, Vec2};
use crate::separability::is_ts_packing;

/// A closed polygonal curve `x_0, …, x_{m−1}` (the closing edge back to `x_0` is implicit).
#[derive(Debug, Clone, PartialEq)]
pub struct PermissiblePolygon {
    vertices: Vec<Vec2>,
    simple: bool,
}

fn segments_cross(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

impl PermissiblePolygon {
    /// A trailing copy of the first vertex is dropped.
    pub fn new(mut vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.is_empty() {
            return Err(Error::InvalidInput("polygon has no vertices".into()));
        }
        let m = vertices.len();
        let edges: Vec<(Vec2, Vec2)> = (0..m).map(|i| (vertices[i], vertices[(i + 1) % m])).collect();
        // a curve whose edges properly cross cannot be a limit of simple curves
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if segments_cross(a, b, c, d) {
                    return Err(Error::InvalidInput(format!("edges {i} and {j} cross")));
                }
            }
        }
        let mut distinct = vertices.clone();
        distinct.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
        distinct.dedup();
        let simple = m >= 3 && distinct.len() == m && {
            let mut ok = true;
            for i in 0..m {
                for j in i + 1..m {
                    let adjacent = j == i + 1 || (i == 0 && j == m - 1);
                    if !adjacent && segments_touch(edges[i], edges[j]) {
                        ok = false;
                    }
                }
            }
            ok && signed_area(&vertices).abs() > 0.0
        };
        Ok(PermissiblePolygon { vertices, simple })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let m = self.vertices.len();
        (0..m).map(move |i| (self.vertices[i], self.vertices[(i + 1) % m]))
    }

    /// Area of `Π*`. Signed area is continuous in the vertices and equals ± the enclosed
    /// area on simple curves, so its absolute value is the area of the limit interior.
    pub fn area(&self) -> f64 {
        signed_area(&self.vertices).abs()
    }

    /// Whether `p ∈ Π ∪ int Π`: on the curve, or of nonzero winding number.
    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        if self.edges().any(|(a, b)| point_segment_distance(p, a, b) <= tol) {
            return true;
        }
        let mut winding = 0i32;
        for (a, b) in self.edges() {
            if a.y <= p.y {
                if b.y > p.y && cross(b - a, p - a) > 0.0 {
                    winding += 1;
                }
            } else if b.y <= p.y && cross(b - a, p - a) < 0.0 {
                winding -= 1;
            }
        }
        winding != 0
    }
}

fn segments_touch((a, b): (Vec2, Vec2), (c, d): (Vec2, Vec2)) -> bool {
    point_segment_distance(a, c, d) < 1e-12
        || point_segment_distance(b, c, d) < 1e-12
        || point_segment_distance(c, a, b) < 1e-12
        || point_segment_distance(d, a, b) < 1e-12
        || segments_cross(a, b, c, d)
}

fn signed_area(v: &[Vec2]) -> f64 {
    let m = v.len();
    0.5 * (0..m).map(|i| cross(v[i], v[(i + 1) % m])).sum::<f64>()
}

fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let l = ab.norm_squared();
    let t = if l == 0.0 {
        0.0
    } else {
        ((p - a).dot(&ab) / l).clamp(0.0, 1.0)
    };
    (a + ab * t - p).norm()
}

/// `Σ |x_i − x_{i−1}|_K` around the closed curve.
pub fn minkowski_length(path: &PermissiblePolygon, k: &ConvexBody) -> Result<f64> {
    path.edges().map(|(a, b)| minkowski_norm(k, b - a)).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OlerReport {
    pub n: usize,
    pub area: f64,
    pub minkowski_length: f64,
    pub parallelogram_area: f64,
    /// `area(Π*)/area(□K) + M_K(Π)/4 + 1`.
    pub lhs: f64,
    pub slack: f64,
}

/// Evaluates the Oler-type inequality for a TS-packing of an o-symmetric body.
pub fn oler_check(packing: &TranslatePacking, pi: &PermissiblePolygon, tol: f64) -> Result<OlerReport> {
    let k = packing.body();
    if !k.is_o_symmetric(1e-9) {
        return Err(Error::NotSymmetric);
    }
    let scale = packing.centers().iter().map(|c| c.norm()).fold(1.0, f64::max);
    for (i, v) in pi.vertices().iter().enumerate() {
        if !packing.centers().iter().any(|c| (c - v).norm() <= tol * scale) {
            return Err(Error::Precondition(format!(
                "vertex {i} of the polygon is not a center"
            )));
        }
    }
    for (i, c) in packing.centers().iter().enumerate() {
        if !pi.contains(*c, tol * scale) {
            return Err(Error::Precondition(format!("center {i} lies outside the polygon")));
        }
    }
    if !is_ts_packing(packing, None, 1e-9)?.is_verified() {
        return Err(Error::Precondition("packing is not verified totally separable".into()));
    }
    let area = pi.area();
    let length = minkowski_length(pi, k)?;
    let sq = min_area_parallelogram(k).area;
    let lhs = area / sq + length / 4.0 + 1.0;
    Ok(OlerReport {
        n: packing.len(),
        area,
        minkowski_length: length,
        parallelogram_area: sq,
        lhs,
        slack: lhs - packing.len() as f64,
    })
}

/// `8 A(Q, K)/area(□K) − M_K(bd Q)`, nonnegative for centrally symmetric K.
pub fn radon_check(q: &Polygon, k: &ConvexBody) -> Result<f64> {
    k.require_full_dimensional()?;
    let qb = ConvexBody::Polygon(q.clone());
    let boundary = PermissiblePolygon::new(q.vertices().to_vec())?;
    let m = minkowski_length(&boundary, k)?;
    Ok(8.0 * mixed_area(&qb, k) / min_area_parallelogram(k).area - m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_diameter() -> ConvexBody {
        ConvexBody::disk(Vec2::zeros(), 0.5).unwrap()
    }

    fn grid(cols: usize, rows: usize) -> TranslatePacking {
        let c = (0..rows)
            .flat_map(|y| (0..cols).map(move |x| Vec2::new(x as f64, y as f64)))
            .collect();
        TranslatePacking::new(unit_diameter(), c).unwrap()
    }

    #[test]
    fn lengths() {
        let sq = ConvexBody::polygon(
            Polygon::rectangle(Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0))
                .unwrap()
                .vertices()
                .to_vec(),
        )
        .unwrap();
        let path = PermissiblePolygon::new(vec![
            Vec2::zeros(),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap();
        assert!((minkowski_length(&path, &sq).unwrap() - 4.0).abs() < 1e-12);
        let h = 3f64.sqrt();
        let tri = PermissiblePolygon::new(vec![Vec2::zeros(), Vec2::new(2.0, 0.0), Vec2::new(1.0, h)]).unwrap();
        assert!((minkowski_length(&tri, &ConvexBody::unit_disk()).unwrap() - 6.0).abs() < 1e-12);
        let back = PermissiblePolygon::new(vec![Vec2::zeros(), Vec2::new(3.0, 0.0)]).unwrap();
        assert!(!back.is_simple());
        assert!((minkowski_length(&back, &ConvexBody::unit_disk()).unwrap() - 6.0).abs() < 1e-12);
        let t = ConvexBody::polygon(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]).unwrap();
        assert_eq!(minkowski_length(&back, &t), Err(Error::NotSymmetric));
    }

    #[test]
    fn grid_square_equality() {
        let p = grid(3, 3);
        let pi = PermissiblePolygon::new(vec![
            Vec2::zeros(),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.0, 2.0),
            Vec2::new(0.0, 2.0),
        ])
        .unwrap();
        let r = oler_check(&p, &pi, 1e-9).unwrap();
        // 4 + 16/4 + 1 = 9
        assert!((r.lhs - 9.0).abs() < 1e-12);
        assert!(r.slack.abs() < 1e-12);
    }

    #[test]
    fn chain_out_and_back_equality() {
        let p = grid(4, 1);
        let pi = PermissiblePolygon::new(vec![
            Vec2::zeros(),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(3.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 0.0),
        ]);
        let pi = pi.unwrap();
        assert_eq!(pi.area(), 0.0);
        let r = oler_check(&p, &pi, 1e-9).unwrap();
        assert!(r.slack.abs() < 1e-12);
    }

    #[test]
    fn single_point() {
        let p = grid(1, 1);
        let pi = PermissiblePolygon::new(vec![Vec2::zeros()]).unwrap();
        assert!(oler_check(&p, &pi, 1e-9).unwrap().slack.abs() < 1e-12);
    }

    #[test]
    fn preconditions() {
        let p = grid(3, 1);
        let pi = PermissiblePolygon::new(vec![Vec2::zeros(), Vec2::new(1.0, 0.0)]).unwrap();
        assert!(matches!(oler_check(&p, &pi, 1e-9), Err(Error::Precondition(_))));
        let bow = PermissiblePolygon::new(vec![
            Vec2::zeros(),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ]);
        assert!(bow.is_err());
    }

    #[test]
    fn radon_on_square_and_disk() {
        let q = Polygon::rectangle(Vec2::zeros(), Vec2::new(2.0, 1.0)).unwrap();
        let s = radon_check(&q, &ConvexBody::unit_disk()).unwrap();
        assert!(s >= -1e-9, "{s}");
        let sq = ConvexBody::polygon(
            Polygon::rectangle(Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0))
                .unwrap()
                .vertices()
                .to_vec(),
        )
        .unwrap();
        // square in its own norm: equality
        assert!(radon_check(&q, &sq).unwrap().abs() < 1e-9);
    }
}
