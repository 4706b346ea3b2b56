//! Guillotine partitions of a box into convex cells, each holding a ball of common radius,
//! and the surface-area and volume lower bounds they satisfy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::lp::{Cmp, Lp, Sense};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball3 {
    pub center: Vec3,
    pub radius: f64,
}

/// A facet: unit outward normal, offset, and vertices counterclockwise seen from outside.
#[derive(Debug, Clone, PartialEq)]
struct Face {
    normal: Vec3,
    offset: f64,
    vertices: Vec<Vec3>,
}

impl Face {
    fn area(&self) -> f64 {
        let v = &self.vertices;
        let s: Vec3 = (0..v.len()).map(|i| v[i].cross(&v[(i + 1) % v.len()])).sum();
        0.5 * s.dot(&self.normal).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolyhedron {
    faces: Vec<Face>,
}

fn plane_basis(n: Vec3) -> (Vec3, Vec3) {
    let a = if n.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    let e1 = n.cross(&a).normalize();
    (e1, n.cross(&e1))
}

impl ConvexPolyhedron {
    pub fn axis_box(min: Vec3, max: Vec3) -> Result<Self> {
        if !(0..3).all(|i| max[i] > min[i]) {
            return Err(Error::InvalidInput("box must have positive side lengths".into()));
        }
        let mut faces = Vec::with_capacity(6);
        for axis in 0..3 {
            for (sign, value) in [(-1.0, min[axis]), (1.0, max[axis])] {
                let mut n = Vec3::zeros();
                n[axis] = sign;
                let (e1, e2) = plane_basis(n);
                let c = {
                    let mut c = (min + max) / 2.0;
                    c[axis] = value;
                    c
                };
                let half = (max - min) / 2.0;
                let mut verts = Vec::with_capacity(4);
                for (s1, s2) in [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)] {
                    let mut p = c;
                    for k in 0..3 {
                        if k != axis {
                            // e1, e2 are ± unit axes here
                            p[k] += half[k] * (s1 * e1[k] + s2 * e2[k]);
                        }
                    }
                    verts.push(p);
                }
                faces.push(Face {
                    normal: n,
                    offset: sign * value,
                    vertices: verts,
                });
            }
        }
        Ok(ConvexPolyhedron { faces })
    }

    pub fn surface_area(&self) -> f64 {
        self.faces.iter().map(Face::area).sum()
    }

    pub fn volume(&self) -> f64 {
        self.faces.iter().map(|f| f.offset * f.area()).sum::<f64>() / 3.0
    }

    /// `(normal, offset)` of every facet.
    pub fn halfspaces(&self) -> Vec<(Vec3, f64)> {
        self.faces.iter().map(|f| (f.normal, f.offset)).collect()
    }

    pub fn vertices(&self) -> Vec<Vec3> {
        let mut out: Vec<Vec3> = Vec::new();
        for f in &self.faces {
            for v in &f.vertices {
                if !out.iter().any(|w| (w - v).norm() < 1e-12) {
                    out.push(*v);
                }
            }
        }
        out
    }

    fn scale(&self) -> f64 {
        self.vertices().iter().map(|v| v.norm()).fold(1.0, f64::max)
    }

    /// The part with `⟨n, x⟩ ≤ c`, or `None` when it has no interior.
    pub fn clip(&self, n: Vec3, c: f64) -> Option<ConvexPolyhedron> {
        let len = n.norm();
        let (n, c) = (n / len, c / len);
        let eps = 1e-12 * self.scale();
        let side = |p: &Vec3| n.dot(p) - c;
        if self.vertices().iter().all(|p| side(p) <= eps) {
            return Some(self.clone());
        }
        let mut faces = Vec::new();
        let mut cap: Vec<Vec3> = Vec::new();
        for f in &self.faces {
            let v = &f.vertices;
            let mut out = Vec::new();
            for i in 0..v.len() {
                let (p, q) = (v[i], v[(i + 1) % v.len()]);
                let (sp, sq) = (side(&p), side(&q));
                if sp <= eps {
                    out.push(p);
                    if sp.abs() <= eps {
                        cap.push(p);
                    }
                }
                if (sp < -eps && sq > eps) || (sp > eps && sq < -eps) {
                    let x = p + (q - p) * (sp / (sp - sq));
                    out.push(x);
                    cap.push(x);
                }
            }
            if out.len() >= 3 {
                let face = Face {
                    normal: f.normal,
                    offset: f.offset,
                    vertices: out,
                };
                if face.area() > eps * eps {
                    faces.push(face);
                }
            }
        }
        // the new facet is the convex hull of the points on the cutting plane
        let (e1, e2) = plane_basis(n);
        let origin = n * c;
        let flat: Vec<crate::geom::Vec2> = cap
            .iter()
            .map(|p| crate::geom::Vec2::new((p - origin).dot(&e1), (p - origin).dot(&e2)))
            .collect();
        let hull = crate::geom::convex_hull(&flat);
        if hull.len() >= 3 {
            // e1 × e2 = n, so counterclockwise in (e1, e2) faces outward
            let vertices: Vec<Vec3> = hull.iter().map(|q| origin + e1 * q.x + e2 * q.y).collect();
            let face = Face {
                normal: n,
                offset: c,
                vertices,
            };
            if face.area() > eps * eps {
                faces.push(face);
            }
        }
        let poly = ConvexPolyhedron { faces };
        (poly.faces.len() >= 4 && poly.volume() > eps * eps).then_some(poly)
    }

    /// Largest inscribed ball.
    pub fn chebyshev_ball(&self) -> Result<Ball3> {
        let mut lp = Lp::new(Sense::Maximize);
        let x: Vec<usize> = (0..3).map(|_| lp.var(0.0, f64::NEG_INFINITY, f64::INFINITY)).collect();
        let t = lp.var(1.0, 0.0, f64::INFINITY);
        for f in &self.faces {
            lp.constraint(
                &[(x[0], f.normal.x), (x[1], f.normal.y), (x[2], f.normal.z), (t, 1.0)],
                Cmp::Le,
                f.offset,
            );
        }
        let s = lp.solve()?;
        Ok(Ball3 {
            center: Vec3::new(s.values[x[0]], s.values[x[1]], s.values[x[2]]),
            radius: s.values[t],
        })
    }

    pub fn contains_ball(&self, b: &Ball3, tol: f64) -> bool {
        self.faces
            .iter()
            .all(|f| f.normal.dot(&b.center) + b.radius <= f.offset + tol)
    }
}

/// Splits cell `cell` by `⟨normal, x⟩ = offset`; the part below keeps the id, the part
/// above is appended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuillotineCut {
    pub cell: usize,
    pub normal: Vec3,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GuillotinePartition {
    pub min: Vec3,
    pub max: Vec3,
    pub cuts: Vec<GuillotineCut>,
}

impl GuillotinePartition {
    pub fn leaves(&self) -> Result<Vec<ConvexPolyhedron>> {
        let mut cells = vec![ConvexPolyhedron::axis_box(self.min, self.max)?];
        for (k, cut) in self.cuts.iter().enumerate() {
            if cut.cell >= cells.len() {
                return Err(Error::InvalidInput(format!("cut {k} names missing cell {}", cut.cell)));
            }
            if !(cut.normal.norm() > 0.0) {
                return Err(Error::DegenerateDirection);
            }
            let cell = &cells[cut.cell];
            match (cell.clip(cut.normal, cut.offset), cell.clip(-cut.normal, -cut.offset)) {
                (Some(lo), Some(hi)) => {
                    cells[cut.cell] = lo;
                    cells.push(hi);
                }
                _ => return Err(Error::InvalidInput(format!("cut {k} does not split cell {}", cut.cell))),
            }
        }
        Ok(cells)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KerteszReport {
    pub n: usize,
    pub radius: f64,
    pub surface_sum: f64,
    /// `24 N r²`.
    pub surface_bound: f64,
    pub volume: f64,
    /// `8 N r³`.
    pub volume_bound: f64,
    pub surface_slack: f64,
    pub volume_slack: f64,
    pub holds: bool,
}

/// Ball `i` must lie in leaf `i`; all radii must agree.
pub fn guillotine_kertesz_check(partition: &GuillotinePartition, balls: &[Ball3], tol: f64) -> Result<KerteszReport> {
    let leaves = partition.leaves()?;
    if balls.len() != leaves.len() {
        return Err(Error::InvalidInput(format!(
            "{} balls for {} cells",
            balls.len(),
            leaves.len()
        )));
    }
    let r = balls[0].radius;
    if !(r > 0.0) || balls.iter().any(|b| (b.radius - r).abs() > 1e-12 * r) {
        return Err(Error::InvalidInput("balls must share one positive radius".into()));
    }
    for (i, (b, cell)) in balls.iter().zip(&leaves).enumerate() {
        if !cell.contains_ball(b, tol) {
            return Err(Error::Precondition(format!("ball {i} is not inside its cell")));
        }
    }
    let n = leaves.len();
    let surface_sum: f64 = leaves.iter().map(ConvexPolyhedron::surface_area).sum();
    let e = partition.max - partition.min;
    let volume = e.x * e.y * e.z;
    let surface_bound = 24.0 * n as f64 * r * r;
    let volume_bound = 8.0 * n as f64 * r * r * r;
    let surface_slack = surface_sum - surface_bound;
    let volume_slack = volume - volume_bound;
    Ok(KerteszReport {
        n,
        radius: r,
        surface_sum,
        surface_bound,
        volume,
        volume_bound,
        surface_slack,
        volume_slack,
        holds: surface_slack >= -tol && volume_slack >= -tol,
    })
}

/// A random box with up to `max_cells` cells, each admitting a ball of radius `r`; balls are
/// placed at the Chebyshev centers.
pub fn random_guillotine(seed: u64, max_cells: usize, r: f64) -> Result<(GuillotinePartition, Vec<Ball3>)> {
    if max_cells == 0 || !(r > 0.0) {
        return Err(Error::InvalidInput(
            "need at least one cell and a positive radius".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max = Vec3::new(
        rng.random_range(2.0..8.0) * r,
        rng.random_range(2.0..8.0) * r,
        rng.random_range(2.0..8.0) * r,
    );
    let mut partition = GuillotinePartition {
        min: Vec3::zeros(),
        max,
        cuts: Vec::new(),
    };
    let mut cells = partition.leaves()?;
    let target = rng.random_range(1..=max_cells);
    let mut attempts = 0;
    while cells.len() < target && attempts < 200 * max_cells {
        attempts += 1;
        let id = rng.random_range(0..cells.len());
        let center = cells[id].chebyshev_ball()?.center;
        let n = Vec3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if n.norm() < 1e-9 {
            continue;
        }
        let n = n.normalize();
        let offset = n.dot(&center) + rng.random_range(-1.0..1.0) * r;
        let (Some(lo), Some(hi)) = (cells[id].clip(n, offset), cells[id].clip(-n, -offset)) else {
            continue;
        };
        if lo.chebyshev_ball()?.radius >= r * (1.0 + 1e-9) && hi.chebyshev_ball()?.radius >= r * (1.0 + 1e-9) {
            cells[id] = lo;
            cells.push(hi);
            partition.cuts.push(GuillotineCut {
                cell: id,
                normal: n,
                offset,
            });
        }
    }
    let balls = cells
        .iter()
        .map(|c| {
            c.chebyshev_ball().map(|b| Ball3 {
                center: b.center,
                radius: r,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((partition, balls))
}
