//! Threshold functions, isosceles triangles in E², S² and H², the in-triangle disk density
//! δ(T), and density bounds for λ-separable disk packings.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::optim::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Euclidean,
    Spherical,
    Hyperbolic,
}

impl Geometry {
    /// Area of a disk of radius `r`.
    pub fn disk_area(self, r: f64) -> f64 {
        2.0 * PI * self.radial(r)
    }

    /// `∫₀^r` of the circumference density: r²/2, 1 − cos r, cosh r − 1.
    fn radial(self, r: f64) -> f64 {
        match self {
            Geometry::Euclidean => 0.5 * r * r,
            Geometry::Spherical => 1.0 - r.cos(),
            Geometry::Hyperbolic => r.cosh() - 1.0,
        }
    }
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(what.to_string()))
    }
}

fn asin_checked(v: f64) -> Result<f64> {
    check(v <= 1.0 + 1e-12, "arcsin argument exceeds 1")?;
    Ok(v.min(1.0).asin())
}

fn x1s_arg(y: f64, lambda: f64) -> Result<f64> {
    check((0.0..FRAC_PI_4).contains(&lambda), "need 0 ≤ λ < π/4")?;
    check(y > 0.0 && y <= FRAC_PI_2, "need 0 < y ≤ π/2")?;
    check(y >= lambda.tan().asin() - 1e-15, "need y ≥ arcsin tan λ")?;
    let (s2, t2) = (y.sin().powi(2), lambda.tan().powi(2));
    let c = lambda.cos();
    // 1 − A² = c² cos²y (sin²y − tan²λ)/(sin²y − sin²λ); at the left end y carries the
    // rounding of arcsin tan λ, so gaps within a few ulps count as zero
    let g = if s2 - t2 <= 4.0 * f64::EPSILON * t2 {
        0.0
    } else {
        s2 - t2
    };
    // sin²y − sin²λ = sin(y − λ) sin(y + λ), free of cancellation near y = λ
    let d = (y - lambda).sin() * (y + lambda).sin();
    let a = c * s2 / d.sqrt();
    let b = c * y.cos().abs() * (g / d).sqrt();
    Ok(a.atan2(b))
}

pub fn x1s(y: f64, lambda: f64) -> Result<f64> {
    Ok(0.5 * x1s_arg(y, lambda)?)
}

pub fn x2s(y: f64, lambda: f64) -> Result<f64> {
    Ok(FRAC_PI_2 - x1s(y, lambda)?)
}

pub fn xh(y: f64, lambda: f64) -> Result<f64> {
    check(lambda >= 0.0 && lambda < y, "need 0 ≤ λ < y")?;
    let s = y.sinh();
    let d = (y - lambda).sinh() * (y + lambda).sinh();
    Ok(0.5 * (lambda.cosh() * s * s / d.sqrt()).asinh())
}

pub fn xe(y: f64, lambda: f64) -> Result<f64> {
    check(lambda >= 0.0 && lambda < y, "need 0 ≤ λ < y")?;
    Ok(y * y / (2.0 * ((y - lambda) * (y + lambda)).sqrt()))
}

fn spherical_roots(lambda: f64) -> Result<(f64, f64)> {
    check(
        (0.0..=0.6f64.asin() + 1e-15).contains(&lambda),
        "need 0 ≤ λ ≤ arcsin(3/5)",
    )?;
    let s2 = lambda.sin().powi(2);
    let disc = 9.0 - 34.0 * s2 + 25.0 * s2 * s2;
    check(disc >= -1e-12, "negative discriminant")?;
    let d = disc.max(0.0).sqrt();
    Ok(((3.0 + 5.0 * s2 - d) / 8.0, (3.0 + 5.0 * s2 + d) / 8.0))
}

pub fn yss(lambda: f64) -> Result<f64> {
    asin_checked(spherical_roots(lambda)?.0.sqrt())
}

pub fn ybs(lambda: f64) -> Result<f64> {
    asin_checked(spherical_roots(lambda)?.1.sqrt())
}

pub fn ysh(lambda: f64) -> Result<f64> {
    check(lambda >= 0.0, "need λ ≥ 0")?;
    let s2 = lambda.sinh().powi(2);
    let v = (5.0 * s2 - 3.0 + (25.0 * s2 * s2 + 34.0 * s2 + 9.0).sqrt()) / 8.0;
    Ok(v.max(0.0).sqrt().asinh())
}

/// Monotone pieces of `x₁ˢ` (S₁ decreasing, S₂ increasing) and `xʰ` (H₁, H₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    S1,
    S2,
    H1,
    H2,
}

/// Interval of `y` and whether the function decreases on it.
fn branch_interval(branch: Branch, lambda: f64) -> Result<(f64, f64, bool)> {
    match branch {
        Branch::S1 | Branch::S2 => {
            check(lambda > 0.0 && lambda < FRAC_PI_4, "need 0 < λ < π/4")?;
            let mid = (2f64.sqrt() * lambda.sin()).asin();
            Ok(if branch == Branch::S1 {
                (lambda.tan().asin(), mid, true)
            } else {
                (mid, FRAC_PI_2, false)
            })
        }
        Branch::H1 | Branch::H2 => {
            check(lambda > 0.0, "need λ > 0")?;
            let mid = (2f64.sqrt() * lambda.sinh()).asinh();
            Ok(if branch == Branch::H1 {
                (lambda, mid, true)
            } else {
                (mid, f64::INFINITY, false)
            })
        }
    }
}

/// `y` on the given piece with `x₁ˢ(y) = value` (S branches) or `xʰ(y) = value` (H branches).
pub fn inverse_branch(branch: Branch, value: f64, lambda: f64) -> Result<f64> {
    let (lo, hi, _) = branch_interval(branch, lambda)?;
    let f = |y: f64| match branch {
        Branch::S1 | Branch::S2 => x1s(y, lambda).unwrap_or(f64::NAN) - value,
        Branch::H1 | Branch::H2 => xh(y, lambda).unwrap_or(f64::NAN) - value,
    };
    match branch {
        Branch::S1 | Branch::S2 => check(
            (lambda - 1e-15..=FRAC_PI_4 + 1e-15).contains(&value),
            "value outside [λ, π/4]",
        )?,
        _ => check(value >= lambda - 1e-15, "value below λ")?,
    }
    let (a, b) = match branch {
        Branch::S1 | Branch::S2 => (lo, hi),
        // the function blows up at λ⁺ and at +∞; move the open end in until it exceeds value
        Branch::H1 => {
            let mut a = lo + 0.5 * (hi - lo);
            while f(a) < 0.0 && a - lo > 1e-300 {
                a = lo + 0.5 * (a - lo);
            }
            (a, hi)
        }
        Branch::H2 => {
            let mut b = 2.0 * lo + 1.0;
            while f(b) < 0.0 {
                b *= 2.0;
            }
            (lo, b)
        }
    };
    let (fa, fb) = (f(a), f(b));
    // x₁ˢ has a vertical tangent at arcsin tan λ, so its value there is only good to ~1e-8
    if fa.signum() == fb.signum() {
        let (y, err) = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
        if err.abs() <= 1e-7 {
            return Ok(y);
        }
    }
    bisect(f, a, b, 0.0).ok_or_else(|| Error::Domain("value outside the branch range".into()))
}

/// `y` on the given piece of S with `x₂ˢ(y) = value`.
pub fn inverse_x2s(branch: Branch, value: f64, lambda: f64) -> Result<f64> {
    check(matches!(branch, Branch::S1 | Branch::S2), "x₂ˢ has only S branches")?;
    inverse_branch(branch, FRAC_PI_2 - value, lambda)
}

/// Triangle given by its side lengths; `angles[i]` is opposite `sides[i]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle2 {
    pub geometry: Geometry,
    pub sides: [f64; 3],
    pub angles: [f64; 3],
    pub area: f64,
}

impl Triangle2 {
    pub fn new(geometry: Geometry, a: f64, b: f64, c: f64) -> Result<Self> {
        let sides = [a, b, c];
        if sides.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::Domain("side lengths must be positive".into()));
        }
        for i in 0..3 {
            if sides[i] >= sides[(i + 1) % 3] + sides[(i + 2) % 3] {
                return Err(Error::Domain("triangle inequality violated".into()));
            }
        }
        if geometry == Geometry::Spherical && a + b + c >= 2.0 * PI {
            return Err(Error::Domain("spherical perimeter must be below 2π".into()));
        }
        let angle = |a: f64, b: f64, c: f64| {
            let cos = match geometry {
                Geometry::Euclidean => (b * b + c * c - a * a) / (2.0 * b * c),
                Geometry::Spherical => (a.cos() - b.cos() * c.cos()) / (b.sin() * c.sin()),
                Geometry::Hyperbolic => (b.cosh() * c.cosh() - a.cosh()) / (b.sinh() * c.sinh()),
            };
            cos.clamp(-1.0, 1.0).acos()
        };
        let angles = [angle(a, b, c), angle(b, c, a), angle(c, a, b)];
        let sum: f64 = angles.iter().sum();
        let area = match geometry {
            Geometry::Euclidean => {
                let s = 0.5 * (a + b + c);
                (s * (s - a) * (s - b) * (s - c)).max(0.0).sqrt()
            }
            Geometry::Spherical => sum - PI,
            Geometry::Hyperbolic => PI - sum,
        };
        Ok(Triangle2 {
            geometry,
            sides,
            angles,
            area,
        })
    }

    pub fn isosceles(geometry: Geometry, base: f64, leg: f64) -> Result<Self> {
        Triangle2::new(geometry, base, leg, leg)
    }

    pub fn regular(geometry: Geometry, side: f64) -> Result<Self> {
        Triangle2::new(geometry, side, side, side)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TriangleKind {
    T1s,
    T2s,
    Th,
    Te,
    Treg(Geometry),
}

/// Isosceles triangles with base `2y` and legs `2x(y)`, or the regular triangle of side `2ρ`
/// for `Treg` (the parameter is then ρ and λ is ignored).
pub fn build_triangle(kind: TriangleKind, y: f64, lambda: f64) -> Result<Triangle2> {
    match kind {
        TriangleKind::T1s => Triangle2::isosceles(Geometry::Spherical, 2.0 * y, 2.0 * x1s(y, lambda)?),
        TriangleKind::T2s => Triangle2::isosceles(Geometry::Spherical, 2.0 * y, 2.0 * x2s(y, lambda)?),
        TriangleKind::Th => Triangle2::isosceles(Geometry::Hyperbolic, 2.0 * y, 2.0 * xh(y, lambda)?),
        TriangleKind::Te => Triangle2::isosceles(Geometry::Euclidean, 2.0 * y, 2.0 * xe(y, lambda)?),
        TriangleKind::Treg(g) => Triangle2::regular(g, 2.0 * y),
    }
}

/// Distance from the vertex opposite `sides[i]` to the line of that side, and the signed
/// angle from the side `sides[k]` (k = i+2) to the foot of the perpendicular.
fn altitude(t: &Triangle2, i: usize) -> (f64, f64) {
    let c = t.sides[(i + 2) % 3];
    let beta = t.angles[(i + 1) % 3];
    let (h, cos_off) = match t.geometry {
        Geometry::Euclidean => {
            let h = c * beta.sin();
            (h, h / c)
        }
        Geometry::Spherical => {
            let h = (c.sin() * beta.sin()).clamp(-1.0, 1.0).asin();
            (h, h.tan() / c.tan())
        }
        Geometry::Hyperbolic => {
            let h = (c.sinh() * beta.sin()).asinh();
            (h, h.tanh() / c.tanh())
        }
    };
    let off = cos_off.clamp(-1.0, 1.0).acos();
    (h, if beta > FRAC_PI_2 { -off } else { off })
}

/// Distance from a vertex, at angle `phi` off the perpendicular, to a line at distance `h`.
fn ray_length(g: Geometry, h: f64, phi: f64) -> f64 {
    let c = phi.cos();
    if c <= 0.0 {
        return f64::INFINITY;
    }
    match g {
        Geometry::Euclidean => h / c,
        Geometry::Spherical => (h.tan() / c).atan(),
        Geometry::Hyperbolic => {
            let t = h.tanh() / c;
            if t >= 1.0 {
                f64::INFINITY
            } else {
                t.atanh()
            }
        }
    }
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += f(a + h * k as f64) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Area of the part of the radius-ρ disk at vertex `i` (opposite `sides[i]`) inside T, by
/// integrating over ray directions; the integrand is split where the ray leaves the disk.
fn vertex_piece(t: &Triangle2, i: usize, rho: f64) -> f64 {
    let g = t.geometry;
    let (h, off) = altitude(t, i);
    let width = t.angles[i];
    let f = |psi: f64| g.radial(rho.min(ray_length(g, h, psi - off)));
    let mut cuts = vec![0.0, width];
    let q = match g {
        Geometry::Euclidean => h / rho,
        Geometry::Spherical => h.tan() / rho.tan(),
        Geometry::Hyperbolic => h.tanh() / rho.tanh(),
    };
    if q < 1.0 {
        let d = q.acos();
        cuts.extend([off - d, off + d].into_iter().filter(|p| *p > 0.0 && *p < width));
    }
    cuts.sort_by(f64::total_cmp);
    cuts.windows(2).map(|w| simpson(f, w[0], w[1], 2000)).sum()
}

/// Fraction of T covered by the disks of radius ρ at its vertices. Uses whole sectors when
/// each vertex is at least ρ from its opposite side, and ray integration otherwise.
pub fn delta_t(t: &Triangle2, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::Domain("ρ must be positive".into()));
    }
    if t.sides.iter().any(|s| *s < 2.0 * rho - 1e-12) {
        return Err(Error::Precondition("disks overlap in triangle".into()));
    }
    let inside = (0..3).all(|i| {
        let h = altitude(t, i).0;
        let (b, c) = (t.sides[(i + 1) % 3], t.sides[(i + 2) % 3]);
        h.min(b).min(c) >= rho
    });
    let covered = if inside {
        t.angles.iter().sum::<f64>() / (2.0 * PI) * t.geometry.disk_area(rho)
    } else {
        (0..3).map(|i| vertex_piece(t, i, rho)).sum()
    };
    Ok(covered / t.area)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityBound {
    pub value: f64,
    /// 1-based position of the branch in the piecewise statement.
    pub branch: u8,
    pub triangle: Triangle2,
    /// The point sat on a branch boundary and was assigned by closure order.
    pub tie: bool,
    pub notes: Vec<String>,
}

/// Densest λ-separable packing of unit disks in the plane, with its Delaunay triangle.
pub fn delta_lambda_euclid(lambda: f64) -> Result<DensityBound> {
    check((0.0..=1.0).contains(&lambda), "need 0 ≤ λ ≤ 1")?;
    let knee = 3f64.sqrt() / 2.0;
    if lambda <= knee {
        let triangle = Triangle2::regular(Geometry::Euclidean, 2.0)?;
        Ok(DensityBound {
            value: PI / 12f64.sqrt(),
            branch: 1,
            triangle,
            tie: lambda == knee,
            notes: Vec::new(),
        })
    } else {
        let y = (2.0 - 2.0 * (1.0 - lambda * lambda).sqrt()).sqrt();
        let triangle = build_triangle(TriangleKind::Te, y, lambda)?;
        Ok(DensityBound {
            value: PI / (4.0 * lambda),
            branch: 2,
            triangle,
            tie: false,
            notes: Vec::new(),
        })
    }
}

/// Triangle of one spherical branch, without checking that the branch applies.
pub fn sphere_branch_triangle(branch: u8, lambda: f64, rho: f64) -> Result<Triangle2> {
    match branch {
        1 => build_triangle(TriangleKind::T1s, inverse_branch(Branch::S1, rho, lambda)?, lambda),
        2 => build_triangle(TriangleKind::Treg(Geometry::Spherical), rho, lambda),
        3 => build_triangle(TriangleKind::T2s, rho, lambda),
        _ => Err(Error::InvalidInput(format!("no spherical branch {branch}"))),
    }
}

/// Upper bound on the density of λ-separable packings of caps of radius ρ.
pub fn delta_lambda_sphere_bound(lambda: f64, rho: f64) -> Result<DensityBound> {
    check(rho > 0.0 && rho < FRAC_PI_2, "need 0 < ρ < π/2")?;
    check(lambda >= 0.0 && lambda <= rho, "need 0 ≤ λ ≤ ρ")?;
    check(lambda <= FRAC_PI_2 - rho + 1e-15, "need λ ≤ π/2 − ρ")?;
    let (ys, yb) = (yss(lambda)?, ybs(lambda)?);
    let strict = [
        rho <= ys.min(FRAC_PI_4),
        ys < rho && rho <= yb,
        FRAC_PI_4 < rho && (rho < ys || rho > yb),
    ];
    let closed = [
        rho <= ys.min(FRAC_PI_4),
        ys <= rho && rho <= yb,
        FRAC_PI_4 <= rho && (rho <= ys || rho >= yb),
    ];
    let (branch, tie) = match strict.iter().position(|b| *b) {
        Some(i) => (i, false),
        None => (
            closed
                .iter()
                .position(|b| *b)
                .ok_or_else(|| Error::Internal("no spherical branch applies".into()))?,
            true,
        ),
    };
    let triangle = sphere_branch_triangle(branch as u8 + 1, lambda, rho)?;
    let mut notes = Vec::new();
    if branch == 2 {
        notes.push("upper threshold of the third branch read as y_b^s".to_string());
    }
    Ok(DensityBound {
        value: delta_t(&triangle, rho)?,
        branch: branch as u8 + 1,
        triangle,
        tie,
        notes,
    })
}

/// Upper bound on the density of λ-separable packings of hyperbolic disks of radius ρ.
pub fn delta_lambda_hyperbolic_bound(lambda: f64, rho: f64) -> Result<DensityBound> {
    check(rho > 0.0, "need ρ > 0")?;
    check(lambda >= 0.0 && lambda <= rho, "need 0 ≤ λ ≤ ρ")?;
    let ys = ysh(lambda)?;
    let (branch, triangle, notes) = if rho <= ys {
        let y = inverse_branch(Branch::H1, rho, lambda)?;
        (1, build_triangle(TriangleKind::Th, y, lambda)?, Vec::new())
    } else {
        let t = build_triangle(TriangleKind::Treg(Geometry::Hyperbolic), rho, lambda)?;
        (
            2,
            t,
            vec!["regular triangle of the second branch taken hyperbolic".to_string()],
        )
    };
    Ok(DensityBound {
        value: delta_t(&triangle, rho)?,
        branch,
        triangle,
        tie: false,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_function_landmarks() {
        assert!((xe(1.0, 1e-9).unwrap() - 0.5).abs() < 1e-12);
        for l in [0.1, 0.3, 0.6] {
            assert!((x1s((2f64.sqrt() * f64::sin(l)).asin(), l).unwrap() - l).abs() < 1e-12);
            assert!((x1s(f64::tan(l).asin(), l).unwrap() - FRAC_PI_4).abs() < 1e-7);
            assert!((x1s(FRAC_PI_2, l).unwrap() - FRAC_PI_4).abs() < 1e-12);
            assert!((x1s(1.0, l).unwrap() + x2s(1.0, l).unwrap() - FRAC_PI_2).abs() < 1e-15);
        }
        assert!(x1s(0.05, 0.3).is_err());
        assert!(xh(0.2, 0.3).is_err());
        assert!(x1s(1.0, 0.8).is_err());
    }

    #[test]
    fn thresholds() {
        let top = 0.6f64.asin();
        assert!((yss(top).unwrap() - ybs(top).unwrap()).abs() < 1e-7);
        for k in 0..=1000 {
            let l = top * k as f64 / 1000.0;
            assert!(yss(l).unwrap() <= ybs(l).unwrap());
        }
        assert!(yss(0.7).is_err());
        assert_eq!(ysh(0.0).unwrap(), 0.0);
        assert!(ysh(0.2).unwrap() > 0.0);
    }

    #[test]
    fn inverses() {
        let l = 0.3;
        assert!((inverse_branch(Branch::S1, FRAC_PI_4, l).unwrap() - f64::tan(l).asin()).abs() < 1e-12);
        let mid = (2f64.sqrt() * f64::sin(l)).asin();
        assert!((inverse_branch(Branch::S1, l, l).unwrap() - mid).abs() < 1e-6);
        for k in 1..20 {
            let v = l + (FRAC_PI_4 - l) * k as f64 / 20.0;
            for b in [Branch::S1, Branch::S2] {
                let y = inverse_branch(b, v, l).unwrap();
                assert!((x1s(y, l).unwrap() - v).abs() < 1e-9);
            }
            let y = inverse_x2s(Branch::S2, FRAC_PI_2 - v, l).unwrap();
            assert!((x2s(y, l).unwrap() - (FRAC_PI_2 - v)).abs() < 1e-9);
        }
        // near λ⁺ the H1 branch is too steep to invert far up in double precision
        for (v, bs) in [(0.31, 2), (0.5, 2), (2.0, 2), (7.0, 1)] {
            for b in [Branch::H2, Branch::H1].into_iter().take(bs) {
                let y = inverse_branch(b, v, l).unwrap();
                assert!((xh(y, l).unwrap() - v).abs() < 1e-9, "{b:?} {v}");
            }
        }
        assert!(inverse_branch(Branch::S1, 0.9, l).is_err());
        assert!(inverse_branch(Branch::H1, 0.2, l).is_err());
    }

    #[test]
    fn triangles() {
        let e = build_triangle(TriangleKind::Treg(Geometry::Euclidean), 1.0, 0.0).unwrap();
        assert!((e.area - 3f64.sqrt()).abs() < 1e-12);
        let s = build_triangle(TriangleKind::Treg(Geometry::Spherical), FRAC_PI_4, 0.0).unwrap();
        assert!((s.area - FRAC_PI_2).abs() < 1e-12);
        assert!(s.angles.iter().all(|a| (a - FRAC_PI_2).abs() < 1e-12));
        // equilateral member of the T^h family: x^h(y) = y
        let l = 0.4;
        let y = bisect(|y| xh(y, l).unwrap() - y, l + 1e-6, 10.0, 1e-14).unwrap();
        let t = build_triangle(TriangleKind::Th, y, l).unwrap();
        assert!((t.sides[1] - t.sides[0]).abs() < 1e-10);
        assert!((t.angles[0] - t.angles[1]).abs() < 1e-8);
        assert!(Triangle2::new(Geometry::Euclidean, 1.0, 1.0, 3.0).is_err());
        assert!(Triangle2::new(Geometry::Spherical, 3.0, 3.0, 1.0).is_err());
    }

    #[test]
    fn spherical_area_matches_lhuilier() {
        let t = Triangle2::new(Geometry::Spherical, 0.9, 1.1, 1.4).unwrap();
        let s = 0.5 * t.sides.iter().sum::<f64>();
        let q = (s / 2.0).tan() * ((s - 0.9) / 2.0).tan() * ((s - 1.1) / 2.0).tan() * ((s - 1.4) / 2.0).tan();
        assert!((4.0 * q.sqrt().atan() - t.area).abs() < 1e-9);
    }

    #[test]
    fn densities() {
        let e = Triangle2::regular(Geometry::Euclidean, 2.0).unwrap();
        assert!((delta_t(&e, 1.0).unwrap() - PI / 12f64.sqrt()).abs() < 1e-12);
        let oct = Triangle2::regular(Geometry::Spherical, FRAC_PI_2).unwrap();
        let expect = 1.5 * PI / (2.0 * PI) * 2.0 * PI * (1.0 - FRAC_PI_4.cos()) / FRAC_PI_2;
        assert!((delta_t(&oct, FRAC_PI_4).unwrap() - expect).abs() < 1e-12);
        assert!(delta_t(&e, 1e-6).unwrap() < 1e-10);
        assert!(matches!(delta_t(&e, 1.1), Err(Error::Precondition(_))));
    }

    #[test]
    fn ray_integration_agrees_with_sectors() {
        for g in [Geometry::Euclidean, Geometry::Spherical, Geometry::Hyperbolic] {
            let t = Triangle2::new(g, 1.0, 1.2, 1.4).unwrap();
            let sectors = t.angles.iter().sum::<f64>() / (2.0 * PI) * g.disk_area(0.3);
            let rays: f64 = (0..3).map(|i| vertex_piece(&t, i, 0.3)).sum();
            assert!((sectors - rays).abs() < 1e-10, "{g:?}");
        }
        // obtuse: the apex disk pokes through the base
        let t = Triangle2::isosceles(Geometry::Euclidean, 3.6, 2.0).unwrap();
        let d = delta_t(&t, 1.0).unwrap();
        let sectors = PI / 2.0 / t.area;
        assert!(d < sectors && d > 0.0);
    }

    #[test]
    fn euclid_closed_form() {
        assert!((delta_lambda_euclid(0.0).unwrap().value - PI / 12f64.sqrt()).abs() < 1e-15);
        assert!((delta_lambda_euclid(1.0).unwrap().value - PI / 4.0).abs() < 1e-15);
        let knee = 3f64.sqrt() / 2.0;
        assert!((PI / 12f64.sqrt() - PI / (4.0 * knee)).abs() < 1e-15);
        for l in [0.9, 0.93, 0.97, 1.0] {
            let d = delta_lambda_euclid(l).unwrap();
            assert!((delta_t(&d.triangle, 1.0).unwrap() - d.value).abs() < 1e-9);
            assert!((d.triangle.sides[1] - 2.0).abs() < 1e-12);
        }
        assert!(delta_lambda_euclid(1.5).is_err());
    }

    #[test]
    fn curved_bounds() {
        let b = delta_lambda_sphere_bound(0.0, 0.5).unwrap();
        assert_eq!(b.branch, 2);
        let direct = delta_t(&Triangle2::regular(Geometry::Spherical, 1.0).unwrap(), 0.5).unwrap();
        assert!((b.value - direct).abs() < 1e-15);
        let b = delta_lambda_sphere_bound(0.2, 0.22).unwrap();
        assert_eq!(b.branch, 1);
        assert!(b.value > 0.0 && b.value < 1.0);
        let h = delta_lambda_hyperbolic_bound(0.0, 0.7).unwrap();
        assert_eq!(h.branch, 2);
        let h = delta_lambda_hyperbolic_bound(0.5, 0.55).unwrap();
        assert_eq!(h.branch, 1);
        assert!(h.value > 0.0 && h.value < 1.0);
        assert!(delta_lambda_sphere_bound(0.7, 0.75).is_err());
    }
}
