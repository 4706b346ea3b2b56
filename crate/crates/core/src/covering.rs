//! Smallest homothetic covers of non-separable families and the size inequalities they obey.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{dir, min_enclosing_circle, perimeter, ConvexBody, DiskHull, Homothet, Vec2};
use crate::lp::{Cmp, Lp, Sense};
use crate::separability::{gap_at, is_non_separable, is_non_separable_bodies, HomothetFamily, Member, NsOptions};

/// `t + s·(Στᵢ)K`, the smallest translate of a scaled reference covering the family.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverResult {
    pub cover: Homothet,
    /// `s`, the covering ratio relative to `Στᵢ`.
    pub lambda: f64,
    /// Largest violation of a containment constraint found when re-checking the cover.
    pub lp_margin: f64,
    pub contained: bool,
}

/// Directions in which containment is checked: facet normals, or 4096 angles for disks.
fn check_directions(k: &ConvexBody) -> Vec<Vec2> {
    match k.facet_normals() {
        Some(n) => n,
        None => (0..4096).map(|i| dir(2.0 * PI * i as f64 / 4096.0)).collect(),
    }
}

/// Largest `h_member(u) − h_cover(u)` over members and check directions.
fn containment_excess(cover: &ConvexBody, members: &[ConvexBody], dirs: &[Vec2]) -> f64 {
    dirs.iter()
        .flat_map(|&u| members.iter().map(move |m| m.support_unit(u) - cover.support_unit(u)))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn scale_of(members: &[ConvexBody]) -> f64 {
    members
        .iter()
        .flat_map(|m| m.generators())
        .map(|(c, r)| c.norm() + r)
        .fold(1.0, f64::max)
}

/// The cover `x̄ + (Στᵢ)K` with `x̄` the ratio-weighted centroid of the centers. The family
/// is checked for non-separability first; a failed containment check on a non-separable
/// family is reported as an internal error.
pub fn goodman_goodman_cover(family: &HomothetFamily) -> Result<Homothet> {
    let k = family.reference();
    if !k.is_o_symmetric(1e-9) {
        return Err(Error::NotSymmetric);
    }
    let total = family.total_ratio();
    let center = family.members().iter().map(|m| m.center * m.ratio).sum::<Vec2>() / total;
    let cover = Homothet {
        reference: k.clone(),
        center,
        ratio: total,
    };
    let members = family.bodies();
    if family.len() > 1 && !is_non_separable(family)?.is_non_separable() {
        return Err(Error::NotNonSeparable);
    }
    let excess = containment_excess(&cover.body(), &members, &check_directions(k));
    if excess > 1e-9 * scale_of(&members) {
        return Err(Error::Internal(format!(
            "weighted-centroid cover misses a member by {excess}"
        )));
    }
    Ok(cover)
}

/// λ(𝒦): for a polygonal reference by the LP over `(t, s)` with one constraint per member
/// vertex and facet normal; for a disk by the smallest enclosing disk of the members.
pub fn min_cover_ratio(family: &HomothetFamily) -> Result<CoverResult> {
    let k = family.reference();
    let total = family.total_ratio();
    let members = family.bodies();
    let (center, lambda) = match k {
        ConvexBody::Disk(d) => {
            let disks: Vec<(Vec2, f64)> = members.iter().flat_map(|m| m.generators()).collect();
            let (c, r) = min_enclosing_circle(&disks);
            let s = r / (total * d.radius());
            (c - d.center() * (s * total), s)
        }
        ConvexBody::Polygon(p) => {
            let normals = p.outward_normals();
            let mut lp = Lp::new(Sense::Minimize);
            let tx = lp.var(0.0, f64::NEG_INFINITY, f64::INFINITY);
            let ty = lp.var(0.0, f64::NEG_INFINITY, f64::INFINITY);
            let s = lp.var(1.0, 0.0, f64::INFINITY);
            for n in &normals {
                let h = k.support_unit(*n);
                for m in &members {
                    // ⟨p − t, n⟩ ≤ s (Στ) h_K(n) for the extreme point p of the member in n
                    let hp = m.support_unit(*n);
                    lp.constraint(&[(tx, -n.x), (ty, -n.y), (s, -total * h)], Cmp::Le, -hp);
                }
            }
            let sol = lp.solve()?;
            (Vec2::new(sol.values[tx], sol.values[ty]), sol.values[s])
        }
        ConvexBody::Degenerate(_) => return Err(Error::NotFullDimensional),
    };
    if !(lambda > 0.0) {
        return Err(Error::Internal(format!(
            "covering ratio must be positive, got {lambda}"
        )));
    }
    let cover = Homothet {
        reference: k.clone(),
        center,
        ratio: lambda * total,
    };
    let excess = containment_excess(&cover.body(), &members, &check_directions(k));
    let contained = excess <= 1e-9 * scale_of(&members);
    Ok(CoverResult {
        cover,
        lambda,
        lp_margin: excess,
        contained,
    })
}

/// Three unit regular triangles inside the regular triangle of side `2 + 2/√3`, each with a
/// side on a different side of the big one, plus `n − 3` tiny copies near its incenter.
pub fn build_triangle_counterexample(n: usize) -> Result<HomothetFamily> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need at least three members, got {n}")));
    }
    let s3 = 3f64.sqrt();
    let k = ConvexBody::polygon(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.5, s3 / 2.0)])?;
    let side = 2.0 + 2.0 / s3;
    let first = 2.0 / 3.0 + 1.0 / s3;
    let (a, b, c) = (
        Vec2::zeros(),
        Vec2::new(side, 0.0),
        Vec2::new(side / 2.0, side * s3 / 2.0),
    );
    let e_bc = (c - b) / side;
    let e_ca = (a - c) / side;
    let mut members = vec![
        Member {
            center: Vec2::new(first, 0.0),
            ratio: 1.0,
        },
        Member {
            center: b + e_bc * first - Vec2::new(1.0, 0.0),
            ratio: 1.0,
        },
        Member {
            center: c + e_ca * first - Vec2::new(0.5, s3 / 2.0),
            ratio: 1.0,
        },
    ];
    let incenter = Vec2::new(side / 2.0, side / (2.0 * s3));
    let extra = n - 3;
    for i in 0..extra {
        let shift = (i as f64 - (extra as f64 - 1.0) / 2.0) * 3e-3;
        members.push(Member {
            center: incenter + Vec2::new(shift, 0.0),
            ratio: 1e-3,
        });
    }
    HomothetFamily::new(k, members)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HadwigerReport {
    pub perimeter: f64,
    pub perimeter_sum: f64,
    pub diameter: f64,
    pub diameter_sum: f64,
    pub circumradius: f64,
    pub circumradius_sum: f64,
    /// `sum − value` for perimeter, diameter and circumradius.
    pub slacks: [f64; 3],
    pub holds: bool,
}

/// Perimeter, diameter and circumradius of `conv ⋃ bodies` against the member sums.
pub fn hadwiger_check(bodies: &[ConvexBody], tol: f64) -> Result<HadwigerReport> {
    if bodies.is_empty() {
        return Err(Error::InvalidInput("empty family".into()));
    }
    for b in bodies {
        b.require_full_dimensional()?;
    }
    if bodies.len() > 1 && !is_non_separable_bodies(bodies, &NsOptions::default())?.is_non_separable() {
        return Err(Error::NotNonSeparable);
    }
    let hull = DiskHull::of_union(bodies)?;
    let perimeter_sum: f64 = bodies.iter().map(perimeter).sum();
    let diameter_sum: f64 = bodies.iter().map(|b| DiskHull::of_body(b).diameter()).sum();
    let circumradius_sum: f64 = bodies.iter().map(|b| DiskHull::of_body(b).circumcircle().1).sum();
    let (p, d, r) = (hull.perimeter(), hull.diameter(), hull.circumcircle().1);
    let slacks = [perimeter_sum - p, diameter_sum - d, circumradius_sum - r];
    let scale = perimeter_sum.max(1.0);
    Ok(HadwigerReport {
        perimeter: p,
        perimeter_sum,
        diameter: d,
        diameter_sum,
        circumradius: r,
        circumradius_sum,
        slacks,
        holds: slacks.iter().all(|&s| s >= -tol * scale),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FacetParallelReport {
    pub lambda: f64,
    pub bound: f64,
    pub holds: bool,
    pub cover: CoverResult,
}

/// For homothets of a triangle that no line parallel to a side separates, λ ≤ 3/2.
pub fn facet_parallel_cover_check(family: &HomothetFamily, tol: f64) -> Result<FacetParallelReport> {
    let normals = match family.reference() {
        ConvexBody::Polygon(p) if p.len() == 3 => p.outward_normals(),
        _ => return Err(Error::InvalidInput("reference must be a triangle".into())),
    };
    let bodies = family.bodies();
    if bodies.len() > 1 && normals.iter().any(|&u| gap_at(&bodies, u).0 > tol) {
        return Err(Error::NotFacetParallelNonSeparable);
    }
    let cover = min_cover_ratio(family)?;
    let bound = 1.5;
    Ok(FacetParallelReport {
        lambda: cover.lambda,
        bound,
        holds: cover.lambda <= bound + tol,
        cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separability::find_separating_hyperplane;

    fn disks(centers: &[(f64, f64)]) -> HomothetFamily {
        HomothetFamily::from_pairs(
            ConvexBody::unit_disk(),
            &centers.iter().map(|&(x, y)| (Vec2::new(x, y), 1.0)).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn gg_cover_of_tangent_pair() {
        let c = goodman_goodman_cover(&disks(&[(0.0, 0.0), (2.0, 0.0)])).unwrap();
        assert_eq!(c.center, Vec2::new(1.0, 0.0));
        assert_eq!(c.ratio, 2.0);
        assert_eq!(
            goodman_goodman_cover(&disks(&[(0.0, 0.0), (3.0, 0.0)])),
            Err(Error::NotNonSeparable)
        );
        let one = goodman_goodman_cover(&disks(&[(5.0, 1.0)])).unwrap();
        assert_eq!((one.center, one.ratio), (Vec2::new(5.0, 1.0), 1.0));
    }

    #[test]
    fn collinear_chain_is_tight() {
        let f = disks(&[(0.0, 0.0), (2.0, 0.0), (4.0, 0.0), (6.0, 0.0)]);
        let r = min_cover_ratio(&f).unwrap();
        assert!((r.lambda - 1.0).abs() < 1e-12);
        assert!(r.contained);
        assert!((r.cover.center - Vec2::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn counterexample_ratio() {
        let f = build_triangle_counterexample(3).unwrap();
        assert!(is_non_separable(&f).unwrap().is_non_separable());
        let r = min_cover_ratio(&f).unwrap();
        let expected = 2.0 / 3.0 + 2.0 / (3.0 * 3f64.sqrt());
        assert!((r.lambda - expected).abs() < 1e-9, "{}", r.lambda);
        assert!(r.contained);
        // no member can be strictly separated from the other two
        let b = f.bodies();
        for i in 0..3 {
            let rest: Vec<ConvexBody> = (0..3).filter(|&j| j != i).map(|j| b[j].clone()).collect();
            assert!(find_separating_hyperplane(&b[i..=i], &rest, true).unwrap().is_none());
        }
        let r = facet_parallel_cover_check(&f, 1e-9).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn counterexample_with_extra_members() {
        let f = build_triangle_counterexample(5).unwrap();
        assert_eq!(f.len(), 5);
        assert!(is_non_separable(&f).unwrap().is_non_separable());
        let b = f.bodies();
        for i in 3..5 {
            for j in 0..5 {
                if i != j {
                    assert!(find_separating_hyperplane(&b[i..=i], &b[j..=j], true)
                        .unwrap()
                        .is_some());
                }
            }
        }
        let r = min_cover_ratio(&f).unwrap();
        // same cover, larger ratio sum
        let side = 2.0 + 2.0 / 3f64.sqrt();
        assert!((r.lambda - side / f.total_ratio()).abs() < 1e-9);
        assert!(r.lambda > 1.0);
        assert!(build_triangle_counterexample(2).is_err());
    }

    #[test]
    fn hadwiger_pair_and_chain() {
        let pair = disks(&[(0.0, 0.0), (2.0, 0.0)]).bodies();
        let r = hadwiger_check(&pair, 1e-9).unwrap();
        assert!((r.perimeter - (2.0 * PI + 4.0)).abs() < 1e-12);
        assert!((r.perimeter_sum - 4.0 * PI).abs() < 1e-12);
        let chain = disks(&[(0.0, 0.0), (2.0, 0.0), (4.0, 0.0)]).bodies();
        let r = hadwiger_check(&chain, 1e-9).unwrap();
        assert!(r.slacks[2].abs() < 1e-12);
        assert!(r.slacks[1].abs() < 1e-12);
        assert!(r.holds);
        assert_eq!(
            hadwiger_check(&disks(&[(0.0, 0.0), (3.0, 0.0)]).bodies(), 1e-9),
            Err(Error::NotNonSeparable)
        );
        let one = hadwiger_check(&chain[..1], 1e-9).unwrap();
        assert!(one.slacks.iter().all(|s| s.abs() < 1e-12));
    }

    #[test]
    fn single_triangle_facet_parallel() {
        let k = ConvexBody::polygon(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]).unwrap();
        let f = HomothetFamily::from_pairs(k.clone(), &[(Vec2::new(2.0, 3.0), 0.5)]).unwrap();
        let r = facet_parallel_cover_check(&f, 1e-9).unwrap();
        assert!((r.lambda - 1.0).abs() < 1e-9);
        let apart = HomothetFamily::from_pairs(k, &[(Vec2::zeros(), 1.0), (Vec2::new(3.0, 0.0), 1.0)]).unwrap();
        assert_eq!(
            facet_parallel_cover_check(&apart, 1e-9).unwrap_err(),
            Error::NotFacetParallelNonSeparable
        );
    }
}
