use std::f64::consts::PI;

use super::Hyperplane;
use crate::error::{Error, Result};
use crate::geom::{dir, ConvexBody, Vec2, DEFAULT_TOL};
use crate::lp::{Cmp, Lp, Sense};
use crate::optim::{bisect, golden_max};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation {
    pub separates: bool,
    /// min(c − max_{F1} h(u), min_{F2} −h(−u) − c); negative when the plane cuts a body.
    pub margin: f64,
}

/// Whether `plane` leaves ⋃F1 strictly below and ⋃F2 strictly above.
pub fn strictly_separates(plane: &Hyperplane, f1: &[ConvexBody], f2: &[ConvexBody], tol: f64) -> Separation {
    let u = plane.normal;
    let top1 = f1.iter().map(|b| b.support_unit(u)).fold(f64::NEG_INFINITY, f64::max);
    let bot2 = f2.iter().map(|b| -b.support_unit(-u)).fold(f64::INFINITY, f64::min);
    let margin = (plane.offset - top1).min(bot2 - plane.offset);
    Separation {
        separates: margin > tol,
        margin,
    }
}

type Gens = Vec<(Vec2, f64)>;

fn gens(f: &[ConvexBody]) -> Gens {
    f.iter().flat_map(|b| b.generators()).collect()
}

/// Euclidean gap `min_{F2} lo(u) − max_{F1} hi(u)` for a unit direction.
fn gap(g1: &Gens, g2: &Gens, u: Vec2) -> f64 {
    let hi = g1.iter().map(|&(c, r)| c.dot(&u) + r).fold(f64::NEG_INFINITY, f64::max);
    let lo = g2.iter().map(|&(c, r)| c.dot(&u) - r).fold(f64::INFINITY, f64::min);
    lo - hi
}

fn plane_at(g1: &Gens, g2: &Gens, u: Vec2) -> (Hyperplane, f64) {
    let hi = g1.iter().map(|&(c, r)| c.dot(&u) + r).fold(f64::NEG_INFINITY, f64::max);
    let lo = g2.iter().map(|&(c, r)| c.dot(&u) - r).fold(f64::INFINITY, f64::min);
    (
        Hyperplane {
            normal: u,
            offset: 0.5 * (hi + lo),
        },
        0.5 * (lo - hi),
    )
}

/// Largest half-gap direction over the box-normalized LP with cutting planes for disks.
/// Returns `None` when the relaxation has no positive optimum.
fn lp_direction(g1: &Gens, g2: &Gens) -> Result<Option<Vec2>> {
    let scale = g1.iter().chain(g2).map(|(c, r)| c.norm() + r).fold(1.0, f64::max);
    let mut cuts: Vec<Vec2> = (0..8).map(|k| dir(PI * k as f64 / 4.0)).collect();
    let any_disk = g1.iter().chain(g2).any(|g| g.1 > 0.0);
    let mut last: Option<Vec2> = None;
    for _ in 0..80 {
        let mut lp = Lp::new(Sense::Maximize);
        let w1 = lp.var(0.0, -1.0, 1.0);
        let w2 = lp.var(0.0, -1.0, 1.0);
        // |a|, |b| ≤ √2·scale at any optimum; finite bounds keep the simplex away from
        // spurious unboundedness
        let a = lp.var(-1.0, -4.0 * scale, 4.0 * scale);
        let b = lp.var(1.0, -4.0 * scale, 4.0 * scale);
        for &(c, r) in g1 {
            if r == 0.0 {
                lp.constraint(&[(w1, c.x), (w2, c.y), (a, -1.0)], Cmp::Le, 0.0);
            } else {
                for e in &cuts {
                    lp.constraint(&[(w1, c.x + r * e.x), (w2, c.y + r * e.y), (a, -1.0)], Cmp::Le, 0.0);
                }
            }
        }
        for &(c, r) in g2 {
            if r == 0.0 {
                lp.constraint(&[(w1, c.x), (w2, c.y), (b, -1.0)], Cmp::Ge, 0.0);
            } else {
                for e in &cuts {
                    lp.constraint(&[(w1, c.x - r * e.x), (w2, c.y - r * e.y), (b, -1.0)], Cmp::Ge, 0.0);
                }
            }
        }
        let sol = lp.solve()?;
        let w = Vec2::new(sol.values[w1], sol.values[w2]);
        let n = w.norm();
        if sol.objective <= 1e-12 * scale || n < 1e-12 {
            return Ok(last);
        }
        let u = w / n;
        let truth = n * gap(g1, g2, u);
        if truth > 0.0 {
            last = Some(u);
        }
        if !any_disk || sol.objective - truth <= 1e-10 * scale {
            return Ok(last.or(Some(u)));
        }
        cuts.push(u);
    }
    Ok(last)
}

/// Maximizes the gap over the arc of positive gap containing `u0`.
fn polish(g1: &Gens, g2: &Gens, u0: Vec2) -> Vec2 {
    let t0 = u0.y.atan2(u0.x);
    let f = |t: f64| gap(g1, g2, dir(t));
    if f(t0) <= 0.0 {
        return u0;
    }
    let right = bisect(f, t0, t0 + PI, 1e-14).unwrap_or(t0 + PI);
    let left = bisect(f, t0 - PI, t0, 1e-14).unwrap_or(t0 - PI);
    let (t, v) = golden_max(f, left, right, 1e-14);
    if v >= f(t0) {
        dir(t)
    } else {
        u0
    }
}

/// Best plane for the split and its half-gap margin (negative when overlapping).
pub fn max_margin_separator(f1: &[ConvexBody], f2: &[ConvexBody]) -> Result<(Hyperplane, f64)> {
    if f1.is_empty() || f2.is_empty() {
        return Err(Error::InvalidInput("both sides of a separation need members".into()));
    }
    let g1 = gens(f1);
    let g2 = gens(f2);
    if let Some(u) = lp_direction(&g1, &g2)? {
        let u = polish(&g1, &g2, u);
        if gap(&g1, &g2, u) > 0.0 {
            return Ok(plane_at(&g1, &g2, u));
        }
    }
    // no positive gap: locate the least negative one by scanning
    let n = 2048;
    let f = |t: f64| gap(&g1, &g2, dir(t));
    let (k, _) = (0..n)
        .map(|k| (k, f(2.0 * PI * k as f64 / n as f64)))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let step = 2.0 * PI / n as f64;
    let t0 = step * k as f64;
    let (t, _) = golden_max(f, t0 - step, t0 + step, 1e-14);
    let t = if f(t) >= f(t0) { t } else { t0 };
    Ok(plane_at(&g1, &g2, dir(t)))
}

/// A plane separating ⋃F1 from ⋃F2 (strictly: clearance > 1e-9 on both sides).
pub fn find_separating_hyperplane(f1: &[ConvexBody], f2: &[ConvexBody], strict: bool) -> Result<Option<Hyperplane>> {
    find_separating_hyperplane_tol(f1, f2, strict, DEFAULT_TOL)
}

pub fn find_separating_hyperplane_tol(
    f1: &[ConvexBody],
    f2: &[ConvexBody],
    strict: bool,
    tol: f64,
) -> Result<Option<Hyperplane>> {
    let (plane, margin) = max_margin_separator(f1, f2)?;
    let ok = if strict { margin > tol } else { margin >= -tol };
    Ok(ok.then_some(plane))
}

/// Separability of F1 from F2 decided through all subfamilies with at most `d + 2`
/// members. Subfamilies of the maximal admissible size suffice since separability is
/// inherited by subfamilies.
pub fn kirchberger_reduce(f1: &[ConvexBody], f2: &[ConvexBody], d: usize, strict: bool) -> Result<bool> {
    if f1.len() + f2.len() < 2 {
        return Err(Error::InvalidInput("need at least two bodies".into()));
    }
    let n = f1.len() + f2.len();
    let k = (d + 2).min(n);
    let all: Vec<(bool, &ConvexBody)> = f1
        .iter()
        .map(|b| (true, b))
        .chain(f2.iter().map(|b| (false, b)))
        .collect();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let s1: Vec<ConvexBody> = idx.iter().filter(|&&i| all[i].0).map(|&i| all[i].1.clone()).collect();
        let s2: Vec<ConvexBody> = idx.iter().filter(|&&i| !all[i].0).map(|&i| all[i].1.clone()).collect();
        if !s1.is_empty() && !s2.is_empty() && find_separating_hyperplane(&s1, &s2, strict)?.is_none() {
            return Ok(false);
        }
        // next k-combination
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec2;

    fn disk(x: f64, y: f64, r: f64) -> ConvexBody {
        ConvexBody::disk(Vec2::new(x, y), r).unwrap()
    }

    #[test]
    fn mixed_split_from_random_draw() {
        let d = |x: f64, y: f64, r: f64| ConvexBody::disk(Vec2::new(x, y), r).unwrap();
        let p = |v: &[(f64, f64)]| ConvexBody::polygon(v.iter().map(|&(x, y)| Vec2::new(x, y)).collect()).unwrap();
        let f1 = vec![
            d(-2.091364109276335, 2.948383116292444, 1.3523132537573543),
            d(-1.9926129798846302, 1.6726192644771078, 0.445359943702921),
            p(&[
                (0.5889325814877577, -0.32177668793005776),
                (0.6469085453761569, -0.6982890211681608),
                (0.834147810894601, -0.2856480447295118),
                (0.6491408635370922, -0.21139911165628933),
            ]),
        ];
        let f2 = vec![
            p(&[
                (1.8606584081946458, -0.8651193214997513),
                (2.8403322393201176, -0.8928337105817767),
                (2.0028666773126482, -0.40540849029043313),
            ]),
            p(&[
                (0.4480883509797777, -2.098690997055435),
                (0.8821983337791655, -2.549953289516564),
                (0.7686198537967048, -2.2792823694744073),
            ]),
            d(2.8521314588593913, 0.5154287026952464, 1.28051083450428),
        ];
        let direct = find_separating_hyperplane(&f1, &f2, true).unwrap().is_some();
        assert_eq!(kirchberger_reduce(&f1, &f2, 2, true).unwrap(), direct);
    }

    #[test]
    fn strict_examples() {
        let f1 = [disk(0.0, 0.0, 0.4)];
        let f2 = [disk(2.0, 0.0, 0.4)];
        let p = Hyperplane {
            normal: Vec2::new(1.0, 0.0),
            offset: 0.5,
        };
        let s = strictly_separates(&p, &f1, &f2, 1e-9);
        assert!(s.separates);
        assert!((s.margin - 0.1).abs() < 1e-15);
        let p0 = Hyperplane {
            normal: Vec2::new(1.0, 0.0),
            offset: 0.0,
        };
        assert!(!strictly_separates(&p0, &f1, &f2, 1e-9).separates);
        assert!(!strictly_separates(&p, &f1, &f1, 1e-9).separates);
    }

    #[test]
    fn find_examples() {
        let p = find_separating_hyperplane(&[disk(0.0, 0.0, 1.0)], &[disk(3.0, 0.0, 1.0)], true)
            .unwrap()
            .unwrap();
        assert!((p.normal - Vec2::new(1.0, 0.0)).norm() < 1e-6);
        assert!((p.offset - 1.5).abs() < 1e-9);
        assert!(
            find_separating_hyperplane(&[disk(0.0, 0.0, 1.0)], &[disk(1.5, 0.0, 1.0)], true)
                .unwrap()
                .is_none()
        );
        assert!(
            find_separating_hyperplane(&[disk(0.0, 0.0, 1.0)], &[disk(1.5, 0.0, 1.0)], false)
                .unwrap()
                .is_none()
        );
        // touching: nonstrict only
        let t1 = [disk(0.0, 0.0, 1.0)];
        let t2 = [disk(2.0, 0.0, 1.0)];
        assert!(find_separating_hyperplane(&t1, &t2, true).unwrap().is_none());
        assert!(find_separating_hyperplane(&t1, &t2, false).unwrap().is_some());
    }

    #[test]
    fn polygons_and_disks_mixed() {
        let sq = ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap();
        let (plane, m) = max_margin_separator(&[sq], &[disk(3.0, 3.0, 1.0)]).unwrap();
        // farthest corner pair along the diagonal: gap = dist((1,1),(3,3)) − 1
        let expect = 0.5 * (8f64.sqrt() - 1.0);
        assert!((m - expect).abs() < 1e-10, "{m} vs {expect}");
        assert!((plane.normal - Vec2::new(1.0, 1.0).normalize()).norm() < 1e-6);
    }

    #[test]
    fn kirchberger_small() {
        let a = [disk(0.0, 0.0, 1.0)];
        let b = [disk(3.0, 0.0, 1.0)];
        assert!(kirchberger_reduce(&a, &b, 2, true).unwrap());
        let f1 = [disk(0.0, 0.0, 1.0), disk(4.0, 0.0, 1.0)];
        let f2 = [disk(2.0, 0.5, 0.5), disk(2.0, -3.0, 0.5)];
        let direct = find_separating_hyperplane(&f1, &f2, true).unwrap().is_some();
        assert_eq!(kirchberger_reduce(&f1, &f2, 2, true).unwrap(), direct);
        assert!(!direct);
    }
}
