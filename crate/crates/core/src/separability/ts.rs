//! Total, local and ρ-separability of planar translative packings. Certificate-first:
//! supplied lines are validated, otherwise a finite candidate set (common tangents of
//! generator pairs, polygon edge lines, midlines) is searched. The search is sound but
//! not complete, so a miss is reported as unresolved.

use std::f64::consts::PI;

use super::Hyperplane;
use crate::error::{Error, Result};
use crate::geom::{dir, minkowski_norm, ConvexBody, Vec2};
use crate::packing::TranslatePacking;

/// A line with the members it leaves on each side (`left`: ⟨u,x⟩ ≤ c).
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatingLine {
    pub line: Hyperplane,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsVerdict {
    Verified,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TsReport {
    pub verdict: TsVerdict,
    pub certificates: Vec<SeparatingLine>,
    pub unresolved_pairs: Vec<(usize, usize)>,
    pub candidates_checked: usize,
}

impl TsReport {
    pub fn is_verified(&self) -> bool {
        self.verdict == TsVerdict::Verified
    }
}

/// Sides of every member relative to the line, or `None` if the line meets an interior.
fn sides(members: &[ConvexBody], line: &Hyperplane, tol: f64) -> Option<(Vec<usize>, Vec<usize>)> {
    let u = line.normal;
    let eps = tol * (1.0 + line.offset.abs());
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (k, m) in members.iter().enumerate() {
        if m.support_unit(u) <= line.offset + eps {
            left.push(k);
        } else if -m.support_unit(-u) >= line.offset - eps {
            right.push(k);
        } else {
            return None;
        }
    }
    Some((left, right))
}

/// Lines tangent to both disks `(p, r1)`, `(q, r2)`; for points, the line through them.
fn common_tangents((p, r1): (Vec2, f64), (q, r2): (Vec2, f64)) -> Vec<Hyperplane> {
    let d = q - p;
    let dist = d.norm();
    if dist == 0.0 {
        return Vec::new();
    }
    let phi = d.y.atan2(d.x);
    let mut out = Vec::new();
    // ⟨u,p⟩ + s1 r1 = c = ⟨u,q⟩ + s2 r2  ⇒  ⟨u, q − p⟩ = s1 r1 − s2 r2
    for (s1, s2) in [(1.0, 1.0), (1.0, -1.0)] {
        let k = (s1 * r1 - s2 * r2) / dist;
        if k.abs() > 1.0 + 1e-12 {
            continue;
        }
        let a = k.clamp(-1.0, 1.0).acos();
        for t in [phi + a, phi - a] {
            let u = dir(t);
            out.push(Hyperplane {
                normal: u,
                offset: u.dot(&p) + s1 * r1,
            });
        }
    }
    out
}

/// The finite candidate set for the pair `(a, b)` of members.
pub fn candidate_lines(a: &ConvexBody, b: &ConvexBody) -> Vec<Hyperplane> {
    let ga = a.generators();
    let gb = b.generators();
    let mut lines = Vec::new();
    for &x in &ga {
        for &y in &gb {
            lines.extend(common_tangents(x, y));
        }
    }
    for body in [a, b] {
        if let ConvexBody::Polygon(p) = body {
            for ((v, _), n) in p.edges().zip(p.outward_normals()) {
                lines.push(Hyperplane {
                    normal: n,
                    offset: n.dot(&v),
                });
            }
        }
    }
    // midlines in every candidate direction
    let mids: Vec<Hyperplane> = lines
        .iter()
        .filter_map(|l| {
            let u = l.normal;
            let (ha, lb) = (a.support_unit(u), -b.support_unit(-u));
            let (hb, la) = (b.support_unit(u), -a.support_unit(-u));
            if ha <= lb {
                Some(Hyperplane {
                    normal: u,
                    offset: 0.5 * (ha + lb),
                })
            } else if hb <= la {
                Some(Hyperplane {
                    normal: u,
                    offset: 0.5 * (hb + la),
                })
            } else {
                None
            }
        })
        .collect();
    lines.extend(mids);
    // the axis-like directions of the pair itself
    let d = b.reference_point() - a.reference_point();
    if d.norm() > 0.0 {
        let t = d.y.atan2(d.x);
        for u in [dir(t), dir(t + PI / 2.0)] {
            let (ha, lb) = (a.support_unit(u), -b.support_unit(-u));
            if ha <= lb {
                lines.push(Hyperplane {
                    normal: u,
                    offset: 0.5 * (ha + lb),
                });
            }
        }
    }
    lines
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n + j
}

fn absorb(
    covered: &mut [bool],
    n: usize,
    left: &[usize],
    right: &[usize],
    line: Hyperplane,
    used: &mut Vec<SeparatingLine>,
) -> usize {
    let mut new = 0;
    for &i in left {
        for &j in right {
            let k = pair_index(n, i, j);
            if !covered[k] {
                covered[k] = true;
                new += 1;
            }
        }
    }
    if new > 0 {
        used.push(SeparatingLine {
            line,
            left: left.to_vec(),
            right: right.to_vec(),
        });
    }
    new
}

pub fn is_ts_packing(
    packing: &TranslatePacking,
    certificates: Option<&[SeparatingLine]>,
    tol: f64,
) -> Result<TsReport> {
    let n = packing.len();
    let members = packing.members();
    let mut covered = vec![false; n * n];
    let mut remaining = n * n.saturating_sub(1) / 2;
    let mut used: Vec<SeparatingLine> = Vec::new();
    let mut checked = 0;

    for cert in certificates.unwrap_or(&[]) {
        checked += 1;
        let line = Hyperplane::new(cert.line.normal, cert.line.offset)?;
        let (left, right) = sides(&members, &line, tol)
            .ok_or_else(|| Error::InvalidCertificate("line meets the interior of a member".into()))?;
        if cert.left.iter().chain(&cert.right).any(|&i| i >= n)
            || cert.left.iter().any(|i| !left.contains(i))
            || cert.right.iter().any(|i| !right.contains(i))
        {
            return Err(Error::InvalidCertificate("member listed on the wrong side".into()));
        }
        remaining -= absorb(&mut covered, n, &left, &right, line, &mut used);
    }

    'pairs: for i in 0..n {
        for j in i + 1..n {
            if remaining == 0 {
                break 'pairs;
            }
            if covered[pair_index(n, i, j)] {
                continue;
            }
            for line in candidate_lines(&members[i], &members[j]) {
                checked += 1;
                if let Some((left, right)) = sides(&members, &line, tol) {
                    remaining -= absorb(&mut covered, n, &left, &right, line, &mut used);
                    if covered[pair_index(n, i, j)] {
                        break;
                    }
                }
            }
        }
    }

    let unresolved_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !covered[pair_index(n, i, j)])
        .collect();
    Ok(TsReport {
        verdict: if unresolved_pairs.is_empty() {
            TsVerdict::Verified
        } else {
            TsVerdict::Unresolved
        },
        certificates: used,
        unresolved_pairs,
        candidates_checked: checked,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LsReport {
    pub verdict: TsVerdict,
    /// Members whose neighbourhood packing could not be verified.
    pub failing: Vec<usize>,
    pub contacts: usize,
}

/// Each member together with its tangent neighbours must form a TS-packing.
pub fn is_ls_packing(packing: &TranslatePacking, tol: f64) -> Result<LsReport> {
    let mut failing = Vec::new();
    let mut contacts = 0;
    for i in 0..packing.len() {
        let nb = packing.neighbors(i, tol);
        contacts += nb.len();
        let mut idx = vec![i];
        idx.extend(nb);
        if idx.len() > 2 && !is_ts_packing(&packing.sub(&idx), None, tol)?.is_verified() {
            failing.push(i);
        }
    }
    Ok(LsReport {
        verdict: if failing.is_empty() {
            TsVerdict::Verified
        } else {
            TsVerdict::Unresolved
        },
        failing,
        contacts: contacts / 2,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhoReport {
    pub verdict: TsVerdict,
    pub failing: Vec<usize>,
    /// True when ρ < 3 made the answer immediate.
    pub trivial: bool,
}

/// For every member `i`, the members inside `c_i + ρC` must form a TS-packing.
pub fn is_rho_separable(packing: &TranslatePacking, rho: f64, tol: f64) -> Result<RhoReport> {
    let c = packing.body();
    if !c.is_o_symmetric(1e-9) {
        return Err(Error::NotSymmetric);
    }
    if !(rho >= 1.0) {
        return Err(Error::Domain(format!("ρ must be at least 1, got {rho}")));
    }
    if rho < 3.0 {
        // c_j + C ⊆ c_i + ρC needs |c_j − c_i|_C ≤ ρ − 1 < 2, so only member i fits
        return Ok(RhoReport {
            verdict: TsVerdict::Verified,
            failing: Vec::new(),
            trivial: true,
        });
    }
    let centers = packing.centers();
    let mut failing = Vec::new();
    for i in 0..packing.len() {
        let mut idx = vec![i];
        for j in 0..packing.len() {
            if j != i && minkowski_norm(c, centers[j] - centers[i])? <= rho - 1.0 + tol {
                idx.push(j);
            }
        }
        if idx.len() > 2 && !is_ts_packing(&packing.sub(&idx), None, tol)?.is_verified() {
            failing.push(i);
        }
    }
    Ok(RhoReport {
        verdict: if failing.is_empty() {
            TsVerdict::Verified
        } else {
            TsVerdict::Unresolved
        },
        failing,
        trivial: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_diam(centers: &[(f64, f64)]) -> TranslatePacking {
        TranslatePacking::new(
            ConvexBody::disk(Vec2::zeros(), 0.5).unwrap(),
            centers.iter().map(|&(x, y)| Vec2::new(x, y)).collect(),
        )
        .unwrap()
    }

    fn hex_triple() -> TranslatePacking {
        unit_diam(&[(0.0, 0.0), (1.0, 0.0), (0.5, 3f64.sqrt() / 2.0)])
    }

    #[test]
    fn grid_is_ts() {
        let p = unit_diam(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]);
        let r = is_ts_packing(&p, None, 1e-9).unwrap();
        assert!(r.is_verified());
        assert!(r.certificates.len() <= 3);
    }

    #[test]
    fn hex_triple_unresolved() {
        let r = is_ts_packing(&hex_triple(), None, 1e-9).unwrap();
        assert_eq!(r.verdict, TsVerdict::Unresolved);
        assert!(!r.unresolved_pairs.is_empty());
        assert_eq!(
            is_ls_packing(&hex_triple(), 1e-9).unwrap().verdict,
            TsVerdict::Unresolved
        );
    }

    #[test]
    fn supplied_certificates() {
        let p = unit_diam(&[(0.0, 0.0), (1.0, 0.0)]);
        let good = SeparatingLine {
            line: Hyperplane {
                normal: Vec2::new(1.0, 0.0),
                offset: 0.5,
            },
            left: vec![0],
            right: vec![1],
        };
        let r = is_ts_packing(&p, Some(std::slice::from_ref(&good)), 1e-9).unwrap();
        assert!(r.is_verified());
        assert_eq!(r.candidates_checked, 1);
        let bad = SeparatingLine {
            line: Hyperplane {
                normal: Vec2::new(1.0, 0.0),
                offset: 0.2,
            },
            ..good.clone()
        };
        assert!(matches!(
            is_ts_packing(&p, Some(&[bad]), 1e-9),
            Err(Error::InvalidCertificate(_))
        ));
        let swapped = SeparatingLine {
            left: vec![1],
            right: vec![0],
            ..good
        };
        assert!(is_ts_packing(&p, Some(&[swapped]), 1e-9).is_err());
    }

    #[test]
    fn rho_examples() {
        assert!(is_rho_separable(&hex_triple(), 2.0, 1e-9).unwrap().trivial);
        let sq: Vec<(f64, f64)> = (0..16).map(|k| ((k % 4) as f64, (k / 4) as f64)).collect();
        assert_eq!(
            is_rho_separable(&unit_diam(&sq), 3.0, 1e-9).unwrap().verdict,
            TsVerdict::Verified
        );
        let hex: Vec<(f64, f64)> = (0..16)
            .map(|k| {
                let (i, j) = ((k % 4) as f64, (k / 4) as f64);
                (i + 0.5 * j, j * 3f64.sqrt() / 2.0)
            })
            .collect();
        assert_eq!(
            is_rho_separable(&unit_diam(&hex), 3.0, 1e-9).unwrap().verdict,
            TsVerdict::Unresolved
        );
        let tri = ConvexBody::polygon(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]).unwrap();
        let p = TranslatePacking::new(tri, vec![Vec2::zeros()]).unwrap();
        assert_eq!(is_rho_separable(&p, 3.0, 1e-9), Err(Error::NotSymmetric));
    }
}
