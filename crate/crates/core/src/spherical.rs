//! Caps, zones and great circles on S². A cap of radius α centered at c avoids the great
//! circle with pole u iff |⟨u,c⟩| ≥ sin α, so every separation question reduces to finding
//! a pole in an intersection of caps of radius π/2 − α centered at ±c.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::optim::{bisect, fibonacci_sphere, nelder_mead};
use crate::separability::TsVerdict;

pub const SPHERE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cap {
    center: Vec3,
    radius: f64,
}

fn unit(v: Vec3, what: &str) -> Result<Vec3> {
    let n = v.norm();
    if !n.is_finite() || (n - 1.0).abs() > SPHERE_TOL {
        return Err(Error::InvalidInput(format!(
            "{what} must be a unit vector, got norm {n}"
        )));
    }
    Ok(v / n)
}

impl Cap {
    pub fn new(center: Vec3, radius: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&radius) {
            return Err(Error::Domain(format!("cap radius {radius} outside [0, π]")));
        }
        Ok(Cap {
            center: unit(center, "cap center")?,
            radius,
        })
    }

    /// Normalizes `center` instead of rejecting it.
    pub fn toward(center: Vec3, radius: f64) -> Result<Self> {
        let n = center.norm();
        if n < 1e-300 {
            return Err(Error::DegenerateDirection);
        }
        Cap::new(center / n, radius)
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Smallest `|⟨u,c⟩|` that keeps a great circle with pole `u` off the cap. Caps of radius
    /// beyond π/2 get a value above 1 so no pole qualifies.
    fn threshold(&self) -> f64 {
        if self.radius <= FRAC_PI_2 {
            self.radius.sin()
        } else {
            1.0 + (self.radius - FRAC_PI_2)
        }
    }

    pub fn contains_cap(&self, other: &Cap, tol: f64) -> bool {
        angle(self.center, other.center) + other.radius <= self.radius + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zone {
    pole: Vec3,
    half_width: f64,
}

impl Zone {
    pub fn new(pole: Vec3, half_width: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&half_width) {
            return Err(Error::Domain(format!("zone half-width {half_width} outside [0, π/2]")));
        }
        Ok(Zone {
            pole: unit(pole, "zone pole")?,
            half_width,
        })
    }

    pub fn pole(&self) -> Vec3 {
        self.pole
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn contains(&self, x: Vec3) -> bool {
        x.dot(&self.pole).abs() <= self.half_width.sin() + SPHERE_TOL
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatCircle {
    pole: Vec3,
}

impl GreatCircle {
    /// Any nonzero pole; it is normalized.
    pub fn new(pole: Vec3) -> Result<Self> {
        let n = pole.norm();
        if !n.is_finite() || n < 1e-300 {
            return Err(Error::DegenerateDirection);
        }
        Ok(GreatCircle { pole: pole / n })
    }

    pub fn pole(&self) -> Vec3 {
        self.pole
    }
}

/// Angular distance, accurate near 0 and π.
pub fn angle(a: Vec3, b: Vec3) -> f64 {
    a.cross(&b).norm().atan2(a.dot(&b))
}

/// Closed convention: a circle touching the cap boundary still avoids it.
pub fn avoids(circle: &GreatCircle, cap: &Cap) -> bool {
    circle.pole.dot(&cap.center).abs() >= cap.threshold() - SPHERE_TOL
}

/// `min_k (s_k ⟨u,c_k⟩ − sin α_k)` for a fixed side pattern.
fn pattern_margin(caps: &[Cap], signs: &[f64], u: Vec3) -> f64 {
    caps.iter()
        .zip(signs)
        .map(|(c, s)| s * u.dot(&c.center) - c.threshold())
        .fold(f64::INFINITY, f64::min)
}

fn side_pattern(caps: &[Cap], u: Vec3) -> Vec<f64> {
    caps.iter()
        .map(|c| if u.dot(&c.center) >= 0.0 { 1.0 } else { -1.0 })
        .collect()
}

fn has_both_sides(signs: &[f64]) -> bool {
    signs.iter().any(|s| *s > 0.0) && signs.iter().any(|s| *s < 0.0)
}

/// Unit vectors `u` with `⟨u,a⟩ = p` and `⟨u,b⟩ = q`.
fn two_constraint_poles(a: Vec3, p: f64, b: Vec3, q: f64) -> Vec<Vec3> {
    let w = a.cross(&b);
    let wn = w.norm();
    if wn < 1e-12 {
        return Vec::new();
    }
    let g = a.dot(&b);
    let det = 1.0 - g * g;
    let x = (p - g * q) / det;
    let y = (q - g * p) / det;
    let base = a * x + b * y;
    let z2 = 1.0 - base.norm_squared();
    if z2 < -1e-12 {
        return Vec::new();
    }
    let z = z2.max(0.0).sqrt();
    let w = w / wn;
    if z == 0.0 {
        vec![base.normalize()]
    } else {
        vec![(base + w * z).normalize(), (base - w * z).normalize()]
    }
}

/// Poles where the circle is tangent to two caps (all side choices) plus `±c_k`. For any side
/// pattern with a feasible pole, the feasible region is an intersection of closed caps, and
/// one of its vertices or one of the cap centers lies in this set.
pub fn candidate_poles(caps: &[Cap]) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = caps.iter().flat_map(|c| [c.center, -c.center]).collect();
    for i in 0..caps.len() {
        for j in i + 1..caps.len() {
            let (a, b) = (&caps[i], &caps[j]);
            if a.radius > FRAC_PI_2 || b.radius > FRAC_PI_2 {
                continue;
            }
            for si in [1.0, -1.0] {
                for sj in [1.0, -1.0] {
                    out.extend(two_constraint_poles(
                        a.center,
                        si * a.radius.sin(),
                        b.center,
                        sj * b.radius.sin(),
                    ));
                }
            }
        }
    }
    out
}

fn from_angles(x: &[f64]) -> Vec3 {
    let (t, p) = (x[0], x[1]);
    Vec3::new(t.sin() * p.cos(), t.sin() * p.sin(), t.cos())
}

fn to_angles(u: Vec3) -> [f64; 2] {
    [u.z.clamp(-1.0, 1.0).acos(), u.y.atan2(u.x)]
}

/// Local maximization of the pattern margin starting from `u`.
fn refine(caps: &[Cap], signs: &[f64], u: Vec3) -> (Vec3, f64) {
    let start = pattern_margin(caps, signs, u);
    let (x, v) = nelder_mead(
        |x| -pattern_margin(caps, signs, from_angles(x)),
        &to_angles(u),
        0.05,
        500,
    );
    if -v > start {
        (from_angles(&x), -v)
    } else {
        (u, start)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapsNsDecision {
    pub non_separable: bool,
    /// Best pole found that puts caps on both sides; separating iff `margin > SPHERE_TOL`.
    pub witness: Option<GreatCircle>,
    pub margin: f64,
    pub poles_checked: usize,
}

impl CapsNsDecision {
    pub fn is_non_separable(&self) -> bool {
        self.non_separable
    }
}

/// Whether no great circle strictly avoids every cap with caps on both sides. Touching is
/// not enough here: two tangent caps share a tangent circle, yet they count as inseparable.
pub fn caps_non_separable(caps: &[Cap]) -> Result<CapsNsDecision> {
    caps_non_separable_with(caps, 10_000)
}

pub fn caps_non_separable_with(caps: &[Cap], samples: usize) -> Result<CapsNsDecision> {
    if caps.len() < 2 {
        return Err(Error::InvalidInput("need at least two caps".into()));
    }
    let mut poles = fibonacci_sphere(samples);
    poles.extend(candidate_poles(caps));
    let mut scored: Vec<(f64, Vec3, Vec<f64>)> = poles
        .par_iter()
        .filter_map(|&u| {
            let s = side_pattern(caps, u);
            has_both_sides(&s).then(|| (pattern_margin(caps, &s, u), u, s))
        })
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best: Option<(f64, Vec3)> = None;
    let mut seen: Vec<Vec<f64>> = Vec::new();
    for (_, u, s) in scored.into_iter() {
        if seen.len() >= 24 {
            break;
        }
        if seen.contains(&s) {
            continue;
        }
        let (v, m) = refine(caps, &s, u);
        seen.push(s);
        if best.is_none_or(|b| m > b.0) {
            best = Some((m, v));
        }
    }
    let (margin, witness) = match best {
        Some((m, u)) => (m, Some(GreatCircle::new(u)?)),
        None => (f64::NEG_INFINITY, None),
    };
    Ok(CapsNsDecision {
        non_separable: margin <= SPHERE_TOL,
        witness,
        margin,
        poles_checked: poles.len(),
    })
}

/// Smallest cap containing every cap of the family, assuming it lies within a hemisphere.
/// The optimum is pinned by at most three caps, so singles, pairs and triples are tried.
pub fn smallest_enclosing_cap(caps: &[Cap]) -> Result<Cap> {
    if caps.is_empty() {
        return Err(Error::InvalidInput("no caps".into()));
    }
    let encloses = |c: Vec3, r: f64| caps.iter().all(|k| angle(c, k.center) + k.radius <= r + 1e-10);
    let mut best: Option<(f64, Vec3)> = None;
    let mut offer = |c: Vec3, r: f64| {
        if best.is_none_or(|b| r < b.0) && encloses(c, r) {
            best = Some((r, c));
        }
    };
    for k in caps {
        offer(k.center, k.radius);
    }
    for (i, a) in caps.iter().enumerate() {
        for b in &caps[i + 1..] {
            let d = angle(a.center, b.center);
            let r = 0.5 * (d + a.radius + b.radius);
            let t = r - a.radius;
            if !(1e-15..=PI - 1e-12).contains(&d) || !(0.0..=d).contains(&t) {
                continue;
            }
            let w = (b.center - a.center * d.cos()).normalize();
            offer(a.center * t.cos() + w * t.sin(), r);
        }
    }
    let n = caps.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let tri = [caps[i], caps[j], caps[k]];
                let m = Matrix3::from_rows(&[
                    tri[0].center.transpose(),
                    tri[1].center.transpose(),
                    tri[2].center.transpose(),
                ]);
                let Some(inv) = m.try_inverse() else { continue };
                let center_at = |r: f64| {
                    inv * Vec3::new(
                        (r - tri[0].radius).cos(),
                        (r - tri[1].radius).cos(),
                        (r - tri[2].radius).cos(),
                    )
                };
                let lo = tri.iter().map(|c| c.radius).fold(0.0, f64::max);
                let steps = 256;
                let h = (FRAC_PI_2 - lo) / steps as f64;
                for s in 0..steps {
                    let (a, b) = (lo + h * s as f64, lo + h * (s + 1) as f64);
                    if let Some(r) = bisect(|r| center_at(r).norm_squared() - 1.0, a, b, 1e-15) {
                        offer(center_at(r).normalize(), r);
                    }
                }
            }
        }
    }
    let (r, c) = best.ok_or_else(|| Error::Internal("no enclosing cap within a hemisphere".into()))?;
    Cap::toward(c, r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyanskiiReport {
    pub enclosing: Cap,
    pub radius_sum: f64,
    /// `Σα − R`; nonnegative when the covering bound holds.
    pub slack: f64,
    pub holds: bool,
}

/// Checks that a non-separable family with radius sum below π/2 fits in a cap of radius Σα.
pub fn polyanskii_cover_check(caps: &[Cap]) -> Result<PolyanskiiReport> {
    if caps.is_empty() {
        return Err(Error::InvalidInput("no caps".into()));
    }
    let radius_sum: f64 = caps.iter().map(|c| c.radius).sum();
    if radius_sum >= FRAC_PI_2 {
        return Err(Error::Precondition(format!("radius sum {radius_sum} is not below π/2")));
    }
    if caps.len() >= 2 && !caps_non_separable(caps)?.non_separable {
        return Err(Error::NotNonSeparable);
    }
    let enclosing = smallest_enclosing_cap(caps)?;
    let slack = radius_sum - enclosing.radius;
    Ok(PolyanskiiReport {
        enclosing,
        radius_sum,
        slack,
        holds: slack >= -1e-7,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZoneReport {
    pub samples: usize,
    pub covered: bool,
    pub uncovered: Option<Vec3>,
    /// `Σ 2·half_width`.
    pub width_sum: f64,
    /// `Some` only when the samples are covered; sampling never refutes the bound.
    pub holds: Option<bool>,
}

pub fn zones_cover_check(zones: &[Zone], samples: usize) -> Result<ZoneReport> {
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let uncovered = fibonacci_sphere(samples)
        .into_par_iter()
        .find_first(|x| !zones.iter().any(|z| z.contains(*x)));
    let width_sum: f64 = zones.iter().map(|z| 2.0 * z.half_width).sum();
    let covered = uncovered.is_none();
    Ok(ZoneReport {
        samples,
        covered,
        uncovered,
        width_sum,
        holds: covered.then_some(width_sum >= PI - 1e-9),
    })
}

/// A great circle with the caps on each side (`positive`: ⟨u,c⟩ > 0).
#[derive(Debug, Clone, PartialEq)]
pub struct CapSeparator {
    pub pole: Vec3,
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapTsReport {
    pub verdict: TsVerdict,
    pub certificates: Vec<CapSeparator>,
    pub unresolved_pairs: Vec<(usize, usize)>,
    pub candidates_checked: usize,
}

impl CapTsReport {
    pub fn is_verified(&self) -> bool {
        self.verdict == TsVerdict::Verified
    }
}

fn split(caps: &[Cap], u: Vec3, tol: f64) -> Option<CapSeparator> {
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (k, c) in caps.iter().enumerate() {
        let t = u.dot(&c.center);
        if t.abs() < c.threshold() - tol {
            return None;
        }
        if t >= 0.0 {
            positive.push(k);
        } else {
            negative.push(k);
        }
    }
    Some(CapSeparator {
        pole: u,
        positive,
        negative,
    })
}

/// Total separability of a cap packing. Supplied certificates are validated first; the
/// remaining pairs are searched over [`candidate_poles`], which is complete for the closed
/// inequalities, so an unresolved pair has no separating circle up to `tol`.
pub fn is_ts_cap_packing(caps: &[Cap], certificates: Option<&[CapSeparator]>, tol: f64) -> Result<CapTsReport> {
    let n = caps.len();
    for i in 0..n {
        for j in i + 1..n {
            if angle(caps[i].center, caps[j].center) < caps[i].radius + caps[j].radius - tol {
                return Err(Error::NotAPacking(i, j));
            }
        }
    }
    let mut done = vec![vec![false; n]; n];
    let mut open = n * n.saturating_sub(1) / 2;
    let mut kept = Vec::new();
    let absorb = |s: &CapSeparator, done: &mut Vec<Vec<bool>>, open: &mut usize| {
        let mut fresh = false;
        for &i in &s.positive {
            for &j in &s.negative {
                let (a, b) = (i.min(j), i.max(j));
                if !done[a][b] {
                    done[a][b] = true;
                    *open -= 1;
                    fresh = true;
                }
            }
        }
        fresh
    };
    for (idx, cert) in certificates.unwrap_or(&[]).iter().enumerate() {
        let bad = || Error::InvalidCertificate(format!("certificate {idx}"));
        let u = GreatCircle::new(cert.pole).map_err(|_| bad())?.pole;
        split(caps, u, tol).ok_or_else(bad)?;
        let on = |k: usize, side: f64| k < n && side * u.dot(&caps[k].center) >= caps[k].threshold() - tol;
        if !cert.positive.iter().all(|&k| on(k, 1.0)) || !cert.negative.iter().all(|&k| on(k, -1.0)) {
            return Err(bad());
        }
        let s = CapSeparator {
            pole: u,
            positive: cert.positive.clone(),
            negative: cert.negative.clone(),
        };
        if absorb(&s, &mut done, &mut open) {
            kept.push(s);
        }
    }
    let mut checked = 0;
    if open > 0 {
        for u in candidate_poles(caps) {
            checked += 1;
            if let Some(s) = split(caps, u, tol) {
                if absorb(&s, &mut done, &mut open) {
                    kept.push(s);
                }
            }
            if open == 0 {
                break;
            }
        }
    }
    let unresolved_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !done[i][j])
        .collect();
    let verdict = if unresolved_pairs.is_empty() {
        TsVerdict::Verified
    } else {
        TsVerdict::Unresolved
    };
    Ok(CapTsReport {
        verdict,
        certificates: kept,
        unresolved_pairs,
        candidates_checked: checked,
    })
}

/// Incircles of the eight octant triangles.
pub fn octahedral_packing() -> Vec<Cap> {
    let r = (1.0 / 3f64.sqrt()).asin();
    let mut caps = Vec::with_capacity(8);
    for sx in [1.0, -1.0] {
        for sy in [1.0, -1.0] {
            for sz in [1.0, -1.0] {
                caps.push(Cap {
                    center: Vec3::new(sx, sy, sz) / 3f64.sqrt(),
                    radius: r,
                });
            }
        }
    }
    caps
}

/// The three side lines of a regular triangle of side arccos(1/4) cut the sphere into two
/// regular triangles and six isosceles ones; the caps are the incircles of the latter.
pub fn cuboctahedral_packing() -> Vec<Cap> {
    let s = FRAC_PI_4.cos();
    let v: Vec<Vec3> = (0..3)
        .map(|k| 2.0 * PI * k as f64 / 3.0)
        .map(|t| Vec3::new(s * t.cos(), s * t.sin(), s))
        .collect();
    let poles = [
        v[1].cross(&v[2]).normalize(),
        v[2].cross(&v[0]).normalize(),
        v[0].cross(&v[1]).normalize(),
    ];
    let m = Matrix3::from_rows(&[poles[0].transpose(), poles[1].transpose(), poles[2].transpose()]);
    let inv = m.try_inverse().expect("side lines are independent");
    let centroid = m * (v[0] + v[1] + v[2]);
    let regular = Vec3::new(centroid.x.signum(), centroid.y.signum(), centroid.z.signum());
    let mut caps = Vec::with_capacity(6);
    for a in [1.0, -1.0] {
        for b in [1.0, -1.0] {
            for c in [1.0, -1.0] {
                let sign = Vec3::new(a, b, c);
                if sign == regular || sign == -regular {
                    continue;
                }
                // ⟨u,p_k⟩ = s_k sin r for all k
                let w = inv * sign;
                caps.push(Cap {
                    center: w.normalize(),
                    radius: (1.0 / w.norm()).asin(),
                });
            }
        }
    }
    caps
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TammesEntry {
    pub k: usize,
    pub exact: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    /// The lower bound holds only for sufficiently large k.
    pub lower_asymptotic: bool,
}

/// `arccos(1/(√2 sin(k/(k−2)·π/4)))`, an upper bound on the separable Tammes radius for k ≥ 5.
pub fn bl_upper_bound(k: usize) -> Result<f64> {
    if k < 5 {
        return Err(Error::Domain(format!("upper bound needs k ≥ 5, got {k}")));
    }
    let t = k as f64 / (k as f64 - 2.0) * FRAC_PI_4;
    Ok((1.0 / (2f64.sqrt() * t.sin())).acos())
}

/// Largest radius of k equal caps forming a totally separable packing of S², or bounds on it.
pub fn tammes_sep_table(k: usize) -> Result<TammesEntry> {
    let exact = match k {
        0 | 1 => return Err(Error::Domain(format!("k must be at least 2, got {k}"))),
        2 => Some(FRAC_PI_2),
        3 | 4 => Some(FRAC_PI_4),
        5 | 6 => Some(0.75f64.atan()),
        7 | 8 => Some((1.0 / 3f64.sqrt()).asin()),
        _ => None,
    };
    let upper = if k >= 5 { Some(bl_upper_bound(k)?) } else { None };
    let (lower, lower_asymptotic) = match exact {
        Some(_) => (None, false),
        None => (Some(0.793 / (k as f64).sqrt()), true),
    };
    Ok(TammesEntry {
        k,
        exact,
        lower,
        upper,
        lower_asymptotic,
    })
}

/// Random tree of caps where each new cap meets (or touches) an earlier one, so the family
/// is non-separable. Radii are a random split of `radius_sum`.
pub fn random_cap_chain(seed: u64, n: usize, radius_sum: f64) -> Result<Vec<Cap>> {
    if n == 0 || !(radius_sum > 0.0 && radius_sum <= PI) {
        return Err(Error::InvalidInput("need n ≥ 1 and radius sum in (0, π]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = || {
        Vec3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        )
    };
    let weights: Vec<f64> = (0..n).map(|_| 0.2 + gauss().x.abs()).collect();
    let total: f64 = weights.iter().sum();
    let radii: Vec<f64> = weights.iter().map(|w| radius_sum * w / total).collect();
    let mut caps = vec![Cap::toward(gauss(), radii[0])?];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc4a1);
    for &r in &radii[1..] {
        let parent = caps[rng.random_range(0..caps.len())];
        let reach = parent.radius + r;
        let d = if rng.random::<f64>() < 0.3 {
            reach
        } else {
            reach * rng.random_range(0.5..1.0)
        };
        let g = Vec3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        let c = parent.center;
        let w = g - c * g.dot(&c);
        if w.norm() < 1e-9 {
            return Err(Error::Internal("degenerate tangent direction".into()));
        }
        caps.push(Cap::toward(c * d.cos() + w.normalize() * d.sin(), r)?);
    }
    Ok(caps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap(x: f64, y: f64, z: f64, r: f64) -> Cap {
        Cap::toward(Vec3::new(x, y, z), r).unwrap()
    }

    #[test]
    fn avoidance() {
        let c = cap(0.0, 0.0, 1.0, 0.5);
        assert!(avoids(&GreatCircle::new(Vec3::z()).unwrap(), &c));
        assert!(!avoids(&GreatCircle::new(Vec3::x()).unwrap(), &c));
        let t = FRAC_PI_2 - 0.5;
        assert!(avoids(&GreatCircle::new(Vec3::new(t.sin(), 0.0, t.cos())).unwrap(), &c));
        assert!(Cap::new(Vec3::new(2.0, 0.0, 0.0), 0.1).is_err());
        assert!(Cap::new(Vec3::x(), 4.0).is_err());
    }

    #[test]
    fn separation_of_pairs() {
        let anti = [cap(0.0, 0.0, 1.0, PI / 6.0), cap(0.0, 0.0, -1.0, PI / 6.0)];
        let d = caps_non_separable(&anti).unwrap();
        assert!(!d.is_non_separable());
        assert!((d.margin - 0.5).abs() < 1e-6, "{d:?}");
        let a = 0.3;
        let b = 0.2;
        let tangent = [
            cap(1.0, 0.0, 0.0, a),
            Cap::new(Vec3::new((a + b).cos(), (a + b).sin(), 0.0), b).unwrap(),
        ];
        assert!(caps_non_separable(&tangent).unwrap().is_non_separable());
        assert!(caps_non_separable(&anti[..1]).is_err());
        let big = [cap(0.0, 0.0, 1.0, 1.7), cap(0.0, 0.0, -1.0, 0.1)];
        assert!(caps_non_separable(&big).unwrap().is_non_separable());
    }

    #[test]
    fn constructions() {
        let oct = octahedral_packing();
        assert_eq!(oct.len(), 8);
        assert!(oct.iter().all(|c| (c.radius - 0.6154797086703874).abs() < 1e-12));
        let cub = cuboctahedral_packing();
        assert_eq!(cub.len(), 6);
        for c in &cub {
            assert!((c.radius - 0.75f64.atan()).abs() < 1e-12, "{c:?}");
        }
        for caps in [&oct, &cub] {
            let r = is_ts_cap_packing(caps, None, SPHERE_TOL).unwrap();
            assert!(r.is_verified(), "{r:?}");
        }
    }

    #[test]
    fn three_tangent_caps_are_not_ts() {
        // equal caps of radius a with centers pairwise 2a apart around the north pole
        let a: f64 = 0.3;
        let rho = (2.0 * a.sin() / 3f64.sqrt()).asin();
        let caps: Vec<Cap> = (0..3)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 3.0;
                cap(rho.sin() * t.cos(), rho.sin() * t.sin(), rho.cos(), a)
            })
            .collect();
        assert!((angle(caps[0].center, caps[1].center) - 2.0 * a).abs() < 1e-12);
        let r = is_ts_cap_packing(&caps, None, 1e-9).unwrap();
        assert!(!r.is_verified());
        assert_eq!(r.unresolved_pairs.len(), 3);
        let overlap = [cap(1.0, 0.0, 0.0, 0.5), cap(1.0, 0.1, 0.0, 0.5)];
        assert_eq!(is_ts_cap_packing(&overlap, None, 1e-9), Err(Error::NotAPacking(0, 1)));
    }

    #[test]
    fn enclosing_caps() {
        let a = PI / 8.0;
        let two = [
            cap(1.0, 0.0, 0.0, a),
            Cap::new(Vec3::new((2.0 * a).cos(), (2.0 * a).sin(), 0.0), a).unwrap(),
        ];
        let r = polyanskii_cover_check(&two).unwrap();
        assert!((r.enclosing.radius - FRAC_PI_4).abs() < 1e-12);
        assert!(r.slack.abs() < 1e-12);
        let one = polyanskii_cover_check(&two[..1]).unwrap();
        assert!(one.slack.abs() < 1e-15);
        let n = 5;
        let a = 0.06;
        let chain: Vec<Cap> = (0..n)
            .map(|i| {
                Cap::new(
                    Vec3::new((2.0 * a * i as f64).cos(), (2.0 * a * i as f64).sin(), 0.0),
                    a,
                )
                .unwrap()
            })
            .collect();
        let r = polyanskii_cover_check(&chain).unwrap();
        assert!((r.enclosing.radius - n as f64 * a).abs() < 1e-10, "{r:?}");
        let far = [cap(0.0, 0.0, 1.0, 0.1), cap(0.0, 0.0, -1.0, 0.1)];
        assert_eq!(polyanskii_cover_check(&far), Err(Error::NotNonSeparable));
        let wide = [cap(0.0, 0.0, 1.0, 1.0), cap(0.0, 0.0, 1.0, 1.0)];
        assert!(matches!(polyanskii_cover_check(&wide), Err(Error::Precondition(_))));
    }

    #[test]
    fn triple_pinned_enclosing_cap() {
        let caps: Vec<Cap> = (0..3)
            .map(|k| 2.0 * PI * k as f64 / 3.0)
            .map(|t| cap(0.3 * t.cos(), 0.3 * t.sin(), 1.0, 0.05))
            .collect();
        let e = smallest_enclosing_cap(&caps).unwrap();
        let expect = angle(Vec3::z(), caps[0].center) + 0.05;
        assert!((e.radius - expect).abs() < 1e-9, "{e:?}");
        assert!(angle(e.center, Vec3::z()) < 1e-7);
    }

    #[test]
    fn random_chains_satisfy_the_bound() {
        for seed in 0..10 {
            let caps = random_cap_chain(seed, 5, 1.2).unwrap();
            let r = polyanskii_cover_check(&caps).unwrap();
            assert!(r.holds, "{seed}: {r:?}");
        }
    }

    #[test]
    fn zones() {
        let two = [
            Zone::new(Vec3::z(), FRAC_PI_4).unwrap(),
            Zone::new(Vec3::x(), FRAC_PI_4).unwrap(),
        ];
        let r = zones_cover_check(&two, 20_000).unwrap();
        assert!(r.covered);
        assert_eq!(r.holds, Some(true));
        assert!((r.width_sum - PI).abs() < 1e-15);
        let thin = [Zone::new(Vec3::z(), 0.1).unwrap()];
        let r = zones_cover_check(&thin, 1000).unwrap();
        assert!(!r.covered && r.holds.is_none());
    }

    #[test]
    fn tammes() {
        assert!((tammes_sep_table(4).unwrap().exact.unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!((bl_upper_bound(8).unwrap() - (1.0 / 3f64.sqrt()).asin()).abs() < 1e-12);
        let vals: Vec<f64> = (2..=8).map(|k| tammes_sep_table(k).unwrap().exact.unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0]));
        for k in 2..=4 {
            assert_eq!(
                tammes_sep_table(2 * k - 1).unwrap().exact,
                tammes_sep_table(2 * k).unwrap().exact
            );
        }
        let e = tammes_sep_table(20).unwrap();
        assert!(e.lower_asymptotic && e.exact.is_none() && e.lower.unwrap() < e.upper.unwrap());
        assert!(tammes_sep_table(1).is_err());
        for k in 5..=8 {
            assert!(bl_upper_bound(k).unwrap() >= tammes_sep_table(k).unwrap().exact.unwrap() - 1e-12);
        }
    }
}
