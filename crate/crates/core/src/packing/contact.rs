use num_bigint::BigUint;

use super::TranslatePacking;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub contact_number: usize,
}

/// Tangency graph: pairs whose Minkowski distance in `K − K` is 1 within `tol`.
pub fn contact_graph(packing: &TranslatePacking, tol: f64) -> ContactGraph {
    let n = packing.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| packing.touching(i, j, tol))
        .collect();
    ContactGraph {
        n,
        contact_number: edges.len(),
        edges,
    }
}

/// Which constant enters the bound for `d ≥ 3`; ignored for `d = 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrystallizationMode {
    /// `3n − 1.206 n^{2/3}`, only for `d = 3`.
    Hales,
    /// Rogers' simplex ratio σ_d.
    Rogers(f64),
}

/// Smallest `m` with `m^d ≥ num / den` for nonnegative integers.
pub(crate) fn ceil_root_ratio(num: &BigUint, den: &BigUint, d: u32) -> u64 {
    let ok = |m: u64| BigUint::from(m).pow(d) * den >= *num;
    let mut hi = 1u64;
    while !ok(hi) {
        hi *= 2;
    }
    let mut lo = 0u64;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Upper bound on the contact number of an LS-packing of `n` unit balls in `E^d`.
pub fn crystallization_bound(n: u64, d: u32, mode: CrystallizationMode) -> Result<u64> {
    if n <= 1 {
        return Err(Error::Domain(format!("need n > 1, got {n}")));
    }
    match d {
        // ⌊2n − 2√n⌋ = 2n − ⌈√(4n)⌉
        2 => Ok(2 * n - ceil_root_ratio(&BigUint::from(4 * n), &BigUint::from(1u32), 2)),
        3 if mode == CrystallizationMode::Hales => {
            // ⌈1.206 n^{2/3}⌉ is the least m with (1000 m)³ ≥ 1206³ n²
            let num = BigUint::from(1206u32).pow(3) * BigUint::from(n).pow(2);
            let den = BigUint::from(1000u32).pow(3);
            Ok(3 * n - ceil_root_ratio(&num, &den, 3))
        }
        d if d >= 3 => {
            let CrystallizationMode::Rogers(sigma) = mode else {
                return Err(Error::Domain("the 1.206 constant applies only in dimension 3".into()));
            };
            if !(sigma > 0.0 && sigma <= 1.0) {
                return Err(Error::Domain(format!("σ_d must lie in (0, 1], got {sigma}")));
            }
            let df = d as f64;
            let nf = n as f64;
            let coef = df.powf(-(df - 3.0) / 2.0) * sigma.powf(-(df - 1.0) / df);
            Ok((df * nf - coef * nf.powf((df - 1.0) / df)).floor().max(0.0) as u64)
        }
        _ => Err(Error::Domain(format!("dimension must be at least 2, got {d}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{ConvexBody, Vec2};

    fn grid(cols: usize, rows: usize) -> TranslatePacking {
        let c = (0..rows)
            .flat_map(|y| (0..cols).map(move |x| Vec2::new(x as f64, y as f64)))
            .collect();
        TranslatePacking::new(ConvexBody::disk(Vec2::zeros(), 0.5).unwrap(), c).unwrap()
    }

    #[test]
    fn small_graphs() {
        assert_eq!(contact_graph(&grid(2, 2), 1e-9).contact_number, 4);
        assert_eq!(contact_graph(&grid(5, 1), 1e-9).contact_number, 4);
    }

    #[test]
    fn planar_bound() {
        let b = |n| crystallization_bound(n, 2, CrystallizationMode::Hales).unwrap();
        assert_eq!(b(4), 4);
        assert_eq!(b(7), 8);
        assert_eq!(b(11), 15);
        assert_eq!(b(13), 18);
        for n in 2..2000u64 {
            assert_eq!(b(n), (2.0 * n as f64 - 2.0 * (n as f64).sqrt()).floor() as u64, "n={n}");
        }
        assert!(crystallization_bound(1, 2, CrystallizationMode::Hales).is_err());
    }

    #[test]
    fn hales_bound_matches_float_away_from_ties() {
        for n in [10u64, 100, 1000] {
            let exact = crystallization_bound(n, 3, CrystallizationMode::Hales).unwrap();
            let float = (3.0 * n as f64 - 1.206 * (n as f64).powf(2.0 / 3.0)).floor() as u64;
            assert_eq!(exact, float);
        }
        // 1000: 3000 − 120.6 → 2879
        assert_eq!(
            crystallization_bound(1000, 3, CrystallizationMode::Hales).unwrap(),
            2879
        );
        assert!(crystallization_bound(10, 4, CrystallizationMode::Hales).is_err());
        assert!(crystallization_bound(10, 4, CrystallizationMode::Rogers(0.7)).is_ok());
    }
}
