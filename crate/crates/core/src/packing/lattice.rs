//! Contact numbers of finite subsets of ℤ² and the spiral construction attaining them.

use std::collections::HashSet;

use num_bigint::BigUint;

use super::contact::ceil_root_ratio;
use super::TranslatePacking;
use crate::error::{Error, Result};
use crate::geom::{ConvexBody, Vec2};

/// Largest `N` with `N^d ≤ n`.
fn floor_root(n: u64, d: u32) -> u64 {
    let mut n_root = ceil_root_ratio(&BigUint::from(n), &BigUint::from(1u32), d);
    if BigUint::from(n_root).pow(d) > BigUint::from(n) {
        n_root -= 1;
    }
    n_root
}

/// `(dN^d − dN^{d−1}, ⌊dn − d n^{(d−1)/d}⌋)` with `N = ⌊n^{1/d}⌋`.
pub fn lattice_contact_bounds(d: u32, n: u64) -> Result<(u64, u64)> {
    if d < 2 || n < 2 {
        return Err(Error::Domain(format!("need d > 1 and n > 1, got d={d}, n={n}")));
    }
    let big_n = floor_root(n, d);
    let dd = d as u64;
    let lower = dd * big_n.pow(d) - dd * big_n.pow(d - 1);
    // ⌈d n^{(d−1)/d}⌉ is the least m with m^d ≥ d^d n^{d−1}
    let m = ceil_root_ratio(
        &(BigUint::from(dd).pow(d) * BigUint::from(n).pow(d - 1)),
        &BigUint::from(1u32),
        d,
    );
    Ok((lower, dd * n - m))
}

type Cell = (i32, i32);

const NEIGHBORS: [Cell; 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Redelmeier's enumeration of fixed polyominoes up to `max` cells. `visit(size, cells,
/// edges)` is called once per polyomino.
fn redelmeier<F: FnMut(usize, &[Cell], usize)>(max: usize, mut visit: F) {
    // cells live in the half-plane y > 0 or (y = 0, x ≥ 0); the origin is the anchor
    fn allowed(c: Cell) -> bool {
        c.1 > 0 || (c.1 == 0 && c.0 >= 0)
    }
    fn rec<F: FnMut(usize, &[Cell], usize)>(
        max: usize,
        untried: &mut Vec<Cell>,
        poly: &mut Vec<Cell>,
        seen: &mut HashSet<Cell>,
        edges: usize,
        visit: &mut F,
    ) {
        while let Some(c) = untried.pop() {
            let added = NEIGHBORS
                .iter()
                .filter(|d| poly.contains(&(c.0 + d.0, c.1 + d.1)))
                .count();
            poly.push(c);
            visit(poly.len(), poly, edges + added);
            if poly.len() < max {
                let mut fresh = Vec::new();
                for d in NEIGHBORS {
                    let nb = (c.0 + d.0, c.1 + d.1);
                    if allowed(nb) && seen.insert(nb) {
                        fresh.push(nb);
                    }
                }
                let mut next = untried.clone();
                next.extend(&fresh);
                rec(max, &mut next, poly, seen, edges + added, visit);
                for nb in fresh {
                    seen.remove(&nb);
                }
            }
            poly.pop();
        }
    }
    if max == 0 {
        return;
    }
    let mut seen: HashSet<Cell> = HashSet::from([(0, 0)]);
    rec(max, &mut vec![(0, 0)], &mut Vec::new(), &mut seen, 0, &mut visit);
}

/// Number of fixed polyominoes with 1..=max cells.
pub fn fixed_polyomino_counts(max: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max];
    redelmeier(max, |k, _, _| counts[k - 1] += 1);
    counts
}

fn canonical(cells: &[Cell]) -> Vec<Cell> {
    let maps: [fn(Cell) -> Cell; 8] = [
        |(x, y)| (x, y),
        |(x, y)| (-y, x),
        |(x, y)| (-x, -y),
        |(x, y)| (y, -x),
        |(x, y)| (-x, y),
        |(x, y)| (y, x),
        |(x, y)| (x, -y),
        |(x, y)| (-y, -x),
    ];
    maps.iter()
        .map(|m| {
            let mut v: Vec<Cell> = cells.iter().map(|&c| m(c)).collect();
            let mx = v.iter().map(|c| c.0).min().unwrap_or(0);
            let my = v.iter().map(|c| c.1).min().unwrap_or(0);
            for c in &mut v {
                *c = (c.0 - mx, c.1 - my);
            }
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default()
}

/// Number of free polyominoes (up to rotation and reflection) with 1..=max cells.
pub fn free_polyomino_counts(max: usize) -> Vec<u64> {
    let mut seen: Vec<HashSet<Vec<Cell>>> = vec![HashSet::new(); max];
    redelmeier(max, |k, cells, _| {
        seen[k - 1].insert(canonical(cells));
    });
    seen.iter().map(|s| s.len() as u64).collect()
}

/// Largest number of edges among `n`-cell polyominoes; exhaustive, so `n ≤ 12`.
pub fn brute_force_lattice_contact(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one cell".into()));
    }
    if n > 12 {
        return Err(Error::OracleRange);
    }
    let mut best = 0usize;
    redelmeier(n, |k, _, e| {
        if k == n {
            best = best.max(e);
        }
    });
    Ok(best as u64)
}

/// First `n` cells of the square spiral around the origin.
fn spiral(n: usize) -> Vec<Cell> {
    let mut out = Vec::with_capacity(n);
    let (mut x, mut y) = (0i32, 0i32);
    let dirs = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    let (mut k, mut run) = (0usize, 1i32);
    while out.len() < n {
        for _ in 0..2 {
            for _ in 0..run {
                if out.len() == n {
                    return out;
                }
                out.push((x, y));
                x += dirs[k % 4].0;
                y += dirs[k % 4].1;
            }
            k += 1;
        }
        run += 1;
    }
    out
}

/// `n` unit-diameter disks on ℤ² in spiral order; the spiral's quasi-squares attain
/// the maximal contact number.
pub fn polyomino_packing(n: usize) -> Result<TranslatePacking> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one disk".into()));
    }
    let centers = spiral(n)
        .into_iter()
        .map(|(x, y)| Vec2::new(x as f64, y as f64))
        .collect();
    TranslatePacking::new(ConvexBody::disk(Vec2::zeros(), 0.5)?, centers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::contact_graph;

    #[test]
    fn polyomino_counts() {
        assert_eq!(fixed_polyomino_counts(8), vec![1, 2, 6, 19, 63, 216, 760, 2725]);
        assert_eq!(free_polyomino_counts(8), vec![1, 1, 2, 5, 12, 35, 108, 369]);
    }

    #[test]
    fn small_contacts() {
        assert_eq!(brute_force_lattice_contact(1).unwrap(), 0);
        assert_eq!(brute_force_lattice_contact(2).unwrap(), 1);
        assert_eq!(brute_force_lattice_contact(4).unwrap(), 4);
        assert_eq!(brute_force_lattice_contact(7).unwrap(), 8);
        assert_eq!(brute_force_lattice_contact(13), Err(Error::OracleRange));
    }

    #[test]
    fn bounds() {
        assert_eq!(lattice_contact_bounds(2, 9).unwrap(), (12, 12));
        assert_eq!(lattice_contact_bounds(3, 8).unwrap(), (12, 12));
        assert_eq!(lattice_contact_bounds(2, 7).unwrap(), (4, 8));
        assert!(lattice_contact_bounds(1, 7).is_err());
    }

    #[test]
    fn spiral_packings() {
        assert_eq!(spiral(4), vec![(0, 0), (1, 0), (1, 1), (0, 1)]);
        let c = |n| contact_graph(&polyomino_packing(n).unwrap(), 1e-9).contact_number;
        assert_eq!(c(4), 4);
        assert_eq!(c(9), 12);
        assert_eq!(c(7), 8);
        assert_eq!(c(11), 15);
    }
}
