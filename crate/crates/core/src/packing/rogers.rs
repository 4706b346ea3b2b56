use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaEstimate {
    pub dimension: usize,
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
}

const SHARDS: u64 = 64;

/// Fraction of the regular `d`-simplex of edge 2 covered by the unit balls at its vertices,
/// by Monte Carlo with `10⁷` samples.
pub fn rogers_sigma(d: usize) -> Result<SigmaEstimate> {
    rogers_sigma_with(d, 10_000_000, 0x5eed)
}

/// Uniform points of the simplex come from normalized exponentials (flat Dirichlet); the
/// simplex is realized with vertices `√2 e_i` in `E^{d+1}`, so the distance to vertex `i`
/// is `√2 |w − e_i|`. Each shard uses its own seed, so the result is independent of the
/// thread count.
pub fn rogers_sigma_with(d: usize, samples: u64, seed: u64) -> Result<SigmaEstimate> {
    if !(2..=8).contains(&d) {
        return Err(Error::Domain(format!("dimension must be in 2..=8, got {d}")));
    }
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let hits: u64 = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let quota = samples / SHARDS + u64::from(shard < samples % SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ shard);
            let mut w = vec![0.0f64; d + 1];
            let mut hits = 0u64;
            for _ in 0..quota {
                let mut total = 0.0;
                for x in w.iter_mut() {
                    *x = Exp1.sample(&mut rng);
                    total += *x;
                }
                let sq: f64 = w.iter().map(|x| (x / total) * (x / total)).sum();
                // 2|w − e_i|² = 2(Σw² − 2w_i + 1) ≤ 1 is easiest at the largest w_i
                let wmax = w.iter().cloned().fold(0.0, f64::max) / total;
                if 2.0 * (sq - 2.0 * wmax + 1.0) <= 1.0 {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(SigmaEstimate {
        dimension: d,
        value: p,
        std_error: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_value() {
        let s = rogers_sigma_with(2, 400_000, 1).unwrap();
        let exact = std::f64::consts::PI / 12f64.sqrt();
        assert!((s.value - exact).abs() < 5.0 * s.std_error + 1e-4, "{s:?}");
    }

    #[test]
    fn reproducible_and_decreasing() {
        let a = rogers_sigma_with(3, 200_000, 7).unwrap();
        assert_eq!(a, rogers_sigma_with(3, 200_000, 7).unwrap());
        let vals: Vec<f64> = (2..=6)
            .map(|d| rogers_sigma_with(d, 200_000, 3).unwrap().value)
            .collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]), "{vals:?}");
        assert!(rogers_sigma_with(9, 10, 0).is_err());
    }
}
