//! Translative packings in the plane: densities, area and Oler-type bounds, contact graphs,
//! crystallization bounds, lattice contact numbers, and the guillotine surface-area check.

mod area;
mod contact;
mod extremal;
mod kertesz;
mod lattice;
mod oler;
mod rogers;

pub use area::{
    area_bound_check, delta_sep, lattice_window_density, sns_perimeter_check, window_density, AreaBoundReport,
    SnsPerimeterReport,
};
pub use contact::{contact_graph, crystallization_bound, ContactGraph, CrystallizationMode};
pub use extremal::{three_disk_extrema, three_disk_extrema_with, BranchMax, ThreeDiskTable};
pub use kertesz::{
    guillotine_kertesz_check, random_guillotine, Ball3, ConvexPolyhedron, GuillotineCut, GuillotinePartition,
    KerteszReport,
};
pub use lattice::{
    brute_force_lattice_contact, fixed_polyomino_counts, free_polyomino_counts, lattice_contact_bounds,
    polyomino_packing,
};
pub use oler::{minkowski_length, oler_check, radon_check, OlerReport, PermissiblePolygon};
pub use rogers::{rogers_sigma, rogers_sigma_with, SigmaEstimate};

use crate::error::{Error, Result};
use crate::geom::{difference_body, gauge, ConvexBody, Vec2};

/// Translates `c_i + K` with pairwise disjoint interiors.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslatePacking {
    body: ConvexBody,
    centers: Vec<Vec2>,
    difference: ConvexBody,
}

/// Relative slack when comparing Minkowski distances with 1.
pub(crate) const CONTACT_TOL: f64 = 1e-9;

impl TranslatePacking {
    /// Validates that interiors are disjoint.
    pub fn new(body: ConvexBody, centers: Vec<Vec2>) -> Result<Self> {
        let p = TranslatePacking::new_unchecked(body, centers)?;
        for i in 0..p.centers.len() {
            for j in i + 1..p.centers.len() {
                if p.distance(i, j) < 1.0 - CONTACT_TOL {
                    return Err(Error::NotAPacking(i, j));
                }
            }
        }
        Ok(p)
    }

    fn new_unchecked(body: ConvexBody, centers: Vec<Vec2>) -> Result<Self> {
        body.require_full_dimensional()?;
        if centers.iter().any(|c| !c.x.is_finite() || !c.y.is_finite()) {
            return Err(Error::InvalidInput("non-finite center".into()));
        }
        let difference = difference_body(&body)?;
        Ok(TranslatePacking {
            body,
            centers,
            difference,
        })
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn centers(&self) -> &[Vec2] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn member(&self, i: usize) -> ConvexBody {
        self.body.translate(self.centers[i])
    }

    pub fn members(&self) -> Vec<ConvexBody> {
        (0..self.len()).map(|i| self.member(i)).collect()
    }

    /// `|c_j − c_i|` in the gauge of `K − K`: 1 means touching, below 1 overlapping.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        gauge(&self.difference, self.centers[j] - self.centers[i]).expect("K − K contains the origin")
    }

    pub fn touching(&self, i: usize, j: usize, tol: f64) -> bool {
        (self.distance(i, j) - 1.0).abs() <= tol
    }

    /// Indices of members touching member `i`.
    pub fn neighbors(&self, i: usize, tol: f64) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| j != i && self.touching(i, j, tol))
            .collect()
    }

    pub fn sub(&self, indices: &[usize]) -> TranslatePacking {
        TranslatePacking {
            body: self.body.clone(),
            centers: indices.iter().map(|&i| self.centers[i]).collect(),
            difference: self.difference.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlap_detected() {
        let k = ConvexBody::disk(Vec2::zeros(), 0.5).unwrap();
        assert!(TranslatePacking::new(k.clone(), vec![Vec2::zeros(), Vec2::new(1.0, 0.0)]).is_ok());
        assert_eq!(
            TranslatePacking::new(k, vec![Vec2::zeros(), Vec2::new(0.9, 0.0)]),
            Err(Error::NotAPacking(0, 1))
        );
    }

    #[test]
    fn triangle_translates_distance() {
        let t = ConvexBody::polygon(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]).unwrap();
        let p = TranslatePacking::new(t, vec![Vec2::zeros(), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]).unwrap();
        assert!(p.touching(0, 1, 1e-12));
        assert!(p.touching(0, 2, 1e-12));
    }
}
