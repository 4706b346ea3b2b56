//! Separable and non-separable families, successive non-separability, and total/local/ρ
//! separability of planar translative packings.

mod ns;
mod separate;
mod sns;
mod ts;

pub use ns::{
    gap_at, is_non_separable, is_non_separable_bodies, is_non_separable_nd, BodyNd, NsDecision, NsDecisionNd,
    NsOptions, NsVerdict,
};
pub use separate::{
    find_separating_hyperplane, find_separating_hyperplane_tol, kirchberger_reduce, max_margin_separator,
    strictly_separates, Separation,
};
pub use sns::{is_sns, is_sns_subset_dp, meets_hull_of};
pub use ts::{
    candidate_lines, is_ls_packing, is_rho_separable, is_ts_packing, LsReport, RhoReport, SeparatingLine, TsReport,
    TsVerdict,
};

use crate::error::{Error, Result};
use crate::geom::{ConvexBody, Homothet, Vec2};

/// `{x : ⟨normal, x⟩ = offset}` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperplane {
    pub normal: Vec2,
    pub offset: f64,
}

impl Hyperplane {
    pub fn new(normal: Vec2, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::DegenerateDirection);
        }
        Ok(Hyperplane {
            normal: normal / n,
            offset: offset / n,
        })
    }

    pub fn signed_distance(&self, p: Vec2) -> f64 {
        self.normal.dot(&p) - self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Member {
    pub center: Vec2,
    pub ratio: f64,
}

/// `{x_i + τ_i K}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomothetFamily {
    reference: ConvexBody,
    members: Vec<Member>,
}

impl HomothetFamily {
    pub fn new(reference: ConvexBody, members: Vec<Member>) -> Result<Self> {
        reference.require_full_dimensional()?;
        if members.is_empty() {
            return Err(Error::InvalidInput("family has no members".into()));
        }
        if let Some(m) = members.iter().find(|m| !(m.ratio > 0.0) || !m.ratio.is_finite()) {
            return Err(Error::InvalidInput(format!("ratio must be positive, got {}", m.ratio)));
        }
        Ok(HomothetFamily { reference, members })
    }

    pub fn from_pairs(reference: ConvexBody, members: &[(Vec2, f64)]) -> Result<Self> {
        HomothetFamily::new(
            reference,
            members
                .iter()
                .map(|&(center, ratio)| Member { center, ratio })
                .collect(),
        )
    }

    pub fn reference(&self) -> &ConvexBody {
        &self.reference
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn homothet(&self, i: usize) -> Homothet {
        let m = self.members[i];
        Homothet {
            reference: self.reference.clone(),
            center: m.center,
            ratio: m.ratio,
        }
    }

    pub fn bodies(&self) -> Vec<ConvexBody> {
        self.members
            .iter()
            .map(|m| self.reference.homothetic(m.center, m.ratio))
            .collect()
    }

    pub fn total_ratio(&self) -> f64 {
        self.members.iter().map(|m| m.ratio).sum()
    }

    /// Apply `x ↦ s·x + t` to every member.
    pub fn similar(&self, s: f64, t: Vec2) -> HomothetFamily {
        HomothetFamily {
            reference: self.reference.clone(),
            members: self
                .members
                .iter()
                .map(|m| Member {
                    center: s * m.center + t,
                    ratio: s * m.ratio,
                })
                .collect(),
        }
    }
}

/// A plane with the members it leaves below and above.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCertificate {
    pub plane: Hyperplane,
    pub below: Vec<usize>,
    pub above: Vec<usize>,
    /// Smallest clearance of a member from the plane.
    pub margin: f64,
}

impl SeparationCertificate {
    /// Recomputes the clearance from scratch and checks both sides are populated.
    pub fn validate(&self, bodies: &[ConvexBody], tol: f64) -> bool {
        if self.below.is_empty() || self.above.is_empty() {
            return false;
        }
        let f1: Vec<ConvexBody> = self.below.iter().map(|&i| bodies[i].clone()).collect();
        let f2: Vec<ConvexBody> = self.above.iter().map(|&i| bodies[i].clone()).collect();
        let s = strictly_separates(&self.plane, &f1, &f2, tol);
        s.separates && s.margin >= self.margin - 1e-9 * (1.0 + self.margin.abs())
    }
}
