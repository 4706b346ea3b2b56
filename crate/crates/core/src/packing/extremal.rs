//! Extrema of size functionals of `C = T + B` over non-separable triples of unit disks,
//! where `T` is the triangle of centers. Each functional reduces to two one-parameter
//! branches in the apex angle γ: an obtuse branch (legs 2, γ ∈ [π/2, π]) and an acute
//! branch (two heights equal to 2, γ ∈ [π/3, π/2]).

use std::f64::consts::PI;

use crate::optim::golden_max;

/// Maximum of a functional over both branches.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchMax {
    pub value: f64,
    pub gamma: f64,
    /// 0 for the obtuse branch, 1 for the acute one.
    pub branch: u8,
    /// Branch values at γ = π/2, π (obtuse) and π/3, π/2 (acute).
    pub endpoints: [f64; 4],
    /// Constants to compare against; `flagged` when the maximum differs from the first.
    pub reference: Vec<f64>,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThreeDiskTable {
    pub area: BranchMax,
    pub perimeter: BranchMax,
    pub inradius: BranchMax,
    pub width: BranchMax,
}

type Branch = fn(f64) -> f64;

const OBTUSE: (f64, f64) = (PI / 2.0, PI);
const ACUTE: (f64, f64) = (PI / 3.0, PI / 2.0);

fn area0(g: f64) -> f64 {
    PI + 4.0 + 4.0 * (g / 2.0).sin() + 2.0 * g.sin()
}
fn area1(g: f64) -> f64 {
    PI + 6.0 / g.sin() + 2.0 / (g / 2.0).cos()
}
fn perim0(g: f64) -> f64 {
    2.0 * PI + 4.0 + 4.0 * (g / 2.0).sin()
}
fn perim1(g: f64) -> f64 {
    2.0 * PI + (4.0 + 4.0 * (g / 2.0).sin()) / g.sin()
}
// r(C) = r(T) + 1 and w(C) = w(T) + 2 for the unit disk
fn inr0(g: f64) -> f64 {
    1.0 + g.sin() / (1.0 + (g / 2.0).sin())
}
fn inr1(g: f64) -> f64 {
    1.0 + 1.0 / (1.0 + (g / 2.0).sin())
}
fn width0(g: f64) -> f64 {
    2.0 + (2.0 * (g / 2.0).cos()).min(2.0 * g.sin())
}
fn width1(g: f64) -> f64 {
    2.0 + 2f64.min(1.0 / (g / 2.0).sin())
}

/// Grid scan of a closed interval followed by golden-section refinement around the best sample.
fn scan(f: Branch, (a, b): (f64, f64), samples: usize) -> (f64, f64) {
    let step = (b - a) / samples as f64;
    let (k, _) = (0..=samples)
        .map(|k| (k, f(a + step * k as f64)))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let g0 = a + step * k as f64;
    let (g, v) = golden_max(f, (g0 - step).max(a), (g0 + step).min(b), 1e-13);
    if v >= f(g0) {
        (g, v)
    } else {
        (g0, f(g0))
    }
}

fn branch_max(f0: Branch, f1: Branch, samples: usize, reference: Vec<f64>) -> BranchMax {
    let (g0, v0) = scan(f0, OBTUSE, samples);
    let (g1, v1) = scan(f1, ACUTE, samples);
    let (value, gamma, branch) = if v0 >= v1 { (v0, g0, 0) } else { (v1, g1, 1) };
    let endpoints = [f0(OBTUSE.0), f0(OBTUSE.1), f1(ACUTE.0), f1(ACUTE.1)];
    let flagged = reference.first().is_some_and(|r| (r - value).abs() > 1e-6);
    BranchMax {
        value,
        gamma,
        branch,
        endpoints,
        reference,
        flagged,
    }
}

/// The four extrema with `samples` grid points per branch.
pub fn three_disk_extrema_with(samples: usize) -> ThreeDiskTable {
    let s3 = 3f64.sqrt();
    ThreeDiskTable {
        // stated constant first, then the regular-triangle value
        area: branch_max(area0, area1, samples, vec![PI + 4.0 + 3.0 * s3, PI + 16.0 / s3]),
        perimeter: branch_max(perim0, perim1, samples, vec![2.0 * PI + 8.0]),
        // stated constant, then r(T) + 2 at the regular triangle
        inradius: branch_max(inr0, inr1, samples, vec![16.0 / 3.0, 8.0 / 3.0]),
        width: branch_max(width0, width1, samples, vec![4.0]),
    }
}

pub fn three_disk_extrema() -> ThreeDiskTable {
    three_disk_extrema_with(1_000_000)
}
