use sepgeom_core::packing::{contact_graph, TranslatePacking};
use sepgeom_core::separability::{is_ls_packing, is_rho_separable, is_ts_packing, TsVerdict};
use sepgeom_core::{ConvexBody, Vec2};

/// 13 unit-diameter disks: a 3×3 block, two disks to its right, and a pair `p`, `q` placed
/// symmetrically about the diagonal through (2, 1) so that each touches two neighbours at
/// angles no single line can clear.
fn ls_not_ts() -> TranslatePacking {
    let mut c: Vec<Vec2> = (0..3)
        .flat_map(|y| (0..3).map(move |x| Vec2::new(x as f64, y as f64)))
        .collect();
    c.push(Vec2::new(3.0, 0.0));
    c.push(Vec2::new(3.0, 1.0));
    // cos φ − sin φ = 1/√2 − 1
    let phi = (0.5 - 0.5f64.sqrt()).acos() - std::f64::consts::FRAC_PI_4;
    let p = Vec2::new(3.0, 1.0) + Vec2::new(phi.cos(), phi.sin());
    let d = p - Vec2::new(2.0, 1.0);
    let q = Vec2::new(2.0, 1.0) + Vec2::new(d.y, d.x);
    c.push(p);
    c.push(q);
    TranslatePacking::new(ConvexBody::disk(Vec2::zeros(), 0.5).unwrap(), c).unwrap()
}

#[test]
fn locally_but_not_totally_separable() {
    let p = ls_not_ts();
    assert_eq!(contact_graph(&p, 1e-9).edges.len(), 18);
    assert_eq!(is_ls_packing(&p, 1e-9).unwrap().verdict, TsVerdict::Verified);
    assert_eq!(is_ts_packing(&p, None, 1e-9).unwrap().verdict, TsVerdict::Unresolved);
}

#[test]
fn square_grid_is_rho_separable_for_every_rho() {
    let c = (0..4)
        .flat_map(|y| (0..4).map(move |x| Vec2::new(x as f64, y as f64)))
        .collect();
    let p = TranslatePacking::new(ConvexBody::disk(Vec2::zeros(), 0.5).unwrap(), c).unwrap();
    for rho in [2.0, 4.0, 6.0] {
        assert_eq!(is_rho_separable(&p, rho, 1e-9).unwrap().verdict, TsVerdict::Verified);
    }
}
