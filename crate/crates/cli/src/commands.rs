use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::json;

use sepgeom_core::covering::{goodman_goodman_cover, min_cover_ratio};
use sepgeom_core::geom::convex_hull;
use sepgeom_core::lambda_density::{
    delta_lambda_euclid, delta_lambda_hyperbolic_bound, delta_lambda_sphere_bound, DensityBound,
};
use sepgeom_core::packing::{
    area_bound_check, brute_force_lattice_contact, contact_graph, crystallization_bound, delta_sep,
    guillotine_kertesz_check, lattice_contact_bounds, oler_check, polyomino_packing, random_guillotine,
    rogers_sigma_with, three_disk_extrema_with, BranchMax, CrystallizationMode, PermissiblePolygon, TranslatePacking,
};
use sepgeom_core::separability::{
    is_ls_packing, is_non_separable_bodies, is_rho_separable, is_ts_packing, NsOptions, TsVerdict,
};
use sepgeom_core::spherical::{
    caps_non_separable_with, cuboctahedral_packing, is_ts_cap_packing, octahedral_packing, polyanskii_cover_check,
    tammes_sep_table, Cap,
};
use sepgeom_core::{ConvexBody, Error as CoreError, Vec2};

use crate::report::{digest, Provenance, Report, Status};
use crate::schema::{parse, v2, CapJson, CapsJson, FamilyJson, LineJson, PackingJson};
use crate::svg::Scene;
use crate::{Command, Construction, GeometryArg, RunConfig};

pub struct Outcome {
    pub report: Report,
    pub scene: Option<Scene>,
}

fn read(path: &Path) -> Result<(String, Vec<u8>)> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", path.display()))?;
    Ok((text, bytes))
}

fn packing_scene(p: &TranslatePacking, tol: f64) -> Scene {
    let mut sc = Scene::default();
    for m in p.members() {
        sc.body(&m);
    }
    for e in contact_graph(p, tol).edges {
        sc.segment(p.centers()[e.0], p.centers()[e.1], "contact");
    }
    sc
}

fn ts_status(v: TsVerdict) -> Status {
    match v {
        TsVerdict::Verified => Status::Verified,
        TsVerdict::Unresolved => Status::Unresolved,
    }
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Outcome> {
    let base = format!("tol={:e};samples={:?};seed={}", cfg.tolerance, cfg.samples, cfg.seed);
    let new = |name: &str, inputs: &[&[u8]], args: String| {
        Report::new(name, digest(inputs, &format!("{name};{base};{args}")))
    };
    let tol = cfg.tolerance;
    match command {
        Command::CheckNs { file } => {
            let (text, bytes) = read(file)?;
            let family = parse::<FamilyJson>(&text, "family")?.to_family()?;
            let bodies = family.bodies();
            let opts = NsOptions {
                samples: cfg.samples.unwrap_or(4096),
                tol,
                seed: cfg.seed,
            };
            let d = is_non_separable_bodies(&bodies, &opts)?;
            let mut r = new("check-ns", &[&bytes], String::new());
            r.verdict(
                Status::Verified,
                if d.is_non_separable() {
                    "non-separable"
                } else {
                    "separable"
                },
            );
            r.value("best_margin", d.best_margin, Provenance::Lp);
            r.value(
                "critical_directions_checked",
                d.critical_directions_checked,
                Provenance::Search,
            );
            if d.approximate {
                r.warn("sampled decision, not exact");
            }
            let mut sc = Scene::default();
            bodies.iter().for_each(|b| {
                sc.body(b);
            });
            if let Some(w) = &d.witness {
                r.certificates.push(json!({
                    "normal": [w.plane.normal.x, w.plane.normal.y],
                    "offset": w.plane.offset,
                    "below": w.below,
                    "above": w.above,
                    "margin": w.margin,
                }));
                sc.line(w.plane.normal, w.plane.offset);
            }
            Ok(Outcome {
                report: r,
                scene: Some(sc),
            })
        }
        Command::Cover { file } => {
            let (text, bytes) = read(file)?;
            let family = parse::<FamilyJson>(&text, "family")?.to_family()?;
            let bodies = family.bodies();
            let mut r = new("cover", &[&bytes], String::new());
            let ns = bodies.len() < 2
                || is_non_separable_bodies(
                    &bodies,
                    &NsOptions {
                        samples: cfg.samples.unwrap_or(4096),
                        tol,
                        seed: cfg.seed,
                    },
                )?
                .is_non_separable();
            let c = min_cover_ratio(&family)?;
            let prov = if matches!(family.reference(), ConvexBody::Disk(_)) {
                Provenance::Exact
            } else {
                Provenance::Lp
            };
            r.value("lambda", c.lambda, prov.clone());
            r.value("center", [c.cover.center.x, c.cover.center.y], prov);
            r.value("contained", c.contained, Provenance::Search);
            r.value("ratio_sum", family.total_ratio(), Provenance::ClosedForm);
            r.value("non_separable", ns, Provenance::Lp);
            let mut status = if c.contained {
                Status::Verified
            } else {
                Status::Violated
            };
            if !ns {
                r.warn("family is separable; the covering bound does not apply");
            } else if family.reference().is_o_symmetric(1e-9) {
                let gg = goodman_goodman_cover(&family)?;
                r.value("centroid_cover", [gg.center.x, gg.center.y], Provenance::ClosedForm);
                if c.lambda > 1.0 + 1e-7 {
                    r.warn("covering ratio exceeds 1 for a symmetric non-separable family");
                    status = Status::Violated;
                }
            }
            r.verdict(status, if c.contained { "covered" } else { "not-covered" });
            let mut sc = Scene::default();
            bodies.iter().for_each(|b| {
                sc.body(b);
            });
            sc.class_body(&c.cover.body(), "cover");
            Ok(Outcome {
                report: r,
                scene: Some(sc),
            })
        }
        Command::VerifyTs { file } => {
            let (text, bytes) = read(file)?;
            let pj = parse::<PackingJson>(&text, "packing")?;
            let p = pj.to_packing()?;
            let lines = pj.lines()?;
            let ts = is_ts_packing(&p, (!lines.is_empty()).then_some(&lines[..]), tol)?;
            let mut r = new("verify-ts", &[&bytes], String::new());
            r.verdict(
                ts_status(ts.verdict),
                if ts.is_verified() { "ts" } else { "unresolved" },
            );
            r.value("candidates_checked", ts.candidates_checked, Provenance::Search);
            r.value("unresolved_pairs", &ts.unresolved_pairs, Provenance::Search);
            if !ts.is_verified() {
                r.warn(format!(
                    "{} pair(s) without a separating line among the candidates",
                    ts.unresolved_pairs.len()
                ));
            }
            let mut sc = packing_scene(&p, tol);
            for c in &ts.certificates {
                r.certificates.push(serde_json::to_value(LineJson::from_line(c))?);
                sc.line(c.line.normal, c.line.offset);
            }
            Ok(Outcome {
                report: r,
                scene: Some(sc),
            })
        }
        Command::VerifyLs { file } => {
            let (text, bytes) = read(file)?;
            let p = parse::<PackingJson>(&text, "packing")?.to_packing()?;
            let ls = is_ls_packing(&p, tol)?;
            let mut r = new("verify-ls", &[&bytes], String::new());
            r.verdict(
                ts_status(ls.verdict),
                if ls.failing.is_empty() { "ls" } else { "unresolved" },
            );
            r.value("contacts", ls.contacts, Provenance::Exact);
            r.value("failing", &ls.failing, Provenance::Search);
            if !ls.failing.is_empty() {
                r.warn("some neighbourhoods could not be verified totally separable");
            }
            Ok(Outcome {
                report: r,
                scene: Some(packing_scene(&p, tol)),
            })
        }
        Command::RhoSep { file, rho } => {
            let (text, bytes) = read(file)?;
            let p = parse::<PackingJson>(&text, "packing")?.to_packing()?;
            let rs = is_rho_separable(&p, *rho, tol)?;
            let mut r = new("rho-sep", &[&bytes], format!("rho={rho:e}"));
            r.verdict(
                ts_status(rs.verdict),
                if rs.failing.is_empty() {
                    "rho-separable"
                } else {
                    "unresolved"
                },
            );
            r.value("failing", &rs.failing, Provenance::Search);
            r.value("trivial", rs.trivial, Provenance::ClosedForm);
            Ok(Outcome {
                report: r,
                scene: Some(packing_scene(&p, tol)),
            })
        }
        Command::Oler { file } => {
            let (text, bytes) = read(file)?;
            let pj = parse::<PackingJson>(&text, "packing")?;
            let p = pj.to_packing()?;
            let vertices = match &pj.polygon {
                Some(v) => v.iter().copied().map(v2).collect(),
                None => convex_hull(p.centers()),
            };
            let pi = PermissiblePolygon::new(vertices.clone())?;
            let o = oler_check(&p, &pi, tol)?;
            let mut r = new("oler", &[&bytes], String::new());
            let ok = o.slack >= -tol;
            r.verdict(
                if ok { Status::Verified } else { Status::Violated },
                if ok { "holds" } else { "violated" },
            );
            r.value("area", o.area, Provenance::ClosedForm);
            r.value("minkowski_length", o.minkowski_length, Provenance::ClosedForm);
            r.value("parallelogram_area", o.parallelogram_area, Provenance::Exact);
            r.value("lhs", o.lhs, Provenance::ClosedForm);
            r.value("slack", o.slack, Provenance::ClosedForm);
            let mut sc = packing_scene(&p, tol);
            sc.outline(vertices, "cover");
            Ok(Outcome {
                report: r,
                scene: Some(sc),
            })
        }
        Command::Density { file } => {
            let (text, bytes) = read(file)?;
            let p = parse::<PackingJson>(&text, "packing")?.to_packing()?;
            let a = area_bound_check(&p)?;
            let mut r = new("density", &[&bytes], String::new());
            r.verdict(
                if a.holds { Status::Verified } else { Status::Violated },
                if a.holds { "holds" } else { "violated" },
            );
            r.value("delta_sep", delta_sep(p.body())?, Provenance::Exact);
            r.value("hull_area", a.hull_area, Provenance::ClosedForm);
            r.value("general_bound", a.general_bound, Provenance::ClosedForm);
            r.value("general_slack", a.general_slack, Provenance::ClosedForm);
            if let (Some(b), Some(s)) = (a.symmetric_bound, a.symmetric_slack) {
                r.value("symmetric_bound", b, Provenance::ClosedForm);
                r.value("symmetric_slack", s, Provenance::ClosedForm);
            }
            Ok(Outcome {
                report: r,
                scene: Some(packing_scene(&p, tol)),
            })
        }
        Command::Contact { file, n, dim } => {
            if file.is_none() && n.is_none() {
                bail!("contact needs a packing file or --n");
            }
            let mut inputs = Vec::new();
            let mut r;
            let mut scene = None;
            if let Some(f) = file {
                let (text, bytes) = read(f)?;
                let p = parse::<PackingJson>(&text, "packing")?.to_packing()?;
                inputs = bytes;
                r = new("contact", &[&inputs], format!("n={n:?};dim={dim}"));
                let g = contact_graph(&p, tol);
                r.value("contact_number", g.contact_number, Provenance::Exact);
                r.value("edges", &g.edges, Provenance::Exact);
                scene = Some(packing_scene(&p, tol));
            } else {
                r = new("contact", &[&inputs], format!("n={n:?};dim={dim}"));
            }
            if let Some(n) = n {
                let mode = if *dim == 3 {
                    CrystallizationMode::Hales
                } else {
                    let samples = cfg.samples.map_or(1_000_000, |s| s as u64);
                    let s = rogers_sigma_with(*dim as usize, samples, cfg.seed)?;
                    r.value(
                        "sigma",
                        s.value,
                        Provenance::MonteCarlo {
                            seed: cfg.seed,
                            samples,
                        },
                    );
                    CrystallizationMode::Rogers(s.value)
                };
                r.value(
                    "crystallization_bound",
                    crystallization_bound(*n, *dim, mode)?,
                    Provenance::Exact,
                );
            }
            r.verdict(Status::Verified, "computed");
            Ok(Outcome { report: r, scene })
        }
        Command::Lattice { n, dim } => {
            let mut r = new("lattice", &[], format!("n={n};dim={dim}"));
            let (lo, hi) = lattice_contact_bounds(*dim, *n as u64)?;
            r.value("lower_bound", lo, Provenance::Exact);
            r.value("upper_bound", hi, Provenance::Exact);
            if *dim != 2 {
                r.verdict(Status::Verified, "bounds");
                return Ok(Outcome { report: r, scene: None });
            }
            let p = polyomino_packing(*n)?;
            let contacts = contact_graph(&p, tol).contact_number as u64;
            r.value("polyomino_contacts", contacts, Provenance::Exact);
            match brute_force_lattice_contact(*n) {
                Ok(b) => {
                    r.value("brute_force", b, Provenance::BruteForce);
                }
                Err(CoreError::OracleRange) => {
                    r.warn("brute force skipped beyond n = 12");
                }
                Err(e) => return Err(e.into()),
            }
            let mut ok = contacts == hi;
            if *n <= 100 {
                let ls = is_ls_packing(&p, tol)?;
                r.value("locally_separable", ls.failing.is_empty(), Provenance::Search);
                ok &= ls.failing.is_empty();
            }
            r.verdict(
                if ok { Status::Verified } else { Status::Violated },
                if ok { "attained" } else { "not-attained" },
            );
            Ok(Outcome {
                report: r,
                scene: Some(packing_scene(&p, tol)),
            })
        }
        Command::Kertesz { cells, radius } => {
            let mut r = new("kertesz", &[], format!("cells={cells};radius={radius:e}"));
            let (part, balls) = random_guillotine(cfg.seed, *cells, *radius)?;
            let k = guillotine_kertesz_check(&part, &balls, tol)?;
            r.verdict(
                if k.holds { Status::Verified } else { Status::Violated },
                if k.holds { "holds" } else { "violated" },
            );
            r.value("cells", k.n, Provenance::Exact);
            r.value("surface_sum", k.surface_sum, Provenance::ClosedForm);
            r.value("surface_bound", k.surface_bound, Provenance::ClosedForm);
            r.value("volume", k.volume, Provenance::ClosedForm);
            r.value("volume_bound", k.volume_bound, Provenance::ClosedForm);
            r.value("surface_slack", k.surface_slack, Provenance::ClosedForm);
            r.value("volume_slack", k.volume_slack, Provenance::ClosedForm);
            Ok(Outcome { report: r, scene: None })
        }
        Command::Caps { file, construction } => {
            let (caps, bytes): (Vec<Cap>, Vec<u8>) = match (file, construction) {
                (Some(f), None) => {
                    let (text, bytes) = read(f)?;
                    (parse::<CapsJson>(&text, "caps")?.to_caps()?, bytes)
                }
                (None, Some(Construction::Octahedral)) => (octahedral_packing(), b"octahedral".to_vec()),
                (None, Some(Construction::Cuboctahedral)) => (cuboctahedral_packing(), b"cuboctahedral".to_vec()),
                _ => bail!("caps needs exactly one of a caps file or --construction"),
            };
            caps_report(&caps, new("caps", &[&bytes], String::new()), cfg)
        }
        Command::Tammes { k } => {
            let mut r = new("tammes", &[], format!("k={k}"));
            let e = tammes_sep_table(*k)?;
            if let Some(x) = e.exact {
                r.value("radius", x, Provenance::Exact);
            }
            if let Some(x) = e.lower {
                r.value("lower", x, Provenance::ClosedForm);
            }
            if let Some(x) = e.upper {
                r.value("upper", x, Provenance::ClosedForm);
            }
            if e.lower_asymptotic {
                r.warn("lower bound holds only for sufficiently large k");
            }
            r.verdict(Status::Verified, if e.exact.is_some() { "exact" } else { "bounds" });
            Ok(Outcome { report: r, scene: None })
        }
        Command::LambdaDensity { geometry, lambda, rho } => {
            let mut r = new(
                "lambda-density",
                &[],
                format!("geometry={geometry:?};lambda={lambda:e};rho={rho:?}"),
            );
            let b: DensityBound = match geometry {
                GeometryArg::E2 => {
                    if rho.is_some_and(|x| x != 1.0) {
                        r.warn("planar result is for unit disks; --rho ignored");
                    }
                    delta_lambda_euclid(*lambda)?
                }
                GeometryArg::S2 => delta_lambda_sphere_bound(*lambda, rho.context("--rho is required on s2")?)?,
                GeometryArg::H2 => delta_lambda_hyperbolic_bound(*lambda, rho.context("--rho is required on h2")?)?,
            };
            r.value("value", b.value, Provenance::ClosedForm);
            r.value("branch", b.branch, Provenance::ClosedForm);
            r.value(
                "triangle",
                json!({"sides": b.triangle.sides, "angles": b.triangle.angles, "area": b.triangle.area}),
                Provenance::ClosedForm,
            );
            if b.tie {
                r.warn("parameters on a branch boundary; first matching branch used");
            }
            for note in &b.notes {
                r.warn(note.clone());
            }
            r.verdict(
                Status::Verified,
                if *geometry == GeometryArg::E2 {
                    "exact"
                } else {
                    "upper-bound"
                },
            );
            Ok(Outcome { report: r, scene: None })
        }
        Command::Extremal3Disks { grid } => {
            let mut r = new("extremal-3disks", &[], format!("grid={grid}"));
            let t = three_disk_extrema_with(*grid);
            for (name, m) in [
                ("area", &t.area),
                ("perimeter", &t.perimeter),
                ("inradius", &t.inradius),
                ("width", &t.width),
            ] {
                r.value(name, branch_json(m), Provenance::Search);
                if m.flagged {
                    r.warn(format!(
                        "{name}: maximum {:.12} differs from the reference constant {:.12}",
                        m.value, m.reference[0]
                    ));
                }
            }
            r.verdict(Status::Verified, "computed");
            Ok(Outcome { report: r, scene: None })
        }
    }
}

fn branch_json(m: &BranchMax) -> serde_json::Value {
    json!({
        "value": m.value,
        "gamma": m.gamma,
        "branch": if m.branch == 0 { "obtuse" } else { "acute" },
        "endpoints": m.endpoints,
        "reference": m.reference,
        "flagged": m.flagged,
    })
}

fn caps_report(caps: &[Cap], mut r: Report, cfg: &RunConfig) -> Result<Outcome> {
    let mut status = Status::Verified;
    r.value(
        "caps",
        caps.iter().map(CapJson::from_cap).collect::<Vec<_>>(),
        Provenance::ClosedForm,
    );
    let mut verdict = "single".to_string();
    if caps.len() >= 2 {
        let d = caps_non_separable_with(caps, cfg.samples.unwrap_or(10_000))?;
        verdict = if d.is_non_separable() {
            "non-separable"
        } else {
            "separable"
        }
        .to_string();
        r.value("separation_margin", d.margin, Provenance::Search);
        if let Some(w) = d.witness.filter(|_| !d.is_non_separable()) {
            let p = w.pole();
            r.certificates.push(json!({"separating_pole": [p.x, p.y, p.z]}));
        }
    }
    match is_ts_cap_packing(caps, None, cfg.tolerance) {
        Ok(ts) => {
            r.value("totally_separable", ts.is_verified(), Provenance::Search);
            if !ts.is_verified() {
                r.warn(format!(
                    "{} pair(s) have no separating great circle",
                    ts.unresolved_pairs.len()
                ));
            }
            for c in &ts.certificates {
                r.certificates.push(
                    json!({"pole": [c.pole.x, c.pole.y, c.pole.z], "positive": c.positive, "negative": c.negative}),
                );
            }
        }
        Err(CoreError::NotAPacking(i, j)) => {
            r.warn(format!("caps {i} and {j} overlap; not a packing"));
        }
        Err(e) => return Err(e.into()),
    }
    let sum: f64 = caps.iter().map(Cap::radius).sum();
    if sum < FRAC_PI_2 && (caps.len() < 2 || verdict == "non-separable") {
        let p = polyanskii_cover_check(caps)?;
        r.value("enclosing_radius", p.enclosing.radius(), Provenance::Search);
        r.value("radius_sum", p.radius_sum, Provenance::ClosedForm);
        r.value("cover_slack", p.slack, Provenance::ClosedForm);
        if !p.holds {
            status = Status::Violated;
        }
    }
    r.verdict(status, verdict);
    Ok(Outcome {
        report: r,
        scene: Some(caps_scene(caps)),
    })
}

/// Orthographic view from +z: front caps solid, back caps dashed.
fn caps_scene(caps: &[Cap]) -> Scene {
    let mut sc = Scene::default();
    sc.circle(Vec2::zeros(), 1.0, "sphere");
    for c in caps {
        let u = c.center();
        let a = if u.x.abs() < 0.9 {
            sepgeom_core::Vec3::x()
        } else {
            sepgeom_core::Vec3::y()
        };
        let e1 = u.cross(&a).normalize();
        let e2 = u.cross(&e1);
        let (s, co) = c.radius().sin_cos();
        let pts = (0..96)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / 96.0;
                let p = u * co + (e1 * t.cos() + e2 * t.sin()) * s;
                Vec2::new(p.x, p.y)
            })
            .collect();
        sc.outline(pts, if u.z >= 0.0 { "body" } else { "hidden" });
    }
    sc
}
