//! Minimal deterministic SVG output for planar scenes.

use std::fmt::Write;

use sepgeom_core::{ConvexBody, Vec2};

#[derive(Debug, Clone)]
enum Item {
    Outline(Vec<Vec2>, &'static str),
    Circle(Vec2, f64, &'static str),
    Segment(Vec2, Vec2, &'static str),
    /// `⟨normal, x⟩ = offset`, clipped to the drawing box.
    Line(Vec2, f64, &'static str),
}

#[derive(Debug, Clone, Default)]
pub struct Scene {
    items: Vec<Item>,
}

const STYLE: &str = ".body{fill:#4a90d922;stroke:#1f4e79;stroke-width:1.5}\
.cover{fill:none;stroke:#c0392b;stroke-width:2;stroke-dasharray:6 3}\
.contact{stroke:#333;stroke-width:1}\
.separator{stroke:#27ae60;stroke-width:1;stroke-dasharray:4 2}\
.sphere{fill:none;stroke:#888;stroke-width:1}\
.hidden{fill:#4a90d911;stroke:#1f4e79;stroke-width:1;stroke-dasharray:2 2}";

impl Scene {
    pub fn body(&mut self, b: &ConvexBody) -> &mut Self {
        self.class_body(b, "body")
    }

    pub fn class_body(&mut self, b: &ConvexBody, class: &'static str) -> &mut Self {
        match b {
            ConvexBody::Disk(d) => self.items.push(Item::Circle(d.center(), d.radius(), class)),
            other => self.items.push(Item::Outline(other.outline(0), class)),
        }
        self
    }

    pub fn outline(&mut self, pts: Vec<Vec2>, class: &'static str) -> &mut Self {
        self.items.push(Item::Outline(pts, class));
        self
    }

    pub fn circle(&mut self, c: Vec2, r: f64, class: &'static str) -> &mut Self {
        self.items.push(Item::Circle(c, r, class));
        self
    }

    pub fn segment(&mut self, a: Vec2, b: Vec2, class: &'static str) -> &mut Self {
        self.items.push(Item::Segment(a, b, class));
        self
    }

    pub fn line(&mut self, normal: Vec2, offset: f64) -> &mut Self {
        self.items.push(Item::Line(normal, offset, "separator"));
        self
    }

    fn bounds(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = -lo;
        let mut grow = |p: Vec2, r: f64| {
            lo = lo.inf(&(p - Vec2::new(r, r)));
            hi = hi.sup(&(p + Vec2::new(r, r)));
        };
        for it in &self.items {
            match it {
                Item::Outline(pts, _) => pts.iter().for_each(|p| grow(*p, 0.0)),
                Item::Circle(c, r, _) => grow(*c, *r),
                Item::Segment(a, b, _) => {
                    grow(*a, 0.0);
                    grow(*b, 0.0);
                }
                Item::Line(..) => {}
            }
        }
        if !lo.x.is_finite() {
            return (Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0));
        }
        let pad = 0.05 * (hi - lo).max().max(1e-9);
        (lo - Vec2::new(pad, pad), hi + Vec2::new(pad, pad))
    }

    pub fn render(&self) -> String {
        let (lo, hi) = self.bounds();
        let size = hi - lo;
        let scale = 600.0 / size.max();
        let (w, h) = (size.x * scale, size.y * scale);
        // flip y so the picture has the usual orientation
        let map = |p: Vec2| ((p.x - lo.x) * scale, (hi.y - p.y) * scale);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
        );
        let _ = writeln!(s, "<style>{STYLE}</style>");
        for it in &self.items {
            match it {
                Item::Outline(pts, class) => {
                    let path: Vec<String> = pts
                        .iter()
                        .map(|p| map(*p))
                        .map(|(x, y)| format!("{x:.3},{y:.3}"))
                        .collect();
                    let _ = writeln!(s, r#"<polygon class="{class}" points="{}"/>"#, path.join(" "));
                }
                Item::Circle(c, r, class) => {
                    let (x, y) = map(*c);
                    let _ = writeln!(
                        s,
                        r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{:.3}"/>"#,
                        r * scale
                    );
                }
                Item::Segment(a, b, class) => {
                    let ((x1, y1), (x2, y2)) = (map(*a), map(*b));
                    let _ = writeln!(
                        s,
                        r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
                    );
                }
                Item::Line(n, c, class) => {
                    if let Some((a, b)) = clip_line(*n, *c, lo, hi) {
                        let ((x1, y1), (x2, y2)) = (map(a), map(b));
                        let _ = writeln!(
                            s,
                            r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
                        );
                    }
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Portion of the line inside the box, if any.
fn clip_line(n: Vec2, c: f64, lo: Vec2, hi: Vec2) -> Option<(Vec2, Vec2)> {
    let p0 = n * c;
    let d = Vec2::new(-n.y, n.x);
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..2 {
        if d[k].abs() < 1e-15 {
            if p0[k] < lo[k] || p0[k] > hi[k] {
                return None;
            }
            continue;
        }
        let (a, b) = ((lo[k] - p0[k]) / d[k], (hi[k] - p0[k]) / d[k]);
        t0 = t0.max(a.min(b));
        t1 = t1.min(a.max(b));
    }
    (t0 < t1).then(|| (p0 + d * t0, p0 + d * t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_deterministically() {
        let mut sc = Scene::default();
        sc.body(&ConvexBody::unit_disk()).line(Vec2::new(1.0, 0.0), 0.5);
        let a = sc.render();
        assert_eq!(a, sc.render());
        assert!(a.contains("<circle") && a.contains("separator"));
    }
}
