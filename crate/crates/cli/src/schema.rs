//! Wire format. Bodies, families, packings and cap lists as JSON.

use anyhow::{anyhow, Context, Result};
use serde::{Deserialize, Serialize};

use sepgeom_core::packing::TranslatePacking;
use sepgeom_core::separability::{HomothetFamily, Hyperplane, Member, SeparatingLine};
use sepgeom_core::spherical::Cap;
use sepgeom_core::{ConvexBody, Vec2, Vec3};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodyJson {
    Disk { center: [f64; 2], radius: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

pub fn v2(p: [f64; 2]) -> Vec2 {
    Vec2::new(p[0], p[1])
}

impl BodyJson {
    pub fn from_body(b: &ConvexBody) -> Result<Self> {
        Ok(match b {
            ConvexBody::Disk(d) => BodyJson::Disk {
                center: [d.center().x, d.center().y],
                radius: d.radius(),
            },
            ConvexBody::Polygon(p) => BodyJson::Polygon {
                vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
            },
            ConvexBody::Degenerate(_) => return Err(anyhow!("degenerate bodies have no JSON form")),
        })
    }

    pub fn to_body(&self) -> Result<ConvexBody> {
        Ok(match self {
            BodyJson::Disk { center, radius } => ConvexBody::disk(v2(*center), *radius)?,
            BodyJson::Polygon { vertices } => ConvexBody::polygon(vertices.iter().copied().map(v2).collect())?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberJson {
    pub center: [f64; 2],
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub reference: BodyJson,
    pub members: Vec<MemberJson>,
}

impl FamilyJson {
    pub fn from_family(f: &HomothetFamily) -> Result<Self> {
        Ok(FamilyJson {
            reference: BodyJson::from_body(f.reference())?,
            members: f
                .members()
                .iter()
                .map(|m| MemberJson {
                    center: [m.center.x, m.center.y],
                    ratio: m.ratio,
                })
                .collect(),
        })
    }

    pub fn to_family(&self) -> Result<HomothetFamily> {
        let members = self
            .members
            .iter()
            .map(|m| Member {
                center: v2(m.center),
                ratio: m.ratio,
            })
            .collect();
        Ok(HomothetFamily::new(
            self.reference.to_body().context("reference body")?,
            members,
        )?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineJson {
    pub normal: [f64; 2],
    pub offset: f64,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl LineJson {
    pub fn from_line(s: &SeparatingLine) -> Self {
        LineJson {
            normal: [s.line.normal.x, s.line.normal.y],
            offset: s.line.offset,
            left: s.left.clone(),
            right: s.right.clone(),
        }
    }

    pub fn to_line(&self) -> Result<SeparatingLine> {
        Ok(SeparatingLine {
            line: Hyperplane::new(v2(self.normal), self.offset)?,
            left: self.left.clone(),
            right: self.right.clone(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PackingJson {
    pub body: BodyJson,
    pub centers: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<LineJson>,
    /// Closed polygonal curve through centers, for the Oler check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<Vec<[f64; 2]>>,
}

impl PackingJson {
    pub fn to_packing(&self) -> Result<TranslatePacking> {
        let body = self.body.to_body().context("packing body")?;
        Ok(TranslatePacking::new(
            body,
            self.centers.iter().copied().map(v2).collect(),
        )?)
    }

    pub fn lines(&self) -> Result<Vec<SeparatingLine>> {
        self.certificates
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_line().with_context(|| format!("certificates[{i}]")))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapJson {
    pub center: [f64; 3],
    pub radius_rad: f64,
}

impl CapJson {
    pub fn from_cap(c: &Cap) -> Self {
        let v = c.center();
        CapJson {
            center: [v.x, v.y, v.z],
            radius_rad: c.radius(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsJson {
    pub caps: Vec<CapJson>,
}

impl CapsJson {
    pub fn to_caps(&self) -> Result<Vec<Cap>> {
        self.caps
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let [x, y, z] = c.center;
                Cap::new(Vec3::new(x, y, z), c.radius_rad).map_err(|e| anyhow!("caps[{i}]: {e}"))
            })
            .collect()
    }
}

/// Parses JSON, reporting the line and column of the first problem.
pub fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| anyhow!("malformed {what} JSON at line {} column {}: {e}", e.line(), e.column()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_roundtrip() {
        let b: BodyJson = parse(r#"{"type":"disk","center":[1,2],"radius":0.5}"#, "body").unwrap();
        assert!(matches!(b.to_body().unwrap(), ConvexBody::Disk(_)));
        let err = parse::<FamilyJson>(
            "{\n\"reference\": {\"type\":\"disk\",\"center\":[0,0]},\n\"members\":[]}",
            "family",
        )
        .unwrap_err()
        .to_string();
        assert!(err.contains("line") && err.contains("radius"), "{err}");
    }
}
