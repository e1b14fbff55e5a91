//! Stable JSON encoding of cut sets. Field names are part of the external
//! interface: `kind`, `fixed`, `equation`, `interval`, `param_map`,
//! `param_range`, `points`, `provenance`, `status`.

use super::{Cut, CutGeometry, CutSet, FixedEq};
use crate::poly::Coord;
use crate::rat::Interval;
use serde::Serialize;

#[derive(Serialize)]
pub struct CutSetJson {
    pub expression: String,
    pub cuts: Vec<CutJson>,
}

#[derive(Serialize)]
pub struct CutJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equation: Option<EquationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param_map: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param_range: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 2]>>,
    pub provenance: String,
    pub status: &'static str,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum EquationJson {
    Value { value: String },
    Root { poly: String, root_index: usize },
}

fn interval_json(iv: &Interval) -> [String; 2] {
    [iv.lo.to_string(), iv.hi.to_string()]
}

pub fn cut_to_json(cut: &Cut) -> CutJson {
    let mut out = CutJson {
        kind: cut.geometry.kind(),
        fixed: None,
        equation: None,
        interval: None,
        param_map: None,
        param_range: None,
        points: None,
        provenance: cut.provenance.to_string(),
        status: cut.status.label(),
    };
    match &cut.geometry {
        CutGeometry::SemiAlgebraic(sa) => {
            out.fixed = Some(match sa.fixed {
                Coord::X => "x",
                Coord::Y => "y",
            });
            out.equation = Some(match &sa.equation {
                FixedEq::Value(v) => EquationJson::Value {
                    value: v.to_string(),
                },
                FixedEq::RootBranch { poly, index } => EquationJson::Root {
                    poly: poly.display("x", "y"),
                    root_index: *index,
                },
            });
            out.interval = Some(interval_json(&sa.interval));
            if !sa.support.is_empty() {
                out.points = Some(sa.support.iter().map(|&(x, y)| [x, y]).collect());
            }
        }
        CutGeometry::Parametric(pc) => {
            out.param_map = Some(pc.map.to_string_with_var("a"));
            out.param_range = Some(interval_json(&pc.range));
        }
        CutGeometry::Polyline(pl) => {
            out.points = Some(pl.points.iter().map(|&(x, y)| [x, y]).collect());
        }
    }
    out
}

pub fn cutset_json(cs: &CutSet) -> CutSetJson {
    CutSetJson {
        expression: cs.source.to_string(),
        cuts: cs.cuts.iter().map(cut_to_json).collect(),
    }
}

/// Pretty-printed JSON; stable field order, deterministic output.
pub fn cutset_to_json_string(cs: &CutSet) -> String {
    serde_json::to_string_pretty(&cutset_json(cs)).expect("cut set serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{branch_cuts, EngineConfig};
    use crate::expr::parse;

    #[test]
    fn json_has_stable_fields() {
        let e = parse("ln(z^2)").unwrap();
        let cs = branch_cuts(&e, &EngineConfig::default()).unwrap();
        let s = cutset_to_json_string(&cs);
        assert!(s.contains("\"kind\": \"semialgebraic\""));
        assert!(s.contains("\"fixed\": \"x\""));
        assert!(s.contains("\"value\": \"0\""));
        assert!(s.contains("\"status\": \"confirmed\""));
        assert!(s.contains("\"provenance\""));
        let parsed: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed["cuts"].as_array().unwrap().len(), 2);
    }
}
