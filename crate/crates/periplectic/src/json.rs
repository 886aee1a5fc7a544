//! Published JSON wire formats and validating conversions.
//!
//! Parsing always re-checks the type invariants and reports the violated
//! field; serialization of big integers uses decimal strings. The schemas
//! for these shapes live under `docs/schema/`.

use crate::cap::{arrows, caps, maximal_arrows, Arrow, Cap, CapDiagram, CapRef};
use crate::ds::{DsFactor, DsResult, SimpleModule};
use crate::forest::{ForestNode, RootedForest};
use crate::oracle::{VerifyFailure, VerifyReport};
use crate::weight::{DominantWeight, Parity, WeightDiagram};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// `{"n": int, "positions": [int, ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub n: usize,
    pub positions: Vec<i64>,
}

impl From<&WeightDiagram> for DiagramJson {
    fn from(d: &WeightDiagram) -> Self {
        DiagramJson {
            n: d.rank(),
            positions: d.positions().to_vec(),
        }
    }
}

impl TryFrom<DiagramJson> for WeightDiagram {
    type Error = Error;

    fn try_from(j: DiagramJson) -> Result<WeightDiagram> {
        if j.positions.len() != j.n {
            return Err(Error::Parse {
                field: "positions",
                reason: format!("length {} does not match n={}", j.positions.len(), j.n),
            });
        }
        WeightDiagram::new(j.positions).map_err(|_| Error::Parse {
            field: "positions",
            reason: "not strictly increasing".into(),
        })
    }
}

/// `{"left": int, "right": int}`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapJson {
    pub left: i64,
    pub right: i64,
}

impl From<&Cap> for CapJson {
    fn from(c: &Cap) -> Self {
        CapJson {
            left: c.left,
            right: c.right,
        }
    }
}

/// `{"caps": [...], "maximal": [index, ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsJson {
    pub caps: Vec<CapJson>,
    pub maximal: Vec<usize>,
}

impl From<&CapDiagram> for CapsJson {
    fn from(cd: &CapDiagram) -> Self {
        let maximal = cd
            .maximal_caps()
            .iter()
            .map(|c| cd.index_of(c).expect("maximal cap of this diagram"))
            .collect();
        CapsJson {
            caps: cd.caps().iter().map(CapJson::from).collect(),
            maximal,
        }
    }
}

impl TryFrom<CapsJson> for CapDiagram {
    type Error = Error;

    /// Rebuilds the diagram from the right ends and checks that the caps and
    /// maximal indices are exactly the ones it induces.
    fn try_from(j: CapsJson) -> Result<CapDiagram> {
        let positions: Vec<i64> = j.caps.iter().map(|c| c.right).collect();
        let d = WeightDiagram::new(positions).map_err(|_| Error::Parse {
            field: "caps",
            reason: "right ends not strictly increasing".into(),
        })?;
        let cd = caps(&d);
        let roundtrip = CapsJson::from(&cd);
        if roundtrip != j {
            return Err(Error::Parse {
                field: "caps",
                reason: "caps are not the cap diagram of their right ends".into(),
            });
        }
        Ok(cd)
    }
}

/// `{"src": int, "dst": int}`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub src: i64,
    pub dst: i64,
}

/// `{"arrows": [...], "maximal": [index, ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowsJson {
    pub arrows: Vec<ArrowJson>,
    pub maximal: Vec<usize>,
}

/// The arrow set of a diagram together with the indices of maximal arrows.
pub fn arrows_json(d: &WeightDiagram) -> ArrowsJson {
    let all = arrows(d);
    let max = maximal_arrows(&all);
    ArrowsJson {
        arrows: all
            .iter()
            .map(|a| ArrowJson {
                src: a.src,
                dst: a.dst,
            })
            .collect(),
        maximal: all
            .iter()
            .enumerate()
            .filter(|(_, a)| max.contains(a))
            .map(|(i, _)| i)
            .collect(),
    }
}

impl TryFrom<ArrowsJson> for Vec<Arrow> {
    type Error = Error;

    fn try_from(j: ArrowsJson) -> Result<Vec<Arrow>> {
        for a in &j.arrows {
            if a.dst >= a.src {
                return Err(Error::Parse {
                    field: "arrows",
                    reason: format!("arrow {} -> {} does not point left", a.src, a.dst),
                });
            }
        }
        if let Some(&i) = j.maximal.iter().find(|&&i| i >= j.arrows.len()) {
            return Err(Error::Parse {
                field: "maximal",
                reason: format!("index {i} out of range"),
            });
        }
        Ok(j.arrows
            .into_iter()
            .map(|a| Arrow {
                src: a.src,
                dst: a.dst,
            })
            .collect())
    }
}

/// `{"weight": [...], "z": 0|1, "removed_ball": int}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsFactorJson {
    pub weight: Vec<i64>,
    pub z: u8,
    pub removed_ball: i64,
}

/// `{"input": [...], "factors": [...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsJson {
    pub input: Vec<i64>,
    pub factors: Vec<DsFactorJson>,
}

pub fn ds_json(s: &SimpleModule, result: &DsResult) -> DsJson {
    DsJson {
        input: s.weight.coeffs().to_vec(),
        factors: result
            .factors
            .iter()
            .map(|f| DsFactorJson {
                weight: f.weight.coeffs().to_vec(),
                z: f.parity.as_u8(),
                removed_ball: f.removed_ball,
            })
            .collect(),
    }
}

impl TryFrom<DsJson> for DsResult {
    type Error = Error;

    fn try_from(j: DsJson) -> Result<DsResult> {
        let input = DominantWeight::new(j.input).map_err(|_| Error::Parse {
            field: "input",
            reason: "not non-decreasing".into(),
        })?;
        let factors = j
            .factors
            .into_iter()
            .map(|f| {
                let weight = DominantWeight::new(f.weight).map_err(|_| Error::Parse {
                    field: "weight",
                    reason: "not non-decreasing".into(),
                })?;
                if weight.rank() + 1 != input.rank() {
                    return Err(Error::Parse {
                        field: "weight",
                        reason: format!(
                            "factor rank {} is not one below input rank {}",
                            weight.rank(),
                            input.rank()
                        ),
                    });
                }
                Ok(DsFactor {
                    weight,
                    parity: Parity::try_from(f.z)?,
                    removed_ball: f.removed_ball,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DsResult { factors })
    }
}

/// A real cap object or the string `"virtual"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CapRefJson {
    Real(CapJson),
    Virtual(VirtualTag),
}

/// The literal string `"virtual"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VirtualTag {
    Virtual,
}

impl From<&CapRef> for CapRefJson {
    fn from(c: &CapRef) -> Self {
        match c {
            CapRef::Virtual => CapRefJson::Virtual(VirtualTag::Virtual),
            CapRef::Cap(cap) => CapRefJson::Real(CapJson::from(cap)),
        }
    }
}

impl From<CapRefJson> for CapRef {
    fn from(c: CapRefJson) -> Self {
        match c {
            CapRefJson::Virtual(_) => CapRef::Virtual,
            CapRefJson::Real(cap) => CapRef::Cap(Cap {
                left: cap.left,
                right: cap.right,
            }),
        }
    }
}

/// `{"even_cap": ..., "odd_cap": ..., "parent": index|null}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestNodeJson {
    pub even_cap: CapRefJson,
    pub odd_cap: CapJson,
    pub parent: Option<usize>,
}

/// `{"nodes": [...], "size": int, "factorial": string, "sdim": string}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestJson {
    pub nodes: Vec<ForestNodeJson>,
    pub size: usize,
    pub factorial: String,
    pub sdim: String,
}

pub fn forest_json(f: &RootedForest) -> ForestJson {
    ForestJson {
        nodes: f
            .nodes
            .iter()
            .zip(&f.parent)
            .map(|(node, parent)| ForestNodeJson {
                even_cap: CapRefJson::from(&node.even_cap),
                odd_cap: CapJson::from(&node.odd_cap),
                parent: *parent,
            })
            .collect(),
        size: f.size(),
        factorial: f.factorial().to_string(),
        sdim: f.heap_count_formula().to_string(),
    }
}

impl TryFrom<ForestJson> for RootedForest {
    type Error = Error;

    fn try_from(j: ForestJson) -> Result<RootedForest> {
        if j.nodes.len() != j.size {
            return Err(Error::Parse {
                field: "size",
                reason: format!("{} nodes but size {}", j.nodes.len(), j.size),
            });
        }
        let parent: Vec<Option<usize>> = j.nodes.iter().map(|n| n.parent).collect();
        if let Some(p) = parent.iter().flatten().find(|&&p| p >= j.nodes.len()) {
            return Err(Error::Parse {
                field: "parent",
                reason: format!("index {p} out of range"),
            });
        }
        let nodes: Vec<ForestNode> = j
            .nodes
            .into_iter()
            .map(|n| ForestNode {
                even_cap: CapRef::from(n.even_cap),
                odd_cap: Cap {
                    left: n.odd_cap.left,
                    right: n.odd_cap.right,
                },
            })
            .collect();
        let f = RootedForest { nodes, parent };
        // Parent links must be acyclic; walking up from every node proves it.
        for start in 0..f.size() {
            let mut hops = 0;
            let mut v = start;
            while let Some(p) = f.parent[v] {
                v = p;
                hops += 1;
                if hops > f.size() {
                    return Err(Error::Parse {
                        field: "parent",
                        reason: "parent links contain a cycle".into(),
                    });
                }
            }
        }
        let expected_factorial = f.factorial().to_string();
        if j.factorial != expected_factorial {
            return Err(Error::Parse {
                field: "factorial",
                reason: format!("expected {expected_factorial}, got {}", j.factorial),
            });
        }
        let expected_sdim = f.heap_count_formula().to_string();
        if j.sdim != expected_sdim {
            return Err(Error::Parse {
                field: "sdim",
                reason: format!("expected {expected_sdim}, got {}", j.sdim),
            });
        }
        Ok(f)
    }
}

/// `{"diagram": ..., "property": string, "expected": string, "got": string}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureJson {
    pub diagram: DiagramJson,
    pub property: String,
    pub expected: String,
    pub got: String,
}

/// `{"checked": int, "failures": [...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub checked: u64,
    pub failures: Vec<FailureJson>,
}

impl From<&VerifyReport> for ReportJson {
    fn from(r: &VerifyReport) -> Self {
        ReportJson {
            checked: r.checked,
            failures: r
                .failures
                .iter()
                .map(|f| FailureJson {
                    diagram: DiagramJson::from(&f.diagram),
                    property: f.property.clone(),
                    expected: f.expected.clone(),
                    got: f.got.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<ReportJson> for VerifyReport {
    type Error = Error;

    fn try_from(j: ReportJson) -> Result<VerifyReport> {
        let failures = j
            .failures
            .into_iter()
            .map(|f| {
                Ok(VerifyFailure {
                    diagram: WeightDiagram::try_from(f.diagram)?,
                    property: f.property,
                    expected: f.expected,
                    got: f.got,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VerifyReport {
            checked: j.checked,
            failures,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ds::ds;
    use crate::forest::forest;

    #[test]
    fn weight_roundtrip() {
        let w = DominantWeight::new(vec![0, 0, 1]).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(text, "[0,0,1]");
        let back: DominantWeight = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn weight_from_json_rejects_decreasing() {
        let err = serde_json::from_str::<DominantWeight>("[3,1]").unwrap_err();
        assert!(err.to_string().contains("coeffs"));
        assert!(err.to_string().contains("not non-decreasing"));
    }

    #[test]
    fn diagram_roundtrip_and_validation() {
        let d = WeightDiagram::new(vec![0, 1, 3]).unwrap();
        let j = DiagramJson::from(&d);
        let text = serde_json::to_string(&j).unwrap();
        let back: DiagramJson = serde_json::from_str(&text).unwrap();
        assert_eq!(WeightDiagram::try_from(back).unwrap(), d);

        let bad = DiagramJson {
            n: 2,
            positions: vec![0, 1, 3],
        };
        assert!(matches!(
            WeightDiagram::try_from(bad),
            Err(Error::Parse {
                field: "positions",
                ..
            })
        ));
    }

    #[test]
    fn caps_roundtrip() {
        let cd = caps(&WeightDiagram::new(vec![1, 2, 5, 8, 9, 10]).unwrap());
        let j = CapsJson::from(&cd);
        let text = serde_json::to_string(&j).unwrap();
        let back: CapsJson = serde_json::from_str(&text).unwrap();
        let cd2 = CapDiagram::try_from(back).unwrap();
        assert_eq!(cd2, cd);
    }

    #[test]
    fn caps_from_json_rejects_foreign_caps() {
        let j = CapsJson {
            caps: vec![CapJson { left: 5, right: 0 }],
            maximal: vec![0],
        };
        assert!(CapDiagram::try_from(j).is_err());
    }

    #[test]
    fn ds_roundtrip_of_rank9_example() {
        let s = SimpleModule::even(DominantWeight::new(vec![0, 0, 1, 3, 3, 6, 8, 8, 8]).unwrap());
        let result = ds(&s);
        let j = ds_json(&s, &result);
        let text = serde_json::to_string(&j).unwrap();
        let back: DsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        let parsed = DsResult::try_from(back).unwrap();
        assert_eq!(parsed, result);
    }

    #[test]
    fn forest_roundtrip_and_virtual_tag() {
        let d = DominantWeight::new(vec![-7, -7, -7, -5, -3, -3, -1, 1, 1, 1, 1])
            .unwrap()
            .diagram();
        let f = forest(&caps(&d)).unwrap();
        let j = forest_json(&f);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"virtual\""));
        assert!(text.contains("\"factorial\":\"48\""));
        assert!(text.contains("\"sdim\":\"15\""));
        let back: ForestJson = serde_json::from_str(&text).unwrap();
        let f2 = RootedForest::try_from(back).unwrap();
        assert_eq!(f2, f);
    }

    #[test]
    fn forest_from_json_rejects_cycles() {
        let node = ForestNodeJson {
            even_cap: CapRefJson::Virtual(VirtualTag::Virtual),
            odd_cap: CapJson { left: -1, right: 0 },
            parent: Some(1),
        };
        let j = ForestJson {
            nodes: vec![
                node.clone(),
                ForestNodeJson {
                    parent: Some(0),
                    ..node
                },
            ],
            size: 2,
            factorial: "1".into(),
            sdim: "1".into(),
        };
        assert!(matches!(
            RootedForest::try_from(j),
            Err(Error::Parse {
                field: "parent",
                ..
            })
        ));
    }

    #[test]
    fn report_roundtrip() {
        let report = crate::oracle::verify_corpus(2, 4, 1).unwrap();
        let j = ReportJson::from(&report);
        let text = serde_json::to_string(&j).unwrap();
        let back: ReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(VerifyReport::try_from(back).unwrap(), report);
    }

    #[test]
    fn arrows_json_shape() {
        let d = WeightDiagram::new(vec![0, 1, 3, 4, 5, 8]).unwrap();
        let j = arrows_json(&d);
        assert_eq!(j.arrows.len(), 4);
        let text = serde_json::to_string(&j).unwrap();
        let back: ArrowsJson = serde_json::from_str(&text).unwrap();
        let parsed = Vec::<Arrow>::try_from(back).unwrap();
        assert_eq!(parsed, arrows(&d));
    }
}
