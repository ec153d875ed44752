//! Instance files: one JSON object naming a calculus rule, its payload,
//! and optional probe points.
//!
//! ```json
//! {
//!   "id": "halfplanes_normal_intersection",
//!   "kind": "normal_intersection",
//!   "payload": {"omega1": {...}, "omega2": {...}},
//!   "probe_points": [["0", "0"]]
//! }
//! ```
//!
//! Rationals are strings `"p/q"` (or plain integers), `"+inf"` encodes
//! plus infinity where an extended value is expected.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use polycal::num::Q;
use polycal::{HPolyhedron, LinearMap, Multimap, PLFunction};

use crate::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    SupportIntersection,
    NormalIntersection,
    ConjugateSum,
    ConjugateChain,
    ConjugateMax,
    SubdiffSum,
    SubdiffChain,
    SubdiffMax,
    MarginalConjugate,
    MarginalSubdiff,
    OrderedChain,
    CodSum,
    CodChain,
    CodIntersect,
    Extremal,
    Biconjugate,
}

impl Kind {
    pub const ALL: [Kind; 16] = [
        Kind::SupportIntersection,
        Kind::NormalIntersection,
        Kind::ConjugateSum,
        Kind::ConjugateChain,
        Kind::ConjugateMax,
        Kind::SubdiffSum,
        Kind::SubdiffChain,
        Kind::SubdiffMax,
        Kind::MarginalConjugate,
        Kind::MarginalSubdiff,
        Kind::OrderedChain,
        Kind::CodSum,
        Kind::CodChain,
        Kind::CodIntersect,
        Kind::Extremal,
        Kind::Biconjugate,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::SupportIntersection => "support_intersection",
            Kind::NormalIntersection => "normal_intersection",
            Kind::ConjugateSum => "conjugate_sum",
            Kind::ConjugateChain => "conjugate_chain",
            Kind::ConjugateMax => "conjugate_max",
            Kind::SubdiffSum => "subdiff_sum",
            Kind::SubdiffChain => "subdiff_chain",
            Kind::SubdiffMax => "subdiff_max",
            Kind::MarginalConjugate => "marginal_conjugate",
            Kind::MarginalSubdiff => "marginal_subdiff",
            Kind::OrderedChain => "ordered_chain",
            Kind::CodSum => "cod_sum",
            Kind::CodChain => "cod_chain",
            Kind::CodIntersect => "cod_intersect",
            Kind::Extremal => "extremal",
            Kind::Biconjugate => "biconjugate",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Kind::ALL
            .iter()
            .find(|k| k.as_str() == s)
            .copied()
            .ok_or_else(|| format!("unknown kind `{s}`"))
    }
}

/// One runnable instance: kind, payload, probes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub kind: Kind,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe_points: Option<Value>,
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Instance> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Instance> {
        let text = std::fs::read_to_string(path)?;
        Instance::from_json(&text)
    }

    pub fn display_id(&self) -> String {
        self.id.clone().unwrap_or_else(|| "<unnamed>".to_string())
    }

    /// Typed view of the payload, validated against the kind's schema.
    pub fn parse_payload(&self) -> Result<Payload> {
        let from = |v: Value| -> Result<Payload> {
            let wrap = |e: serde_json::Error| {
                HarnessError::Schema(format!("payload for {}: {e}", self.kind.as_str()))
            };
            Ok(match self.kind {
                Kind::SupportIntersection | Kind::NormalIntersection | Kind::Extremal => {
                    Payload::Sets(serde_json::from_value(v).map_err(wrap)?)
                }
                Kind::ConjugateSum | Kind::ConjugateMax | Kind::SubdiffSum | Kind::SubdiffMax => {
                    Payload::Functions(serde_json::from_value(v).map_err(wrap)?)
                }
                Kind::ConjugateChain | Kind::SubdiffChain => {
                    Payload::Composition(serde_json::from_value(v).map_err(wrap)?)
                }
                Kind::MarginalConjugate | Kind::MarginalSubdiff => {
                    Payload::Marginal(serde_json::from_value(v).map_err(wrap)?)
                }
                Kind::OrderedChain => Payload::Ordered(serde_json::from_value(v).map_err(wrap)?),
                Kind::CodSum | Kind::CodIntersect => {
                    Payload::MapPair(serde_json::from_value(v).map_err(wrap)?)
                }
                Kind::CodChain => Payload::MapChain(serde_json::from_value(v).map_err(wrap)?),
                Kind::Biconjugate => Payload::Function(serde_json::from_value(v).map_err(wrap)?),
            })
        };
        from(self.payload.clone())
    }

    pub fn parse_probes<T: serde::de::DeserializeOwned>(&self) -> Result<Vec<T>> {
        match &self.probe_points {
            None => Ok(Vec::new()),
            Some(v) => serde_json::from_value(v.clone())
                .map_err(|e| HarnessError::Schema(format!("probe_points: {e}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetsPayload {
    pub omega1: HPolyhedron,
    pub omega2: HPolyhedron,
    /// Expected extremality for `extremal` instances (generator-known).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_extremal: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionsPayload {
    pub f: PLFunction,
    pub g: PLFunction,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompositionPayload {
    pub g: PLFunction,
    pub a: LinearMap,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MarginalPayload {
    pub phi: PLFunction,
    #[serde(rename = "F")]
    pub constraint: Multimap,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderedPayload {
    #[serde(rename = "Yplus")]
    pub yplus: HPolyhedron,
    pub f: LinearMap,
    pub phi: PLFunction,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapPairPayload {
    pub f1: Multimap,
    pub f2: Multimap,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapChainPayload {
    pub f: Multimap,
    pub g: Multimap,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionPayload {
    pub f: PLFunction,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Sets(SetsPayload),
    Functions(FunctionsPayload),
    Composition(CompositionPayload),
    Marginal(MarginalPayload),
    Ordered(OrderedPayload),
    MapPair(MapPairPayload),
    MapChain(MapChainPayload),
    Function(FunctionPayload),
}

/// Probe carrying a base point and a solution point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct XYProbe {
    pub xbar: Vec<Q>,
    pub ybar: Vec<Q>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderedProbe {
    pub xbar: Vec<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ystar: Option<Vec<Q>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodSumProbe {
    pub xbar: Vec<Q>,
    pub ybar: Vec<Q>,
    pub y1bar: Vec<Q>,
    pub y2bar: Vec<Q>,
    pub ystar: Vec<Q>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodChainProbe {
    pub xbar: Vec<Q>,
    pub ybar: Vec<Q>,
    pub zbar: Vec<Q>,
    pub zstar: Vec<Q>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodIntersectProbe {
    pub xbar: Vec<Q>,
    pub ybar: Vec<Q>,
    pub ystar: Vec<Q>,
}
