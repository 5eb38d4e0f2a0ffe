//! JSON wire formats.
//!
//! Complex numbers are `[re, im]` pairs, octonions are arrays of 8 complex
//! numbers, Albert elements are `{"alpha": [c; 3], "a": [oct; 3]}` and `W`
//! elements are `{"b": oct, "c": oct}`.

use excdom_core::albert::AlbertElement;
use excdom_core::cayley::{AlgebraSignature, Octonion, ScalarField};
use excdom_core::compactify::FreudenthalPoint;
use excdom_core::domains::{Confidence, DomainVerdict, Location};
use excdom_core::type_v::WElement;
use excdom_core::C64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub type Complex = [f64; 2];

pub fn complex(z: C64) -> Complex {
    [z.re, z.im]
}

pub fn to_c64(z: Complex) -> C64 {
    C64::new(z[0], z[1])
}

pub fn octonion(o: &Octonion) -> [Complex; 8] {
    o.0.map(complex)
}

pub fn to_octonion(o: [Complex; 8]) -> Octonion {
    Octonion(o.map(to_c64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlbertJson {
    pub alpha: [Complex; 3],
    pub a: [[Complex; 8]; 3],
}

impl From<&AlbertElement> for AlbertJson {
    fn from(x: &AlbertElement) -> Self {
        Self { alpha: x.alpha.map(complex), a: x.a.map(|o| octonion(&o)) }
    }
}

impl From<&AlbertJson> for AlbertElement {
    fn from(x: &AlbertJson) -> Self {
        AlbertElement { alpha: x.alpha.map(to_c64), a: x.a.map(to_octonion) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WJson {
    pub b: [Complex; 8],
    pub c: [Complex; 8],
}

impl From<&WElement> for WJson {
    fn from(x: &WElement) -> Self {
        Self { b: octonion(&x.b), c: octonion(&x.c) }
    }
}

impl From<&WJson> for WElement {
    fn from(x: &WJson) -> Self {
        WElement::new(to_octonion(x.b), to_octonion(x.c))
    }
}

/// `{"field": "R" | "C", "mu": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureJson {
    pub field: String,
    pub mu: Vec<f64>,
}

impl From<&AlgebraSignature> for SignatureJson {
    fn from(s: &AlgebraSignature) -> Self {
        let field = match s.field() {
            ScalarField::Real => "R",
            ScalarField::Complex => "C",
        };
        Self { field: field.into(), mu: s.mu().to_vec() }
    }
}

impl TryFrom<&SignatureJson> for AlgebraSignature {
    type Error = anyhow::Error;

    fn try_from(s: &SignatureJson) -> anyhow::Result<Self> {
        let field = match s.field.as_str() {
            "R" => ScalarField::Real,
            "C" => ScalarField::Complex,
            other => anyhow::bail!("unknown scalar field {other:?}, expected \"R\" or \"C\""),
        };
        Ok(AlgebraSignature::new(field, &s.mu)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreudenthalJson {
    pub lambda: Complex,
    pub x: AlbertJson,
    pub y: AlbertJson,
    pub mu: Complex,
}

impl From<&FreudenthalPoint> for FreudenthalJson {
    fn from(p: &FreudenthalPoint) -> Self {
        Self { lambda: complex(p.lambda), x: (&p.x).into(), y: (&p.y).into(), mu: complex(p.mu) }
    }
}

impl From<&FreudenthalJson> for FreudenthalPoint {
    fn from(p: &FreudenthalJson) -> Self {
        FreudenthalPoint { lambda: to_c64(p.lambda), x: (&p.x).into(), y: (&p.y).into(), mu: to_c64(p.mu) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub location: String,
    pub stratum: Option<usize>,
    pub f: Vec<f64>,
    pub roots: Vec<f64>,
    pub margin: Option<f64>,
    pub confidence: String,
}

impl From<&DomainVerdict> for VerdictJson {
    fn from(v: &DomainVerdict) -> Self {
        let (location, stratum) = match v.location {
            Location::Interior => ("interior", None),
            Location::Boundary(k) => ("boundary", Some(k)),
            Location::Exterior => ("exterior", None),
        };
        let confidence = match v.confidence {
            Confidence::High => "high",
            Confidence::Low => "low",
        };
        Self {
            location: location.into(),
            stratum,
            f: v.f.clone(),
            roots: v.roots.clone(),
            margin: v.margin,
            confidence: confidence.into(),
        }
    }
}

/// An element of either system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Element {
    V(AlbertElement),
    W(WElement),
}

impl Element {
    pub fn dim(&self) -> usize {
        match self {
            Element::V(_) => excdom_core::albert::DIM,
            Element::W(_) => excdom_core::type_v::DIM,
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Element::V(x) => serde_json::to_value(AlbertJson::from(x)),
            Element::W(x) => serde_json::to_value(WJson::from(x)),
        }
        .expect("plain data serializes")
    }

    /// Reads an element, telling the two formats apart by their keys.
    pub fn from_value(v: Value) -> anyhow::Result<Self> {
        let is_w = v.get("b").is_some() || v.get("c").is_some();
        Ok(if is_w {
            let w: WJson = serde_json::from_value(v)?;
            Element::W((&w).into())
        } else {
            let a: AlbertJson = serde_json::from_value(v)?;
            Element::V((&a).into())
        })
    }
}
