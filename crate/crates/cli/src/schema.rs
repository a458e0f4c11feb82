//! The document schema: JSON structures for problems, families, measures
//! and maps, with conversions to and from the core types.
//!
//! Conventions (see docs/schema.md for the full grammar):
//! - points on the unit circle (atoms, unimodular constants) are stored as
//!   angles in radians, so unimodularity holds by construction;
//! - interior points are stored as `re`/`im` pairs;
//! - serialization is canonical: zeros sorted by (re, im), atoms sorted by
//!   angle, angles normalized into `[0, 2π)`.

use beurling::inner::{AtomicMeasure, BlaschkeProduct, InnerFunction, SelfMap};
use beurling::moebius::Moebius;
use beurling::tolerance::normalize_angle;
use beurling::{unit, Complex, Mode};
use serde::{Deserialize, Serialize};

/// Input error with a field path, mapped to exit code 3.
#[derive(Debug)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for SchemaError {}

fn err(path: impl Into<String>, message: impl std::fmt::Display) -> SchemaError {
    SchemaError {
        path: path.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for PointDoc {
    fn from(z: Complex) -> Self {
        PointDoc { re: z.re, im: z.im }
    }
}

impl From<PointDoc> for Complex {
    fn from(p: PointDoc) -> Self {
        Complex::new(p.re, p.im)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ZeroDoc {
    pub re: f64,
    pub im: f64,
    pub mult: u32,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub angle: f64,
    pub weight: f64,
}

/// An inner function: unimodular constant, Blaschke zeros, singular atoms.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct InnerDoc {
    #[serde(default)]
    pub gamma_angle: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zeros: Vec<ZeroDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<AtomDoc>,
}

impl InnerDoc {
    pub fn to_inner(&self, path: &str) -> Result<InnerFunction, SchemaError> {
        let factors: Vec<(Complex, u32)> = self
            .zeros
            .iter()
            .map(|z| (Complex::new(z.re, z.im), z.mult))
            .collect();
        for (i, (z, _)) in factors.iter().enumerate() {
            if z.norm() >= 1.0 {
                return Err(err(
                    format!("{path}.zeros[{i}]"),
                    format!("|a| = {} must be strictly less than 1", z.norm()),
                ));
            }
        }
        let blaschke = BlaschkeProduct::new(unit(self.gamma_angle), factors)
            .map_err(|e| err(format!("{path}.zeros"), e))?;
        let measure = AtomicMeasure::new(self.atoms.iter().map(|a| (a.angle, a.weight)).collect())
            .map_err(|e| err(format!("{path}.atoms"), e))?;
        InnerFunction::new(blaschke, measure, Complex::ONE)
            .map_err(|e| err(path.to_string(), e))
    }

    pub fn from_inner(f: &InnerFunction) -> InnerDoc {
        let combined = f.blaschke().gamma() * f.alpha();
        InnerDoc {
            gamma_angle: normalize_angle(combined.arg()),
            zeros: f
                .blaschke()
                .factors()
                .iter()
                .map(|(z, m)| ZeroDoc {
                    re: z.re,
                    im: z.im,
                    mult: *m,
                })
                .collect(),
            atoms: f
                .measure()
                .atoms()
                .iter()
                .map(|(angle, weight)| AtomDoc {
                    angle: *angle,
                    weight: *weight,
                })
                .collect(),
        }
    }
}

/// A disk automorphism in normal form.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MobiusDoc {
    #[serde(default)]
    pub gamma_angle: f64,
    pub a: PointDoc,
}

impl MobiusDoc {
    pub fn to_moebius(&self, path: &str) -> Result<Moebius, SchemaError> {
        Moebius::new(unit(self.gamma_angle), self.a.into()).map_err(|e| err(path.to_string(), e))
    }

    pub fn from_moebius(m: &Moebius) -> MobiusDoc {
        MobiusDoc {
            gamma_angle: normalize_angle(m.gamma().arg()),
            a: m.a().into(),
        }
    }
}

/// Structured self-map tree. `chain` composes outermost-first; `product`
/// multiplies pointwise.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MapDoc {
    Identity,
    Constant { re: f64, im: f64 },
    Mobius { gamma_angle: f64, a: PointDoc },
    Inner(InnerDoc),
    Scale { re: f64, im: f64 },
    Chain { maps: Vec<MapDoc> },
    Product { factors: Vec<MapDoc> },
}

impl MapDoc {
    pub fn to_selfmap(&self, path: &str) -> Result<SelfMap, SchemaError> {
        let map = match self {
            MapDoc::Identity => SelfMap::Identity,
            MapDoc::Constant { re, im } => SelfMap::Constant(Complex::new(*re, *im)),
            MapDoc::Mobius { gamma_angle, a } => SelfMap::Mob(
                MobiusDoc {
                    gamma_angle: *gamma_angle,
                    a: *a,
                }
                .to_moebius(path)?,
            ),
            MapDoc::Inner(doc) => SelfMap::Inner(doc.to_inner(path)?),
            MapDoc::Scale { re, im } => SelfMap::Scale(Complex::new(*re, *im)),
            MapDoc::Chain { maps } => {
                let converted = maps
                    .iter()
                    .enumerate()
                    .map(|(i, m)| m.to_selfmap(&format!("{path}.maps[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                SelfMap::Chain(converted)
            }
            MapDoc::Product { factors } => {
                let converted = factors
                    .iter()
                    .enumerate()
                    .map(|(i, m)| m.to_selfmap(&format!("{path}.factors[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                SelfMap::Product(converted)
            }
        };
        map.validate().map_err(|e| err(path.to_string(), e))?;
        Ok(map)
    }

    pub fn from_selfmap(map: &SelfMap) -> MapDoc {
        match map {
            SelfMap::Identity => MapDoc::Identity,
            SelfMap::Constant(c) => MapDoc::Constant { re: c.re, im: c.im },
            SelfMap::Mob(m) => MapDoc::Mobius {
                gamma_angle: normalize_angle(m.gamma().arg()),
                a: m.a().into(),
            },
            SelfMap::Inner(f) => MapDoc::Inner(InnerDoc::from_inner(f)),
            SelfMap::Scale(s) => MapDoc::Scale { re: s.re, im: s.im },
            SelfMap::Chain(maps) => MapDoc::Chain {
                maps: maps.iter().map(MapDoc::from_selfmap).collect(),
            },
            SelfMap::Product(factors) => MapDoc::Product {
                factors: factors.iter().map(MapDoc::from_selfmap).collect(),
            },
        }
    }
}

/// Grid overrides carried by a problem file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct GridDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angular_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exclusion_radius: Option<f64>,
}

/// A containment problem file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub theta1: InnerDoc,
    pub phi: MapDoc,
    pub theta2: InnerDoc,
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridDoc>,
}

fn default_mode() -> String {
    "auto".into()
}

impl ProblemDoc {
    pub fn to_problem(&self) -> Result<beurling::Problem, SchemaError> {
        let mode: Mode = self
            .mode
            .parse()
            .map_err(|e| err("mode", e))?;
        Ok(beurling::Problem {
            theta1: self.theta1.to_inner("theta1")?,
            phi: self.phi.to_selfmap("phi")?,
            theta2: self.theta2.to_inner("theta2")?,
            mode,
        })
    }

    /// Canonical serialization of the parsed problem (normalized angles,
    /// sorted zeros and atoms).
    pub fn normalized(&self) -> Result<ProblemDoc, SchemaError> {
        let p = self.to_problem()?;
        Ok(ProblemDoc {
            theta1: InnerDoc::from_inner(&p.theta1),
            phi: MapDoc::from_selfmap(&p.phi),
            theta2: InnerDoc::from_inner(&p.theta2),
            mode: p.mode.as_str().to_string(),
            grid: self.grid.clone(),
        })
    }
}

/// A family-generation or rigidity-scan request.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyDoc {
    OneZero {
        a: PointDoc,
        mult: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        psi: Option<MapDoc>,
    },
    TwoZeroEqual {
        a: PointDoc,
        b: PointDoc,
        mult: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        g: Option<MapDoc>,
        branch: String,
    },
    TwoZeroUnequal {
        a: PointDoc,
        b: PointDoc,
        m: u32,
        n: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        g: Option<MapDoc>,
        branch: String,
    },
    FixAllToAj {
        zeros: Vec<ZeroDoc>,
        target: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        h: Option<MapDoc>,
    },
    MaxMultSelfmap {
        #[serde(default)]
        gamma_angle: f64,
        zeros: Vec<ZeroDoc>,
    },
    Rigidity {
        zeros: Vec<ZeroDoc>,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        seed: u64,
    },
}

fn default_trials() -> usize {
    100
}

/// A pushforward request: an atomic measure and an automorphism.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PushforwardDoc {
    pub measure: MeasureDoc,
    pub map: MobiusDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MeasureDoc {
    pub atoms: Vec<AtomDoc>,
}

impl MeasureDoc {
    pub fn to_measure(&self, path: &str) -> Result<AtomicMeasure, SchemaError> {
        AtomicMeasure::new(self.atoms.iter().map(|a| (a.angle, a.weight)).collect())
            .map_err(|e| err(path.to_string(), e))
    }

    pub fn from_measure(mu: &AtomicMeasure) -> MeasureDoc {
        MeasureDoc {
            atoms: mu
                .atoms()
                .iter()
                .map(|(angle, weight)| AtomDoc {
                    angle: *angle,
                    weight: *weight,
                })
                .collect(),
        }
    }
}

/// A classification request.
pub type ClassifyDoc = MobiusDoc;

/// A cycle-map request.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CycleDoc {
    pub points: Vec<PointDoc>,
}

pub fn zeros_to_factors(zeros: &[ZeroDoc]) -> Vec<(Complex, u32)> {
    zeros
        .iter()
        .map(|z| (Complex::new(z.re, z.im), z.mult))
        .collect()
}
