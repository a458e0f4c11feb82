//! Output documents and human-readable reports.

use beurling::inner::{Check, Multiplicity, Verdict};
use beurling::moebius::{AutomorphismClass, FixedPointLocation};
use beurling::oracle::{CrossValidation, OracleReport};
use serde::Serialize;
use serde_json::{json, Value};

use crate::schema::PointDoc;

pub fn multiplicity_value(m: &Multiplicity) -> Value {
    match m {
        Multiplicity::Finite(k) => json!(k),
        Multiplicity::Infinite => json!("infinite"),
    }
}

pub fn check_value(check: &Check) -> Value {
    match check {
        Check::ZeroMultiplicity {
            zero,
            required,
            observed,
            ok,
        } => json!({
            "type": "zero_multiplicity",
            "zero": PointDoc::from(*zero),
            "required": required,
            "observed": multiplicity_value(observed),
            "ok": ok,
            "margin": check.margin(),
        }),
        Check::AtomMass {
            angle,
            required,
            available,
            ok,
        } => json!({
            "type": "atom_mass",
            "angle": angle,
            "required": required,
            "available": available,
            "ok": ok,
            "margin": check.margin(),
        }),
    }
}

pub fn verdict_value(verdict: &Verdict) -> Value {
    json!({
        "contained": verdict.contained(),
        "boundary_case": verdict.boundary_case(),
        "checks": verdict.checks().iter().map(check_value).collect::<Vec<_>>(),
        "notes": verdict.notes(),
    })
}

pub fn oracle_value(report: &OracleReport, cross: Option<&CrossValidation>) -> Value {
    let sup = if report.sup_estimate.is_finite() {
        json!(report.sup_estimate)
    } else {
        json!("infinite")
    };
    let mut v = json!({
        "sup_estimate": sup,
        "log_sup_estimate": report.log_sup_estimate,
        "argmax": PointDoc::from(report.argmax),
        "samples_used": report.samples_used,
        "flag": report.flag.as_str(),
    });
    if let Some(cv) = cross {
        v["cross_validation"] = json!(cv.outcome.as_str());
        if let Some(refined) = &cv.refined {
            v["refined"] = oracle_value(refined, None);
        }
    }
    v
}

pub fn classification_value(class: &AutomorphismClass) -> Value {
    let fixed = |p: &beurling::moebius::FixedPoint| {
        json!({
            "re": p.point.re,
            "im": p.point.im,
            "location": match p.location {
                FixedPointLocation::Interior => "interior",
                FixedPointLocation::Boundary => "boundary",
            },
        })
    };
    match class {
        AutomorphismClass::Identity => json!({ "tag": "identity", "fixed_points": [] }),
        AutomorphismClass::Elliptic { fixed: f } => {
            json!({ "tag": "elliptic", "fixed_points": [fixed(f)] })
        }
        AutomorphismClass::Parabolic { fixed: f } => {
            json!({ "tag": "parabolic", "fixed_points": [fixed(f)] })
        }
        AutomorphismClass::Hyperbolic { fixed: fs } => {
            json!({ "tag": "hyperbolic", "fixed_points": fs.iter().map(fixed).collect::<Vec<_>>() })
        }
    }
}

/// Emits either the JSON document or a human-readable rendering of it.
pub fn emit(document: &Value, human: bool) {
    if human {
        render(document, 0);
    } else {
        println!("{}", serde_json::to_string_pretty(document).expect("serializable"));
    }
}

fn render(value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}{k}:");
                        render(v, indent + 1);
                    }
                    _ => println!("{pad}{k}: {v}"),
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                println!("{pad}(none)");
            }
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}-");
                        render(item, indent + 1);
                    }
                    _ => println!("{pad}- {item}"),
                }
            }
        }
        other => println!("{pad}{other}"),
    }
}

/// Serializes any `Serialize` into a `Value`, for document output.
pub fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}
