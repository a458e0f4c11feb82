//! Numerical tolerances used by matching, classification and the engine.
//!
//! The underlying mathematics is exact; every threshold below is an artifact
//! of double-precision evaluation. Zeros produced by algebraic cancellation
//! land many orders of magnitude below these thresholds, while genuine small
//! quantities of well-conditioned inputs stay above them.

/// Absolute tolerance for matching two interior points of the disk
/// (zero lookup, jet base agreement).
pub const EPS_MATCH: f64 = 1e-9;

/// Relative threshold for declaring a jet coefficient zero, scaled by the
/// largest coefficient magnitude (and never below the absolute scale 1).
pub const VANISH_TOL: f64 = 1e-9;

/// Angular tolerance for matching two atoms on the unit circle.
pub const ATOM_ANGLE_TOL: f64 = 1e-9;

/// Relative tolerance when comparing atom masses in domination checks.
pub const MASS_TOL: f64 = 1e-9;

/// How far a purported unimodular constant may stray from the circle.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// A fixed point is accepted as lying on the circle when `||z| - 1|` is
/// below this bound.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Slack allowed past the closed disk for evaluation arguments.
pub const EVAL_BOUNDARY_SLACK: f64 = 1e-12;

/// Hard cap on the jet order during escalation; exceeding it yields an
/// explicit inconclusive error, never a silent verdict.
pub const JET_ORDER_CAP: u32 = 64;

/// Tunable tolerance bundle. [`Tolerances::default`] reproduces the module
/// constants; the CLI exposes scaled profiles.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub eps_match: f64,
    pub vanish: f64,
    pub atom_angle: f64,
    pub mass: f64,
    pub jet_order_cap: u32,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_match: EPS_MATCH,
            vanish: VANISH_TOL,
            atom_angle: ATOM_ANGLE_TOL,
            mass: MASS_TOL,
            jet_order_cap: JET_ORDER_CAP,
        }
    }
}

impl Tolerances {
    /// Matching tolerances scaled by `factor` (< 1 tightens, > 1 loosens).
    /// The jet order cap is left untouched.
    pub fn scaled(factor: f64) -> Self {
        let d = Tolerances::default();
        Tolerances {
            eps_match: d.eps_match * factor,
            vanish: d.vanish * factor,
            atom_angle: d.atom_angle * factor,
            mass: d.mass * factor,
            jet_order_cap: d.jet_order_cap,
        }
    }
}

/// Distance between two angles modulo `2π`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let d = (a - b).rem_euclid(tau);
    d.min(tau - d)
}

/// Normalizes an angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = a.rem_euclid(tau);
    if r == tau {
        0.0
    } else {
        r
    }
}
