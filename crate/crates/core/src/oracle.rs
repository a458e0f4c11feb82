//! Numerical cross-validation of containment verdicts.
//!
//! Containment of `C_φ(θ₁H^p)` in `θ₂H^p` is equivalent to the quotient
//! `(θ₁∘φ)/θ₂` being bounded on the disk (with supremum at most 1), so a
//! grid estimate of `sup |θ₁(φ(z))| / |θ₂(z)|` either corroborates a
//! verdict or exposes a bug. All moduli are evaluated in log space: the
//! Poisson-kernel form of the singular factors keeps the quotient finite
//! arbitrarily close to boundary atoms where both sides underflow.
//!
//! The oracle never overrides the engine. A contradiction (engine says
//! contained, grid blows up) is a test failure, not a verdict flip; for the
//! cases no theorem characterizes it is the only tool available.

use crate::error::Error;
use crate::inner::{AtomicMeasure, Check, Evaluate, InnerFunction, SelfMap, Verdict};
use crate::moebius::Moebius;
use crate::tolerance::normalize_angle;
use crate::Complex;

/// Sup estimates up to `1 + EPS_BOUND` count as consistent with boundedness.
pub const EPS_BOUND: f64 = 1e-6;

/// Sup estimates above this threshold count as detected blow-up.
pub const BLOWUP_THRESHOLD: f64 = 10.0;

/// Successive radial values closer than this are considered converged.
pub const RADIAL_CONV_TOL: f64 = 1e-6;

const DEFAULT_RADII: [f64; 4] = [0.9, 0.99, 0.999, 0.9999];
const DEFAULT_ANGULAR_COUNT: usize = 2048;
const DEFAULT_EXCLUSION_RADIUS: f64 = 1e-3;

/// Density multiplier of the local sub-grids around refinement targets.
const REFINE_FACTOR: usize = 4;
/// Half-width of a local sub-grid, in base angular cells.
const REFINE_WINDOW_CELLS: i64 = 16;
/// Points per ring around an interior witness.
const RING_ANGLES: usize = 512;
/// Ring distances around an interior witness, in exclusion radii.
const RING_SCALES: [f64; 3] = [1.5, 3.0, 8.0];
/// Extra radii pushed toward the boundary near an atom witness.
const ATOM_PUSH_RADII: [f64; 3] = [1.0 - 1e-5, 1.0 - 1e-6, 1.0 - 1e-7];

/// Sampling plan for the sup estimate: concentric circles, denser local
/// sub-grids around the zeros and atoms of the denominator, and optional
/// witness-directed refinement.
#[derive(Debug, Clone)]
pub struct GridSpec {
    /// Radii of the sampling circles, strictly increasing, all below 1.
    pub radii: Vec<f64>,
    /// Number of equally spaced angles per circle.
    pub angular_count: usize,
    /// Radius of the disks around denominator zeros that are skipped.
    pub exclusion_radius: f64,
    /// Boundary directions (angles) that get local refinement, beyond the
    /// automatic targets derived from the denominator.
    pub witness_angles: Vec<f64>,
    /// Interior points that get surrounding sample rings.
    pub witness_points: Vec<Complex>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            radii: DEFAULT_RADII.to_vec(),
            angular_count: DEFAULT_ANGULAR_COUNT,
            exclusion_radius: DEFAULT_EXCLUSION_RADIUS,
            witness_angles: vec![],
            witness_points: vec![],
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), Error> {
        if self.radii.is_empty() {
            return Err(Error::invalid("grid needs at least one radius"));
        }
        if self
            .radii
            .iter()
            .any(|r| !r.is_finite() || *r <= 0.0 || *r >= 1.0)
        {
            return Err(Error::invalid("grid radii must lie in (0, 1)"));
        }
        if self.radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("grid radii must be strictly increasing"));
        }
        if self.angular_count < 8 {
            return Err(Error::invalid("grid needs at least 8 angles per circle"));
        }
        if !self.exclusion_radius.is_finite() || self.exclusion_radius <= 0.0 {
            return Err(Error::invalid("exclusion radius must be positive"));
        }
        Ok(())
    }

    /// Copy of this grid with witness-directed refinement appended. The
    /// exclusion radius shrinks tenfold so the rings close in on interior
    /// poles; a bounded quotient stays tame there, an unbounded one grows
    /// another order of magnitude.
    pub fn with_witnesses(&self, angles: Vec<f64>, points: Vec<Complex>) -> GridSpec {
        let mut g = self.clone();
        g.exclusion_radius /= 10.0;
        g.witness_angles.extend(angles);
        g.witness_points.extend(points);
        g
    }

    /// All sample points. `target_angles` are the automatically refined
    /// boundary directions of the problem's denominator.
    fn points(&self, target_angles: &[f64]) -> Vec<Complex> {
        let mut pts = Vec::new();
        let step = std::f64::consts::TAU / self.angular_count as f64;
        for &r in &self.radii {
            for k in 0..self.angular_count {
                pts.push(Complex::from_polar(r, k as f64 * step));
            }
        }
        // Local sub-grids at REFINE_FACTOR times the base density.
        let fine = step / REFINE_FACTOR as f64;
        let window = REFINE_WINDOW_CELLS * REFINE_FACTOR as i64;
        for angle in target_angles.iter().chain(&self.witness_angles) {
            for &r in &self.radii {
                for j in -window..=window {
                    pts.push(Complex::from_polar(r, angle + j as f64 * fine));
                }
            }
        }
        // Radial push toward the boundary around witness angles.
        for angle in &self.witness_angles {
            for &r in &ATOM_PUSH_RADII {
                for j in -(2 * REFINE_FACTOR as i64)..=(2 * REFINE_FACTOR as i64) {
                    pts.push(Complex::from_polar(r, angle + j as f64 * fine));
                }
            }
        }
        // Rings around interior witnesses, just outside the exclusion disk.
        for w in &self.witness_points {
            for scale in RING_SCALES {
                let rho = self.exclusion_radius * scale;
                for k in 0..RING_ANGLES {
                    let z = w + Complex::from_polar(rho, k as f64 * std::f64::consts::TAU / RING_ANGLES as f64);
                    if z.norm() < 1.0 - 1e-9 {
                        pts.push(z);
                    }
                }
            }
        }
        pts
    }
}

/// How the sup estimate relates to the boundedness thresholds. Exactly one
/// flag applies to a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleFlag {
    /// `sup ≤ 1 + EPS_BOUND`: consistent with containment.
    BoundedConsistent,
    /// `sup > BLOWUP_THRESHOLD`: the quotient is unbounded on the evidence.
    BlowupDetected,
    /// In between, or no usable sample points.
    Inconclusive,
}

impl OracleFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            OracleFlag::BoundedConsistent => "bounded-consistent",
            OracleFlag::BlowupDetected => "blowup-detected",
            OracleFlag::Inconclusive => "inconclusive",
        }
    }
}

/// Result of a sup estimate over a grid. `sup_estimate` can overflow to
/// infinity on strong blow-ups; `log_sup_estimate` is always finite except
/// when the quotient vanished on every sample.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub sup_estimate: f64,
    pub log_sup_estimate: f64,
    pub argmax: Complex,
    pub samples_used: usize,
    pub flag: OracleFlag,
}

/// Estimates `sup |θ₁(φ(z))| / |θ₂(z)|` over the grid, skipping the
/// exclusion disks around the zeros of `θ₂`.
pub fn sup_quotient(
    theta1: &InnerFunction,
    phi: &SelfMap,
    theta2: &InnerFunction,
    grid: &GridSpec,
) -> Result<OracleReport, Error> {
    grid.validate()?;
    // Automatic refinement targets: the denominator's atoms and the
    // boundary directions of its zeros.
    let mut targets: Vec<f64> = theta2.measure().atoms().iter().map(|(t, _)| *t).collect();
    for (zero, _) in theta2.blaschke().factors() {
        if zero.norm() > 1e-12 {
            targets.push(normalize_angle(zero.arg()));
        }
    }

    let denom_zeros: Vec<Complex> = theta2
        .blaschke()
        .factors()
        .iter()
        .map(|(z, _)| *z)
        .collect();

    let mut sup_log = f64::NEG_INFINITY;
    let mut argmax = Complex::ZERO;
    let mut used = 0usize;
    for z in grid.points(&targets) {
        if denom_zeros
            .iter()
            .any(|w| (z - w).norm() < grid.exclusion_radius)
        {
            continue;
        }
        let w = phi.eval(z)?;
        let log_q = theta1.log_abs(w) - theta2.log_abs(z);
        if log_q.is_nan() {
            continue;
        }
        used += 1;
        if log_q > sup_log {
            sup_log = log_q;
            argmax = z;
        }
    }

    let sup_estimate = sup_log.exp();
    let flag = if used == 0 {
        OracleFlag::Inconclusive
    } else if sup_estimate <= 1.0 + EPS_BOUND {
        OracleFlag::BoundedConsistent
    } else if sup_estimate > BLOWUP_THRESHOLD {
        OracleFlag::BlowupDetected
    } else {
        OracleFlag::Inconclusive
    };
    Ok(OracleReport {
        sup_estimate,
        log_sup_estimate: sup_log,
        argmax,
        samples_used: used,
        flag,
    })
}

/// Estimate of a radial limit by sampling `r_j = 1 − 2^{−j}`.
#[derive(Debug, Clone, Copy)]
pub struct RadialLimit {
    pub estimate: Complex,
    pub converged: bool,
    /// Number of radii evaluated.
    pub samples: u32,
}

/// Approaches the boundary point `t` along its radius, stopping once two
/// successive values agree to [`RADIAL_CONV_TOL`].
pub fn radial_limit_estimate(
    f: &impl Evaluate,
    t: Complex,
    depth: u32,
) -> Result<RadialLimit, Error> {
    if depth < 4 {
        return Err(Error::invalid("radial estimates need depth at least 4"));
    }
    if t.norm() == 0.0 || !t.is_finite() {
        return Err(Error::invalid("boundary direction must be finite and nonzero"));
    }
    let dir = t / t.norm();
    let mut prev: Option<Complex> = None;
    let mut samples = 0;
    for j in 4..=depth {
        let r = 1.0 - 2.0_f64.powi(-(j as i32));
        let v = f.eval_at(dir * r)?;
        samples += 1;
        if let Some(p) = prev {
            if (v - p).norm() < RADIAL_CONV_TOL {
                return Ok(RadialLimit {
                    estimate: v,
                    converged: true,
                    samples,
                });
            }
        }
        prev = Some(v);
    }
    Ok(RadialLimit {
        estimate: prev.expect("depth >= 4 evaluates at least once"),
        converged: false,
        samples,
    })
}

/// Maximum relative deviation between `|S_μ∘φ|` and `|S_ν|` over a spread
/// of interior sample points. For `ν` the pushforward of `μ` under `φ` the
/// two moduli agree identically.
pub fn modulus_identity_check(
    mu: &AtomicMeasure,
    phi: &Moebius,
    nu: &AtomicMeasure,
    samples: usize,
) -> f64 {
    // Low-discrepancy spiral: deterministic, well spread, boundary-shy.
    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    let mut worst = 0.0_f64;
    for k in 0..samples {
        let r = 0.95 * (((k as f64) + 0.5) / samples as f64).sqrt();
        let z = Complex::from_polar(r, golden * k as f64);
        let w = phi.eval(z).expect("interior point stays in the disk");
        let diff = mu.singular_log_abs(w) - nu.singular_log_abs(z);
        worst = worst.max((diff.exp() - 1.0).abs());
    }
    worst
}

/// Agreement between a symbolic verdict and an oracle report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    /// Contained verdict with numerical blow-up: an implementation bug.
    Contradiction,
    /// Refuted verdict whose blow-up the grid could not see even after
    /// refinement near the witnesses.
    SoftInconclusive,
}

impl Consistency {
    pub fn as_str(&self) -> &'static str {
        match self {
            Consistency::Consistent => "consistent",
            Consistency::Contradiction => "contradiction",
            Consistency::SoftInconclusive => "soft-inconclusive",
        }
    }
}

/// Outcome of [`cross_validate`], with the refined report when refinement
/// was performed.
#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub outcome: Consistency,
    pub refined: Option<OracleReport>,
}

/// Confronts an engine verdict with an oracle report for the same problem.
///
/// A refuted verdict whose report did not blow up gets one automatic
/// refinement pass with sample clusters around the verdict's witnesses
/// (rings around deficient zeros, boundary pushes toward deficient atoms)
/// before settling on soft-inconclusive.
pub fn cross_validate(
    theta1: &InnerFunction,
    phi: &SelfMap,
    theta2: &InnerFunction,
    verdict: &Verdict,
    report: &OracleReport,
    grid: &GridSpec,
) -> Result<CrossValidation, Error> {
    if verdict.contained() {
        let outcome = match report.flag {
            OracleFlag::BoundedConsistent => Consistency::Consistent,
            OracleFlag::BlowupDetected => Consistency::Contradiction,
            OracleFlag::Inconclusive => {
                if report.samples_used == 0 {
                    Consistency::SoftInconclusive
                } else {
                    // The proof gives sup ≤ 1; any excess beyond tolerance
                    // is evidence of a bug, not of the grid being too coarse.
                    Consistency::Contradiction
                }
            }
        };
        return Ok(CrossValidation {
            outcome,
            refined: None,
        });
    }

    if report.flag == OracleFlag::BlowupDetected {
        return Ok(CrossValidation {
            outcome: Consistency::Consistent,
            refined: None,
        });
    }

    // Refine once near the witnesses.
    let mut angles = Vec::new();
    let mut points = Vec::new();
    for check in verdict.deficits() {
        match check {
            Check::ZeroMultiplicity { zero, .. } => points.push(*zero),
            Check::AtomMass { angle, .. } => angles.push(*angle),
        }
    }
    let refined_grid = grid.with_witnesses(angles, points);
    let refined = sup_quotient(theta1, phi, theta2, &refined_grid)?;
    let outcome = if refined.flag == OracleFlag::BlowupDetected {
        Consistency::Consistent
    } else {
        Consistency::SoftInconclusive
    };
    Ok(CrossValidation {
        outcome,
        refined: Some(refined),
    })
}

/// The example inner function `θ = (−z)·exp((z+1)/(z−1))` and the self-map
/// `φ = −θ`, used across tests: `θH^p` is invariant under `C_φ` while the
/// singular factor alone is not.
pub fn negated_atomic_example() -> (InnerFunction, SelfMap) {
    let theta = InnerFunction::new(
        crate::inner::BlaschkeProduct::new(-Complex::ONE, vec![(Complex::ZERO, 1)])
            .expect("valid product"),
        AtomicMeasure::new(vec![(0.0, 1.0)]).expect("valid measure"),
        Complex::ONE,
    )
    .expect("valid inner function");
    let phi = SelfMap::Chain(vec![SelfMap::Scale(-Complex::ONE), SelfMap::Inner(theta.clone())]);
    (theta, phi)
}
