//! The group of disk automorphisms in the normal form `γ(a−z)/(1−āz)`.
//!
//! Composition and inversion stay in normal form via closed formulas, so
//! group arithmetic is as accurate as evaluation itself. Classification
//! (identity / elliptic / parabolic / hyperbolic) comes from the fixed-point
//! quadratic `āz² − (1+γ)z + γa = 0`, with the tag decided by the normalized
//! squared trace `|1−γ|²/(1−|a|²)`, which is the conjugation-invariant form
//! of the same discriminant.

use crate::error::Error;
use crate::jets::Jet;
use crate::tolerance::{BOUNDARY_TOL, EPS_MATCH, EVAL_BOUNDARY_SLACK, UNIMODULAR_TOL};
use crate::Complex;

/// Separation below which two near-unit fixed points are merged into a
/// parabolic double point; the quadratic solve amplifies rounding to about
/// the square root of machine precision.
const PARABOLIC_SEP_TOL: f64 = 1e-6;

/// Tolerance on the normalized squared trace when comparing against the
/// parabolic threshold 4.
const TRACE_TOL: f64 = 1e-9;

/// Disk automorphism `z ↦ γ(a−z)/(1−āz)` with `|γ| = 1`, `|a| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moebius {
    gamma: Complex,
    a: Complex,
}

/// Location of a fixed point relative to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPointLocation {
    Interior,
    Boundary,
}

/// A fixed point of an automorphism, tagged with its location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub point: Complex,
    pub location: FixedPointLocation,
}

/// Conjugacy class of a disk automorphism together with its fixed points
/// inside the closed disk.
#[derive(Debug, Clone, PartialEq)]
pub enum AutomorphismClass {
    Identity,
    /// Unique fixed point in the open disk.
    Elliptic { fixed: FixedPoint },
    /// Double fixed point on the circle.
    Parabolic { fixed: FixedPoint },
    /// Two distinct fixed points on the circle.
    Hyperbolic { fixed: [FixedPoint; 2] },
}

impl AutomorphismClass {
    pub fn is_elliptic(&self) -> bool {
        matches!(self, AutomorphismClass::Elliptic { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            AutomorphismClass::Identity => "identity",
            AutomorphismClass::Elliptic { .. } => "elliptic",
            AutomorphismClass::Parabolic { .. } => "parabolic",
            AutomorphismClass::Hyperbolic { .. } => "hyperbolic",
        }
    }
}

impl Moebius {
    /// Normal-form constructor. `gamma` is renormalized onto the circle if
    /// it is within tolerance; `a` must lie strictly inside the disk.
    pub fn new(gamma: Complex, a: Complex) -> Result<Moebius, Error> {
        if !gamma.is_finite() || !a.is_finite() {
            return Err(Error::NonFinite("Moebius parameters must be finite".into()));
        }
        let g = gamma.norm();
        if (g - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::invalid(format!(
                "|gamma| = {g} is not unimodular"
            )));
        }
        if a.norm() >= 1.0 {
            return Err(Error::invalid(format!(
                "|a| = {} must be strictly less than 1",
                a.norm()
            )));
        }
        Ok(Moebius { gamma: gamma / g, a })
    }

    /// The Blaschke factor `B_a(z) = (a−z)/(1−āz)`.
    pub fn blaschke(a: Complex) -> Result<Moebius, Error> {
        Moebius::new(Complex::ONE, a)
    }

    /// The rotation `z ↦ λz` for unimodular `λ`.
    pub fn rotation(lambda: Complex) -> Result<Moebius, Error> {
        Moebius::new(-lambda, Complex::ZERO)
    }

    /// The identity map (`γ = −1`, `a = 0`).
    pub fn identity() -> Moebius {
        Moebius {
            gamma: -Complex::ONE,
            a: Complex::ZERO,
        }
    }

    pub fn gamma(&self) -> Complex {
        self.gamma
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn is_identity(&self) -> bool {
        self.a.norm() <= UNIMODULAR_TOL && (self.gamma + Complex::ONE).norm() <= UNIMODULAR_TOL
    }

    /// Evaluation on the closed disk.
    pub fn eval(&self, z: Complex) -> Result<Complex, Error> {
        if z.norm() > 1.0 + EVAL_BOUNDARY_SLACK {
            return Err(Error::domain(format!(
                "|z| = {} lies outside the closed disk",
                z.norm()
            )));
        }
        Ok(self.gamma * (self.a - z) / (Complex::ONE - self.a.conj() * z))
    }

    /// Composite `self ∘ other` in normal form.
    ///
    /// The zero of the composite is `other⁻¹(a₁)` and the unimodular factor
    /// follows from matching the linear-fractional coefficients; both have
    /// closed forms, so no generic recovery is involved.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let (g1, a1) = (self.gamma, self.a);
        let (g2, a2) = (other.gamma, other.a);
        let num = g2 - a1 * a2.conj();
        let den = Complex::ONE - a1.conj() * g2 * a2;
        let a = (g2 * a2 - a1) / num;
        let gamma = -g1 * num / den;
        debug_assert!(a.norm() < 1.0, "composite zero escaped the disk");
        Moebius {
            gamma: gamma / gamma.norm(),
            a,
        }
    }

    /// Two-sided inverse: `γ(a−z)/(1−āz)` inverts to parameters `(γ̄, γa)`.
    pub fn inverse(&self) -> Moebius {
        Moebius {
            gamma: self.gamma.conj(),
            a: self.gamma * self.a,
        }
    }

    /// Normalized squared trace `|1−γ|²/(1−|a|²)`; < 4 elliptic, = 4
    /// parabolic (or identity), > 4 hyperbolic.
    fn trace_squared(&self) -> f64 {
        (Complex::ONE - self.gamma).norm_sqr() / (1.0 - self.a.norm_sqr())
    }

    /// Roots of the fixed-point quadratic `āz² − (1+γ)z + γa = 0`.
    ///
    /// Returns one root when the equation degenerates to linear (`a ≈ 0`);
    /// the second fixed point is then at infinity on the sphere.
    fn fixed_point_roots(&self) -> Vec<Complex> {
        let qa = self.a.conj();
        let qb = -(Complex::ONE + self.gamma);
        let qc = self.gamma * self.a;
        if qa.norm() <= 1e-15 {
            if qb.norm() <= 1e-15 {
                return vec![];
            }
            return vec![-qc / qb];
        }
        let disc = qb * qb - 4.0 * qa * qc;
        let s = disc.sqrt();
        // Pick the branch that avoids cancellation, recover the mate by Vieta.
        let t_plus = -qb + s;
        let t_minus = -qb - s;
        let t = if t_plus.norm() >= t_minus.norm() {
            t_plus
        } else {
            t_minus
        };
        if t.norm() <= 1e-15 {
            let r = -qb / (2.0 * qa);
            return vec![r, r];
        }
        let r1 = t / (2.0 * qa);
        let r2 = qc / (qa * r1);
        vec![r1, r2]
    }

    /// Classifies the automorphism by the location and multiplicity of its
    /// fixed points.
    pub fn classify(&self) -> AutomorphismClass {
        if self.is_identity() {
            return AutomorphismClass::Identity;
        }
        let sigma = self.trace_squared();
        let roots = self.fixed_point_roots();
        let on_boundary = |z: Complex| (z.norm() - 1.0).abs() <= BOUNDARY_TOL;

        if sigma < 4.0 - TRACE_TOL {
            // Elliptic: exactly one root in the open disk.
            let fixed = roots
                .iter()
                .copied()
                .find(|z| z.norm() < 1.0 - BOUNDARY_TOL)
                .unwrap_or_else(|| *roots.first().unwrap_or(&Complex::ZERO));
            AutomorphismClass::Elliptic {
                fixed: FixedPoint {
                    point: fixed,
                    location: FixedPointLocation::Interior,
                },
            }
        } else if sigma <= 4.0 + TRACE_TOL {
            // Parabolic: double root; project the mean root for reporting.
            let mean = match roots.len() {
                2 => (roots[0] + roots[1]) / 2.0,
                1 => roots[0],
                _ => Complex::ONE,
            };
            AutomorphismClass::Parabolic {
                fixed: FixedPoint {
                    point: mean,
                    location: FixedPointLocation::Boundary,
                },
            }
        } else {
            let mut pts: Vec<Complex> = roots;
            if pts.len() == 2 && (pts[0] - pts[1]).norm() <= PARABOLIC_SEP_TOL {
                // Numerically merged roots despite the trace test; report
                // the parabolic reading, which is what the data supports.
                let mean = (pts[0] + pts[1]) / 2.0;
                return AutomorphismClass::Parabolic {
                    fixed: FixedPoint {
                        point: mean,
                        location: FixedPointLocation::Boundary,
                    },
                };
            }
            debug_assert!(pts.iter().all(|z| on_boundary(*z)));
            pts.sort_by(|x, y| x.arg().partial_cmp(&y.arg()).unwrap());
            AutomorphismClass::Hyperbolic {
                fixed: [
                    FixedPoint {
                        point: pts[0],
                        location: FixedPointLocation::Boundary,
                    },
                    FixedPoint {
                        point: pts[1],
                        location: FixedPointLocation::Boundary,
                    },
                ],
            }
        }
    }

    /// Jet of the map at an interior point, by truncated series division.
    pub fn jet(&self, at: Complex, order: u32) -> Result<Jet, Error> {
        if at.norm() >= 1.0 {
            return Err(Error::domain("jets are taken at interior points"));
        }
        let num = Jet::affine(at, self.gamma * (self.a - at), -self.gamma, order);
        let den = Jet::affine(at, Complex::ONE - self.a.conj() * at, -self.a.conj(), order);
        num.div(&den)
    }

    /// Recovers normal form from linear-fractional coefficients
    /// `(αz + β)/(ζz + δ)`, if the map is a disk automorphism.
    ///
    /// The zero `−β/α` must lie inside the disk, the recovered unimodular
    /// factor must have modulus 1, and the recovered map must agree with the
    /// input map on a sample of the disk.
    pub fn from_linear_fractional(
        alpha: Complex,
        beta: Complex,
        zeta: Complex,
        delta: Complex,
    ) -> Option<Moebius> {
        let scale = alpha
            .norm()
            .max(beta.norm())
            .max(zeta.norm())
            .max(delta.norm());
        if scale == 0.0 || !scale.is_finite() || alpha.norm() <= 1e-14 * scale {
            return None;
        }
        let t = |z: Complex| (alpha * z + beta) / (zeta * z + delta);
        let a = -beta / alpha;
        if !a.is_finite() || a.norm() >= 1.0 {
            return None;
        }
        // Sample the circle far from `a` to read off the unimodular factor.
        let zs = if a.norm() < 0.5 {
            Complex::ONE
        } else {
            -a / a.norm()
        };
        let gamma_raw = t(zs) * (Complex::ONE - a.conj() * zs) / (a - zs);
        if !gamma_raw.is_finite() || (gamma_raw.norm() - 1.0).abs() > 1e-6 {
            return None;
        }
        let candidate = Moebius {
            gamma: gamma_raw / gamma_raw.norm(),
            a,
        };
        // Disk automorphisms are determined by three points; agreement on a
        // sample of twenty rules out every non-automorphism.
        for k in 0..20 {
            let z = Complex::from_polar(0.7, 2.0 * std::f64::consts::PI * k as f64 / 20.0);
            let lhs = t(z);
            let rhs = candidate.eval(z).ok()?;
            if !lhs.is_finite() || (lhs - rhs).norm() > 1e-9 {
                return None;
            }
        }
        Some(candidate)
    }
}

/// The automorphism `φ_{a,b} = B_a ∘ B_c ∘ B_a` with `c = B_a(b)`, which
/// interchanges `a` and `b`.
pub fn swap_map(a: Complex, b: Complex) -> Result<Moebius, Error> {
    if a.norm() >= 1.0 || b.norm() >= 1.0 {
        return Err(Error::invalid("swap points must lie inside the disk"));
    }
    if (a - b).norm() <= EPS_MATCH {
        return Err(Error::Degenerate(
            "swap of a point with itself; use the identity map instead".into(),
        ));
    }
    let ba = Moebius::blaschke(a)?;
    let c = ba.eval(b)?;
    let bc = Moebius::blaschke(c)?;
    Ok(ba.compose(&bc).compose(&ba))
}

/// The unique disk automorphism cycling `points[0] → points[1] → … →
/// points[0]`, when one exists.
///
/// For two points this is the swap map. For three or more, the candidate is
/// the Möbius transformation of the sphere determined by the first three
/// correspondences (via cross-ratio matrices); it is accepted only if it is
/// a disk automorphism, cycles every listed point, and is elliptic.
pub fn cycle_map(points: &[Complex]) -> Result<Option<Moebius>, Error> {
    if points.len() < 2 {
        return Err(Error::invalid("a cycle needs at least two points"));
    }
    if points.iter().any(|p| p.norm() >= 1.0) {
        return Err(Error::invalid("cycle points must lie inside the disk"));
    }
    for (i, p) in points.iter().enumerate() {
        for q in points.iter().skip(i + 1) {
            if (p - q).norm() <= EPS_MATCH {
                return Err(Error::invalid("cycle points must be pairwise distinct"));
            }
        }
    }
    if points.len() == 2 {
        return Ok(Some(swap_map(points[0], points[1])?));
    }

    // Matrix sending (z1, z2, z3) to (0, 1, ∞).
    let to_standard = |z1: Complex, z2: Complex, z3: Complex| {
        [
            [z2 - z3, -z1 * (z2 - z3)],
            [z2 - z1, -z3 * (z2 - z1)],
        ]
    };
    let n = points.len();
    let s = to_standard(points[0], points[1], points[2]);
    let u = to_standard(points[1], points[2], points[3 % n]);
    // adj(u) ∘ s
    let m = [
        [
            u[1][1] * s[0][0] - u[0][1] * s[1][0],
            u[1][1] * s[0][1] - u[0][1] * s[1][1],
        ],
        [
            -u[1][0] * s[0][0] + u[0][0] * s[1][0],
            -u[1][0] * s[0][1] + u[0][0] * s[1][1],
        ],
    ];
    let candidate = match Moebius::from_linear_fractional(m[0][0], m[0][1], m[1][0], m[1][1]) {
        Some(c) => c,
        None => return Ok(None),
    };
    for (i, p) in points.iter().enumerate() {
        let image = candidate.eval(*p)?;
        if (image - points[(i + 1) % n]).norm() > 1e-9 {
            return Ok(None);
        }
    }
    if !candidate.classify().is_elliptic() {
        return Ok(None);
    }
    Ok(Some(candidate))
}
