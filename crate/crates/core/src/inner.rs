//! Inner functions and structured self-maps of the disk.
//!
//! The data model covers finite Blaschke products `γ·∏(α_i B_{a_i})^{m_i}`
//! (with the classical normalization `α_i = |a_i|/a_i`, `α_i = −1` for
//! `a_i = 0`), atomic singular inner functions
//! `α·exp(−Σ w_k (t_k+z)/(t_k−z))`, their products, and a small algebra of
//! holomorphic self-maps built from them. Everything the decision engine
//! needs (multiplicities of composite zeros, pushforward of atomic
//! measures under automorphisms, jets of structured maps) lives here.

use crate::error::Error;
use crate::jets::{Jet, Vanishing};
use crate::moebius::Moebius;
use crate::tolerance::{
    angular_distance, normalize_angle, Tolerances, ATOM_ANGLE_TOL, EPS_MATCH,
    EVAL_BOUNDARY_SLACK, JET_ORDER_CAP, UNIMODULAR_TOL,
};
use crate::{unit, Complex};

/// Anything that can be evaluated on the (closed) disk.
pub trait Evaluate {
    fn eval_at(&self, z: Complex) -> Result<Complex, Error>;
}

/// Finite Blaschke product `γ·∏(α_i B_{a_i})^{m_i}` with distinct zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    gamma: Complex,
    factors: Vec<(Complex, u32)>,
}

fn unimodular_or_err(c: Complex, what: &str) -> Result<Complex, Error> {
    if !c.is_finite() {
        return Err(Error::NonFinite(format!("{what} must be finite")));
    }
    let n = c.norm();
    if (n - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::invalid(format!("|{what}| = {n} is not unimodular")));
    }
    Ok(c / n)
}

/// The normalizing constant `α = |a|/a` (`−1` for `a = 0`).
pub fn blaschke_normalizer(a: Complex) -> Complex {
    if a.norm() == 0.0 {
        -Complex::ONE
    } else {
        a.conj() / a.norm()
    }
}

impl BlaschkeProduct {
    pub fn new(gamma: Complex, factors: Vec<(Complex, u32)>) -> Result<Self, Error> {
        let gamma = unimodular_or_err(gamma, "gamma")?;
        for (a, m) in &factors {
            if !a.is_finite() {
                return Err(Error::NonFinite("zero location must be finite".into()));
            }
            if a.norm() >= 1.0 {
                return Err(Error::invalid(format!(
                    "zero at |a| = {} must lie strictly inside the disk",
                    a.norm()
                )));
            }
            if *m == 0 {
                return Err(Error::invalid("multiplicities must be at least 1"));
            }
        }
        let mut factors = factors;
        factors.sort_by(|x, y| {
            (x.0.re, x.0.im)
                .partial_cmp(&(y.0.re, y.0.im))
                .expect("finite coordinates")
        });
        for pair in factors.windows(2) {
            if (pair[0].0 - pair[1].0).norm() <= EPS_MATCH {
                return Err(Error::invalid(format!(
                    "zeros {} and {} coincide; merge their multiplicities",
                    pair[0].0, pair[1].0
                )));
            }
        }
        Ok(BlaschkeProduct { gamma, factors })
    }

    /// The empty product: the constant `gamma`.
    pub fn constant(gamma: Complex) -> Result<Self, Error> {
        BlaschkeProduct::new(gamma, vec![])
    }

    /// The empty product with `gamma = 1`.
    pub fn one() -> Self {
        BlaschkeProduct {
            gamma: Complex::ONE,
            factors: vec![],
        }
    }

    /// Single-zero product `(αB_a)^m`.
    pub fn single(a: Complex, m: u32) -> Result<Self, Error> {
        BlaschkeProduct::new(Complex::ONE, vec![(a, m)])
    }

    pub fn gamma(&self) -> Complex {
        self.gamma
    }

    pub fn factors(&self) -> &[(Complex, u32)] {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total zero count with multiplicity.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    /// Index of the declared zero matching `w`, if any.
    pub fn zero_index_at(&self, w: Complex, eps: f64) -> Option<usize> {
        self.factors.iter().position(|(a, _)| (a - w).norm() <= eps)
    }

    /// Multiplicity of `w` as a zero (0 when `w` is not a zero).
    pub fn mult_at(&self, w: Complex, eps: f64) -> u32 {
        self.zero_index_at(w, eps)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn eval(&self, z: Complex) -> Result<Complex, Error> {
        if z.norm() > 1.0 + EVAL_BOUNDARY_SLACK {
            return Err(Error::domain(format!(
                "|z| = {} lies outside the closed disk",
                z.norm()
            )));
        }
        let mut acc = self.gamma;
        for (a, m) in &self.factors {
            let factor = blaschke_normalizer(*a) * (a - z) / (Complex::ONE - a.conj() * z);
            acc *= factor.powu(*m);
        }
        Ok(acc)
    }

    /// `ln|B(z)|`; `−∞` at the zeros.
    pub fn log_abs(&self, z: Complex) -> f64 {
        let mut acc = 0.0;
        for (a, m) in &self.factors {
            let num = (a - z).norm();
            let den = (Complex::ONE - a.conj() * z).norm();
            if num == 0.0 {
                return f64::NEG_INFINITY;
            }
            acc += (*m as f64) * (num.ln() - den.ln());
        }
        acc
    }

    pub fn jet(&self, at: Complex, order: u32) -> Result<Jet, Error> {
        if at.norm() >= 1.0 {
            return Err(Error::domain("jets are taken at interior points"));
        }
        let mut acc = Jet::constant(self.gamma, at, order);
        for (a, m) in &self.factors {
            let num = Jet::affine(at, a - at, -Complex::ONE, order);
            let den = Jet::affine(at, Complex::ONE - a.conj() * at, -a.conj(), order);
            let factor = num.div(&den)?.scale(blaschke_normalizer(*a));
            acc = acc.mul(&factor.powi(*m))?;
        }
        Ok(acc)
    }

    /// Pointwise product, merging coincident zeros.
    pub fn multiply(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut factors = self.factors.clone();
        for (b, n) in &other.factors {
            match factors.iter_mut().find(|(a, _)| (a - b).norm() <= EPS_MATCH) {
                Some((_, m)) => *m += n,
                None => factors.push((*b, *n)),
            }
        }
        BlaschkeProduct::new(self.gamma * other.gamma, factors)
            .expect("product of valid Blaschke products")
    }

    /// The Blaschke product equal to `B ∘ φ` for an automorphism `φ`: zeros
    /// move to `φ⁻¹(a_i)` with unchanged multiplicities and the unimodular
    /// constant is recovered by evaluation.
    pub fn precompose_automorphism(&self, phi: &Moebius) -> Result<BlaschkeProduct, Error> {
        let inv = phi.inverse();
        let mut factors = Vec::with_capacity(self.factors.len());
        for (a, m) in &self.factors {
            factors.push((inv.eval(*a)?, *m));
        }
        let candidate = BlaschkeProduct::new(Complex::ONE, factors)?;
        // Recover the constant at a sample point where nothing vanishes.
        for k in 0..16 {
            let z = Complex::from_polar(0.83_f64.powi(k + 1), 2.399963 * k as f64);
            let cval = candidate.eval(z)?;
            if cval.norm() < 1e-3 {
                continue;
            }
            let target = self.eval(phi.eval(z)?)?;
            let g = unimodular_or_err(target / cval, "recovered constant")?;
            return BlaschkeProduct::new(g, candidate.factors);
        }
        Err(Error::NonFinite(
            "could not sample a regular point for constant recovery".into(),
        ))
    }
}

impl Evaluate for BlaschkeProduct {
    fn eval_at(&self, z: Complex) -> Result<Complex, Error> {
        self.eval(z)
    }
}

/// Finite positive atomic measure on the circle; atoms keyed by angle.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure {
    atoms: Vec<(f64, f64)>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self, Error> {
        let mut atoms: Vec<(f64, f64)> = atoms
            .into_iter()
            .map(|(angle, w)| (normalize_angle(angle), w))
            .collect();
        for (angle, w) in &atoms {
            if !angle.is_finite() || !w.is_finite() {
                return Err(Error::NonFinite("atom data must be finite".into()));
            }
            if *w <= 0.0 {
                return Err(Error::invalid("atom weights must be strictly positive"));
            }
        }
        atoms.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite angles"));
        for pair in atoms.windows(2) {
            if angular_distance(pair[0].0, pair[1].0) <= 1e-12 {
                return Err(Error::invalid(format!(
                    "atoms at angles {} and {} coincide",
                    pair[0].0, pair[1].0
                )));
            }
        }
        if atoms.len() > 1 && angular_distance(atoms[0].0, atoms[atoms.len() - 1].0) <= 1e-12 {
            return Err(Error::invalid("atoms coincide across the cut at 0"));
        }
        Ok(AtomicMeasure { atoms })
    }

    /// The zero measure: its singular inner function is the constant 1.
    pub fn empty() -> Self {
        AtomicMeasure { atoms: vec![] }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    /// Mass of the atom within `tol` of `angle` (0 when there is none).
    pub fn mass_near(&self, angle: f64, tol: f64) -> f64 {
        self.atoms
            .iter()
            .find(|(t, _)| angular_distance(*t, angle) <= tol)
            .map(|(_, w)| *w)
            .unwrap_or(0.0)
    }

    /// The singular inner function `S_μ(z) = exp(−Σ w_k (t_k+z)/(t_k−z))`.
    ///
    /// Boundary points are admitted away from the atoms, where the closed
    /// form is continuous.
    pub fn singular_eval(&self, z: Complex) -> Result<Complex, Error> {
        if z.norm() > 1.0 + EVAL_BOUNDARY_SLACK {
            return Err(Error::domain(format!(
                "|z| = {} lies outside the closed disk",
                z.norm()
            )));
        }
        let mut exponent = Complex::ZERO;
        for (angle, w) in &self.atoms {
            let t = unit(*angle);
            let d = t - z;
            // Interior approach is fine at any distance (the exponent has a
            // large positive real part, so the value underflows to the
            // radial limit 0). On or past the circle the real part flips
            // sign and the closed form is meaningless near the atom.
            if d.norm() <= 1e-14 || (z.norm() >= 1.0 && d.norm() <= ATOM_ANGLE_TOL) {
                return Err(Error::SingularAtom(format!(
                    "evaluation at the atom with angle {angle}"
                )));
            }
            exponent += w * (t + z) / d;
        }
        Ok((-exponent).exp())
    }

    /// `ln|S_μ(z)| = −Σ w_k (1−|z|²)/|t_k−z|²` (the Poisson kernel form).
    pub fn singular_log_abs(&self, z: Complex) -> f64 {
        let one_minus = 1.0 - z.norm_sqr();
        let mut acc = 0.0;
        for (angle, w) in &self.atoms {
            let d2 = (unit(*angle) - z).norm_sqr();
            if d2 == 0.0 {
                return f64::NEG_INFINITY;
            }
            acc -= w * one_minus / d2;
        }
        acc
    }

    pub fn singular_jet(&self, at: Complex, order: u32) -> Result<Jet, Error> {
        if at.norm() >= 1.0 {
            return Err(Error::domain("jets are taken at interior points"));
        }
        let mut exponent = Jet::constant(Complex::ZERO, at, order);
        for (angle, w) in &self.atoms {
            let t = unit(*angle);
            let num = Jet::affine(at, t + at, Complex::ONE, order);
            let den = Jet::affine(at, t - at, -Complex::ONE, order);
            exponent = exponent.add(&num.div(&den)?.scale(Complex::from(*w)))?;
        }
        Ok(exponent.neg().exp())
    }

    /// The measure `ν` with `S_ν H^p = (S_μ ∘ φ) H^p` for an automorphism
    /// `φ`: one atom at `φ⁻¹(t_k)` per atom `t_k`, with weight rescaled by
    /// the boundary kernel `(1−|φ(0)|²)/|t_k−φ(0)|²`.
    pub fn pushforward(&self, phi: &Moebius) -> AtomicMeasure {
        let phi0 = phi.gamma() * phi.a();
        let kernel_num = 1.0 - phi0.norm_sqr();
        let inv = phi.inverse();
        let atoms = self
            .atoms
            .iter()
            .map(|(angle, w)| {
                let t = unit(*angle);
                let s = inv.eval(t).expect("boundary maps to boundary");
                let weight = w * kernel_num / (t - phi0).norm_sqr();
                (normalize_angle(s.arg()), weight)
            })
            .collect();
        AtomicMeasure::new(atoms).expect("automorphisms keep atoms distinct")
    }
}

/// See [`AtomicMeasure::pushforward`].
pub fn pushforward(mu: &AtomicMeasure, phi: &Moebius) -> AtomicMeasure {
    mu.pushforward(phi)
}

/// Inner function `α · B · S_μ` in factored form.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerFunction {
    blaschke: BlaschkeProduct,
    measure: AtomicMeasure,
    alpha: Complex,
}

impl InnerFunction {
    pub fn new(
        blaschke: BlaschkeProduct,
        measure: AtomicMeasure,
        alpha: Complex,
    ) -> Result<Self, Error> {
        Ok(InnerFunction {
            blaschke,
            measure,
            alpha: unimodular_or_err(alpha, "alpha")?,
        })
    }

    pub fn from_blaschke(blaschke: BlaschkeProduct) -> Self {
        InnerFunction {
            blaschke,
            measure: AtomicMeasure::empty(),
            alpha: Complex::ONE,
        }
    }

    pub fn from_measure(measure: AtomicMeasure) -> Self {
        InnerFunction {
            blaschke: BlaschkeProduct::one(),
            measure,
            alpha: Complex::ONE,
        }
    }

    pub fn blaschke(&self) -> &BlaschkeProduct {
        &self.blaschke
    }

    pub fn measure(&self) -> &AtomicMeasure {
        &self.measure
    }

    pub fn alpha(&self) -> Complex {
        self.alpha
    }

    /// The value of the function when it is a unimodular constant.
    pub fn constant_value(&self) -> Option<Complex> {
        if self.blaschke.is_constant() && self.measure.is_empty() {
            Some(self.alpha * self.blaschke.gamma())
        } else {
            None
        }
    }

    pub fn eval(&self, z: Complex) -> Result<Complex, Error> {
        let b = self.blaschke.eval(z)?;
        let s = self.measure.singular_eval(z)?;
        Ok(self.alpha * b * s)
    }

    /// `ln|θ(z)|`, stable arbitrarily close to zeros and atoms.
    pub fn log_abs(&self, z: Complex) -> f64 {
        self.blaschke.log_abs(z) + self.measure.singular_log_abs(z)
    }

    pub fn jet(&self, at: Complex, order: u32) -> Result<Jet, Error> {
        let b = self.blaschke.jet(at, order)?;
        let s = self.measure.singular_jet(at, order)?;
        Ok(b.mul(&s)?.scale(self.alpha))
    }

    /// Pointwise product of inner functions.
    pub fn multiply(&self, other: &InnerFunction) -> InnerFunction {
        let mut atoms = self.measure.atoms().to_vec();
        for (angle, w) in other.measure.atoms() {
            match atoms
                .iter_mut()
                .find(|(t, _)| angular_distance(*t, *angle) <= ATOM_ANGLE_TOL)
            {
                Some((_, acc)) => *acc += w,
                None => atoms.push((*angle, *w)),
            }
        }
        InnerFunction {
            blaschke: self.blaschke.multiply(&other.blaschke),
            measure: AtomicMeasure::new(atoms).expect("merged atoms stay valid"),
            alpha: self.alpha * other.alpha,
        }
    }
}

impl Evaluate for InnerFunction {
    fn eval_at(&self, z: Complex) -> Result<Complex, Error> {
        self.eval(z)
    }
}

/// Structured holomorphic self-map of the disk.
///
/// `Chain` is composition with the outermost map first, mirroring how
/// `f ∘ g ∘ h` reads. `Product` is the pointwise product of its factors.
/// `Scale(s)` is the map `z ↦ s·z` with `0 < |s| ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum SelfMap {
    Identity,
    Constant(Complex),
    Mob(Moebius),
    Inner(InnerFunction),
    Scale(Complex),
    Chain(Vec<SelfMap>),
    Product(Vec<SelfMap>),
}

impl SelfMap {
    /// Validates the structural invariants of this map and its children.
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            SelfMap::Identity | SelfMap::Mob(_) | SelfMap::Inner(_) => Ok(()),
            SelfMap::Constant(c) => {
                if !c.is_finite() {
                    return Err(Error::NonFinite("constant must be finite".into()));
                }
                if c.norm() >= 1.0 {
                    return Err(Error::invalid(format!(
                        "constant self-maps take a value inside the disk; |c| = {}",
                        c.norm()
                    )));
                }
                Ok(())
            }
            SelfMap::Scale(s) => {
                if !s.is_finite() {
                    return Err(Error::NonFinite("scale must be finite".into()));
                }
                if s.norm() == 0.0 || s.norm() > 1.0 + UNIMODULAR_TOL {
                    return Err(Error::invalid(format!(
                        "scale factor needs 0 < |s| ≤ 1; |s| = {}",
                        s.norm()
                    )));
                }
                Ok(())
            }
            SelfMap::Chain(maps) => {
                if maps.is_empty() {
                    return Err(Error::invalid("a chain needs at least one map"));
                }
                maps.iter().try_for_each(SelfMap::validate)
            }
            SelfMap::Product(maps) => {
                if maps.is_empty() {
                    return Err(Error::invalid("a product needs at least one factor"));
                }
                maps.iter().try_for_each(SelfMap::validate)
            }
        }
    }

    pub fn eval(&self, z: Complex) -> Result<Complex, Error> {
        match self {
            SelfMap::Identity => {
                if z.norm() > 1.0 + EVAL_BOUNDARY_SLACK {
                    return Err(Error::domain("identity is evaluated on the closed disk"));
                }
                Ok(z)
            }
            SelfMap::Constant(c) => Ok(*c),
            SelfMap::Mob(m) => m.eval(z),
            SelfMap::Inner(f) => f.eval(z),
            SelfMap::Scale(s) => {
                if z.norm() > 1.0 + EVAL_BOUNDARY_SLACK {
                    return Err(Error::domain("scaling is evaluated on the closed disk"));
                }
                Ok(s * z)
            }
            SelfMap::Chain(maps) => {
                let mut value = z;
                for f in maps.iter().rev() {
                    value = f.eval(value)?;
                }
                Ok(value)
            }
            SelfMap::Product(maps) => {
                let mut acc = Complex::ONE;
                for f in maps {
                    acc *= f.eval(z)?;
                }
                Ok(acc)
            }
        }
    }

    /// Jet at an interior point; chains compose jets, products multiply them.
    pub fn jet(&self, at: Complex, order: u32) -> Result<Jet, Error> {
        match self {
            SelfMap::Identity => Ok(Jet::variable(at, order)),
            SelfMap::Constant(c) => Ok(Jet::constant(*c, at, order)),
            SelfMap::Mob(m) => m.jet(at, order),
            SelfMap::Inner(f) => f.jet(at, order),
            SelfMap::Scale(s) => Ok(Jet::affine(at, s * at, *s, order)),
            SelfMap::Chain(maps) => {
                let mut iter = maps.iter().rev();
                let first = iter.next().expect("chains are nonempty");
                let mut acc = first.jet(at, order)?;
                for f in iter {
                    let outer = f.jet(acc.value(), order)?;
                    acc = Jet::compose(&outer, &acc)?;
                }
                Ok(acc)
            }
            SelfMap::Product(maps) => {
                let mut acc = Jet::constant(Complex::ONE, at, order);
                for f in maps {
                    acc = acc.mul(&f.jet(at, order)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// The constant value of the map when it is structurally constant.
    ///
    /// A chain is constant as soon as any link is; a product is constant
    /// zero as soon as any factor is.
    pub fn constant_value(&self) -> Option<Complex> {
        match self {
            SelfMap::Identity | SelfMap::Mob(_) | SelfMap::Scale(_) => None,
            SelfMap::Constant(c) => Some(*c),
            SelfMap::Inner(f) => f.constant_value(),
            SelfMap::Chain(maps) => {
                let mut state: Option<Complex> = None;
                for f in maps.iter().rev() {
                    state = match f.constant_value() {
                        Some(c) => Some(c),
                        None => match state {
                            Some(v) => Some(f.eval(v).ok()?),
                            None => None,
                        },
                    };
                }
                state
            }
            SelfMap::Product(maps) => {
                let values: Vec<Option<Complex>> =
                    maps.iter().map(SelfMap::constant_value).collect();
                if values
                    .iter()
                    .any(|v| matches!(v, Some(c) if c.norm() == 0.0))
                {
                    return Some(Complex::ZERO);
                }
                values
                    .into_iter()
                    .try_fold(Complex::ONE, |acc, v| v.map(|c| acc * c))
            }
        }
    }

    /// Recognizes the map as a disk automorphism when its structure allows.
    pub fn as_moebius(&self) -> Option<Moebius> {
        match self {
            SelfMap::Identity => Some(Moebius::identity()),
            SelfMap::Mob(m) => Some(*m),
            SelfMap::Scale(s) if (s.norm() - 1.0).abs() <= UNIMODULAR_TOL => {
                Moebius::rotation(*s).ok()
            }
            SelfMap::Inner(f) if f.measure().is_empty() && f.blaschke().degree() == 1 => {
                let (a, _) = f.blaschke().factors()[0];
                let u = f.alpha() * f.blaschke().gamma() * blaschke_normalizer(a);
                Moebius::new(u, a).ok()
            }
            SelfMap::Chain(maps) => {
                let mut iter = maps.iter();
                let mut acc = iter.next()?.as_moebius()?;
                for f in iter {
                    acc = acc.compose(&f.as_moebius()?);
                }
                Some(acc)
            }
            SelfMap::Product(maps) if maps.len() == 1 => maps[0].as_moebius(),
            _ => None,
        }
    }
}

impl Evaluate for SelfMap {
    fn eval_at(&self, z: Complex) -> Result<Complex, Error> {
        self.eval(z)
    }
}

impl Evaluate for Moebius {
    fn eval_at(&self, z: Complex) -> Result<Complex, Error> {
        self.eval(z)
    }
}

/// Order of vanishing of a composite at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u32),
    /// The composite vanishes identically (constant map into a zero).
    Infinite,
}

impl Multiplicity {
    pub fn satisfies(&self, required: u32) -> bool {
        match self {
            Multiplicity::Finite(m) => *m >= required,
            Multiplicity::Infinite => true,
        }
    }
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "infinite"),
        }
    }
}

/// Multiplicity of `w` as a zero of `B ∘ φ`.
///
/// For constant `φ ≡ c` the composite either vanishes identically (when
/// `B(c) = 0`) or not at all. Otherwise the zeros of `B_{a_k}` are simple,
/// so the multiplicity is `m_k` times the vanishing order of `φ − a_k` at
/// `w`, where `a_k` is the zero of `B` matched by `φ(w)`.
pub fn mult_of_composite(
    b: &BlaschkeProduct,
    phi: &SelfMap,
    w: Complex,
) -> Result<Multiplicity, Error> {
    mult_of_composite_with(b, phi, w, 4, &Tolerances::default())
}

/// [`mult_of_composite`] with an explicit starting jet order and tolerances.
/// The jet order doubles until the vanishing order is resolved or the cap is
/// reached, at which point an explicit inconclusive error is returned.
pub fn mult_of_composite_with(
    b: &BlaschkeProduct,
    phi: &SelfMap,
    w: Complex,
    start_order: u32,
    tol: &Tolerances,
) -> Result<Multiplicity, Error> {
    if w.norm() >= 1.0 {
        return Err(Error::domain("multiplicities are taken at interior points"));
    }
    if let Some(c) = phi.constant_value() {
        let hits_zero = c.norm() < 1.0 && b.mult_at(c, tol.eps_match) > 0;
        return Ok(if hits_zero {
            Multiplicity::Infinite
        } else {
            Multiplicity::Finite(0)
        });
    }
    let v = phi.eval(w)?;
    let Some(idx) = b.zero_index_at(v, tol.eps_match) else {
        return Ok(Multiplicity::Finite(0));
    };
    let (a_k, m_k) = b.factors()[idx];

    let cap = tol.jet_order_cap.min(JET_ORDER_CAP);
    let mut order = start_order.max(1).min(cap);
    loop {
        let jet = phi.jet(w, order)?.shift(-a_k).zero_constant();
        match jet.order_of_vanishing(tol.vanish) {
            Vanishing::Order(l) => return Ok(Multiplicity::Finite(m_k * l)),
            Vanishing::ExceedsOrder => {
                if order >= cap {
                    return Err(Error::Inconclusive(format!(
                        "vanishing order of the composite at {w} exceeds the jet cap {cap}"
                    )));
                }
                order = (order * 2).min(cap);
            }
        }
    }
}

/// One row of a containment report.
#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    /// Multiplicity comparison at a zero of the target product.
    ZeroMultiplicity {
        zero: Complex,
        required: u32,
        observed: Multiplicity,
        ok: bool,
    },
    /// Mass domination at an atom of the target measure.
    AtomMass {
        angle: f64,
        required: f64,
        available: f64,
        ok: bool,
    },
}

impl Check {
    pub fn ok(&self) -> bool {
        match self {
            Check::ZeroMultiplicity { ok, .. } | Check::AtomMass { ok, .. } => *ok,
        }
    }

    /// Slack of the comparison; zero marks a boundary case.
    pub fn margin(&self) -> Option<f64> {
        match self {
            Check::ZeroMultiplicity {
                required,
                observed: Multiplicity::Finite(o),
                ..
            } => Some(*o as f64 - *required as f64),
            Check::ZeroMultiplicity {
                observed: Multiplicity::Infinite,
                ..
            } => None,
            Check::AtomMass {
                required,
                available,
                ..
            } => Some(available - required),
        }
    }
}

/// Outcome of a containment decision: the flag plus the full per-zero /
/// per-atom comparison table and any convention notes.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    contained: bool,
    checks: Vec<Check>,
    notes: Vec<String>,
}

impl Verdict {
    /// Builds a verdict from its comparison table; the flag is the
    /// conjunction of the rows, so a verdict can never disagree with its
    /// own witness.
    pub fn from_checks(checks: Vec<Check>, notes: Vec<String>) -> Verdict {
        let contained = checks.iter().all(Check::ok);
        Verdict {
            contained,
            checks,
            notes,
        }
    }

    pub fn contained(&self) -> bool {
        self.contained
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// The failed rows.
    pub fn deficits(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok())
    }

    /// Whether some comparison holds with zero slack.
    pub fn boundary_case(&self) -> bool {
        self.checks
            .iter()
            .any(|c| c.ok() && c.margin().is_some_and(|m| m.abs() < 1e-12))
    }

    pub fn push_note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Concatenation of two reports (used by split decisions). Notes both
    /// sides carry are kept once.
    pub fn merge(mut self, other: Verdict) -> Verdict {
        self.checks.extend(other.checks);
        for note in other.notes {
            if !self.notes.contains(&note) {
                self.notes.push(note);
            }
        }
        Verdict::from_checks(self.checks, self.notes)
    }
}
