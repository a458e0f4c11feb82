//! Truncated complex Taylor expansions (jets) at a point of the disk.
//!
//! A jet of order `K` at a base point `a` stores the Taylor coefficients
//! `c_l = f^{(l)}(a)/l!` for `l = 0..=K`. Storing coefficients rather than
//! raw derivatives keeps magnitudes tame for orders up to the escalation
//! cap. Arithmetic requires matching base points and orders; composition
//! substitutes one truncated series into another. The order of vanishing of
//! a jet is what the rest of the crate uses to read off multiplicities of
//! zeros.

use crate::error::Error;
use crate::tolerance::{EPS_MATCH, VANISH_TOL};
use crate::Complex;

/// Outcome of an order-of-vanishing query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vanishing {
    /// Index of the first coefficient above the relative threshold.
    Order(u32),
    /// Every stored coefficient tested as zero; the true order exceeds the
    /// jet order. Callers escalate the order and retry.
    ExceedsOrder,
}

/// Truncated Taylor expansion `Σ c_l (z - base)^l`, `l = 0..=order`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base: Complex,
    coeffs: Vec<Complex>,
}

impl Jet {
    /// Jet with explicitly given coefficients `c_0..=c_K`.
    pub fn from_coeffs(base: Complex, coeffs: Vec<Complex>) -> Result<Jet, Error> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a jet needs at least the constant term"));
        }
        if !base.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("jet coefficients must be finite".into()));
        }
        Ok(Jet { base, coeffs })
    }

    /// Jet of the constant function `value`.
    pub fn constant(value: Complex, base: Complex, order: u32) -> Jet {
        let mut coeffs = vec![Complex::ZERO; order as usize + 1];
        coeffs[0] = value;
        Jet { base, coeffs }
    }

    /// Jet of the identity map `z ↦ z`.
    pub fn variable(base: Complex, order: u32) -> Jet {
        let mut coeffs = vec![Complex::ZERO; order as usize + 1];
        coeffs[0] = base;
        if order >= 1 {
            coeffs[1] = Complex::ONE;
        }
        Jet { base, coeffs }
    }

    /// Jet of the affine map `z ↦ c0 + c1·(z - base)`.
    pub fn affine(base: Complex, c0: Complex, c1: Complex, order: u32) -> Jet {
        let mut coeffs = vec![Complex::ZERO; order as usize + 1];
        coeffs[0] = c0;
        if order >= 1 {
            coeffs[1] = c1;
        }
        Jet { base, coeffs }
    }

    pub fn base(&self) -> Complex {
        self.base
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Value of the expanded function at the base point (`c_0`).
    pub fn value(&self) -> Complex {
        self.coeffs[0]
    }

    /// `l`-th derivative at the base point, `l! · c_l`.
    pub fn derivative(&self, l: u32) -> Option<Complex> {
        let c = self.coeffs.get(l as usize)?;
        let mut fact = 1.0_f64;
        for k in 2..=l {
            fact *= k as f64;
        }
        Some(c * fact)
    }

    fn check_compatible(&self, other: &Jet) -> Result<(), Error> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::JetMismatch(format!(
                "orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        if (self.base - other.base).norm() > EPS_MATCH {
            return Err(Error::JetMismatch(format!(
                "base points differ: {} vs {}",
                self.base, other.base
            )));
        }
        Ok(())
    }

    /// Coefficientwise sum. Requires equal base and order.
    pub fn add(&self, other: &Jet) -> Result<Jet, Error> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Jet { base: self.base, coeffs })
    }

    /// Coefficientwise difference. Requires equal base and order.
    pub fn sub(&self, other: &Jet) -> Result<Jet, Error> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Jet { base: self.base, coeffs })
    }

    pub fn neg(&self) -> Jet {
        Jet {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: Complex) -> Jet {
        Jet {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Adds a constant to the function (shifts `c_0` only).
    pub fn shift(&self, s: Complex) -> Jet {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += s;
        Jet { base: self.base, coeffs }
    }

    /// Clears the constant term. Used after matching `c_0` against a known
    /// value, so the residual does not masquerade as a nonzero coefficient.
    pub fn zero_constant(&self) -> Jet {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = Complex::ZERO;
        Jet { base: self.base, coeffs }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Jet) -> Result<Jet, Error> {
        self.check_compatible(other)?;
        let n = self.coeffs.len();
        let mut coeffs = vec![Complex::ZERO; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Jet { base: self.base, coeffs })
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, exp: u32) -> Jet {
        let mut acc = Jet::constant(Complex::ONE, self.base, self.order());
        for _ in 0..exp {
            acc = acc.mul(self).expect("same base and order");
        }
        acc
    }

    /// Truncated series quotient. The divisor must not vanish at the base.
    pub fn div(&self, other: &Jet) -> Result<Jet, Error> {
        self.check_compatible(other)?;
        let d0 = other.coeffs[0];
        if d0.norm() == 0.0 {
            return Err(Error::Domain(
                "series division by a jet vanishing at its base".into(),
            ));
        }
        let n = self.coeffs.len();
        let mut q = vec![Complex::ZERO; n];
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= other.coeffs[j] * q[k - j];
            }
            q[k] = acc / d0;
        }
        Ok(Jet { base: self.base, coeffs: q })
    }

    /// Truncated series exponential.
    pub fn exp(&self) -> Jet {
        let n = self.coeffs.len();
        let mut e = vec![Complex::ZERO; n];
        e[0] = self.coeffs[0].exp();
        for k in 1..n {
            let mut acc = Complex::ZERO;
            for j in 1..=k {
                acc += self.coeffs[j] * e[k - j] * (j as f64);
            }
            e[k] = acc / (k as f64);
        }
        Jet { base: self.base, coeffs: e }
    }

    /// Composite `outer ∘ f` where `f` is the function expanded by `self`.
    ///
    /// `outer` must be expanded at this jet's value (`outer.base = c_0`),
    /// and orders must agree. The substitution runs Horner-style on the
    /// centered series, which is exact through the common order.
    pub fn compose(outer: &Jet, inner: &Jet) -> Result<Jet, Error> {
        if outer.coeffs.len() != inner.coeffs.len() {
            return Err(Error::JetMismatch(format!(
                "orders differ: {} vs {}",
                outer.order(),
                inner.order()
            )));
        }
        if (outer.base - inner.coeffs[0]).norm() > EPS_MATCH {
            return Err(Error::JetMismatch(format!(
                "outer jet expanded at {} but inner map takes value {}",
                outer.base, inner.coeffs[0]
            )));
        }
        let mut centered = inner.clone();
        centered.coeffs[0] = Complex::ZERO;
        let mut acc = Jet::constant(
            outer.coeffs[outer.coeffs.len() - 1],
            inner.base,
            inner.order(),
        );
        for k in (0..outer.coeffs.len() - 1).rev() {
            acc = acc.mul(&centered)?.shift(outer.coeffs[k]);
        }
        Ok(acc)
    }

    /// Smallest `l` with `|c_l|` above `tol` relative to the largest
    /// coefficient magnitude (never below absolute scale 1).
    pub fn order_of_vanishing(&self, tol: f64) -> Vanishing {
        let max_mag = self
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0_f64, f64::max);
        let threshold = tol * max_mag.max(1.0);
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.norm() > threshold {
                return Vanishing::Order(l as u32);
            }
        }
        Vanishing::ExceedsOrder
    }

    /// [`Jet::order_of_vanishing`] with the default relative threshold.
    pub fn vanishing_order(&self) -> Vanishing {
        self.order_of_vanishing(VANISH_TOL)
    }
}
