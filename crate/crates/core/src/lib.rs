//! Invariance of Beurling subspaces under composition operators.
//!
//! Given inner functions `θ₁`, `θ₂` and a holomorphic self-map `φ` of the
//! unit disk, this crate decides whether `C_φ(θ₁H^p) ⊆ θ₂H^p`, i.e. whether
//! the composition operator `f ↦ f∘φ` maps one Beurling subspace into
//! another. Inner functions are represented exactly as finite Blaschke
//! products times atomic singular inner functions, so the decision reduces
//! to finite multiplicity and measure-domination checks:
//!
//! - [`containment`]: the exact decision engine (multiplicity criterion,
//!   derivative criterion, singular-measure domination, automorphism
//!   splitting, and routing between them);
//! - [`oracle`]: a grid-based estimator of `sup |θ₁∘φ| / |θ₂|` over the
//!   disk that cross-validates every symbolic verdict;
//! - [`families`]: generators for the explicit families of maps that keep
//!   a Blaschke subspace invariant, plus a rigidity scanner;
//! - [`jets`], [`moebius`], [`inner`]: the supporting machinery of
//!   truncated Taylor arithmetic, the disk-automorphism group, and the
//!   inner-function data model.
//!
//! All evaluation is pure and all types are immutable values, so everything
//! here is safe to use from any number of threads without coordination.
//!
//! ```
//! use beurling::containment::decide_blaschke;
//! use beurling::moebius::swap_map;
//! use beurling::{c64, BlaschkeProduct, SelfMap};
//!
//! // B has a double zero at a and a simple zero at b. Swapping the two
//! // zeros drops the multiplicity at a, so C_φ(BH^p) ⊄ BH^p, and the
//! // verdict names the offending zero.
//! let a = c64(0.3, 0.0);
//! let b = c64(-0.2, 0.4);
//! let product = BlaschkeProduct::new(c64(1.0, 0.0), vec![(a, 2), (b, 1)])?;
//! let swap = SelfMap::Mob(swap_map(a, b)?);
//! let verdict = decide_blaschke(&product, &swap, &product)?;
//! assert!(!verdict.contained());
//! assert_eq!(verdict.deficits().count(), 1);
//!
//! // The identity map always qualifies.
//! let trivial = decide_blaschke(&product, &SelfMap::Identity, &product)?;
//! assert!(trivial.contained());
//! # Ok::<(), beurling::Error>(())
//! ```

pub mod containment;
pub mod error;
pub mod families;
pub mod inner;
pub mod jets;
pub mod moebius;
pub mod oracle;
pub mod tolerance;

pub use containment::{Decision, Mode, Problem};
pub use families::FamilySpec;
pub use error::Error;
pub use inner::{
    AtomicMeasure, BlaschkeProduct, Check, Evaluate, InnerFunction, Multiplicity, SelfMap, Verdict,
};
pub use jets::{Jet, Vanishing};
pub use moebius::{AutomorphismClass, FixedPoint, Moebius};
pub use oracle::{Consistency, GridSpec, OracleFlag, OracleReport};
pub use tolerance::Tolerances;

/// The scalar type used throughout: double-precision complex numbers.
pub type Complex = num_complex::Complex64;

/// Convenience constructor for [`Complex`].
pub fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// The point `e^{iθ}` on the unit circle.
pub fn unit(angle: f64) -> Complex {
    Complex::from_polar(1.0, angle)
}
