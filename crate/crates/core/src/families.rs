//! Generators for the explicit families of self-maps that keep a Blaschke
//! subspace invariant, and a rigidity scanner for products whose
//! multiplicity pattern rules out every nontrivial automorphism.
//!
//! Each family is parameterized by a free slot `ψ`, `g` or `h` ranging over
//! the closed unit ball of bounded functions. The artifact's sampled pool
//! (see [`pool`]) consists of monomials `λz^d`, finite Blaschke products
//! and constants; arbitrary structured maps are accepted in the slots as
//! well, since the generated map only uses them through composition and
//! pointwise products.

use crate::containment::decide_blaschke_with;
use crate::error::Error;
use crate::inner::{BlaschkeProduct, InnerFunction, SelfMap, Verdict};
use crate::moebius::{cycle_map, swap_map, Moebius};
use crate::tolerance::{Tolerances, EPS_MATCH};
use crate::{unit, Complex};

/// Branch selector for the equal-multiplicity two-zero family
/// `∪_g {B_a∘(B_aB_b·g), B_b∘(B_aB_b·g)} ∪ {I, φ_{a,b}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoZeroEqualBranch {
    InnerAtFirst,
    InnerAtSecond,
    Identity,
    Swap,
}

/// Branch selector for the unequal-multiplicity two-zero family
/// `∪_g {B_a∘(B_aB_b·g), B_b∘(B_a^kB_b·g)} ∪ {I}` with `k = ⌈m/n⌉`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoZeroUnequalBranch {
    InnerAtFirst,
    InnerAtSecond,
    Identity,
}

/// A parameterized member of one of the invariance families.
///
/// Free slots (`psi`, `g`, `h`) default to the constant 1 when absent.
#[derive(Debug, Clone)]
pub enum FamilySpec {
    /// For `B = γB_a^m`: all of `L_B` is `{B_a∘ψ∘B_a : ψ(0) = 0}`.
    OneZero {
        a: Complex,
        mult: u32,
        psi: SelfMap,
    },
    /// For `B = γ(B_aB_b)^n`.
    TwoZeroEqual {
        a: Complex,
        b: Complex,
        mult: u32,
        g: Option<SelfMap>,
        branch: TwoZeroEqualBranch,
    },
    /// For `B = γB_a^mB_b^n` with `m > n`.
    TwoZeroUnequal {
        a: Complex,
        b: Complex,
        m: u32,
        n: u32,
        g: Option<SelfMap>,
        branch: TwoZeroUnequalBranch,
    },
    /// Maps sending every zero to the zero `a_j`:
    /// `φ = B_{a_j}∘(h·∏B_{a_i}^{k_i})` with `k_i = ⌈m_i/m_j⌉`.
    FixAllToTarget {
        zeros: Vec<(Complex, u32)>,
        target: usize,
        h: Option<SelfMap>,
    },
    /// The nontrivial map `φ = B_{a_k}∘B` attached to any finite product,
    /// where `a_k` carries the maximal multiplicity.
    MaxMultSelfMap { blaschke: BlaschkeProduct },
}

impl FamilySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::OneZero { .. } => "one_zero",
            FamilySpec::TwoZeroEqual { .. } => "two_zero_equal",
            FamilySpec::TwoZeroUnequal { .. } => "two_zero_unequal",
            FamilySpec::FixAllToTarget { .. } => "fix_all_to_aj",
            FamilySpec::MaxMultSelfMap { .. } => "max_mult_selfmap",
        }
    }

    /// The Blaschke product the family belongs to.
    pub fn blaschke(&self) -> Result<BlaschkeProduct, Error> {
        match self {
            FamilySpec::OneZero { a, mult, .. } => BlaschkeProduct::single(*a, *mult),
            FamilySpec::TwoZeroEqual { a, b, mult, .. } => {
                BlaschkeProduct::new(Complex::ONE, vec![(*a, *mult), (*b, *mult)])
            }
            FamilySpec::TwoZeroUnequal { a, b, m, n, .. } => {
                BlaschkeProduct::new(Complex::ONE, vec![(*a, *m), (*b, *n)])
            }
            FamilySpec::FixAllToTarget { zeros, .. } => {
                BlaschkeProduct::new(Complex::ONE, zeros.clone())
            }
            FamilySpec::MaxMultSelfMap { blaschke } => Ok(blaschke.clone()),
        }
    }
}

fn check_in_disk(z: Complex, what: &str) -> Result<(), Error> {
    if !z.is_finite() || z.norm() >= 1.0 {
        return Err(Error::invalid(format!("{what} must lie inside the disk")));
    }
    Ok(())
}

fn product_with_slot(slot: &Option<SelfMap>, inner: BlaschkeProduct) -> Result<SelfMap, Error> {
    let inner_map = SelfMap::Inner(InnerFunction::from_blaschke(inner));
    match slot {
        None => Ok(inner_map),
        Some(g) => {
            g.validate()?;
            Ok(SelfMap::Product(vec![g.clone(), inner_map]))
        }
    }
}

/// Builds the self-map a [`FamilySpec`] describes, as an explicit chain.
pub fn generate(spec: &FamilySpec) -> Result<SelfMap, Error> {
    match spec {
        FamilySpec::OneZero { a, psi, .. } => {
            check_in_disk(*a, "the zero a")?;
            psi.validate()?;
            let at_zero = psi.eval(Complex::ZERO)?;
            if at_zero.norm() > EPS_MATCH {
                return Err(Error::invalid(format!(
                    "ψ must fix the origin; ψ(0) = {at_zero}"
                )));
            }
            let ba = SelfMap::Mob(Moebius::blaschke(*a)?);
            Ok(SelfMap::Chain(vec![ba.clone(), psi.clone(), ba]))
        }
        FamilySpec::TwoZeroEqual {
            a, b, g, branch, ..
        } => {
            check_in_disk(*a, "the zero a")?;
            check_in_disk(*b, "the zero b")?;
            if (a - b).norm() <= EPS_MATCH {
                return Err(Error::invalid("the two zeros must be distinct"));
            }
            match branch {
                TwoZeroEqualBranch::Identity => Ok(SelfMap::Identity),
                TwoZeroEqualBranch::Swap => Ok(SelfMap::Mob(swap_map(*a, *b)?)),
                TwoZeroEqualBranch::InnerAtFirst | TwoZeroEqualBranch::InnerAtSecond => {
                    let outer = if matches!(branch, TwoZeroEqualBranch::InnerAtFirst) {
                        *a
                    } else {
                        *b
                    };
                    let product = BlaschkeProduct::new(Complex::ONE, vec![(*a, 1), (*b, 1)])?;
                    Ok(SelfMap::Chain(vec![
                        SelfMap::Mob(Moebius::blaschke(outer)?),
                        product_with_slot(g, product)?,
                    ]))
                }
            }
        }
        FamilySpec::TwoZeroUnequal {
            a,
            b,
            m,
            n,
            g,
            branch,
        } => {
            check_in_disk(*a, "the zero a")?;
            check_in_disk(*b, "the zero b")?;
            if (a - b).norm() <= EPS_MATCH {
                return Err(Error::invalid("the two zeros must be distinct"));
            }
            if !(m > n && *n >= 1) {
                return Err(Error::invalid(
                    "the unequal two-zero family needs m > n >= 1",
                ));
            }
            match branch {
                TwoZeroUnequalBranch::Identity => Ok(SelfMap::Identity),
                TwoZeroUnequalBranch::InnerAtFirst => {
                    let product = BlaschkeProduct::new(Complex::ONE, vec![(*a, 1), (*b, 1)])?;
                    Ok(SelfMap::Chain(vec![
                        SelfMap::Mob(Moebius::blaschke(*a)?),
                        product_with_slot(g, product)?,
                    ]))
                }
                TwoZeroUnequalBranch::InnerAtSecond => {
                    let k = m.div_ceil(*n);
                    let product = BlaschkeProduct::new(Complex::ONE, vec![(*a, k), (*b, 1)])?;
                    Ok(SelfMap::Chain(vec![
                        SelfMap::Mob(Moebius::blaschke(*b)?),
                        product_with_slot(g, product)?,
                    ]))
                }
            }
        }
        FamilySpec::FixAllToTarget { zeros, target, h } => {
            if zeros.is_empty() {
                return Err(Error::invalid("the zero list must be nonempty"));
            }
            let Some((target_zero, target_mult)) = zeros.get(*target).copied() else {
                return Err(Error::invalid(format!(
                    "target index {target} out of range for {} zeros",
                    zeros.len()
                )));
            };
            let factors: Vec<(Complex, u32)> = zeros
                .iter()
                .map(|(a, m)| (*a, m.div_ceil(target_mult)))
                .collect();
            let product = BlaschkeProduct::new(Complex::ONE, factors)?;
            Ok(SelfMap::Chain(vec![
                SelfMap::Mob(Moebius::blaschke(target_zero)?),
                product_with_slot(h, product)?,
            ]))
        }
        FamilySpec::MaxMultSelfMap { blaschke } => {
            if blaschke.is_constant() {
                return Err(Error::invalid("the product needs at least one zero"));
            }
            let (a_k, _) = blaschke
                .factors()
                .iter()
                .max_by_key(|(_, m)| *m)
                .copied()
                .expect("nonempty factor list");
            Ok(SelfMap::Chain(vec![
                SelfMap::Mob(Moebius::blaschke(a_k)?),
                SelfMap::Inner(InnerFunction::from_blaschke(blaschke.clone())),
            ]))
        }
    }
}

fn factors_match(b: &BlaschkeProduct, expected: &BlaschkeProduct) -> bool {
    b.factors().len() == expected.factors().len()
        && expected
            .factors()
            .iter()
            .all(|(a, m)| b.mult_at(*a, EPS_MATCH) == *m)
}

/// Generates the family member and confirms it keeps `BH^p` invariant.
/// `B` must carry exactly the zeros and multiplicities the spec names.
pub fn verify_family_roundtrip(
    spec: &FamilySpec,
    b: &BlaschkeProduct,
) -> Result<Verdict, Error> {
    verify_family_roundtrip_with(spec, b, &Tolerances::default())
}

/// [`verify_family_roundtrip`] with explicit tolerances.
pub fn verify_family_roundtrip_with(
    spec: &FamilySpec,
    b: &BlaschkeProduct,
    tol: &Tolerances,
) -> Result<Verdict, Error> {
    let expected = spec.blaschke()?;
    if !factors_match(b, &expected) {
        return Err(Error::invalid(format!(
            "the product's zeros do not match the {} spec",
            spec.kind()
        )));
    }
    let phi = generate(spec)?;
    decide_blaschke_with(b, &phi, b, tol)
}

/// Outcome for one candidate permutation cycle in a rigidity scan.
#[derive(Debug, Clone)]
pub struct CycleCandidate {
    /// Indices into the factor list, in cycle order.
    pub cycle: Vec<usize>,
    /// Whether some disk automorphism realizes the cycle.
    pub realizable: bool,
    /// Engine verdict for the realizing automorphism.
    pub contained: Option<bool>,
}

/// Report of an exhaustive automorphism scan over a zero set.
#[derive(Debug, Clone)]
pub struct RigidityReport {
    pub candidates: Vec<CycleCandidate>,
    pub realizable: usize,
    pub random_trials: usize,
    pub random_contained: usize,
    /// No candidate and no random trial kept the subspace invariant.
    pub all_refuted: bool,
}

fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            let mut perm = vec![head];
            perm.append(&mut tail);
            out.push(perm);
        }
    }
    out
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Checks that no nontrivial automorphism keeps `BH^p` invariant, for a
/// product whose sorted multiplicities satisfy `m_{n−2} < m_{n−1} < m_n`
/// (just `m_1 < m_2` for two zeros).
///
/// Any automorphism permuting the zero set contains a cycle of length at
/// least 2 on it, and an automorphism is already determined by one such
/// cycle; so running [`cycle_map`] over every cyclic arrangement of every
/// subset enumerates all candidates exactly. `trials` additional random
/// automorphisms (seeded deterministically) probe the rest of the group.
pub fn automorphism_rigidity_scan(
    b: &BlaschkeProduct,
    trials: usize,
    seed: u64,
) -> Result<RigidityReport, Error> {
    let n = b.factors().len();
    if n < 2 {
        return Err(Error::Mode("the rigidity scan needs at least two zeros".into()));
    }
    if n > 8 {
        return Err(Error::Mode(
            "the exhaustive scan is limited to products with at most 8 zeros".into(),
        ));
    }
    let mut mults: Vec<u32> = b.factors().iter().map(|(_, m)| *m).collect();
    mults.sort_unstable();
    let hypothesis = if n == 2 {
        mults[0] < mults[1]
    } else {
        mults[n - 3] < mults[n - 2] && mults[n - 2] < mults[n - 1]
    };
    if !hypothesis {
        return Err(Error::Mode(
            "multiplicity hypothesis fails: the top multiplicities must be strictly separated"
                .into(),
        ));
    }

    let tol = Tolerances::default();
    let mut candidates = Vec::new();
    let mut realizable = 0usize;
    for size in 2..=n {
        for subset in subsets_of_size(n, size) {
            let head = subset[0];
            let rest = &subset[1..];
            for tail in permutations(rest) {
                let mut cycle = vec![head];
                cycle.extend(tail);
                let points: Vec<Complex> =
                    cycle.iter().map(|&i| b.factors()[i].0).collect();
                let automorphism = cycle_map(&points)?;
                let (is_realizable, contained) = match automorphism {
                    None => (false, None),
                    Some(m) => {
                        realizable += 1;
                        let verdict =
                            decide_blaschke_with(b, &SelfMap::Mob(m), b, &tol)?;
                        (true, Some(verdict.contained()))
                    }
                };
                candidates.push(CycleCandidate {
                    cycle,
                    realizable: is_realizable,
                    contained,
                });
            }
        }
    }

    let mut state = seed ^ 0xda3e_39cb_94b9_5bdb;
    let mut random_contained = 0usize;
    for _ in 0..trials {
        let gamma = unit(std::f64::consts::TAU * splitmix(&mut state));
        let a = Complex::from_polar(
            0.9 * splitmix(&mut state).sqrt(),
            std::f64::consts::TAU * splitmix(&mut state),
        );
        let m = Moebius::new(gamma, a)?;
        if m.is_identity() {
            continue;
        }
        let verdict = decide_blaschke_with(b, &SelfMap::Mob(m), b, &tol)?;
        if verdict.contained() {
            random_contained += 1;
        }
    }

    let all_refuted = candidates
        .iter()
        .all(|c| c.contained != Some(true))
        && random_contained == 0;
    Ok(RigidityReport {
        candidates,
        realizable,
        random_trials: trials,
        random_contained,
        all_refuted,
    })
}

/// The documented parameter pool for the free family slots.
pub mod pool {
    use super::*;

    /// The monomial `λ·z^d` with `0 < |λ| ≤ 1`, `d ≥ 1`.
    pub fn monomial(lambda: Complex, degree: u32) -> Result<SelfMap, Error> {
        if degree == 0 {
            return ball_constant(lambda);
        }
        if lambda.norm() == 0.0 || lambda.norm() > 1.0 + crate::tolerance::UNIMODULAR_TOL {
            return Err(Error::invalid("monomial coefficient needs 0 < |λ| ≤ 1"));
        }
        let power = BlaschkeProduct::single(Complex::ZERO, degree)?;
        if (lambda.norm() - 1.0).abs() <= crate::tolerance::UNIMODULAR_TOL {
            let scaled = BlaschkeProduct::new(lambda, power.factors().to_vec())?;
            Ok(SelfMap::Inner(InnerFunction::from_blaschke(scaled)))
        } else {
            Ok(SelfMap::Chain(vec![
                SelfMap::Scale(lambda),
                SelfMap::Inner(InnerFunction::from_blaschke(power)),
            ]))
        }
    }

    /// A constant of the closed unit ball.
    pub fn ball_constant(c: Complex) -> Result<SelfMap, Error> {
        if !c.is_finite() || c.norm() > 1.0 + crate::tolerance::UNIMODULAR_TOL {
            return Err(Error::invalid("ball constants need |c| ≤ 1"));
        }
        if (c.norm() - 1.0).abs() <= crate::tolerance::UNIMODULAR_TOL {
            Ok(SelfMap::Inner(InnerFunction::from_blaschke(
                BlaschkeProduct::constant(c)?,
            )))
        } else {
            Ok(SelfMap::Constant(c))
        }
    }

    /// A finite Blaschke product member.
    pub fn blaschke_member(b: BlaschkeProduct) -> SelfMap {
        SelfMap::Inner(InnerFunction::from_blaschke(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::containment::decide_blaschke;

    #[test]
    fn one_zero_member_fixes_its_point() {
        let a = c64(0.3, 0.0);
        let spec = FamilySpec::OneZero {
            a,
            mult: 2,
            psi: pool::monomial(Complex::ONE, 2).unwrap(),
        };
        let phi = generate(&spec).unwrap();
        assert!((phi.eval(a).unwrap() - a).norm() < 1e-11);
        let b = BlaschkeProduct::new(unit(0.5), vec![(a, 2)]).unwrap();
        let v = verify_family_roundtrip(&spec, &b).unwrap();
        assert!(v.contained());
    }

    #[test]
    fn one_zero_rejects_non_vanishing_psi() {
        let spec = FamilySpec::OneZero {
            a: c64(0.3, 0.0),
            mult: 1,
            psi: SelfMap::Constant(c64(0.5, 0.0)),
        };
        assert!(matches!(generate(&spec), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn two_zero_equal_all_branches_are_contained() {
        let (a, bz) = (c64(0.25, 0.1), c64(-0.3, 0.35));
        let b = BlaschkeProduct::new(Complex::ONE, vec![(a, 2), (bz, 2)]).unwrap();
        for branch in [
            TwoZeroEqualBranch::InnerAtFirst,
            TwoZeroEqualBranch::InnerAtSecond,
            TwoZeroEqualBranch::Identity,
            TwoZeroEqualBranch::Swap,
        ] {
            let spec = FamilySpec::TwoZeroEqual {
                a,
                b: bz,
                mult: 2,
                g: Some(pool::ball_constant(c64(0.4, 0.2)).unwrap()),
                branch,
            };
            let v = verify_family_roundtrip(&spec, &b).unwrap();
            assert!(v.contained(), "branch {branch:?}: {:?}", v.checks());
        }
    }

    #[test]
    fn two_zero_unequal_second_branch_uses_the_ceiling_power() {
        let (a, bz) = (c64(0.2, 0.0), c64(-0.4, 0.1));
        let spec = FamilySpec::TwoZeroUnequal {
            a,
            b: bz,
            m: 3,
            n: 2,
            g: None,
            branch: TwoZeroUnequalBranch::InnerAtSecond,
        };
        let phi = generate(&spec).unwrap();
        // Expect B_b ∘ (B_a²B_b), built by hand for comparison.
        let inner = BlaschkeProduct::new(Complex::ONE, vec![(a, 2), (bz, 1)]).unwrap();
        let expected = SelfMap::Chain(vec![
            SelfMap::Mob(Moebius::blaschke(bz).unwrap()),
            SelfMap::Inner(InnerFunction::from_blaschke(inner)),
        ]);
        for z in [c64(0.1, 0.2), c64(-0.5, -0.3), Complex::ZERO] {
            assert!((phi.eval(z).unwrap() - expected.eval(z).unwrap()).norm() < 1e-13);
        }
        let b = BlaschkeProduct::new(Complex::ONE, vec![(a, 3), (bz, 2)]).unwrap();
        assert!(verify_family_roundtrip(&spec, &b).unwrap().contained());
    }

    #[test]
    fn two_zero_unequal_rejects_bad_multiplicities() {
        let spec = FamilySpec::TwoZeroUnequal {
            a: c64(0.2, 0.0),
            b: c64(-0.4, 0.1),
            m: 2,
            n: 2,
            g: None,
            branch: TwoZeroUnequalBranch::Identity,
        };
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn lowered_exponent_is_a_negative_control() {
        // Replacing the ceiling power k by k−1 breaks the derivative count.
        let (a, bz) = (c64(0.2, 0.0), c64(-0.4, 0.1));
        let b = BlaschkeProduct::new(Complex::ONE, vec![(a, 3), (bz, 2)]).unwrap();
        let weakened = BlaschkeProduct::new(Complex::ONE, vec![(a, 1), (bz, 1)]).unwrap();
        let phi = SelfMap::Chain(vec![
            SelfMap::Mob(Moebius::blaschke(bz).unwrap()),
            SelfMap::Inner(InnerFunction::from_blaschke(weakened)),
        ]);
        let v = decide_blaschke(&b, &phi, &b).unwrap();
        assert!(!v.contained());
    }

    #[test]
    fn fix_all_members_send_every_zero_to_the_target() {
        let zeros = vec![(c64(0.3, 0.0), 4), (c64(-0.2, 0.4), 2), (c64(0.1, -0.5), 1)];
        let spec = FamilySpec::FixAllToTarget {
            zeros: zeros.clone(),
            target: 1,
            h: Some(pool::monomial(c64(0.0, 0.8), 1).unwrap()),
        };
        let phi = generate(&spec).unwrap();
        for (z, _) in &zeros {
            assert!((phi.eval(*z).unwrap() - zeros[1].0).norm() < 1e-11);
        }
        let b = BlaschkeProduct::new(Complex::ONE, zeros).unwrap();
        assert!(verify_family_roundtrip(&spec, &b).unwrap().contained());
    }

    #[test]
    fn max_mult_member_composes_the_product_with_its_heaviest_factor() {
        let a = c64(0.3, 0.1);
        let bz = c64(-0.25, -0.2);
        let b = BlaschkeProduct::new(unit(0.8), vec![(a, 2), (bz, 1)]).unwrap();
        let spec = FamilySpec::MaxMultSelfMap {
            blaschke: b.clone(),
        };
        let phi = generate(&spec).unwrap();
        let ba = Moebius::blaschke(a).unwrap();
        for z in [c64(0.4, 0.2), c64(-0.1, 0.6)] {
            let expected = ba.eval(b.eval(z).unwrap()).unwrap();
            assert!((phi.eval(z).unwrap() - expected).norm() < 1e-13);
        }
        assert!(verify_family_roundtrip(&spec, &b).unwrap().contained());
    }

    #[test]
    fn roundtrip_rejects_mismatched_products() {
        let spec = FamilySpec::OneZero {
            a: c64(0.3, 0.0),
            mult: 2,
            psi: pool::monomial(Complex::ONE, 1).unwrap(),
        };
        let wrong = BlaschkeProduct::single(c64(0.3, 0.0), 3).unwrap();
        assert!(verify_family_roundtrip(&spec, &wrong).is_err());
    }

    #[test]
    fn rigidity_scan_refutes_the_two_zero_swap() {
        let b =
            BlaschkeProduct::new(Complex::ONE, vec![(c64(0.25, 0.1), 1), (c64(-0.3, 0.3), 2)])
                .unwrap();
        let report = automorphism_rigidity_scan(&b, 25, 7).unwrap();
        assert!(report.all_refuted);
        assert_eq!(report.candidates.len(), 1);
        assert!(report.candidates[0].realizable);
        assert_eq!(report.candidates[0].contained, Some(false));
    }

    #[test]
    fn rigidity_scan_handles_three_zeros() {
        let b = BlaschkeProduct::new(
            Complex::ONE,
            vec![(c64(0.25, 0.1), 1), (c64(-0.3, 0.3), 2), (c64(0.0, -0.4), 3)],
        )
        .unwrap();
        let report = automorphism_rigidity_scan(&b, 25, 11).unwrap();
        // 3 transpositions plus 2 cyclic orders of the full triple.
        assert_eq!(report.candidates.len(), 5);
        assert!(report.all_refuted);
        // Swaps are always realizable; full 3-cycles rarely are.
        assert!(report.realizable >= 3);
    }

    #[test]
    fn rigidity_scan_enforces_its_hypothesis() {
        let equal = BlaschkeProduct::new(
            Complex::ONE,
            vec![(c64(0.25, 0.1), 2), (c64(-0.3, 0.3), 2)],
        )
        .unwrap();
        assert!(matches!(
            automorphism_rigidity_scan(&equal, 5, 1),
            Err(Error::Mode(_))
        ));
        let single = BlaschkeProduct::single(c64(0.2, 0.0), 1).unwrap();
        assert!(matches!(
            automorphism_rigidity_scan(&single, 5, 1),
            Err(Error::Mode(_))
        ));
    }

    #[test]
    fn pool_members_respect_their_contracts() {
        let mono = pool::monomial(c64(0.0, 0.5), 3).unwrap();
        let z = c64(0.4, 0.3);
        let expected = c64(0.0, 0.5) * z * z * z;
        assert!((mono.eval(z).unwrap() - expected).norm() < 1e-14);

        let um = pool::monomial(unit(0.7), 2).unwrap();
        assert!((um.eval(z).unwrap() - unit(0.7) * z * z).norm() < 1e-14);

        assert!(pool::ball_constant(c64(1.2, 0.0)).is_err());
        assert!(pool::monomial(Complex::ZERO, 2).is_err());
        let unimodular = pool::ball_constant(unit(1.0)).unwrap();
        assert!((unimodular.eval(z).unwrap() - unit(1.0)).norm() < 1e-14);
    }
}
