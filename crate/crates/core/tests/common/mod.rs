//! Shared test support: an independent finite-difference derivative oracle
//! and seeded generators for problem instances.

#![allow(dead_code)]

use beurling::containment::{decide_blaschke, decide_l_membership, decide_split};
use beurling::families::{generate, pool, FamilySpec};
use beurling::inner::{AtomicMeasure, BlaschkeProduct, InnerFunction, SelfMap, Verdict};
use beurling::moebius::{swap_map, Moebius};
use beurling::{unit, Complex};
use rand::rngs::StdRng;
use rand::Rng;

/// Richardson-extrapolated central finite differences.
///
/// Plain central differences cannot reach 1e-6 relative accuracy for third
/// derivatives in double precision (the rounding floor is ~1e-5), so each
/// stencil is evaluated at two step sizes and extrapolated once. The
/// stencils remain symmetric differences along the real direction and are
/// entirely independent of the jet arithmetic they check.
pub mod fd {
    use beurling::Complex;

    pub fn derivative<F: Fn(Complex) -> Complex>(f: &F, z: Complex, order: u32) -> Complex {
        match order {
            1 => richardson(&|h| (f(z + h) - f(z - h)) / (2.0 * h), 1e-4),
            2 => richardson(
                &|h| (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h),
                2e-3,
            ),
            3 => richardson(
                &|h| {
                    (f(z + 2.0 * h) - 2.0 * f(z + h) + 2.0 * f(z - h) - f(z - 2.0 * h))
                        / (2.0 * h * h * h)
                },
                4e-3,
            ),
            _ => panic!("finite-difference oracle supports orders 1..=3"),
        }
    }

    fn richardson(d: &impl Fn(f64) -> Complex, h: f64) -> Complex {
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }
}

pub fn disk_point(rng: &mut StdRng, max_r: f64) -> Complex {
    let r = max_r * rng.gen::<f64>().sqrt();
    Complex::from_polar(r, rng.gen::<f64>() * std::f64::consts::TAU)
}

/// Zeros kept well separated and away from the boundary so that witnesses
/// stay numerically visible.
pub fn separated_zeros(rng: &mut StdRng, count: usize, max_r: f64, min_sep: f64) -> Vec<Complex> {
    let mut zeros: Vec<Complex> = Vec::with_capacity(count);
    while zeros.len() < count {
        let cand = disk_point(rng, max_r);
        if zeros.iter().all(|z| (z - cand).norm() >= min_sep) {
            zeros.push(cand);
        }
    }
    zeros
}

pub fn random_blaschke(rng: &mut StdRng, max_zeros: usize, max_mult: u32) -> BlaschkeProduct {
    let n = rng.gen_range(1..=max_zeros);
    let zeros = separated_zeros(rng, n, 0.6, 0.3);
    let factors = zeros
        .into_iter()
        .map(|z| (z, rng.gen_range(1..=max_mult)))
        .collect();
    BlaschkeProduct::new(unit(rng.gen::<f64>() * std::f64::consts::TAU), factors).unwrap()
}

pub fn random_measure(rng: &mut StdRng, max_atoms: usize) -> AtomicMeasure {
    let n = rng.gen_range(1..=max_atoms);
    let mut angles: Vec<f64> = Vec::new();
    while angles.len() < n {
        let cand = rng.gen::<f64>() * std::f64::consts::TAU;
        if angles
            .iter()
            .all(|a| beurling::tolerance::angular_distance(*a, cand) > 0.2)
        {
            angles.push(cand);
        }
    }
    AtomicMeasure::new(
        angles
            .into_iter()
            .map(|a| (a, rng.gen_range(0.2..1.5)))
            .collect(),
    )
    .unwrap()
}

pub fn random_moebius(rng: &mut StdRng, max_a: f64) -> Moebius {
    Moebius::new(
        unit(rng.gen::<f64>() * std::f64::consts::TAU),
        disk_point(rng, max_a),
    )
    .unwrap()
}

/// Elliptic automorphism with a prescribed interior fixed point.
pub fn random_elliptic(rng: &mut StdRng) -> Moebius {
    let omega = disk_point(rng, 0.6);
    let b = Moebius::blaschke(omega).unwrap();
    let rot = Moebius::rotation(unit(rng.gen_range(0.2..std::f64::consts::TAU - 0.2))).unwrap();
    b.compose(&rot).compose(&b)
}

pub fn random_inner(rng: &mut StdRng, with_measure: bool) -> InnerFunction {
    let b = random_blaschke(rng, 3, 3);
    let measure = if with_measure && rng.gen_bool(0.8) {
        random_measure(rng, 2)
    } else {
        AtomicMeasure::empty()
    };
    InnerFunction::new(b, measure, unit(rng.gen::<f64>() * std::f64::consts::TAU)).unwrap()
}

/// A member of the documented slot pool for family parameters.
pub fn random_pool_member(rng: &mut StdRng) -> SelfMap {
    match rng.gen_range(0..3) {
        0 => pool::monomial(
            Complex::from_polar(rng.gen_range(0.3..1.0), rng.gen::<f64>()),
            rng.gen_range(1..=3),
        )
        .unwrap(),
        1 => pool::ball_constant(disk_point(rng, 0.8)).unwrap(),
        _ => pool::blaschke_member(random_blaschke(rng, 2, 2)),
    }
}

/// A pool member fixing the origin, for the `ψ` slot.
pub fn random_origin_fixing(rng: &mut StdRng) -> SelfMap {
    match rng.gen_range(0..2) {
        0 => pool::monomial(
            Complex::from_polar(rng.gen_range(0.3..1.0), rng.gen::<f64>()),
            rng.gen_range(1..=3),
        )
        .unwrap(),
        _ => {
            let mut factors = vec![(Complex::ZERO, rng.gen_range(1..=2))];
            factors.push((
                Complex::from_polar(rng.gen_range(0.2..0.6), rng.gen::<f64>() * std::f64::consts::TAU),
                1,
            ));
            pool::blaschke_member(BlaschkeProduct::new(Complex::ONE, factors).unwrap())
        }
    }
}

/// Structured self-maps with tame derivatives at interior points, for
/// comparing jets against finite differences.
pub fn random_benign_map(rng: &mut StdRng, depth: u32) -> SelfMap {
    let atom = |rng: &mut StdRng| -> SelfMap {
        match rng.gen_range(0..4) {
            0 => SelfMap::Mob(random_moebius(rng, 0.6)),
            1 => {
                let b = random_blaschke(rng, 2, 2);
                let measure = if rng.gen_bool(0.5) {
                    AtomicMeasure::new(vec![(
                        rng.gen::<f64>() * std::f64::consts::TAU,
                        rng.gen_range(0.1..0.8),
                    )])
                    .unwrap()
                } else {
                    AtomicMeasure::empty()
                };
                SelfMap::Inner(InnerFunction::new(b, measure, Complex::ONE).unwrap())
            }
            2 => SelfMap::Scale(Complex::from_polar(
                rng.gen_range(0.3..1.0),
                rng.gen::<f64>(),
            )),
            _ => SelfMap::Identity,
        }
    };
    if depth == 0 || rng.gen_bool(0.4) {
        atom(rng)
    } else if rng.gen_bool(0.75) {
        SelfMap::Chain(vec![atom(rng), random_benign_map(rng, depth - 1)])
    } else {
        SelfMap::Product(vec![atom(rng), random_benign_map(rng, depth - 1)])
    }
}

/// A problem instance with its engine verdict.
pub struct Instance {
    pub theta1: InnerFunction,
    pub phi: SelfMap,
    pub theta2: InnerFunction,
    pub verdict: Verdict,
    pub label: &'static str,
}

fn family_invariance_map(rng: &mut StdRng, b: &BlaschkeProduct) -> SelfMap {
    let zeros: Vec<(Complex, u32)> = b.factors().to_vec();
    match rng.gen_range(0..3) {
        0 => generate(&FamilySpec::MaxMultSelfMap {
            blaschke: b.clone(),
        })
        .unwrap(),
        1 => generate(&FamilySpec::FixAllToTarget {
            target: rng.gen_range(0..zeros.len()),
            zeros,
            h: if rng.gen_bool(0.5) {
                Some(random_pool_member(rng))
            } else {
                None
            },
        })
        .unwrap(),
        _ => SelfMap::Identity,
    }
}

/// Instances the engine proves contained; the quotient oracle must stay
/// below `1 + EPS_BOUND` on all of them.
pub fn contained_instance(rng: &mut StdRng) -> Instance {
    match rng.gen_range(0..4) {
        0 => {
            let theta = random_inner(rng, true);
            let phi_m = random_elliptic(rng);
            let verdict = decide_split(&theta, &phi_m, &imprint(&theta, &phi_m)).unwrap();
            let instance = Instance {
                theta2: imprint(&theta, &phi_m),
                theta1: theta,
                phi: SelfMap::Mob(phi_m),
                verdict,
                label: "automorphism image",
            };
            assert!(instance.verdict.contained(), "generator bug: {:?}", instance.verdict);
            instance
        }
        1 => {
            let b = random_blaschke(rng, 3, 3);
            let phi = family_invariance_map(rng, &b);
            let verdict = decide_blaschke(&b, &phi, &b).unwrap();
            let instance = Instance {
                theta1: InnerFunction::from_blaschke(b.clone()),
                phi,
                theta2: InnerFunction::from_blaschke(b),
                verdict,
                label: "family member",
            };
            assert!(instance.verdict.contained(), "generator bug: {:?}", instance.verdict);
            instance
        }
        2 => {
            let theta = random_inner(rng, true);
            let verdict = decide_split(&theta, &Moebius::identity(), &theta).unwrap();
            let instance = Instance {
                theta1: theta.clone(),
                phi: SelfMap::Identity,
                theta2: theta,
                verdict,
                label: "identity",
            };
            assert!(instance.verdict.contained());
            instance
        }
        _ => {
            let b = random_blaschke(rng, 2, 3);
            let phi = family_invariance_map(rng, &b);
            let extra = random_inner(rng, true);
            let theta1 = InnerFunction::from_blaschke(b.clone()).multiply(&extra);
            let verdict = decide_l_membership(&theta1, &phi, &b).unwrap();
            let instance = Instance {
                theta1,
                phi,
                theta2: InnerFunction::from_blaschke(b),
                verdict,
                label: "extra inner factor",
            };
            assert!(instance.verdict.contained(), "generator bug: {:?}", instance.verdict);
            instance
        }
    }
}

/// The inner function generating the image subspace of `θ∘φ` for an
/// automorphism `φ`: Blaschke zeros pulled back, measure pushed forward.
pub fn imprint(theta: &InnerFunction, phi: &Moebius) -> InnerFunction {
    InnerFunction::new(
        theta.blaschke().precompose_automorphism(phi).unwrap(),
        theta.measure().pushforward(phi),
        Complex::ONE,
    )
    .unwrap()
}

/// Instances the engine refutes, with witnesses strong enough for the
/// oracle to confirm after refinement.
pub fn refuted_instance(rng: &mut StdRng) -> Instance {
    match rng.gen_range(0..5) {
        0 => {
            // Swap of zeros with a multiplicity gap.
            let zeros = separated_zeros(rng, 2, 0.6, 0.3);
            let n = rng.gen_range(1..=2u32);
            let d = rng.gen_range(1..=2u32);
            let b = BlaschkeProduct::new(
                Complex::ONE,
                vec![(zeros[0], n + d), (zeros[1], n)],
            )
            .unwrap();
            let phi = SelfMap::Mob(swap_map(zeros[0], zeros[1]).unwrap());
            let verdict = decide_blaschke(&b, &phi, &b).unwrap();
            let instance = Instance {
                theta1: InnerFunction::from_blaschke(b.clone()),
                phi,
                theta2: InnerFunction::from_blaschke(b),
                verdict,
                label: "unequal swap",
            };
            assert!(!instance.verdict.contained());
            instance
        }
        1 => {
            // Collapse of every zero onto the lightest one.
            let zeros = separated_zeros(rng, 2, 0.6, 0.3);
            let m_k = rng.gen_range(1..=2u32);
            let m_j = m_k + rng.gen_range(1..=2u32);
            let b =
                BlaschkeProduct::new(Complex::ONE, vec![(zeros[0], m_k), (zeros[1], m_j)])
                    .unwrap();
            let bprime =
                BlaschkeProduct::new(Complex::ONE, vec![(zeros[0], 1), (zeros[1], 1)]).unwrap();
            let phi = SelfMap::Chain(vec![
                SelfMap::Mob(Moebius::blaschke(zeros[0]).unwrap()),
                SelfMap::Inner(InnerFunction::from_blaschke(bprime)),
            ]);
            let verdict = decide_blaschke(&b, &phi, &b).unwrap();
            let instance = Instance {
                theta1: InnerFunction::from_blaschke(b.clone()),
                phi,
                theta2: InnerFunction::from_blaschke(b),
                verdict,
                label: "collapse",
            };
            assert!(!instance.verdict.contained());
            instance
        }
        2 => {
            // Family member with the ceiling exponent lowered by one.
            let zeros = separated_zeros(rng, 2, 0.6, 0.3);
            let n = rng.gen_range(1..=2u32);
            let m = n * rng.gen_range(2..=3u32);
            let k = m.div_ceil(n);
            let b = BlaschkeProduct::new(Complex::ONE, vec![(zeros[0], m), (zeros[1], n)])
                .unwrap();
            let weakened =
                BlaschkeProduct::new(Complex::ONE, vec![(zeros[0], k - 1), (zeros[1], 1)])
                    .unwrap();
            let phi = SelfMap::Chain(vec![
                SelfMap::Mob(Moebius::blaschke(zeros[1]).unwrap()),
                SelfMap::Inner(InnerFunction::from_blaschke(weakened)),
            ]);
            let verdict = decide_blaschke(&b, &phi, &b).unwrap();
            let instance = Instance {
                theta1: InnerFunction::from_blaschke(b.clone()),
                phi,
                theta2: InnerFunction::from_blaschke(b),
                verdict,
                label: "lowered exponent",
            };
            assert!(!instance.verdict.contained());
            instance
        }
        3 => {
            // Singular target inflated beyond the pushforward.
            let mu1 = random_measure(rng, 3);
            let phi_m = random_elliptic(rng);
            let scale = rng.gen_range(1.2..1.8);
            let mu2 = AtomicMeasure::new(
                mu1.pushforward(&phi_m)
                    .atoms()
                    .iter()
                    .map(|(t, w)| (*t, w * scale))
                    .collect(),
            )
            .unwrap();
            let verdict = beurling::containment::decide_singular(&mu1, &phi_m, &mu2);
            let instance = Instance {
                theta1: InnerFunction::from_measure(mu1),
                phi: SelfMap::Mob(phi_m),
                theta2: InnerFunction::from_measure(mu2),
                verdict,
                label: "inflated measure",
            };
            assert!(!instance.verdict.contained());
            instance
        }
        _ => {
            // Pure Blaschke target with a zero the composite misses.
            let zeros = separated_zeros(rng, 3, 0.6, 0.3);
            let b1 = BlaschkeProduct::new(
                Complex::ONE,
                vec![(zeros[0], rng.gen_range(1..=2)), (zeros[1], 1)],
            )
            .unwrap();
            let b2 = b1.multiply(&BlaschkeProduct::single(zeros[2], rng.gen_range(1..=2)).unwrap());
            let theta1 = InnerFunction::from_blaschke(b1);
            let verdict = decide_l_membership(&theta1, &SelfMap::Identity, &b2).unwrap();
            let instance = Instance {
                theta1,
                phi: SelfMap::Identity,
                theta2: InnerFunction::from_blaschke(b2),
                verdict,
                label: "missing zero",
            };
            assert!(!instance.verdict.contained());
            instance
        }
    }
}
