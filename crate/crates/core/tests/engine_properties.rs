//! Cross-module invariants that tie the engine, the group theory and the
//! generators together.

mod common;

use beurling::containment::{auto_monotonicity, decide_blaschke, decide_l_membership};
use beurling::families::{generate, FamilySpec, TwoZeroUnequalBranch};
use beurling::inner::{BlaschkeProduct, InnerFunction, SelfMap};
use beurling::jets::Vanishing;
use beurling::moebius::{cycle_map, Moebius};
use beurling::{unit, Complex};
use common::{
    disk_point, random_blaschke, random_elliptic, random_inner, random_measure, random_moebius,
    separated_zeros,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn cycle_map_is_the_unique_cycling_automorphism() {
    // Build an elliptic automorphism first, take an orbit of a point, and
    // check that cycle_map recovers the same map from the orbit alone.
    let mut rng = StdRng::seed_from_u64(42);
    let mut found = 0;
    for _ in 0..50 {
        let n = rng.gen_range(2..=5);
        let omega = disk_point(&mut rng, 0.5);
        let b = Moebius::blaschke(omega).unwrap();
        let rot = Moebius::rotation(unit(std::f64::consts::TAU / n as f64)).unwrap();
        let phi = b.compose(&rot).compose(&b);
        let start = disk_point(&mut rng, 0.6);
        if (start - omega).norm() < 0.1 {
            continue;
        }
        let mut orbit = vec![start];
        for _ in 1..n {
            orbit.push(phi.eval(*orbit.last().unwrap()).unwrap());
        }
        if orbit
            .iter()
            .enumerate()
            .any(|(i, p)| orbit.iter().skip(i + 1).any(|q| (p - q).norm() < 1e-6))
        {
            continue;
        }
        let recovered = cycle_map(&orbit)
            .unwrap()
            .expect("the constructing automorphism cycles the orbit");
        found += 1;
        for _ in 0..50 {
            let z = disk_point(&mut rng, 0.9);
            assert!(
                (recovered.eval(z).unwrap() - phi.eval(z).unwrap()).norm() < 1e-9,
                "cycle_map disagrees with the automorphism that made the orbit"
            );
        }
    }
    assert!(found >= 30, "only {found} usable orbits generated");
}

#[test]
fn extra_inner_factors_preserve_membership() {
    // Once C_φ maps θ₁H^p into BH^p, any further inner factor on θ₁ keeps
    // it there.
    let mut rng = StdRng::seed_from_u64(43);
    for _ in 0..50 {
        let b = random_blaschke(&mut rng, 3, 3);
        let phi = generate(&FamilySpec::MaxMultSelfMap {
            blaschke: b.clone(),
        })
        .unwrap();
        let theta1 = InnerFunction::from_blaschke(b.clone());
        let base = decide_l_membership(&theta1, &phi, &b).unwrap();
        assert!(base.contained());

        let fattened = theta1.multiply(&random_inner(&mut rng, true));
        let still = decide_l_membership(&fattened, &phi, &b).unwrap();
        assert!(
            still.contained(),
            "an extra inner factor broke membership: {:?}",
            still.checks()
        );
    }
}

#[test]
fn contained_automorphisms_never_drop_multiplicities() {
    // Whenever the engine accepts an automorphism, the monotonicity table
    // must be clean; refuted swaps must show a dirty row.
    let mut rng = StdRng::seed_from_u64(44);
    let mut accepted = 0;
    for _ in 0..200 {
        let b = random_blaschke(&mut rng, 3, 3);
        let zeros: Vec<Complex> = b.factors().iter().map(|(z, _)| *z).collect();
        let candidate = match rng.gen_range(0..3) {
            0 => Moebius::identity(),
            1 if zeros.len() >= 2 => {
                beurling::moebius::swap_map(zeros[0], zeros[1]).unwrap()
            }
            _ => random_moebius(&mut rng, 0.7),
        };
        let verdict = decide_blaschke(&b, &SelfMap::Mob(candidate), &b).unwrap();
        if verdict.contained() {
            accepted += 1;
            let rows = auto_monotonicity(&b, &candidate).unwrap();
            assert!(
                rows.iter().all(|r| r.ok),
                "accepted automorphism with a multiplicity drop"
            );
        }
    }
    assert!(accepted >= 40, "only {accepted} automorphisms accepted");
}

#[test]
fn inner_functions_regain_modulus_near_free_boundary_points() {
    // Away from atoms and zero directions, |θ(r·t)| climbs back toward 1.
    let mut rng = StdRng::seed_from_u64(45);
    for _ in 0..40 {
        let theta = random_inner(&mut rng, true);
        'directions: for _ in 0..10 {
            let angle = rng.gen::<f64>() * std::f64::consts::TAU;
            for (t, _) in theta.measure().atoms() {
                if beurling::tolerance::angular_distance(*t, angle) < 0.3 {
                    continue 'directions;
                }
            }
            for (z, _) in theta.blaschke().factors() {
                if beurling::tolerance::angular_distance(z.arg(), angle) < 0.3 {
                    continue 'directions;
                }
            }
            let z = Complex::from_polar(1.0 - 1e-6, angle);
            let modulus = theta.log_abs(z).exp();
            assert!(
                modulus > 1.0 - 1e-3,
                "modulus {modulus} too small at a free boundary direction"
            );
        }
    }
}

#[test]
fn unequal_family_members_vanish_to_the_ceiling_order() {
    // The second branch of the unequal two-zero family must deliver exactly
    // ⌈m/n⌉ − 1 vanishing derivatives of φ − b at a (and no more when the
    // slot keeps a nonzero value at a).
    let mut rng = StdRng::seed_from_u64(46);
    for _ in 0..50 {
        let zeros = separated_zeros(&mut rng, 2, 0.7, 0.25);
        let n = rng.gen_range(1..=2u32);
        let m = n + rng.gen_range(1..=3u32);
        let k = m.div_ceil(n);
        let spec = FamilySpec::TwoZeroUnequal {
            a: zeros[0],
            b: zeros[1],
            m,
            n,
            g: None,
            branch: TwoZeroUnequalBranch::InnerAtSecond,
        };
        let phi = generate(&spec).unwrap();
        let jet = phi
            .jet(zeros[0], k + 2)
            .unwrap()
            .shift(-zeros[1])
            .zero_constant();
        assert_eq!(
            jet.order_of_vanishing(1e-9),
            Vanishing::Order(k),
            "member should vanish to exactly the ceiling order {k}"
        );
    }
}

#[test]
fn composite_with_automorphism_is_again_a_blaschke_product() {
    // Evaluation-level form of the closure of Blaschke products under
    // precomposition with automorphisms.
    let mut rng = StdRng::seed_from_u64(47);
    for _ in 0..50 {
        let b = random_blaschke(&mut rng, 3, 3);
        let phi = random_elliptic(&mut rng);
        let composed = b.precompose_automorphism(&phi).unwrap();
        for _ in 0..100 {
            let z = disk_point(&mut rng, 0.9);
            let lhs = b.eval(phi.eval(z).unwrap()).unwrap();
            let rhs = composed.eval(z).unwrap();
            assert!((lhs - rhs).norm() < 1e-9, "mismatch at {z}");
        }
    }
}

#[test]
fn pushforward_masses_are_preserved_by_rotations_only() {
    let mut rng = StdRng::seed_from_u64(48);
    for _ in 0..50 {
        let mu = random_measure(&mut rng, 4);
        let rot = Moebius::rotation(unit(rng.gen::<f64>() * std::f64::consts::TAU)).unwrap();
        let nu = mu.pushforward(&rot);
        assert!((nu.total_mass() - mu.total_mass()).abs() < 1e-12);

        let phi = random_moebius(&mut rng, 0.7);
        let expected: f64 = {
            let phi0 = phi.gamma() * phi.a();
            mu.atoms()
                .iter()
                .map(|(t, w)| w * (1.0 - phi0.norm_sqr()) / (beurling::unit(*t) - phi0).norm_sqr())
                .sum()
        };
        let nu2 = mu.pushforward(&phi);
        assert!((nu2.total_mass() - expected).abs() < 1e-12 * expected.max(1.0));
    }
}

#[test]
fn degree_one_blaschke_products_round_trip_through_moebius_form() {
    let mut rng = StdRng::seed_from_u64(49);
    for _ in 0..50 {
        let a = disk_point(&mut rng, 0.8);
        let gamma = unit(rng.gen::<f64>() * std::f64::consts::TAU);
        let b = BlaschkeProduct::new(gamma, vec![(a, 1)]).unwrap();
        let map = SelfMap::Inner(InnerFunction::from_blaschke(b.clone()));
        let m = map.as_moebius().expect("degree one is an automorphism");
        for _ in 0..20 {
            let z = disk_point(&mut rng, 0.9);
            assert!((m.eval(z).unwrap() - b.eval(z).unwrap()).norm() < 1e-12);
        }
    }
}

#[test]
fn composed_jet_first_derivative_obeys_the_chain_rule() {
    // d/dz (B_b∘φ) at a is B_b'(φ(a))·φ'(a); checked against plain central
    // differences with step 1e-5 on random Möbius outer and cubic inner
    // maps.
    let mut rng = StdRng::seed_from_u64(50);
    for _ in 0..50 {
        let b = random_moebius(&mut rng, 0.7);
        let a = disk_point(&mut rng, 0.5);
        // A cubic self-map with small coefficients.
        let coeffs: Vec<Complex> = (0..4).map(|_| disk_point(&mut rng, 0.2)).collect();
        let cubic = |z: Complex| coeffs[0] + coeffs[1] * z + coeffs[2] * z * z + coeffs[3] * z * z * z;

        let inner_jet = {
            let var = beurling::Jet::variable(a, 3);
            let mut acc = beurling::Jet::constant(coeffs[3], a, 3);
            for k in (0..3).rev() {
                acc = acc.mul(&var).unwrap().shift(coeffs[k]);
            }
            acc
        };
        let outer_jet = b.jet(inner_jet.value(), 3).unwrap();
        let composed = beurling::Jet::compose(&outer_jet, &inner_jet).unwrap();

        let h = 1e-5;
        let f = |z: Complex| b.eval(cubic(z)).unwrap();
        let fd = (f(a + h) - f(a - h)) / (2.0 * h);
        assert!(
            (composed.coeffs()[1] - fd).norm() <= 1e-10 * fd.norm().max(1.0),
            "chain rule violated: jet {} vs fd {}",
            composed.coeffs()[1],
            fd
        );
    }
}

#[test]
fn escalation_gives_up_past_the_jet_order_cap() {
    // A map vanishing to order 70 at its fixed zero cannot be resolved
    // within the cap of 64; the engine must error, never guess.
    let a = beurling::c64(0.3, 0.0);
    let b = BlaschkeProduct::single(a, 1).unwrap();
    let ba = SelfMap::Mob(Moebius::blaschke(a).unwrap());
    let high_order = SelfMap::Inner(InnerFunction::from_blaschke(
        BlaschkeProduct::single(Complex::ZERO, 70).unwrap(),
    ));
    let phi = SelfMap::Chain(vec![ba.clone(), high_order, ba]);
    let result = decide_blaschke(&b, &phi, &b);
    assert!(
        matches!(result, Err(beurling::Error::Inconclusive(_))),
        "expected an explicit inconclusive error, got {result:?}"
    );
}

#[test]
fn blaschke_only_and_singular_only_modes_route_correctly() {
    use beurling::containment::{decide, Mode, Problem};
    let theta = InnerFunction::new(
        BlaschkeProduct::single(beurling::c64(0.3, 0.0), 1).unwrap(),
        beurling::AtomicMeasure::new(vec![(1.0, 0.5)]).unwrap(),
        Complex::ONE,
    )
    .unwrap();

    // Blaschke-only ignores the singular parts, and says so.
    let blaschke_only = decide(&Problem {
        theta1: theta.clone(),
        phi: SelfMap::Identity,
        theta2: theta.clone(),
        mode: Mode::BlaschkeOnly,
    })
    .unwrap();
    assert!(blaschke_only.verdict.contained());
    assert!(blaschke_only
        .verdict
        .notes()
        .iter()
        .any(|n| n.contains("necessary")));

    // Singular-only requires an automorphism and compares measures only.
    let singular_only = decide(&Problem {
        theta1: theta.clone(),
        phi: SelfMap::Identity,
        theta2: theta.clone(),
        mode: Mode::SingularOnly,
    })
    .unwrap();
    assert!(singular_only.verdict.contained());
    assert!(singular_only
        .verdict
        .checks()
        .iter()
        .all(|c| matches!(c, beurling::Check::AtomMass { .. })));

    // Non-automorphism φ is rejected in singular-only mode.
    let rejected = decide(&Problem {
        theta1: theta.clone(),
        phi: SelfMap::Inner(InnerFunction::from_blaschke(
            BlaschkeProduct::single(Complex::ZERO, 2).unwrap(),
        )),
        theta2: theta,
        mode: Mode::SingularOnly,
    });
    assert!(matches!(rejected, Err(beurling::Error::Mode(_))));
}

#[test]
fn oracle_reports_inconclusive_when_every_point_is_excluded() {
    use beurling::oracle::{sup_quotient, GridSpec, OracleFlag};
    let theta = InnerFunction::from_blaschke(
        BlaschkeProduct::single(beurling::c64(0.2, 0.0), 1).unwrap(),
    );
    let grid = GridSpec {
        exclusion_radius: 10.0,
        ..GridSpec::default()
    };
    let report = sup_quotient(&theta, &SelfMap::Identity, &theta, &grid).unwrap();
    assert_eq!(report.samples_used, 0);
    assert_eq!(report.flag, OracleFlag::Inconclusive);
}

#[test]
fn structured_maps_stay_inside_the_closed_disk() {
    let mut rng = StdRng::seed_from_u64(51);
    for _ in 0..50 {
        let map = common::random_benign_map(&mut rng, 3);
        for _ in 0..200 {
            let z = disk_point(&mut rng, 0.999);
            let v = map.eval(z).unwrap();
            assert!(v.is_finite(), "non-finite value escaped from {map:?} at {z}");
            assert!(
                v.norm() <= 1.0 + 1e-12,
                "|φ(z)| = {} escaped the disk for {map:?}",
                v.norm()
            );
        }
    }
}

#[test]
fn split_verdict_notes_are_not_duplicated() {
    use beurling::containment::decide_split;
    let theta = InnerFunction::new(
        BlaschkeProduct::single(beurling::c64(0.3, 0.0), 1).unwrap(),
        beurling::AtomicMeasure::new(vec![(1.0, 0.5)]).unwrap(),
        Complex::ONE,
    )
    .unwrap();
    let v = decide_split(&theta, &Moebius::identity(), &theta).unwrap();
    assert!(v.contained());
    let boundary_notes = v
        .notes()
        .iter()
        .filter(|n| n.contains("boundary case"))
        .count();
    assert_eq!(boundary_notes, 1, "notes: {:?}", v.notes());
}
