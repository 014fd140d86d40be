use pdmpct_core::catalog::coulomb_const_energy;
use pdmpct_core::pct::{
    mass_term, radial_case, radial_target, target_potential_1d, transport_wavefunction_printed, Branch, Family, RadialCouplings,
};
use pdmpct_core::{
    build_map, make_model, transport_potential, transport_spectrum, transport_wavefunction, CaseId, CoordinateMap, Error, MassProfile,
    Params, ReferencePotential, Variant,
};
use proptest::prelude::*;

fn couplings(coupling: f64, a: f64, c: f64) -> RadialCouplings {
    RadialCouplings { coupling, a, c }
}

#[test]
fn build_map_examples() {
    let m = build_map(&MassProfile::Constant, 1.0, 0.0).unwrap();
    for x in [-3.0, 0.0, 0.5, 7.25] {
        assert_eq!(m.sigma(x).unwrap(), x);
    }
    let m = build_map(&MassProfile::Lorentzian { a: 1.0, dp: 1.0 }, 1.0, 0.0).unwrap();
    assert!((m.sigma(1.0).unwrap() - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-15);
    assert!((m.sigma(1.0).unwrap() - 0.881374).abs() < 1e-6);
    let m = build_map(&MassProfile::Rational { delta: 2.0 }, 1.0, 0.0).unwrap();
    assert!((m.sigma(1.0).unwrap() - 1.785398).abs() < 1e-6);
    let m = build_map(&MassProfile::Rational { delta: 2.0 }, 2.0, 0.0).unwrap();
    assert!((m.h(1.0).unwrap() - 1.0 - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
}

#[test]
fn build_map_rejects_bad_input() {
    assert!(matches!(build_map(&MassProfile::Constant, 0.0, 0.0), Err(Error::Parameter(_))));
    assert!(matches!(build_map(&MassProfile::Constant, -1.0, 0.0), Err(Error::Parameter(_))));
    let r = MassProfile::RadialPower { mu: 1.0, kappa: 1.0 };
    assert!(matches!(build_map(&r, 1.0, -1.0), Err(Error::Domain { .. })));
}

#[test]
fn sigma_vanishes_at_lower_limit() {
    for (p, x0) in [
        (MassProfile::Rational { delta: 2.0 }, 0.0),
        (MassProfile::Rational { delta: 2.0 }, 1.5),
        (MassProfile::Lorentzian { a: 2.0, dp: 0.5 }, -1.0),
        (MassProfile::Tanh { dpp: 1.0 }, 0.3),
        (MassProfile::RadialPower { mu: 1.0, kappa: 1.0 }, 2.0),
    ] {
        assert!(build_map(&p, 1.3, x0).unwrap().sigma(x0).unwrap().abs() < 1e-15, "{p:?}");
    }
    let t = build_map(&MassProfile::Tanh { dpp: 1.0 }, 1.0, f64::NEG_INFINITY).unwrap();
    assert!(t.sigma(-40.0).unwrap().abs() < 1e-15);
}

#[test]
fn sigma_strictly_increasing() {
    for (p, lo, hi) in [
        (MassProfile::Constant, -10.0, 10.0),
        (MassProfile::Rational { delta: 2.0 }, 0.0, 600.0),
        (MassProfile::Rational { delta: 0.1 }, -20.0, 20.0),
        (MassProfile::Lorentzian { a: 1.0, dp: 1.0 }, -200.0, 200.0),
        (MassProfile::Tanh { dpp: 1.0 }, -14.0, 430.0),
        (MassProfile::RadialPower { mu: 1.0, kappa: 1.0 }, 1e-3, 60.0),
        (MassProfile::RadialPower { mu: 1.0, kappa: -2.0 }, 1.0, 200.0),
    ] {
        let map = build_map(&p, 1.0, p.sigma_origin()).unwrap();
        let s: Vec<f64> = (0..1000)
            .map(|i| map.sigma(lo + (hi - lo) * (i as f64 + 0.5) / 1000.0).unwrap())
            .collect();
        assert!(s.windows(2).all(|w| w[1] > w[0]), "{p:?}");
    }
}

#[test]
fn mass_term_examples() {
    for x in [-2.0, 0.0, 3.0] {
        assert_eq!(mass_term(&MassProfile::Constant, x).unwrap(), 0.0);
    }
    assert_eq!(mass_term(&MassProfile::Lorentzian { a: 1.0, dp: 1.0 }, 0.0).unwrap(), -0.25);
    assert_eq!(mass_term(&MassProfile::Tanh { dpp: 1.0 }, 0.0).unwrap(), -0.21875);
}

#[test]
fn lorentzian_mass_term_closed_form() {
    for (a, dp) in [(1.0, 1.0), (2.0, 0.5), (0.3, 3.0)] {
        let p = MassProfile::Lorentzian { a, dp };
        for i in 0..=200 {
            let x = -5.0 + 0.05 * f64::from(i);
            let want = -(x * x + 2.0 * dp) / (8.0 * a * (dp + x * x));
            let got = mass_term(&p, x).unwrap();
            assert!((got - want).abs() <= 1e-12, "a={a} dp={dp} x={x}: {got} vs {want}");
        }
    }
}

#[test]
fn constant_mass_identity() {
    let map = build_map(&MassProfile::Constant, 1.0, 0.0).unwrap();
    let refs = [
        ReferencePotential::Kratzer { a: -0.2, b: 0.04 },
        ReferencePotential::CoulombConst { a: 1.0, c: 0.5 },
        ReferencePotential::OscInvSq { a: 1.0, c: 0.5 },
    ];
    for r in refs {
        for i in 1..=100 {
            let x = 0.1 * f64::from(i);
            let v = target_potential_1d(&MassProfile::Constant, &r, &map, x).unwrap();
            assert!((v - r.potential(x)).abs() <= 1e-14 * r.potential(x).abs().max(1.0));
            for n in 0..3 {
                let phi = transport_wavefunction(&MassProfile::Constant, &r, &map, n, x).unwrap();
                let psi = r.wavefunction(n, 0.0, x, Variant::Construction).unwrap();
                assert!((phi - psi).abs() <= 1e-14 * psi.abs().max(1e-300));
            }
        }
    }
    // δ = 1 degenerates the rational profile to unit mass
    let p = MassProfile::Rational { delta: 1.0 };
    let map = build_map(&p, 1.0, 0.0).unwrap();
    let k = ReferencePotential::Kratzer { a: -0.2, b: 0.04 };
    for x in [0.3, 1.0, 17.0] {
        assert_eq!(map.sigma(x).unwrap(), x);
        assert_eq!(target_potential_1d(&p, &k, &map, x).unwrap(), k.potential(x));
    }
}

#[test]
fn target_potential_composition() {
    let p = MassProfile::Lorentzian { a: 1.0, dp: 1.0 };
    let map = build_map(&p, 1.0, 0.0).unwrap();
    let k = ReferencePotential::Kratzer { a: -0.2, b: 0.04 };
    let y = (1.0 + 2f64.sqrt()).ln();
    let want = -0.2 / y + 0.04 / (y * y) + mass_term(&p, 1.0).unwrap();
    assert!((target_potential_1d(&p, &k, &map, 1.0).unwrap() - want).abs() < 1e-14);
    assert!(matches!(target_potential_1d(&p, &k, &map, 0.0), Err(Error::Domain { .. })));
}

#[test]
fn spectrum_transport_is_exact() {
    let k = ReferencePotential::Kratzer { a: -0.2, b: 0.04 };
    let s = transport_spectrum(&k, 0, 0.0, Variant::Printed).unwrap();
    assert_eq!(s.entries[0].energy, -0.03125);
    let h = ReferencePotential::CoulombConst { a: 1.0, c: 0.0 };
    let s = transport_spectrum(&h, 2, 0.0, Variant::Construction).unwrap();
    let es: Vec<f64> = s.entries.iter().map(|e| e.energy).collect();
    assert_eq!(es[..2], [-0.5, -0.125]);
    assert!((es[2] + 0.0556).abs() < 1e-4);
    for r in [k, h, ReferencePotential::OscInvSq { a: 0.5, c: 2.0 }] {
        for variant in [Variant::Construction, Variant::Printed] {
            let s = transport_spectrum(&r, 6, 0.0, variant).unwrap();
            for e in &s.entries {
                assert_eq!(e.energy.to_bits(), r.energy(e.n, 0.0, variant).unwrap().to_bits());
            }
            assert!(s.entries.windows(2).all(|w| w[1].energy > w[0].energy));
        }
    }
    assert!(matches!(
        transport_spectrum(&ReferencePotential::Kratzer { a: 0.2, b: 0.0 }, 2, 0.0, Variant::Construction),
        Err(Error::Validity(_))
    ));
}

#[test]
fn wavefunction_prefactor_at_unit_mass() {
    let k = ReferencePotential::Kratzer { a: -0.2, b: 0.04 };
    let p = MassProfile::Tanh { dpp: 1.0 };
    let map = build_map(&p, 1.0, f64::NEG_INFINITY).unwrap();
    let psi = k.wavefunction(0, 0.0, map.h(0.0).unwrap(), Variant::Construction).unwrap();
    assert!((transport_wavefunction(&p, &k, &map, 0, 0.0).unwrap() - psi).abs() < 1e-15);
    assert!((transport_wavefunction_printed(&p, &k, &map, 0, 0.0).unwrap() - psi).abs() < 1e-15);
    // away from unit mass the two prefactors differ by √m
    let m = p.eval(2.0).unwrap().m;
    let ratio = transport_wavefunction(&p, &k, &map, 1, 2.0).unwrap() / transport_wavefunction_printed(&p, &k, &map, 1, 2.0).unwrap();
    assert!((ratio - m.sqrt()).abs() < 1e-14);
}

#[test]
fn radial_case_examples() {
    let c = radial_case(Family::B1, Branch::NuA, 0.0, 1.0, 0, couplings(1.0, 0.0, 0.0)).unwrap();
    assert_eq!(c.nu, Some(1.0));
    assert_eq!(c.script_l, 0.5);
    let c = radial_case(Family::B1, Branch::NuA, 0.0, 1.0, 1, couplings(1.0, 0.0, 0.0)).unwrap();
    assert_eq!(c.script_l, 1.5);
    let c = radial_case(Family::B3, Branch::NuA, 2.0, 1.0, 0, couplings(0.0, 0.0, 0.5)).unwrap();
    assert_eq!(c.script_l, 0.25);
    assert_eq!(
        radial_case(Family::B1, Branch::NuB, 1.0, 1.0, 0, couplings(1.0, 0.0, 0.0))
            .unwrap()
            .nu,
        Some(3.0)
    );
    assert_eq!(
        radial_case(Family::B3, Branch::NuB, 2.0, 1.0, 0, couplings(1.0, 0.0, 0.0))
            .unwrap()
            .nu,
        Some(1.0)
    );
    assert_eq!(
        radial_case(Family::B2, Branch::Log, -2.0, 1.0, 0, couplings(1.0, 1.0, 0.0))
            .unwrap()
            .nu,
        None
    );
}

#[test]
fn radial_case_rejects_bad_input() {
    let ok = couplings(1.0, 1.0, 0.5);
    assert!(matches!(
        radial_case(Family::B1, Branch::Log, 0.0, 1.0, 0, ok),
        Err(Error::Parameter(_))
    ));
    assert!(matches!(
        radial_case(Family::B1, Branch::NuA, -2.0, 1.0, 0, ok),
        Err(Error::Parameter(_))
    ));
    assert!(matches!(
        radial_case(Family::B1, Branch::NuA, 0.0, -1.0, 0, ok),
        Err(Error::Parameter(_))
    ));
    // radicand of ℒ(ℓ) negative
    assert!(matches!(
        radial_case(Family::B2, Branch::NuA, 0.0, 1.0, 0, couplings(0.0, 1.0, 5.0)),
        Err(Error::Parameter(_))
    ));
    assert!(matches!(
        radial_case(Family::B1, Branch::NuB, 0.0, 1.0, 0, couplings(-1.0, 0.0, 0.0)),
        Err(Error::Validity(_))
    ));
}

#[test]
fn radial_target_examples() {
    let c = radial_case(Family::B1, Branch::NuA, 0.0, 1.0, 0, couplings(1.0, 0.0, 0.0)).unwrap();
    let t = radial_target(&c, 2.0).unwrap();
    assert_eq!(t.printed_potential, -0.5);
    assert_eq!((t.potential_equation, t.energy_equation), (36, 37));
    let c = radial_case(Family::B1, Branch::NuB, 0.0, 1.0, 0, couplings(1.0, 0.0, 0.0)).unwrap();
    let t = radial_target(&c, 2.0).unwrap();
    assert_eq!(t.printed_potential, -2.0);
    assert_eq!(t.potential, 2.0);
    assert_eq!(t.potential_equation, 39);
    let c = radial_case(Family::B3, Branch::NuA, 0.0, 1.0, 0, couplings(0.0, 0.0, 0.5)).unwrap();
    let t = radial_target(&c, 1.0).unwrap();
    assert_eq!(t.printed_potential, 0.5);
    assert_eq!(t.energy_equation, 60);
    assert!((t.printed_energy(0) - (1.0 + 0.5f64.sqrt())).abs() < 1e-15);
    assert!(matches!(radial_target(&c, 0.0), Err(Error::Domain { .. })));
    let log = radial_case(Family::B1, Branch::Log, -2.0, 1.0, 0, couplings(2.0, 1.0, 0.0)).unwrap();
    assert!(matches!(radial_target(&log, 1.0), Err(Error::Domain { .. })));
}

#[test]
fn hydrogenic_b1a_reduces_to_coulomb() {
    let c = radial_case(Family::B1, Branch::NuA, 0.0, 1.0, 0, couplings(1.0, 0.0, 0.0)).unwrap();
    for n in 0..5 {
        assert!((c.energy(n) - coulomb_const_energy(n, 0.0, 1.0, 0.0)).abs() < 1e-15);
    }
    for i in 1..50 {
        let r = 0.2 * f64::from(i);
        assert!((c.potential(r) + 1.0 / r).abs() < 1e-15);
    }
}

/// The closed-form radial potential must equal the general transport
/// relation evaluated with the matched reference at every level.
#[test]
fn radial_potentials_follow_from_transport() {
    for case in CaseId::ALL.into_iter().filter(CaseId::is_radial) {
        let model = make_model(case, &Params::new()).unwrap();
        for l in [0, 1, 2] {
            let Ok(rc) = model.radial(l) else { continue };
            for n in 0..4 {
                let lr = rc.level_reference(n).unwrap();
                let u = move |y: f64| lr.reference.effective_potential(lr.l_ref, y);
                let e = rc.energy(n);
                for i in 1..40 {
                    let r = rc.wall() + 0.125 * f64::from(i);
                    let got = transport_potential(&rc.mass(), &rc.map(), &u, lr.epsilon, e, Some(l), r).unwrap();
                    let want = rc.potential(r);
                    assert!(
                        (got - want).abs() <= 1e-9 * want.abs().max(1.0),
                        "{case} l={l} n={n} r={r}: {got} vs {want}"
                    );
                }
            }
        }
    }
}

#[test]
fn one_dim_potentials_follow_from_transport() {
    for case in [CaseId::A1, CaseId::A2, CaseId::A3] {
        let model = make_model(case, &Params::new()).unwrap();
        let (reference, map) = model.one_dim().unwrap();
        let cmap = CoordinateMap::Sigma(map);
        let u = |y: f64| reference.potential(y);
        for n in 0..3 {
            let eps = reference.energy(n, 0.0, Variant::Construction).unwrap();
            for i in 1..40 {
                let x = if case == CaseId::A3 {
                    -3.0 + 0.25 * f64::from(i)
                } else {
                    0.25 * f64::from(i)
                };
                let got = transport_potential(&model.profile, &cmap, &u, eps, eps, None, x).unwrap();
                let want = model.potential(0, x).unwrap();
                assert!(
                    (got - want).abs() <= 1e-10 * want.abs().max(1.0),
                    "{case} n={n} x={x}: {got} vs {want}"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn sigma_monotone_for_random_profiles(delta in 0.05f64..8.0, a in 0.1f64..4.0, dp in 0.1f64..4.0, k in 0.1f64..3.0, beta in 0.2f64..3.0, x in -30.0f64..30.0, dx in 1e-3f64..5.0) {
        for p in [MassProfile::Rational { delta }, MassProfile::Lorentzian { a, dp }, MassProfile::Tanh { dpp: k }] {
            let map = build_map(&p, beta, p.sigma_origin()).unwrap();
            prop_assert!(map.sigma(x + dx).unwrap() > map.sigma(x).unwrap());
        }
    }

    #[test]
    fn identity_law_pointwise(a in -0.25f64..-0.01, x in 0.01f64..100.0, n in 0u32..5) {
        let k = ReferencePotential::Kratzer { a, b: a * a };
        let map = build_map(&MassProfile::Constant, 1.0, 0.0).unwrap();
        prop_assert_eq!(target_potential_1d(&MassProfile::Constant, &k, &map, x).unwrap(), k.potential(x));
        prop_assert_eq!(
            transport_wavefunction(&MassProfile::Constant, &k, &map, n, x).unwrap(),
            k.wavefunction(n, 0.0, x, Variant::Construction).unwrap()
        );
    }
}
