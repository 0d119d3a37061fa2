use proptest::prelude::*;
use zitterlab_core::dirac::{self, DiracParams};
use zitterlab_core::kinematics::{classify_v2, decompose_velocity, MotionClass, DEFAULT_CLASSIFY_TOL};
use zitterlab_core::lagrangian::{hamiltonian, newton_residual};
use zitterlab_core::stability::{descartes_check, spectrum};
use zitterlab_core::zerospin::{self, LinearOscParams};
use zitterlab_core::{BoostVelocity, FourVector, LagrangianSpec, ThreeVector};

fn arb_boost(max: f64) -> impl Strategy<Value = BoostVelocity> {
    (prop::array::uniform3(-1.0..1.0f64), 0.0..max).prop_filter_map("nonzero direction", |(d, s)| {
        let d = ThreeVector::from_array(d);
        let n = d.norm();
        (n > 1e-3).then(|| BoostVelocity::new(d * (s / n)).unwrap())
    })
}

/// CMF Dirac parameters with E*, H* spanning a generic plane.
fn arb_cmf_dirac() -> impl Strategy<Value = DiracParams> {
    (0.3..3.0f64, prop::array::uniform3(-1.5..1.5f64), prop::array::uniform3(-1.5..1.5f64)).prop_map(
        |(m, e, h)| DiracParams {
            m,
            p: FourVector::new(m, 0.0, 0.0, 0.0),
            amp_e: FourVector::from_parts(0.0, ThreeVector::from_array(e)),
            amp_h: FourVector::from_parts(0.0, ThreeVector::from_array(h)),
            x0: FourVector::ZERO,
        },
    )
}

fn zero_spin_cmf() -> LinearOscParams {
    LinearOscParams {
        m: 1.0,
        k1: -0.25,
        p: FourVector::new(1.0, 0.0, 0.0, 0.0),
        amp_f: FourVector::new(0.0, 1.0, 0.0, 0.0),
        phase: 0.0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dirac_states_are_frame_covariant(cmf in arb_cmf_dirac(), w in arb_boost(0.9), tau in -5.0..5.0f64) {
        let moved = dirac::state_at(&cmf.boosted(&w), tau).unwrap();
        let rest = dirac::state_at(&cmf, tau).unwrap();
        for k in 0..4 {
            let scale = (2.0 * cmf.m).powi(k as i32).max(1.0) * w.gamma().powi(2);
            prop_assert!((moved.derivs[k] - w.apply(rest.derivs[k])).max_abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn dirac_states_solve_dynamics(cmf in arb_cmf_dirac(), w in arb_boost(0.8)) {
        let params = cmf.boosted(&w);
        let spec = params.spec();
        let h0 = hamiltonian(&spec, &dirac::state_at(&params, 0.0).unwrap()).unwrap();
        for tau in [0.2, 1.3, 4.4] {
            let s = dirac::state_at(&params, tau).unwrap();
            let scale = (1.0 + 4.0 * cmf.m * cmf.m) * w.gamma().powi(2);
            prop_assert!(newton_residual(&spec, &s).unwrap().max_abs() <= 1e-10 * scale);
            prop_assert!((hamiltonian(&spec, &s).unwrap() - h0).abs() <= 1e-10 * scale * scale);
        }
    }

    #[test]
    fn cmf_zbw_velocity_has_no_time_part(cmf in arb_cmf_dirac(), tau in -3.0..3.0f64) {
        let s = dirac::state_at(&cmf, tau).unwrap();
        let d = decompose_velocity(s.velocity(), cmf.p, cmf.m).unwrap();
        prop_assert_eq!(d.v_part.t, 0.0);
    }

    #[test]
    fn classification_follows_sign_of_v2(cmf in arb_cmf_dirac(), w in arb_boost(0.9), tau in 0.0..3.0f64) {
        let v = dirac::state_at(&cmf.boosted(&w), tau).unwrap().velocity();
        let c = classify_v2(v, DEFAULT_CLASSIFY_TOL).unwrap();
        let expected = if c.v2.abs() <= DEFAULT_CLASSIFY_TOL {
            MotionClass::Lightlike
        } else if c.v2 > 0.0 {
            MotionClass::Timelike
        } else {
            MotionClass::Spacelike
        };
        prop_assert_eq!(c.class, expected);
        prop_assert!(c.v2 <= 1.0 + 1e-9);
    }

    #[test]
    fn helicity_is_invariant_along_momentum(rapidity in -2.0..2.0f64) {
        // spin along −ẑ, momentum along ±ẑ
        let base = DiracParams::canonical(1.0);
        let speed = rapidity.tanh();
        prop_assume!(speed.abs() > 1e-3);
        let pl = dirac::pauli_lubanski(&base.boosted(&BoostVelocity::from_components(0.0, 0.0, speed).unwrap())).unwrap();
        let expected = -speed.signum();
        prop_assert!((pl.helicity.unwrap() - expected).abs() <= 1e-12);
    }

    #[test]
    fn boosted_zero_spin_is_normal_to_momentum(w in arb_boost(0.9), tau in 0.0..4.0f64) {
        let params = zero_spin_cmf();
        let s = zerospin::boosted_spin(&params, &w, tau).unwrap();
        let p = params.boosted(&w).p.spatial();
        prop_assert!(s.dot(p).abs() <= 1e-12 * (1.0 + s.norm() * p.norm()));
    }

    #[test]
    fn cmf_spin_is_exactly_zero(
        m in 0.2..3.0f64, k1 in -3.0..-0.05f64, fx in -1.0..1.0f64, fz in -1.0..1.0f64,
        phase in 0.0..6.3f64, w in arb_boost(0.9), tau in -4.0..4.0f64,
    ) {
        let cmf = LinearOscParams {
            m, k1, phase,
            p: FourVector::new(m, 0.0, 0.0, 0.0),
            amp_f: FourVector::new(0.0, fx, 0.0, fz),
        };
        let params = cmf.boosted(&w);
        prop_assert_eq!(zerospin::cmf_spin(&params, tau).unwrap(), ThreeVector::ZERO);
    }

    #[test]
    fn mean_spin_squared_matches_quadrature(w in arb_boost(0.9), k1 in -2.0..-0.1f64) {
        let params = LinearOscParams { k1, ..zero_spin_cmf() };
        let mean = zerospin::mean_spin_squared(&params, &w).unwrap().implemented;
        let n = 256;
        let quad: f64 = (0..n)
            .map(|i| zerospin::boosted_spin(&params, &w, params.period() * i as f64 / n as f64).unwrap().norm_sqr())
            .sum::<f64>() / n as f64;
        prop_assert!((mean - quad).abs() <= 1e-9 * (1.0 + mean));
    }

    #[test]
    fn descartes_is_necessary_for_oscillation(coeffs in prop::collection::vec(-3.0..3.0f64, 1..=4)) {
        prop_assume!(coeffs.last().unwrap().abs() > 1e-2);
        let spec = LagrangianSpec::new(1.0, coeffs).unwrap();
        if let Ok(s) = spectrum(&spec) {
            if s.oscillatory {
                prop_assert!(descartes_check(&spec));
            }
        }
    }

    #[test]
    fn single_mode_frequency(m in 0.1..10.0f64, k1 in -10.0..-0.01f64) {
        let spec = LagrangianSpec::new(m, vec![k1]).unwrap();
        let s = spectrum(&spec).unwrap();
        let omega = (m / -k1).sqrt();
        prop_assert!((s.frequencies[0] - omega).abs() <= 1e-10 * omega.max(1.0));
    }
}

#[test]
fn lightlike_family_has_compton_radius() {
    for m in [0.5, 1.0, 2.0] {
        for angle in [0.0, 0.7, 2.0] {
            let (c, s) = (f64::cos(angle), f64::sin(angle));
            let params = DiracParams {
                m,
                p: FourVector::new(m, 0.0, 0.0, 0.0),
                amp_e: FourVector::new(0.0, c, s, 0.0),
                amp_h: FourVector::new(0.0, -s, c, 0.0),
                x0: FourVector::ZERO,
            };
            assert!(dirac::spin_half_residual(&params).unwrap().abs() < 1e-12);
            let info = dirac::constant_v2_info(&params).unwrap().unwrap();
            assert!(info.v2.abs() < 1e-12);
            assert!((info.radius - 1.0 / (2.0 * m)).abs() < 1e-12);
        }
    }
}

#[test]
fn zero_spin_path_has_no_oscillation_along_momentum() {
    let params = zero_spin_cmf();
    for w in [
        BoostVelocity::from_components(0.0, 0.6, 0.0).unwrap(),
        BoostVelocity::from_components(0.0, 0.3, -0.7).unwrap(),
    ] {
        let moved = params.boosted(&w);
        let n = moved.p.spatial() / moved.p.spatial().norm();
        let drift = moved.p.spatial() / moved.m;
        for tau in [0.0, 0.4, 1.1, 2.5] {
            let x = zerospin::linear_state_at(&moved, tau).unwrap().position().spatial();
            let along = (x - drift * tau).dot(n);
            assert!(along.abs() <= 1e-10, "tau={tau}");
        }
    }
}
