use std::f64::consts::PI;

use proptest::prelude::*;
use zitterlab_core::dirac::{self, DiracParams};
use zitterlab_core::integrator::{conservation_report, integrate};
use zitterlab_core::lagrangian::{
    canonical_momentum, hamilton_residuals, hamiltonian, newton_residual, spin_tensor,
    spin_vector, total_angular_momentum,
};
use zitterlab_core::minkowski::cross;
use zitterlab_core::{BoostVelocity, FourVector, KinematicState, LagrangianSpec, ThreeVector};

fn fv(t: f64, x: f64, y: f64, z: f64) -> FourVector {
    FourVector::new(t, x, y, z)
}

/// Exact solution of the (m=1, k₁=−5/4, k₂=1/4) model: two modes at ω = 1
/// and ω = 2 on top of uniform motion.
fn two_mode_state(tau: f64) -> KinematicState {
    let p = fv(1.0, 0.0, 0.0, 0.0);
    let modes = [
        (1.0, fv(0.0, 0.3, 0.0, 0.1), fv(0.0, 0.0, 0.2, 0.0)),
        (2.0, fv(0.0, 0.0, 0.1, 0.0), fv(0.0, 0.0, 0.0, 0.25)),
    ];
    let mut derivs = vec![p * tau];
    for k in 0..8 {
        derivs.push(if k == 0 { p } else { FourVector::ZERO });
    }
    for (w, e, h) in modes {
        let (c, s) = ((w * tau).cos(), (w * tau).sin());
        // x gets the antiderivative, v⁽ᵏ⁾ the k-th derivative
        derivs[0] += (e * s - h * c) / w;
        let cycle = [(c, s), (-s, c), (-c, -s), (s, -c)];
        for k in 0..8 {
            let (dc, ds) = cycle[k % 4];
            derivs[k + 1] += (e * dc + h * ds) * w.powi(k as i32);
        }
    }
    KinematicState::new(tau, derivs)
}

/// Ostrogradsky energy of the n = 2 model built from the conjugate momenta.
fn ostrogradsky_energy(spec: &LagrangianSpec, s: &KinematicState) -> f64 {
    let (m, k1, k2) = (spec.mass(), spec.k(1), spec.k(2));
    let v = s.derivs[1];
    let a = s.derivs[2];
    let adot = s.derivs[3];
    let p1 = v * m - adot * k1 + s.derivs[5] * k2;
    let p2 = a * k1 - s.derivs[4] * k2;
    let p3 = adot * k2;
    let lagrangian = 0.5 * (m * v.norm_sqr() + k1 * a.norm_sqr() + k2 * adot.norm_sqr());
    p1.dot(v) + p2.dot(a) + p3.dot(adot) - lagrangian
}

#[test]
fn two_mode_solution_solves_newton_equation() {
    let spec = LagrangianSpec::new(1.0, vec![-1.25, 0.25]).unwrap();
    for tau in [0.0, 0.4, 3.0] {
        let s = two_mode_state(tau);
        assert!(newton_residual(&spec, &s).unwrap().max_abs() < 1e-13);
        assert!((canonical_momentum(&spec, &s).unwrap() - fv(1.0, 0.0, 0.0, 0.0)).max_abs() < 1e-13);
    }
}

#[test]
fn hamiltonian_matches_ostrogradsky_oracle() {
    let spec = LagrangianSpec::new(1.0, vec![-1.25, 0.25]).unwrap();
    let h0 = ostrogradsky_energy(&spec, &two_mode_state(0.0));
    for tau in [0.0, 0.7, 2.5, 9.1] {
        let s = two_mode_state(tau);
        let h = hamiltonian(&spec, &s).unwrap();
        assert!((h - ostrogradsky_energy(&spec, &s)).abs() < 1e-13);
        assert!((h - h0).abs() < 1e-12);
    }
}

#[test]
fn second_order_spin_keeps_total_angular_momentum() {
    let spec = LagrangianSpec::new(1.0, vec![-1.25, 0.25]).unwrap();
    let j = |tau: f64| {
        let s = two_mode_state(tau);
        let p = canonical_momentum(&spec, &s).unwrap().spatial();
        cross(s.position().spatial(), p) + spin_vector(&spec, &s).unwrap()
    };
    let j0 = j(0.0);
    assert!(j0.max_abs() > 1e-3);
    for tau in [0.3, 1.9, 6.0] {
        assert!((j(tau) - j0).max_abs() < 1e-12, "tau={tau}");
    }
}

#[test]
fn integrated_second_order_run_conserves_charges() {
    let spec = LagrangianSpec::new(1.0, vec![-1.25, 0.25]).unwrap();
    let mut init = two_mode_state(0.0);
    init.derivs.truncate(spec.state_len());
    let run = integrate(&spec, &init, 4.0 * PI, 1e-3).unwrap();
    let report = conservation_report(&run).unwrap();
    assert!(report.p_drift <= 1e-8);
    assert!(report.h_drift.unwrap() <= 1e-8);
    assert!(report.j_drift.unwrap() <= 1e-7);
    let last = run.last().unwrap();
    let exact = two_mode_state(last.tau);
    assert!((last.velocity() - exact.velocity()).max_abs() < 1e-9);
}

#[test]
fn every_dirac_sample_passes_constraints() {
    let params = DiracParams::canonical(1.0).boosted(&BoostVelocity::from_components(0.3, 0.2, -0.4).unwrap());
    let mut init = dirac::state_at(&params, 0.0).unwrap();
    init.derivs.truncate(4);
    let run = integrate(&params.spec(), &init, 3.0 * PI, PI / 1000.0).unwrap();
    let report = conservation_report(&run).unwrap();
    assert!(report.constraints.iter().all(|c| c.within(1e-7)));
    assert!(report.worst_constraint() <= 1e-7);
}

#[test]
fn forward_then_backward_returns_home() {
    let params = DiracParams::canonical(1.0).boosted(&BoostVelocity::from_components(0.6, 0.0, 0.0).unwrap());
    let mut init = dirac::state_at(&params, 0.0).unwrap();
    init.derivs.truncate(4);
    let spec = params.spec();
    let forward = integrate(&spec, &init, 5.0, 1e-3).unwrap();
    let end = forward.last().unwrap().clone();
    let mut back_init = end.clone();
    back_init.derivs.truncate(4);
    let backward = integrate(&spec, &back_init, 0.0, -1e-3).unwrap();
    let home = backward.last().unwrap();
    assert!(home.tau.abs() < 1e-9);
    for k in 0..4 {
        assert!((home.derivs[k] - init.derivs[k]).max_abs() <= 1e-8, "derivative {k}");
    }
}

#[test]
fn newton_and_hamilton_formulations_agree() {
    let params = DiracParams::canonical(1.0).boosted(&BoostVelocity::from_components(0.1, 0.5, 0.2).unwrap());
    let spec = params.spec();
    for tau in [0.0, 0.6, 2.0] {
        let exact = dirac::state_at(&params, tau).unwrap();
        assert!(newton_residual(&spec, &exact).unwrap().max_abs() <= 1e-10);
        assert!(hamilton_residuals(&spec, &exact).unwrap().max_abs() <= 1e-10);

        let mut bent = exact.clone();
        bent.derivs[4] = bent.derivs[4] * 1.01;
        assert!(newton_residual(&spec, &bent).unwrap().max_abs() > 1e-4);
        assert!(hamilton_residuals(&spec, &bent).unwrap().max_abs() > 1e-4);
    }
}

#[test]
fn exact_dirac_trajectory_conserves_total_angular_momentum() {
    let params = DiracParams::canonical(1.3).boosted(&BoostVelocity::from_components(-0.2, 0.4, 0.3).unwrap());
    let spec = params.spec();
    let j0 = total_angular_momentum(&spec, &dirac::state_at(&params, 0.0).unwrap()).unwrap();
    for tau in [0.5, 1.7, 8.0] {
        let j = total_angular_momentum(&spec, &dirac::state_at(&params, tau).unwrap()).unwrap();
        assert!((j - j0).max_abs() <= 1e-10);
    }
}

fn arb_four() -> impl Strategy<Value = FourVector> {
    prop::array::uniform4(-2.0..2.0f64).prop_map(FourVector::from_array)
}

fn arb_three() -> impl Strategy<Value = ThreeVector> {
    prop::array::uniform3(-2.0..2.0f64).prop_map(ThreeVector::from_array)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn spin_vector_is_axial_part_of_spin_tensor(
        chain in prop::collection::vec(arb_four(), 8),
        coeffs in prop::collection::vec(-2.0..2.0f64, 1..=3),
    ) {
        let spec = LagrangianSpec::new(1.0, coeffs).unwrap();
        let s = KinematicState::new(0.0, chain);
        let v = spin_vector(&spec, &s).unwrap();
        let t = spin_tensor(&spec, &s).unwrap().axial_part();
        prop_assert!((v - t).max_abs() <= 1e-12 * (1.0 + v.max_abs()));
    }

    #[test]
    fn first_order_spin_is_antisymmetric_and_bilinear(
        v in arb_three(), a in arb_three(), b in arb_three(), k1 in -2.0..-0.01f64, lam in -3.0..3.0f64,
    ) {
        let spec = LagrangianSpec::new(1.0, vec![k1]).unwrap();
        let spin = |vel: ThreeVector, acc: ThreeVector| {
            let s = KinematicState::new(0.0, vec![
                FourVector::ZERO,
                FourVector::from_parts(1.0, vel),
                FourVector::from_parts(0.0, acc),
                FourVector::ZERO,
            ]);
            spin_vector(&spec, &s).unwrap()
        };
        prop_assert!((spin(v, a) + spin(a, v)).max_abs() <= 1e-12);
        let lhs = spin(v, a + b * lam);
        let rhs = spin(v, a) + spin(v, b) * lam;
        prop_assert!((lhs - rhs).max_abs() <= 1e-11);
    }
}
