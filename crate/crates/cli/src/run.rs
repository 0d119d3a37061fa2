//! Dispatch of a parsed scenario to the core library.

use serde_json::{json, Value};
use zitterlab_core::cronon::{self, CrononParams};
use zitterlab_core::dirac::{self, DiracParams};
use zitterlab_core::integrator::{conservation_report, integrate, ConservationReport, Trajectory};
use zitterlab_core::kinematics::{classify_v2, v2_identities_residual, ConstraintResiduals, DEFAULT_CLASSIFY_TOL};
use zitterlab_core::lagrangian::{
    canonical_momentum, hamilton_residuals, hamiltonian, newton_residual, spin_tensor,
    spin_vector,
};
use zitterlab_core::minkowski::wedge_over;
use zitterlab_core::stability::{descartes_check, spectrum};
use zitterlab_core::zerospin::{self, LinearOscParams};
use zitterlab_core::{
    AntisymTensor, BoostVelocity, FourVector, KinematicState, LagrangianSpec, ThreeVector,
};

use crate::config::{
    AuditScenario, CrononScenario, DiracScenario, IntegrateScenario, Scenario, StabilityScenario,
    Window, ZerospinScenario,
};
use crate::error::CliError;
use crate::output::Row;

/// Default tolerance of the constraint audit.
pub const DEFAULT_TOLERANCE: f64 = 1e-7;

pub struct Outcome {
    pub rows: Option<Vec<Row>>,
    pub report: Value,
    /// Set when the run completed but its audit failed.
    pub failure: Option<CliError>,
}

pub fn execute(scenario: &Scenario, tolerance: f64) -> Result<Outcome, CliError> {
    let mut outcome = match scenario {
        Scenario::Dirac(s) => run_dirac(s, tolerance)?,
        Scenario::Integrate(s) => run_integrate(s, tolerance)?,
        Scenario::Stability(s) => run_stability(s)?,
        Scenario::Zerospin(s) => run_zerospin(s, tolerance)?,
        Scenario::Cronon(s) => run_cronon(s, tolerance)?,
        Scenario::Audit(s) => run_audit(s, tolerance)?,
    };
    outcome.report["kind"] = json!(scenario.kind());
    outcome.report["tolerance"] = json!(tolerance);
    Ok(outcome)
}

fn fv(c: [f64; 4]) -> FourVector {
    FourVector::from_array(c)
}

fn taus(w: &Window) -> Result<Vec<f64>, CliError> {
    if w.samples == 0 || !w.tau_start.is_finite() || !w.tau_end.is_finite() {
        return Err(CliError::Config {
            message: "output window needs finite tau_start, tau_end and samples >= 1".into(),
            field: Some("output.samples".into()),
        });
    }
    if w.samples == 1 {
        return Ok(vec![w.tau_start]);
    }
    let span = w.tau_end - w.tau_start;
    let last = (w.samples - 1) as f64;
    Ok((0..w.samples)
        .map(|i| w.tau_start + span * i as f64 / last)
        .collect())
}

fn spacing(taus: &[f64]) -> f64 {
    if taus.len() > 1 {
        taus[1] - taus[0]
    } else {
        0.0
    }
}

fn conservation_json(report: &ConservationReport) -> Value {
    json!({
        "p_drift": report.p_drift,
        "J_drift": report.j_drift,
        "H_drift": report.h_drift,
    })
}

fn constraints_json(constraints: &[ConstraintResiduals], tolerance: f64) -> Value {
    let max = |f: fn(&ConstraintResiduals) -> f64| {
        constraints.iter().map(f).fold(0.0_f64, f64::max)
    };
    json!({
        "samples": constraints.len(),
        "max_abs_h1": max(|c| c.h1.abs()),
        "max_abs_h2": max(|c| c.h2.abs()),
        "max_abs_orthogonality": max(|c| c.orthogonality.abs()),
        "max_v_part_sq": constraints.iter().map(|c| c.v_part_sq).fold(f64::NEG_INFINITY, f64::max),
        "max_v2": constraints.iter().map(|c| c.v2).fold(f64::NEG_INFINITY, f64::max),
        "worst": max(|c| c.worst()),
        "within_tolerance": constraints.iter().all(|c| c.within(tolerance)),
    })
}

fn spectrum_json(spec: &LagrangianSpec) -> Value {
    if spec.order() == 0 {
        return Value::Null;
    }
    match spectrum(spec) {
        Ok(s) => json!({
            "frequencies": s.frequencies,
            "oscillatory": s.oscillatory,
            "descartes": descartes_check(spec),
            "roots_z2": s.roots_z2.iter().map(|u| [u.re, u.im]).collect::<Vec<_>>(),
            "max_residual": s.max_residual,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// One CSV row per sample, with drifts taken from the conservation report.
fn trajectory_rows(traj: &Trajectory, report: &ConservationReport, stride: usize) -> Result<Vec<Row>, CliError> {
    let spec = &traj.spec;
    let mut rows = Vec::new();
    for (i, s) in traj.samples.iter().enumerate() {
        if i % stride != 0 && i + 1 != traj.samples.len() {
            continue;
        }
        let p = canonical_momentum(spec, s)?;
        let h = if spec.order() <= 2 { Some(hamiltonian(spec, s)?) } else { None };
        let spin = if spec.order() <= 3 { Some(spin_vector(spec, s)?) } else { None };
        let mut row = Row::kinematic(s.tau, s.position(), s.velocity(), Some(s.acceleration()));
        row.p = Some(p);
        row.h = h;
        row.spin = spin;
        row.drift_p = Some(report.p_series[i]);
        row.drift_j = report.j_series.as_ref().map(|v| v[i]);
        row.drift_h = report.h_series.as_ref().map(|v| v[i]);
        rows.push(row);
    }
    Ok(rows)
}

fn boost_of(c: [f64; 3]) -> Result<BoostVelocity, CliError> {
    Ok(BoostVelocity::new(ThreeVector::from_array(c))?)
}

fn run_dirac(s: &DiracScenario, tolerance: f64) -> Result<Outcome, CliError> {
    let base = DiracParams {
        m: s.params.m,
        p: fv(s.params.p),
        amp_e: fv(s.params.e),
        amp_h: fv(s.params.h),
        x0: fv(s.params.x0),
    };
    let params = base.boosted(&boost_of(s.boost)?);
    let taus = taus(&s.output)?;
    let samples = taus
        .iter()
        .map(|&t| dirac::state_at(&params, t))
        .collect::<Result<Vec<_>, _>>()?;
    let traj = Trajectory {
        spec: params.spec(),
        dtau: spacing(&taus),
        samples,
    };
    let report = conservation_report(&traj)?;
    let rows = trajectory_rows(&traj, &report, 1)?;

    let pl = dirac::pauli_lubanski(&params)?;
    let sdot = taus
        .iter()
        .map(|&t| dirac::sdot_times_p(&params, t).map(|c| c.residual_sdot.max(c.residual_accel)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0_f64, f64::max);
    let (lo, hi) = dirac::times_ratio_range(&params)?;
    let report_json = json!({
        "conservation": conservation_json(&report),
        "constraints": constraints_json(&report.constraints, tolerance),
        "spectrum": spectrum_json(&traj.spec),
        "spin": {
            "spin_vector_start": traj.samples.first().map(|st| spin_vector(&traj.spec, st)).transpose()?,
            "mean_spin_vector": dirac::mean_spin_vector(&params)?,
            "pauli_lubanski": pl.w,
            "pauli_lubanski_sq": pl.w_sqr,
            "helicity": pl.helicity,
            "spin_half_residual": dirac::spin_half_residual(&params)?,
            "mean_boost_vector": dirac::mean_boost_vector(&params)?,
            "max_sdot_residual": sdot,
        },
        "kinematics": {
            "times_ratio_mean": dirac::times_ratio_mean(&params)?,
            "times_ratio_min": lo,
            "times_ratio_max": hi,
            "constant_v2": dirac::constant_v2_info(&params)?,
            "polarization": dirac::polarization_info(&params)?,
            "classification_start": classify_v2(traj.samples[0].velocity(), DEFAULT_CLASSIFY_TOL).ok(),
        },
        "discrepancies": [],
    });
    Ok(Outcome {
        rows: Some(rows),
        report: report_json,
        failure: None,
    })
}

fn spec_of(m: f64, coeffs: &[f64]) -> Result<LagrangianSpec, CliError> {
    Ok(LagrangianSpec::new(m, coeffs.to_vec())?)
}

fn run_integrate(s: &IntegrateScenario, tolerance: f64) -> Result<Outcome, CliError> {
    let spec = spec_of(s.params.m, &s.params.coeffs)?;
    let init = KinematicState::new(s.params.tau0, s.params.init.iter().copied().map(fv).collect());
    if s.output.stride == 0 {
        return Err(CliError::Config {
            message: "stride must be at least 1".into(),
            field: Some("output.stride".into()),
        });
    }
    let traj = integrate(&spec, &init, s.output.tau_end, s.output.dtau)?;
    let report = conservation_report(&traj)?;
    let rows = trajectory_rows(&traj, &report, s.output.stride)?;
    let spin_at = |st: &KinematicState| -> Result<Option<ThreeVector>, CliError> {
        Ok(if spec.order() <= 3 { Some(spin_vector(&spec, st)?) } else { None })
    };
    let first = &traj.samples[0];
    let last = traj.last().expect("trajectory has its initial sample");
    let report_json = json!({
        "conservation": conservation_json(&report),
        "constraints": constraints_json(&report.constraints, tolerance),
        "spectrum": spectrum_json(&spec),
        "spin": {
            "spin_vector_start": spin_at(first)?,
            "spin_vector_end": spin_at(last)?,
        },
        "kinematics": {
            "steps": traj.len() - 1,
            "tau_end": last.tau,
            "times_ratio_mean": traj.samples.iter().map(|st| st.velocity().t).sum::<f64>() / traj.len() as f64,
        },
        "discrepancies": [],
    });
    Ok(Outcome {
        rows: Some(rows),
        report: report_json,
        failure: None,
    })
}

fn run_stability(s: &StabilityScenario) -> Result<Outcome, CliError> {
    let spec = spec_of(s.params.m, &s.params.coeffs)?;
    let sp = spectrum(&spec)?;
    let report = json!({
        "conservation": null,
        "constraints": null,
        "spectrum": {
            "frequencies": sp.frequencies,
            "oscillatory": sp.oscillatory,
            "descartes": descartes_check(&spec),
            "roots_z2": sp.roots_z2.iter().map(|u| [u.re, u.im]).collect::<Vec<_>>(),
            "max_residual": sp.max_residual,
        },
        "spin": null,
        "discrepancies": [],
    });
    Ok(Outcome {
        rows: None,
        report,
        failure: None,
    })
}

fn run_zerospin(s: &ZerospinScenario, tolerance: f64) -> Result<Outcome, CliError> {
    let params = LinearOscParams {
        m: s.params.m,
        k1: s.params.k1,
        p: fv(s.params.p),
        amp_f: fv(s.params.f),
        phase: s.params.phase,
    };
    params.validate()?;
    let w = boost_of(s.boost)?;
    let moved = params.boosted(&w);
    let spec = moved.spec()?;
    let taus = taus(&s.output)?;
    let samples = taus
        .iter()
        .map(|&t| zerospin::linear_state_at(&moved, t))
        .collect::<Result<Vec<_>, _>>()?;
    let traj = Trajectory {
        spec: spec.clone(),
        dtau: spacing(&taus),
        samples,
    };
    let report = conservation_report(&traj)?;
    let rows = trajectory_rows(&traj, &report, 1)?;

    let cmf_max = taus
        .iter()
        .map(|&t| zerospin::cmf_spin(&params, t).map(|v| v.max_abs()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0_f64, f64::max);
    let sq = zerospin::mean_spin_squared(&params, &w)?;
    let helicity = zerospin::helicity_zero_check(&params, &w)?;
    let report_json = json!({
        "conservation": conservation_json(&report),
        "constraints": constraints_json(&report.constraints, tolerance),
        "spectrum": spectrum_json(&spec),
        "spin": {
            "omega": params.omega(),
            "period": params.period(),
            "cmf_spin_max_abs": cmf_max,
            "mean_spin": zerospin::mean_spin(&params, &w)?,
            "mean_spin_squared": sq,
            "max_helicity": helicity.max_helicity,
            "max_pauli_lubanski": helicity.max_pauli_lubanski,
        },
        "discrepancies": [{
            "quantity": "mean_spin_squared",
            "implemented": sq.implemented,
            "linear_omega_formula": sq.linear_omega_formula,
            "difference": sq.discrepancy(),
            "flagged": sq.discrepancy() != 0.0,
            "note": "alternative prefactor 1/(2 omega) versus 1/(2 omega^2) from averaging k1 (v x a) squared",
        }],
    });
    Ok(Outcome {
        rows: Some(rows),
        report: report_json,
        failure: None,
    })
}

fn run_cronon(s: &CrononScenario, tolerance: f64) -> Result<Outcome, CliError> {
    let field = AntisymTensor::electromagnetic(
        ThreeVector::from_array(s.params.electric),
        ThreeVector::from_array(s.params.magnetic),
    );
    let t = s.params.t.unwrap_or_else(|| cronon::default_cronon(s.params.m, s.params.e));
    let params = CrononParams::new(s.params.m, s.params.e, t, field)?;
    let v0 = fv(s.seed.v_init);
    let v1 = s.seed.v_second.map(fv).unwrap_or_else(|| cronon::euler_seed(&params, v0));
    let run = cronon::simulate_cronon(&params, (v0, v1), s.output.steps)?;
    let rows: Vec<Row> = run
        .iter()
        .enumerate()
        .map(|(k, v)| Row::kinematic((k as f64 - 1.0) * t, FourVector::ZERO, *v, None).without_position())
        .collect();
    let norm_drift = run
        .iter()
        .map(|v| (v.norm_sqr() - 1.0).abs())
        .fold(0.0_f64, f64::max);
    let report = json!({
        "conservation": { "max_abs_v2_minus_1": norm_drift },
        "constraints": {
            "max_abs_v2_minus_1": norm_drift,
            "within_tolerance": norm_drift <= tolerance,
        },
        "spectrum": {
            "cronon": t,
            "coefficients": (0..=5).map(|i| cronon::cronon_coefficient(params.m, t, i)).collect::<Vec<_>>(),
        },
        "spin": null,
        "discrepancies": [],
    });
    Ok(Outcome {
        rows: Some(rows),
        report,
        failure: None,
    })
}

fn run_audit(s: &AuditScenario, tolerance: f64) -> Result<Outcome, CliError> {
    let spec = spec_of(s.params.m, &s.params.coeffs)?;
    let state = KinematicState::new(0.0, s.state.iter().copied().map(fv).collect());
    let m = spec.mass();
    let p = canonical_momentum(&spec, &state)?;
    let v = state.velocity();
    let c = ConstraintResiduals::evaluate(v, p, m);
    let newton = newton_residual(&spec, &state).ok().map(|r| r.max_abs());
    let hamilton = if spec.order() == 1 {
        hamilton_residuals(&spec, &state).ok().map(|r| r.max_abs())
    } else {
        None
    };
    let identities = if spec.order() == 1 && state.derivs.len() >= 4 {
        let sdot = wedge_over(state.acc(1), v, -spec.k(1));
        let (r1, r2) = v2_identities_residual(v, p, m, &sdot);
        Some([r1, r2])
    } else {
        None
    };
    let spin = if spec.order() <= 3 { Some(spin_vector(&spec, &state)?) } else { None };
    let pl = if spec.order() <= 3 { Some(spin_tensor(&spec, &state)?.pauli_lubanski(p)) } else { None };
    let classification = classify_v2(v, DEFAULT_CLASSIFY_TOL);
    let within = c.within(tolerance);
    let report = json!({
        "conservation": null,
        "constraints": {
            "h1": c.h1,
            "h2": c.h2,
            "orthogonality": c.orthogonality,
            "v_part_sq": c.v_part_sq,
            "v2": c.v2,
            "worst": c.worst(),
            "within_tolerance": within,
            "newton_residual": newton,
            "hamilton_residual": hamilton,
            "v2_identities": identities,
            "classification": classification.as_ref().ok(),
        },
        "spectrum": spectrum_json(&spec),
        "spin": { "spin_vector": spin, "pauli_lubanski": pl, "momentum": p },
        "discrepancies": [],
    });
    Ok(Outcome {
        rows: None,
        report,
        failure: (!within).then_some(CliError::Audit {
            worst: c.worst(),
            tolerance,
        }),
    })
}
