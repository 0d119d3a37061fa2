//! Fixed-step RK4 integration of the free generalized Newton equation
//! `Σ (−1)^i k_i a⁽²ⁱ⁾ = 0`, and audits of the conserved charges along the
//! resulting trajectories.
//!
//! The first-order system carries x, ẋ, …, x⁽²ⁿ⁺¹⁾; the top derivative
//! x⁽²ⁿ⁺²⁾ is solved algebraically from the equation of motion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::ConstraintResiduals;
use crate::lagrangian::{
    canonical_momentum, hamiltonian, total_angular_momentum, KinematicState, LagrangianSpec,
};
use crate::minkowski::{AntisymTensor, FourVector};

/// Any component beyond this magnitude is treated as divergence.
pub const DIVERGENCE_THRESHOLD: f64 = 1e12;

/// Dimension of the first-order system, 4·(2n + 2).
pub fn reduce_order(spec: &LagrangianSpec) -> Result<usize> {
    let n = spec.order();
    if n > 0 && spec.k(n) == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient { order: n });
    }
    Ok(4 * spec.state_len())
}

/// x⁽²ⁿ⁺²⁾ from the lower derivatives.
fn top_derivative(spec: &LagrangianSpec, chain: &[FourVector]) -> FourVector {
    let n = spec.order();
    if n == 0 {
        return FourVector::ZERO;
    }
    let sum = (0..n).fold(FourVector::ZERO, |acc, i| {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc + chain[2 * i + 2] * (sign * spec.k(i))
    });
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    sum * (sign / spec.k(n))
}

/// Derivative of the reduced state: shift the chain up by one and append the
/// solved top derivative.
fn flow(spec: &LagrangianSpec, chain: &[FourVector], out: &mut [FourVector]) {
    let len = chain.len();
    out[..len - 1].copy_from_slice(&chain[1..]);
    out[len - 1] = top_derivative(spec, chain);
}

/// Samples of an integrated solution at uniform proper-time steps.
#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub spec: LagrangianSpec,
    pub dtau: f64,
    /// Each sample carries x … x⁽²ⁿ⁺²⁾, the last entry solved from the
    /// equation of motion.
    pub samples: Vec<KinematicState>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> Option<&KinematicState> {
        self.samples.last()
    }
}

fn complete(spec: &LagrangianSpec, tau: f64, chain: &[FourVector]) -> KinematicState {
    let mut derivs = chain.to_vec();
    derivs.push(top_derivative(spec, chain));
    KinematicState::new(tau, derivs)
}

/// Integrates from `init` up to `tau_end` with step `dtau`. A negative
/// `dtau` integrates backwards (then `tau_end < init.tau`).
///
/// The final step lands exactly on `tau_end` when the span is a whole number
/// of steps; otherwise the run stops at the last full step before it.
pub fn integrate(
    spec: &LagrangianSpec,
    init: &KinematicState,
    tau_end: f64,
    dtau: f64,
) -> Result<Trajectory> {
    reduce_order(spec)?;
    let len = spec.state_len();
    if init.derivs.len() < len {
        return Err(Error::InsufficientDerivatives {
            needed: len,
            got: init.derivs.len(),
        });
    }
    let span = tau_end - init.tau;
    if !(dtau != 0.0 && dtau.is_finite() && span.is_finite() && span * dtau > 0.0) {
        return Err(Error::InvalidParams(format!(
            "cannot step from {} to {tau_end} with dtau = {dtau}",
            init.tau
        )));
    }
    let steps = (span / dtau * (1.0 + 1e-12)).floor() as usize;

    let mut chain: Vec<FourVector> = init.derivs[..len].to_vec();
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(complete(spec, init.tau, &chain));

    let mut k1 = vec![FourVector::ZERO; len];
    let mut k2 = vec![FourVector::ZERO; len];
    let mut k3 = vec![FourVector::ZERO; len];
    let mut k4 = vec![FourVector::ZERO; len];
    let mut tmp = vec![FourVector::ZERO; len];
    let half = 0.5 * dtau;
    for step in 1..=steps {
        flow(spec, &chain, &mut k1);
        for i in 0..len {
            tmp[i] = chain[i] + k1[i] * half;
        }
        flow(spec, &tmp, &mut k2);
        for i in 0..len {
            tmp[i] = chain[i] + k2[i] * half;
        }
        flow(spec, &tmp, &mut k3);
        for i in 0..len {
            tmp[i] = chain[i] + k3[i] * dtau;
        }
        flow(spec, &tmp, &mut k4);
        for i in 0..len {
            chain[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dtau / 6.0);
        }

        let tau = init.tau + step as f64 * dtau;
        if chain
            .iter()
            .any(|d| !d.is_finite() || d.max_abs() > DIVERGENCE_THRESHOLD)
        {
            return Err(Error::NonFiniteState { tau });
        }
        samples.push(complete(spec, tau, &chain));
    }
    Ok(Trajectory {
        spec: spec.clone(),
        dtau,
        samples,
    })
}

/// Drift of the conserved charges along a trajectory. `None` marks a charge
/// skipped because it has no closed form at the trajectory's order.
#[derive(Clone, Debug, Serialize)]
pub struct ConservationReport {
    /// max ‖p(τ) − p(0)‖∞ / max(1, ‖p(0)‖∞)
    pub p_drift: f64,
    pub j_drift: Option<f64>,
    pub h_drift: Option<f64>,
    /// Running drifts per sample, aligned with the trajectory.
    pub p_series: Vec<f64>,
    pub j_series: Option<Vec<f64>>,
    pub h_series: Option<Vec<f64>>,
    /// Mass-shell and orthogonality residuals per sample, using m = √(p(0)²)
    /// as the `LagrangianSpec` mass.
    pub constraints: Vec<ConstraintResiduals>,
}

impl ConservationReport {
    /// Largest constraint violation along the run.
    pub fn worst_constraint(&self) -> f64 {
        self.constraints
            .iter()
            .fold(0.0_f64, |acc, c| acc.max(c.worst()))
    }
}

fn relative(delta: f64, reference: f64) -> f64 {
    delta / reference.max(1.0)
}

pub fn conservation_report(trajectory: &Trajectory) -> Result<ConservationReport> {
    let spec = &trajectory.spec;
    let first = trajectory
        .samples
        .first()
        .ok_or_else(|| Error::InvalidParams("empty trajectory".into()))?;
    let m = spec.mass();
    let n = spec.order();

    let p0 = canonical_momentum(spec, first)?;
    let j0: Option<AntisymTensor> = if n <= 3 {
        Some(total_angular_momentum(spec, first)?)
    } else {
        None
    };
    let h0 = if n <= 2 { Some(hamiltonian(spec, first)?) } else { None };

    let mut p_series = Vec::with_capacity(trajectory.len());
    let mut j_series = j0.map(|_| Vec::with_capacity(trajectory.len()));
    let mut h_series = h0.map(|_| Vec::with_capacity(trajectory.len()));
    let mut constraints = Vec::with_capacity(trajectory.len());
    for sample in &trajectory.samples {
        let p = canonical_momentum(spec, sample)?;
        p_series.push(relative((p - p0).max_abs(), p0.max_abs()));
        if let (Some(j0), Some(series)) = (j0, j_series.as_mut()) {
            let j = total_angular_momentum(spec, sample)?;
            series.push(relative((j - j0).max_abs(), j0.max_abs()));
        }
        if let (Some(h0), Some(series)) = (h0, h_series.as_mut()) {
            let h = hamiltonian(spec, sample)?;
            series.push(relative((h - h0).abs(), h0.abs()));
        }
        constraints.push(ConstraintResiduals::evaluate(sample.velocity(), p, m));
    }
    let max = |s: &[f64]| s.iter().fold(0.0_f64, |acc, &d| acc.max(d));
    Ok(ConservationReport {
        p_drift: max(&p_series),
        j_drift: j_series.as_deref().map(max),
        h_drift: h_series.as_deref().map(max),
        p_series,
        j_series,
        h_series,
        constraints,
    })
}
