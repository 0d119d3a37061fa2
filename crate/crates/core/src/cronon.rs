//! Caldirola's cronon: an infinite-order Lagrangian with
//! `k_i = (−1)^i m T^{2i}/(2i+1)!`, and the two-point finite-difference
//! equation for a charge in a constant field,
//!
//! ```text
//! m[v(τ+T) − v(τ−T) + v(τ)(v(τ)·(v(τ+T) − v(τ−T)))]/2T = e F v(τ)
//! ```

use nalgebra::{Matrix4, Vector4};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::minkowski::{AntisymTensor, FourVector};

/// Condition number above which the step matrix counts as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Highest index for which [`cronon_coefficient`] is evaluated; beyond it
/// the series is treated as negligible and zero is returned.
pub const MAX_COEFFICIENT_INDEX: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrononParams {
    pub m: f64,
    pub e: f64,
    pub t: f64,
    pub field: AntisymTensor,
}

impl CrononParams {
    /// Cronon fixed by the charge, T = (4/3)e²/m.
    pub fn with_default_cronon(m: f64, e: f64, field: AntisymTensor) -> Result<Self> {
        CrononParams::new(m, e, default_cronon(m, e), field)
    }

    pub fn new(m: f64, e: f64, t: f64, field: AntisymTensor) -> Result<Self> {
        let params = CrononParams { m, e, t, field };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m > 0.0) || !self.m.is_finite() {
            return Err(Error::InvalidParams(format!("mass must be positive, got {}", self.m)));
        }
        if !(self.t > 0.0) || !self.t.is_finite() {
            return Err(Error::InvalidParams(format!("cronon must be positive, got {}", self.t)));
        }
        if !self.e.is_finite() || !self.field.is_finite() {
            return Err(Error::InvalidParams("non-finite charge or field".into()));
        }
        Ok(())
    }
}

pub fn default_cronon(m: f64, e: f64) -> f64 {
    4.0 / 3.0 * e * e / m
}

/// `(−1)^i m T^{2i}/(2i+1)!`; zero for i > 20.
pub fn cronon_coefficient(m: f64, t: f64, i: usize) -> f64 {
    if i > MAX_COEFFICIENT_INDEX {
        return 0.0;
    }
    let factorial: f64 = (1..=2 * i + 1).map(|k| k as f64).product();
    let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * m * t.powi(2 * i as i32) / factorial
}

/// The step matrix `M = I + v ⊗ (g v)`, i.e. `M^μ_ν = δ^μ_ν + v^μ v_ν`.
pub fn step_matrix(v: FourVector) -> Matrix4<f64> {
    let up = Vector4::from(v.to_array());
    let down = Vector4::from(v.lowered());
    Matrix4::identity() + up * down.transpose()
}

fn condition_number(m: &Matrix4<f64>) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Advances the recurrence one cronon: returns v(τ+T) from v(τ−T) and v(τ).
pub fn fd_step(params: &CrononParams, v_prev: FourVector, v_curr: FourVector) -> Result<FourVector> {
    let rhs = params.field.contract(v_curr) * (2.0 * params.t * params.e / params.m);
    if rhs.max_abs() == 0.0 {
        return Ok(v_prev);
    }
    let m = step_matrix(v_curr);
    let condition = condition_number(&m);
    if !(condition <= MAX_CONDITION) {
        return Err(Error::SingularSystem { condition });
    }
    let delta = m
        .lu()
        .solve(&Vector4::from(rhs.to_array()))
        .ok_or(Error::SingularSystem { condition })?;
    Ok(v_prev + FourVector::new(delta[0], delta[1], delta[2], delta[3]))
}

/// Second seed one cronon after `v0`: an explicit Euler step of the Lorentz
/// force, renormalized to v·v = 1.
pub fn euler_seed(params: &CrononParams, v0: FourVector) -> FourVector {
    let v1 = v0 + params.field.contract(v0) * (params.t * params.e / params.m);
    let norm = v1.norm_sqr();
    if norm > 0.0 {
        v1 / norm.sqrt()
    } else {
        v1
    }
}

/// Iterates [`fd_step`] from the seeds v(−T), v(0). The result holds the
/// velocity at τ = kT for k = −1, 0, …, steps.
pub fn simulate_cronon(
    params: &CrononParams,
    seeds: (FourVector, FourVector),
    steps: usize,
) -> Result<Vec<FourVector>> {
    params.validate()?;
    let mut out = Vec::with_capacity(steps + 2);
    out.push(seeds.0);
    out.push(seeds.1);
    for k in 0..steps {
        let next = fd_step(params, out[k], out[k + 1])?;
        if !next.is_finite() {
            return Err(Error::NonFiniteState {
                tau: (k + 1) as f64 * params.t,
            });
        }
        out.push(next);
    }
    Ok(out)
}
