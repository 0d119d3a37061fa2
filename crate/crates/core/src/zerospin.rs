//! First-order systems with zero intrinsic spin: in the centre-of-mass frame
//! the motion is a linear oscillation
//!
//! ```text
//! v(τ) = p/m + F cos(ωτ + φ),   ω = √(−m/k₁)
//! ```
//!
//! so 𝐯* ∥ 𝐚* and 𝐬* = 0, while a boosted observer sees a vibrating spin
//! normal to the momentum with vanishing helicity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lagrangian::{spin_tensor, KinematicState, LagrangianSpec};
use crate::minkowski::{cross, BoostVelocity, FourVector, ThreeVector};

/// Tolerance on p·F = 0.
pub const PARAM_TOL: f64 = 1e-10;

/// Position derivatives produced by [`linear_state_at`]: x through x⁽⁵⁾.
pub const CHAIN_LEN: usize = 6;

/// Samples per period used by [`helicity_zero_check`].
pub const HELICITY_SAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearOscParams {
    pub m: f64,
    pub k1: f64,
    pub p: FourVector,
    pub amp_f: FourVector,
    pub phase: f64,
}

impl LinearOscParams {
    /// ω = √(−m/k₁).
    pub fn omega(&self) -> f64 {
        (-self.m / self.k1).sqrt()
    }

    /// 2π/ω.
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega()
    }

    pub fn spec(&self) -> Result<LagrangianSpec> {
        LagrangianSpec::new(self.m, vec![self.k1])
    }

    /// Same motion seen from a frame boosted by `w`.
    pub fn boosted(&self, w: &BoostVelocity) -> Self {
        LinearOscParams {
            p: w.apply(self.p),
            amp_f: w.apply(self.amp_f),
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m > 0.0) || !self.m.is_finite() {
            return Err(Error::InvalidParams(format!("mass must be positive, got {}", self.m)));
        }
        if !(self.k1 < 0.0) || !self.k1.is_finite() {
            return Err(Error::InvalidParams(format!("k1 must be negative, got {}", self.k1)));
        }
        if !(self.p.t > 0.0) {
            return Err(Error::InvalidParams("momentum must be future-pointing".into()));
        }
        let pf = self.p.dot(self.amp_f);
        if pf.abs() > PARAM_TOL * self.p.t.max(1.0) {
            return Err(Error::InvalidParams(format!("p.F = {pf:e}")));
        }
        Ok(())
    }
}

/// Analytic state x, v, a, ȧ, ä, a⃛ at τ, with x(0) = F sin φ/ω.
pub fn linear_state_at(params: &LinearOscParams, tau: f64) -> Result<KinematicState> {
    params.validate()?;
    let omega = params.omega();
    let theta = omega * tau + params.phase;
    let (c, s) = (theta.cos(), theta.sin());
    let mut derivs = Vec::with_capacity(CHAIN_LEN);
    derivs.push(params.p * (tau / params.m) + params.amp_f * (s / omega));
    derivs.push(params.p / params.m + params.amp_f * c);
    // j-th derivative of cos θ is ω^j cos(θ + jπ/2)
    let cycle = [c, -s, -c, s];
    for j in 1..CHAIN_LEN - 1 {
        derivs.push(params.amp_f * (cycle[j % 4] * omega.powi(j as i32)));
    }
    Ok(KinematicState::new(tau, derivs))
}

/// k₁(𝐯×𝐚) of a first-order state.
fn spin_of(k1: f64, state: &KinematicState) -> ThreeVector {
    cross(state.velocity().spatial(), state.acceleration().spatial()) * k1
}

/// Spin in the centre-of-mass frame, identically zero: there 𝐩* = 0, so
/// 𝐯*×𝐚* = −ω cos θ sin θ (𝐅*×𝐅*).
pub fn cmf_spin(params: &LinearOscParams, tau: f64) -> Result<ThreeVector> {
    params.validate()?;
    let w = BoostVelocity::of_momentum(params.p)?;
    let f = w.inverse().apply(params.amp_f).spatial();
    let omega = params.omega();
    let theta = omega * tau + params.phase;
    Ok(cross(f, f) * (-params.k1 * omega * theta.cos() * theta.sin()))
}

/// k₁(𝐯×𝐚) of the state seen from the frame boosted by `w`.
pub fn boosted_spin(params: &LinearOscParams, w: &BoostVelocity, tau: f64) -> Result<ThreeVector> {
    params.validate()?;
    let moved = params.boosted(w);
    Ok(spin_of(moved.k1, &linear_state_at(&moved, tau)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HelicityCheck {
    /// Largest |𝐬·𝐩|/(|𝐬||𝐩|) over the sampled τ; `None` when no sample has
    /// both 𝐬 and 𝐩 nonzero.
    pub max_helicity: Option<f64>,
    /// Largest component of the Pauli-Lubanski vector over the samples.
    pub max_pauli_lubanski: f64,
}

pub fn helicity_zero_check(params: &LinearOscParams, w: &BoostVelocity) -> Result<HelicityCheck> {
    params.validate()?;
    let moved = params.boosted(w);
    let spec = moved.spec()?;
    let p3 = moved.p.spatial();
    let mut max_helicity: Option<f64> = None;
    let mut max_w = 0.0_f64;
    for i in 0..HELICITY_SAMPLES {
        let tau = moved.period() * i as f64 / HELICITY_SAMPLES as f64;
        let state = linear_state_at(&moved, tau)?;
        let s = spin_of(moved.k1, &state);
        let denom = s.norm() * p3.norm();
        if denom > 1e-300 {
            let h = s.dot(p3).abs() / denom;
            max_helicity = Some(max_helicity.map_or(h, |cur| cur.max(h)));
        }
        let pl = spin_tensor(&spec, &state)?.pauli_lubanski(moved.p);
        max_w = max_w.max(pl.max_abs());
    }
    Ok(HelicityCheck {
        max_helicity,
        max_pauli_lubanski: max_w,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanSpinSquared {
    /// Period average of |k₁(𝐯×𝐚)|², (1/2ω²)|𝐅⊥×𝐩|².
    pub implemented: f64,
    /// The same with prefactor 1/2ω.
    pub linear_omega_formula: f64,
}

impl MeanSpinSquared {
    pub fn discrepancy(&self) -> f64 {
        self.linear_omega_formula - self.implemented
    }
}

pub fn mean_spin_squared(params: &LinearOscParams, w: &BoostVelocity) -> Result<MeanSpinSquared> {
    params.validate()?;
    let moved = params.boosted(w);
    let omega = moved.omega();
    let cross_sq = cross(moved.amp_f.spatial(), moved.p.spatial()).norm_sqr();
    Ok(MeanSpinSquared {
        implemented: cross_sq / (2.0 * omega * omega),
        linear_omega_formula: cross_sq / (2.0 * omega),
    })
}

/// Period average of 𝐬 in the boosted frame by uniform sampling, exact for
/// the single harmonic it contains.
pub fn mean_spin(params: &LinearOscParams, w: &BoostVelocity) -> Result<ThreeVector> {
    params.validate()?;
    let period = params.period();
    let n = HELICITY_SAMPLES;
    let mut acc = ThreeVector::ZERO;
    for i in 0..n {
        acc = acc + boosted_spin(params, w, period * i as f64 / n as f64)?;
    }
    Ok(acc / n as f64)
}
