//! Closed-form classical Dirac particle: the first-order model with
//! k₁ = −1/4m, whose general free solution is
//!
//! ```text
//! v(τ) = p/m + E cos(2mτ) + H sin(2mτ)
//! x(τ) = x₀ + pτ/m + E sin(2mτ)/2m − H cos(2mτ)/2m
//! ```
//!
//! with p·E = p·H = 0. Units ħ = c = 1.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lagrangian::{spin_vector, KinematicState, LagrangianSpec};
use crate::minkowski::{cross, wedge_over, BoostVelocity, FourVector, ThreeVector};

/// Tolerance on the parameter constraints.
pub const PARAM_TOL: f64 = 1e-10;

/// Number of position derivatives produced by [`state_at`]: x through x⁽⁷⁾.
pub const CHAIN_LEN: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiracParams {
    pub m: f64,
    pub p: FourVector,
    pub amp_e: FourVector,
    pub amp_h: FourVector,
    pub x0: FourVector,
}

impl DiracParams {
    /// Spin-½ lightlike solution in the centre-of-mass frame:
    /// p = (m;0,0,0), E = x̂, H = ŷ, x₀ = 0.
    pub fn canonical(m: f64) -> Self {
        DiracParams {
            m,
            p: FourVector::new(m, 0.0, 0.0, 0.0),
            amp_e: FourVector::new(0.0, 1.0, 0.0, 0.0),
            amp_h: FourVector::new(0.0, 0.0, 1.0, 0.0),
            x0: FourVector::ZERO,
        }
    }

    /// Same motion seen from a frame boosted by `w`.
    pub fn boosted(&self, w: &BoostVelocity) -> Self {
        DiracParams {
            m: self.m,
            p: w.apply(self.p),
            amp_e: w.apply(self.amp_e),
            amp_h: w.apply(self.amp_h),
            x0: w.apply(self.x0),
        }
    }

    /// Centre-of-mass 3-velocity 𝐩/p⁰.
    pub fn cm_velocity(&self) -> ThreeVector {
        self.p.spatial() / self.p.t
    }

    pub fn omega(&self) -> f64 {
        2.0 * self.m
    }

    /// Proper-time period π/m.
    pub fn period(&self) -> f64 {
        std::f64::consts::PI / self.m
    }

    pub fn spec(&self) -> LagrangianSpec {
        LagrangianSpec::dirac(self.m).expect("validated mass")
    }

    /// The same parameters seen from the centre-of-mass frame.
    pub fn to_cmf(&self) -> Result<Self> {
        let w = BoostVelocity::of_momentum(self.p)?;
        Ok(self.boosted(&w.inverse()))
    }
}

/// Constraint residuals of a parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParamResiduals {
    /// p² − m²
    pub mass_shell: f64,
    /// p·E
    pub p_dot_e: f64,
    /// p·H
    pub p_dot_h: f64,
    /// E⁰ − 𝐰·𝐄
    pub e0: f64,
    /// H⁰ − 𝐰·𝐇
    pub h0: f64,
}

impl ParamResiduals {
    pub fn entries(&self) -> [(&'static str, f64); 5] {
        [
            ("p^2 - m^2", self.mass_shell),
            ("p.E", self.p_dot_e),
            ("p.H", self.p_dot_h),
            ("E0 - w.E", self.e0),
            ("H0 - w.H", self.h0),
        ]
    }

    /// Names and values of every residual above `tol`.
    pub fn violations(&self, tol: f64) -> Vec<(&'static str, f64)> {
        self.entries()
            .into_iter()
            .filter(|(_, r)| !(r.abs() <= tol))
            .collect()
    }
}

pub fn validate(params: &DiracParams) -> ParamResiduals {
    let w = params.cm_velocity();
    ParamResiduals {
        mass_shell: params.p.norm_sqr() - params.m * params.m,
        p_dot_e: params.p.dot(params.amp_e),
        p_dot_h: params.p.dot(params.amp_h),
        e0: params.amp_e.t - w.dot(params.amp_e.spatial()),
        h0: params.amp_h.t - w.dot(params.amp_h.spatial()),
    }
}

fn check(params: &DiracParams) -> Result<()> {
    if !(params.m > 0.0) || !params.m.is_finite() {
        return Err(Error::InvalidParams(format!("mass must be positive, got {}", params.m)));
    }
    if !(params.p.t > 0.0) {
        return Err(Error::InvalidParams("momentum must be future-pointing".into()));
    }
    let scale = params.p.t.max(1.0).powi(2);
    let bad = validate(params).violations(PARAM_TOL * scale);
    if bad.is_empty() {
        Ok(())
    } else {
        let detail: Vec<String> = bad.iter().map(|(n, r)| format!("{n} = {r:e}")).collect();
        Err(Error::InvalidParams(detail.join(", ")))
    }
}

/// (d/dτ)^k of (cos ωτ, sin ωτ), without the ω^k factor.
fn trig_derivative(k: usize, c: f64, s: f64) -> (f64, f64) {
    match k % 4 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

/// Oscillating part of v⁽ʲ⁾: ω^j (E cos⁽ʲ⁾ + H sin⁽ʲ⁾).
fn zbw_derivative(params: &DiracParams, j: usize, tau: f64) -> FourVector {
    let omega = params.omega();
    let (c, s) = ((omega * tau).cos(), (omega * tau).sin());
    let (dc, ds) = trig_derivative(j, c, s);
    (params.amp_e * dc + params.amp_h * ds) * omega.powi(j as i32)
}

/// Exact kinematic state x, v, a, ȧ, … (x through x⁽⁷⁾) at proper time τ.
pub fn state_at(params: &DiracParams, tau: f64) -> Result<KinematicState> {
    check(params)?;
    Ok(exact_state(params, tau))
}

fn exact_state(params: &DiracParams, tau: f64) -> KinematicState {
    let m = params.m;
    let omega = params.omega();
    let (c, s) = ((omega * tau).cos(), (omega * tau).sin());
    let mut derivs = Vec::with_capacity(CHAIN_LEN);
    derivs.push(
        params.x0 + params.p * (tau / m) + params.amp_e * (s / omega) - params.amp_h * (c / omega),
    );
    derivs.push(params.p / m + zbw_derivative(params, 0, tau));
    for j in 1..CHAIN_LEN - 1 {
        derivs.push(zbw_derivative(params, j, tau));
    }
    KinematicState::new(tau, derivs)
}

/// 𝐄*²𝐇*² − (𝐄*·𝐇*)² − 1 evaluated in the centre-of-mass frame.
pub fn spin_half_residual(params: &DiracParams) -> Result<f64> {
    check(params)?;
    let cmf = params.to_cmf()?;
    let e = cmf.amp_e.spatial();
    let h = cmf.amp_h.spatial();
    Ok(e.norm_sqr() * h.norm_sqr() - e.dot(h).powi(2) - 1.0)
}

/// Constant-v² solution data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstantV2 {
    /// v² = 1 + E²
    pub v2: f64,
    /// √(−E²)
    pub cmf_speed: f64,
    /// Orbit radius in the CMF, √(−E²)/2m.
    pub radius: f64,
    /// a² = 4m²E², always spacelike.
    pub a2: f64,
}

/// Present iff E·H = 0 and E² = H² (to `PARAM_TOL`).
pub fn constant_v2_info(params: &DiracParams) -> Result<Option<ConstantV2>> {
    check(params)?;
    let e = params.amp_e;
    let h = params.amp_h;
    if e.dot(h).abs() > PARAM_TOL || (e.norm_sqr() - h.norm_sqr()).abs() > PARAM_TOL {
        return Ok(None);
    }
    let e2 = e.norm_sqr();
    let m = params.m;
    let v2 = 1.0 + e2;
    let a2 = 4.0 * m * m * e2;
    debug_assert!((a2 - 4.0 * m * m * (v2 - 1.0)).abs() <= 1e-12 * a2.abs().max(1.0));
    Ok(Some(ConstantV2 {
        v2,
        cmf_speed: (-e2).max(0.0).sqrt(),
        radius: (-e2).max(0.0).sqrt() / (2.0 * m),
        a2,
    }))
}

/// v⁰(τ) = p⁰/m + 𝐰·𝐄 cos 2mτ + 𝐰·𝐇 sin 2mτ, with 𝐰 = 𝐩/p⁰.
pub fn times_ratio(params: &DiracParams, tau: f64) -> Result<f64> {
    check(params)?;
    let w = params.cm_velocity();
    let phase = params.omega() * tau;
    Ok(params.p.t / params.m
        + w.dot(params.amp_e.spatial()) * phase.cos()
        + w.dot(params.amp_h.spatial()) * phase.sin())
}

/// Mean of v⁰ over a period, exactly p⁰/m = γ.
pub fn times_ratio_mean(params: &DiracParams) -> Result<f64> {
    check(params)?;
    Ok(params.p.t / params.m)
}

/// Extremes of v⁰ over a period: γ ∓ √((𝐰·𝐄)² + (𝐰·𝐇)²).
pub fn times_ratio_range(params: &DiracParams) -> Result<(f64, f64)> {
    check(params)?;
    let w = params.cm_velocity();
    let amp = w.dot(params.amp_e.spatial()).hypot(w.dot(params.amp_h.spatial()));
    let mean = params.p.t / params.m;
    Ok((mean - amp, mean + amp))
}

/// dt/dt′ between two frames obtained by boosting `params` with `frame1` and
/// `frame2`.
pub fn times_ratio_between(
    params: &DiracParams,
    frame1: &BoostVelocity,
    frame2: &BoostVelocity,
    tau: f64,
) -> Result<f64> {
    let first = times_ratio(&params.boosted(frame1), tau)?;
    let second = times_ratio(&params.boosted(frame2), tau)?;
    Ok(first / second)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PauliLubanski {
    pub w: FourVector,
    /// W·W = −m²𝐬*²
    pub w_sqr: f64,
    /// Helicity of the period-mean spin; `None` when |𝐩| or |𝐬̄| vanishes.
    pub helicity: Option<f64>,
}

/// Closed form W⁰ = ½𝐩·(𝐇×𝐄), 𝐖 = ½[p⁰(𝐇×𝐄) + H⁰(𝐄×𝐩) + E⁰(𝐩×𝐇)].
pub fn pauli_lubanski(params: &DiracParams) -> Result<PauliLubanski> {
    check(params)?;
    let p = params.p.spatial();
    let e = params.amp_e.spatial();
    let h = params.amp_h.spatial();
    let hxe = cross(h, e);
    let w = FourVector::from_parts(
        0.5 * p.dot(hxe),
        (hxe * params.p.t + cross(e, p) * params.amp_h.t + cross(p, h) * params.amp_e.t) * 0.5,
    );
    Ok(PauliLubanski {
        w,
        w_sqr: w.norm_sqr(),
        helicity: helicity(params)?,
    })
}

/// Period mean of the first-order spin vector. The spin tensor is quadratic
/// in the phase, so eight uniform samples give the exact mean.
pub fn mean_spin_vector(params: &DiracParams) -> Result<ThreeVector> {
    check(params)?;
    let spec = params.spec();
    let n = 8;
    let mut acc = ThreeVector::ZERO;
    for i in 0..n {
        let tau = params.period() * i as f64 / n as f64;
        acc = acc + spin_vector(&spec, &exact_state(params, tau))?;
    }
    Ok(acc / n as f64)
}

/// 𝐬̄·𝐩/(|𝐬̄||𝐩|) with 𝐬̄ the period-mean spin vector.
pub fn helicity(params: &DiracParams) -> Result<Option<f64>> {
    let s = mean_spin_vector(params)?;
    let p = params.p.spatial();
    let denom = s.norm() * p.norm();
    Ok(if denom > 1e-300 { Some(s.dot(p) / denom) } else { None })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PolarizationInfo {
    /// 𝐰·𝐄 = 𝐰·𝐇 = 0, so V⁰ ≡ 0 and v⁰ ≡ γ.
    pub is_standard_frame: bool,
    pub helicity: Option<f64>,
    /// max over τ of |𝐕·𝐩̂|
    pub longitudinal_amp: f64,
    /// max over τ of |𝐕 − (𝐕·𝐩̂)𝐩̂|
    pub transverse_amp: f64,
}

/// Largest |A cos θ + B sin θ| over θ: the root of the top eigenvalue of the
/// Gram matrix of (A, B).
fn max_ellipse_radius(a: ThreeVector, b: ThreeVector) -> f64 {
    let (aa, bb, ab) = (a.norm_sqr(), b.norm_sqr(), a.dot(b));
    let mean = 0.5 * (aa + bb);
    let dev = (0.25 * (aa - bb).powi(2) + ab * ab).sqrt();
    (mean + dev).sqrt()
}

pub fn polarization_info(params: &DiracParams) -> Result<PolarizationInfo> {
    check(params)?;
    let w = params.cm_velocity();
    let e = params.amp_e.spatial();
    let h = params.amp_h.spatial();
    let scale = params.p.t.max(1.0);
    let standard = w.dot(e).abs() <= PARAM_TOL * scale && w.dot(h).abs() <= PARAM_TOL * scale;
    let p = params.p.spatial();
    let (longitudinal_amp, transverse_amp) = if p.norm() == 0.0 {
        (0.0, max_ellipse_radius(e, h))
    } else {
        let n = p / p.norm();
        let (el, hl) = (e.dot(n), h.dot(n));
        (
            el.hypot(hl),
            max_ellipse_radius(e - n * el, h - n * hl),
        )
    };
    Ok(PolarizationInfo {
        is_standard_frame: standard,
        helicity: pauli_lubanski(params)?.helicity,
        longitudinal_amp,
        transverse_amp,
    })
}

/// Period-mean of the boost generator 𝐤 = (S⁰¹, S⁰², S⁰³):
/// ½(H⁰𝐄 − E⁰𝐇).
pub fn mean_boost_vector(params: &DiracParams) -> Result<ThreeVector> {
    check(params)?;
    Ok((params.amp_e.spatial() * params.amp_h.t - params.amp_h.spatial() * params.amp_e.t) * 0.5)
}

/// Intrinsic electric dipole in the CMF, −(e/4m²)𝐚*(τ) = (e/m)𝐤*(τ).
pub fn dipole_cmf(params: &DiracParams, charge: f64, tau: f64) -> Result<ThreeVector> {
    check(params)?;
    let cmf = params.to_cmf()?;
    let a = zbw_derivative(&cmf, 1, tau).spatial();
    Ok(a * (-charge / (4.0 * params.m * params.m)))
}

/// Ṡ^{μν}p_ν from the analytic spin tensor S = (a∧v)/4m, with the residuals
/// of Ṡp = ȧ/4 and a = −S̈p/m².
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SdotCheck {
    pub sdot_p: FourVector,
    pub residual_sdot: f64,
    pub residual_accel: f64,
}

pub fn sdot_times_p(params: &DiracParams, tau: f64) -> Result<SdotCheck> {
    let st = state_at(params, tau)?;
    let scale = 1.0 / (4.0 * params.m);
    let v = st.velocity();
    let a = st.acceleration();
    let adot = st.acc(1);
    let addot = st.acc(2);
    let sdot = wedge_over(adot, v, scale);
    let sddot = wedge_over(addot, v, scale) + wedge_over(adot, a, scale);
    let sdot_p = sdot.contract(params.p);
    let accel = sddot.contract(params.p) * (-1.0 / (params.m * params.m));
    Ok(SdotCheck {
        sdot_p,
        residual_sdot: (sdot_p - adot * 0.25).max_abs(),
        residual_accel: (a - accel).max_abs(),
    })
}

/// Spin tensor (a∧v)/4m of the analytic solution.
pub fn spin_tensor_at(params: &DiracParams, tau: f64) -> Result<crate::minkowski::AntisymTensor> {
    let st = state_at(params, tau)?;
    Ok(wedge_over(st.acceleration(), st.velocity(), 1.0 / (4.0 * params.m)))
}
