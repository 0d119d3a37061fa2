//! Free higher-derivative Lagrangians `L = ½ Σ k_i (v⁽ⁱ⁾)²` (k₀ = m) and
//! their Nöther charges.
//!
//! A [`KinematicState`] carries the derivative chain x, v = ẋ, a = v̇, ȧ, …
//! so `derivs[k]` is the k-th proper-time derivative of the position and
//! `v⁽ⁱ⁾ = derivs[i + 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{cross, wedge_over, AntisymTensor, FourVector, ThreeVector};

/// Mass and the higher-derivative coefficients k₁…kₙ of an n-th order
/// Lagrangian.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LagrangianSpec {
    mass: f64,
    coeffs: Vec<f64>,
}

impl LagrangianSpec {
    pub fn new(mass: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidParams(format!("mass must be positive, got {mass}")));
        }
        if let Some(bad) = coeffs.iter().find(|k| !k.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite coefficient {bad}")));
        }
        Ok(LagrangianSpec { mass, coeffs })
    }

    /// Spinless (newtonian) particle.
    pub fn spinless(mass: f64) -> Result<Self> {
        LagrangianSpec::new(mass, Vec::new())
    }

    /// First-order model with k₁ = −1/4m, the classical Dirac particle.
    pub fn dirac(mass: f64) -> Result<Self> {
        LagrangianSpec::new(mass, vec![-1.0 / (4.0 * mass)])
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// n, the highest velocity derivative in the Lagrangian.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// k₁…kₙ.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// k_i with k₀ = m; zero beyond the order.
    pub fn k(&self, i: usize) -> f64 {
        match i {
            0 => self.mass,
            _ => self.coeffs.get(i - 1).copied().unwrap_or(0.0),
        }
    }

    /// True when every nonzero k_i alternates in sign as (−1)^i.
    pub fn has_alternating_signs(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(j, &k)| k == 0.0 || (k > 0.0) == ((j + 1) % 2 == 0))
    }

    /// Number of position derivatives x, ẋ, …, x⁽²ⁿ⁺¹⁾ that fix a solution.
    pub fn state_len(&self) -> usize {
        2 * self.order() + 2
    }

    /// Value of the Lagrangian on a state.
    pub fn evaluate(&self, state: &KinematicState) -> Result<f64> {
        state.require(self.order() + 2)?;
        Ok((0..=self.order())
            .map(|i| 0.5 * self.k(i) * state.vel(i).norm_sqr())
            .sum())
    }
}

/// Proper time plus the chain of position derivatives.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KinematicState {
    pub tau: f64,
    pub derivs: Vec<FourVector>,
}

impl KinematicState {
    pub fn new(tau: f64, derivs: Vec<FourVector>) -> Self {
        KinematicState { tau, derivs }
    }

    pub fn position(&self) -> FourVector {
        self.derivs[0]
    }

    pub fn velocity(&self) -> FourVector {
        self.derivs[1]
    }

    pub fn acceleration(&self) -> FourVector {
        self.derivs[2]
    }

    /// v⁽ⁱ⁾, the i-th derivative of the velocity.
    pub fn vel(&self, i: usize) -> FourVector {
        self.derivs[i + 1]
    }

    /// a⁽ⁱ⁾, the i-th derivative of the acceleration.
    pub fn acc(&self, i: usize) -> FourVector {
        self.derivs[i + 2]
    }

    pub(crate) fn require(&self, len: usize) -> Result<()> {
        if self.derivs.len() < len {
            Err(Error::InsufficientDerivatives {
                needed: len,
                got: self.derivs.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// First- and second-order canonical momenta.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CanonicalPair {
    pub p: FourVector,
    pub pi: FourVector,
}

fn sign(i: usize) -> f64 {
    if i.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `p = Σ (−1)^i k_i v⁽²ⁱ⁾`.
pub fn canonical_momentum(spec: &LagrangianSpec, state: &KinematicState) -> Result<FourVector> {
    let n = spec.order();
    state.require(2 * n + 2)?;
    Ok((0..=n).fold(FourVector::ZERO, |acc, i| {
        acc + state.vel(2 * i) * (sign(i) * spec.k(i))
    }))
}

/// Zitterbewegung part of the velocity, `v − p/m`.
pub fn zbw_velocity(spec: &LagrangianSpec, state: &KinematicState) -> Result<FourVector> {
    let n = spec.order();
    state.require(2 * n + 2)?;
    // Summing only the higher-derivative terms avoids the v − v cancellation.
    Ok((1..=n).fold(FourVector::ZERO, |acc, i| {
        acc - state.vel(2 * i) * (sign(i) * spec.k(i) / spec.mass())
    }))
}

/// Left side of the free generalized Newton equation,
/// `Σ (−1)^i k_i a⁽²ⁱ⁾`; zero on solutions.
pub fn newton_residual(spec: &LagrangianSpec, state: &KinematicState) -> Result<FourVector> {
    let n = spec.order();
    state.require(2 * n + 3)?;
    Ok((0..=n).fold(FourVector::ZERO, |acc, i| {
        acc + state.acc(2 * i) * (sign(i) * spec.k(i))
    }))
}

/// Spin 3-vector 𝐬 = (S²³, S³¹, S¹²) for n ≤ 3 from the explicit cross-product
/// forms.
pub fn spin_vector(spec: &LagrangianSpec, state: &KinematicState) -> Result<ThreeVector> {
    let n = spec.order();
    if n > 3 {
        return Err(Error::UnsupportedOrder {
            operation: "spin_vector",
            order: n,
        });
    }
    state.require(2 * n + 2)?;
    let d = |k: usize| state.derivs[k].spatial();
    let mut s = ThreeVector::ZERO;
    if n >= 1 {
        s = s + cross(d(1), d(2)) * spec.k(1);
    }
    if n >= 2 {
        s = s + (cross(d(2), d(3)) - cross(d(1), d(4))) * spec.k(2);
    }
    if n >= 3 {
        s = s + (cross(d(3), d(4)) - cross(d(2), d(5)) + cross(d(1), d(6))) * spec.k(3);
    }
    Ok(s)
}

/// Spin tensor, the non-orbital part of the conserved angular momentum:
/// `S = Σ_{j≥2} x⁽ʲ⁻¹⁾ ∧ P_j` with `P_j = Σ_{l≥j} (−1)^{l−j} k_{l−1} x⁽²ˡ⁻ʲ⁾`
/// the momentum conjugate to x⁽ʲ⁻¹⁾. Available for n ≤ 3.
pub fn spin_tensor(spec: &LagrangianSpec, state: &KinematicState) -> Result<AntisymTensor> {
    let n = spec.order();
    if n > 3 {
        return Err(Error::UnsupportedOrder {
            operation: "spin_tensor",
            order: n,
        });
    }
    state.require(2 * n + 2)?;
    let top = n + 1;
    let mut s = AntisymTensor::ZERO;
    for j in 2..=top {
        let conj = conjugate_momentum(spec, state, j);
        s = s + wedge_over(state.derivs[j - 1], conj, 1.0);
    }
    Ok(s)
}

/// Momentum conjugate to x⁽ʲ⁻¹⁾ (j = 1 gives p).
fn conjugate_momentum(spec: &LagrangianSpec, state: &KinematicState, j: usize) -> FourVector {
    let top = spec.order() + 1;
    (j..=top).fold(FourVector::ZERO, |acc, l| {
        acc + state.derivs[2 * l - j] * (sign(l - j) * spec.k(l - 1))
    })
}

/// Orbital angular momentum `x ∧ p`.
pub fn orbital_angular_momentum(
    spec: &LagrangianSpec,
    state: &KinematicState,
) -> Result<AntisymTensor> {
    let p = canonical_momentum(spec, state)?;
    Ok(wedge_over(state.position(), p, 1.0))
}

/// Total angular momentum `x ∧ p + S`.
pub fn total_angular_momentum(
    spec: &LagrangianSpec,
    state: &KinematicState,
) -> Result<AntisymTensor> {
    Ok(orbital_angular_momentum(spec, state)? + spin_tensor(spec, state)?)
}

/// Conserved Hamiltonian for n ≤ 2:
///
/// * n = 0: ½mv²
/// * n = 1: ½mv² + ½k₁a² − k₁ ȧ·v
/// * n = 2: the above plus ½k₂ȧ² + k₂ a⃛·v − k₂ ä·a
pub fn hamiltonian(spec: &LagrangianSpec, state: &KinematicState) -> Result<f64> {
    let n = spec.order();
    if n > 2 {
        return Err(Error::UnsupportedOrder {
            operation: "hamiltonian",
            order: n,
        });
    }
    state.require(2 * n + 2)?;
    let v = state.velocity();
    let mut h = 0.5 * spec.mass() * v.norm_sqr();
    if n >= 1 {
        let k1 = spec.k(1);
        let a = state.acc(0);
        h += 0.5 * k1 * a.norm_sqr() - k1 * state.acc(1).dot(v);
    }
    if n >= 2 {
        let k2 = spec.k(2);
        h += 0.5 * k2 * state.acc(1).norm_sqr() + k2 * state.acc(3).dot(v)
            - k2 * state.acc(2).dot(state.acc(0));
    }
    Ok(h)
}

/// `π = ∂L/∂v̇ = k₁ a` for first-order models.
pub fn second_momentum(spec: &LagrangianSpec, state: &KinematicState) -> Result<FourVector> {
    if spec.order() != 1 {
        return Err(Error::UnsupportedOrder {
            operation: "second_momentum",
            order: spec.order(),
        });
    }
    state.require(3)?;
    Ok(state.acceleration() * spec.k(1))
}

/// Canonical pair (p, π) read off a first-order state.
pub fn canonical_pair(spec: &LagrangianSpec, state: &KinematicState) -> Result<CanonicalPair> {
    Ok(CanonicalPair {
        p: canonical_momentum(spec, state)?,
        pi: second_momentum(spec, state)?,
    })
}

/// Residuals of the two couples of Hamilton equations of a first-order
/// model, in the order ∂H/∂p − ẋ, ∂H/∂x + ṗ, ∂H/∂π − v̇, ∂H/∂v + π̇.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HamiltonResiduals {
    pub dh_dp: FourVector,
    pub dh_dx: FourVector,
    pub dh_dpi: FourVector,
    pub dh_dv: FourVector,
}

impl HamiltonResiduals {
    pub fn max_abs(&self) -> f64 {
        [self.dh_dp, self.dh_dx, self.dh_dpi, self.dh_dv]
            .iter()
            .fold(0.0_f64, |acc, r| acc.max(r.max_abs()))
    }
}

/// Hamilton-equation residuals with (p, π) computed from the state.
pub fn hamilton_residuals(
    spec: &LagrangianSpec,
    state: &KinematicState,
) -> Result<HamiltonResiduals> {
    let pair = canonical_pair(spec, state)?;
    hamilton_residuals_with(spec, state, pair)
}

/// Hamilton-equation residuals for an explicit canonical pair.
///
/// With `H(x, p; v, π) = p·v + π²/2k₁ − ½mv²` the partial derivatives are
/// `∂H/∂p = v`, `∂H/∂x = 0`, `∂H/∂π = π/k₁`, `∂H/∂v = p − mv`; the time
/// derivatives ẋ, ṗ, v̇, π̇ come from the state's derivative chain.
pub fn hamilton_residuals_with(
    spec: &LagrangianSpec,
    state: &KinematicState,
    pair: CanonicalPair,
) -> Result<HamiltonResiduals> {
    if spec.order() != 1 {
        return Err(Error::UnsupportedOrder {
            operation: "hamilton_residuals",
            order: spec.order(),
        });
    }
    state.require(5)?;
    let m = spec.mass();
    let k1 = spec.k(1);
    let v = state.velocity();
    let x_dot = state.derivs[1];
    let v_dot = state.derivs[2];
    let p_dot = state.acc(0) * m - state.acc(2) * k1;
    let pi_dot = state.acc(1) * k1;
    Ok(HamiltonResiduals {
        dh_dp: v - x_dot,
        dh_dx: p_dot,
        dh_dpi: pair.pi / k1 - v_dot,
        dh_dv: pair.p - v * m + pi_dot,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn fv(t: f64, x: f64, y: f64, z: f64) -> FourVector {
        FourVector::new(t, x, y, z)
    }

    /// Exact Dirac chain for m = 1, E = x̂, H = ŷ, p = (1;0,0,0), x₀ = 0.
    fn dirac_state(tau: f64, len: usize) -> KinematicState {
        let (c, s) = ((2.0 * tau).cos(), (2.0 * tau).sin());
        let e = fv(0.0, 1.0, 0.0, 0.0);
        let h = fv(0.0, 0.0, 1.0, 0.0);
        let p = fv(1.0, 0.0, 0.0, 0.0);
        let mut derivs = vec![p * tau + e * (s / 2.0) - h * (c / 2.0)];
        for k in 0..len - 1 {
            let w = 2.0_f64.powi(k as i32);
            // k-th derivative of cos(2τ), sin(2τ)
            let (dc, ds) = match k % 4 {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            };
            let base = if k == 0 { p } else { FourVector::ZERO };
            derivs.push(base + (e * dc + h * ds) * w);
        }
        KinematicState::new(tau, derivs)
    }

    #[test]
    fn momentum_dirac_and_spinless() {
        let spec = LagrangianSpec::dirac(1.0).unwrap();
        let st = dirac_state(0.0, 6);
        assert_eq!(st.vel(0), fv(1.0, 1.0, 0.0, 0.0));
        assert_eq!(st.vel(2), fv(0.0, -4.0, 0.0, 0.0));
        assert!((canonical_momentum(&spec, &st).unwrap() - fv(1.0, 0.0, 0.0, 0.0)).max_abs() < 1e-15);
        let st = dirac_state(PI / 4.0, 6);
        assert!((canonical_momentum(&spec, &st).unwrap() - fv(1.0, 0.0, 0.0, 0.0)).max_abs() < 1e-14);

        let free = LagrangianSpec::spinless(2.0).unwrap();
        let v = fv(1.25, 0.75, 0.0, 0.0);
        let st = KinematicState::new(0.0, vec![FourVector::ZERO, v]);
        assert_eq!(canonical_momentum(&free, &st).unwrap(), v * 2.0);
    }

    #[test]
    fn momentum_needs_chain() {
        let spec = LagrangianSpec::dirac(1.0).unwrap();
        let st = KinematicState::new(0.0, vec![FourVector::ZERO; 3]);
        assert_eq!(
            canonical_momentum(&spec, &st),
            Err(Error::InsufficientDerivatives { needed: 4, got: 3 })
        );
    }

    #[test]
    fn zbw_velocity_examples() {
        let spec = LagrangianSpec::dirac(1.0).unwrap();
        let z = zbw_velocity(&spec, &dirac_state(0.0, 6)).unwrap();
        assert!((z - fv(0.0, 1.0, 0.0, 0.0)).max_abs() < 1e-15);
        let z = zbw_velocity(&spec, &dirac_state(PI / 2.0, 6)).unwrap();
        assert!((z - fv(0.0, -1.0, 0.0, 0.0)).max_abs() < 1e-14);

        let free = LagrangianSpec::spinless(1.0).unwrap();
        let st = KinematicState::new(0.0, vec![FourVector::ZERO, fv(1.0, 0.0, 0.0, 0.0)]);
        assert_eq!(zbw_velocity(&free, &st).unwrap(), FourVector::ZERO);
    }

    #[test]
    fn newton_residual_examples() {
        let spec = LagrangianSpec::dirac(1.0).unwrap();
        for tau in [0.0, 0.37, PI / 3.0, 5.0] {
            let r = newton_residual(&spec, &dirac_state(tau, 6)).unwrap();
            assert!(r.max_abs() <= 1e-10, "tau={tau}");
        }

        let free = LagrangianSpec::spinless(3.0).unwrap();
        let a = fv(0.0, 0.5, 0.0, 0.0);
        let st = KinematicState::new(0.0, vec![FourVector::ZERO, fv(1.0, 0.0, 0.0, 0.0), a]);
        assert_eq!(newton_residual(&free, &st).unwrap(), a * 3.0);

        // Scaling a alone breaks the balance m a = k₁ ä by 1% of m·a.
        let mut st = dirac_state(0.0, 6);
        st.derivs[2] = st.derivs[2] * 1.01;
        let r = newton_residual(&spec, &st).unwrap();
        let expected = dirac_state(0.0, 6).acceleration() * 0.01;
        assert!((r - expected).max_abs() < 1e-14);
    }

    #[test]
    fn spin_vector_and_tensor_on_canonical_state() {
        let spec = LagrangianSpec::dirac(1.0).unwrap();
        let st = dirac_state(0.0, 6);
        let s = spin_vector(&spec, &st).unwrap();
        assert!((s - ThreeVector::new(0.0, 0.0, -0.5)).max_abs() < 1e-15);
        assert!((s.norm() - 0.5).abs() < 1e-15);

        let t = spin_tensor(&spec, &st).unwrap();
        assert!((t.axial_part() - ThreeVector::new(0.0, 0.0, -0.5)).max_abs() < 1e-15);
        assert!((t.boost_part() - ThreeVector::new(0.0, -0.5, 0.0)).max_abs() < 1e-15);
    }

    #[test]
    fn spin_vanishes_for_collinear_motion() {
        let spec = LagrangianSpec::dirac(1.0).unwrap();
        let st = KinematicState::new(
            0.0,
            vec![
                FourVector::ZERO,
                fv(1.0, 0.5, 0.0, 0.0),
                fv(0.0, -2.0, 0.0, 0.0),
                fv(0.0, 3.0, 0.0, 0.0),
            ],
        );
        assert_eq!(spin_vector(&spec, &st).unwrap(), ThreeVector::ZERO);
        // The time-space part of v∧a survives, the space-space part does not.
        assert_eq!(spin_tensor(&spec, &st).unwrap().axial_part(), ThreeVector::ZERO);

        let st = KinematicState::new(0.0, vec![FourVector::ZERO, fv(1.0, 0.3, 0.0, 0.0)]);
        let free = LagrangianSpec::spinless(1.0).unwrap();
        assert_eq!(spin_tensor(&free, &st).unwrap(), AntisymTensor::ZERO);
    }

    #[test]
    fn spin_rejects_high_order() {
        let spec = LagrangianSpec::new(1.0, vec![-1.0, 0.3, -0.01, 0.001]).unwrap();
        let st = KinematicState::new(0.0, vec![FourVector::ZERO; 10]);
        assert!(matches!(spin_vector(&spec, &st), Err(Error::UnsupportedOrder { order: 4, .. })));
        assert!(matches!(spin_tensor(&spec, &st), Err(Error::UnsupportedOrder { order: 4, .. })));
    }

    #[test]
    fn hamiltonian_examples() {
        let spec = LagrangianSpec::dirac(1.0).unwrap();
        for tau in [0.0, 0.4, 2.0] {
            let h = hamiltonian(&spec, &dirac_state(tau, 6)).unwrap();
            assert!((h - 1.5).abs() < 1e-14, "tau={tau}: {h}");
        }
        let free = LagrangianSpec::spinless(3.0).unwrap();
        let st = KinematicState::new(0.0, vec![FourVector::ZERO, fv(1.0, 0.0, 0.0, 0.0)]);
        assert_eq!(hamiltonian(&free, &st).unwrap(), 1.5);

        let high = LagrangianSpec::new(1.0, vec![-1.0, 0.2, -0.01]).unwrap();
        let st = KinematicState::new(0.0, vec![FourVector::ZERO; 9]);
        assert!(matches!(hamiltonian(&high, &st), Err(Error::UnsupportedOrder { .. })));
    }

    #[test]
    fn second_momentum_examples() {
        let spec = LagrangianSpec::dirac(1.0).unwrap();
        let pi = second_momentum(&spec, &dirac_state(0.0, 6)).unwrap();
        assert!((pi - fv(0.0, 0.0, -0.5, 0.0)).max_abs() < 1e-15);
        let pi = second_momentum(&spec, &dirac_state(PI / 4.0, 6)).unwrap();
        assert!((pi - fv(0.0, 0.5, 0.0, 0.0)).max_abs() < 1e-15);

        let st = KinematicState::new(0.0, vec![FourVector::ZERO, fv(1.0, 0.0, 0.0, 0.0), FourVector::ZERO]);
        assert_eq!(second_momentum(&spec, &st).unwrap(), FourVector::ZERO);

        let two = LagrangianSpec::new(1.0, vec![-1.25, 0.25]).unwrap();
        assert!(second_momentum(&two, &st).is_err());
    }

    #[test]
    fn hamilton_residual_examples() {
        let spec = LagrangianSpec::dirac(1.0).unwrap();
        for tau in [0.0, 1.0, 2.5] {
            let r = hamilton_residuals(&spec, &dirac_state(tau, 6)).unwrap();
            assert!(r.max_abs() <= 1e-10);
        }

        let free_chain = KinematicState::new(
            0.0,
            vec![FourVector::ZERO, fv(1.0, 0.0, 0.0, 0.0), FourVector::ZERO, FourVector::ZERO, FourVector::ZERO],
        );
        let r = hamilton_residuals(&spec, &free_chain).unwrap();
        assert_eq!(r.max_abs(), 0.0);

        let st = dirac_state(0.0, 6);
        let mut pair = canonical_pair(&spec, &st).unwrap();
        pair.pi += fv(0.0, 0.1, 0.0, 0.0);
        let r = hamilton_residuals_with(&spec, &st, pair).unwrap();
        assert!((r.dh_dpi - fv(0.0, -0.4, 0.0, 0.0)).max_abs() < 1e-14);
        assert!(r.dh_dx.max_abs() < 1e-14 && r.dh_dv.max_abs() < 1e-14);
    }

    #[test]
    fn descartes_sign_helper() {
        assert!(LagrangianSpec::dirac(1.0).unwrap().has_alternating_signs());
        assert!(LagrangianSpec::new(1.0, vec![-1.25, 0.25]).unwrap().has_alternating_signs());
        assert!(!LagrangianSpec::new(1.0, vec![1.0]).unwrap().has_alternating_signs());
        assert!(LagrangianSpec::new(1.0, vec![-1.0, 0.0, -0.1]).unwrap().has_alternating_signs());
    }

    #[test]
    fn spec_rejects_bad_mass() {
        assert!(LagrangianSpec::new(0.0, vec![]).is_err());
        assert!(LagrangianSpec::new(-1.0, vec![]).is_err());
        assert!(LagrangianSpec::new(1.0, vec![f64::NAN]).is_err());
    }
}
