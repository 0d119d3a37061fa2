//! Model-independent kinematics of a free spinning particle: splitting the
//! 4-velocity into its newtonian and zitterbewegung parts, the sign
//! classification of v², and the v² identities involving the spin-tensor
//! derivative.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::minkowski::{minkowski_dot, AntisymTensor, FourVector, ThreeVector};

/// Default band around v² = 0 classified as lightlike.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// Relative tolerance (scaled by m²) on the mass-shell constraints p² = m²
/// and p·v = m.
pub const CONSTRAINT_TOL: f64 = 1e-8;

/// `v = w + V` with `w = p/m` timelike and `V` the spacelike remainder.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZbwDecomposition {
    pub w_part: FourVector,
    pub v_part: FourVector,
    /// Zitterbewegung drift of the charge, 𝐯/v⁰ − 𝐩/p⁰.
    pub drift_u: ThreeVector,
    /// v⁰ = dt/dτ.
    pub times_ratio: f64,
}

/// Splits `v` into `p/m` and the zitterbewegung term.
///
/// Fails when `p` is off the mass shell or `p·v ≠ m`.
pub fn decompose_velocity(v: FourVector, p: FourVector, m: f64) -> Result<ZbwDecomposition> {
    if !(m > 0.0) {
        return Err(Error::InvalidParams(format!("mass must be positive, got {m}")));
    }
    let tol = CONSTRAINT_TOL * m * m;
    let h1 = minkowski_dot(p, p) - m * m;
    if h1.abs() > tol {
        return Err(Error::ConstraintViolation {
            constraint: "H1 (p·p = m²)",
            residual: h1,
            tolerance: tol,
        });
    }
    let h2 = minkowski_dot(p, v) - m;
    if h2.abs() > tol {
        return Err(Error::ConstraintViolation {
            constraint: "H2 (p·v = m)",
            residual: h2,
            tolerance: tol,
        });
    }
    let w_part = p / m;
    Ok(ZbwDecomposition {
        w_part,
        v_part: v - w_part,
        drift_u: v.spatial() / v.t - p.spatial() / p.t,
        times_ratio: v.t,
    })
}

/// Sign class of v².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MotionClass {
    Timelike,
    Lightlike,
    Spacelike,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MotionClassification {
    pub class: MotionClass,
    pub v2: f64,
    /// Speed in the centre-of-mass frame, √(1 − v²).
    pub cmf_speed: f64,
}

pub fn classify_v2(v: FourVector, tol: f64) -> Result<MotionClassification> {
    let v2 = v.norm_sqr();
    if v2 > 1.0 + tol {
        return Err(Error::SuperunitaryV2 { v2 });
    }
    let class = if v2.abs() <= tol {
        MotionClass::Lightlike
    } else if v2 > 0.0 {
        MotionClass::Timelike
    } else {
        MotionClass::Spacelike
    };
    Ok(MotionClassification {
        class,
        v2,
        cmf_speed: (1.0 - v2).max(0.0).sqrt(),
    })
}

/// Residuals of `v² = 1 + Ṡ^{μν}Ṡ_{μν}/2m²` and `v² = 1 + Ṡ^{μν}p_μ v_ν/m²`.
pub fn v2_identities_residual(
    v: FourVector,
    p: FourVector,
    m: f64,
    sdot: &AntisymTensor,
) -> (f64, f64) {
    let v2 = v.norm_sqr();
    let first = v2 - (1.0 + sdot.full_contract(sdot) / (2.0 * m * m));
    let second = v2 - (1.0 + sdot.bilinear(p, v) / (m * m));
    (first, second)
}

/// Mass-shell and orthogonality diagnostics of a single sample. Never fails;
/// the fields are the residuals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ConstraintResiduals {
    /// p² − m²
    pub h1: f64,
    /// p·v − m
    pub h2: f64,
    /// (p/m)·(v − p/m)
    pub orthogonality: f64,
    /// (v − p/m)², expected ≤ 0
    pub v_part_sq: f64,
    pub v2: f64,
}

impl ConstraintResiduals {
    pub fn evaluate(v: FourVector, p: FourVector, m: f64) -> Self {
        let w = p / m;
        let big_v = v - w;
        ConstraintResiduals {
            h1: p.norm_sqr() - m * m,
            h2: minkowski_dot(p, v) - m,
            orthogonality: minkowski_dot(w, big_v),
            v_part_sq: big_v.norm_sqr(),
            v2: v.norm_sqr(),
        }
    }

    /// True when every constraint holds to `tol`.
    pub fn within(&self, tol: f64) -> bool {
        self.h1.abs() <= tol
            && self.h2.abs() <= tol
            && self.orthogonality.abs() <= tol
            && self.v_part_sq <= tol
            && self.v2 <= 1.0 + tol
    }

    /// Largest violation among the constraints.
    pub fn worst(&self) -> f64 {
        self.h1
            .abs()
            .max(self.h2.abs())
            .max(self.orthogonality.abs())
            .max(self.v_part_sq.max(0.0))
            .max((self.v2 - 1.0).max(0.0))
    }
}
