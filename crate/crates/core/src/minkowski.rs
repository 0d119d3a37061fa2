//! Minkowski 4-vectors and rank-2 antisymmetric tensors with metric
//! diag(+1, -1, -1, -1), plus pure Lorentz boosts.
//!
//! Components are always stored contravariant, ordered (t, x, y, z).
//! Lowering an index flips the sign of the spatial components.

use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A spatial 3-vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ThreeVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ThreeVector {
    pub const ZERO: ThreeVector = ThreeVector {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        ThreeVector { x, y, z }
    }

    pub fn from_array(c: [f64; 3]) -> Self {
        ThreeVector::new(c[0], c[1], c[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, other: ThreeVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: ThreeVector) -> ThreeVector {
        cross(self, other)
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Right-handed cross product.
pub fn cross(u: ThreeVector, v: ThreeVector) -> ThreeVector {
    ThreeVector {
        x: u.y * v.z - u.z * v.y,
        y: u.z * v.x - u.x * v.z,
        z: u.x * v.y - u.y * v.x,
    }
}

impl Add for ThreeVector {
    type Output = ThreeVector;
    fn add(self, o: ThreeVector) -> ThreeVector {
        ThreeVector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for ThreeVector {
    type Output = ThreeVector;
    fn sub(self, o: ThreeVector) -> ThreeVector {
        ThreeVector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for ThreeVector {
    type Output = ThreeVector;
    fn neg(self) -> ThreeVector {
        ThreeVector::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for ThreeVector {
    type Output = ThreeVector;
    fn mul(self, s: f64) -> ThreeVector {
        ThreeVector::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<ThreeVector> for f64 {
    type Output = ThreeVector;
    fn mul(self, v: ThreeVector) -> ThreeVector {
        v * self
    }
}

impl Div<f64> for ThreeVector {
    type Output = ThreeVector;
    fn div(self, s: f64) -> ThreeVector {
        ThreeVector::new(self.x / s, self.y / s, self.z / s)
    }
}

/// A contravariant Minkowski 4-vector `(t; x, y, z)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const ZERO: FourVector = FourVector {
        t: 0.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector { t, x, y, z }
    }

    pub fn from_parts(t: f64, space: ThreeVector) -> Self {
        FourVector::new(t, space.x, space.y, space.z)
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        FourVector::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    /// Covariant components `(t, -x, -y, -z)`.
    pub fn lowered(self) -> [f64; 4] {
        [self.t, -self.x, -self.y, -self.z]
    }

    pub fn spatial(self) -> ThreeVector {
        ThreeVector::new(self.x, self.y, self.z)
    }

    pub fn dot(self, other: FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    /// The invariant square `a·a`, which may be negative.
    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    /// Largest absolute component (the infinity norm).
    pub fn max_abs(self) -> f64 {
        self.t
            .abs()
            .max(self.x.abs())
            .max(self.y.abs())
            .max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, mu: usize) -> &f64 {
        match mu {
            0 => &self.t,
            1 => &self.x,
            2 => &self.y,
            3 => &self.z,
            _ => panic!("four-vector index {mu} out of range"),
        }
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for FourVector {
    fn add_assign(&mut self, o: FourVector) {
        *self = *self + o;
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for FourVector {
    fn sub_assign(&mut self, o: FourVector) {
        *self = *self - o;
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector::new(-self.t, -self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        FourVector::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        v * self
    }
}

impl Div<f64> for FourVector {
    type Output = FourVector;
    fn div(self, s: f64) -> FourVector {
        FourVector::new(self.t / s, self.x / s, self.y / s, self.z / s)
    }
}

/// `a⁰b⁰ − 𝐚·𝐛`.
pub fn minkowski_dot(a: FourVector, b: FourVector) -> f64 {
    a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z
}

/// Index pairs of the six independent slots of [`AntisymTensor`].
pub const TENSOR_SLOTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// Rank-2 antisymmetric contravariant tensor stored by its six independent
/// components in the order (01, 02, 03, 23, 31, 12).
///
/// The first triple is the boost generator 𝐤 = (S⁰¹, S⁰², S⁰³), the second
/// the axial 3-vector (S²³, S³¹, S¹²).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AntisymTensor {
    pub slots: [f64; 6],
}

impl AntisymTensor {
    pub const ZERO: AntisymTensor = AntisymTensor { slots: [0.0; 6] };

    pub fn from_slots(slots: [f64; 6]) -> Self {
        AntisymTensor { slots }
    }

    /// Builds the tensor from its time-space part 𝐤 = (T⁰¹, T⁰², T⁰³) and
    /// its space-space part 𝐬 = (T²³, T³¹, T¹²).
    pub fn from_parts(k: ThreeVector, s: ThreeVector) -> Self {
        AntisymTensor {
            slots: [k.x, k.y, k.z, s.x, s.y, s.z],
        }
    }

    /// Electromagnetic field tensor with F^{i0} = E^i and F^{ij} = −ε_{ijk}B^k,
    /// so that `m dv/dτ = e F^{μν} v_ν` is the Lorentz force.
    pub fn electromagnetic(e: ThreeVector, b: ThreeVector) -> Self {
        AntisymTensor::from_parts(-e, -b)
    }

    /// Component T^{μν} for any index pair.
    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        assert!(mu < 4 && nu < 4, "tensor index out of range");
        if mu == nu {
            return 0.0;
        }
        for (slot, &(a, b)) in TENSOR_SLOTS.iter().enumerate() {
            if (a, b) == (mu, nu) {
                return self.slots[slot];
            }
            if (b, a) == (mu, nu) {
                return -self.slots[slot];
            }
        }
        unreachable!()
    }

    /// Full 4×4 contravariant matrix.
    pub fn to_matrix(&self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for (mu, row) in m.iter_mut().enumerate() {
            for (nu, entry) in row.iter_mut().enumerate() {
                *entry = self.get(mu, nu);
            }
        }
        m
    }

    /// (T⁰¹, T⁰², T⁰³).
    pub fn boost_part(&self) -> ThreeVector {
        ThreeVector::new(self.slots[0], self.slots[1], self.slots[2])
    }

    /// (T²³, T³¹, T¹²).
    pub fn axial_part(&self) -> ThreeVector {
        ThreeVector::new(self.slots[3], self.slots[4], self.slots[5])
    }

    /// `T^{μν} b_ν`.
    pub fn contract(&self, b: FourVector) -> FourVector {
        let low = b.lowered();
        let mut out = [0.0; 4];
        for (mu, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|nu| self.get(mu, nu) * low[nu]).sum();
        }
        FourVector::from_array(out)
    }

    /// `T^{μν} U_{μν}`.
    pub fn full_contract(&self, other: &AntisymTensor) -> f64 {
        // Lowering both indices flips the sign of the time-space slots only.
        let ts: f64 = (0..3).map(|i| self.slots[i] * other.slots[i]).sum();
        let ss: f64 = (3..6).map(|i| self.slots[i] * other.slots[i]).sum();
        2.0 * (ss - ts)
    }

    /// `a_μ T^{μν} b_ν`.
    pub fn bilinear(&self, a: FourVector, b: FourVector) -> f64 {
        minkowski_dot(a, self.contract(b))
    }

    /// Pauli-Lubanski vector in the component form
    /// `(𝐬·𝐩; p⁰𝐬 − 𝐩×𝐤)` with 𝐬 the axial part and 𝐤 the boost part.
    pub fn pauli_lubanski(&self, p: FourVector) -> FourVector {
        let s = self.axial_part();
        let k = self.boost_part();
        let ps = p.spatial();
        FourVector::from_parts(s.dot(ps), s * p.t - cross(ps, k))
    }

    pub fn max_abs(&self) -> f64 {
        self.slots.iter().fold(0.0_f64, |acc, c| acc.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.slots.iter().all(|c| c.is_finite())
    }

    pub fn scaled(&self, s: f64) -> AntisymTensor {
        let mut out = *self;
        out.slots.iter_mut().for_each(|c| *c *= s);
        out
    }
}

impl Add for AntisymTensor {
    type Output = AntisymTensor;
    fn add(self, o: AntisymTensor) -> AntisymTensor {
        let mut out = self;
        for (a, b) in out.slots.iter_mut().zip(o.slots) {
            *a += b;
        }
        out
    }
}

impl Sub for AntisymTensor {
    type Output = AntisymTensor;
    fn sub(self, o: AntisymTensor) -> AntisymTensor {
        self + o.scaled(-1.0)
    }
}

impl Neg for AntisymTensor {
    type Output = AntisymTensor;
    fn neg(self) -> AntisymTensor {
        self.scaled(-1.0)
    }
}

/// `scale·(a^μ b^ν − a^ν b^μ)`.
pub fn wedge_over(a: FourVector, b: FourVector, scale: f64) -> AntisymTensor {
    let mut slots = [0.0; 6];
    for (slot, &(mu, nu)) in TENSOR_SLOTS.iter().enumerate() {
        slots[slot] = scale * (a[mu] * b[nu] - a[nu] * b[mu]);
    }
    AntisymTensor { slots }
}

/// Velocity of a pure Lorentz boost, strictly subluminal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct BoostVelocity {
    w: ThreeVector,
}

impl BoostVelocity {
    pub fn new(w: ThreeVector) -> Result<Self> {
        let speed = w.norm();
        if !w.is_finite() || speed >= 1.0 {
            return Err(Error::SuperluminalBoost { speed });
        }
        Ok(BoostVelocity { w })
    }

    pub fn from_components(x: f64, y: f64, z: f64) -> Result<Self> {
        BoostVelocity::new(ThreeVector::new(x, y, z))
    }

    pub fn identity() -> Self {
        BoostVelocity { w: ThreeVector::ZERO }
    }

    /// The boost taking the rest frame of `p` (timelike, future-pointing) to
    /// the frame where `p` is given: 𝐰 = 𝐩/p⁰.
    pub fn of_momentum(p: FourVector) -> Result<Self> {
        if p.t <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "momentum {p:?} is not future-pointing"
            )));
        }
        BoostVelocity::new(p.spatial() / p.t)
    }

    pub fn velocity(&self) -> ThreeVector {
        self.w
    }

    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.w.norm_sqr()).sqrt()
    }

    pub fn inverse(&self) -> BoostVelocity {
        BoostVelocity { w: -self.w }
    }

    /// Maps a vector given in a frame to the frame moving with velocity −𝐰
    /// relative to it, so a particle at rest acquires velocity +𝐰.
    pub fn apply(&self, a: FourVector) -> FourVector {
        let w2 = self.w.norm_sqr();
        if w2 == 0.0 {
            return a;
        }
        let gamma = self.gamma();
        let r = a.spatial();
        let wr = self.w.dot(r);
        let t = gamma * (a.t + wr);
        let space = r + self.w * ((gamma - 1.0) * wr / w2 + gamma * a.t);
        FourVector::from_parts(t, space)
    }

    /// Boost of a rank-2 antisymmetric tensor, `Λ T Λᵀ`.
    pub fn apply_tensor(&self, t: &AntisymTensor) -> AntisymTensor {
        let cols: Vec<FourVector> = (0..4)
            .map(|mu| self.apply(basis(mu)))
            .collect();
        let m = t.to_matrix();
        let mut slots = [0.0; 6];
        for (slot, &(a, b)) in TENSOR_SLOTS.iter().enumerate() {
            let mut acc = 0.0;
            for (rho, row) in m.iter().enumerate() {
                for (sigma, &entry) in row.iter().enumerate() {
                    acc += cols[rho][a] * cols[sigma][b] * entry;
                }
            }
            slots[slot] = acc;
        }
        AntisymTensor { slots }
    }
}

fn basis(mu: usize) -> FourVector {
    let mut c = [0.0; 4];
    c[mu] = 1.0;
    FourVector::from_array(c)
}

/// Applies the boost `w` to `a`.
pub fn boost_apply(w: &BoostVelocity, a: FourVector) -> FourVector {
    w.apply(a)
}
