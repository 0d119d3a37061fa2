//! Classical spinning-particle mechanics: Minkowski algebra, zitterbewegung
//! kinematics, free higher-derivative Lagrangians with their Nöther charges,
//! a conservation-audited integrator, and the analytic Dirac, zero-spin and
//! cronon sectors.
//!
//! Metric signature (+,−,−,−), units ħ = c = 1, proper time τ measured in the
//! centre-of-mass frame.

pub mod cronon;
pub mod dirac;
pub mod error;
pub mod integrator;
pub mod kinematics;
pub mod lagrangian;
pub mod minkowski;
pub mod stability;
pub mod zerospin;

pub use error::{Error, Result};
pub use lagrangian::{KinematicState, LagrangianSpec};
pub use minkowski::{AntisymTensor, BoostVelocity, FourVector, ThreeVector};
