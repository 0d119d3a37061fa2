//! Characteristic equation `m − k₁z² + k₂z⁴ − … = 0` of the free
//! generalized Newton equation, solved as a polynomial in u = z².
//! Negative real roots u = −ω² are oscillation modes of frequency ω.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lagrangian::LagrangianSpec;

/// Acceptance threshold for |poly(u)| relative to ‖coeffs‖.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-9;
/// |Im u| below this counts as real.
pub const IMAG_TOL: f64 = 1e-9;
/// Re u must lie below −this to count as strictly negative.
pub const NEGATIVE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// All roots u = z² of the characteristic polynomial.
    pub roots_z2: Vec<Complex64>,
    /// ω = √(−u) for every real negative root, ascending.
    pub frequencies: Vec<f64>,
    /// Every root is real and strictly negative.
    pub oscillatory: bool,
    /// Largest |poly(u)| over the accepted roots.
    pub max_residual: f64,
}

/// Coefficients of the characteristic polynomial in u, lowest degree first:
/// `c_i = (−1)^i k_i` with k₀ = m.
pub fn characteristic_coefficients(spec: &LagrangianSpec) -> Result<Vec<f64>> {
    let n = spec.order();
    if n == 0 {
        return Err(Error::UnsupportedOrder {
            operation: "characteristic_coefficients",
            order: 0,
        });
    }
    Ok((0..=n)
        .map(|i| if i % 2 == 0 { spec.k(i) } else { -spec.k(i) })
        .collect())
}

/// True iff every nonzero k_i has sign (−1)^i. Necessary for a purely
/// oscillatory spectrum, not sufficient.
pub fn descartes_check(spec: &LagrangianSpec) -> bool {
    spec.has_alternating_signs()
}

fn horner(coeffs: &[f64], u: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        deriv = deriv * u + value;
        value = value * u + c;
    }
    (value, deriv)
}

/// Roots of `Σ c_i u^i` via companion-matrix eigenvalues, each refined by a
/// few Newton steps.
fn polynomial_roots(coeffs: &[f64]) -> Result<(Vec<Complex64>, f64)> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    if lead == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient { order: degree });
    }
    let mut companion = DMatrix::<f64>::zeros(degree, degree);
    for row in 1..degree {
        companion[(row, row - 1)] = 1.0;
    }
    for (row, &c) in coeffs[..degree].iter().enumerate() {
        companion[(row, degree - 1)] = -c / lead;
    }
    let eig = companion.complex_eigenvalues();

    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    let mut roots = Vec::with_capacity(degree);
    let mut worst = 0.0_f64;
    for mut u in eig.iter().copied() {
        for _ in 0..8 {
            let (val, der) = horner(coeffs, u);
            if der.norm() == 0.0 {
                break;
            }
            let step = val / der;
            u -= step;
            if step.norm() <= f64::EPSILON * u.norm().max(1.0) {
                break;
            }
        }
        let residual = horner(coeffs, u).0.norm() / norm;
        if !residual.is_finite() || residual > ROOT_RESIDUAL_TOL {
            return Err(Error::RootFindingFailure { residual });
        }
        worst = worst.max(residual);
        roots.push(u);
    }
    Ok((roots, worst))
}

pub fn spectrum(spec: &LagrangianSpec) -> Result<Spectrum> {
    let coeffs = characteristic_coefficients(spec)?;
    let (mut roots, max_residual) = polynomial_roots(&coeffs)?;
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let is_negative_real = |u: &Complex64| u.im.abs() <= IMAG_TOL && u.re <= -NEGATIVE_TOL;
    let mut frequencies: Vec<f64> = roots
        .iter()
        .filter(|u| is_negative_real(u))
        .map(|u| (-u.re).sqrt())
        .collect();
    frequencies.sort_by(f64::total_cmp);
    Ok(Spectrum {
        oscillatory: roots.iter().all(is_negative_real),
        roots_z2: roots,
        frequencies,
        max_residual,
    })
}
