//! Fidelities between classical and quantum states.
//!
//! The general mixed-state fidelity is F(rho, sigma) = (tr |sqrt(rho)
//! sqrt(sigma)|)^2, equivalently the squared maximal overlap between
//! purifications. Special inputs get cheaper closed forms; the nested-root
//! expression is kept as an independent route for cross-checking.

use crate::error::{Error, Result};
use crate::linalg::{matrix_sqrt_psd, max_overlap_unitary};
use crate::state::{BlochVector, DensityMatrix, ProbabilityMeasure, PureState};

/// Clamps roundoff excursions of at most 1e-9 back into [0, 1]. Larger
/// excursions are left visible rather than hidden.
fn clamp_unit(v: f64) -> f64 {
    if (-1e-9..0.0).contains(&v) {
        0.0
    } else if v > 1.0 && v <= 1.0 + 1e-9 {
        1.0
    } else {
        v
    }
}

/// Affinity sum_j sqrt(lambda_j mu_j) of two measures on the same space.
pub fn affinity(lambda: &ProbabilityMeasure, mu: &ProbabilityMeasure) -> Result<f64> {
    if lambda.len() != mu.len() {
        return Err(Error::SizeMismatch { left: lambda.len(), right: mu.len() });
    }
    Ok(lambda
        .weights()
        .iter()
        .zip(mu.weights())
        .map(|(&a, &b)| (a * b).sqrt())
        .sum())
}

/// Classical fidelity, the squared affinity.
pub fn fidelity_classical(lambda: &ProbabilityMeasure, mu: &ProbabilityMeasure) -> Result<f64> {
    let a = affinity(lambda, mu)?;
    Ok(clamp_unit(a * a))
}

/// |<phi, psi>|^2.
pub fn fidelity_pure(phi: &PureState, psi: &PureState) -> Result<f64> {
    Ok(clamp_unit(phi.inner(psi)?.norm_sqr()))
}

/// Mixed-state fidelity (tr |sqrt(rho) sqrt(sigma)|)^2.
pub fn fidelity_uhlmann(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: sigma.dim() });
    }
    let overlap = max_overlap_unitary(&rho.sqrt(), &sigma.sqrt())?;
    Ok(clamp_unit(overlap * overlap))
}

/// Mixed-state fidelity through the nested root
/// (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Algebraically equal to
/// `fidelity_uhlmann`; evaluated along a different numerical path so the two
/// can cross-check each other.
pub fn fidelity_uhlmann_nested(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: sigma.dim() });
    }
    let s = rho.sqrt();
    let inner = s.mul(sigma.matrix())?.mul(&s)?;
    let root = matrix_sqrt_psd(&inner.symmetrized())?;
    let t = root.trace().re;
    Ok(clamp_unit(t * t))
}

/// Qubit fidelity in Bloch coordinates:
/// F = (1 + x . y + sqrt(1 - |x|^2) sqrt(1 - |y|^2)) / 2.
pub fn fidelity_bloch2d(x: &BlochVector, y: &BlochVector) -> f64 {
    let rx = (1.0 - x.dot(x)).max(0.0).sqrt();
    let ry = (1.0 - y.dot(y)).max(0.0).sqrt();
    clamp_unit(0.5 * (1.0 + x.dot(y) + rx * ry))
}
