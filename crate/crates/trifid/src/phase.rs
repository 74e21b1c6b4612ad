//! Three-state phase invariants.
//!
//! The Bargmann product <a,b><b,c><c,a> is invariant under independent
//! phase changes of the three states; its argument is the geometric phase
//! of the triple and its modulus is the square root of the product of the
//! pairwise fidelities. For qubits the cosine of the phase is determined by
//! the three fidelities alone.

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, hs_inner, unitarity_defect, unitary_from_generator, ComplexMatrix, C64,
    UNITARITY_TOL,
};
use crate::random::mix_seed;
use crate::state::{BlochVector, DensityMatrix, PureState};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Pairwise fidelities at or below this are treated as zero, making the
/// phase undefined.
pub const PHASE_FIDELITY_TOL: f64 = 1e-12;

/// The invariant triple product together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BargmannProduct {
    pub value: C64,
    pub modulus: f64,
}

/// <a,b><b,c><c,a>.
pub fn bargmann_product(a: &PureState, b: &PureState, c: &PureState) -> Result<BargmannProduct> {
    let value = a.inner(b)? * b.inner(c)? * c.inner(a)?;
    Ok(BargmannProduct { value, modulus: value.norm() })
}

fn canonical_arg(z: C64) -> f64 {
    let arg = z.arg();
    if arg == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        arg
    }
}

/// Geometric phase of a pure-state triple, in (-pi, pi]. Undefined (and
/// rejected) when any pairwise fidelity vanishes.
pub fn phase_pure(a: &PureState, b: &PureState, c: &PureState) -> Result<f64> {
    let pairs = [(1usize, 2usize, a.inner(b)?), (2, 3, b.inner(c)?), (1, 3, a.inner(c)?)];
    for (i, j, inner) in &pairs {
        if inner.norm_sqr() <= PHASE_FIDELITY_TOL {
            return Err(Error::ZeroFidelity { i: *i, j: *j });
        }
    }
    Ok(canonical_arg(pairs[0].2 * pairs[1].2 * pairs[2].2.conj()))
}

fn unit_check(v: &BlochVector) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnitVector { norm });
    }
    Ok(())
}

/// Cosine of the qubit geometric phase from Bloch geometry alone. With
/// c_ij = cos(theta_ij / 2) the half angles between the unit vectors,
///
///   cos Phi = (c12^2 + c23^2 + c31^2 - 1) / (2 c12 c23 c31).
///
/// Qubit triples satisfy this exactly because their Gram matrix is
/// singular; the result is clamped to [-1, 1]. Antipodal pairs make the
/// denominator vanish and are rejected.
pub fn phase_bloch_cos(x: &BlochVector, y: &BlochVector, z: &BlochVector) -> Result<f64> {
    unit_check(x)?;
    unit_check(y)?;
    unit_check(z)?;
    let halves = [(1usize, 2usize, x.dot(y)), (2, 3, y.dot(z)), (1, 3, x.dot(z))];
    let mut c = [0.0f64; 3];
    for (slot, (i, j, dot)) in halves.iter().enumerate() {
        let cos_half = ((1.0 + dot.clamp(-1.0, 1.0)) * 0.5).sqrt();
        if cos_half < 1e-9 {
            return Err(Error::AntipodalPair { i: *i, j: *j });
        }
        c[slot] = cos_half;
    }
    let raw = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2] - 1.0) / (2.0 * c[0] * c[1] * c[2]);
    Ok(raw.clamp(-1.0, 1.0))
}

/// True when one angular distance equals the sum of the other two within
/// tol, i.e. the three Bloch points lie on a common great-circle arc in
/// order. Exactly these triples have geometric phase 0 or pi.
pub fn collinearity_test(x: &BlochVector, y: &BlochVector, z: &BlochVector, tol: f64) -> Result<bool> {
    unit_check(x)?;
    unit_check(y)?;
    unit_check(z)?;
    let angle = |a: &BlochVector, b: &BlochVector| a.dot(b).clamp(-1.0, 1.0).acos();
    let t12 = angle(x, y);
    let t23 = angle(y, z);
    let t13 = angle(x, z);
    Ok((t12 + t23 - t13).abs() <= tol
        || (t12 + t13 - t23).abs() <= tol
        || (t23 + t13 - t12).abs() <= tol)
}

/// Overlap of twisted canonical purifications:
/// <(1 (x) conj(U)) vec(sqrt(rho)), (1 (x) conj(V)) vec(sqrt(sigma))>
///   = tr(sqrt(rho) sqrt(sigma) V* U).
pub fn purified_overlap(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    u: &ComplexMatrix,
    v: &ComplexMatrix,
) -> Result<C64> {
    let d = rho.dim();
    if sigma.dim() != d || u.dim() != d || v.dim() != d {
        return Err(Error::DimensionMismatch { left: d, right: sigma.dim().max(u.dim()).max(v.dim()) });
    }
    for w in [u, v] {
        let defect = unitarity_defect(w);
        if defect > UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation: defect });
        }
    }
    // tr(sqrt(rho) sqrt(sigma) V* U) = <V (sqrt(sigma))* (sqrt(rho))*, U>_HS
    let prod = rho.sqrt().mul(&sigma.sqrt())?.mul(&v.adjoint())?.mul(u)?;
    Ok(prod.trace())
}

/// Search configuration for the variational mixed-state phase.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig { restarts: 20, max_iters: 500, tol: 1e-6, seed: 0 }
    }
}

/// Result of the variational search. `experimental` is always true: the
/// optimizer explores a nonconvex landscape and the returned phase is a
/// best-found value, not a certified invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedPhaseResult {
    /// Nonnegative phase representative of the best configuration found.
    pub phase: f64,
    /// |e^{i Phi} - 1| at the optimum; 0 means a real positive product.
    pub objective: f64,
    pub experimental: bool,
}

const RANK_TOL: f64 = 1e-10;
const GAP_TOL: f64 = 1e-10;

/// Variational three-state phase for full-rank mixed states: the Bargmann
/// argument Phi of the twisted-purification product
///
///   tr(s1 s2 U2*) tr(s2 s3 U3* U2) tr(s3 s1 U3),   s_j = sqrt(rho_j),
///
/// at unitaries minimizing |e^{i Phi} - 1|, with the gauge U1 = 1. The
/// first restart starts from U2 = U3 = 1, where every factor is a trace of
/// a product of positive matrices and hence real positive; the minimum is
/// therefore 0 for every full-rank input and this search is a consistency
/// probe, not an informative invariant. See `MixedPhaseResult::experimental`.
pub fn phase_mixed_variational(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    rho3: &DensityMatrix,
    config: &OptimizerConfig,
) -> Result<MixedPhaseResult> {
    let d = rho1.dim();
    if rho2.dim() != d || rho3.dim() != d {
        return Err(Error::DimensionMismatch { left: d, right: rho2.dim().max(rho3.dim()) });
    }
    for rho in [rho1, rho2, rho3] {
        let eig = hermitian_eig(rho.matrix())?;
        if eig.values[0] <= RANK_TOL {
            return Err(Error::RankDeficient { min_eigenvalue: eig.values[0] });
        }
        for w in eig.values.windows(2) {
            if w[1] - w[0] <= GAP_TOL {
                return Err(Error::DegenerateSpectrum { gap: w[1] - w[0] });
            }
        }
    }
    let s1 = rho1.sqrt();
    let s2 = rho2.sqrt();
    let s3 = rho3.sqrt();
    let s1s2 = s1.mul(&s2)?;
    let s2s3 = s2.mul(&s3)?;
    let s3s1 = s3.mul(&s1)?;

    // Two Hermitian generators parametrize (U2, U3); each takes d real
    // diagonal entries plus d(d-1)/2 complex off-diagonal ones.
    let per_gen = d * d;
    let unpack = |theta: &[f64]| -> Result<(ComplexMatrix, ComplexMatrix)> {
        let build = |slice: &[f64]| -> Result<ComplexMatrix> {
            let mut h = ComplexMatrix::zeros(d);
            let mut k = 0;
            for i in 0..d {
                h.set(i, i, C64::new(slice[k], 0.0));
                k += 1;
            }
            for i in 0..d {
                for j in i + 1..d {
                    let v = C64::new(slice[k], slice[k + 1]);
                    k += 2;
                    h.set(i, j, v);
                    h.set(j, i, v.conj());
                }
            }
            unitary_from_generator(&h)
        };
        Ok((build(&theta[..per_gen])?, build(&theta[per_gen..])?))
    };

    let objective = |theta: &[f64]| -> Result<Option<(f64, f64)>> {
        let (u2, u3) = unpack(theta)?;
        // tr(s1 s2 U2†) = <U2, s1 s2>_HS by cyclicity
        let o12 = hs_inner(&u2, &s1s2)?;
        let o23 = s2s3.mul(&u3.adjoint())?.mul(&u2)?.trace();
        let o31 = s3s1.mul(&u3)?.trace();
        if o12.norm() <= PHASE_FIDELITY_TOL
            || o23.norm() <= PHASE_FIDELITY_TOL
            || o31.norm() <= PHASE_FIDELITY_TOL
        {
            return Ok(None);
        }
        let product = o12 * o23 * o31;
        let phi = canonical_arg(product);
        let gap = (C64::from_polar(1.0, phi) - C64::new(1.0, 0.0)).norm();
        Ok(Some((gap, phi)))
    };

    let n_params = 2 * per_gen;
    let mut best: Option<(f64, f64)> = None;
    for restart in 0..config.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.seed, restart as u64));
        let mut theta = vec![0.0f64; n_params];
        if restart > 0 {
            for v in &mut theta {
                let g: f64 = rng.sample(StandardNormal);
                *v = 0.5 * g;
            }
        }
        let mut current = objective(&theta)?;
        let mut step = 0.3f64;
        for _ in 0..config.max_iters {
            if let Some((gap, _)) = current {
                if gap <= config.tol {
                    break;
                }
            }
            if step < 1e-9 {
                break;
            }
            let mut direction = vec![0.0f64; n_params];
            for v in &mut direction {
                *v = rng.sample(StandardNormal);
            }
            let mut improved = false;
            for sign in [1.0, -1.0] {
                let candidate: Vec<f64> = theta
                    .iter()
                    .zip(&direction)
                    .map(|(t, dir)| t + sign * step * dir)
                    .collect();
                let value = objective(&candidate)?;
                let better = match (&value, &current) {
                    (Some((vg, _)), Some((cg, _))) => vg < cg,
                    (Some(_), None) => true,
                    _ => false,
                };
                if better {
                    theta = candidate;
                    current = value;
                    improved = true;
                    break;
                }
            }
            step *= if improved { 1.1 } else { 0.9 };
            step = step.min(1.0);
        }
        if let Some((gap, phi)) = current {
            let better = match best {
                Some((bg, _)) => gap < bg,
                None => true,
            };
            if better {
                best = Some((gap, phi));
            }
        }
        if let Some((gap, _)) = best {
            if gap <= config.tol {
                break;
            }
        }
    }
    match best {
        Some((gap, phi)) => Ok(MixedPhaseResult { phase: phi.abs(), objective: gap, experimental: true }),
        None => Err(Error::OptimizerFailed),
    }
}
