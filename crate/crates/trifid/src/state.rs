//! State models: probability measures, pure states, density matrices, Bloch
//! vectors, and purifications.
//!
//! Constructors validate their inputs once; everything downstream can then
//! assume normalization and positivity without re-checking.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{matrix_sqrt_psd, ComplexMatrix, C64};

const NORM_TOL: f64 = 1e-9;
const TRACE_TOL: f64 = 1e-9;

/// Probability measure on a finite event space.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMeasure {
    weights: Vec<f64>,
}

impl ProbabilityMeasure {
    /// Weights must be nonnegative and sum to 1 within 1e-9. Exact zeros are
    /// allowed; tiny negative roundoff (above -1e-12) is clamped.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty);
        }
        let mut clamped = weights;
        for (index, w) in clamped.iter_mut().enumerate() {
            if *w < 0.0 {
                if *w < -1e-12 {
                    return Err(Error::NegativeWeight { index });
                }
                *w = 0.0;
            }
        }
        let sum: f64 = clamped.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::WeightSum { sum });
        }
        Ok(ProbabilityMeasure { weights: clamped })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Unit vector in C^d.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    /// The amplitude vector must have norm 1 within 1e-9.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Empty);
        }
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(PureState { amplitudes })
    }

    /// Normalizes and wraps; for vectors that are unit up to roundoff.
    pub(crate) fn normalized(mut amplitudes: Vec<C64>) -> Self {
        let norm = l2_norm(&amplitudes);
        debug_assert!(norm > 0.0);
        for a in &mut amplitudes {
            *a /= norm;
        }
        PureState { amplitudes }
    }

    /// Standard basis vector e_k.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::OutOfRange { what: "basis index" });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[k] = C64::new(1.0, 0.0);
        Ok(PureState { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// <self, other>, antilinear in self.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::SizeMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

fn l2_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermiticity_defect();
        if defect > HERMITICITY_CHECK {
            return Err(Error::NotHermitian { deviation: defect });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        let symmetrized = matrix.symmetrized();
        let eig = crate::linalg::hermitian_eig(&symmetrized)?;
        if let Some(&min) = eig.values.first() {
            if min < -crate::linalg::PSD_EIG_TOL {
                return Err(Error::NotPsd { min_eigenvalue: min });
            }
        }
        Ok(DensityMatrix { matrix: symmetrized })
    }

    /// For matrices that are valid by construction.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix) -> Self {
        DensityMatrix { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Principal square root; always defined since the matrix is PSD.
    pub fn sqrt(&self) -> ComplexMatrix {
        matrix_sqrt_psd(&self.matrix).expect("density matrices are PSD")
    }
}

const HERMITICITY_CHECK: f64 = 1e-9;

/// Point of the closed unit ball in R^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if norm > 1.0 + NORM_TOL {
            return Err(Error::OutsideBall { norm });
        }
        Ok(BlochVector { x, y, z })
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }
}

/// Purification of a density matrix on C^d, living in C^d tensor C^d.
///
/// The canonical choice is vec(sqrt(rho)) in row-major order: component
/// (a, b) of the vector is sqrt(rho)_{ab}. Tracing out the second factor
/// returns sqrt(rho) sqrt(rho)* = rho.
#[derive(Debug, Clone, PartialEq)]
pub struct PurifiedState {
    vector: Vec<C64>,
    source_dim: usize,
}

impl PurifiedState {
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn vector(&self) -> &[C64] {
        &self.vector
    }

    /// <self, other> in the doubled space.
    pub fn inner(&self, other: &PurifiedState) -> Result<C64> {
        if self.source_dim != other.source_dim {
            return Err(Error::DimensionMismatch {
                left: self.source_dim,
                right: other.source_dim,
            });
        }
        Ok(self
            .vector
            .iter()
            .zip(&other.vector)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Acts with 1 tensor conj(u) on the purification. This moves the
    /// purifying freedom without changing the reduced state on the first
    /// factor: component (a, b) becomes sum_c conj(u_bc) v_(a, c).
    pub fn twist(&self, u: &ComplexMatrix) -> Result<PurifiedState> {
        let d = self.source_dim;
        if u.dim() != d {
            return Err(Error::DimensionMismatch { left: d, right: u.dim() });
        }
        let defect = crate::linalg::unitarity_defect(u);
        if defect > crate::linalg::UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation: defect });
        }
        let mut out = vec![C64::new(0.0, 0.0); d * d];
        for a in 0..d {
            for b in 0..d {
                let mut acc = C64::new(0.0, 0.0);
                for cc in 0..d {
                    acc += u[(b, cc)].conj() * self.vector[a * d + cc];
                }
                out[a * d + b] = acc;
            }
        }
        Ok(PurifiedState { vector: out, source_dim: d })
    }
}

/// |phi><phi|.
pub fn pure_to_density(phi: &PureState) -> DensityMatrix {
    let amps = phi.amplitudes();
    let matrix = ComplexMatrix::from_fn(phi.dim(), |i, j| amps[i] * amps[j].conj());
    DensityMatrix::new_unchecked(matrix.symmetrized())
}

/// Diagonal embedding of a probability measure.
pub fn measure_to_density(measure: &ProbabilityMeasure) -> DensityMatrix {
    let n = measure.len();
    let mut m = ComplexMatrix::zeros(n);
    for (i, &w) in measure.weights().iter().enumerate() {
        m.set(i, i, C64::new(w, 0.0));
    }
    DensityMatrix::new_unchecked(m)
}

/// rho = (1 + v . sigma) / 2 on C^2.
pub fn bloch_to_density(v: &BlochVector) -> DensityMatrix {
    let m = ComplexMatrix::from_entries(
        2,
        vec![
            C64::new((1.0 + v.z) * 0.5, 0.0),
            C64::new(v.x * 0.5, -v.y * 0.5),
            C64::new(v.x * 0.5, v.y * 0.5),
            C64::new((1.0 - v.z) * 0.5, 0.0),
        ],
    )
    .expect("four entries");
    DensityMatrix::new_unchecked(m)
}

/// Pauli expectation values of a qubit state.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, found: rho.dim() });
    }
    let m = rho.matrix();
    let x = 2.0 * m[(0, 1)].re;
    let y = -2.0 * m[(0, 1)].im;
    let z = m[(0, 0)].re - m[(1, 1)].re;
    BlochVector::new(x, y, z)
}

/// Spin-coherent section over the unit sphere:
/// (cos(theta/2), e^{i phi} sin(theta/2)). Requires theta in [0, pi].
pub fn bloch_state_vector(theta: f64, phi: f64) -> Result<PureState> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) || !phi.is_finite() {
        return Err(Error::OutOfRange { what: "spherical angle" });
    }
    let half = theta * 0.5;
    PureState::new(vec![
        C64::new(half.cos(), 0.0),
        C64::from_polar(half.sin(), phi),
    ])
}

/// Canonical purification vec(sqrt(rho)).
pub fn purify(rho: &DensityMatrix) -> PurifiedState {
    let s = rho.sqrt();
    let norm = l2_norm(s.entries());
    let vector = s.entries().iter().map(|a| a / norm).collect();
    PurifiedState { vector, source_dim: rho.dim() }
}

/// Reduced state on the first factor: (tr_2 |v><v|)_{ij} = sum_b v_(i,b) conj(v_(j,b)).
pub fn partial_trace_second(omega: &PurifiedState) -> ComplexMatrix {
    let d = omega.source_dim();
    let v = omega.vector();
    ComplexMatrix::from_fn(d, |i, j| {
        (0..d).map(|b| v[i * d + b] * v[j * d + b].conj()).sum()
    })
}

/// Block-diagonal mixture t rho1 (+) (1 - t) rho2 on C^{d1 + d2}.
pub fn direct_sum_mix(rho1: &DensityMatrix, rho2: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::OutOfRange { what: "mixing weight" });
    }
    let d1 = rho1.dim();
    let d2 = rho2.dim();
    let m1 = rho1.matrix();
    let m2 = rho2.matrix();
    let m = ComplexMatrix::from_fn(d1 + d2, |i, j| {
        if i < d1 && j < d1 {
            m1[(i, j)] * t
        } else if i >= d1 && j >= d1 {
            m2[(i - d1, j - d1)] * (1.0 - t)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    Ok(DensityMatrix::new_unchecked(m))
}

pub type Complex = Complex64;
