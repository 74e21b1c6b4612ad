//! Dense complex matrices and the Hermitian eigensolver.
//!
//! Everything downstream (fidelities, purifications, witnesses) reduces to
//! eigendecompositions of small Hermitian matrices, so the solver is a cyclic
//! complex Jacobi iteration: slow asymptotically, but simple, accurate to a
//! few ulps, and fast for the dimensions this crate targets.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Convergence threshold on the off-diagonal Frobenius norm.
pub const EIG_OFF_THRESHOLD: f64 = 1e-13;
/// Sweep budget; cyclic Jacobi converges quadratically, so hitting this
/// means the input was not Hermitian to working precision.
pub const EIG_MAX_SWEEPS: usize = 100;
/// Hermiticity tolerance for eigensolver inputs.
pub const HERMITICITY_TOL: f64 = 1e-9;
/// Eigenvalues above -PSD_EIG_TOL are treated as roundoff and clamped to 0.
pub const PSD_EIG_TOL: f64 = 1e-9;
/// Unitarity tolerance used by routines that accept unitary arguments.
pub const UNITARITY_TOL: f64 = 1e-9;

/// Square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix { dim, entries: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Row-major entries; the length must be dim^2.
    pub fn from_entries(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::EntryCount { expected: dim * dim, found: entries.len() });
        }
        Ok(ComplexMatrix { dim, entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += aik * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(ComplexMatrix { dim: self.dim, entries })
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(ComplexMatrix { dim: self.dim, entries })
    }

    pub fn scale(&self, factor: C64) -> ComplexMatrix {
        let entries = self.entries.iter().map(|a| a * factor).collect();
        ComplexMatrix { dim: self.dim, entries }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Entrywise conjugate, no transpose.
    pub fn conj(&self) -> ComplexMatrix {
        let entries = self.entries.iter().map(|a| a.conj()).collect();
        ComplexMatrix { dim: self.dim, entries }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: v.len() });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    pub fn fro_norm(&self) -> f64 {
        self.entries.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus of self - other.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max_ij |a_ij - conj(a_ji)|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// (A + A*)/2, exactly Hermitian up to representation.
    pub fn symmetrized(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

/// Eigendecomposition of a Hermitian matrix: A = Q diag(values) Q*.
/// Eigenvalues ascend; `vectors` holds the eigenvectors as columns.
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation annihilating the (p, q) entry of m, with the
/// same rotation accumulated into the eigenvector matrix.
///
/// Writing a_pq = r e^{i alpha}, the rotation is the 2x2 unitary with
/// U_pp = U_qq = c, U_pq = s e^{i alpha}, U_qp = -s e^{-i alpha}, where
/// tan(2 phi) solves the standard symmetric Jacobi equation for the real
/// matrix [[a_pp, r], [r, a_qq]].
fn jacobi_rotate(m: &mut ComplexMatrix, q: &mut ComplexMatrix, p: usize, r: usize) {
    let n = m.dim();
    let apq = m[(p, r)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let theta = (m[(r, r)].re - m[(p, p)].re) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let sp = s * phase;
    let spc = s * phase.conj();

    // m <- m U (columns p and r)
    for j in 0..n {
        let mjp = m[(j, p)];
        let mjr = m[(j, r)];
        m.set(j, p, c * mjp - spc * mjr);
        m.set(j, r, sp * mjp + c * mjr);
    }
    // m <- U* m (rows p and r)
    for j in 0..n {
        let mpj = m[(p, j)];
        let mrj = m[(r, j)];
        m.set(p, j, c * mpj - sp * mrj);
        m.set(r, j, spc * mpj + c * mrj);
    }
    // The rotation zeroes these exactly in exact arithmetic; enforce it.
    m.set(p, r, C64::new(0.0, 0.0));
    m.set(r, p, C64::new(0.0, 0.0));
    let mpp = m[(p, p)];
    let mrr = m[(r, r)];
    m.set(p, p, C64::new(mpp.re, 0.0));
    m.set(r, r, C64::new(mrr.re, 0.0));

    // q <- q U
    for j in 0..n {
        let qjp = q[(j, p)];
        let qjr = q[(j, r)];
        q.set(j, p, c * qjp - spc * qjr);
        q.set(j, r, sp * qjp + c * qjr);
    }
}

/// Eigendecomposition by cyclic complex Jacobi sweeps.
///
/// The input must be Hermitian within HERMITICITY_TOL; it is symmetrized
/// before iterating so the rotations see an exactly Hermitian matrix.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let defect = a.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian { deviation: defect });
    }
    let n = a.dim();
    let mut m = a.symmetrized();
    let mut q = ComplexMatrix::identity(n);

    let mut converged = n < 2;
    for _ in 0..EIG_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= EIG_OFF_THRESHOLD * (1.0 + m.fro_norm()) {
            converged = true;
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                jacobi_rotate(&mut m, &mut q, p, r);
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&m);
        if off > EIG_OFF_THRESHOLD * (1.0 + m.fro_norm()) {
            return Err(Error::NoConvergence { off_diagonal: off });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(i, i)].re.partial_cmp(&m[(j, j)].re).expect("eigenvalues are finite").then(i.cmp(&j))
    });
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| q[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Rebuild Q f(diag) Q* from an eigendecomposition.
fn assemble(eig: &HermitianEigen, f: impl Fn(f64) -> C64) -> ComplexMatrix {
    let n = eig.vectors.dim();
    let fs: Vec<C64> = eig.values.iter().map(|&l| f(l)).collect();
    ComplexMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| eig.vectors[(i, k)] * fs[k] * eig.vectors[(j, k)].conj()).sum()
    })
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues
/// below -PSD_EIG_TOL are an error; eigenvalues below 1e-14 of the largest
/// are treated as exact zeros. The relative floor matters: taking the
/// square root of rank-deficient inputs would otherwise amplify O(eps)
/// eigenvalue noise to O(sqrt(eps)) in the result.
pub fn matrix_sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a)?;
    if let Some(&min) = eig.values.first() {
        if min < -PSD_EIG_TOL {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
    }
    let floor = eig.values.last().copied().unwrap_or(0.0).max(0.0) * 1e-14;
    Ok(assemble(&eig, |l| C64::new(if l <= floor { 0.0 } else { l.sqrt() }, 0.0)).symmetrized())
}

/// |X| = sqrt(X* X).
pub fn operator_abs(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    matrix_sqrt_psd(&x.adjoint().mul(x)?)
}

/// Singular values of a square matrix by one-sided Jacobi (Hestenes)
/// iteration. Columns are rotated pairwise until mutually orthogonal; the
/// singular values are then the column norms, in no particular order.
///
/// The point of the one-sided form is accuracy at the bottom of the
/// spectrum: it never forms M* M, so a true zero singular value stays at
/// O(eps) instead of surfacing as sqrt(eps) eigenvalue noise.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut cols: Vec<Vec<C64>> =
        (0..n).map(|j| (0..n).map(|i| m[(i, j)]).collect()).collect();
    let mut worst = 0.0f64;
    for _ in 0..EIG_MAX_SWEEPS {
        worst = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut a = 0.0;
                let mut b = 0.0;
                let mut g = C64::new(0.0, 0.0);
                for i in 0..n {
                    a += cols[p][i].norm_sqr();
                    b += cols[q][i].norm_sqr();
                    g += cols[p][i].conj() * cols[q][i];
                }
                let mag = g.norm();
                if mag <= 1e-14 * (a * b).sqrt() {
                    continue;
                }
                worst = worst.max(mag / (a * b).sqrt());
                // Diagonalize the 2x2 Gram [[a, g], [g*, b]]; same rotation
                // convention as jacobi_rotate, applied to the columns.
                let phase = g / mag;
                let theta = (b - a) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let sp = s * phase;
                let spc = s * phase.conj();
                for i in 0..n {
                    let vp = cols[p][i];
                    let vq = cols[q][i];
                    cols[p][i] = c * vp - spc * vq;
                    cols[q][i] = sp * vp + c * vq;
                }
            }
        }
        if worst == 0.0 {
            return Ok(cols
                .iter()
                .map(|col| col.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
                .collect());
        }
    }
    Err(Error::NoConvergence { off_diagonal: worst })
}

/// Trace norm of the product, tr |A B|: the largest |tr(A B U)| over
/// unitaries U, reached when U aligns the polar phases. Computed as the sum
/// of singular values of A B without assembling |A B|.
pub fn max_overlap_unitary(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let ab = a.mul(b)?;
    Ok(singular_values(&ab)?.iter().sum())
}

/// Hilbert-Schmidt inner product tr(X* Y).
pub fn hs_inner(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<C64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    Ok(x.entries().iter().zip(y.entries()).map(|(a, b)| a.conj() * b).sum())
}

/// max |(U* U - I)_ij|.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    let gram = u.adjoint().mul(u).expect("square matrix");
    gram.max_abs_diff(&ComplexMatrix::identity(u.dim()))
}

/// exp(i H) for Hermitian H, via the eigendecomposition.
pub fn unitary_from_generator(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(assemble(&eig, |l| C64::from_polar(1.0, l)))
}
