//! Reconstruction of a pure-state sequence from its pairwise fidelities and
//! anchored three-state phases.
//!
//! A sequence phi_1 .. phi_n is determined up to a global unitary and
//! per-state phases by its Gram matrix, and the Gram matrix in turn is
//! determined by the fidelities F_kj together with the phases of the
//! triples (1, k, j) anchored at the first state. The canonical
//! representative built here is lower triangular with real nonnegative
//! diagonal: state j lives in the span of the first j basis vectors.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fidelity::fidelity_pure;
use crate::linalg::ComplexMatrix;
use crate::phase::{phase_pure, PHASE_FIDELITY_TOL};
use crate::state::PureState;

/// Fidelities at or below this are treated as exactly zero by the
/// reconstruction: the corresponding overlap needs no phase datum.
pub const GENERICITY_TOL: f64 = 1e-10;
/// Consistency slack: radicands below -RADICAND_TOL and forced overlaps
/// violated by more than it are rejected as unrealizable data.
pub const RADICAND_TOL: f64 = 1e-8;

/// Anchored phase of the triple (1, k, j), with 2 <= k < j <= n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseEntry {
    pub k: usize,
    pub j: usize,
    pub value: f64,
}

/// The invariant data of a sequence: pairwise fidelities plus the anchored
/// phase table. The table is sparse: pairs with vanishing fidelity carry no
/// phase (none is defined).
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceInvariants {
    n: usize,
    fidelities: Vec<Vec<f64>>,
    phases: Vec<PhaseEntry>,
}

impl SequenceInvariants {
    /// Validates and normalizes the data: the fidelity matrix must be
    /// square, symmetric within 1e-9, with unit diagonal and entries in
    /// [0, 1]; phase keys must satisfy 2 <= k < j <= n without duplicates;
    /// and every pair with fidelity above `GENERICITY_TOL` must carry a
    /// phase entry.
    pub fn new(fidelities: Vec<Vec<f64>>, phases: Vec<PhaseEntry>) -> Result<Self> {
        let n = fidelities.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (i, row) in fidelities.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInvariants {
                    detail: format!("fidelity row {} has length {}, expected {}", i + 1, row.len(), n),
                });
            }
        }
        let mut f = fidelities;
        for i in 0..n {
            if (f[i][i] - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidInvariants {
                    detail: format!("diagonal fidelity ({0}, {0}) is {1}, expected 1", i + 1, f[i][i]),
                });
            }
            f[i][i] = 1.0;
            for j in i + 1..n {
                if (f[i][j] - f[j][i]).abs() > 1e-9 {
                    return Err(Error::InvalidInvariants {
                        detail: format!("fidelity matrix is not symmetric at ({}, {})", i + 1, j + 1),
                    });
                }
                let v = 0.5 * (f[i][j] + f[j][i]);
                if !v.is_finite() || v < -1e-12 || v > 1.0 + 1e-12 {
                    return Err(Error::InvalidInvariants {
                        detail: format!("fidelity ({}, {}) is out of [0, 1]", i + 1, j + 1),
                    });
                }
                let v = v.clamp(0.0, 1.0);
                f[i][j] = v;
                f[j][i] = v;
            }
        }
        let mut table = phases;
        for entry in &mut table {
            if !(2 <= entry.k && entry.k < entry.j && entry.j <= n) {
                return Err(Error::InvalidInvariants {
                    detail: format!("phase key ({}, {}) is out of range", entry.k, entry.j),
                });
            }
            if !entry.value.is_finite() {
                return Err(Error::InvalidInvariants {
                    detail: format!("phase value for ({}, {}) is not finite", entry.k, entry.j),
                });
            }
            // wrap into (-pi, pi]
            let tau = 2.0 * std::f64::consts::PI;
            let mut v = entry.value.rem_euclid(tau);
            if v > std::f64::consts::PI {
                v -= tau;
            }
            entry.value = v;
        }
        table.sort_by_key(|e| (e.k, e.j));
        for pair in table.windows(2) {
            if pair[0].k == pair[1].k && pair[0].j == pair[1].j {
                return Err(Error::InvalidInvariants {
                    detail: format!("duplicate phase entry for ({}, {})", pair[0].k, pair[0].j),
                });
            }
        }
        let inv = SequenceInvariants { n, fidelities: f, phases: table };
        for k in 2..=n {
            for j in k + 1..=n {
                if inv.fidelity(k, j) > GENERICITY_TOL && inv.phase(k, j).is_none() {
                    return Err(Error::MissingPhase { k, j });
                }
            }
        }
        Ok(inv)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Pairwise fidelity, 1-based indices.
    pub fn fidelity(&self, i: usize, j: usize) -> f64 {
        self.fidelities[i - 1][j - 1]
    }

    pub fn fidelities(&self) -> &[Vec<f64>] {
        &self.fidelities
    }

    /// Anchored phase for the pair (k, j) if the table holds one.
    pub fn phase(&self, k: usize, j: usize) -> Option<f64> {
        self.phases
            .binary_search_by_key(&(k, j), |e| (e.k, e.j))
            .ok()
            .map(|idx| self.phases[idx].value)
    }

    pub fn phases(&self) -> &[PhaseEntry] {
        &self.phases
    }
}

/// Lower-triangular canonical sequence: row j holds the first j coordinates
/// of state j (the rest vanish), with c_11 = 1 and real nonnegative
/// diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSequence {
    rows: Vec<Vec<C64>>,
}

impl CanonicalSequence {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<C64>] {
        &self.rows
    }

    /// The states as unit vectors in C^n, zero-padded past the triangle.
    pub fn states(&self) -> Vec<PureState> {
        let n = self.rows.len();
        self.rows
            .iter()
            .map(|row| {
                let mut amps = row.clone();
                amps.resize(n, C64::new(0.0, 0.0));
                PureState::normalized(amps)
            })
            .collect()
    }
}

/// Reads off the invariant data of a sequence of pure states. Phases are
/// recorded for every pair (k, j) whose fidelity exceeds
/// `PHASE_FIDELITY_TOL`; that requires both anchor legs F_1k and F_1j to be
/// nonzero, otherwise the anchored triple has no defined phase and the data
/// is rejected.
pub fn extract_invariants(states: &[PureState]) -> Result<SequenceInvariants> {
    let n = states.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    let dim = states[0].dim();
    for s in states {
        if s.dim() != dim {
            return Err(Error::SizeMismatch { left: dim, right: s.dim() });
        }
    }
    let mut fidelities = vec![vec![0.0; n]; n];
    for i in 0..n {
        fidelities[i][i] = 1.0;
        for j in i + 1..n {
            let f = fidelity_pure(&states[i], &states[j])?;
            fidelities[i][j] = f;
            fidelities[j][i] = f;
        }
    }
    let mut phases = Vec::new();
    for k in 2..=n {
        for j in k + 1..=n {
            if fidelities[k - 1][j - 1] <= PHASE_FIDELITY_TOL {
                continue;
            }
            if fidelities[0][k - 1] <= PHASE_FIDELITY_TOL || fidelities[0][j - 1] <= PHASE_FIDELITY_TOL {
                return Err(Error::ZeroFidelityTriple { k, j });
            }
            let value = phase_pure(&states[0], &states[k - 1], &states[j - 1])?;
            phases.push(PhaseEntry { k, j, value });
        }
    }
    SequenceInvariants::new(fidelities, phases)
}

/// Rebuilds the canonical sequence realizing the invariants.
///
/// Row 1 is (1); row j starts with c_j1 = sqrt(F_1j) and recovers each
/// further coordinate from the overlap o_kj = e^{i Phi_1kj} sqrt(F_kj)
/// through the triangular system <c_k, c_j> = o_kj. When a diagonal c_kk
/// vanishes the elimination cannot continue at column k unless the data
/// already forces the overlap; a forced mismatch above `RADICAND_TOL` is
/// unrealizable data, anything else is a genericity failure. The final
/// radicand 1 - |c_j|^2 must be nonnegative up to the same slack.
pub fn reconstruct(inv: &SequenceInvariants) -> Result<CanonicalSequence> {
    let n = inv.n();
    let mut rows: Vec<Vec<C64>> = vec![vec![C64::new(1.0, 0.0)]];
    for j in 2..=n {
        let mut row = vec![C64::new(0.0, 0.0); j];
        row[0] = C64::new(inv.fidelity(1, j).sqrt(), 0.0);
        for k in 2..j {
            let fkj = inv.fidelity(k, j);
            let okj = match inv.phase(k, j) {
                Some(phi) => C64::from_polar(fkj.sqrt(), phi),
                None => {
                    debug_assert!(fkj <= GENERICITY_TOL, "validated at construction");
                    C64::new(0.0, 0.0)
                }
            };
            let forced: C64 = (0..k - 1).map(|l| rows[k - 1][l].conj() * row[l]).sum();
            let ckk = rows[k - 1][k - 1].re;
            if ckk <= GENERICITY_TOL {
                // dead direction: the overlap is already determined
                if (okj - forced).norm() > RADICAND_TOL {
                    return Err(Error::InconsistentData { index: j });
                }
                return Err(Error::GenericityViolation { index: k });
            }
            row[k - 1] = (okj - forced) / ckk;
        }
        let used: f64 = row[..j - 1].iter().map(|v| v.norm_sqr()).sum();
        let radicand = 1.0 - used;
        if radicand < -RADICAND_TOL {
            return Err(Error::InconsistentData { index: j });
        }
        row[j - 1] = C64::new(radicand.max(0.0).sqrt(), 0.0);
        let norm: f64 = row.iter().map(|v| v.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            let scale = 1.0 / norm.sqrt();
            for v in &mut row {
                *v *= scale;
            }
        }
        rows.push(row);
    }
    Ok(CanonicalSequence { rows })
}

/// Gram matrix G_ij = <phi_i, phi_j> of a sequence.
pub fn gram_matrix(states: &[PureState]) -> Result<ComplexMatrix> {
    let n = states.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut g = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, states[i].inner(&states[j])?);
        }
    }
    Ok(g)
}

/// Extract-reconstruct roundtrip deviations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundtripReport {
    /// Largest pairwise fidelity deviation.
    pub max_fidelity_err: f64,
    /// Largest anchored-phase deviation, wrapped to (-pi, pi].
    pub max_phase_err: f64,
    /// Largest entrywise Gram deviation after aligning the per-state phase
    /// gauge of the original sequence to the canonical one.
    pub gram_err: f64,
}

fn wrap_phase(v: f64) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let mut w = v.rem_euclid(tau);
    if w > std::f64::consts::PI {
        w -= tau;
    }
    w
}

/// Runs extract -> reconstruct -> extract and reports the deviations, plus
/// the Gram comparison between the input and the canonical sequence. The
/// input Gram matrix is compared in the canonical gauge: each state is
/// rephased so its overlap with the first state is real nonnegative, which
/// is exactly the gauge the reconstruction fixes.
pub fn verify_roundtrip(states: &[PureState]) -> Result<RoundtripReport> {
    let inv = extract_invariants(states)?;
    let rebuilt = reconstruct(&inv)?;
    let again = extract_invariants(&rebuilt.states())?;

    let n = inv.n();
    let mut max_fidelity_err = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            max_fidelity_err = max_fidelity_err.max((inv.fidelity(i, j) - again.fidelity(i, j)).abs());
        }
    }
    let mut max_phase_err = 0.0f64;
    for k in 2..=n {
        for j in k + 1..=n {
            let a = inv.phase(k, j);
            let b = again.phase(k, j);
            let err = match (a, b) {
                (None, None) => 0.0,
                (Some(x), None) | (None, Some(x)) => wrap_phase(x).abs(),
                (Some(x), Some(y)) => wrap_phase(x - y).abs(),
            };
            max_phase_err = max_phase_err.max(err);
        }
    }

    let g = gram_matrix(states)?;
    let gauge: Vec<C64> = (0..n)
        .map(|j| {
            let g1j = g[(0, j)];
            if g1j.norm() > 0.0 {
                g1j.conj() / g1j.norm()
            } else {
                C64::new(1.0, 0.0)
            }
        })
        .collect();
    let aligned = ComplexMatrix::from_fn(n, |i, j| gauge[i].conj() * g[(i, j)] * gauge[j]);
    let g_rebuilt = gram_matrix(&rebuilt.states())?;
    let gram_err = aligned.max_abs_diff(&g_rebuilt);

    Ok(RoundtripReport { max_fidelity_err, max_phase_err, gram_err })
}

/// Invariant counts for sequences of n states in dimension >= n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParameterCounts {
    /// Gauge-reduced real dimension of the sequence space: (n - 1)^2.
    pub dof: u64,
    /// Independent fidelities: n(n-1)/2.
    pub fidelity_count: u64,
    /// Anchored phases: (n-1)(n-2)/2.
    pub minimal_phase_count: u64,
    /// All three-state phases: n(n-1)(n-2)/6.
    pub all_phase_count: u64,
}

/// The counting identity behind the reconstruction: fidelities plus
/// anchored phases exactly exhaust the gauge-reduced degrees of freedom,
///
///   n(n-1)/2 + (n-1)(n-2)/2 = (n-1)^2.
pub fn parameter_counts(n: u64) -> ParameterCounts {
    let m1 = n.saturating_sub(1);
    let m2 = n.saturating_sub(2);
    ParameterCounts {
        dof: m1 * m1,
        fidelity_count: n * m1 / 2,
        minimal_phase_count: m1 * m2 / 2,
        all_phase_count: n * m1 * m2 / 6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{mix_seed, random_pure};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn two_state_reconstruction() {
        let inv = SequenceInvariants::new(vec![vec![1.0, 0.25], vec![0.25, 1.0]], vec![]).unwrap();
        let seq = reconstruct(&inv).unwrap();
        assert_eq!(seq.n(), 2);
        assert!((seq.rows()[1][0] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((seq.rows()[1][1].re - 0.75f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn orthonormal_list_reconstructs() {
        // all fidelities zero: no phases needed, identity rows come back
        let states: Vec<PureState> = (0..4).map(|k| PureState::basis(4, k).unwrap()).collect();
        let inv = extract_invariants(&states).unwrap();
        assert!(inv.phases().is_empty());
        let seq = reconstruct(&inv).unwrap();
        for (j, row) in seq.rows().iter().enumerate() {
            assert!((row[j].re - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn roundtrip_on_random_sequences() {
        // embedding dimension may exceed the sequence length; the canonical
        // form only sees the Gram matrix
        for n in 2..=8usize {
            for dim in [n, n + 2] {
                for rep in 0..10u64 {
                    let states: Vec<PureState> = (0..n)
                        .map(|k| {
                            random_pure(dim, mix_seed(800 + (n + 16 * dim) as u64, rep * 16 + k as u64))
                        })
                        .collect();
                    let report = verify_roundtrip(&states).unwrap();
                    assert!(report.max_fidelity_err < 1e-10, "n {n} dim {dim} rep {rep}");
                    assert!(report.max_phase_err < 1e-8, "n {n} dim {dim} rep {rep}");
                    assert!(
                        report.gram_err < 1e-8,
                        "n {n} dim {dim} rep {rep}: {}",
                        report.gram_err
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_rows_are_unit_vectors() {
        for (n, dim) in [(4usize, 4usize), (5, 5), (5, 7), (8, 10)] {
            let states: Vec<PureState> =
                (0..n).map(|k| random_pure(dim, mix_seed(870 + n as u64, k as u64))).collect();
            let seq = reconstruct(&extract_invariants(&states).unwrap()).unwrap();
            for (j, row) in seq.rows().iter().enumerate() {
                let norm2: f64 = row.iter().map(|z| z.norm_sqr()).sum();
                assert!((norm2.sqrt() - 1.0).abs() < 1e-10, "n {n} dim {dim} row {j}");
            }
        }
    }

    #[test]
    fn gram_matrix_is_positive_semidefinite() {
        use crate::linalg::hermitian_eig;
        // includes overcomplete sequences whose Gram is genuinely singular
        for (n, dim) in [(3usize, 3usize), (5, 3), (6, 8), (8, 4)] {
            for rep in 0..10u64 {
                let states: Vec<PureState> = (0..n)
                    .map(|k| random_pure(dim, mix_seed(880 + (n + 16 * dim) as u64, rep * 16 + k as u64)))
                    .collect();
                let gram = gram_matrix(&states).unwrap();
                let eig = hermitian_eig(&gram).unwrap();
                let min = eig.values.first().copied().unwrap();
                assert!(min >= -1e-9, "n {n} dim {dim} rep {rep}: min eig {min}");
            }
        }
    }

    #[test]
    fn canonical_rows_are_lower_triangular_with_nonneg_diagonal() {
        let states: Vec<PureState> = (0..5).map(|k| random_pure(5, mix_seed(900, k))).collect();
        let seq = reconstruct(&extract_invariants(&states).unwrap()).unwrap();
        for (j, row) in seq.rows().iter().enumerate() {
            assert_eq!(row.len(), j + 1);
            assert!(row[j].im == 0.0 && row[j].re >= 0.0);
            // first column real nonnegative: anchor overlaps carry no phase
            assert!(row[0].im == 0.0 && row[0].re >= 0.0);
        }
    }

    #[test]
    fn contradictory_triple_is_rejected() {
        // F12 = F13 = 1 forces state 3 = state 1 = state 2, but F23 = 0
        let inv = SequenceInvariants::new(
            vec![vec![1.0, 1.0, 1.0], vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 1.0]],
            vec![],
        )
        .unwrap();
        assert!(matches!(reconstruct(&inv), Err(Error::InconsistentData { index: 3 })));
    }

    #[test]
    fn forced_overlap_mismatch_is_rejected() {
        // F12 = 1 pins state 2 to state 1, forcing F23 = F13; data that
        // disagrees cannot come from any sequence
        let inv = SequenceInvariants::new(
            vec![vec![1.0, 1.0, 0.9], vec![1.0, 1.0, 0.1], vec![0.9, 0.1, 1.0]],
            vec![PhaseEntry { k: 2, j: 3, value: 0.0 }],
        )
        .unwrap();
        assert!(matches!(reconstruct(&inv), Err(Error::InconsistentData { index: 3 })));
    }

    #[test]
    fn overfull_row_is_rejected() {
        // three mutually high fidelities that no three states can share:
        // sqrt coordinates (0.99, 0.99, 0.1) lie far outside the region
        let h = 0.9801;
        let inv = SequenceInvariants::new(
            vec![vec![1.0, h, h], vec![h, 1.0, 0.01], vec![h, 0.01, 1.0]],
            vec![PhaseEntry { k: 2, j: 3, value: 0.0 }],
        )
        .unwrap();
        assert!(matches!(reconstruct(&inv), Err(Error::InconsistentData { index: 3 })));
    }

    #[test]
    fn dead_direction_with_consistent_data_is_genericity_violation() {
        // F12 = 1 makes c_22 = 0; consistent third state cannot be placed
        // by elimination even though the data is realizable
        let quarter = 0.25;
        let inv = SequenceInvariants::new(
            vec![
                vec![1.0, 1.0, quarter],
                vec![1.0, 1.0, quarter],
                vec![quarter, quarter, 1.0],
            ],
            vec![PhaseEntry { k: 2, j: 3, value: 0.0 }],
        )
        .unwrap();
        assert!(matches!(reconstruct(&inv), Err(Error::GenericityViolation { index: 2 })));
    }

    #[test]
    fn missing_phase_is_rejected_at_validation() {
        let err = SequenceInvariants::new(
            vec![vec![1.0, 0.5, 0.5], vec![0.5, 1.0, 0.5], vec![0.5, 0.5, 1.0]],
            vec![],
        );
        assert!(matches!(err, Err(Error::MissingPhase { k: 2, j: 3 })));
    }

    #[test]
    fn extraction_rejects_zero_anchor_legs() {
        // F23 > 0 but F12 = 0: the anchored triple (1, 2, 3) has no phase
        let states = vec![
            PureState::basis(3, 0).unwrap(),
            PureState::basis(3, 1).unwrap(),
            PureState::normalized(vec![c(0.0, 0.0), c(0.6, 0.0), c(0.8, 0.0)]),
        ];
        assert!(matches!(
            extract_invariants(&states),
            Err(Error::ZeroFidelityTriple { k: 2, j: 3 })
        ));
    }

    #[test]
    fn counting_identity() {
        for n in 1..=1000u64 {
            let counts = parameter_counts(n);
            assert_eq!(counts.fidelity_count + counts.minimal_phase_count, counts.dof);
            assert!(counts.minimal_phase_count <= counts.all_phase_count);
        }
        let c8 = parameter_counts(8);
        assert_eq!(c8.dof, 49);
        assert_eq!(c8.fidelity_count, 28);
        assert_eq!(c8.minimal_phase_count, 21);
        assert_eq!(c8.all_phase_count, 56);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn prop_roundtrip_small_sequences(seed in 0u64..10_000, n in 2usize..=5) {
            let states: Vec<PureState> = (0..n)
                .map(|k| random_pure(n, mix_seed(seed, k as u64)))
                .collect();
            let report = verify_roundtrip(&states).unwrap();
            prop_assert!(report.gram_err < 1e-8);
        }
    }
}
