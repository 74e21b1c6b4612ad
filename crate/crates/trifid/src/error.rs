use thiserror::Error;

/// Crate-wide error type. Variants carry the numeric evidence that triggered
/// them so callers (and the CLI) can report actionable messages.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entry list has length {found}, expected {expected} for the declared dimension")]
    EntryCount { expected: usize, found: usize },

    #[error("operands have dimensions {left} and {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operands have sizes {left} and {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver did not converge (off-diagonal norm {off_diagonal:.3e} after the sweep budget)")]
    NoConvergence { off_diagonal: f64 },

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("state vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("weight {index} is negative")]
    NegativeWeight { index: usize },

    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },

    #[error("empty event space or state")]
    Empty,

    #[error("matrix trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("Bloch vector lies outside the unit ball (norm {norm})")]
    OutsideBall { norm: f64 },

    #[error("Bloch vector is not a unit vector (norm {norm})")]
    NotUnitVector { norm: f64 },

    #[error("expected dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("{what} is out of range")]
    OutOfRange { what: &'static str },

    #[error("fidelity triple is not admissible (slack {slack:.3e})")]
    NotAdmissible { slack: f64 },

    #[error("degenerate spread: identical first pair but conflicting third fidelities")]
    DegenerateSpread,

    #[error("order violation: {what}")]
    OrderViolation { what: &'static str },

    #[error("fidelity between states {i} and {j} is numerically zero; the phase is undefined")]
    ZeroFidelity { i: usize, j: usize },

    #[error("cannot extract the phase for triple (1, {k}, {j}): a fidelity with the anchor state vanishes")]
    ZeroFidelityTriple { k: usize, j: usize },

    #[error("Bloch vectors {i} and {j} are antipodal; a half-angle cosine vanishes")]
    AntipodalPair { i: usize, j: usize },

    #[error("density matrix is rank deficient (minimum eigenvalue {min_eigenvalue:.3e})")]
    RankDeficient { min_eigenvalue: f64 },

    #[error("density matrix spectrum is degenerate (minimum gap {gap:.3e})")]
    DegenerateSpectrum { gap: f64 },

    #[error("optimizer found no feasible configuration")]
    OptimizerFailed,

    #[error("genericity violation at row {index}: a diagonal coefficient is numerically zero")]
    GenericityViolation { index: usize },

    #[error("invariant data is inconsistent at row {index}: no pure-state sequence realizes it")]
    InconsistentData { index: usize },

    #[error("missing phase entry for pair ({k}, {j}) whose fidelity is nonzero")]
    MissingPhase { k: usize, j: usize },

    #[error("invalid invariant data: {detail}")]
    InvalidInvariants { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
