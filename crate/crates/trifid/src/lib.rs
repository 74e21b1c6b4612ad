//! Fidelity triples, admissibility witnesses, three-state phase invariants,
//! and pure-state sequence reconstruction in finite dimension.
//!
//! The library answers four related questions about collections of quantum
//! or classical states:
//!
//! * What is the fidelity of a pair? [`fidelity_classical`],
//!   [`fidelity_pure`], [`fidelity_uhlmann`], and the qubit closed form
//!   [`fidelity_bloch2d`] cover the standard models, with an independent
//!   nested-root route [`fidelity_uhlmann_nested`] for cross-checking.
//! * Which triples of pairwise fidelities are realizable at all? In
//!   square-root coordinates the answer is the region
//!   `1 + 2 x1 x2 x3 - x1^2 - x2^2 - x3^2 >= 0`; see [`classify_triple`],
//!   and [`classical_witness`] / [`quantum_witness`] for explicit
//!   realizations on at most three support points or in C^3. The region is
//!   the same for probability measures, pure states, and density matrices.
//! * What distinguishes triples beyond their fidelities? The Bargmann
//!   invariant [`phase_pure`] and its qubit shadow [`phase_bloch_cos`],
//!   plus an experimental variational probe for mixed states,
//!   [`phase_mixed_variational`], built on twisted purifications.
//! * When do fidelities and anchored phases determine a whole sequence?
//!   [`extract_invariants`] and [`reconstruct`] realize the count
//!   `n(n-1)/2 + (n-1)(n-2)/2 = (n-1)^2` of [`parameter_counts`];
//!   [`verify_roundtrip`] measures the roundtrip error.
//!
//! Randomized checks over all of the above are packaged as campaigns in
//! [`campaign`], seeded and reproducible across thread counts.
//!
//! # Examples
//!
//! Each major capability has a runnable example; start with
//! `cargo run -p trifid --example triple_admissibility`.
//!
//! Fidelities:
//! * `fidelity_basics` computes classical, pure, and mixed fidelities and
//!   cross-checks the two mixed-state routes.
//! * `bloch_closed_forms` exercises the qubit closed forms against the
//!   general machinery.
//!
//! The admissible region:
//! * `triple_admissibility` classifies triples and scans the boundary
//!   section.
//! * `witness_construction` realizes admissible triples classically and
//!   quantum mechanically, including the extreme corners.
//!
//! Phases:
//! * `three_state_phase` computes Bargmann phases and checks gauge
//!   invariance and the chain inequality.
//! * `mixed_phase_search` runs the experimental variational probe on
//!   full-rank states.
//!
//! Sequences and campaigns:
//! * `sequence_roundtrip` extracts invariants from a random sequence and
//!   rebuilds it.
//! * `campaign_runs` runs a small campaign of every kind and prints the
//!   reports.
//!
//! ```
//! use trifid::{classify_triple, classical_witness, FidelityTriple, TripleVerdict};
//!
//! let f = FidelityTriple::new(0.36, 0.9216, 0.64)?;
//! let cls = classify_triple(&f, 1e-9);
//! assert_eq!(cls.verdict, TripleVerdict::BoundarySurface);
//!
//! let w = classical_witness(&f, 1e-9)?;
//! assert_eq!(w.space_size, 2);
//! assert!((w.achieved.f12() - 0.36).abs() < 1e-12);
//! # Ok::<(), trifid::Error>(())
//! ```

pub mod campaign;
pub mod error;
pub mod fidelity;
pub mod io;
pub mod linalg;
pub mod phase;
pub mod random;
pub mod reconstruct;
pub mod state;
pub mod triple;

pub use error::{Error, Result};
pub use fidelity::{
    affinity, fidelity_bloch2d, fidelity_classical, fidelity_pure, fidelity_uhlmann,
    fidelity_uhlmann_nested,
};
pub use linalg::{
    hermitian_eig, hs_inner, matrix_sqrt_psd, max_overlap_unitary, operator_abs,
    singular_values, unitary_from_generator, ComplexMatrix, HermitianEigen, C64,
};
pub use phase::{
    bargmann_product, collinearity_test, phase_bloch_cos, phase_mixed_variational, phase_pure,
    purified_overlap, BargmannProduct, MixedPhaseResult, OptimizerConfig,
};
pub use random::{haar_unitary, mix_seed, random_density, random_pure};
pub use reconstruct::{
    extract_invariants, gram_matrix, parameter_counts, reconstruct, verify_roundtrip,
    CanonicalSequence, ParameterCounts, PhaseEntry, RoundtripReport, SequenceInvariants,
};
pub use state::{
    bloch_state_vector, bloch_to_density, density_to_bloch, direct_sum_mix, measure_to_density,
    partial_trace_second, pure_to_density, purify, BlochVector, DensityMatrix,
    ProbabilityMeasure, PureState, PurifiedState,
};
pub use triple::{
    boundary_x3, classical_witness, classify_triple, overlap_functional_bound,
    overlap_functional_search, quantum_witness, sqrt_slack, triple_slack, ClassicalWitness,
    FidelityTriple, QuantumWitness, TripleClassification, TripleVerdict,
};
pub use campaign::{run_campaign, CampaignConfig, CampaignKind, CampaignReport, DimReport};
