//! Seeded sampling of states and unitaries.
//!
//! Every sampler takes an explicit u64 seed and is deterministic across
//! platforms and thread counts; campaigns derive per-sample seeds with
//! `mix_seed` so results do not depend on evaluation order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, C64};
use crate::state::{DensityMatrix, PureState};

/// Derives an independent stream seed from a master seed and an index.
/// This is the SplitMix64 output mixer, which scatters consecutive indices
/// across the full 64-bit range.
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed pure state: normalized vector of i.i.d. complex
/// Gaussians, with the global phase fixed so the first nonzero amplitude is
/// real and positive.
pub fn random_pure(dim: usize, seed: u64) -> PureState {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut amps: Vec<C64> = (0..dim).map(|_| complex_gaussian(&mut rng)).collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let lead = amps.iter().find(|a| a.norm() > 0.0).copied().unwrap();
        let phase = lead / lead.norm();
        for a in &mut amps {
            *a = *a * phase.conj() / norm;
        }
        return PureState::normalized(amps);
    }
}

/// Full-rank-almost-surely random density matrix: G G* / tr(G G*) for a
/// square Ginibre matrix G.
pub fn random_density(dim: usize, seed: u64) -> DensityMatrix {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ComplexMatrix::from_fn(dim, |_, _| complex_gaussian(&mut rng));
    let gg = g.mul(&g.adjoint()).expect("same dimension");
    let trace = gg.trace().re;
    DensityMatrix::new_unchecked(gg.scale(C64::new(1.0 / trace, 0.0)).symmetrized())
}

/// Haar-distributed unitary: Gram-Schmidt of a Ginibre matrix with positive
/// diagonal normalization. Orthogonalization runs twice per column, which
/// keeps the result unitary to machine precision even in high dimension.
pub fn haar_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = ComplexMatrix::from_fn(dim, |_, _| complex_gaussian(&mut rng));
        let mut cols: Vec<Vec<C64>> = (0..dim)
            .map(|j| (0..dim).map(|i| g[(i, j)]).collect())
            .collect();
        let mut ok = true;
        for j in 0..dim {
            for _pass in 0..2 {
                for k in 0..j {
                    let proj: C64 = cols[k]
                        .iter()
                        .zip(&cols[j])
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    for i in 0..dim {
                        let correction = proj * cols[k][i];
                        cols[j][i] -= correction;
                    }
                }
            }
            let norm: f64 = cols[j].iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for a in &mut cols[j] {
                *a /= norm;
            }
        }
        if ok {
            return ComplexMatrix::from_fn(dim, |i, j| cols[j][i]);
        }
    }
}
