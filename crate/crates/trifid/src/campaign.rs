//! Monte Carlo verification campaigns.
//!
//! A campaign draws seeded random configurations per dimension, evaluates a
//! kind-specific metric, and reports the worst value and the violation
//! count. Per-sample seeds come from `mix_seed`, so reports are identical
//! whatever the thread count, and reruns with the same master seed are
//! byte-for-byte reproducible apart from the wall time.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fidelity::{fidelity_pure, fidelity_uhlmann};
use crate::random::{mix_seed, random_density, random_pure};
use crate::reconstruct::verify_roundtrip;
use crate::state::PureState;
use crate::triple::{overlap_functional_bound, overlap_functional_search, sqrt_slack};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CampaignKind {
    /// Slack of fidelity triples of Haar-random pure states.
    #[serde(rename = "pure-triple")]
    PureTriple,
    /// Slack of fidelity triples of Ginibre-random density matrices.
    #[serde(rename = "mixed-triple")]
    MixedTriple,
    /// Gram deviation of the extract-reconstruct roundtrip; the dimension
    /// doubles as the sequence length.
    #[serde(rename = "roundtrip")]
    Roundtrip,
    /// Agreement of the equal-weight overlap search with its closed form.
    #[serde(rename = "lemma3")]
    Lemma3,
}

impl CampaignKind {
    /// Whether the metric is a slack (worst = minimum) rather than an error
    /// (worst = maximum).
    fn lower_is_worse(&self) -> bool {
        matches!(self, CampaignKind::PureTriple | CampaignKind::MixedTriple)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub kind: CampaignKind,
    pub dims: Vec<usize>,
    pub samples: u64,
    pub master_seed: u64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimReport {
    pub dim: usize,
    pub samples: u64,
    /// Minimum slack for triple kinds, maximum error otherwise.
    pub worst: f64,
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub per_dim: Vec<DimReport>,
    pub total_violations: u64,
    pub wall_time_s: f64,
}

fn pure_triple_sample(dim: usize, dim_seed: u64, i: u64, tolerance: f64) -> (f64, bool) {
    let a = random_pure(dim, mix_seed(dim_seed, 4 * i));
    let b = random_pure(dim, mix_seed(dim_seed, 4 * i + 1));
    let c = random_pure(dim, mix_seed(dim_seed, 4 * i + 2));
    let slack = sqrt_slack(
        fidelity_pure(&a, &b).expect("same dimension").sqrt(),
        fidelity_pure(&a, &c).expect("same dimension").sqrt(),
        fidelity_pure(&b, &c).expect("same dimension").sqrt(),
    );
    (slack, slack < -tolerance)
}

fn mixed_triple_sample(dim: usize, dim_seed: u64, i: u64, tolerance: f64) -> (f64, bool) {
    let a = random_density(dim, mix_seed(dim_seed, 4 * i));
    let b = random_density(dim, mix_seed(dim_seed, 4 * i + 1));
    let c = random_density(dim, mix_seed(dim_seed, 4 * i + 2));
    let slack = sqrt_slack(
        fidelity_uhlmann(&a, &b).expect("same dimension").sqrt(),
        fidelity_uhlmann(&a, &c).expect("same dimension").sqrt(),
        fidelity_uhlmann(&b, &c).expect("same dimension").sqrt(),
    );
    (slack, slack < -tolerance)
}

fn roundtrip_sample(n: usize, dim_seed: u64, i: u64, tolerance: f64) -> (f64, bool) {
    let states: Vec<PureState> = (0..n)
        .map(|k| random_pure(n, mix_seed(dim_seed, i * 64 + k as u64)))
        .collect();
    let report = verify_roundtrip(&states).expect("random sequences are generic");
    (report.gram_err, report.gram_err > tolerance)
}

fn overlap_sample(dim: usize, dim_seed: u64, i: u64, tolerance: f64) -> (f64, bool) {
    use rand::Rng;
    use rand::SeedableRng;
    let f = random_pure(dim, mix_seed(dim_seed, 4 * i));
    let g = random_pure(dim, mix_seed(dim_seed, 4 * i + 1));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(mix_seed(dim_seed, 4 * i + 2));
    let t = f.inner(&g).expect("same dimension").norm();
    let a = t + (1.0 - t) * rng.gen::<f64>();
    let closed = overlap_functional_bound(t.min(a), a).expect("t <= a by construction");
    let numeric = overlap_functional_search(&f, &g, a, 1000).expect("t <= a by construction");
    let err = (numeric - closed).abs();
    let cap_violated = closed > 1.0 - a * a + 1e-12;
    (err, err > tolerance || cap_violated)
}

/// Runs a campaign. `jobs` picks the rayon thread count; `None` runs
/// serially on the calling thread. Results are independent of the choice.
pub fn run_campaign(config: &CampaignConfig, jobs: Option<usize>) -> Result<CampaignReport> {
    if !config.tolerance.is_finite() || config.tolerance <= 0.0 {
        return Err(Error::OutOfRange { what: "campaign tolerance" });
    }
    if config.dims.iter().any(|&d| d == 0 || d > 64) {
        return Err(Error::OutOfRange { what: "campaign dimension" });
    }
    let start = std::time::Instant::now();

    let sample = |dim: usize, dim_seed: u64, i: u64| -> (f64, bool) {
        match config.kind {
            CampaignKind::PureTriple => pure_triple_sample(dim, dim_seed, i, config.tolerance),
            CampaignKind::MixedTriple => mixed_triple_sample(dim, dim_seed, i, config.tolerance),
            CampaignKind::Roundtrip => roundtrip_sample(dim, dim_seed, i, config.tolerance),
            CampaignKind::Lemma3 => overlap_sample(dim, dim_seed, i, config.tolerance),
        }
    };

    let mut per_dim = Vec::with_capacity(config.dims.len());
    let mut total_violations = 0u64;
    for (dim_index, &dim) in config.dims.iter().enumerate() {
        let dim_seed = mix_seed(config.master_seed, dim_index as u64);
        let results: Vec<(f64, bool)> = match jobs {
            None => (0..config.samples).map(|i| sample(dim, dim_seed, i)).collect(),
            Some(threads) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .expect("thread pool construction");
                pool.install(|| {
                    (0..config.samples)
                        .into_par_iter()
                        .map(|i| sample(dim, dim_seed, i))
                        .collect()
                })
            }
        };
        let violations = results.iter().filter(|(_, bad)| *bad).count() as u64;
        let worst = if config.kind.lower_is_worse() {
            results.iter().map(|(m, _)| *m).fold(f64::INFINITY, f64::min)
        } else {
            results.iter().map(|(m, _)| *m).fold(f64::NEG_INFINITY, f64::max)
        };
        let worst = if results.is_empty() { 0.0 } else { worst };
        per_dim.push(DimReport { dim, samples: config.samples, worst, violations });
        total_violations += violations;
    }

    Ok(CampaignReport {
        config: config.clone(),
        per_dim,
        total_violations,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(kind: CampaignKind, dims: Vec<usize>, samples: u64) -> CampaignConfig {
        CampaignConfig { kind, dims, samples, master_seed: 11, tolerance: 1e-9 }
    }

    #[test]
    fn wire_names_are_stable() {
        let json = serde_json::to_string(&CampaignKind::PureTriple).unwrap();
        assert_eq!(json, "\"pure-triple\"");
        assert_eq!(
            serde_json::from_str::<CampaignKind>("\"lemma3\"").unwrap(),
            CampaignKind::Lemma3
        );
        assert_eq!(
            serde_json::from_str::<CampaignKind>("\"mixed-triple\"").unwrap(),
            CampaignKind::MixedTriple
        );
        assert_eq!(
            serde_json::from_str::<CampaignKind>("\"roundtrip\"").unwrap(),
            CampaignKind::Roundtrip
        );
    }

    #[test]
    fn pure_triples_have_no_violations() {
        let report = run_campaign(&config(CampaignKind::PureTriple, vec![2, 3], 300), None).unwrap();
        assert_eq!(report.total_violations, 0);
        assert_eq!(report.per_dim.len(), 2);
        for d in &report.per_dim {
            assert!(d.worst >= -1e-9);
        }
    }

    #[test]
    fn parallel_run_matches_serial() {
        let cfg = config(CampaignKind::MixedTriple, vec![2], 60);
        let serial = run_campaign(&cfg, None).unwrap();
        let parallel = run_campaign(&cfg, Some(4)).unwrap();
        assert_eq!(serial.per_dim.len(), parallel.per_dim.len());
        for (a, b) in serial.per_dim.iter().zip(&parallel.per_dim) {
            assert_eq!(a.worst.to_bits(), b.worst.to_bits(), "bitwise equality across thread counts");
            assert_eq!(a.violations, b.violations);
        }
    }

    #[test]
    fn roundtrip_campaign_runs_clean() {
        let cfg = CampaignConfig {
            kind: CampaignKind::Roundtrip,
            dims: vec![2, 4],
            samples: 40,
            master_seed: 5,
            tolerance: 1e-8,
        };
        let report = run_campaign(&cfg, None).unwrap();
        assert_eq!(report.total_violations, 0);
    }

    #[test]
    fn overlap_campaign_runs_clean() {
        let cfg = CampaignConfig {
            kind: CampaignKind::Lemma3,
            dims: vec![3],
            samples: 40,
            master_seed: 5,
            tolerance: 1e-6,
        };
        let report = run_campaign(&cfg, None).unwrap();
        assert_eq!(report.total_violations, 0);
    }

    #[test]
    fn bad_tolerance_is_rejected() {
        let mut cfg = config(CampaignKind::PureTriple, vec![2], 10);
        cfg.tolerance = 0.0;
        assert!(run_campaign(&cfg, None).is_err());
    }
}
