//! A small campaign of every kind. Reports are reproducible for a master
//! seed regardless of thread count.

use trifid::{run_campaign, CampaignConfig, CampaignKind};

fn main() {
    let campaigns = [
        (CampaignKind::PureTriple, vec![2, 3, 4], 2000, 1e-9),
        (CampaignKind::MixedTriple, vec![2, 3], 500, 1e-8),
        (CampaignKind::Roundtrip, vec![3, 5], 200, 1e-8),
        (CampaignKind::Lemma3, vec![2, 4], 200, 1e-6),
    ];
    for (kind, dims, samples, tolerance) in campaigns {
        let config = CampaignConfig { kind, dims, samples, master_seed: 99, tolerance };
        let report = run_campaign(&config, Some(0)).unwrap();
        println!(
            "{:?}: {} violations in {:.2}s",
            config.kind, report.total_violations, report.wall_time_s
        );
        for dim in &report.per_dim {
            println!(
                "  dim {}: worst {:+.3e} over {} samples, {} violations",
                dim.dim, dim.worst, dim.samples, dim.violations
            );
        }
    }
}
