//! The experimental variational probe for a mixed-state three-phase, and
//! why it is experimental: the infimum it chases is 0 for every full-rank
//! input, so it cannot distinguish triples the way the pure phase does.

use trifid::{
    phase_mixed_variational, phase_pure, pure_to_density, ComplexMatrix, DensityMatrix,
    OptimizerConfig, PureState, C64,
};

fn diagonal(weights: &[f64]) -> DensityMatrix {
    DensityMatrix::new(ComplexMatrix::from_fn(weights.len(), |r, c| {
        if r == c { C64::new(weights[r], 0.0) } else { C64::new(0.0, 0.0) }
    }))
    .unwrap()
}

fn main() {
    let config = OptimizerConfig { restarts: 6, max_iters: 300, tol: 1e-8, seed: 5 };

    // commuting triples carry no phase; the search confirms it
    let r1 = diagonal(&[0.5, 0.3, 0.2]);
    let r2 = diagonal(&[0.6, 0.25, 0.15]);
    let r3 = diagonal(&[0.45, 0.35, 0.2]);
    let commuting = phase_mixed_variational(&r1, &r2, &r3, &config).unwrap();
    println!(
        "commuting diagonal triple: phase {:.6}, objective {:.3e}, experimental {}",
        commuting.phase, commuting.objective, commuting.experimental
    );

    // smoothing the quarter-turn pure triple to full rank: the pure phase
    // is pi/4, but the variational value collapses to 0 because twisting
    // the purifications can always make every factor real positive
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pures = [
        PureState::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap(),
        PureState::new(vec![C64::new(s, 0.0), C64::new(s, 0.0)]).unwrap(),
        PureState::new(vec![C64::new(s, 0.0), C64::new(0.0, s)]).unwrap(),
    ];
    let eps = 1e-3;
    let smooth = |p: &PureState| {
        let proj = pure_to_density(p);
        DensityMatrix::new(ComplexMatrix::from_fn(2, |r, c| {
            let id = if r == c { C64::new(0.5, 0.0) } else { C64::new(0.0, 0.0) };
            proj.matrix()[(r, c)] * (1.0 - eps) + id * eps
        }))
        .unwrap()
    };
    let smoothed = phase_mixed_variational(
        &smooth(&pures[0]),
        &smooth(&pures[1]),
        &smooth(&pures[2]),
        &config,
    )
    .unwrap();
    println!(
        "smoothed quarter-turn triple: variational phase {:.6} vs pure phase {:.6}",
        smoothed.phase,
        phase_pure(&pures[0], &pures[1], &pures[2]).unwrap()
    );
}
