//! Classical, pure, and mixed fidelities, with the two mixed-state routes
//! cross-checking each other.

use trifid::{
    fidelity_classical, fidelity_pure, fidelity_uhlmann, fidelity_uhlmann_nested, mix_seed,
    random_density, random_pure, ProbabilityMeasure, PureState, C64,
};

fn main() {
    let point = ProbabilityMeasure::new(vec![1.0, 0.0]).unwrap();
    let uniform = ProbabilityMeasure::new(vec![0.5, 0.5]).unwrap();
    println!("classical F(point, uniform) = {}", fidelity_classical(&point, &uniform).unwrap());

    let s = std::f64::consts::FRAC_1_SQRT_2;
    let zero = PureState::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
    let plus = PureState::new(vec![C64::new(s, 0.0), C64::new(s, 0.0)]).unwrap();
    println!("pure      F(|0>, |+>)      = {}", fidelity_pure(&zero, &plus).unwrap());

    // the trace-norm route and the nested-root route evaluate the same
    // quantity along different numerical paths
    let mut worst = 0.0f64;
    for i in 0..200u64 {
        let rho = random_density(4, mix_seed(1, i));
        let sigma = random_density(4, mix_seed(2, i));
        let direct = fidelity_uhlmann(&rho, &sigma).unwrap();
        let nested = fidelity_uhlmann_nested(&rho, &sigma).unwrap();
        worst = worst.max((direct - nested).abs());
    }
    println!("mixed     route disagreement over 200 random dim-4 pairs: {worst:.3e}");

    // on projectors the mixed fidelity reduces to the pure overlap
    let phi = random_pure(3, 7);
    let psi = random_pure(3, 8);
    let projector_route = fidelity_uhlmann(
        &trifid::pure_to_density(&phi),
        &trifid::pure_to_density(&psi),
    )
    .unwrap();
    let overlap_route = fidelity_pure(&phi, &psi).unwrap();
    println!(
        "pure vs projector routes: {overlap_route:.15} vs {projector_route:.15} (diff {:.3e})",
        (overlap_route - projector_route).abs()
    );
}
