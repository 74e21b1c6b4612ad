//! The Bargmann phase of a pure-state triple: a gauge-invariant quantity
//! the pairwise fidelities do not determine.

use trifid::{bargmann_product, fidelity_pure, mix_seed, phase_pure, random_pure, PureState, C64};

fn main() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let a = PureState::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
    let b = PureState::new(vec![C64::new(s, 0.0), C64::new(s, 0.0)]).unwrap();
    let c = PureState::new(vec![C64::new(s, 0.0), C64::new(0.0, s)]).unwrap();
    println!("quarter-turn triple: phase {} (pi/4 = {})", phase_pure(&a, &b, &c).unwrap(), std::f64::consts::FRAC_PI_4);

    // multiplying any state by a phase changes every overlap but not the
    // triple product's argument
    let rephase = |state: &PureState, chi: f64| {
        let z = C64::from_polar(1.0, chi);
        PureState::new(state.amplitudes().iter().map(|&amp| amp * z).collect()).unwrap()
    };
    let twisted = phase_pure(&rephase(&a, 1.1), &rephase(&b, -0.4), &rephase(&c, 2.9)).unwrap();
    println!("after arbitrary rephasing:   {twisted}");

    // the chain bounding the triple inequality:
    //   F12 + F13 + F23 - 1 <= 2 Re B <= 2 |B|
    let mut worst_lower = f64::INFINITY;
    let mut worst_upper = f64::INFINITY;
    for i in 0..1000u64 {
        let x = random_pure(3, mix_seed(21, 3 * i));
        let y = random_pure(3, mix_seed(21, 3 * i + 1));
        let z = random_pure(3, mix_seed(21, 3 * i + 2));
        let sum = fidelity_pure(&x, &y).unwrap()
            + fidelity_pure(&x, &z).unwrap()
            + fidelity_pure(&y, &z).unwrap();
        let product = bargmann_product(&x, &y, &z).unwrap();
        worst_lower = worst_lower.min(2.0 * product.value.re - (sum - 1.0));
        worst_upper = worst_upper.min(2.0 * product.modulus - 2.0 * product.value.re);
    }
    println!("chain margins over 1000 random triples:");
    println!("  min of 2 Re B - (F12+F13+F23-1): {worst_lower:+.6} (>= 0)");
    println!("  min of 2 |B| - 2 Re B:           {worst_upper:+.6} (>= 0)");
}
