//! Qubit closed forms against the general machinery: fidelity from Bloch
//! vectors, and the phase cosine determined by three fidelities.

use trifid::{
    density_to_bloch, fidelity_bloch2d, fidelity_uhlmann, mix_seed, phase_bloch_cos, phase_pure,
    pure_to_density, random_density, random_pure,
};

fn main() {
    let mut worst_f = 0.0f64;
    for i in 0..500u64 {
        let rho = random_density(2, mix_seed(11, i));
        let sigma = random_density(2, mix_seed(12, i));
        let x = density_to_bloch(&rho).unwrap();
        let y = density_to_bloch(&sigma).unwrap();
        let closed = fidelity_bloch2d(&x, &y);
        let general = fidelity_uhlmann(&rho, &sigma).unwrap();
        worst_f = worst_f.max((closed - general).abs());
    }
    println!("fidelity: closed form vs trace norm over 500 qubit pairs: {worst_f:.3e}");

    // for qubits the three fidelities fix the phase up to sign, so the
    // Bloch cosine must match cos of the pure-state phase
    let mut worst_c = 0.0f64;
    for i in 0..500u64 {
        let a = random_pure(2, mix_seed(13, 3 * i));
        let b = random_pure(2, mix_seed(13, 3 * i + 1));
        let c = random_pure(2, mix_seed(13, 3 * i + 2));
        let cos_bloch = phase_bloch_cos(
            &density_to_bloch(&pure_to_density(&a)).unwrap(),
            &density_to_bloch(&pure_to_density(&b)).unwrap(),
            &density_to_bloch(&pure_to_density(&c)).unwrap(),
        )
        .unwrap();
        let cos_pure = phase_pure(&a, &b, &c).unwrap().cos();
        worst_c = worst_c.max((cos_bloch - cos_pure).abs());
    }
    println!("phase cosine: Bloch route vs pure route over 500 triples: {worst_c:.3e}");
}
