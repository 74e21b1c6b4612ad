//! Explicit realizations of admissible triples: probability measures on at
//! most three points, and pure states in C^3.

use trifid::{classical_witness, quantum_witness, FidelityTriple};

fn show(f12: f64, f13: f64, f23: f64) {
    let f = FidelityTriple::new(f12, f13, f23).unwrap();
    println!("target ({f12}, {f13}, {f23}):");

    let cw = classical_witness(&f, 1e-9).unwrap();
    println!("  classical, {} support point(s), verdict {}", cw.space_size, cw.verdict.as_str());
    for (i, m) in cw.measures.iter().enumerate() {
        println!("    measure {}: {:?}", i + 1, m.weights());
    }
    println!(
        "    achieved ({:.12}, {:.12}, {:.12})",
        cw.achieved.f12(),
        cw.achieved.f13(),
        cw.achieved.f23()
    );

    let qw = quantum_witness(&f, 1e-9).unwrap();
    println!("  quantum, dim {}", qw.states[0].dim());
    for (i, s) in qw.states.iter().enumerate() {
        let amps: Vec<String> =
            s.amplitudes().iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)).collect();
        println!("    state {}: [{}]", i + 1, amps.join(", "));
    }
    println!(
        "    achieved ({:.12}, {:.12}, {:.12})",
        qw.achieved.f12(),
        qw.achieved.f13(),
        qw.achieved.f23()
    );
    println!();
}

fn main() {
    show(0.36, 0.9216, 0.64); // boundary: two support points suffice
    show(0.25, 0.25, 0.25); // interior: all three points carry weight

    // the five extreme corners
    for corner in [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0; 3]] {
        show(corner[0], corner[1], corner[2]);
    }
}
