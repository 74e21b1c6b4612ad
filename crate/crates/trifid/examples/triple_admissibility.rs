//! Which fidelity triples are realizable? Classify a few and walk the
//! boundary section.

use trifid::{boundary_x3, classify_triple, triple_slack, FidelityTriple};

fn main() {
    let cases = [
        (0.25, 0.25, 0.25, "a comfortable interior point"),
        (0.36, 0.9216, 0.64, "exactly on the boundary surface"),
        (1.0, 1.0, 0.0, "contradictory: two perfect matches, one mismatch"),
        (1.0, 1.0, 1.0, "extreme corner: all three coincide"),
        (0.9, 0.9, 0.9, "close agreement, still inside"),
    ];
    for (f12, f13, f23, label) in cases {
        let f = FidelityTriple::new(f12, f13, f23).unwrap();
        let cls = classify_triple(&f, 1e-9);
        println!(
            "({f12:.4}, {f13:.4}, {f23:.4})  slack {:+.6}  {:8}  {label}",
            cls.slack,
            cls.verdict.as_str(),
        );
    }

    // along the section x1 = 0.6: the largest admissible x3 for each x2,
    // which always saturates the slack
    println!("\nboundary section at x1 = 0.6:");
    for k in 0..=6 {
        let x2 = 0.6 + 0.4 * k as f64 / 6.0;
        let x3 = boundary_x3(0.6, x2).unwrap();
        let f = FidelityTriple::new(0.36, x2 * x2, x3 * x3).unwrap();
        println!("  x2 {x2:.3} -> x3 {x3:.6}, slack {:+.2e}", triple_slack(&f));
    }
}
