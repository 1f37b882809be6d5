//! Builds a Bell pair, checks that it is entangled, and watches one qubit's
//! measurement drag the other along.
//!
//! Run with `cargo run --example bell`.

use statevec::cli::bitstring;
use statevec::gates::{run_circuit, Circuit};
use statevec::register::{RandomSource, StateVector, SEPARABILITY_TOL};

fn main() {
    let mut circuit = Circuit::new(2);
    circuit.h(0).unwrap().cnot(0, 1).unwrap();

    let zero = StateVector::basis_state(2, 0).unwrap();
    let bell = run_circuit(&zero, &circuit).unwrap();

    println!("Bell pair amplitudes:");
    for (i, amp) in bell.as_slice().iter().enumerate() {
        println!("  |{}>  {:+.6} {:+.6}i", bitstring(i, 2), amp.re, amp.im);
    }

    // a product state has c0*c3 - c1*c2 = 0; the Bell pair does not
    let det = bell.pair_determinant().unwrap();
    println!("\npair determinant: {:+.6} {:+.6}i", det.re, det.im);
    println!(
        "separable: {}",
        bell.is_separable(SEPARABILITY_TOL).unwrap()
    );

    // for contrast, H on each qubit separately leaves a product state
    let mut local = Circuit::new(2);
    local.h(0).unwrap().h(1).unwrap();
    let product = run_circuit(&zero, &local).unwrap();
    let (left, right) = product
        .separable_factors(SEPARABILITY_TOL)
        .unwrap()
        .expect("H x H of a basis state is a product");
    println!("\nH x H factors back into two single-qubit states:");
    println!(
        "  left  ({:+.4}, {:+.4})",
        left.as_slice()[0].re,
        left.as_slice()[1].re
    );
    println!(
        "  right ({:+.4}, {:+.4})",
        right.as_slice()[0].re,
        right.as_slice()[1].re
    );

    // measuring qubit 0 collapses qubit 1 to the same bit, every time
    println!("\nmeasuring qubit 0 of the Bell pair (seed 3):");
    let mut rng = RandomSource::new(3);
    for _ in 0..6 {
        let (bit, collapsed) = bell.measure_subset(&[0], &mut rng).unwrap();
        let survivors: Vec<String> = collapsed
            .as_slice()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 1e-12)
            .map(|(i, _)| bitstring(i, 2))
            .collect();
        println!("  got {bit}, register now |{}>", survivors.join(", "));
    }
}
