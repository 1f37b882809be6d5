//! Measurement mechanics: seeded sampling, marginals, projective collapse,
//! and the one thing phases can never do, change the histogram.
//!
//! Run with `cargo run --example measure`.

use statevec::cli::bitstring;
use statevec::gates::{apply_gate, run_circuit, Circuit, Gate, GateOp};
use statevec::register::{RandomSource, StateVector};

fn main() {
    // three-qubit GHZ state: 000 and 111 only
    let mut circuit = Circuit::new(3);
    circuit
        .h(0)
        .unwrap()
        .cnot(0, 1)
        .unwrap()
        .cnot(1, 2)
        .unwrap();
    let ghz = run_circuit(&StateVector::basis_state(3, 0).unwrap(), &circuit).unwrap();

    // everything below is reproducible: same seed, same counts
    let mut rng = RandomSource::new(42);
    let counts = ghz.probabilities().sample_counts(10_000, &mut rng);
    println!("10000 shots of the GHZ state (seed 42):");
    for (i, &c) in counts.iter().enumerate() {
        if c > 0 {
            println!("  {}  {c}", bitstring(i, 3));
        }
    }

    // a marginal answers "what would this subset show" without collapsing
    let single = ghz.marginal(&[1]).unwrap();
    println!(
        "\nqubit 1 alone: P(0) = {:.2}, P(1) = {:.2}",
        single.as_slice()[0],
        single.as_slice()[1]
    );
    let pair = ghz.marginal(&[0, 2]).unwrap();
    println!("qubits (0,2) together:");
    for (i, &p) in pair.as_slice().iter().enumerate() {
        if p > 1e-12 {
            println!("  {}  {p:.2}", bitstring(i, 2));
        }
    }

    // measuring one qubit collapses the rest of the register
    let (bit, after) = ghz.measure_subset(&[0], &mut rng).unwrap();
    println!("\nmeasured qubit 0: got {bit}");
    println!("register afterwards:");
    for (i, amp) in after.as_slice().iter().enumerate() {
        if amp.norm_sqr() > 1e-12 {
            println!("  |{}>  amplitude {:+.3}", bitstring(i, 3), amp.re);
        }
    }

    // twist gates rotate phases; no sequence of them moves a probability
    let mut twisted = ghz.clone();
    for (q, angle) in [(0, 0.3), (1, 1.1), (2, 2.5)] {
        twisted = apply_gate(&twisted, &GateOp::new(Gate::Twist(angle), vec![q])).unwrap();
    }
    let before = ghz.probabilities();
    let after = twisted.probabilities();
    let drift = before
        .as_slice()
        .iter()
        .zip(after.as_slice())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!("\nafter three twist gates, largest probability drift: {drift:.1e}");
}
