//! Deutsch's problem: decide whether f: {0,1} -> {0,1} is constant using a
//! single query to its oracle. Classically you need two evaluations; the
//! interference pattern needs one.
//!
//! Run with `cargo run --example deutsch`.

use statevec::algorithms::{deutsch, deutsch_circuit, DeutschVerdict};
use statevec::gates::Gate;

fn main() {
    println!("f(0) f(1)   verdict    P(first qubit = 0)");
    for (f0, f1) in [(false, false), (false, true), (true, false), (true, true)] {
        let result = deutsch(f0, f1);
        let verdict = match result.verdict {
            DeutschVerdict::Constant => "constant",
            DeutschVerdict::Balanced => "balanced",
        };
        println!(
            "  {}    {}     {verdict}   {:.1}",
            u8::from(f0),
            u8::from(f1),
            result.first_qubit.as_slice()[0]
        );
    }

    // the circuit queries the oracle exactly once
    let circuit = deutsch_circuit(false, true);
    let queries = circuit
        .ops()
        .iter()
        .filter(|op| matches!(op.gate, Gate::Uf { .. }))
        .count();
    println!(
        "\ncircuit for f = (0,1), {} ops, {queries} oracle query:",
        circuit.len()
    );
    for op in circuit.ops() {
        println!("  {:?} on {:?}", op.gate, op.targets);
    }

    // the answer is deterministic: the final state is an exact basis state
    // on the first qubit, so the read-out never errs
    let result = deutsch(true, false);
    println!(
        "\nf = (1,0): P(0) = {:.*}, P(1) = {:.*}",
        3,
        result.first_qubit.as_slice()[0],
        3,
        result.first_qubit.as_slice()[1]
    );
}
