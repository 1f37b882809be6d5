//! The quantum Fourier transform as a circuit: gate counts, agreement with
//! the dense matrix, and the thing it is actually for, turning a periodic
//! state into sharp peaks.
//!
//! Run with `cargo run --example qft`.

use statevec::cli::bitstring;
use statevec::fourier::{qft_apply, qft_circuit, qft_dense, qft_gate_counts};
use statevec::gates::run_circuit;
use statevec::linalg::Amplitude;
use statevec::register::StateVector;

fn main() {
    // the circuit needs n Hadamards, n(n-1)/2 controlled phases, and
    // floor(n/2) swaps; quadratic, not exponential
    println!("gate counts per register size:");
    for n in 1..=8 {
        let (h, cphase, swap) = qft_gate_counts(n);
        println!("  n={n}:  H:{h:2}  CPHASE:{cphase:2}  SWAP:{swap}");
    }

    // the decomposition reproduces the dense transform to rounding error
    let n = 5;
    let dense = qft_dense(n).unwrap();
    let circuit = qft_circuit(n).unwrap();
    let mut worst: f64 = 0.0;
    for j in 0..1usize << n {
        let column = run_circuit(&StateVector::basis_state(n, j).unwrap(), &circuit).unwrap();
        for (i, amp) in column.as_slice().iter().enumerate() {
            worst = worst.max((amp - dense.get(i, j)).norm());
        }
    }
    println!("\nn={n} circuit vs dense, max entry deviation: {worst:.2e}");

    // feed it a comb with period 4 on 6 qubits: the output lives on
    // multiples of 2^6 / 4 = 16
    let n = 6;
    let dim = 1usize << n;
    let period = 4;
    let teeth = dim / period;
    let amp = Amplitude::new(1.0 / (teeth as f64).sqrt(), 0.0);
    let mut comb = vec![Amplitude::new(0.0, 0.0); dim];
    for t in 0..teeth {
        comb[t * period] = amp;
    }
    let comb = StateVector::new(n, comb).unwrap();

    let transformed = qft_apply(&comb);
    println!("\nFourier transform of a period-{period} comb on {n} qubits:");
    for (i, &p) in transformed.probabilities().as_slice().iter().enumerate() {
        if p > 1e-9 {
            println!("  |{}>  (index {i:2})  probability {p:.4}", bitstring(i, n));
        }
    }
    println!(
        "  (peaks sit at multiples of {}, one per period slot)",
        dim / period
    );
}
