//! Shor's factoring pipeline in the open: the peaked measurement
//! distribution, continued-fraction order recovery from one sample, and the
//! end-to-end run with its attempt log.
//!
//! Run with `cargo run --example shor`.

use statevec::algorithms::{
    continued_fraction_convergents, first_register_distribution, order_bruteforce,
    recover_order_from_sample, shor_factor, AttemptOutcome, ShorParams,
};
use statevec::register::RandomSource;

fn main() {
    // factoring 15 with base 7: the work register gets n qubits with
    // 15^2 <= 2^n < 2 * 15^2, the residue register m = ceil(log2 15)
    let params = ShorParams::new(15, 7).unwrap();
    println!(
        "N={}, x={}: work register n={}, residue register m={}",
        params.modulus, params.x, params.n, params.m
    );

    let r = order_bruteforce(params.x, params.modulus).unwrap();
    println!("order of {} mod {} is {r}", params.x, params.modulus);

    // after the Fourier transform the first register only lands on
    // multiples of 2^n / r
    let dist = first_register_distribution(&params);
    println!("\nmeasurement distribution (entries above 1e-9):");
    for (c, &p) in dist.as_slice().iter().enumerate() {
        if p > 1e-9 {
            println!("  c = {c:3}  probability {p:.4}");
        }
    }

    // one sample is enough when gcd(t, r) = 1: walk the convergents of
    // c / 2^n and read the order off the denominator
    let c = 192u64;
    let den = 1u64 << params.n;
    println!("\nrecovering the order from the sample c = {c}:");
    for (p, q) in continued_fraction_convergents(c, den, params.modulus) {
        println!("  convergent {p}/{q}");
    }
    let recovered = recover_order_from_sample(c, params.n as u32, params.x, params.modulus);
    println!("  recovered order: {recovered:?}");

    // the full pipeline: random bases, the gcd shortcut, quantum order
    // finding, and the square-root split x^(r/2) +- 1
    for modulus in [15u64, 21] {
        println!("\nfactoring {modulus} (seed 2):");
        let mut rng = RandomSource::new(2);
        let result = shor_factor(modulus, &mut rng, 32).unwrap();
        for (k, attempt) in result.attempts.iter().enumerate() {
            let line = match attempt.outcome {
                AttemptOutcome::SharedFactor { divisor } => {
                    format!("x={} already shares factor {divisor}", attempt.x)
                }
                AttemptOutcome::OrderNotFound => {
                    format!("x={} gave no usable sample", attempt.x)
                }
                AttemptOutcome::OddOrder { order, .. } => {
                    format!(
                        "x={} has odd order {order}, no square root to use",
                        attempt.x
                    )
                }
                AttemptOutcome::TrivialRoot { order, .. } => {
                    format!(
                        "x={} has x^({order}/2) = -1, only trivial divisors",
                        attempt.x
                    )
                }
                AttemptOutcome::Factored { order, measured_c } => {
                    format!("x={} measured c={measured_c}, order {order}", attempt.x)
                }
            };
            println!("  attempt {}: {line}", k + 1);
        }
        let (p, q) = result.factors;
        println!("  {modulus} = {p} * {q}");
    }
}
