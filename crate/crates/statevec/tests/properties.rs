//! Randomized algebraic properties. Each case is driven by a seed so
//! shrinking stays cheap: proptest shrinks the seed and the sizes, and the
//! actual matrices and states are rebuilt deterministically from those.

use proptest::prelude::*;

use statevec::algorithms::continued_fraction_convergents;
use statevec::gates::{apply_gate, run_circuit, Circuit, Gate, GateOp, UxOracle};
use statevec::linalg::{inner, kron, kron_vec, matvec, Amplitude, CVector, UnitaryMatrix};
use statevec::register::{qubit_bit, RandomSource, StateVector, SEPARABILITY_TOL};

fn random_cvector(dim: usize, rng: &mut RandomSource) -> CVector {
    let entries = (0..dim)
        .map(|_| Amplitude::new(rng.next_f64() * 2.0 - 1.0, rng.next_f64() * 2.0 - 1.0))
        .collect();
    CVector::new(entries).unwrap()
}

fn random_state(n: usize, rng: &mut RandomSource) -> StateVector {
    let raw = random_cvector(1 << n, rng);
    let norm = raw.norm();
    let amps = raw.into_vec().into_iter().map(|a| a / norm).collect();
    StateVector::new(n, amps).unwrap()
}

/// A Haar-ish random unitary: fill a matrix with uniform complex entries,
/// then Gram-Schmidt the columns.
fn random_unitary(dim: usize, rng: &mut RandomSource) -> UnitaryMatrix {
    let mut cols: Vec<Vec<Amplitude>> = (0..dim)
        .map(|_| random_cvector(dim, rng).into_vec())
        .collect();
    for c in 0..dim {
        let (done, rest) = cols.split_at_mut(c);
        let current = &mut rest[0];
        for prev in done.iter() {
            let proj: Amplitude = prev
                .iter()
                .zip(current.iter())
                .map(|(p, x)| p.conj() * x)
                .sum();
            for (entry, p) in current.iter_mut().zip(prev) {
                *entry -= proj * p;
            }
        }
        let norm = current.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for entry in current {
            *entry /= norm;
        }
    }
    let flat: Vec<Amplitude> = (0..dim * dim).map(|k| cols[k % dim][k / dim]).collect();
    UnitaryMatrix::new(flat).unwrap()
}

fn random_targets(n: usize, count: usize, rng: &mut RandomSource) -> Vec<usize> {
    let mut targets = Vec::with_capacity(count);
    while targets.len() < count {
        let q = rng.next_below(n as u64) as usize;
        if !targets.contains(&q) {
            targets.push(q);
        }
    }
    targets
}

fn random_circuit(n: usize, len: usize, rng: &mut RandomSource) -> Circuit {
    let mut circuit = Circuit::new(n);
    for _ in 0..len {
        let angle = (rng.next_f64() * 2.0 - 1.0) * std::f64::consts::PI;
        let gate = match rng.next_below(if n >= 2 { 6 } else { 3 }) {
            0 => Gate::H,
            1 => Gate::X,
            2 => Gate::Twist(angle),
            3 => Gate::Cnot,
            4 => Gate::CPhase(angle),
            _ => Gate::Swap,
        };
        let targets = random_targets(n, gate.arity(), rng);
        circuit.push(gate, &targets).unwrap();
    }
    circuit
}

/// Definition-level embedded apply, independent of the strided kernels.
fn embedded_apply(gate: &UnitaryMatrix, targets: &[usize], s: &StateVector) -> Vec<Amplitude> {
    let n = s.n_qubits();
    let v = s.as_slice();
    let arity = targets.len();
    let mut out = vec![Amplitude::new(0.0, 0.0); s.dim()];
    for (i, slot) in out.iter_mut().enumerate() {
        let row: usize = targets
            .iter()
            .enumerate()
            .map(|(k, &q)| qubit_bit(i, n, q) << (arity - 1 - k))
            .sum();
        let mut acc = Amplitude::new(0.0, 0.0);
        for col in 0..1usize << arity {
            let mut j = i;
            for (k, &q) in targets.iter().enumerate() {
                let mask = 1usize << (n - 1 - q);
                if (col >> (arity - 1 - k)) & 1 == 1 {
                    j |= mask;
                } else {
                    j &= !mask;
                }
            }
            acc += gate.get(row, col) * v[j];
        }
        *slot = acc;
    }
    out
}

proptest! {
    #[test]
    fn kron_respects_products(seed in any::<u64>(), da in 1..=2u32, db in 1..=2u32) {
        let mut rng = RandomSource::new(seed);
        let (da, db) = (1usize << da, 1usize << db);
        let a = random_unitary(da, &mut rng);
        let b = random_unitary(db, &mut rng);
        let u = random_cvector(da, &mut rng);
        let v = random_cvector(db, &mut rng);

        let lhs = matvec(&kron(&a, &b).unwrap(), &kron_vec(&u, &v).unwrap()).unwrap();
        let rhs = kron_vec(&matvec(&a, &u).unwrap(), &matvec(&b, &v).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn kron_is_associative(seed in any::<u64>()) {
        let mut rng = RandomSource::new(seed);
        let a = random_unitary(2, &mut rng);
        let b = random_unitary(2, &mut rng);
        let c = random_unitary(2, &mut rng);

        let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
        let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn inner_product_conjugate_symmetry(seed in any::<u64>(), n in 0..=4u32) {
        let mut rng = RandomSource::new(seed);
        let dim = 1usize << n;
        let u = random_cvector(dim, &mut rng);
        let v = random_cvector(dim, &mut rng);

        let uv = inner(&u, &v).unwrap();
        let vu = inner(&v, &u).unwrap();
        prop_assert!((uv - vu.conj()).norm() <= 1e-12);

        // the induced norm agrees with the direct one
        let self_inner = inner(&u, &u).unwrap();
        prop_assert!(self_inner.im.abs() <= 1e-12);
        prop_assert!((self_inner.re.sqrt() - u.norm()).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn custom_unitaries_match_embedded_dense(seed in any::<u64>(), n in 1..=6usize, two_qubit in any::<bool>()) {
        let mut rng = RandomSource::new(seed);
        let arity = if two_qubit && n >= 2 { 2 } else { 1 };
        let gate = random_unitary(1 << arity, &mut rng);
        let targets = random_targets(n, arity, &mut rng);
        let state = random_state(n, &mut rng);

        let expected = embedded_apply(&gate, &targets, &state);
        let op = GateOp::new(Gate::Custom(gate), targets);
        let got = apply_gate(&state, &op).unwrap();

        for (a, b) in got.as_slice().iter().zip(&expected) {
            prop_assert!((a - b).norm() <= 1e-10);
        }
    }

    #[test]
    fn twists_never_move_probabilities(seed in any::<u64>(), n in 1..=5usize, layers in 1..=8usize) {
        let mut rng = RandomSource::new(seed);
        let mut state = random_state(n, &mut rng);
        let before = state.probabilities();
        for _ in 0..layers {
            let q = rng.next_below(n as u64) as usize;
            let angle = (rng.next_f64() * 2.0 - 1.0) * std::f64::consts::PI;
            state = apply_gate(&state, &GateOp::new(Gate::Twist(angle), vec![q])).unwrap();
        }
        for (a, b) in before.as_slice().iter().zip(state.probabilities().as_slice()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn inverse_circuit_returns_to_start(seed in any::<u64>(), n in 1..=6usize, len in 0..=40usize) {
        let mut rng = RandomSource::new(seed);
        let circuit = random_circuit(n, len, &mut rng);
        let input = random_state(n, &mut rng);

        let there = run_circuit(&input, &circuit).unwrap();
        let back = run_circuit(&there, &circuit.inverse()).unwrap();
        prop_assert!(back.amplitudes().max_abs_diff(input.amplitudes()) <= 1e-8);

        prop_assert!((there.amplitudes().norm() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn product_states_are_separable(seed in any::<u64>()) {
        let mut rng = RandomSource::new(seed);
        let u = random_state(1, &mut rng);
        let v = random_state(1, &mut rng);
        let joint = kron_vec(u.amplitudes(), v.amplitudes()).unwrap();
        let product = StateVector::new(2, joint.into_vec()).unwrap();

        prop_assert!(product.is_separable(SEPARABILITY_TOL).unwrap());
        prop_assert!(product.pair_determinant().unwrap().norm() <= SEPARABILITY_TOL);

        // the recovered factors rebuild the state up to a global phase
        let (p, q) = product.separable_factors(SEPARABILITY_TOL).unwrap().unwrap();
        let rebuilt = kron_vec(p.amplitudes(), q.amplitudes()).unwrap();
        let rebuilt = StateVector::new(2, rebuilt.into_vec()).unwrap();
        prop_assert!(rebuilt.approx_eq_up_to_phase(&product, 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn convergents_obey_the_approximation_law(c in any::<u64>(), n_bits in 4..=20u32) {
        let den = 1u64 << n_bits;
        let c = c % den;
        let x = c as f64 / den as f64;
        let convergents = continued_fraction_convergents(c, den, den);

        prop_assert!(!convergents.is_empty());
        for &(p, q) in &convergents {
            prop_assert!(q >= 1);
            prop_assert!(q <= den);
            // convergents are in lowest terms and approximate to 1/q^2
            prop_assert_eq!(statevec::algorithms::gcd(p.max(1), q).unwrap() , if p == 0 { q } else { 1 });
            let err = (x - p as f64 / q as f64).abs();
            prop_assert!(err <= 1.0 / (q as f64 * q as f64) + 1e-15);
        }
        // the last convergent under an unbounded cap is the value itself
        let &(lp, lq) = convergents.last().unwrap();
        prop_assert!((x - lp as f64 / lq as f64).abs() <= 1e-15);
    }

    #[test]
    fn modular_oracle_is_a_permutation(seed in any::<u64>(), pick in 0..6usize) {
        let (modulus, m) = [(3u64, 2usize), (5, 3), (7, 3), (9, 4), (15, 4), (21, 5)][pick];
        let mut rng = RandomSource::new(seed);
        let x = loop {
            let candidate = rng.next_below(modulus - 1) + 1;
            if statevec::algorithms::gcd(candidate, modulus).unwrap() == 1 {
                break candidate;
            }
        };
        let n = 3usize;
        let oracle = UxOracle::new(x, modulus, n, m).unwrap();

        let dim = 1usize << (n + m);
        let mut seen = vec![false; dim];
        for index in 0..dim {
            let image = oracle.permute_index(index);
            prop_assert!(!seen[image], "index {index} collides at {image}");
            seen[image] = true;

            // the work register never moves, and out-of-range residues are fixed
            prop_assert_eq!(index >> m, image >> m);
            if (index & ((1 << m) - 1)) as u64 >= modulus {
                prop_assert_eq!(index, image);
            }
        }
    }
}
