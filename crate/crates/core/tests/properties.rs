mod support;

use proptest::prelude::*;
use qef_core::circuit::{CliffordCircuit, Gate, StabilizerTableau};
use qef_core::code::{ea_extend, random_css};
use qef_core::encoder::{standard_form, synth_nonft, synth_u, verify_nonft};
use qef_core::faults::{
    bound_from_weights, fault_locations, no_prop_factor, no_prop_factor_literal, simulate, FactorForm, FaultModel,
    InjectionMode,
};
use qef_core::ftencoder::{cross_block_gates, plan_blocks, synth_ft, verify_ft};
use qef_core::gf2::{self, BitMatrix};
use support::*;

fn matrix(
    rows: std::ops::RangeInclusive<usize>,
    cols: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<Vec<u8>>> {
    (rows, cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(0u8..2, c), r))
}

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    prop_oneof![
        4 => (0..n, 1..n).prop_map(move |(c, d)| Gate::cx(c, (c + d) % n)),
        1 => (0..n).prop_map(Gate::H),
    ]
}

fn circuit(n: usize, len: usize) -> impl Strategy<Value = CliffordCircuit> {
    prop::collection::vec(gate(n), 0..=len).prop_map(move |g| CliffordCircuit::from_gates(n, g).unwrap())
}

fn sized_circuit() -> impl Strategy<Value = CliffordCircuit> {
    (2usize..7).prop_flat_map(|n| circuit(n, 20))
}

fn tableau(rows: usize, n: usize) -> impl Strategy<Value = StabilizerTableau> {
    (
        prop::collection::vec(prop::collection::vec(0u8..2, n), rows),
        prop::collection::vec(prop::collection::vec(0u8..2, n), rows),
    )
        .prop_map(|(x, z)| StabilizerTableau::new(to_matrix(&x), to_matrix(&z)).unwrap())
}

fn tableau_bits(t: &StabilizerTableau) -> (Vec<Vec<u8>>, Vec<Vec<u8>>) {
    (from_matrix(t.xpart()), from_matrix(t.zpart()))
}

/// `(n, rho1, rho2, seed)` with `k > 0`.
fn code_params() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (6usize..=16)
        .prop_flat_map(|n| (Just(n), 1..n / 2))
        .prop_flat_map(|(n, r1)| (Just(n), Just(r1), 1..n - r1, any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_agrees_with_naive(m in matrix(1..=8, 1..=12)) {
        let b = to_matrix(&m);
        prop_assert_eq!(gf2::rank(&b), naive_rank(&m));
        prop_assert_eq!(b.rank(), b.transpose().rank());
        prop_assert!(b.rank() <= b.rows().min(b.cols()));
    }

    #[test]
    fn product_agrees_with_naive(a in matrix(1..=6, 4..=4), b in matrix(4..=4, 1..=7)) {
        prop_assert_eq!(from_matrix(&to_matrix(&a).mul(&to_matrix(&b))), naive_mul(&a, &b));
        prop_assert_eq!(from_matrix(&to_matrix(&a).transpose()), naive_transpose(&a));
    }

    #[test]
    fn rref_preserves_row_space(m in matrix(1..=8, 1..=12)) {
        let b = to_matrix(&m);
        let r = gf2::rref(&b, false);
        prop_assert_eq!(r.rank, naive_rank(&m));
        prop_assert!(same_row_space(&from_matrix(&r.reduced), &m));
        for (i, &c) in r.pivot_cols.iter().enumerate() {
            for row in 0..r.reduced.rows() {
                prop_assert_eq!(r.reduced.get(row, c), row == i);
            }
        }
    }

    #[test]
    fn rref_with_swaps_is_identity_led(m in matrix(1..=8, 1..=12)) {
        let b = to_matrix(&m);
        let r = gf2::rref(&b, true);
        let permuted = b.permute_columns(&r.column_perm);
        prop_assert!(same_row_space(&from_matrix(&r.reduced), &from_matrix(&permuted)));
        for i in 0..r.rank {
            for row in 0..r.rank {
                prop_assert_eq!(r.reduced.get(row, i), row == i);
            }
        }
    }

    #[test]
    fn solve_recovers_a_consistent_system(a in matrix(1..=7, 1..=7), seed in any::<u64>()) {
        let cols = a[0].len();
        let x: Vec<Vec<u8>> = (0..cols).map(|i| (0..3).map(|j| ((seed >> ((i * 3 + j) % 64)) & 1) as u8).collect()).collect();
        let rhs = naive_mul(&a, &x);
        let sol = gf2::solve(&to_matrix(&a), &to_matrix(&rhs)).unwrap();
        prop_assert_eq!(naive_mul(&a, &from_matrix(&sol)), rhs);
    }

    #[test]
    fn rank_factorization_reconstructs(m in matrix(1..=8, 1..=8)) {
        let b = to_matrix(&m);
        let (p, q) = gf2::rank_factorize(&b);
        prop_assert_eq!(p.cols(), naive_rank(&m));
        prop_assert_eq!(q.rows(), naive_rank(&m));
        prop_assert_eq!(from_matrix(&p.mul(&q)), m);
    }

    #[test]
    fn tableau_matches_pauli_conjugation(c in sized_circuit(), seed in any::<u64>()) {
        let n = c.qubits();
        let x: Vec<Vec<u8>> = (0..3).map(|r| (0..n).map(|q| ((seed >> ((r * n + q) % 64)) & 1) as u8).collect()).collect();
        let z: Vec<Vec<u8>> = (0..3).map(|r| (0..n).map(|q| ((seed.rotate_left(17) >> ((r * n + q) % 64)) & 1) as u8).collect()).collect();
        let t = StabilizerTableau::new(to_matrix(&x), to_matrix(&z)).unwrap();
        let mut paulis = pauli_rows(&x, &z);
        conjugate_paulis(&mut paulis, &c);
        prop_assert_eq!(tableau_bits(&t.apply_circuit(&c)), pauli_to_bits(&paulis));
    }

    #[test]
    fn conjugation_preserves_commutation(t in tableau(4, 5), c in circuit(5, 20)) {
        let after = t.apply_circuit(&c);
        let (x, z) = tableau_bits(&after);
        let paulis = pauli_rows(&x, &z);
        let (x0, z0) = tableau_bits(&t);
        let before = pauli_rows(&x0, &z0);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(paulis_commute(&paulis[i], &paulis[j]), paulis_commute(&before[i], &before[j]));
            }
        }
        prop_assert_eq!(after.rank(), t.rank());
    }

    #[test]
    fn dagger_inverts(t in tableau(4, 6), c in circuit(6, 25)) {
        prop_assert_eq!(t.apply_circuit(&c).apply_circuit(&c.dagger()), t);
    }

    #[test]
    fn application_is_associative(t in tableau(3, 5), a in circuit(5, 10), b in circuit(5, 10)) {
        let joined = CliffordCircuit::concat(&[&a, &b]);
        prop_assert_eq!(t.apply_circuit(&joined), t.apply_circuit(&a).apply_circuit(&b));
    }

    #[test]
    fn fanout_order_is_irrelevant(t in tableau(4, 7), targets in prop::sample::subsequence((1..7).collect::<Vec<usize>>(), 1..6), rot in 0usize..6) {
        let mut a = CliffordCircuit::new(7);
        a.push_fanout(0, &targets).unwrap();
        let mut shuffled = CliffordCircuit::new(7);
        let mut ts = targets.clone();
        let len = ts.len();
        ts.rotate_left(rot % len);
        for q in ts.into_iter().rev() {
            shuffled.push(Gate::cx(0, q)).unwrap();
        }
        prop_assert_eq!(t.apply_circuit(&a), t.apply_circuit(&shuffled));
    }

    #[test]
    fn serialization_round_trips(c in sized_circuit()) {
        let text = c.serialize();
        prop_assert_eq!(CliffordCircuit::parse(&text).unwrap(), c);
    }

    #[test]
    fn factor_matches_enumeration(w in 0usize..5, p in 0.0f64..0.5) {
        prop_assert!((no_prop_factor(w, p) - exact_fanout_factor(w, p)).abs() < 1e-12);
        prop_assert!((no_prop_factor_literal(w, p) - no_prop_factor(w, p) / (1.0 - 2.0 * p / 3.0) - (1.0 - 2.0 * p / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn bounds_are_probabilities(ws in prop::collection::vec(0usize..8, 0..10), p in 0.0f64..1.0, extra in 0usize..8) {
        let b = bound_from_weights(ws.clone(), p, FactorForm::Product);
        prop_assert!((0.0..=1.0).contains(&b));
        let mut more = ws.clone();
        more.push(extra);
        prop_assert!(bound_from_weights(more, p, FactorForm::Product) >= b - 1e-12);
        prop_assert!(bound_from_weights(ws.clone(), p.min(0.5) * 0.5, FactorForm::Product) <= bound_from_weights(ws, p.min(0.5), FactorForm::Product) + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn synth_u_clears_its_columns((n, r1, r2, seed) in code_params()) {
        let code = random_css(n, r1, r2, seed);
        let sf = standard_form(&code).unwrap();
        let after = sf.tableau().apply_circuit(&synth_u(&sf));
        for r in 0..r1 {
            let support = after.xpart().row_support(r);
            prop_assert_eq!(support, vec![r]);
        }
        for c in 0..r1 {
            prop_assert!(after.zpart().column_is_zero(c));
        }
    }

    #[test]
    fn nonft_encoder_verifies((n, r1, r2, seed) in code_params()) {
        let code = random_css(n, r1, r2, seed);
        let enc = synth_nonft(&code).unwrap();
        let ancillas = enc.standard.column_perm[..r1 + r2].to_vec();
        verify_nonft(&code, &enc.encoder, &ancillas).unwrap();
        let image = enc.initial_tableau().apply_circuit(&enc.encoder);
        let expected = StabilizerTableau::from_css(code.hx(), code.hz());
        prop_assert!(image.row_space_equal(&expected));
        prop_assert_eq!(enc.encoder.dagger(), enc.decoder);
    }

    #[test]
    fn ft_synthesis_is_transversal(h1 in matrix(1..=4, 8..=12), h2 in matrix(1..=4, 8..=12), g in 1usize..=3) {
        let cols = h1[0].len().min(h2[0].len());
        let cut = |m: &[Vec<u8>]| m.iter().map(|r| r[..cols].to_vec()).collect::<Vec<_>>();
        let (h1, h2) = (cut(&h1), cut(&h2));
        prop_assume!(naive_rank(&h1) == h1.len() && naive_rank(&h2) == h2.len());
        prop_assume!(naive_rank(&h1.iter().chain(&h2).cloned().collect::<Vec<_>>()) == h1.len() + h2.len());
        let ea = ea_extend(&to_matrix(&h1), &to_matrix(&h2)).unwrap();
        // Ancillas and pair halves must fit on the data qubits.
        prop_assume!(h1.len() + h2.len() + ea.c() <= ea.n());
        let enc = synth_ft(&ea, &plan_blocks(ea.n(), g).unwrap()).unwrap();
        for gate in enc.encoder.gates() {
            let qs: Vec<usize> = gate.qubits().collect();
            let blocks: Vec<Option<usize>> = qs.iter().map(|&q| enc.layout.block_of_col(q)).collect();
            prop_assert!(blocks.iter().all(|b| b.is_some() && *b == blocks[0]), "{} crosses blocks", gate);
        }
        prop_assert!(cross_block_gates(&enc.encoder, &enc.layout).is_empty());
        verify_ft(&ea, &enc.layout, &enc.encoder).unwrap();
        prop_assert!(enc.final_tableau.is_commuting());
        prop_assert_eq!(enc.final_tableau.rank(), h1.len() + h2.len());
        let (n_ft, _) = enc.parameters();
        prop_assert_eq!(n_ft, ea.n() + h1.len().max(h2.len()) * g);
        // X rows are realized exactly on every data column not consumed as a generator.
        let realized = enc.layout.realized_cols();
        for (i, row) in h1.iter().enumerate() {
            for (d, &bit) in row.iter().enumerate() {
                let col = enc.layout.data_col(d);
                if realized.contains(&col) {
                    prop_assert_eq!(enc.final_tableau.xpart().get(i, col), bit == 1);
                }
            }
        }
    }

    #[test]
    fn simulation_is_deterministic(c in circuit(5, 12), seed in any::<u64>(), p in 0.0f64..0.3) {
        let m = FaultModel::new(p).unwrap();
        let a = simulate(&c, m, 5000, seed, &[], InjectionMode::PerFanout).unwrap();
        let b = simulate(&c, m, 5000, seed, &[], InjectionMode::PerFanout).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!((0.0..=1.0).contains(&a.estimate));
        let zero = simulate(&c, FaultModel::new(0.0).unwrap(), 500, seed, &[], InjectionMode::PerGate).unwrap();
        prop_assert_eq!(zero.estimate, 0.0);
    }

    #[test]
    fn fault_site_count_matches_oracle(c in circuit(5, 12), protect in prop::collection::vec(0usize..5, 0..3)) {
        for (mode, fan) in [(InjectionMode::PerFanout, true), (InjectionMode::PerGate, false)] {
            let sites = fault_steps(&c, &protect, fan).iter().filter(|s| matches!(s, Step::Inject(_))).count();
            prop_assert_eq!(fault_locations(&c, &protect, mode), sites);
        }
    }
}

#[test]
fn matrix_helpers_agree() {
    let m = BitMatrix::from_rows(&[[1u8, 0, 1], [0, 1, 1]]);
    assert_eq!(from_matrix(&m), vec![vec![1, 0, 1], vec![0, 1, 1]]);
}
