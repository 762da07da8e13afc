//! End-to-end acceptance checks. Each test prints one PASS/FAIL line so the
//! suite doubles as a checklist of the toolkit's core guarantees:
//! compiled counting networks match enumeration, structural rewrites preserve
//! exact values, witnesses and certificates verify, and the solvers agree
//! with dense linear algebra on every instance.

mod common;

use std::cell::Cell;
use std::time::Instant;

use common::*;
use num_rational::BigRational;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use tnz::certify::{
    check_injective, count_via_gtnz, injective_certificate, search_nonneg_witness,
    verify_nonneg_witness, ExactOracle, InjectivePartition, TnzOracle,
};
use tnz::contract::{
    brute_force_value, contract_closed, contract_closed_with_order, evaluate, evaluate_vectors,
    BasisInput,
};
use tnz::hamiltonian::{
    ground_space_projector_bruteforce, solve_stoquastic_sat, HamiltonianInstance, ProjectorGuess,
};
use tnz::linalg::Matrix;
use tnz::reduce::{
    add_scalar, build_bell_mps, compile_clh, compile_edge_coloring, compile_sharp2sat,
    GtnzInstance, SimpleGraph,
};
use tnz::{Budget, EdgeId, NodeId, Scalar, SlotRef, TensorNetwork, TensorNode};

fn criterion(name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("acceptance: {}: PASS", name),
        Err(payload) => {
            println!("acceptance: {}: FAIL", name);
            std::panic::resume_unwind(payload);
        }
    }
}

#[test]
fn counting_compiler_matches_truth_tables() {
    criterion("counting compiler matches truth tables on 200 formulas", || {
        let start = Instant::now();
        let mut r = rng(101);
        for round in 0..200 {
            let cnf = random_cnf(&mut r, 10, 15);
            let expected = truth_table_count(&cnf);
            let value = contract_closed(&compile_sharp2sat(&cnf)).unwrap();
            assert_eq!(value, Scalar::from_int(expected as i64), "round {}", round);
        }
        assert!(start.elapsed().as_secs() < 60, "counting run too slow");
    });
}

#[test]
fn additive_shift_preserves_shape_and_adds_exactly() {
    criterion("additive shift adds exactly and grows every bond by one", || {
        let mut r = rng(202);
        for round in 0..100 {
            let net = random_network(&mut r, 6, 3, true, false);
            let shift = Scalar::from_rational(small_rational(&mut r));
            let before = contract_closed(&net).unwrap();
            let shifted = add_scalar(&net, &shift).unwrap();
            assert_eq!(
                contract_closed(&shifted).unwrap(),
                &before + &shift,
                "round {}",
                round
            );
            assert_eq!(shifted.num_nodes(), net.num_nodes());
            assert_eq!(shifted.num_edges(), net.num_edges());
            for (id, _) in net.edges() {
                assert_eq!(
                    shifted.bond_dim(id).unwrap(),
                    net.bond_dim(id).unwrap() + 1,
                    "round {} edge {:?}",
                    round,
                    id
                );
            }
        }
    });
}

#[test]
fn edge_coloring_fixtures_match_independent_counts() {
    criterion("edge coloring fixtures: K4=6, K3,3=12, Petersen=0", || {
        let start = Instant::now();
        let k4 =
            SimpleGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let k33 = SimpleGraph::new(
            6,
            vec![
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        )
        .unwrap();
        let petersen = SimpleGraph::new(
            10,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        for (name, graph, expected) in
            [("K4", &k4, 6i64), ("K3,3", &k33, 12), ("Petersen", &petersen, 0)]
        {
            let network = compile_edge_coloring(graph, 3).unwrap();
            let contracted = contract_closed(&network).unwrap();
            assert_eq!(contracted, Scalar::from_int(expected), "{} contraction", name);
            let enumerated = brute_force_value(&network, None, &Budget::default()).unwrap();
            assert_eq!(enumerated, Scalar::from_int(expected), "{} enumeration", name);
            assert_eq!(
                backtracking_coloring_count(graph, 3),
                expected as u64,
                "{} backtracking",
                name
            );
        }
        assert!(start.elapsed().as_secs() < 600, "coloring run too slow");
    });
}

#[test]
fn nonneg_witness_search_is_sound_and_complete() {
    criterion("witness search on non-negative networks: sound and complete", || {
        let mut r = rng(404);
        let budget = Budget::default();
        let mut accepted = 0;
        let mut attempts = 0;
        while accepted < 100 {
            attempts += 1;
            assert!(attempts < 5000, "generator starved");
            let net = random_network(&mut r, 8, 3, false, true);
            let phys = net.physical_edges();
            let phys_dims: Vec<usize> = phys
                .iter()
                .map(|s| net.node(s.node).unwrap().dims()[s.slot])
                .collect();
            let phys_space: u128 = phys_dims.iter().map(|&d| d as u128).product();
            let label_space: u128 = net
                .edges()
                .map(|(id, _)| net.bond_dim(id).unwrap() as u128)
                .product();
            if phys_space.saturating_mul(label_space) > 20_000 {
                continue;
            }
            accepted += 1;

            let found = search_nonneg_witness(&net, &budget).unwrap();
            let mut some_positive = false;
            for idx in all_indices(&phys_dims) {
                let x: BasisInput = phys.iter().copied().zip(idx).collect();
                if brute_force_value(&net, Some(&x), &budget)
                    .unwrap()
                    .is_positive_real()
                {
                    some_positive = true;
                    break;
                }
            }
            match found {
                Some(witness) => {
                    assert!(some_positive, "witness returned for a zero network");
                    assert!(verify_nonneg_witness(&net, &witness).unwrap());
                }
                None => assert!(!some_positive, "missed a positive point"),
            }
        }
    });
}

/// Chain of singleton blocks: every block's map from its boundary labelings
/// to its physical labelings is invertible, so the partition is injective.
/// Interior nodes carry a physical leg of dimension d*d so the square shape
/// is preserved. Returns the per-block matrices for mutation.
fn injective_chain(
    r: &mut ChaCha8Rng,
    blocks: usize,
    d: usize,
    global: Scalar,
) -> (TensorNetwork, InjectivePartition, Vec<Matrix>) {
    let mut nodes = Vec::with_capacity(blocks);
    let mut edges = Vec::new();
    let mut mats = Vec::with_capacity(blocks);
    for b in 0..blocks {
        let id = NodeId(b as u64);
        let (dims, matrix): (Vec<usize>, Matrix) = if blocks == 1 {
            let mut m = Matrix::zero(d, 1);
            while m.rank() == 0 {
                for i in 0..d {
                    if r.gen_bool(0.7) {
                        m.set(i, 0, small_scalar(r));
                    }
                }
            }
            (vec![d], m)
        } else if b == 0 || b == blocks - 1 {
            (vec![d, d], random_invertible(r, d))
        } else {
            (vec![d * d, d, d], random_invertible(r, d * d))
        };
        let mut entries = Vec::new();
        for p in 0..dims[0] {
            for (col, rest) in all_indices(&dims[1..]).into_iter().enumerate() {
                let value = matrix.get(p, col).clone();
                if !value.is_zero() {
                    let mut idx = vec![p];
                    idx.extend(rest);
                    entries.push((idx, value));
                }
            }
        }
        nodes.push(TensorNode::from_entries(id, dims, entries).unwrap());
        mats.push(matrix);
        if b + 1 < blocks {
            let right_slot = if b == 0 { 1 } else { 2 };
            edges.push((
                SlotRef::new(id, right_slot),
                SlotRef::new(NodeId((b + 1) as u64), 1),
            ));
        }
    }
    let net = TensorNetwork::new(nodes, edges, global).unwrap();
    let partition = InjectivePartition::new((0..blocks).map(|b| vec![NodeId(b as u64)]).collect());
    (net, partition, mats)
}

fn random_invertible(r: &mut ChaCha8Rng, d: usize) -> Matrix {
    loop {
        let mut m = Matrix::zero(d, d);
        for i in 0..d {
            for j in 0..d {
                if r.gen_bool(0.7) {
                    m.set(i, j, small_scalar(r));
                }
            }
        }
        if m.rank() == d {
            return m;
        }
    }
}

#[test]
fn injective_partitions_certify_and_mutants_fail() {
    criterion("injective partitions certify to 1, deficient mutants rejected", || {
        let budget = Budget::default();
        let mut r = rng(505);
        for round in 0..50 {
            let blocks = 1 + round % 3;
            let d = 2 + (round / 3) % 2;
            let global = if round % 7 == 0 {
                Scalar::from_int(2)
            } else {
                Scalar::one()
            };
            let (net, partition, _) = injective_chain(&mut r, blocks, d, global);
            assert!(
                check_injective(&net, &partition, &budget).unwrap(),
                "round {} should be injective",
                round
            );
            let cert = injective_certificate(&net, &partition, &budget).unwrap();
            assert_eq!(
                evaluate_vectors(&net, &cert).unwrap(),
                Scalar::one(),
                "round {} certificate",
                round
            );
        }

        // Mutants: duplicate one column of one block matrix, which makes that
        // block's boundary-to-physical map rank deficient.
        for round in 0..20 {
            let blocks = 2 + round % 2;
            let (net, partition, mats) = injective_chain(&mut r, blocks, 2, Scalar::one());
            let victim = round % blocks;
            let m = &mats[victim];
            let mut broken = m.clone();
            for p in 0..broken.rows() {
                broken.set(p, 1, m.get(p, 0).clone());
            }
            let node = net.node(NodeId(victim as u64)).unwrap();
            let dims = node.dims().to_vec();
            let mut entries = Vec::new();
            for p in 0..dims[0] {
                for (col, rest) in all_indices(&dims[1..]).into_iter().enumerate() {
                    let value = broken.get(p, col).clone();
                    if !value.is_zero() {
                        let mut idx = vec![p];
                        idx.extend(rest);
                        entries.push((idx, value));
                    }
                }
            }
            let replacement = TensorNode::from_entries(node.id(), dims, entries).unwrap();
            let mut nodes: Vec<TensorNode> = net.nodes().cloned().collect();
            nodes[victim] = replacement;
            let edge_pairs: Vec<(SlotRef, SlotRef)> =
                net.edges().map(|(_, e)| (e.a, e.b)).collect();
            let mutant =
                TensorNetwork::new(nodes, edge_pairs, net.global_scalar().clone()).unwrap();
            assert!(
                !check_injective(&mutant, &partition, &budget).unwrap(),
                "mutant {} should be rejected",
                round
            );
        }
    });
}

#[test]
fn correlated_endpoint_state_amplitudes() {
    criterion("endpoint-correlated state: unit amplitudes and zero elsewhere", || {
        for n in 3..=8usize {
            let mps = build_bell_mps(n).unwrap();
            let phys = mps.physical_edges();
            let amplitude = |bits: &[usize]| {
                let x: BasisInput = phys.iter().copied().zip(bits.iter().copied()).collect();
                evaluate(&mps, &x).unwrap()
            };
            let zeros = vec![0usize; n];
            let mut ends = vec![0usize; n];
            ends[0] = 1;
            ends[n - 1] = 1;
            assert_eq!(amplitude(&zeros), Scalar::one(), "n={} zeros", n);
            assert_eq!(amplitude(&ends), Scalar::one(), "n={} ends", n);
            let mut r = rng(600 + n as u64);
            let mut sampled = 0;
            while sampled < 20 {
                let bits: Vec<usize> = (0..n).map(|_| r.gen_range(0..2usize)).collect();
                if bits == zeros || bits == ends {
                    continue;
                }
                sampled += 1;
                assert_eq!(amplitude(&bits), Scalar::zero(), "n={} bits {:?}", n, bits);
            }
        }
    });
}

fn diagonal_projector(side: usize, ones: &[usize]) -> Matrix {
    let mut m = Matrix::zero(side, side);
    for &i in ones {
        m.set(i, i, Scalar::one());
    }
    m
}

fn self_guesses(instance: &HamiltonianInstance) -> Vec<ProjectorGuess> {
    instance
        .terms()
        .iter()
        .enumerate()
        .map(|(i, term)| ProjectorGuess {
            term_index: i,
            projector: term.matrix().clone(),
            eigenvalue: BigRational::from_integer(1.into()),
        })
        .collect()
}

/// Final open leg of each qudit after applying the terms in order: terms
/// route a touched qudit to the matching output slot of their node.
fn qudit_legs(n: usize, supports: &[Vec<usize>]) -> Vec<SlotRef> {
    let mut leg: Vec<SlotRef> = (0..n)
        .map(|q| SlotRef::new(NodeId(q as u64), 0))
        .collect();
    for (ti, support) in supports.iter().enumerate() {
        let k = support.len();
        for (p, &q) in support.iter().enumerate() {
            leg[q] = SlotRef::new(NodeId((n + ti) as u64), k + p);
        }
    }
    leg
}

fn digits_be(mut value: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0usize; len];
    for slot in (0..len).rev() {
        out[slot] = value % base;
        value /= base;
    }
    out
}

fn random_diagonal_instance(
    r: &mut ChaCha8Rng,
    max_n: usize,
) -> (HamiltonianInstance, Vec<Vec<usize>>) {
    let d: usize = if r.gen_bool(0.2) { 3 } else { 2 };
    let n = r.gen_range(2..=if d == 3 { 3.min(max_n) } else { max_n });
    let m = r.gen_range(1..=3);
    let mut supports = Vec::with_capacity(m);
    let mut terms = Vec::with_capacity(m);
    for _ in 0..m {
        let k = r.gen_range(1..=2.min(n));
        let mut qudits: Vec<usize> = (0..n).collect();
        qudits.shuffle(r);
        qudits.truncate(k);
        let side = d.pow(k as u32);
        let ones: Vec<usize> = (0..side).filter(|_| r.gen_bool(0.7)).collect();
        supports.push(qudits.clone());
        terms.push((qudits, diagonal_projector(side, &ones)));
    }
    let alpha = BigRational::from_integer((m as i64).into());
    let beta = BigRational::from_integer(0.into());
    let instance = HamiltonianInstance::new(n, d, terms, alpha, beta).unwrap();
    (instance, supports)
}

/// Checks evaluate(compiled, y) == D^n * dense[y][x] on the diagonal and on
/// two random off-diagonal rows for every basis column x.
fn check_instance_against_dense(
    instance: &HamiltonianInstance,
    guesses: &[ProjectorGuess],
    supports: &[Vec<usize>],
    r: &mut ChaCha8Rng,
) {
    let budget = Budget::default();
    let d = instance.local_dim();
    let n = instance.num_qudits();
    let dim = d.pow(n as u32);
    let dense = ground_space_projector_bruteforce(instance, guesses, &budget).unwrap();
    let scale = Scalar::from_int(dim as i64);
    for col in 0..dim {
        let x = digits_be(col, d, n);
        let network = compile_clh(instance, guesses, &x).unwrap();
        let legs = qudit_legs(n, supports);
        let phys = network.physical_edges();
        assert_eq!(
            phys.iter().copied().collect::<std::collections::BTreeSet<_>>(),
            legs.iter().copied().collect::<std::collections::BTreeSet<_>>(),
            "open legs disagree with replayed routing"
        );
        let mut rows = vec![col];
        for _ in 0..2 {
            rows.push(r.gen_range(0..dim));
        }
        for row in rows {
            let y = digits_be(row, d, n);
            let input: BasisInput = legs
                .iter()
                .enumerate()
                .map(|(q, slot)| (*slot, y[q]))
                .collect();
            let got = evaluate(&network, &input).unwrap();
            assert_eq!(
                got,
                &scale * dense.get(row, col),
                "entry ({}, {})",
                row,
                col
            );
        }
    }
}

#[test]
fn projector_pipeline_matches_dense_products() {
    criterion("compiled projector pipeline equals dense products times D^n", || {
        let mut r = rng(707);

        // Random clause embeddings: diagonal projectors onto the satisfying
        // assignments of two-literal clauses.
        for _ in 0..15 {
            let n = r.gen_range(2..=4usize);
            let m = r.gen_range(1..=3);
            let mut supports = Vec::new();
            let mut terms = Vec::new();
            for _ in 0..m {
                let mut qudits: Vec<usize> = (0..n).collect();
                qudits.shuffle(&mut r);
                qudits.truncate(2);
                let neg = (r.gen_bool(0.5), r.gen_bool(0.5));
                let ones: Vec<usize> = (0..4)
                    .filter(|ab| {
                        let a = (ab >> 1) & 1 == 1;
                        let b = ab & 1 == 1;
                        (a != neg.0) || (b != neg.1)
                    })
                    .collect();
                supports.push(qudits.clone());
                terms.push((qudits, diagonal_projector(4, &ones)));
            }
            let alpha = BigRational::from_integer((m as i64).into());
            let beta = BigRational::from_integer(0.into());
            let instance = HamiltonianInstance::new(n, 2, terms, alpha, beta).unwrap();
            let guesses = self_guesses(&instance);
            check_instance_against_dense(&instance, &guesses, &supports, &mut r);
        }

        // Random diagonal instances, including local dimension 3.
        for _ in 0..13 {
            let (instance, supports) = random_diagonal_instance(&mut r, 4);
            let guesses = self_guesses(&instance);
            check_instance_against_dense(&instance, &guesses, &supports, &mut r);
        }

        // A non-diagonal commuting pair on four qubits: a global bit-flip
        // parity term and a two-qubit phase-agreement term.
        let mut flip = Matrix::zero(16, 16);
        for i in 0..16 {
            flip.set(i, i ^ 15, Scalar::one());
        }
        let mut phase = Matrix::zero(4, 4);
        for i in 0..4usize {
            let sign = if i.count_ones() % 2 == 0 { 1 } else { -1 };
            phase.set(i, i, Scalar::from_int(sign));
        }
        let supports = vec![vec![0, 1, 2, 3], vec![0, 1]];
        let terms = vec![(supports[0].clone(), flip.clone()), (supports[1].clone(), phase.clone())];
        let alpha = BigRational::from_integer(2.into());
        let beta = BigRational::from_integer(0.into());
        let instance = HamiltonianInstance::new(4, 2, terms, alpha, beta).unwrap();
        let half = Scalar::from_fraction(1, 2);
        let mut flip_proj = Matrix::zero(16, 16);
        for i in 0..16 {
            flip_proj.set(i, i, half.clone());
            flip_proj.set(i, i ^ 15, half.clone());
        }
        let mut phase_proj = Matrix::zero(4, 4);
        phase_proj.set(0, 0, Scalar::one());
        phase_proj.set(3, 3, Scalar::one());
        let guesses = vec![
            ProjectorGuess {
                term_index: 0,
                projector: flip_proj,
                eigenvalue: BigRational::from_integer(1.into()),
            },
            ProjectorGuess {
                term_index: 1,
                projector: phase_proj,
                eigenvalue: BigRational::from_integer(1.into()),
            },
        ];
        let mut r2 = rng(708);
        check_instance_against_dense(&instance, &guesses, &supports, &mut r2);
    });
}

#[test]
fn frustration_free_solver_agrees_with_dense_ground_space() {
    criterion("frustration-free solver agrees with dense ground space", || {
        let budget = Budget::default();
        let mut r = rng(808);
        let mut checked_nonneg = 0;
        for round in 0..30 {
            let (instance, _) = random_diagonal_instance(&mut r, 4);
            let guesses = self_guesses(&instance);
            let dense = ground_space_projector_bruteforce(&instance, &guesses, &budget).unwrap();
            let solved = solve_stoquastic_sat(&instance, None, None, &budget).unwrap();
            assert_eq!(
                solved.is_some(),
                !dense.is_zero(),
                "round {} disagreement",
                round
            );
            if let Some(witness) = &solved {
                let network = compile_clh(&instance, &guesses, &witness.x).unwrap();
                assert!(verify_nonneg_witness(&network, &witness.witness).unwrap());
            }
            // Every compiled network in the sweep must be entrywise
            // non-negative; spot-check the full basis for small instances.
            let d = instance.local_dim();
            let n = instance.num_qudits();
            let dim = d.pow(n as u32);
            if dim <= 16 {
                checked_nonneg += 1;
                for col in 0..dim {
                    let x = digits_be(col, d, n);
                    let network = compile_clh(&instance, &guesses, &x).unwrap();
                    assert!(network.is_nonnegative(), "round {} x {:?}", round, x);
                }
            }
        }
        assert!(checked_nonneg >= 10, "non-negativity sweep too small");

        // Handcrafted: agreement chain (satisfiable) and contradictory pins
        // (empty ground space).
        let agreement = diagonal_projector(4, &[0, 3]);
        let chain = HamiltonianInstance::new(
            3,
            2,
            vec![
                (vec![0, 1], agreement.clone()),
                (vec![1, 2], agreement.clone()),
            ],
            BigRational::from_integer(2.into()),
            BigRational::from_integer(0.into()),
        )
        .unwrap();
        assert!(solve_stoquastic_sat(&chain, None, None, &budget)
            .unwrap()
            .is_some());

        let pinned = HamiltonianInstance::new(
            2,
            2,
            vec![
                (vec![0], diagonal_projector(2, &[0])),
                (vec![0, 1], agreement),
                (vec![1], diagonal_projector(2, &[1])),
            ],
            BigRational::from_integer(3.into()),
            BigRational::from_integer(0.into()),
        )
        .unwrap();
        assert!(solve_stoquastic_sat(&pinned, None, None, &budget)
            .unwrap()
            .is_none());
    });
}

struct CountingOracle {
    inner: ExactOracle,
    calls: Cell<u64>,
}

impl TnzOracle for CountingOracle {
    fn decide(&self, instance: &GtnzInstance) -> tnz::Result<bool> {
        self.calls.set(self.calls.get() + 1);
        self.inner.decide(instance)
    }
}

#[test]
fn binary_search_counting_is_exact_and_frugal() {
    criterion("binary-search counting exact within t+1 oracle calls", || {
        let mut r = rng(909);
        for round in 0..100 {
            let cnf = random_cnf(&mut r, 10, 12);
            let oracle = CountingOracle {
                inner: ExactOracle::new(Budget::default()),
                calls: Cell::new(0),
            };
            let got = count_via_gtnz(&cnf, &oracle).unwrap();
            assert_eq!(got, truth_table_count(&cnf), "round {}", round);
            let t = cnf.num_vars() as u64;
            assert!(
                oracle.calls.get() <= t + 1,
                "round {}: {} calls for t = {}",
                round,
                oracle.calls.get(),
                t
            );
        }
    });
}

#[test]
fn contraction_order_invariance() {
    criterion("all contraction orders give bit-identical scalars", || {
        let mut r = rng(1010);
        for round in 0..50 {
            let net = random_network(&mut r, 6, 3, true, false);
            let reference = contract_closed(&net).unwrap();
            let ids: Vec<EdgeId> = net.edges().map(|(id, _)| id).collect();
            for _ in 0..10 {
                let mut order = ids.clone();
                order.shuffle(&mut r);
                assert_eq!(
                    contract_closed_with_order(&net, &order).unwrap(),
                    reference,
                    "round {} order {:?}",
                    round,
                    order
                );
            }
        }
    });
}
