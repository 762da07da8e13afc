//! Randomized properties. Each case seeds a deterministic generator, builds
//! small instances, and cross-checks independent code paths against each
//! other: algebraic axioms, order independence, enumeration oracles,
//! serialization identities, and rank tests done two ways.

mod common;

use common::*;
use proptest::prelude::*;
use rand::prelude::*;
use tnz::certify::{
    basis_witness_peel, check_injective, decide_at_least_k, search_nonneg_witness,
    verify_nonneg_witness, ExactOracle, InjectivePartition, NonNegWitness,
};
use tnz::contract::{
    brute_force_value, contract_closed, contract_closed_with_order, evaluate, evaluate_vectors,
    BasisInput, VectorInput,
};
use tnz::hamiltonian::{validate_commuting, HamiltonianInstance};
use tnz::io::{
    network_from_json, network_to_json, nonneg_witness_from_json, nonneg_witness_to_json,
    vector_input_from_json, vector_input_to_json,
};
use tnz::linalg::Matrix;
use tnz::reduce::{add_scalar, compile_edge_coloring, compile_sharp2sat, SimpleGraph};
use tnz::{Budget, EdgeId, NodeId, Scalar, SlotRef, TensorNetwork};

use num_rational::BigRational;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_arithmetic_satisfies_field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = small_scalar(&mut r);
        let b = small_scalar(&mut r);
        let c = small_scalar(&mut r);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse(), Scalar::one());
        }
    }

    #[test]
    fn validation_is_input_order_independent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, 5, 3, true, false);
        let value = contract_closed(&net).unwrap();

        let mut nodes: Vec<_> = net.nodes().cloned().collect();
        let mut pairs: Vec<(SlotRef, SlotRef)> =
            net.edges().map(|(_, e)| (e.a, e.b)).collect();
        nodes.shuffle(&mut r);
        pairs.shuffle(&mut r);
        for pair in pairs.iter_mut() {
            if r.gen_bool(0.5) {
                *pair = (pair.1, pair.0);
            }
        }
        let permuted = TensorNetwork::new(nodes.clone(), pairs.clone(), net.global_scalar().clone());
        let permuted = permuted.expect("permuting a valid network stays valid");
        prop_assert_eq!(contract_closed(&permuted).unwrap(), value);

        // A slot-reuse defect is rejected in any presentation order.
        if let Some(first) = pairs.first().copied() {
            pairs.push(first);
            for _ in 0..3 {
                pairs.shuffle(&mut r);
                nodes.shuffle(&mut r);
                let broken = TensorNetwork::new(
                    nodes.clone(),
                    pairs.clone(),
                    net.global_scalar().clone(),
                );
                prop_assert!(broken.is_err());
            }
        }
    }

    #[test]
    fn network_json_round_trip_is_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, 5, 3, false, false);
        let text = network_to_json(&net);
        let back = network_from_json(&text).unwrap();
        prop_assert_eq!(&back, &net);
        prop_assert_eq!(network_to_json(&back), text);
    }

    #[test]
    fn witness_files_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x: BasisInput = (0..r.gen_range(0..4u64))
            .map(|i| (SlotRef::new(NodeId(i), r.gen_range(0..3)), r.gen_range(0..5)))
            .collect();
        let labeling = (0..r.gen_range(0..4usize))
            .map(|i| (EdgeId(i), r.gen_range(0..5)))
            .collect();
        let witness = NonNegWitness { x, labeling };
        let text = nonneg_witness_to_json(&witness);
        prop_assert_eq!(nonneg_witness_from_json(&text).unwrap(), witness);

        let vectors: VectorInput = (0..r.gen_range(0..3u64))
            .map(|i| {
                let len = r.gen_range(1..4);
                let v: Vec<Scalar> = (0..len).map(|_| small_scalar(&mut r)).collect();
                (SlotRef::new(NodeId(i), 0), v)
            })
            .collect();
        let text = vector_input_to_json(&vectors);
        prop_assert_eq!(vector_input_from_json(&text).unwrap(), vectors);
    }

    #[test]
    fn contraction_agrees_with_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, 5, 3, true, false);
        let merged = contract_closed(&net).unwrap();
        let enumerated = brute_force_value(&net, None, &Budget::default()).unwrap();
        prop_assert_eq!(merged, enumerated);
    }

    #[test]
    fn contraction_order_does_not_matter(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, 5, 3, true, false);
        let reference = contract_closed(&net).unwrap();
        let ids: Vec<EdgeId> = net.edges().map(|(id, _)| id).collect();
        for _ in 0..3 {
            let mut order = ids.clone();
            order.shuffle(&mut r);
            prop_assert_eq!(contract_closed_with_order(&net, &order).unwrap(), &reference);
        }
    }

    #[test]
    fn evaluation_matches_pinned_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, 5, 3, false, false);
        let phys = net.physical_edges();
        let x: BasisInput = phys
            .iter()
            .map(|s| {
                let dim = net.node(s.node).unwrap().dims()[s.slot];
                (*s, r.gen_range(0..dim))
            })
            .collect();
        let direct = evaluate(&net, &x).unwrap();
        let enumerated = brute_force_value(&net, Some(&x), &Budget::default()).unwrap();
        prop_assert_eq!(direct, enumerated);
    }

    #[test]
    fn vector_evaluation_is_linear_per_edge(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, 4, 3, false, false);
        let phys = net.physical_edges();
        prop_assume!(!phys.is_empty());

        let base: VectorInput = phys
            .iter()
            .map(|s| {
                let dim = net.node(s.node).unwrap().dims()[s.slot];
                (*s, (0..dim).map(|_| small_scalar(&mut r)).collect::<Vec<_>>())
            })
            .collect();
        let target = phys[r.gen_range(0..phys.len())];
        let dim = net.node(target.node).unwrap().dims()[target.slot];
        let u: Vec<Scalar> = (0..dim).map(|_| small_scalar(&mut r)).collect();
        let v: Vec<Scalar> = (0..dim).map(|_| small_scalar(&mut r)).collect();
        let a = small_scalar(&mut r);
        let b = small_scalar(&mut r);

        let with = |vector: Vec<Scalar>| {
            let mut input = base.clone();
            input.insert(target, vector);
            evaluate_vectors(&net, &input).unwrap()
        };
        let combo: Vec<Scalar> = (0..dim)
            .map(|i| &(&a * &u[i]) + &(&b * &v[i]))
            .collect();
        prop_assert_eq!(
            with(combo),
            &(&a * &with(u.clone())) + &(&b * &with(v.clone()))
        );
    }

    #[test]
    fn shift_adds_exactly_and_grows_bonds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, 4, 3, true, false);
        let shift = small_scalar(&mut r);
        let before = contract_closed(&net).unwrap();
        let shifted = add_scalar(&net, &shift).unwrap();
        prop_assert_eq!(contract_closed(&shifted).unwrap(), &before + &shift);
        prop_assert_eq!(shifted.num_nodes(), net.num_nodes());
        prop_assert_eq!(shifted.num_edges(), net.num_edges());
        for (id, _) in net.edges() {
            prop_assert_eq!(shifted.bond_dim(id).unwrap(), net.bond_dim(id).unwrap() + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn compiled_formula_counts_match_truth_tables(seed in any::<u64>()) {
        let mut r = rng(seed);
        let cnf = random_cnf(&mut r, 7, 10);
        let value = contract_closed(&compile_sharp2sat(&cnf)).unwrap();
        prop_assert_eq!(value, Scalar::from_int(truth_table_count(&cnf) as i64));
    }

    #[test]
    fn coloring_networks_are_nonneg_and_count_correctly(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vertices = r.gen_range(2..=6usize);
        let mut all_pairs: Vec<(usize, usize)> = (0..vertices)
            .flat_map(|u| ((u + 1)..vertices).map(move |v| (u, v)))
            .collect();
        all_pairs.shuffle(&mut r);
        all_pairs.truncate(r.gen_range(1..=8.min(all_pairs.len())));
        let graph = SimpleGraph::new(vertices, all_pairs).unwrap();
        let colors = r.gen_range(2..=3usize);
        let network = compile_edge_coloring(&graph, colors).unwrap();
        prop_assert!(network.is_nonnegative());
        let counted = contract_closed(&network).unwrap();
        let expected = backtracking_coloring_count(&graph, colors);
        prop_assert_eq!(counted, Scalar::from_int(expected as i64));
    }

    #[test]
    fn rank_test_agrees_with_gram_determinant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let cols = r.gen_range(1..=3usize);
        let rows = r.gen_range(cols..=4usize);
        let mut l = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if r.gen_bool(0.6) {
                    l.set(i, j, small_scalar(&mut r));
                }
            }
        }
        let full_rank = l.rank() == cols;
        let gram = l.conj_transpose().mul(&l);
        let gram_regular = !gram.det().is_zero();
        prop_assert_eq!(full_rank, gram_regular);

        // The same verdict through the network interface: one node whose
        // matrix maps its bond labelings to its physical labelings.
        let entries = (0..rows).flat_map(|p| {
            (0..cols).filter_map({
                let l = &l;
                move |c| {
                    let value = l.get(p, c).clone();
                    (!value.is_zero()).then_some((vec![p, c], value))
                }
            })
        });
        let block = tnz::TensorNode::from_entries(NodeId(0), vec![rows, cols], entries).unwrap();
        let anchor = tnz::TensorNode::from_entries(
            NodeId(1),
            vec![cols, cols],
            (0..cols).map(|i| (vec![i, i], Scalar::one())),
        )
        .unwrap();
        let net = TensorNetwork::new(
            [block, anchor],
            [(SlotRef::new(NodeId(0), 1), SlotRef::new(NodeId(1), 0))],
            Scalar::one(),
        )
        .unwrap();
        let partition = InjectivePartition::new(vec![vec![NodeId(0)]]);
        prop_assert_eq!(
            check_injective(&net, &partition, &Budget::default()).unwrap(),
            full_rank
        );
    }

    #[test]
    fn peeling_finds_a_point_exactly_when_one_exists(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, 4, 2, false, false);
        let phys = net.physical_edges();
        let phys_dims: Vec<usize> = phys
            .iter()
            .map(|s| net.node(s.node).unwrap().dims()[s.slot])
            .collect();

        let peeled = basis_witness_peel(&net, &Budget::default()).unwrap();
        let mut nonzero_point = None;
        for idx in all_indices(&phys_dims) {
            let x: BasisInput = phys.iter().copied().zip(idx).collect();
            if !brute_force_value(&net, Some(&x), &Budget::default()).unwrap().is_zero() {
                nonzero_point = Some(x);
                break;
            }
        }
        match peeled {
            Some(x) => {
                prop_assert!(nonzero_point.is_some());
                prop_assert!(!evaluate(&net, &x).unwrap().is_zero());
            }
            None => prop_assert!(nonzero_point.is_none()),
        }
    }

    #[test]
    fn nonneg_search_matches_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let net = random_network(&mut r, 5, 3, false, true);
        let phys = net.physical_edges();
        let phys_dims: Vec<usize> = phys
            .iter()
            .map(|s| net.node(s.node).unwrap().dims()[s.slot])
            .collect();
        let found = search_nonneg_witness(&net, &Budget::default()).unwrap();
        let mut positive = false;
        for idx in all_indices(&phys_dims) {
            let x: BasisInput = phys.iter().copied().zip(idx).collect();
            if brute_force_value(&net, Some(&x), &Budget::default())
                .unwrap()
                .is_positive_real()
            {
                positive = true;
                break;
            }
        }
        match found {
            Some(w) => {
                prop_assert!(positive);
                prop_assert!(verify_nonneg_witness(&net, &w).unwrap());
            }
            None => prop_assert!(!positive),
        }
    }

    #[test]
    fn threshold_decisions_are_monotone_in_k(seed in any::<u64>()) {
        let mut r = rng(seed);
        let cnf = random_cnf(&mut r, 6, 8);
        let oracle = ExactOracle::default();
        let mut previous = true;
        for k in 1..=4u64 {
            let yes = decide_at_least_k(&cnf, k, &oracle, None).unwrap();
            if !previous {
                prop_assert!(!yes, "count >= {} but not >= {}", k, k - 1);
            }
            previous = yes;
        }
    }

    #[test]
    fn commutation_verdict_survives_relabeling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4usize);
        let d = 2usize;
        let budget = Budget::default();

        let mut random_term = |r: &mut rand_chacha::ChaCha8Rng| {
            let k = r.gen_range(1..=2.min(n));
            let mut qudits: Vec<usize> = (0..n).collect();
            qudits.shuffle(r);
            qudits.truncate(k);
            let side = d.pow(k as u32);
            let mut raw = Matrix::zero(side, side);
            for i in 0..side {
                for j in 0..side {
                    if r.gen_bool(0.5) {
                        raw.set(i, j, small_scalar(r));
                    }
                }
            }
            let hermitian = {
                let adjoint = raw.conj_transpose();
                let mut sum = Matrix::zero(side, side);
                for i in 0..side {
                    for j in 0..side {
                        sum.set(i, j, raw.get(i, j) + adjoint.get(i, j));
                    }
                }
                sum
            };
            (qudits, hermitian)
        };
        let t1 = random_term(&mut r);
        let t2 = random_term(&mut r);
        let alpha = BigRational::from_integer(2.into());
        let beta = BigRational::from_integer(0.into());
        let original = HamiltonianInstance::new(
            n,
            d,
            vec![t1.clone(), t2.clone()],
            alpha.clone(),
            beta.clone(),
        )
        .unwrap();

        let mut relabel: Vec<usize> = (0..n).collect();
        relabel.shuffle(&mut r);
        let map = |s: &[usize]| s.iter().map(|&q| relabel[q]).collect::<Vec<_>>();
        let relabeled = HamiltonianInstance::new(
            n,
            d,
            vec![(map(&t1.0), t1.1.clone()), (map(&t2.0), t2.1.clone())],
            alpha,
            beta,
        )
        .unwrap();

        prop_assert_eq!(
            validate_commuting(&original, &budget).unwrap(),
            validate_commuting(&relabeled, &budget).unwrap()
        );
        // Swapping the pair order never changes the verdict either.
        let swapped = HamiltonianInstance::new(
            n,
            d,
            vec![t2.clone(), t1.clone()],
            BigRational::from_integer(2.into()),
            BigRational::from_integer(0.into()),
        )
        .unwrap();
        prop_assert_eq!(
            validate_commuting(&original, &budget).unwrap(),
            validate_commuting(&swapped, &budget).unwrap()
        );
    }
}
