//! Shared generators and reference oracles for the integration tests.
//!
//! The oracles here (truth-table counting, backtracking edge coloring) are
//! deliberately written against the plain data types, not the network
//! machinery, so they can referee the compiled paths.

// Each integration test binary compiles this module separately and uses its
// own subset of the helpers.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use tnz::reduce::{Cnf2, Literal, SimpleGraph};
use tnz::{NodeId, Scalar, SlotRef, TensorNetwork, TensorNode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-4i64..=4)),
        BigInt::from(rng.gen_range(1i64..=3)),
    )
}

pub fn positive_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(1i64..=4)),
        BigInt::from(rng.gen_range(1i64..=3)),
    )
}

/// Mixed-sign scalar, complex one time in four.
pub fn small_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let re = small_rational(rng);
    let im = if rng.gen_bool(0.25) {
        small_rational(rng)
    } else {
        BigRational::from_integer(0.into())
    };
    Scalar::new(re, im)
}

pub fn all_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |v| {
                    let mut idx = prefix.clone();
                    idx.push(v);
                    idx
                })
            })
            .collect();
    }
    out
}

/// Random network built edge-first: every slot's dimension comes from the
/// edge (or open leg) it belongs to, so the pairing is always consistent.
/// Self-edges and parallel edges arise naturally from the random pairing.
/// With `closed` every slot is paired; otherwise a random subset stays open.
/// With `nonneg` all entries and the global factor are non-negative reals.
pub fn random_network(
    rng: &mut ChaCha8Rng,
    max_nodes: usize,
    max_dim: usize,
    closed: bool,
    nonneg: bool,
) -> TensorNetwork {
    let n = rng.gen_range(1..=max_nodes);
    let mut arity: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
    if closed && arity.iter().sum::<usize>() % 2 == 1 {
        let i = rng.gen_range(0..n);
        arity[i] += 1;
    }

    let mut pool: Vec<SlotRef> = (0..n)
        .flat_map(|i| (0..arity[i]).map(move |s| SlotRef::new(NodeId(i as u64), s)))
        .collect();
    pool.shuffle(rng);
    let pairs = if closed {
        pool.len() / 2
    } else {
        rng.gen_range(0..=pool.len() / 2)
    };

    let mut dim_of = std::collections::BTreeMap::new();
    let mut edges = Vec::with_capacity(pairs);
    for chunk in pool.chunks(2).take(pairs) {
        let d = rng.gen_range(1..=max_dim);
        dim_of.insert(chunk[0], d);
        dim_of.insert(chunk[1], d);
        edges.push((chunk[0], chunk[1]));
    }
    for open in pool.iter().skip(2 * pairs) {
        dim_of.insert(*open, rng.gen_range(1..=max_dim));
    }

    let nodes: Vec<TensorNode> = (0..n)
        .map(|i| {
            let dims: Vec<usize> = (0..arity[i])
                .map(|s| dim_of[&SlotRef::new(NodeId(i as u64), s)])
                .collect();
            let mut entries = Vec::new();
            for idx in all_indices(&dims) {
                if !rng.gen_bool(0.6) {
                    continue;
                }
                let value = if nonneg {
                    Scalar::from_rational(positive_rational(rng))
                } else {
                    small_scalar(rng)
                };
                if !value.is_zero() {
                    entries.push((idx, value));
                }
            }
            TensorNode::from_entries(NodeId(i as u64), dims, entries).unwrap()
        })
        .collect();

    let global = if rng.gen_bool(0.8) {
        Scalar::one()
    } else if nonneg {
        Scalar::from_rational(positive_rational(rng))
    } else {
        small_scalar(rng)
    };
    TensorNetwork::new(nodes, edges, global).unwrap()
}

pub fn random_cnf(rng: &mut ChaCha8Rng, max_vars: usize, max_clauses: usize) -> Cnf2 {
    let t = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            [
                Literal::new(rng.gen_range(0..t), rng.gen_bool(0.5)),
                Literal::new(rng.gen_range(0..t), rng.gen_bool(0.5)),
            ]
        })
        .collect();
    Cnf2::new(t, clauses).unwrap()
}

/// Model count by direct enumeration over all 2^t assignments, checking
/// clauses with bit arithmetic only.
pub fn truth_table_count(cnf: &Cnf2) -> u64 {
    let t = cnf.num_vars();
    assert!(t < 64);
    let mut count = 0u64;
    for mask in 0..(1u64 << t) {
        let ok = cnf.clauses().iter().all(|clause| {
            clause.iter().any(|lit| {
                let bit = (mask >> lit.var) & 1 == 1;
                bit == lit.positive
            })
        });
        if ok {
            count += 1;
        }
    }
    count
}

/// Proper edge coloring count by backtracking directly on the edge list.
pub fn backtracking_coloring_count(graph: &SimpleGraph, colors: usize) -> u64 {
    fn shares_vertex(a: (usize, usize), b: (usize, usize)) -> bool {
        a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
    }
    fn go(edges: &[(usize, usize)], assigned: &mut Vec<usize>, colors: usize) -> u64 {
        let i = assigned.len();
        if i == edges.len() {
            return 1;
        }
        let mut total = 0;
        'colors: for c in 0..colors {
            for j in 0..i {
                if assigned[j] == c && shares_vertex(edges[i], edges[j]) {
                    continue 'colors;
                }
            }
            assigned.push(c);
            total += go(edges, assigned, colors);
            assigned.pop();
        }
        total
    }
    go(graph.edges(), &mut Vec::new(), colors)
}
