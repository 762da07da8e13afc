//! Frustration-free satisfiability for commuting projector terms with
//! non-negative entries: find a basis string on which every projector acts
//! as identity, or learn that none exists. A dense matrix product over the
//! full space cross-checks the network answer.

use num_rational::BigRational;
use tnz::hamiltonian::{
    ground_space_projector_bruteforce, is_stoquastic_sat, solve_stoquastic_sat,
    HamiltonianInstance, ProjectorGuess,
};
use tnz::linalg::Matrix;
use tnz::{Budget, Scalar};

fn agreement() -> Matrix {
    // Projects two qubits onto span{|00>, |11>}.
    let mut m = Matrix::zero(4, 4);
    m.set(0, 0, Scalar::from_int(1));
    m.set(3, 3, Scalar::from_int(1));
    m
}

fn plus_state() -> Matrix {
    // |+><+|, a non-diagonal projector with non-negative entries.
    let half = Scalar::from_fraction(1, 2);
    Matrix::from_vec(
        2,
        2,
        vec![half.clone(), half.clone(), half.clone(), half],
    )
}

fn default_guesses(instance: &HamiltonianInstance) -> Vec<ProjectorGuess> {
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

fn main() {
    let budget = Budget::default();
    let one = BigRational::from_integer(1.into());
    let zero = BigRational::from_integer(0.into());

    // Three qubits: the first two must agree, the third sits in |+>. The
    // upper threshold is the term count, leaving room for one unit of
    // energy per term.
    let satisfiable = HamiltonianInstance::new(
        3,
        2,
        vec![(vec![0, 1], agreement()), (vec![2], plus_state())],
        BigRational::from_integer(2.into()),
        zero.clone(),
    )
    .unwrap();
    println!(
        "terms entrywise non-negative projector shaped: {}",
        is_stoquastic_sat(&satisfiable)
    );

    let hit = solve_stoquastic_sat(&satisfiable, None, None, &budget)
        .unwrap()
        .expect("the instance is satisfiable");
    println!("satisfying basis string: {:?}", hit.x);
    println!("positive product found at: {:?}", hit.witness.x);

    // Same answer from the dense product of every projector over the full
    // eight-dimensional space: its trace is the ground space dimension.
    let product = ground_space_projector_bruteforce(&satisfiable, &default_guesses(&satisfiable), &budget).unwrap();
    let mut trace = Scalar::zero();
    for k in 0..8 {
        trace = trace + product.get(k, k).clone();
    }
    println!("dense ground space dimension: {}", trace);

    // Pinning contradictory single-qubit values empties the ground space.
    let mut zero_pin = Matrix::zero(2, 2);
    zero_pin.set(0, 0, Scalar::from_int(1));
    let mut one_pin = Matrix::zero(2, 2);
    one_pin.set(1, 1, Scalar::from_int(1));
    let frustrated = HamiltonianInstance::new(
        2,
        2,
        vec![
            (vec![0], zero_pin),
            (vec![0, 1], agreement()),
            (vec![1], one_pin),
        ],
        BigRational::from_integer(3.into()),
        zero.clone(),
    )
    .unwrap();
    let miss = solve_stoquastic_sat(&frustrated, None, None, &budget).unwrap();
    println!("frustrated instance witness: {:?}", miss);
    let empty = ground_space_projector_bruteforce(&frustrated, &default_guesses(&frustrated), &budget).unwrap();
    println!("dense product identically zero: {}", empty.is_zero());

    // A projector with a negative entry is outside this fragment.
    let half = Scalar::from_fraction(1, 2);
    let minus = Matrix::from_vec(
        2,
        2,
        vec![half.clone(), -half.clone(), -half.clone(), half],
    );
    let outside = HamiltonianInstance::new(1, 2, vec![(vec![0], minus)], one, zero).unwrap();
    println!(
        "negative-entry projector rejected: {:?}",
        solve_stoquastic_sat(&outside, None, None, &budget).unwrap_err()
    );
}
