//! A bond-dimension-2 matrix product state holding a long-range correlated
//! pair: the two boundary sites agree, everything between them is 0. The
//! example reads amplitudes off the open network and then extracts a
//! non-zero basis point by norm-square peeling.

use tnz::certify::basis_witness_peel;
use tnz::contract::{evaluate, BasisInput};
use tnz::reduce::build_bell_mps;
use tnz::Budget;

fn main() {
    let n = 6;
    let mps = build_bell_mps(n).unwrap();
    println!(
        "{} sites, {} virtual bonds, physical edges: {:?}",
        n,
        mps.num_edges(),
        mps.physical_edges()
    );

    let phys = mps.physical_edges();
    let amplitude = |bits: &[usize]| {
        let x: BasisInput = phys.iter().copied().zip(bits.iter().copied()).collect();
        evaluate(&mps, &x).unwrap()
    };

    let zeros = vec![0; n];
    let mut ends = vec![0; n];
    ends[0] = 1;
    ends[n - 1] = 1;
    let mut lopsided = vec![0; n];
    lopsided[0] = 1;

    println!("amplitude of all zeros: {}", amplitude(&zeros));
    println!("amplitude of 1...1 at the ends: {}", amplitude(&ends));
    println!("amplitude of a single end flipped: {}", amplitude(&lopsided));

    let witness = basis_witness_peel(&mps, &Budget::default())
        .unwrap()
        .expect("the state is non-zero");
    let bits: Vec<usize> = phys.iter().map(|slot| witness[slot]).collect();
    println!("peeled witness string: {:?}", bits);
    println!("its amplitude: {}", amplitude(&bits));
}
