//! Count satisfying assignments of a 2-CNF formula three ways: direct
//! contraction of the compiled network, binary search over single-call
//! threshold queries, and the shift-based scan.

use tnz::certify::{count_via_gtnz, decide_at_least_k, ExactOracle};
use tnz::contract::contract_closed;
use tnz::reduce::{compile_sharp2sat, Cnf2, Literal};

fn main() {
    // (x1 or x2) and (not x2 or x3) and (not x1 or not x3)
    let formula = Cnf2::new(
        3,
        vec![
            [Literal::new(0, true), Literal::new(1, true)],
            [Literal::new(1, false), Literal::new(2, true)],
            [Literal::new(0, false), Literal::new(2, false)],
        ],
    )
    .unwrap();

    let network = compile_sharp2sat(&formula);
    println!(
        "compiled network: {} nodes, {} edges",
        network.num_nodes(),
        network.num_edges()
    );
    let count = contract_closed(&network).unwrap();
    println!("count by contraction: {}", count);

    let oracle = ExactOracle::default();
    let count_via_queries = count_via_gtnz(&formula, &oracle).unwrap();
    println!("count by threshold queries: {}", count_via_queries);

    for k in 1..=8 {
        let at_least = decide_at_least_k(&formula, k, &oracle, None).unwrap();
        println!("at least {} models: {}", k, at_least);
    }
}
