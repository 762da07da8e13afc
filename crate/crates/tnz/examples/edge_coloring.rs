//! Count proper edge colorings by exact network contraction. The Petersen
//! graph is the classic snark-adjacent case: 3-regular, bridgeless, yet not
//! 3-edge-colorable, so its count is 0 while K4 and K3,3 have plenty.

use tnz::contract::contract_closed;
use tnz::reduce::{compile_edge_coloring, SimpleGraph};

fn count(name: &str, graph: &SimpleGraph, colors: usize) {
    let network = compile_edge_coloring(graph, colors).unwrap();
    let value = contract_closed(&network).unwrap();
    println!("{} with {} colors: {}", name, colors, value);
}

fn main() {
    let k4 = SimpleGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        .unwrap();
    count("K4", &k4, 3);
    count("K4", &k4, 4);

    let k33 = SimpleGraph::new(
        6,
        vec![
            (0, 3), (0, 4), (0, 5),
            (1, 3), (1, 4), (1, 5),
            (2, 3), (2, 4), (2, 5),
        ],
    )
    .unwrap();
    count("K3,3", &k33, 3);

    // Outer cycle, spokes, inner pentagram.
    let petersen = SimpleGraph::new(
        10,
        vec![
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ],
    )
    .unwrap();
    count("Petersen", &petersen, 3);
}
