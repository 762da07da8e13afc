//! Round-trip the text formats: network JSON, DIMACS clause files, edge
//! lists, and witness files. Serialization is deterministic, so equal
//! networks produce byte-identical files.

use tnz::contract::contract_closed;
use tnz::io::{
    network_from_json, network_to_json, nonneg_witness_from_json, nonneg_witness_to_json,
    parse_dimacs, parse_edge_list,
};
use tnz::certify::search_nonneg_witness;
use tnz::reduce::{compile_edge_coloring, compile_sharp2sat};
use tnz::{Budget, NodeId, Scalar, SlotRef, TensorNetwork, TensorNode};

fn main() {
    // A two-node closed network with a rational and a complex entry.
    let u = TensorNode::from_entries(
        NodeId(4),
        vec![2],
        [
            (vec![0], Scalar::from_fraction(3, 7)),
            (vec![1], Scalar::from_int(2)),
        ],
    )
    .unwrap();
    let v = TensorNode::from_entries(
        NodeId(9),
        vec![2],
        [(vec![0], Scalar::from_int(5)), (vec![1], Scalar::i())],
    )
    .unwrap();
    let net = TensorNetwork::new(
        [u, v],
        [(SlotRef::new(NodeId(4), 0), SlotRef::new(NodeId(9), 0))],
        Scalar::from_int(-1),
    )
    .unwrap();

    let text = network_to_json(&net);
    println!("network file:\n{}", text);
    let reread = network_from_json(&text).unwrap();
    assert_eq!(reread, net);
    assert_eq!(network_to_json(&reread), text);
    println!("round trip is byte identical");
    println!("value: {}", contract_closed(&reread).unwrap());

    // DIMACS text with two clauses over three variables.
    let dimacs = "c tiny instance\np cnf 3 2\n1 -2 0\n2 3 0\n";
    let formula = parse_dimacs(dimacs).unwrap();
    let count = contract_closed(&compile_sharp2sat(&formula)).unwrap();
    println!("model count of the DIMACS instance: {}", count);

    // Edge list for a path on three vertices, endpoints numbered from 1.
    let path = parse_edge_list("# path\n1 2\n2 3\n").unwrap();
    let colorings = contract_closed(&compile_edge_coloring(&path, 3).unwrap()).unwrap();
    println!("proper 3 edge colorings of the path: {}", colorings);

    // Witness files carry basis values and virtual edge labels.
    let network = compile_sharp2sat(&formula);
    let witness = search_nonneg_witness(&network, &Budget::default())
        .unwrap()
        .expect("the formula is satisfiable");
    let witness_text = nonneg_witness_to_json(&witness);
    println!("witness file:\n{}", witness_text);
    assert_eq!(nonneg_witness_from_json(&witness_text).unwrap(), witness);
    println!("witness round trip agrees");
}
