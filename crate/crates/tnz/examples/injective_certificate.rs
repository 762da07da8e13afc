//! Check a block partition of an open network for injectivity, then ask for
//! a product-vector certificate and verify it by direct evaluation.

use tnz::certify::{check_injective, injective_certificate, InjectivePartition};
use tnz::contract::evaluate_vectors;
use tnz::{Budget, NodeId, Scalar, SlotRef, TensorNetwork, TensorNode};

fn main() {
    // Two sites joined by one bond. Each site maps its physical leg to the
    // bond through an invertible 2x2 matrix, so each singleton block is an
    // injective map from its physical labelings into the boundary.
    let a = TensorNode::from_entries(
        NodeId(0),
        vec![2, 2],
        [
            (vec![0, 0], Scalar::from_int(1)),
            (vec![0, 1], Scalar::from_int(1)),
            (vec![1, 0], Scalar::from_int(1)),
            (vec![1, 1], Scalar::from_int(-1)),
        ],
    )
    .unwrap();
    let b = TensorNode::from_entries(
        NodeId(1),
        vec![2, 2],
        [
            (vec![0, 0], Scalar::from_int(2)),
            (vec![1, 1], Scalar::from_int(3)),
        ],
    )
    .unwrap();
    let net = TensorNetwork::new(
        [a, b],
        [(SlotRef::new(NodeId(0), 1), SlotRef::new(NodeId(1), 1))],
        Scalar::one(),
    )
    .unwrap();
    println!("physical edges: {:?}", net.physical_edges());

    let budget = Budget::default();
    let blocks = InjectivePartition::new(vec![vec![NodeId(0)], vec![NodeId(1)]]);
    println!(
        "both singleton blocks injective: {}",
        check_injective(&net, &blocks, &budget).unwrap()
    );

    let cert = injective_certificate(&net, &blocks, &budget).unwrap();
    for (slot, vector) in &cert {
        let shown: Vec<String> = vector.iter().map(|s| s.to_string()).collect();
        println!("certificate vector at {:?}: [{}]", slot, shown.join(", "));
    }
    let value = evaluate_vectors(&net, &cert).unwrap();
    println!("network applied to the certificate vectors: {}", value);
    assert!(value.is_one());

    // Replace site B with a rank-one tensor and the same partition fails.
    let flat = TensorNode::from_entries(
        NodeId(1),
        vec![2, 2],
        [
            (vec![0, 0], Scalar::from_int(1)),
            (vec![0, 1], Scalar::from_int(1)),
            (vec![1, 0], Scalar::from_int(1)),
            (vec![1, 1], Scalar::from_int(1)),
        ],
    )
    .unwrap();
    let a2 = net.node(NodeId(0)).unwrap().clone();
    let broken = TensorNetwork::new(
        [a2, flat],
        [(SlotRef::new(NodeId(0), 1), SlotRef::new(NodeId(1), 1))],
        Scalar::one(),
    )
    .unwrap();
    println!(
        "rank-one second block injective: {}",
        check_injective(&broken, &blocks, &budget).unwrap()
    );
    println!(
        "certificate request on the broken network: {:?}",
        injective_certificate(&broken, &blocks, &budget).unwrap_err()
    );
}
