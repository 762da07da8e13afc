//! Build a small closed network by hand, plan a contraction order, and
//! check the planned result against every other order and against the
//! brute-force labeling sum.

use tnz::contract::{brute_force_value, contract_closed, contract_closed_with_order, plan_contraction};
use tnz::{Budget, NodeId, Scalar, SlotRef, TensorNetwork, TensorNode};

fn main() {
    // A triangle of 2x2 tensors: value = trace(A B C).
    let a = TensorNode::from_entries(
        NodeId(0),
        vec![2, 2],
        [
            (vec![0, 0], Scalar::from_int(1)),
            (vec![0, 1], Scalar::from_int(2)),
            (vec![1, 0], Scalar::from_int(3)),
            (vec![1, 1], Scalar::from_int(4)),
        ],
    )
    .unwrap();
    let b = TensorNode::from_entries(
        NodeId(1),
        vec![2, 2],
        [
            (vec![0, 0], Scalar::from_int(5)),
            (vec![1, 1], Scalar::from_int(6)),
        ],
    )
    .unwrap();
    let c = TensorNode::from_entries(
        NodeId(2),
        vec![2, 2],
        [
            (vec![0, 1], Scalar::i()),
            (vec![1, 0], -Scalar::i()),
        ],
    )
    .unwrap();
    let net = TensorNetwork::new(
        [a, b, c],
        [
            (SlotRef::new(NodeId(0), 1), SlotRef::new(NodeId(1), 0)),
            (SlotRef::new(NodeId(1), 1), SlotRef::new(NodeId(2), 0)),
            (SlotRef::new(NodeId(2), 1), SlotRef::new(NodeId(0), 0)),
        ],
        Scalar::one(),
    )
    .unwrap();

    let plan = plan_contraction(&net);
    println!("planned order: {:?}", plan.order);
    println!(
        "estimated max intermediate entries: {}",
        plan.estimated_max_intermediate_entries
    );

    let value = contract_closed(&net).unwrap();
    println!("contracted value: {}", value);

    // Every order gives the same exact value.
    let orders = [
        vec![plan.order[0], plan.order[1], plan.order[2]],
        vec![plan.order[2], plan.order[0], plan.order[1]],
        vec![plan.order[1], plan.order[2], plan.order[0]],
    ];
    for order in orders {
        assert_eq!(contract_closed_with_order(&net, &order).unwrap(), value);
    }
    println!("all contraction orders agree");

    let reference = brute_force_value(&net, None, &Budget::default()).unwrap();
    assert_eq!(reference, value);
    println!("brute-force labeling sum agrees: {}", reference);
}
