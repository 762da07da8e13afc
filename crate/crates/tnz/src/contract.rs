//! Contraction: edge elimination, closed-network evaluation, basis and vector
//! pinning, greedy planning, and an independent brute-force evaluator.
//!
//! The merge-based path (`contract_edge`, `contract_closed`) and the
//! enumeration path (`brute_force_value`) are written against the same
//! semantics but share no tensor code, so each can serve as an oracle for the
//! other in tests.

use std::collections::{BTreeMap, BTreeSet};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::network::{Edge, EdgeId, NodeId, SlotRef, TensorNetwork, TensorNode};
use crate::scalar::Scalar;

/// Assignment of a basis value to every physical edge.
pub type BasisInput = BTreeMap<SlotRef, usize>;

/// Assignment of an exact vector to every physical edge. Pairing is plain
/// (no conjugation): the network value is summed against the vector entries
/// as written. Callers wanting a bra must conjugate before calling.
pub type VectorInput = BTreeMap<SlotRef, Vec<Scalar>>;

/// An edge elimination order together with a size estimate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionPlan {
    /// Every virtual edge exactly once.
    pub order: Vec<EdgeId>,
    /// Largest sparse entry count any merged node would reach under the plan,
    /// assuming no cancellation. The true count can only be smaller.
    pub estimated_max_intermediate_entries: u64,
}

/// Contracts one virtual edge, returning the new network. A two-node edge
/// merges its endpoints into a single node that keeps the smaller id, with
/// the surviving slots of the smaller-id node first. A self-edge performs the
/// partial trace over its two slots.
pub fn contract_edge(network: &TensorNetwork, id: EdgeId) -> Result<TensorNetwork> {
    let edge = *network.edge(id).ok_or(Error::UnknownEdge(id))?;
    let (mut nodes, mut edges, global) = network.clone().parts();
    edges.remove(&id);

    if edge.a.node == edge.b.node {
        // Partial trace. Endpoints are sorted, so edge.a.slot < edge.b.slot.
        let node = nodes.remove(&edge.a.node).expect("validated endpoint");
        let (s1, s2) = (edge.a.slot, edge.b.slot);
        let keep: Vec<usize> = (0..node.arity()).filter(|&s| s != s1 && s != s2).collect();
        let dims: Vec<usize> = keep.iter().map(|&s| node.dims()[s]).collect();
        let mut entries: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (idx, value) in node.entries() {
            if idx[s1] != idx[s2] {
                continue;
            }
            let rest: Vec<usize> = keep.iter().map(|&s| idx[s]).collect();
            accumulate(&mut entries, rest, value.clone());
        }
        let merged = sparse_node(node.id(), dims, entries);
        let remap = |end: SlotRef| -> SlotRef {
            if end.node != merged.id() {
                return end;
            }
            let shift = (end.slot > s1) as usize + (end.slot > s2) as usize;
            SlotRef::new(end.node, end.slot - shift)
        };
        for e in edges.values_mut() {
            *e = Edge::new(remap(e.a), remap(e.b));
        }
        nodes.insert(merged.id(), merged);
        return Ok(TensorNetwork::from_parts(nodes, edges, global));
    }

    // Endpoints are sorted by (node, slot), so `u` is the smaller node id and
    // the merged slot order (u-rest then v-rest) is deterministic.
    let u = nodes.remove(&edge.a.node).expect("validated endpoint");
    let v = nodes.remove(&edge.b.node).expect("validated endpoint");
    let (su, sv) = (edge.a.slot, edge.b.slot);

    let u_keep: Vec<usize> = (0..u.arity()).filter(|&s| s != su).collect();
    let v_keep: Vec<usize> = (0..v.arity()).filter(|&s| s != sv).collect();
    let mut dims: Vec<usize> = u_keep.iter().map(|&s| u.dims()[s]).collect();
    dims.extend(v_keep.iter().map(|&s| v.dims()[s]));

    let by_bond_u = group_by_bond(&u, su, &u_keep);
    let by_bond_v = group_by_bond(&v, sv, &v_keep);
    let mut entries: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    for (k, left) in &by_bond_u {
        let Some(right) = by_bond_v.get(k) else {
            continue;
        };
        for (rest_u, val_u) in left {
            for (rest_v, val_v) in right {
                let mut idx = rest_u.clone();
                idx.extend_from_slice(rest_v);
                accumulate(&mut entries, idx, *val_u * *val_v);
            }
        }
    }
    let merged = sparse_node(u.id(), dims, entries);

    let u_offset = u_keep.len();
    let remap = |end: SlotRef| -> SlotRef {
        if end.node == u.id() {
            SlotRef::new(merged.id(), end.slot - (end.slot > su) as usize)
        } else if end.node == v.id() {
            SlotRef::new(merged.id(), u_offset + end.slot - (end.slot > sv) as usize)
        } else {
            end
        }
    };
    for e in edges.values_mut() {
        *e = Edge::new(remap(e.a), remap(e.b));
    }
    nodes.insert(merged.id(), merged);
    Ok(TensorNetwork::from_parts(nodes, edges, global))
}

fn group_by_bond<'a>(
    node: &'a TensorNode,
    bond_slot: usize,
    keep: &[usize],
) -> BTreeMap<usize, Vec<(Vec<usize>, &'a Scalar)>> {
    let mut grouped: BTreeMap<usize, Vec<(Vec<usize>, &Scalar)>> = BTreeMap::new();
    for (idx, value) in node.entries() {
        let rest: Vec<usize> = keep.iter().map(|&s| idx[s]).collect();
        grouped.entry(idx[bond_slot]).or_default().push((rest, value));
    }
    grouped
}

fn accumulate(entries: &mut BTreeMap<Vec<usize>, Scalar>, idx: Vec<usize>, value: Scalar) {
    use std::collections::btree_map::Entry;
    match entries.entry(idx) {
        Entry::Vacant(slot) => {
            slot.insert(value);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += value;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

fn sparse_node(id: NodeId, dims: Vec<usize>, entries: BTreeMap<Vec<usize>, Scalar>) -> TensorNode {
    TensorNode::from_entries(id, dims, entries).expect("merged indices are in range")
}

/// Greedy elimination order: at each step contract the edge whose merged node
/// would hold the fewest entries (cancellation ignored), breaking ties by the
/// smallest edge id. Deterministic for a given network.
///
/// Candidate sizes are counted with an abort threshold: once a candidate
/// provably exceeds the best size seen this round it cannot be the minimum,
/// so the count stops early. The selected order is identical to exhaustive
/// scoring, the planner just never pays for merges it will not pick.
pub fn plan_contraction(network: &TensorNetwork) -> ContractionPlan {
    let mut sim: BTreeMap<NodeId, SimNode> = network
        .nodes()
        .map(|n| {
            (
                n.id(),
                SimNode {
                    dims: n.dims().to_vec(),
                    support: n.entries().map(|(idx, _)| idx.clone()).collect(),
                },
            )
        })
        .collect();
    let mut edges: BTreeMap<EdgeId, Edge> = network.edges().map(|(id, e)| (id, *e)).collect();
    let mut order = Vec::with_capacity(edges.len());
    let mut worst = 0u64;

    while !edges.is_empty() {
        // A matching-pair count bounds the merged size from above, so the
        // candidate attaining the smallest bound always finishes its count.
        let mut cap = usize::MAX;
        for (_, &e) in &edges {
            cap = cap.min(pair_bound(&sim, e));
        }
        let mut best: Option<(usize, EdgeId)> = None;
        for (&id, &e) in &edges {
            if let Some(size) = bounded_merge_size(&sim, e, cap) {
                if best.map_or(true, |(b, _)| size < b) {
                    best = Some((size, id));
                    cap = size;
                }
            }
        }
        let (_, chosen_id) = best.expect("the bound-minimizing candidate finishes");
        let chosen = edges.remove(&chosen_id).expect("chosen edge present");
        let merged = simulate_merge(&sim, chosen);
        worst = worst.max(merged.support.len() as u64);
        apply_merge(&mut sim, &mut edges, chosen, merged);
        order.push(chosen_id);
    }
    ContractionPlan {
        order,
        estimated_max_intermediate_entries: worst,
    }
}

/// Number of support pairs agreeing on the contracted slots; an upper bound
/// on the merged support size, costing one pass over each endpoint.
fn pair_bound(sim: &BTreeMap<NodeId, SimNode>, edge: Edge) -> usize {
    if edge.a.node == edge.b.node {
        let node = &sim[&edge.a.node];
        return node
            .support
            .iter()
            .filter(|idx| idx[edge.a.slot] == idx[edge.b.slot])
            .count();
    }
    let (u, v) = (&sim[&edge.a.node], &sim[&edge.b.node]);
    let mut per_value: BTreeMap<usize, usize> = BTreeMap::new();
    for idx in &u.support {
        *per_value.entry(idx[edge.a.slot]).or_insert(0) += 1;
    }
    let mut pairs = 0usize;
    for idx in &v.support {
        if let Some(&n) = per_value.get(&idx[edge.b.slot]) {
            pairs = pairs.saturating_add(n);
        }
    }
    pairs
}

/// Merged support size, or `None` once it exceeds `cap`. Matching pairs are
/// found by grouping each side on its contracted slot value, so mismatches
/// cost nothing and the abort fires within about `cap * bond` visited pairs.
fn bounded_merge_size(sim: &BTreeMap<NodeId, SimNode>, edge: Edge, cap: usize) -> Option<usize> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    if edge.a.node == edge.b.node {
        let node = &sim[&edge.a.node];
        let (s1, s2) = (edge.a.slot, edge.b.slot);
        let keep: Vec<usize> = (0..node.dims.len())
            .filter(|&s| s != s1 && s != s2)
            .collect();
        for idx in &node.support {
            if idx[s1] != idx[s2] {
                continue;
            }
            seen.insert(keep.iter().map(|&s| idx[s]).collect());
            if seen.len() > cap {
                return None;
            }
        }
        return Some(seen.len());
    }
    let (u, v) = (&sim[&edge.a.node], &sim[&edge.b.node]);
    let (su, sv) = (edge.a.slot, edge.b.slot);
    let u_keep: Vec<usize> = (0..u.dims.len()).filter(|&s| s != su).collect();
    let v_keep: Vec<usize> = (0..v.dims.len()).filter(|&s| s != sv).collect();
    let mut by_value: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for idx in &u.support {
        by_value
            .entry(idx[su])
            .or_default()
            .push(u_keep.iter().map(|&s| idx[s]).collect());
    }
    for iv in &v.support {
        let Some(lefts) = by_value.get(&iv[sv]) else {
            continue;
        };
        let rest_v: Vec<usize> = v_keep.iter().map(|&s| iv[s]).collect();
        for rest_u in lefts {
            let mut idx = rest_u.clone();
            idx.extend_from_slice(&rest_v);
            seen.insert(idx);
            if seen.len() > cap {
                return None;
            }
        }
    }
    Some(seen.len())
}

struct SimNode {
    dims: Vec<usize>,
    support: BTreeSet<Vec<usize>>,
}

/// Index support of the node produced by contracting `edge`, with the same
/// slot bookkeeping as `contract_edge` but no arithmetic.
fn simulate_merge(sim: &BTreeMap<NodeId, SimNode>, edge: Edge) -> SimNode {
    if edge.a.node == edge.b.node {
        let node = &sim[&edge.a.node];
        let (s1, s2) = (edge.a.slot, edge.b.slot);
        let keep: Vec<usize> = (0..node.dims.len())
            .filter(|&s| s != s1 && s != s2)
            .collect();
        let dims = keep.iter().map(|&s| node.dims[s]).collect();
        let support = node
            .support
            .iter()
            .filter(|idx| idx[s1] == idx[s2])
            .map(|idx| keep.iter().map(|&s| idx[s]).collect())
            .collect();
        return SimNode { dims, support };
    }
    let (u, v) = (&sim[&edge.a.node], &sim[&edge.b.node]);
    let (su, sv) = (edge.a.slot, edge.b.slot);
    let u_keep: Vec<usize> = (0..u.dims.len()).filter(|&s| s != su).collect();
    let v_keep: Vec<usize> = (0..v.dims.len()).filter(|&s| s != sv).collect();
    let mut dims: Vec<usize> = u_keep.iter().map(|&s| u.dims[s]).collect();
    dims.extend(v_keep.iter().map(|&s| v.dims[s]));
    let mut by_value: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for iu in &u.support {
        by_value
            .entry(iu[su])
            .or_default()
            .push(u_keep.iter().map(|&s| iu[s]).collect());
    }
    let mut support = BTreeSet::new();
    for iv in &v.support {
        let Some(lefts) = by_value.get(&iv[sv]) else {
            continue;
        };
        let rest_v: Vec<usize> = v_keep.iter().map(|&s| iv[s]).collect();
        for rest_u in lefts {
            let mut idx = rest_u.clone();
            idx.extend_from_slice(&rest_v);
            support.insert(idx);
        }
    }
    SimNode { dims, support }
}

fn apply_merge(
    sim: &mut BTreeMap<NodeId, SimNode>,
    edges: &mut BTreeMap<EdgeId, Edge>,
    edge: Edge,
    merged: SimNode,
) {
    let keep_id = edge.a.node;
    if edge.a.node == edge.b.node {
        let (s1, s2) = (edge.a.slot, edge.b.slot);
        for e in edges.values_mut() {
            let remap = |end: SlotRef| {
                if end.node != keep_id {
                    return end;
                }
                let shift = (end.slot > s1) as usize + (end.slot > s2) as usize;
                SlotRef::new(end.node, end.slot - shift)
            };
            *e = Edge::new(remap(e.a), remap(e.b));
        }
    } else {
        let u_arity = sim[&edge.a.node].dims.len();
        let (su, sv) = (edge.a.slot, edge.b.slot);
        let u_offset = u_arity - 1;
        let v_id = edge.b.node;
        for e in edges.values_mut() {
            let remap = |end: SlotRef| {
                if end.node == keep_id {
                    SlotRef::new(keep_id, end.slot - (end.slot > su) as usize)
                } else if end.node == v_id {
                    SlotRef::new(keep_id, u_offset + end.slot - (end.slot > sv) as usize)
                } else {
                    end
                }
            };
            *e = Edge::new(remap(e.a), remap(e.b));
        }
        sim.remove(&v_id);
    }
    sim.insert(keep_id, merged);
}

/// Contracts a closed network to its exact scalar value (global scalar
/// included), using the greedy plan. The value is independent of the
/// contraction order.
pub fn contract_closed(network: &TensorNetwork) -> Result<Scalar> {
    if !network.is_closed() {
        return Err(Error::NotClosed);
    }
    let plan = plan_contraction(network);
    execute_order(network, &plan.order)
}

/// Contracts a closed network along a caller-supplied edge order, which must
/// list every virtual edge exactly once.
pub fn contract_closed_with_order(network: &TensorNetwork, order: &[EdgeId]) -> Result<Scalar> {
    if !network.is_closed() {
        return Err(Error::NotClosed);
    }
    let mut sorted: Vec<EdgeId> = order.to_vec();
    sorted.sort();
    let all: Vec<EdgeId> = network.edges().map(|(id, _)| id).collect();
    if sorted != all {
        return Err(Error::InvalidOrder);
    }
    execute_order(network, order)
}

fn execute_order(network: &TensorNetwork, order: &[EdgeId]) -> Result<Scalar> {
    let mut current = network.clone();
    for &e in order {
        current = contract_edge(&current, e)?;
    }
    let mut value = current.global_scalar().clone();
    for node in current.nodes() {
        debug_assert_eq!(node.arity(), 0, "closed network fully contracted");
        value = &value * &node.entry(&[])?;
    }
    Ok(value)
}

fn check_basis_input(network: &TensorNetwork, x: &BasisInput) -> Result<Vec<(SlotRef, usize)>> {
    let phys = network.physical_edges();
    let keys: BTreeSet<SlotRef> = x.keys().copied().collect();
    let want: BTreeSet<SlotRef> = phys.iter().copied().collect();
    if keys != want {
        let missing: Vec<String> = want.difference(&keys).map(|r| r.to_string()).collect();
        let extra: Vec<String> = keys.difference(&want).map(|r| r.to_string()).collect();
        return Err(Error::NotTotal(format!(
            "missing [{}], extraneous [{}]",
            missing.join(", "),
            extra.join(", ")
        )));
    }
    let mut pinned = Vec::with_capacity(phys.len());
    for r in phys {
        let value = x[&r];
        let node = network.node(r.node).expect("physical edge endpoint");
        let dim = node.dims()[r.slot];
        if value >= dim {
            return Err(Error::IndexOutOfRange {
                node: r.node,
                idx: vec![value],
                dims: vec![dim],
            });
        }
        pinned.push((r, value));
    }
    Ok(pinned)
}

/// Evaluates the network at a basis input: each physical edge is pinned by
/// attaching a fresh one-hot node across a new virtual edge, and the closed
/// result is contracted. There is no separate evaluation code path.
pub fn evaluate(network: &TensorNetwork, x: &BasisInput) -> Result<Scalar> {
    let pinned = check_basis_input(network, x)?;
    let pins = pinned
        .into_iter()
        .map(|(r, value)| {
            let dim = network.node(r.node).expect("endpoint").dims()[r.slot];
            (r, move |id| TensorNode::basis_vector(id, dim, value))
        })
        .collect::<Vec<_>>();
    let closed = attach_pins(network, pins)?;
    contract_closed(&closed)
}

/// Evaluates the network against one exact vector per physical edge, summing
/// `prod_e v_e[x_e] * T(x)` over all basis inputs `x`. No conjugation is
/// applied to the vectors.
pub fn evaluate_vectors(network: &TensorNetwork, vectors: &VectorInput) -> Result<Scalar> {
    let phys = network.physical_edges();
    let keys: BTreeSet<SlotRef> = vectors.keys().copied().collect();
    let want: BTreeSet<SlotRef> = phys.iter().copied().collect();
    if keys != want {
        let missing: Vec<String> = want.difference(&keys).map(|r| r.to_string()).collect();
        let extra: Vec<String> = keys.difference(&want).map(|r| r.to_string()).collect();
        return Err(Error::NotTotal(format!(
            "missing [{}], extraneous [{}]",
            missing.join(", "),
            extra.join(", ")
        )));
    }
    let mut pins = Vec::with_capacity(phys.len());
    for r in phys {
        let node = network.node(r.node).expect("physical edge endpoint");
        let dim = node.dims()[r.slot];
        let vector = &vectors[&r];
        if vector.len() != dim {
            return Err(Error::LengthMismatch {
                node: r.node,
                slot: r.slot,
                got: vector.len(),
                want: dim,
            });
        }
        let vector = vector.clone();
        pins.push((r, move |id| {
            TensorNode::from_entries(
                id,
                vec![dim],
                vector
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (vec![i], v.clone())),
            )
        }));
    }
    let closed = attach_pins(network, pins)?;
    contract_closed(&closed)
}

fn attach_pins<F>(network: &TensorNetwork, pins: Vec<(SlotRef, F)>) -> Result<TensorNetwork>
where
    F: FnOnce(NodeId) -> Result<TensorNode>,
{
    let (mut nodes, mut edges, global) = network.clone().parts();
    let mut next_node = network.next_node_id().0;
    let mut next_edge = edges.keys().next_back().map(|e| e.0 + 1).unwrap_or(0);
    for (target, make) in pins {
        let pin = make(NodeId(next_node))?;
        let pin_ref = SlotRef::new(pin.id(), 0);
        nodes.insert(pin.id(), pin);
        edges.insert(EdgeId(next_edge), Edge::new(target, pin_ref));
        next_node += 1;
        next_edge += 1;
    }
    let pinned = TensorNetwork::from_parts(nodes, edges, global);
    debug_assert!(pinned.validate().is_ok());
    Ok(pinned)
}

/// Evaluates the network by enumerating every labeling of the virtual edges
/// and summing the entry products, with `x` supplying the physical values
/// (pass `None` for a closed network). Labelings are walked depth-first in
/// edge-id order and a branch is abandoned as soon as a fully-determined node
/// reads a zero factor, which never changes the sum. This is the reference
/// evaluator: it shares no tensor-merging code with `contract_closed`.
pub fn brute_force_value(
    network: &TensorNetwork,
    x: Option<&BasisInput>,
    budget: &Budget,
) -> Result<Scalar> {
    let empty = BasisInput::new();
    let pinned = check_basis_input(network, x.unwrap_or(&empty))?;
    let phys_value: BTreeMap<SlotRef, usize> = pinned.into_iter().collect();

    let edge_list: Vec<(EdgeId, Edge, usize)> = network
        .edges()
        .map(|(id, e)| (id, *e, network.bond_dim(id).expect("validated edge")))
        .collect();
    let mut space: u128 = 1;
    for (_, _, d) in &edge_list {
        space = space.saturating_mul(*d as u128);
    }
    if space > budget.max_labelings as u128 {
        return Err(Error::TooLarge {
            what: "labeling space",
            size: space,
            limit: budget.max_labelings as u128,
        });
    }
    // For every node: where each slot reads its value from, and the first
    // depth at which the node is fully determined.
    enum Src {
        Phys(usize),
        Lab(usize),
    }
    let nodes: Vec<&TensorNode> = network.nodes().collect();
    let mut slot_src: Vec<Vec<Src>> = Vec::with_capacity(nodes.len());
    let mut ready_at: Vec<Vec<usize>> = vec![Vec::new(); edge_list.len() + 1];
    for (ni, node) in nodes.iter().enumerate() {
        let mut srcs = Vec::with_capacity(node.arity());
        let mut depth = 0usize;
        for slot in 0..node.arity() {
            let r = SlotRef::new(node.id(), slot);
            if let Some(&v) = phys_value.get(&r) {
                srcs.push(Src::Phys(v));
            } else {
                let pos = edge_list
                    .iter()
                    .position(|(_, e, _)| e.a == r || e.b == r)
                    .expect("covered slot");
                srcs.push(Src::Lab(pos));
                depth = depth.max(pos + 1);
            }
        }
        slot_src.push(srcs);
        ready_at[depth].push(ni);
    }

    let lookup = |ni: usize, labels: &[usize]| -> Option<Scalar> {
        let idx: Vec<usize> = slot_src[ni]
            .iter()
            .map(|s| match s {
                Src::Phys(v) => *v,
                Src::Lab(pos) => labels[*pos],
            })
            .collect();
        nodes[ni].get(&idx).cloned()
    };

    let mut labels = vec![0usize; edge_list.len()];
    let mut start = Scalar::one();
    for &ni in &ready_at[0] {
        match lookup(ni, &labels) {
            Some(v) => start *= v,
            None => return Ok(Scalar::zero()),
        }
    }

    fn descend(
        depth: usize,
        partial: Scalar,
        labels: &mut Vec<usize>,
        edge_list: &[(EdgeId, Edge, usize)],
        ready_at: &[Vec<usize>],
        lookup: &impl Fn(usize, &[usize]) -> Option<Scalar>,
        total: &mut Scalar,
    ) {
        if depth == edge_list.len() {
            *total += partial;
            return;
        }
        let dim = edge_list[depth].2;
        'values: for value in 0..dim {
            labels[depth] = value;
            let mut product = partial.clone();
            for &ni in &ready_at[depth + 1] {
                match lookup(ni, labels) {
                    Some(v) => product *= v,
                    None => continue 'values,
                }
            }
            descend(depth + 1, product, labels, edge_list, ready_at, lookup, total);
        }
    }

    let mut total = Scalar::zero();
    descend(
        0,
        start,
        &mut labels,
        &edge_list,
        &ready_at,
        &lookup,
        &mut total,
    );
    Ok(&total * network.global_scalar())
}
