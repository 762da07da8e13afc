//! Certificates and decision procedures: positive basis witnesses for
//! non-negative networks, injectivity analysis of node partitions, witness
//! extraction by peeling, and threshold-oracle-driven counting.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::contract::{
    contract_closed, contract_closed_with_order, evaluate, plan_contraction, BasisInput,
    VectorInput,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::network::{index_space, EdgeId, NodeId, SlotRef, TensorNetwork, TensorNode};
use crate::reduce::{add_scalar, compile_sharp2sat, Cnf2, GtnzInstance};
use crate::scalar::Scalar;

/// A basis point of a non-negative network: one value per physical edge plus
/// one label per virtual edge. Valid when every node entry it selects is
/// positive (so the product term it names is positive).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NonNegWitness {
    pub x: BasisInput,
    pub labeling: BTreeMap<EdgeId, usize>,
}

/// Checks a claimed witness against a non-negative network: the witness must
/// assign exactly the physical edges and exactly the virtual edges, all in
/// range, and the selected product (including the global scalar) must be
/// strictly positive. Structural defects are errors; a well-formed witness
/// that selects a zero product returns `Ok(false)`.
pub fn verify_nonneg_witness(network: &TensorNetwork, witness: &NonNegWitness) -> Result<bool> {
    if !network.is_nonnegative() {
        return Err(Error::NotNonNegative);
    }
    let phys: BTreeSet<SlotRef> = network.physical_edges().into_iter().collect();
    for slot in witness.x.keys() {
        if !phys.contains(slot) {
            return Err(Error::InvalidWitness(format!(
                "({}, {}) is not a physical edge",
                slot.node, slot.slot
            )));
        }
    }
    let mut slot_value: BTreeMap<SlotRef, usize> = BTreeMap::new();
    for slot in &phys {
        let &value = witness.x.get(slot).ok_or_else(|| {
            Error::InvalidWitness(format!(
                "physical edge ({}, {}) is unassigned",
                slot.node, slot.slot
            ))
        })?;
        let dim = slot_dim(network, *slot);
        if value >= dim {
            return Err(Error::InvalidWitness(format!(
                "value {} at ({}, {}) exceeds dimension {}",
                value, slot.node, slot.slot, dim
            )));
        }
        slot_value.insert(*slot, value);
    }
    for id in witness.labeling.keys() {
        if network.edge(*id).is_none() {
            return Err(Error::InvalidWitness(format!("no edge with id {}", id)));
        }
    }
    for (id, edge) in network.edges() {
        let &value = witness
            .labeling
            .get(&id)
            .ok_or_else(|| Error::InvalidWitness(format!("edge {} is unlabeled", id)))?;
        let dim = network.bond_dim(id).expect("edge exists");
        if value >= dim {
            return Err(Error::InvalidWitness(format!(
                "label {} on edge {} exceeds dimension {}",
                value, id, dim
            )));
        }
        slot_value.insert(edge.a, value);
        slot_value.insert(edge.b, value);
    }

    let mut product = network.global_scalar().clone();
    for node in network.nodes() {
        let idx: Vec<usize> = (0..node.dims().len())
            .map(|s| slot_value[&SlotRef::new(node.id(), s)])
            .collect();
        product = &product * &node.entry(&idx)?;
    }
    Ok(product.is_positive_real())
}

/// Searches a non-negative network for a positive basis point: values for the
/// physical edges (in `(node, slot)` order) then labels for the virtual edges
/// (by smaller endpoint), tried smallest-first, backtracking as soon as a
/// fully-determined node entry is zero. Returns the first witness found, or
/// `None` when the network is identically zero on every product term.
///
/// The full space (product of physical dimensions and bond dimensions) must
/// fit inside `budget.max_labelings`.
pub fn search_nonneg_witness(
    network: &TensorNetwork,
    budget: &Budget,
) -> Result<Option<NonNegWitness>> {
    if !network.is_nonnegative() {
        return Err(Error::NotNonNegative);
    }
    if network.global_scalar().is_zero() {
        return Ok(None);
    }

    enum Var {
        Phys(SlotRef, usize),
        Virt(EdgeId, SlotRef, SlotRef, usize),
    }
    let mut vars: Vec<Var> = network
        .physical_edges()
        .into_iter()
        .map(|slot| Var::Phys(slot, slot_dim(network, slot)))
        .collect();
    let mut virt: Vec<(EdgeId, SlotRef, SlotRef, usize)> = network
        .edges()
        .map(|(id, e)| (id, e.a, e.b, network.bond_dim(id).expect("edge exists")))
        .collect();
    virt.sort_by_key(|&(_, a, _, _)| a);
    vars.extend(
        virt.into_iter()
            .map(|(id, a, b, d)| Var::Virt(id, a, b, d)),
    );

    let mut space: u128 = 1;
    for var in &vars {
        let d = match var {
            Var::Phys(_, d) | Var::Virt(_, _, _, d) => *d,
        };
        space = space.saturating_mul(d as u128);
    }
    if space > budget.max_labelings as u128 {
        return Err(Error::TooLarge {
            what: "witness search space",
            size: space,
            limit: budget.max_labelings as u128,
        });
    }

    let ids: Vec<NodeId> = network.node_ids().collect();
    let node_pos: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut idx: Vec<Vec<usize>> = ids
        .iter()
        .map(|&n| vec![0; network.node(n).expect("node").dims().len()])
        .collect();
    let mut missing: Vec<usize> = idx.iter().map(Vec::len).collect();
    // Isolated scalar nodes are fully determined before any choice is made.
    for (i, &n) in ids.iter().enumerate() {
        if missing[i] == 0 && network.node(n).expect("node").entry(&[])?.is_zero() {
            return Ok(None);
        }
    }

    fn descend(
        network: &TensorNetwork,
        vars: &[Var],
        depth: usize,
        node_pos: &BTreeMap<NodeId, usize>,
        ids: &[NodeId],
        idx: &mut Vec<Vec<usize>>,
        missing: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if depth == vars.len() {
            return true;
        }
        let touched: Vec<SlotRef> = match &vars[depth] {
            Var::Phys(slot, _) => vec![*slot],
            Var::Virt(_, a, b, _) => vec![*a, *b],
        };
        let dim = match &vars[depth] {
            Var::Phys(_, d) | Var::Virt(_, _, _, d) => *d,
        };
        for value in 0..dim {
            for slot in &touched {
                let p = node_pos[&slot.node];
                idx[p][slot.slot] = value;
                missing[p] -= 1;
            }
            let mut ok = true;
            for slot in &touched {
                let p = node_pos[&slot.node];
                if missing[p] == 0 {
                    let node = network.node(ids[p]).expect("node");
                    if node.get(&idx[p]).is_none() {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                chosen.push(value);
                if descend(network, vars, depth + 1, node_pos, ids, idx, missing, chosen) {
                    return true;
                }
                chosen.pop();
            }
            for slot in &touched {
                missing[node_pos[&slot.node]] += 1;
            }
        }
        false
    }

    let mut chosen = Vec::with_capacity(vars.len());
    if !descend(
        network,
        &vars,
        0,
        &node_pos,
        &ids,
        &mut idx,
        &mut missing,
        &mut chosen,
    ) {
        return Ok(None);
    }

    let mut x = BasisInput::new();
    let mut labeling = BTreeMap::new();
    for (var, &value) in vars.iter().zip(&chosen) {
        match var {
            Var::Phys(slot, _) => {
                x.insert(*slot, value);
            }
            Var::Virt(id, _, _, _) => {
                labeling.insert(*id, value);
            }
        }
    }
    Ok(Some(NonNegWitness { x, labeling }))
}

fn slot_dim(network: &TensorNetwork, slot: SlotRef) -> usize {
    network.node(slot.node).expect("node exists").dims()[slot.slot]
}

/// A grouping of the network's nodes into candidate injective blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InjectivePartition {
    blocks: Vec<Vec<NodeId>>,
}

impl InjectivePartition {
    pub fn new(blocks: Vec<Vec<NodeId>>) -> Self {
        InjectivePartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<NodeId>] {
        &self.blocks
    }
}

fn validate_partition(network: &TensorNetwork, partition: &InjectivePartition) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (i, block) in partition.blocks().iter().enumerate() {
        if block.is_empty() {
            return Err(Error::NotAPartition(format!("block {} is empty", i)));
        }
        for &id in block {
            if network.node(id).is_none() {
                return Err(Error::NotAPartition(format!(
                    "block {} names unknown node {}",
                    i, id
                )));
            }
            if !seen.insert(id) {
                return Err(Error::NotAPartition(format!(
                    "node {} appears more than once",
                    id
                )));
            }
        }
    }
    for id in network.node_ids() {
        if !seen.contains(&id) {
            return Err(Error::NotAPartition(format!("node {} is unassigned", id)));
        }
    }

    for (i, block) in partition.blocks().iter().enumerate() {
        let members: BTreeSet<NodeId> = block.iter().copied().collect();
        // Connectivity via internal edges only.
        let mut root: BTreeMap<NodeId, NodeId> = members.iter().map(|&n| (n, n)).collect();
        fn find(root: &mut BTreeMap<NodeId, NodeId>, mut n: NodeId) -> NodeId {
            while root[&n] != n {
                let up = root[&root[&n]];
                root.insert(n, up);
                n = up;
            }
            n
        }
        for (_, e) in network.edges() {
            if members.contains(&e.a.node) && members.contains(&e.b.node) {
                let (ra, rb) = (find(&mut root, e.a.node), find(&mut root, e.b.node));
                root.insert(ra, rb);
            }
        }
        let first = find(&mut root, *block.first().expect("non-empty"));
        for &n in &members {
            if find(&mut root, n) != first {
                return Err(Error::DisconnectedBlock(i));
            }
        }

        let phys: BTreeSet<SlotRef> = network.physical_edges().into_iter().collect();
        let has_phys = members.iter().any(|&n| {
            let node = network.node(n).expect("checked");
            (0..node.dims().len()).any(|s| phys.contains(&SlotRef::new(n, s)))
        });
        if !has_phys {
            return Err(Error::NoPhysicalEdge(i));
        }
    }
    Ok(())
}

/// One block's linear map from boundary labelings to physical amplitudes.
struct BlockMap {
    phys: Vec<SlotRef>,
    phys_dims: Vec<usize>,
    /// Rows indexed by physical labelings, columns by boundary labelings,
    /// both lexicographic (boundary edges in ascending id order).
    matrix: Matrix,
}

fn block_map(
    network: &TensorNetwork,
    block: &[NodeId],
    budget: &Budget,
) -> Result<BlockMap> {
    let members: BTreeSet<NodeId> = block.iter().copied().collect();
    let nodes: Vec<TensorNode> = members
        .iter()
        .map(|&id| network.node(id).expect("validated").clone())
        .collect();
    let mut internal = Vec::new();
    let mut boundary: Vec<(EdgeId, SlotRef)> = Vec::new();
    for (id, e) in network.edges() {
        match (members.contains(&e.a.node), members.contains(&e.b.node)) {
            (true, true) => internal.push((e.a, e.b)),
            (true, false) => boundary.push((id, e.a)),
            (false, true) => boundary.push((id, e.b)),
            (false, false) => {}
        }
    }
    let sub = TensorNetwork::new(nodes, internal, Scalar::one())?;
    let boundary_slots: BTreeSet<SlotRef> = boundary.iter().map(|&(_, s)| s).collect();
    let phys: Vec<SlotRef> = sub
        .physical_edges()
        .into_iter()
        .filter(|s| !boundary_slots.contains(s))
        .collect();
    let phys_dims: Vec<usize> = phys.iter().map(|&s| slot_dim(network, s)).collect();
    let boundary_dims: Vec<usize> = boundary
        .iter()
        .map(|&(id, _)| network.bond_dim(id).expect("edge exists"))
        .collect();

    let rows: u128 = phys_dims.iter().map(|&d| d as u128).product();
    let cols: u128 = boundary_dims.iter().map(|&d| d as u128).product();
    let cells = rows.saturating_mul(cols);
    if cells > budget.max_block_cells as u128 {
        return Err(Error::TooLarge {
            what: "block map cells",
            size: cells,
            limit: budget.max_block_cells as u128,
        });
    }

    let mut matrix = Matrix::zero(rows as usize, cols as usize);
    for (ri, p) in index_space(&phys_dims).enumerate() {
        for (ci, b) in index_space(&boundary_dims).enumerate() {
            let mut input: BasisInput = phys.iter().copied().zip(p.iter().copied()).collect();
            for (&(_, slot), &v) in boundary.iter().zip(&b) {
                input.insert(slot, v);
            }
            matrix.set(ri, ci, evaluate(&sub, &input)?);
        }
    }
    Ok(BlockMap {
        phys,
        phys_dims,
        matrix,
    })
}

/// True when every block's map from boundary labelings to physical
/// amplitudes has full column rank, computed exactly. Blocks with no
/// boundary (the whole-network block) reduce to a single column, so there
/// the test is simply that the block is not identically zero.
pub fn check_injective(
    network: &TensorNetwork,
    partition: &InjectivePartition,
    budget: &Budget,
) -> Result<bool> {
    validate_partition(network, partition)?;
    for block in partition.blocks() {
        let data = block_map(network, block, budget)?;
        if data.matrix.rank() != data.matrix.cols() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds a product-form certificate of injectivity: one vector per physical
/// edge such that pairing the network with them (no conjugation) gives
/// exactly 1. Each block's vectors reproduce the all-zeros boundary
/// indicator; the search fixes one-hot vectors on all but one physical slot
/// of the block and solves exactly for the remaining vector, scanning free
/// slots and one-hot choices in ascending order. Blocks whose solution space
/// contains no product vector are reported via `NoProductCertificate`; for a
/// block with a single physical edge the search is complete, so that error
/// can only arise for multi-edge blocks.
pub fn injective_certificate(
    network: &TensorNetwork,
    partition: &InjectivePartition,
    budget: &Budget,
) -> Result<VectorInput> {
    validate_partition(network, partition)?;
    if network.global_scalar().is_zero() {
        // The represented vector is zero, so no functional can pair to 1.
        return Err(Error::NotInjective);
    }
    let mut result = VectorInput::new();
    for (bi, block) in partition.blocks().iter().enumerate() {
        let data = block_map(network, block, budget)?;
        if data.matrix.rank() != data.matrix.cols() {
            return Err(Error::NotInjective);
        }
        let mut vectors =
            product_certificate(&data).ok_or(Error::NoProductCertificate(bi))?;
        if bi == 0 {
            // Fold the inverse global scalar into the first block so the
            // final pairing is exactly 1.
            let inv = network.global_scalar().inverse();
            for value in &mut vectors[0] {
                *value = &*value * &inv;
            }
        }
        for (slot, vector) in data.phys.iter().zip(vectors) {
            result.insert(*slot, vector);
        }
    }
    Ok(result)
}

/// Searches for per-slot vectors whose product maps the block matrix onto
/// the all-zeros boundary indicator. Returns one vector per physical slot of
/// the block, in `BlockMap::phys` order.
fn product_certificate(data: &BlockMap) -> Option<Vec<Vec<Scalar>>> {
    let m = data.phys.len();
    let cols = data.matrix.cols();
    let mut rhs = vec![Scalar::zero(); cols];
    rhs[0] = Scalar::one();
    for j_star in 0..m {
        let other_dims: Vec<usize> = data
            .phys_dims
            .iter()
            .enumerate()
            .filter_map(|(j, &d)| (j != j_star).then_some(d))
            .collect();
        for a in index_space(&other_dims) {
            let d = data.phys_dims[j_star];
            let mut system = Matrix::zero(cols, d);
            for v in 0..d {
                let mut full: Vec<usize> = a.clone();
                full.insert(j_star, v);
                let row = row_index(&full, &data.phys_dims);
                for b in 0..cols {
                    system.set(b, v, data.matrix.get(row, b).clone());
                }
            }
            if let Some(phi) = system.solve(&rhs) {
                let mut vectors = Vec::with_capacity(m);
                let mut a_iter = a.iter();
                for (j, &dim) in data.phys_dims.iter().enumerate() {
                    if j == j_star {
                        vectors.push(phi.clone());
                    } else {
                        let &value = a_iter.next().expect("one per other slot");
                        let mut one_hot = vec![Scalar::zero(); dim];
                        one_hot[value] = Scalar::one();
                        vectors.push(one_hot);
                    }
                }
                return Some(vectors);
            }
        }
    }
    None
}

fn row_index(values: &[usize], dims: &[usize]) -> usize {
    let mut out = 0;
    for (&v, &d) in values.iter().zip(dims) {
        out = out * d + v;
    }
    out
}

/// Extracts a basis point with non-zero amplitude from an open network by
/// peeling: pair the network with its own conjugate to get the exact norm
/// square, return `None` if that is zero, and otherwise fix the physical
/// edges one at a time (in `(node, slot)` order, smallest value first),
/// keeping each value whose restricted norm square stays non-zero. At most
/// the sum of the physical dimensions many closed contractions are run, each
/// checked against `budget.max_labelings` via its contraction plan estimate.
pub fn basis_witness_peel(
    network: &TensorNetwork,
    budget: &Budget,
) -> Result<Option<BasisInput>> {
    let mut fixed = BasisInput::new();
    if doubled_value(network, &fixed, budget)?.is_zero() {
        return Ok(None);
    }
    for slot in network.physical_edges() {
        let dim = slot_dim(network, slot);
        let mut found = false;
        for value in 0..dim {
            fixed.insert(slot, value);
            if !doubled_value(network, &fixed, budget)?.is_zero() {
                found = true;
                break;
            }
            fixed.remove(&slot);
        }
        // The previous norm square was a sum of these restrictions, each a
        // non-negative rational, so a non-zero sum has a non-zero part.
        assert!(found, "peeling invariant violated");
    }
    Ok(Some(fixed))
}

/// Exact norm square of the network with the `fixed` physical edges pinned:
/// the network paired against its conjugate copy, remaining physical edges
/// joined pairwise.
fn doubled_value(
    network: &TensorNetwork,
    fixed: &BasisInput,
    budget: &Budget,
) -> Result<Scalar> {
    let offset = network.next_node_id().0;
    let mirror = |slot: SlotRef| SlotRef::new(NodeId(offset + slot.node.0), slot.slot);

    let mut nodes: Vec<TensorNode> = network.nodes().cloned().collect();
    nodes.extend(
        network
            .nodes()
            .map(|n| n.conjugate().with_id(NodeId(offset + n.id().0))),
    );
    let mut edges: Vec<(SlotRef, SlotRef)> = network.edges().map(|(_, e)| (e.a, e.b)).collect();
    edges.extend(network.edges().map(|(_, e)| (mirror(e.a), mirror(e.b))));

    let mut pin = 2 * offset;
    for slot in network.physical_edges() {
        match fixed.get(&slot) {
            None => edges.push((slot, mirror(slot))),
            Some(&value) => {
                let dim = slot_dim(network, slot);
                for target in [slot, mirror(slot)] {
                    let id = NodeId(pin);
                    pin += 1;
                    nodes.push(TensorNode::basis_vector(id, dim, value)?);
                    edges.push((target, SlotRef::new(id, 0)));
                }
            }
        }
    }

    let global = network.global_scalar() * &network.global_scalar().conj();
    let doubled = TensorNetwork::new(nodes, edges, global)?;
    let plan = plan_contraction(&doubled);
    if plan.estimated_max_intermediate_entries > budget.max_labelings {
        return Err(Error::TooLarge {
            what: "peeling contraction estimate",
            size: plan.estimated_max_intermediate_entries as u128,
            limit: budget.max_labelings as u128,
        });
    }
    contract_closed_with_order(&doubled, &plan.order)
}

/// A decision procedure for thresholded non-zero queries. Implementations
/// must answer correctly on instances satisfying the promise (some value at
/// least alpha in magnitude, or all values at most beta).
pub trait TnzOracle {
    fn decide(&self, instance: &GtnzInstance) -> Result<bool>;
}

/// Decides by exact evaluation: a closed network is contracted outright and
/// an open one is scanned over all basis points within the labeling budget.
/// Answers are exact, so the promise gap is not needed here; the answer is
/// "some value has magnitude at least alpha".
pub struct ExactOracle {
    pub budget: Budget,
}

impl ExactOracle {
    pub fn new(budget: Budget) -> Self {
        ExactOracle { budget }
    }
}

impl Default for ExactOracle {
    fn default() -> Self {
        ExactOracle {
            budget: Budget::default(),
        }
    }
}

impl TnzOracle for ExactOracle {
    fn decide(&self, instance: &GtnzInstance) -> Result<bool> {
        let network = &instance.network;
        let alpha_sq = instance.alpha() * instance.alpha();
        if network.is_closed() {
            let value = contract_closed(network)?;
            return Ok(value.abs_sq() >= alpha_sq);
        }
        let phys = network.physical_edges();
        let dims: Vec<usize> = phys.iter().map(|&s| slot_dim(network, s)).collect();
        let space: u128 = dims.iter().map(|&d| d as u128).product();
        if space > self.budget.max_labelings as u128 {
            return Err(Error::TooLarge {
                what: "basis scan space",
                size: space,
                limit: self.budget.max_labelings as u128,
            });
        }
        for point in index_space(&dims) {
            let x: BasisInput = phys.iter().copied().zip(point).collect();
            if evaluate(network, &x)?.abs_sq() >= alpha_sq {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn formula_space(formula: &Cnf2) -> Result<u64> {
    let t = formula.num_vars();
    if t > 62 {
        return Err(Error::TooLarge {
            what: "variable count",
            size: t as u128,
            limit: 62,
        });
    }
    Ok(1u64 << t)
}

fn check_k(k: u64, total: u64) -> Result<()> {
    if k == 0 || k > total {
        return Err(Error::OutOfRange {
            what: "threshold k",
            got: k as u128,
            range: format!("1..={}", total),
        });
    }
    Ok(())
}

/// Decides whether the formula has at least `k` satisfying assignments by
/// scanning candidate counts: for each k' from k upward the model-count
/// network is shifted by -k' and the oracle is asked whether the result is
/// non-zero (alpha 1, beta 0; exact integer values make the promise hold).
/// The first NO proves the count equals that k', hence is at least k. The
/// scan runs to 2^t by default; `loop_cap` bounds the number of candidates
/// tried, in which case exhausting the cap returns `Ok(false)`.
pub fn decide_at_least_k(
    formula: &Cnf2,
    k: u64,
    oracle: &dyn TnzOracle,
    loop_cap: Option<u64>,
) -> Result<bool> {
    let total = formula_space(formula)?;
    check_k(k, total)?;
    let hi = match loop_cap {
        None => total,
        Some(cap) => total.min(k.saturating_add(cap).saturating_sub(1)),
    };
    let base = compile_sharp2sat(formula);
    for candidate in k..=hi {
        let shifted = add_scalar(&base, &Scalar::from_int(-(candidate as i64)))?;
        let instance =
            GtnzInstance::new(shifted, BigRational::one(), BigRational::zero())?;
        if !oracle.decide(&instance)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Decides whether the formula has at least `k` satisfying assignments with
/// a single oracle query: the model-count network is scaled by 2^t / k, so a
/// count of at least k gives a value of at least alpha = 2^t while a count
/// below k stays at or below beta = 2^t (k-1)/k, a gap of at least 1.
pub fn decide_at_least_k_threshold(
    formula: &Cnf2,
    k: u64,
    oracle: &dyn TnzOracle,
) -> Result<bool> {
    let total = formula_space(formula)?;
    check_k(k, total)?;
    let two_t = BigInt::from(total);
    let scale = BigRational::new(two_t.clone(), BigInt::from(k));
    let network =
        compile_sharp2sat(formula).with_global_scalar(Scalar::from_rational(scale));
    let alpha = BigRational::from_integer(two_t.clone());
    let beta = BigRational::new(two_t * BigInt::from(k - 1), BigInt::from(k));
    oracle.decide(&GtnzInstance::new(network, alpha, beta)?)
}

/// Computes the exact number of satisfying assignments using at most t+1
/// single-query threshold decisions (binary search over 0..=2^t: the
/// candidate range starts at 2^t + 1 values and halves every query).
pub fn count_via_gtnz(formula: &Cnf2, oracle: &dyn TnzOracle) -> Result<u64> {
    let total = formula_space(formula)?;
    let mut lo = 0u64;
    let mut hi = total;
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if decide_at_least_k_threshold(formula, mid, oracle)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}
