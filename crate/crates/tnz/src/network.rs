//! Tensor networks with ordered slots and exact entries.
//!
//! A node is a multi-dimensional array with an ordered list of slots; an edge
//! joins two distinct (node, slot) endpoints and forces their dimensions to
//! agree. Slots left unpaired are the network's physical (open) edges. A
//! network with no physical edges is closed and contracts to a single scalar,
//! which is always multiplied by the network-level `global_scalar`.
//!
//! Entries are stored sparsely as multi-index -> scalar with exact zeros
//! omitted, so "absent" and "zero" are the same thing. Networks are validated
//! on construction and immutable afterwards; every contraction step produces a
//! new network.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Node identifier. Ids are arbitrary distinct non-negative integers chosen by
/// the caller; they survive serialisation and give every tie-break below a
/// deterministic answer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Edge identifier: the position of the edge in the list handed to
/// [`TensorNetwork::new`]. Ids are stable under contraction; contracting edge
/// `e` removes `e` and leaves every other id unchanged.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One endpoint of an edge: a slot of a node. Ordered by (node, slot).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SlotRef {
    pub node: NodeId,
    pub slot: usize,
}

impl SlotRef {
    pub fn new(node: NodeId, slot: usize) -> Self {
        SlotRef { node, slot }
    }
}

impl fmt::Display for SlotRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.node, self.slot)
    }
}

/// A virtual edge: an unordered pair of endpoints, stored in sorted order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub a: SlotRef,
    pub b: SlotRef,
}

impl Edge {
    pub fn new(a: SlotRef, b: SlotRef) -> Self {
        if a <= b {
            Edge { a, b }
        } else {
            Edge { a: b, b: a }
        }
    }

    pub fn touches(&self, node: NodeId) -> bool {
        self.a.node == node || self.b.node == node
    }
}

/// Iterator over the full multi-index space of a dimension list, in
/// lexicographic order. The empty dimension list yields exactly the empty
/// index, matching the convention that a 0-slot node holds one scalar entry.
pub fn index_space(dims: &[usize]) -> IndexSpace {
    IndexSpace {
        dims: dims.to_vec(),
        next: Some(vec![0; dims.len()]),
    }
}

pub struct IndexSpace {
    dims: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for IndexSpace {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.dims.iter().any(|&d| d == 0) {
            return None;
        }
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Odometer increment from the last slot.
        for pos in (0..self.dims.len()).rev() {
            succ[pos] += 1;
            if succ[pos] < self.dims[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

/// A single tensor: an id, per-slot dimensions, and sparse exact entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorNode {
    id: NodeId,
    dims: Vec<usize>,
    entries: BTreeMap<Vec<usize>, Scalar>,
}

impl TensorNode {
    /// A node with the given slot dimensions and no entries (the zero tensor).
    pub fn new(id: NodeId, dims: Vec<usize>) -> Self {
        TensorNode {
            id,
            dims,
            entries: BTreeMap::new(),
        }
    }

    /// A 0-slot node holding a single scalar.
    pub fn scalar(id: NodeId, value: Scalar) -> Self {
        let mut node = TensorNode::new(id, vec![]);
        node.set(vec![], value).expect("empty index is valid");
        node
    }

    /// A 1-slot node that is 1 at `value` and 0 elsewhere.
    pub fn basis_vector(id: NodeId, dim: usize, value: usize) -> Result<Self> {
        let mut node = TensorNode::new(id, vec![dim]);
        node.set(vec![value], Scalar::one())?;
        Ok(node)
    }

    /// Builds a node from an entry list, rejecting out-of-range indices and
    /// dropping exact zeros. Later duplicates overwrite earlier ones.
    pub fn from_entries(
        id: NodeId,
        dims: Vec<usize>,
        entries: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<Self> {
        let mut node = TensorNode::new(id, dims);
        for (idx, value) in entries {
            node.set(idx, value)?;
        }
        Ok(node)
    }

    /// Sets one entry. Writing an exact zero removes the entry, preserving the
    /// absent-means-zero invariant. Only available before the node is placed
    /// in a network; networks are immutable.
    pub fn set(&mut self, idx: Vec<usize>, value: Scalar) -> Result<()> {
        self.check_index(&idx)?;
        if value.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, value);
        }
        Ok(())
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.dims.len() || idx.iter().zip(&self.dims).any(|(&i, &d)| i >= d) {
            return Err(Error::IndexOutOfRange {
                node: self.id,
                idx: idx.to_vec(),
                dims: self.dims.clone(),
            });
        }
        Ok(())
    }

    pub fn id(&self) -> NodeId {
        self.id
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    /// The entry at `idx`, with absent entries read as exact zero.
    pub fn entry(&self, idx: &[usize]) -> Result<Scalar> {
        self.check_index(idx)?;
        Ok(self.entries.get(idx).cloned().unwrap_or_else(Scalar::zero))
    }

    /// Fast sparse lookup; `None` means zero. Assumes `idx` is in range.
    pub fn get(&self, idx: &[usize]) -> Option<&Scalar> {
        self.entries.get(idx)
    }

    /// Stored (necessarily non-zero) entries in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.entries.iter()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when every entry is a non-negative real.
    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(Scalar::is_nonneg_real)
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> TensorNode {
        let entries = self
            .entries
            .iter()
            .map(|(idx, v)| (idx.clone(), v.conj()))
            .collect();
        TensorNode {
            id: self.id,
            dims: self.dims.clone(),
            entries,
        }
    }

    pub(crate) fn with_id(&self, id: NodeId) -> TensorNode {
        TensorNode {
            id,
            dims: self.dims.clone(),
            entries: self.entries.clone(),
        }
    }
}

/// An immutable, validated tensor network.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorNetwork {
    nodes: BTreeMap<NodeId, TensorNode>,
    edges: BTreeMap<EdgeId, Edge>,
    global_scalar: Scalar,
}

impl TensorNetwork {
    /// Validates and freezes a network. Edge ids are assigned from the
    /// position of each pair in `edges`.
    pub fn new(
        nodes: impl IntoIterator<Item = TensorNode>,
        edges: impl IntoIterator<Item = (SlotRef, SlotRef)>,
        global_scalar: Scalar,
    ) -> Result<Self> {
        let mut node_map = BTreeMap::new();
        for node in nodes {
            let id = node.id();
            if node_map.insert(id, node).is_some() {
                return Err(Error::DuplicateNodeId(id));
            }
        }
        let edge_map: BTreeMap<EdgeId, Edge> = edges
            .into_iter()
            .enumerate()
            .map(|(i, (a, b))| (EdgeId(i), Edge::new(a, b)))
            .collect();
        let network = TensorNetwork {
            nodes: node_map,
            edges: edge_map,
            global_scalar,
        };
        network.validate()?;
        Ok(network)
    }

    /// A closed network holding only a global scalar.
    pub fn scalar_network(value: Scalar) -> Self {
        TensorNetwork::new([TensorNode::scalar(NodeId(0), value)], [], Scalar::one())
            .expect("scalar network is valid")
    }

    /// Re-checks every structural invariant. `new` has already run this;
    /// the outcome is independent of node or edge insertion order.
    pub fn validate(&self) -> Result<()> {
        for node in self.nodes.values() {
            for (slot, &d) in node.dims().iter().enumerate() {
                if d == 0 {
                    return Err(Error::InvalidDimension {
                        node: node.id(),
                        slot,
                    });
                }
            }
            for (idx, _) in node.entries() {
                node.check_index(idx)?;
            }
        }
        let mut seen: BTreeSet<SlotRef> = BTreeSet::new();
        for (&EdgeId(eidx), edge) in &self.edges {
            let mut dims = [0usize; 2];
            for (side, end) in [edge.a, edge.b].into_iter().enumerate() {
                let node = self.nodes.get(&end.node).ok_or(Error::UnknownNode {
                    edge: eidx,
                    node: end.node,
                })?;
                if end.slot >= node.arity() {
                    return Err(Error::SlotOutOfRange {
                        edge: eidx,
                        node: end.node,
                        slot: end.slot,
                        arity: node.arity(),
                    });
                }
                dims[side] = node.dims()[end.slot];
                if !seen.insert(end) {
                    return Err(Error::SlotReuse {
                        node: end.node,
                        slot: end.slot,
                    });
                }
            }
            // A slot paired with itself would already be caught by SlotReuse.
            if dims[0] != dims[1] {
                return Err(Error::DimensionMismatch {
                    edge: eidx,
                    left: dims[0],
                    right: dims[1],
                });
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> impl Iterator<Item = &TensorNode> {
        self.nodes.values()
    }

    pub fn node(&self, id: NodeId) -> Option<&TensorNode> {
        self.nodes.get(&id)
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().map(|(&id, e)| (id, e))
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn global_scalar(&self) -> &Scalar {
        &self.global_scalar
    }

    /// Same network with a different global scalar.
    pub fn with_global_scalar(&self, global_scalar: Scalar) -> Self {
        TensorNetwork {
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
            global_scalar,
        }
    }

    /// The dimension shared by both endpoints of an edge.
    pub fn bond_dim(&self, id: EdgeId) -> Result<usize> {
        let edge = self.edges.get(&id).ok_or(Error::UnknownEdge(id))?;
        let node = self
            .nodes
            .get(&edge.a.node)
            .expect("validated edge endpoint");
        Ok(node.dims()[edge.a.slot])
    }

    /// Slots not covered by any edge, sorted by (node id, slot). This order is
    /// the canonical enumeration of the open indices of the network.
    pub fn physical_edges(&self) -> Vec<SlotRef> {
        let covered: BTreeSet<SlotRef> = self
            .edges
            .values()
            .flat_map(|e| [e.a, e.b])
            .collect();
        let mut open = Vec::new();
        for node in self.nodes.values() {
            for slot in 0..node.arity() {
                let r = SlotRef::new(node.id(), slot);
                if !covered.contains(&r) {
                    open.push(r);
                }
            }
        }
        open
    }

    pub fn is_closed(&self) -> bool {
        self.physical_edges().is_empty()
    }

    /// True when every node entry is a non-negative real and the global
    /// scalar is a non-negative real.
    pub fn is_nonnegative(&self) -> bool {
        self.global_scalar.is_nonneg_real() && self.nodes.values().all(TensorNode::is_nonnegative)
    }

    /// Smallest unused node id; pinning and doubling constructions allocate
    /// fresh ids from here.
    pub fn next_node_id(&self) -> NodeId {
        NodeId(
            self.nodes
                .keys()
                .next_back()
                .map(|&NodeId(n)| n + 1)
                .unwrap_or(0),
        )
    }

    /// Edge ids incident on `node`, ascending; a self-edge appears once.
    pub fn incident_edges(&self, node: NodeId) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|(_, e)| e.touches(node))
            .map(|(&id, _)| id)
            .collect()
    }

    /// Connected components of the node set under the virtual edges, each
    /// sorted, listed by smallest member. Isolated nodes form singletons.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let ids: Vec<NodeId> = self.nodes.keys().copied().collect();
        let index: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for edge in self.edges.values() {
            let (ra, rb) = (
                find(&mut parent, index[&edge.a.node]),
                find(&mut parent, index[&edge.b.node]),
            );
            parent[ra] = rb;
        }
        let mut groups: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
        for (i, &id) in ids.iter().enumerate() {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(id);
        }
        let mut comps: Vec<Vec<NodeId>> = groups.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    pub(crate) fn parts(
        self,
    ) -> (
        BTreeMap<NodeId, TensorNode>,
        BTreeMap<EdgeId, Edge>,
        Scalar,
    ) {
        (self.nodes, self.edges, self.global_scalar)
    }

    pub(crate) fn from_parts(
        nodes: BTreeMap<NodeId, TensorNode>,
        edges: BTreeMap<EdgeId, Edge>,
        global_scalar: Scalar,
    ) -> Self {
        TensorNetwork {
            nodes,
            edges,
            global_scalar,
        }
    }
}
