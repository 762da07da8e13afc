//! Compilers from other problems into closed or open tensor networks.
//!
//! Each compiler is exact: the contraction value of the output network equals
//! the combinatorial quantity it encodes (model count, proper coloring count,
//! shifted scalar, projected amplitude), with no normalisation slack. All
//! constructions are deterministic: node ids, slot layouts, and edge order
//! depend only on the input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::contract::contract_closed;
use crate::error::{Error, Result};
use crate::hamiltonian::{HamiltonianInstance, ProjectorGuess};
use crate::network::{index_space, NodeId, SlotRef, TensorNetwork, TensorNode};
use crate::scalar::Scalar;

/// A literal of a 2-CNF formula: a variable (0-based) with a polarity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: usize, positive: bool) -> Self {
        Literal { var, positive }
    }

    pub fn satisfied_by(&self, value: usize) -> bool {
        (value == 1) == self.positive
    }
}

/// A CNF formula whose clauses hold exactly two literals. Duplicate literals
/// and repeated variables inside a clause are allowed; `(x or x)` and
/// `(x or not x)` are both valid clauses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cnf2 {
    num_vars: usize,
    clauses: Vec<[Literal; 2]>,
}

impl Cnf2 {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 2]>) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.var >= num_vars {
                    return Err(Error::InvalidFormula(format!(
                        "clause {} uses variable {} but the formula has {} variables",
                        i, lit.var, num_vars
                    )));
                }
            }
        }
        Ok(Cnf2 { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 2]] {
        &self.clauses
    }

    /// True when `assignment` (one value in {0,1} per variable) satisfies
    /// every clause.
    pub fn satisfied_by(&self, assignment: &[usize]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|lit| lit.satisfied_by(assignment[lit.var]))
        })
    }
}

/// An undirected simple graph on vertices `0..num_vertices`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Validates no loops, no duplicate edges, endpoints in range. Edge order
    /// is preserved; each pair is stored with the smaller endpoint first.
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        let mut seen = std::collections::BTreeSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge {} endpoint out of range for {} vertices",
                    i, num_vertices
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {} is a loop at {}", i, u)));
            }
            let pair = (u.min(v), u.max(v));
            if !seen.insert(pair) {
                return Err(Error::InvalidGraph(format!(
                    "edge {} duplicates ({}, {})",
                    i, pair.0, pair.1
                )));
            }
            normalized.push(pair);
        }
        Ok(SimpleGraph {
            num_vertices,
            edges: normalized,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }
}

/// A thresholded non-zero query: is some network value at least `alpha` in
/// magnitude, under the promise that otherwise every value is at most `beta`?
#[derive(Clone, Debug)]
pub struct GtnzInstance {
    pub network: TensorNetwork,
    alpha: BigRational,
    beta: BigRational,
}

impl GtnzInstance {
    /// Requires `alpha >= beta >= 0` and `alpha - beta >= 1`.
    pub fn new(network: TensorNetwork, alpha: BigRational, beta: BigRational) -> Result<Self> {
        if beta.is_negative() {
            return Err(Error::BadThresholds(format!("beta = {} is negative", beta)));
        }
        if &alpha - &beta < BigRational::one() {
            return Err(Error::BadThresholds(format!(
                "alpha - beta = {} is below 1",
                &alpha - &beta
            )));
        }
        Ok(GtnzInstance {
            network,
            alpha,
            beta,
        })
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }
}

/// Compiles a 2-CNF formula into a closed network whose contraction value is
/// exactly the number of satisfying assignments.
///
/// Each variable becomes an equality node whose degree is the number of its
/// literal occurrences (entries 1 at all-zeros and all-ones); each clause
/// becomes a 2-slot node that is 1 on every satisfying pair of variable
/// values. A variable with no occurrences becomes an isolated 0-slot node
/// with entry 2, keeping the factor it contributes to the count.
pub fn compile_sharp2sat(formula: &Cnf2) -> TensorNetwork {
    let t = formula.num_vars();
    let mut occurrences = vec![0usize; t];
    for clause in formula.clauses() {
        for lit in clause {
            occurrences[lit.var] += 1;
        }
    }

    let mut nodes = Vec::with_capacity(t + formula.clauses().len());
    for v in 0..t {
        let deg = occurrences[v];
        let node = if deg == 0 {
            TensorNode::scalar(NodeId(v as u64), Scalar::from_int(2))
        } else {
            TensorNode::from_entries(
                NodeId(v as u64),
                vec![2; deg],
                [(vec![0; deg], Scalar::one()), (vec![1; deg], Scalar::one())],
            )
            .expect("equality entries in range")
        };
        nodes.push(node);
    }

    let mut edges = Vec::new();
    let mut next_slot = vec![0usize; t];
    for (j, clause) in formula.clauses().iter().enumerate() {
        let id = NodeId((t + j) as u64);
        let entries = index_space(&[2, 2]).filter_map(|idx| {
            let satisfied = clause[0].satisfied_by(idx[0]) || clause[1].satisfied_by(idx[1]);
            satisfied.then(|| (idx, Scalar::one()))
        });
        nodes.push(TensorNode::from_entries(id, vec![2, 2], entries).expect("in range"));
        for (pos, lit) in clause.iter().enumerate() {
            let var_slot = next_slot[lit.var];
            next_slot[lit.var] += 1;
            edges.push((
                SlotRef::new(NodeId(lit.var as u64), var_slot),
                SlotRef::new(id, pos),
            ));
        }
    }

    TensorNetwork::new(nodes, edges, Scalar::one()).expect("compiled network is valid")
}

/// Rebuilds a closed network so that it contracts to exactly `M + shift`,
/// where `M` is the original value, while keeping the node count, edge count,
/// and edge structure, and growing every bond dimension by exactly one.
///
/// The new top value of each bond acts as a switch: a node whose incident
/// edges all carry old values behaves as before, a node seeing a mixture of
/// switched and unswitched edges contributes 0, and when every edge of a node
/// is switched the node outputs 1, except for one distinguished node (the
/// smallest id among nodes with an incident edge) which outputs a solved
/// constant. On a connected network with unit global scalar that constant is
/// `shift` itself; in general it is solved exactly from the values of the
/// other connected components so that the total comes out to `M + shift` even
/// when the network is disconnected.
///
/// Degenerate inputs take two special forms. A network with no edges at all
/// has its smallest node rewritten to hold `M + shift` directly (others 1,
/// global scalar 1). And when some component other than the distinguished one
/// contributes an uninvertible factor (for example a component whose value is
/// exactly -1, or a zero global scalar), those components are rewritten to
/// contribute factor 1 through their switched branch alone, again with global
/// scalar 1.
pub fn add_scalar(network: &TensorNetwork, shift: &Scalar) -> Result<TensorNetwork> {
    if network.num_nodes() == 0 {
        return Err(Error::EmptyNetwork);
    }
    if !network.is_closed() {
        return Err(Error::NotClosed);
    }

    let components = network.components();
    let raw: Vec<Scalar> = components
        .iter()
        .map(|comp| component_value(network, comp))
        .collect::<Result<_>>()?;
    let mut m_value = network.global_scalar().clone();
    for value in &raw {
        m_value = &m_value * value;
    }
    let target = &m_value + shift;

    if network.num_edges() == 0 {
        // Every node is an isolated scalar; rewrite them directly.
        let (nodes, edges, _) = network.clone().parts();
        let smallest = *nodes.keys().next().expect("non-empty");
        let nodes = nodes
            .into_keys()
            .map(|id| {
                let value = if id == smallest {
                    target.clone()
                } else {
                    Scalar::one()
                };
                (id, TensorNode::scalar(id, value))
            })
            .collect();
        return Ok(TensorNetwork::from_parts(nodes, edges, Scalar::one()));
    }

    let vstar = network
        .nodes()
        .map(TensorNode::id)
        .find(|&id| !network.incident_edges(id).is_empty())
        .expect("network has an edge");
    let c1 = components
        .iter()
        .position(|comp| comp.contains(&vstar))
        .expect("vstar is in a component");
    let comp_has_edges: Vec<bool> = components
        .iter()
        .map(|comp| {
            comp.iter()
                .any(|&id| !network.incident_edges(id).is_empty())
        })
        .collect();

    // Factor multiplying the distinguished component in the rebuilt network:
    // the global scalar, the kept isolated scalars, and the (value + 1)
    // switch branches of the other edge components.
    let mut cofactor = network.global_scalar().clone();
    for (ci, value) in raw.iter().enumerate() {
        if ci == c1 {
            continue;
        }
        cofactor = if comp_has_edges[ci] {
            &cofactor * &(value + &Scalar::one())
        } else {
            &cofactor * value
        };
    }
    let rewrite = cofactor.is_zero();
    let switch_out = if rewrite {
        &target - &raw[c1]
    } else {
        &(&target / &cofactor) - &raw[c1]
    };
    let global = if rewrite {
        Scalar::one()
    } else {
        network.global_scalar().clone()
    };

    let comp_of: std::collections::BTreeMap<NodeId, usize> = components
        .iter()
        .enumerate()
        .flat_map(|(ci, comp)| comp.iter().map(move |&id| (id, ci)))
        .collect();

    let mut nodes = Vec::with_capacity(network.num_nodes());
    for node in network.nodes() {
        let ci = comp_of[&node.id()];
        let old_dims = node.dims().to_vec();
        let new_dims: Vec<usize> = old_dims.iter().map(|&d| d + 1).collect();
        let mut rebuilt = TensorNode::new(node.id(), new_dims);
        let in_c1 = ci == c1;
        let keep_original = in_c1 || !rewrite;
        if comp_has_edges[ci] {
            if keep_original {
                for (idx, value) in node.entries() {
                    rebuilt.set(idx.clone(), value.clone())?;
                }
            }
            let corner = old_dims.clone();
            let out = if node.id() == vstar {
                switch_out.clone()
            } else {
                Scalar::one()
            };
            rebuilt.set(corner, out)?;
        } else if keep_original {
            for (idx, value) in node.entries() {
                rebuilt.set(idx.clone(), value.clone())?;
            }
        } else {
            rebuilt.set(vec![], Scalar::one())?;
        }
        nodes.push(rebuilt);
    }

    let nodes = nodes.into_iter().map(|n| (n.id(), n)).collect();
    let (_, edges, _) = network.clone().parts();
    Ok(TensorNetwork::from_parts(nodes, edges, global))
}

/// Raw contraction value of one connected component, global scalar excluded.
fn component_value(network: &TensorNetwork, comp: &[NodeId]) -> Result<Scalar> {
    let members: std::collections::BTreeSet<NodeId> = comp.iter().copied().collect();
    let nodes: Vec<TensorNode> = comp
        .iter()
        .map(|&id| network.node(id).expect("component member").clone())
        .collect();
    let edges: Vec<(SlotRef, SlotRef)> = network
        .edges()
        .filter(|(_, e)| members.contains(&e.a.node))
        .map(|(_, e)| (e.a, e.b))
        .collect();
    let sub = TensorNetwork::new(nodes, edges, Scalar::one())?;
    contract_closed(&sub)
}

/// Compiles proper edge-coloring counting: the returned closed network
/// contracts to the number of ways to color the edges of `graph` with
/// `colors` colors so that edges sharing a vertex get distinct colors.
///
/// One node per vertex, one slot per incident edge (in edge-list order), bond
/// dimension `colors`; a node entry is 1 exactly when its incident labels are
/// pairwise distinct. A vertex of degree above `colors` yields a node with no
/// entries, forcing the count to 0.
pub fn compile_edge_coloring(graph: &SimpleGraph, colors: usize) -> Result<TensorNetwork> {
    if colors == 0 {
        return Err(Error::OutOfRange {
            what: "color count",
            got: 0,
            range: ">= 1".into(),
        });
    }
    let n = graph.num_vertices();
    let mut next_slot = vec![0usize; n];
    let mut edge_pairs = Vec::with_capacity(graph.edges().len());
    for &(u, v) in graph.edges() {
        let su = next_slot[u];
        next_slot[u] += 1;
        let sv = next_slot[v];
        next_slot[v] += 1;
        edge_pairs.push((
            SlotRef::new(NodeId(u as u64), su),
            SlotRef::new(NodeId(v as u64), sv),
        ));
    }
    let mut nodes = Vec::with_capacity(n);
    for v in 0..n {
        let deg = next_slot[v];
        let entries = distinct_tuples(colors, deg)
            .into_iter()
            .map(|idx| (idx, Scalar::one()));
        nodes.push(
            TensorNode::from_entries(NodeId(v as u64), vec![colors; deg], entries)
                .expect("in range"),
        );
    }
    TensorNetwork::new(nodes, edge_pairs, Scalar::one())
}

/// All tuples of the given length over `0..c` with pairwise-distinct values,
/// in lexicographic order. Empty when `len > c`.
fn distinct_tuples(c: usize, len: usize) -> Vec<Vec<usize>> {
    if len > c {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    let mut used = vec![false; c];
    fn descend(
        c: usize,
        len: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in 0..c {
            if used[v] {
                continue;
            }
            used[v] = true;
            current.push(v);
            descend(c, len, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
    descend(c, len, &mut current, &mut used, &mut out);
    out
}

/// Compiles `D^n * (P_s ... P_2 P_1)|x>` as an open network, where `P_i` is
/// the guessed projector for term `i`, applied in ascending term order.
///
/// Qudit `q` starts as a one-hot node pinned to `x[q]`; each term becomes a
/// `2k`-slot node (inputs first, then outputs, both in support order) wired
/// to the current open leg of each supported qudit. The open legs remaining
/// after the last term are the physical edges, and `evaluate` at basis `y`
/// gives exactly `D^n * <y|P_s ... P_1|x>`.
pub fn compile_clh(
    instance: &HamiltonianInstance,
    guesses: &[ProjectorGuess],
    x: &[usize],
) -> Result<TensorNetwork> {
    let n = instance.num_qudits();
    let d = instance.local_dim();
    if x.len() != n {
        return Err(Error::OutOfRange {
            what: "basis string length",
            got: x.len() as u128,
            range: format!("exactly {}", n),
        });
    }
    for &value in x {
        if value >= d {
            return Err(Error::OutOfRange {
                what: "basis value",
                got: value as u128,
                range: format!("0..{}", d),
            });
        }
    }
    let ordered = instance.check_guesses(guesses)?;
    let mut sum = BigRational::zero();
    for guess in &ordered {
        sum += guess.eigenvalue.clone();
    }
    if &sum > instance.alpha() {
        return Err(Error::GuessRejected(format!(
            "eigenvalue sum {} exceeds alpha {}",
            sum,
            instance.alpha()
        )));
    }

    let mut nodes: Vec<TensorNode> = (0..n)
        .map(|q| {
            TensorNode::basis_vector(NodeId(q as u64), d, x[q]).expect("basis value checked")
        })
        .collect();
    let mut open_leg: Vec<SlotRef> = (0..n)
        .map(|q| SlotRef::new(NodeId(q as u64), 0))
        .collect();
    let mut edges = Vec::new();

    for (i, guess) in ordered.iter().enumerate() {
        let support = instance.terms()[guess.term_index].support();
        let k = support.len();
        let id = NodeId((n + i) as u64);
        let mut node = TensorNode::new(id, vec![d; 2 * k]);
        for row in 0..guess.projector.rows() {
            for col in 0..guess.projector.cols() {
                let value = guess.projector.get(row, col);
                if value.is_zero() {
                    continue;
                }
                // Inputs carry the column (ket) digits, outputs the row digits.
                let mut idx = digits(col, d, k);
                idx.extend(digits(row, d, k));
                node.set(idx, value.clone())?;
            }
        }
        nodes.push(node);
        for (j, &q) in support.iter().enumerate() {
            edges.push((open_leg[q], SlotRef::new(id, j)));
            open_leg[q] = SlotRef::new(id, k + j);
        }
    }

    let global = Scalar::from_rational(BigRational::from_integer(
        BigInt::from(d).pow(n as u32),
    ));
    TensorNetwork::new(nodes, edges, global)
}

/// Big-endian digit expansion of `value` in base `base`, `len` digits.
pub(crate) fn digits(value: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0usize; len];
    let mut rest = value;
    for slot in (0..len).rev() {
        out[slot] = rest % base;
        rest /= base;
    }
    debug_assert_eq!(rest, 0, "value fits in len digits");
    out
}

/// A bond-dimension-2 matrix product state on `n >= 3` sites holding the
/// long-range pair state `|0>|0..0>|0> + |1>|0..0>|1>`: the two boundary
/// sites agree and every interior site is 0.
///
/// Site 0 and site n-1 have slots (physical, virtual); interior sites have
/// (physical, left virtual, right virtual). Boundary tensors are equality
/// nodes; interior tensors require physical value 0 and equal virtual values.
pub fn build_bell_mps(n: usize) -> Result<TensorNetwork> {
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    let mut nodes = Vec::with_capacity(n);
    for site in 0..n {
        let id = NodeId(site as u64);
        let node = if site == 0 || site == n - 1 {
            TensorNode::from_entries(
                id,
                vec![2, 2],
                [(vec![0, 0], Scalar::one()), (vec![1, 1], Scalar::one())],
            )
        } else {
            TensorNode::from_entries(
                id,
                vec![2, 2, 2],
                [
                    (vec![0, 0, 0], Scalar::one()),
                    (vec![0, 1, 1], Scalar::one()),
                ],
            )
        };
        nodes.push(node.expect("entries in range"));
    }
    let mut edges = Vec::with_capacity(n - 1);
    for site in 0..n - 1 {
        let right = if site == 0 { 1 } else { 2 };
        edges.push((
            SlotRef::new(NodeId(site as u64), right),
            SlotRef::new(NodeId((site + 1) as u64), 1),
        ));
    }
    TensorNetwork::new(nodes, edges, Scalar::one())
}
