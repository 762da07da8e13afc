//! File formats. Networks, witnesses, and certificates travel as JSON;
//! formulas as DIMACS CNF; graphs as plain edge lists; Hamiltonians as JSON.
//!
//! Every format is 1-based on disk: slot numbers, index values, witness
//! labels, edge positions, term supports, and basis strings all start at 1
//! in files and are shifted to the crate's 0-based conventions on read.
//! Node ids are opaque and pass through unchanged. Serialization is
//! deterministic: nodes ascend by id, entries by multi-index, map keys are
//! emitted in insertion order.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::contract::{BasisInput, VectorInput};
use crate::certify::NonNegWitness;
use crate::error::{Error, Result};
use crate::hamiltonian::{HamiltonianInstance, ProjectorGuess, StoqWitness};
use crate::linalg::Matrix;
use crate::network::{EdgeId, NodeId, SlotRef, TensorNetwork, TensorNode};
use crate::reduce::{Cnf2, Literal, SimpleGraph};
use crate::scalar::Scalar;

fn parse_err(context: &str, detail: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{}: {}", context, detail))
}

/// Parses "p" or "p/q" into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        None => (text, "1"),
        Some((n, d)) => (n, d),
    };
    let num = BigInt::from_str(num.trim())
        .map_err(|e| parse_err("rational numerator", format!("{:?}: {}", num, e)))?;
    let den = BigInt::from_str(den.trim())
        .map_err(|e| parse_err("rational denominator", format!("{:?}: {}", den, e)))?;
    if den.is_zero() {
        return Err(parse_err("rational", "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn scalar_value(s: &Scalar) -> Value {
    Value::Array(vec![
        Value::String(rational_string(s.re())),
        Value::String(rational_string(s.im())),
    ])
}

fn parse_scalar(value: &Value, context: &str) -> Result<Scalar> {
    let pair = value
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| parse_err(context, "expected a [re, im] pair of strings"))?;
    let part = |i: usize, name: &str| -> Result<BigRational> {
        pair[i]
            .as_str()
            .ok_or_else(|| parse_err(context, format!("{} part must be a string", name)))
            .and_then(parse_rational)
    };
    Ok(Scalar::new(part(0, "real")?, part(1, "imaginary")?))
}

fn as_usize(value: &Value, context: &str) -> Result<usize> {
    value
        .as_u64()
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| parse_err(context, "expected a non-negative integer"))
}

fn one_based(value: usize, context: &str) -> Result<usize> {
    value
        .checked_sub(1)
        .ok_or_else(|| parse_err(context, "positions and values are 1-based"))
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err("json", e))
}

fn object<'v>(value: &'v Value, context: &str) -> Result<&'v Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| parse_err(context, "expected an object"))
}

fn array<'v>(value: &'v Value, context: &str) -> Result<&'v Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| parse_err(context, "expected an array"))
}

fn field<'v>(map: &'v Map<String, Value>, name: &str, context: &str) -> Result<&'v Value> {
    map.get(name)
        .ok_or_else(|| parse_err(context, format!("missing field {:?}", name)))
}

fn slot_key(slot: SlotRef) -> String {
    format!("{},{}", slot.node.0, slot.slot + 1)
}

fn parse_slot_key(key: &str, context: &str) -> Result<SlotRef> {
    let (node, slot) = key
        .split_once(',')
        .ok_or_else(|| parse_err(context, format!("key {:?} is not \"node,slot\"", key)))?;
    let node = u64::from_str(node.trim())
        .map_err(|e| parse_err(context, format!("node in {:?}: {}", key, e)))?;
    let slot = usize::from_str(slot.trim())
        .map_err(|e| parse_err(context, format!("slot in {:?}: {}", key, e)))?;
    Ok(SlotRef::new(NodeId(node), one_based(slot, context)?))
}

/// Serializes a network deterministically. Entry keys are the 1-based index
/// values joined by commas (the empty string for a 0-slot node); edges list
/// `[node_a, slot_a, node_b, slot_b]` with 1-based slots, in edge order.
pub fn network_to_json(network: &TensorNetwork) -> String {
    let nodes: Vec<Value> = network
        .nodes()
        .map(|node| {
            let mut entries = Map::new();
            for (idx, value) in node.entries() {
                let key = idx
                    .iter()
                    .map(|v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                entries.insert(key, scalar_value(value));
            }
            let mut m = Map::new();
            m.insert("id".into(), Value::from(node.id().0));
            m.insert(
                "dims".into(),
                Value::Array(node.dims().iter().map(|&d| Value::from(d as u64)).collect()),
            );
            m.insert("entries".into(), Value::Object(entries));
            Value::Object(m)
        })
        .collect();
    let edges: Vec<Value> = network
        .edges()
        .map(|(_, e)| {
            Value::Array(vec![
                Value::from(e.a.node.0),
                Value::from((e.a.slot + 1) as u64),
                Value::from(e.b.node.0),
                Value::from((e.b.slot + 1) as u64),
            ])
        })
        .collect();
    let mut root = Map::new();
    root.insert("nodes".into(), Value::Array(nodes));
    root.insert("edges".into(), Value::Array(edges));
    root.insert("global_scalar".into(), scalar_value(network.global_scalar()));
    serde_json::to_string_pretty(&Value::Object(root)).expect("value serializes")
}

pub fn network_from_json(text: &str) -> Result<TensorNetwork> {
    let root = parse_json(text)?;
    let root = object(&root, "network")?;
    let mut nodes = Vec::new();
    for (ni, node_value) in array(field(root, "nodes", "network")?, "nodes")?
        .iter()
        .enumerate()
    {
        let context = format!("node {}", ni);
        let node = object(node_value, &context)?;
        let id = field(node, "id", &context)?
            .as_u64()
            .ok_or_else(|| parse_err(&context, "id must be a non-negative integer"))?;
        let dims: Vec<usize> = array(field(node, "dims", &context)?, &context)?
            .iter()
            .map(|d| as_usize(d, &context))
            .collect::<Result<_>>()?;
        let mut built = TensorNode::new(NodeId(id), dims.clone());
        let entries = object(field(node, "entries", &context)?, &context)?;
        for (key, value) in entries {
            let idx: Vec<usize> = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|part| {
                        usize::from_str(part.trim())
                            .map_err(|e| parse_err(&context, format!("index {:?}: {}", key, e)))
                            .and_then(|v| one_based(v, &context))
                    })
                    .collect::<Result<_>>()?
            };
            built.set(idx, parse_scalar(value, &context)?)?;
        }
        nodes.push(built);
    }
    let mut edges = Vec::new();
    for (ei, edge_value) in array(field(root, "edges", "network")?, "edges")?
        .iter()
        .enumerate()
    {
        let context = format!("edge {}", ei);
        let quad = array(edge_value, &context)?;
        if quad.len() != 4 {
            return Err(parse_err(&context, "expected [node, slot, node, slot]"));
        }
        let node_a = quad[0]
            .as_u64()
            .ok_or_else(|| parse_err(&context, "node id must be an integer"))?;
        let slot_a = one_based(as_usize(&quad[1], &context)?, &context)?;
        let node_b = quad[2]
            .as_u64()
            .ok_or_else(|| parse_err(&context, "node id must be an integer"))?;
        let slot_b = one_based(as_usize(&quad[3], &context)?, &context)?;
        edges.push((
            SlotRef::new(NodeId(node_a), slot_a),
            SlotRef::new(NodeId(node_b), slot_b),
        ));
    }
    let global = parse_scalar(field(root, "global_scalar", "network")?, "global_scalar")?;
    TensorNetwork::new(nodes, edges, global)
}

/// `{"x": {"node,slot": value}}` with 1-based slots and values.
pub fn basis_witness_to_json(x: &BasisInput) -> String {
    let mut map = Map::new();
    for (&slot, &value) in x {
        map.insert(slot_key(slot), Value::from((value + 1) as u64));
    }
    let mut root = Map::new();
    root.insert("x".into(), Value::Object(map));
    serde_json::to_string_pretty(&Value::Object(root)).expect("value serializes")
}

pub fn basis_witness_from_json(text: &str) -> Result<BasisInput> {
    let root = parse_json(text)?;
    let root = object(&root, "witness")?;
    parse_basis_map(field(root, "x", "witness")?)
}

fn parse_basis_map(value: &Value) -> Result<BasisInput> {
    let map = object(value, "x")?;
    let mut x = BasisInput::new();
    for (key, v) in map {
        let slot = parse_slot_key(key, "x")?;
        let value = one_based(as_usize(v, "x")?, "x")?;
        x.insert(slot, value);
    }
    Ok(x)
}

/// `{"x": {...}, "labeling": {"edge position": value}}`, positions and
/// values 1-based, edge positions counted in construction order.
pub fn nonneg_witness_to_json(witness: &NonNegWitness) -> String {
    let mut x = Map::new();
    for (&slot, &value) in &witness.x {
        x.insert(slot_key(slot), Value::from((value + 1) as u64));
    }
    let mut labeling = Map::new();
    for (&edge, &value) in &witness.labeling {
        labeling.insert((edge.0 + 1).to_string(), Value::from((value + 1) as u64));
    }
    let mut root = Map::new();
    root.insert("x".into(), Value::Object(x));
    root.insert("labeling".into(), Value::Object(labeling));
    serde_json::to_string_pretty(&Value::Object(root)).expect("value serializes")
}

pub fn nonneg_witness_from_json(text: &str) -> Result<NonNegWitness> {
    let root = parse_json(text)?;
    let root = object(&root, "witness")?;
    let x = parse_basis_map(field(root, "x", "witness")?)?;
    let map = object(field(root, "labeling", "witness")?, "labeling")?;
    let mut labeling = BTreeMap::new();
    for (key, v) in map {
        let position = usize::from_str(key)
            .map_err(|e| parse_err("labeling", format!("edge position {:?}: {}", key, e)))?;
        let edge = EdgeId(one_based(position, "labeling")?);
        labeling.insert(edge, one_based(as_usize(v, "labeling")?, "labeling")?);
    }
    Ok(NonNegWitness { x, labeling })
}

/// `{"vectors": {"node,slot": [["re","im"], ...]}}`, one dense vector per
/// physical edge (vector components are plain 0-based positions).
pub fn vector_input_to_json(vectors: &VectorInput) -> String {
    let mut map = Map::new();
    for (&slot, vector) in vectors {
        map.insert(
            slot_key(slot),
            Value::Array(vector.iter().map(scalar_value).collect()),
        );
    }
    let mut root = Map::new();
    root.insert("vectors".into(), Value::Object(map));
    serde_json::to_string_pretty(&Value::Object(root)).expect("value serializes")
}

pub fn vector_input_from_json(text: &str) -> Result<VectorInput> {
    let root = parse_json(text)?;
    let root = object(&root, "certificate")?;
    let map = object(field(root, "vectors", "certificate")?, "vectors")?;
    let mut vectors = VectorInput::new();
    for (key, value) in map {
        let slot = parse_slot_key(key, "vectors")?;
        let entries = array(value, "vectors")?
            .iter()
            .map(|v| parse_scalar(v, "vectors"))
            .collect::<Result<_>>()?;
        vectors.insert(slot, entries);
    }
    Ok(vectors)
}

/// `{"x": [values...], "witness": {...}}`: the satisfying basis string
/// (1-based values, one per qudit) plus the positive point of the compiled
/// network that certifies it.
pub fn stoq_witness_to_json(witness: &StoqWitness) -> String {
    let x: Vec<Value> = witness
        .x
        .iter()
        .map(|&v| Value::from((v + 1) as u64))
        .collect();
    let inner: Value =
        serde_json::from_str(&nonneg_witness_to_json(&witness.witness)).expect("round trip");
    let mut root = Map::new();
    root.insert("x".into(), Value::Array(x));
    root.insert("witness".into(), inner);
    serde_json::to_string_pretty(&Value::Object(root)).expect("value serializes")
}

/// DIMACS CNF with exactly two literals per clause. Comment lines start
/// with `c`, the header is `p cnf <variables> <clauses>`, clauses are
/// 1-based signed literals terminated by 0.
pub fn parse_dimacs(text: &str) -> Result<Cnf2> {
    let mut num_vars: Option<usize> = None;
    let mut declared = 0usize;
    let mut clauses = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let context = format!("line {}", ln + 1);
        if let Some(rest) = line.strip_prefix('p') {
            if num_vars.is_some() {
                return Err(parse_err(&context, "duplicate problem header"));
            }
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.len() != 3 || tokens[0] != "cnf" {
                return Err(parse_err(&context, "expected \"p cnf <vars> <clauses>\""));
            }
            num_vars = Some(
                usize::from_str(tokens[1]).map_err(|e| parse_err(&context, e))?,
            );
            declared = usize::from_str(tokens[2]).map_err(|e| parse_err(&context, e))?;
            continue;
        }
        let vars = num_vars.ok_or_else(|| parse_err(&context, "clause before header"))?;
        let mut literals = Vec::new();
        let mut terminated = false;
        for token in line.split_whitespace() {
            let value = i64::from_str(token).map_err(|e| parse_err(&context, e))?;
            if value == 0 {
                terminated = true;
                break;
            }
            let var = value.unsigned_abs() as usize;
            if var > vars {
                return Err(parse_err(
                    &context,
                    format!("literal {} exceeds {} variables", value, vars),
                ));
            }
            literals.push(Literal::new(var - 1, value > 0));
        }
        if !terminated {
            return Err(parse_err(&context, "clause is not terminated by 0"));
        }
        if literals.len() != 2 {
            return Err(parse_err(
                &context,
                format!("expected exactly 2 literals, got {}", literals.len()),
            ));
        }
        clauses.push([literals[0], literals[1]]);
    }
    let vars = num_vars.ok_or_else(|| parse_err("dimacs", "missing problem header"))?;
    if clauses.len() != declared {
        return Err(parse_err(
            "dimacs",
            format!("header declares {} clauses, found {}", declared, clauses.len()),
        ));
    }
    Cnf2::new(vars, clauses)
}

/// Plain edge list: one `u v` pair per line, vertices 1-based, `#` starts a
/// comment. The vertex count is the largest endpoint mentioned.
pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
    let mut edges = Vec::new();
    let mut max_vertex = 0usize;
    for (ln, line) in text.lines().enumerate() {
        let line = match line.split_once('#') {
            Some((before, _)) => before.trim(),
            None => line.trim(),
        };
        if line.is_empty() {
            continue;
        }
        let context = format!("line {}", ln + 1);
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(parse_err(&context, "expected \"u v\""));
        }
        let endpoint = |token: &str| -> Result<usize> {
            let v = usize::from_str(token).map_err(|e| parse_err(&context, e))?;
            one_based(v, &context)
        };
        let u = endpoint(tokens[0])?;
        let v = endpoint(tokens[1])?;
        max_vertex = max_vertex.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    SimpleGraph::new(max_vertex, edges)
}

/// Hamiltonian JSON: `n`, `D`, `terms` (1-based supports, flat row-major
/// matrices of [re, im] pairs), optional `alpha` (default: the number of
/// terms) and `beta` (default 0), optional `guesses` with 1-based term
/// index `i`, `matrix`, and rational `lambda`.
pub fn parse_hamiltonian(
    text: &str,
) -> Result<(HamiltonianInstance, Option<Vec<ProjectorGuess>>)> {
    let root = parse_json(text)?;
    let root = object(&root, "hamiltonian")?;
    let n = as_usize(field(root, "n", "hamiltonian")?, "n")?;
    let d = as_usize(field(root, "D", "hamiltonian")?, "D")?;
    let term_values = array(field(root, "terms", "hamiltonian")?, "terms")?;
    let mut terms = Vec::with_capacity(term_values.len());
    for (ti, term_value) in term_values.iter().enumerate() {
        let context = format!("term {}", ti);
        let term = object(term_value, &context)?;
        let support: Vec<usize> = array(field(term, "support", &context)?, &context)?
            .iter()
            .map(|v| as_usize(v, &context).and_then(|q| one_based(q, &context)))
            .collect::<Result<_>>()?;
        let matrix = parse_matrix(field(term, "matrix", &context)?, &context)?;
        terms.push((support, matrix));
    }
    let alpha = match root.get("alpha") {
        Some(v) => parse_rational(
            v.as_str()
                .ok_or_else(|| parse_err("alpha", "expected a rational string"))?,
        )?,
        None => BigRational::from_integer(BigInt::from(terms.len() as u64)),
    };
    let beta = match root.get("beta") {
        Some(v) => parse_rational(
            v.as_str()
                .ok_or_else(|| parse_err("beta", "expected a rational string"))?,
        )?,
        None => BigRational::zero(),
    };
    let instance = HamiltonianInstance::new(n, d, terms, alpha, beta)?;
    let guesses = match root.get("guesses") {
        None => None,
        Some(value) => {
            let mut out = Vec::new();
            for (gi, guess_value) in array(value, "guesses")?.iter().enumerate() {
                let context = format!("guess {}", gi);
                let guess = object(guess_value, &context)?;
                let i = as_usize(field(guess, "i", &context)?, &context)?;
                let term_index = one_based(i, &context)?;
                let projector = parse_matrix(field(guess, "matrix", &context)?, &context)?;
                let eigenvalue = parse_rational(
                    field(guess, "lambda", &context)?
                        .as_str()
                        .ok_or_else(|| parse_err(&context, "lambda must be a string"))?,
                )?;
                out.push(ProjectorGuess {
                    term_index,
                    projector,
                    eigenvalue,
                });
            }
            Some(out)
        }
    };
    Ok((instance, guesses))
}

fn parse_matrix(value: &Value, context: &str) -> Result<Matrix> {
    let flat = array(value, context)?;
    let side = (flat.len() as f64).sqrt().round() as usize;
    if side * side != flat.len() {
        return Err(parse_err(
            context,
            format!("matrix length {} is not a perfect square", flat.len()),
        ));
    }
    let data = flat
        .iter()
        .map(|v| parse_scalar(v, context))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_vec(side, side, data))
}
