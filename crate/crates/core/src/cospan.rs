//! Hypergraphs with discrete interfaces and their PROP structure.
//!
//! A cospan `n -> G <- m` is stored as the carrier `G` plus two node lists;
//! the k-th entry of `inputs` is the image of the k-th interface point.
//! Repeated entries encode non-injective legs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::hypergraph::{GraphError, Homomorphism, Hypergraph, NodeId};
use crate::iso::isomorphic_with;
use crate::signature::{format_word, Colour, Signature, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CospanError {
    #[error("cannot compose: left codomain {left} does not match right domain {right}")]
    TypeMismatch { left: String, right: String },
    #[error("operation `{0}` is not in the signature")]
    UnknownLabel(String),
    #[error("colour `{0}` is not in the signature")]
    UnknownColour(Colour),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InterfacedCospan {
    pub graph: Hypergraph,
    pub inputs: Vec<NodeId>,
    pub outputs: Vec<NodeId>,
}

/// A node whose degrees break monogamy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonogamyOffender {
    pub node: NodeId,
    /// `(in-degree, out-degree)` required by the node's interface role.
    pub expected: (usize, usize),
    pub actual: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonogamyReport {
    pub legs_mono: bool,
    pub offenders: Vec<MonogamyOffender>,
}

impl MonogamyReport {
    pub fn is_monogamous(&self) -> bool {
        self.legs_mono && self.offenders.is_empty()
    }
}

/// The four Frobenius generators, interpreted as discrete one-node cospans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobeniusGenerator {
    Multiplication,
    Unit,
    Comultiplication,
    Counit,
}

impl InterfacedCospan {
    /// Checks that every interface node exists in the carrier.
    pub fn new(graph: Hypergraph, inputs: Vec<NodeId>, outputs: Vec<NodeId>) -> Result<Self, CospanError> {
        for n in inputs.iter().chain(outputs.iter()) {
            if !graph.contains_node(*n) {
                return Err(GraphError::UnknownNode(*n).into());
            }
        }
        Ok(InterfacedCospan { graph, inputs, outputs })
    }

    pub fn identity(word: &[Colour]) -> Self {
        let mut graph = Hypergraph::new();
        let nodes: Vec<NodeId> = word.iter().map(|c| graph.add_node(c.clone())).collect();
        InterfacedCospan {
            graph,
            inputs: nodes.clone(),
            outputs: nodes,
        }
    }

    /// The symmetry swapping a block typed `w1` past a block typed `w2`.
    pub fn symmetry(w1: &[Colour], w2: &[Colour]) -> Self {
        let mut graph = Hypergraph::new();
        let a: Vec<NodeId> = w1.iter().map(|c| graph.add_node(c.clone())).collect();
        let b: Vec<NodeId> = w2.iter().map(|c| graph.add_node(c.clone())).collect();
        InterfacedCospan {
            graph,
            inputs: a.iter().chain(&b).copied().collect(),
            outputs: b.iter().chain(&a).copied().collect(),
        }
    }

    /// One hyperedge labelled `label` on fresh nodes; the inputs are its
    /// sources and the outputs its targets.
    pub fn generator(sig: &Signature, label: &str) -> Result<Self, CospanError> {
        let ty = sig
            .op(label)
            .ok_or_else(|| CospanError::UnknownLabel(label.to_string()))?;
        let mut graph = Hypergraph::new();
        let sources: Vec<NodeId> = ty.arity.iter().map(|c| graph.add_node(c.clone())).collect();
        let targets: Vec<NodeId> = ty.coarity.iter().map(|c| graph.add_node(c.clone())).collect();
        graph.add_edge(label, sources.clone(), targets.clone())?;
        Ok(InterfacedCospan {
            graph,
            inputs: sources,
            outputs: targets,
        })
    }

    pub fn frobenius(kind: FrobeniusGenerator, colour: &str) -> Self {
        let mut graph = Hypergraph::new();
        let n = graph.add_node(colour);
        let (ins, outs) = match kind {
            FrobeniusGenerator::Multiplication => (2, 1),
            FrobeniusGenerator::Unit => (0, 1),
            FrobeniusGenerator::Comultiplication => (1, 2),
            FrobeniusGenerator::Counit => (1, 0),
        };
        InterfacedCospan {
            graph,
            inputs: vec![n; ins],
            outputs: vec![n; outs],
        }
    }

    pub fn domain(&self) -> Word {
        self.graph.word_of(&self.inputs).expect("interface nodes exist")
    }

    pub fn codomain(&self) -> Word {
        self.graph.word_of(&self.outputs).expect("interface nodes exist")
    }

    /// Sequential composition: glue `self.outputs[k]` to `other.inputs[k]`.
    pub fn compose(&self, other: &InterfacedCospan) -> Result<InterfacedCospan, CospanError> {
        let (left, right) = (self.codomain(), other.domain());
        if left != right {
            return Err(CospanError::TypeMismatch {
                left: format_word(&left),
                right: format_word(&right),
            });
        }
        let (sum, [ha, hb]) = disjoint_union([&self.graph, &other.graph]);
        let glue: Vec<(NodeId, NodeId)> = self
            .outputs
            .iter()
            .zip(&other.inputs)
            .map(|(a, b)| (ha.nodes[a], hb.nodes[b]))
            .collect();
        let (graph, q) = quotient(&sum, &glue);
        Ok(InterfacedCospan {
            graph,
            inputs: self.inputs.iter().map(|n| q[&ha.nodes[n]]).collect(),
            outputs: other.outputs.iter().map(|n| q[&hb.nodes[n]]).collect(),
        })
    }

    /// Parallel composition: disjoint union with concatenated interfaces.
    pub fn tensor(&self, other: &InterfacedCospan) -> InterfacedCospan {
        let (graph, [ha, hb]) = disjoint_union([&self.graph, &other.graph]);
        InterfacedCospan {
            graph,
            inputs: self
                .inputs
                .iter()
                .map(|n| ha.nodes[n])
                .chain(other.inputs.iter().map(|n| hb.nodes[n]))
                .collect(),
            outputs: self
                .outputs
                .iter()
                .map(|n| ha.nodes[n])
                .chain(other.outputs.iter().map(|n| hb.nodes[n]))
                .collect(),
        }
    }

    /// Checks the legs for repeats and every node's degrees against its
    /// interface role.
    pub fn monogamy(&self) -> MonogamyReport {
        let legs_mono = is_repeat_free(&self.inputs) && is_repeat_free(&self.outputs);
        let ins: BTreeSet<NodeId> = self.inputs.iter().copied().collect();
        let outs: BTreeSet<NodeId> = self.outputs.iter().copied().collect();
        let inc = self.graph.incidence();
        let offenders = self
            .graph
            .node_ids()
            .filter_map(|n| {
                let expected = (usize::from(!ins.contains(&n)), usize::from(!outs.contains(&n)));
                let actual = (inc.in_degree(n), inc.out_degree(n));
                (expected != actual).then_some(MonogamyOffender {
                    node: n,
                    expected,
                    actual,
                })
            })
            .collect();
        MonogamyReport { legs_mono, offenders }
    }

    pub fn is_monogamous(&self) -> bool {
        self.monogamy().is_monogamous()
    }

    /// Monogamous with an acyclic carrier: exactly the cospans denoted by
    /// terms.
    pub fn is_ma(&self) -> bool {
        self.is_monogamous() && self.graph.is_acyclic()
    }

    /// Moves every input to the output side: `0 -> G <- n + m`.
    pub fn rewire(&self) -> InterfacedCospan {
        InterfacedCospan {
            graph: self.graph.clone(),
            inputs: Vec::new(),
            outputs: self.inputs.iter().chain(&self.outputs).copied().collect(),
        }
    }

    /// An isomorphism of carriers commuting with both legs, if any.
    pub fn isomorphism(&self, other: &InterfacedCospan) -> Option<Homomorphism> {
        if self.inputs.len() != other.inputs.len() || self.outputs.len() != other.outputs.len() {
            return None;
        }
        let mut seed = BTreeMap::new();
        let pairs = self
            .inputs
            .iter()
            .zip(&other.inputs)
            .chain(self.outputs.iter().zip(&other.outputs));
        for (a, b) in pairs {
            if *seed.entry(*a).or_insert(*b) != *b {
                return None;
            }
        }
        let images: BTreeSet<_> = seed.values().collect();
        if images.len() != seed.len() {
            return None;
        }
        isomorphic_with(&self.graph, &other.graph, &seed)
    }

    pub fn is_isomorphic(&self, other: &InterfacedCospan) -> bool {
        self.isomorphism(other).is_some()
    }

    /// The same cospan with nodes and edges renumbered `0..` in id order.
    pub fn compacted(&self) -> InterfacedCospan {
        let (graph, [h]) = disjoint_union([&self.graph]);
        InterfacedCospan {
            graph,
            inputs: self.inputs.iter().map(|n| h.nodes[n]).collect(),
            outputs: self.outputs.iter().map(|n| h.nodes[n]).collect(),
        }
    }
}

fn is_repeat_free(list: &[NodeId]) -> bool {
    let set: BTreeSet<_> = list.iter().collect();
    set.len() == list.len()
}

/// The coproduct of several graphs, renumbered compactly: nodes and edges of
/// the first part come first, each part in id order. Returns the coproduct
/// injections.
pub fn disjoint_union<const N: usize>(parts: [&Hypergraph; N]) -> (Hypergraph, [Homomorphism; N]) {
    let mut out = Hypergraph::new();
    let injections = parts.map(|g| {
        let mut h = Homomorphism::default();
        for (n, c) in g.nodes() {
            h.nodes.insert(n, out.add_node(c.clone()));
        }
        for (e, edge) in g.edges() {
            let id = out
                .add_edge(
                    edge.label.clone(),
                    edge.sources.iter().map(|n| h.nodes[n]).collect(),
                    edge.targets.iter().map(|n| h.nodes[n]).collect(),
                )
                .expect("nodes were just added");
            h.edges.insert(e, id);
        }
        h
    });
    (out, injections)
}

/// Quotients the nodes of `g` by the equivalence generated by `glue`.
/// Classes are renumbered `0..` in order of their smallest member; edges keep
/// their ids. Returns the quotient map on nodes.
///
/// Panics if a class mixes colours; callers glue only same-typed interfaces.
pub fn quotient(g: &Hypergraph, glue: &[(NodeId, NodeId)]) -> (Hypergraph, BTreeMap<NodeId, NodeId>) {
    let ids: Vec<NodeId> = g.node_ids().collect();
    let index: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut uf = UnionFind::new(ids.len());
    for (a, b) in glue {
        uf.union(index[a], index[b]);
    }
    let mut class_id: BTreeMap<usize, NodeId> = BTreeMap::new();
    let mut map = BTreeMap::new();
    let mut out = Hypergraph::new();
    for (i, n) in ids.iter().enumerate() {
        let root = uf.find(i);
        let colour = g.colour(*n).expect("node");
        let id = *class_id.entry(root).or_insert_with(|| out.add_node(colour.clone()));
        assert_eq!(out.colour(id), Some(colour), "gluing nodes of different colours");
        map.insert(*n, id);
    }
    for (e, edge) in g.edges() {
        out.insert_edge(
            e,
            edge.label.clone(),
            edge.sources.iter().map(|n| map[n]).collect(),
            edge.targets.iter().map(|n| map[n]).collect(),
        )
        .expect("quotient nodes exist");
    }
    (out, map)
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`, keeping the smaller root.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
