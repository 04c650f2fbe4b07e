//! Σ-labelled directed hypergraphs with ordered source and target lists.
//!
//! Node and hyperedge ids are opaque integers scoped to one graph. Every
//! structural query (degrees, successor relation, paths, acyclicity and
//! convexity) is a pure function of the graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signature::{format_word, Colour, Signature, Word};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    pub label: String,
    pub sources: Vec<NodeId>,
    pub targets: Vec<NodeId>,
}

impl Hyperedge {
    /// `(number of sources, number of targets)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.sources.len(), self.targets.len())
    }

    pub fn incident_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.sources.iter().chain(self.targets.iter()).copied()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown hyperedge {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate node id {0}")]
    DuplicateNode(NodeId),
    #[error("duplicate hyperedge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("selection is not closed: {0} is incident to a selected hyperedge but not selected")]
    NotClosed(NodeId),
}

/// A signature violation reported by [`Hypergraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownLabel { edge: EdgeId, label: String },
    UnknownColour { node: NodeId, colour: Colour },
    ArityMismatch { edge: EdgeId, expected: Word, found: Word },
    CoarityMismatch { edge: EdgeId, expected: Word, found: Word },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownLabel { edge, label } => {
                write!(f, "{edge}: label `{label}` not in signature")
            }
            Violation::UnknownColour { node, colour } => {
                write!(f, "{node}: colour `{colour}` not in signature")
            }
            Violation::ArityMismatch { edge, expected, found } => write!(
                f,
                "{edge}: arity mismatch (expected {}, found {})",
                format_word(expected),
                format_word(found)
            ),
            Violation::CoarityMismatch { edge, expected, found } => write!(
                f,
                "{edge}: coarity mismatch (expected {}, found {})",
                format_word(expected),
                format_word(found)
            ),
        }
    }
}

/// A finite directed hypergraph whose nodes carry colours and whose
/// hyperedges carry operation labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hypergraph {
    nodes: BTreeMap<NodeId, Colour>,
    edges: BTreeMap<EdgeId, Hyperedge>,
}

impl Hypergraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node with the next free id.
    pub fn add_node(&mut self, colour: impl Into<Colour>) -> NodeId {
        let id = self.next_node_id();
        self.nodes.insert(id, colour.into());
        id
    }

    pub fn insert_node(&mut self, id: NodeId, colour: impl Into<Colour>) -> Result<(), GraphError> {
        if self.nodes.contains_key(&id) {
            return Err(GraphError::DuplicateNode(id));
        }
        self.nodes.insert(id, colour.into());
        Ok(())
    }

    /// Adds a hyperedge with the next free id. All incident nodes must exist.
    pub fn add_edge(
        &mut self,
        label: impl Into<String>,
        sources: Vec<NodeId>,
        targets: Vec<NodeId>,
    ) -> Result<EdgeId, GraphError> {
        let id = self.next_edge_id();
        self.insert_edge(id, label, sources, targets)?;
        Ok(id)
    }

    pub fn insert_edge(
        &mut self,
        id: EdgeId,
        label: impl Into<String>,
        sources: Vec<NodeId>,
        targets: Vec<NodeId>,
    ) -> Result<(), GraphError> {
        if self.edges.contains_key(&id) {
            return Err(GraphError::DuplicateEdge(id));
        }
        if let Some(n) = sources
            .iter()
            .chain(targets.iter())
            .find(|n| !self.nodes.contains_key(n))
        {
            return Err(GraphError::UnknownNode(*n));
        }
        self.edges.insert(
            id,
            Hyperedge {
                label: label.into(),
                sources,
                targets,
            },
        );
        Ok(())
    }

    pub fn next_node_id(&self) -> NodeId {
        NodeId(self.nodes.keys().next_back().map_or(0, |n| n.0 + 1))
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.keys().next_back().map_or(0, |e| e.0 + 1))
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Colour)> + '_ {
        self.nodes.iter().map(|(id, c)| (*id, c))
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Hyperedge)> + '_ {
        self.edges.iter().map(|(id, e)| (*id, e))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_node(&self, n: NodeId) -> bool {
        self.nodes.contains_key(&n)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn colour(&self, n: NodeId) -> Option<&Colour> {
        self.nodes.get(&n)
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Hyperedge> {
        self.edges.get(&e)
    }

    /// Colours of the given nodes, in order. Unknown nodes are an error.
    pub fn word_of(&self, nodes: &[NodeId]) -> Result<Word, GraphError> {
        nodes
            .iter()
            .map(|n| self.colour(*n).cloned().ok_or(GraphError::UnknownNode(*n)))
            .collect()
    }

    /// Colours used by the nodes.
    pub fn colours(&self) -> BTreeSet<Colour> {
        self.nodes.values().cloned().collect()
    }

    /// Every signature violation. An empty list means the graph is a valid
    /// Σ-hypergraph.
    pub fn validate(&self, sig: &Signature) -> Vec<Violation> {
        let mut out = Vec::new();
        for (id, colour) in &self.nodes {
            if !sig.has_colour(colour) {
                out.push(Violation::UnknownColour {
                    node: *id,
                    colour: colour.clone(),
                });
            }
        }
        for (id, edge) in &self.edges {
            let Some(ty) = sig.op(&edge.label) else {
                out.push(Violation::UnknownLabel {
                    edge: *id,
                    label: edge.label.clone(),
                });
                continue;
            };
            let found_src = self.word_of(&edge.sources).expect("incident nodes exist");
            let found_tgt = self.word_of(&edge.targets).expect("incident nodes exist");
            if found_src != ty.arity {
                out.push(Violation::ArityMismatch {
                    edge: *id,
                    expected: ty.arity.clone(),
                    found: found_src,
                });
            }
            if found_tgt != ty.coarity {
                out.push(Violation::CoarityMismatch {
                    edge: *id,
                    expected: ty.coarity.clone(),
                    found: found_tgt,
                });
            }
        }
        out
    }

    /// Number of `(hyperedge, position)` pairs with `node` as a target.
    pub fn in_degree(&self, node: NodeId) -> Result<usize, GraphError> {
        self.require_node(node)?;
        Ok(self
            .edges
            .values()
            .map(|e| e.targets.iter().filter(|t| **t == node).count())
            .sum())
    }

    /// Number of `(hyperedge, position)` pairs with `node` as a source.
    pub fn out_degree(&self, node: NodeId) -> Result<usize, GraphError> {
        self.require_node(node)?;
        Ok(self
            .edges
            .values()
            .map(|e| e.sources.iter().filter(|s| **s == node).count())
            .sum())
    }

    pub fn successors(&self, edge: EdgeId) -> Result<BTreeSet<EdgeId>, GraphError> {
        self.require_edge(edge)?;
        Ok(self.incidence().successors(self, edge))
    }

    pub fn predecessors(&self, edge: EdgeId) -> Result<BTreeSet<EdgeId>, GraphError> {
        self.require_edge(edge)?;
        Ok(self.incidence().predecessors(self, edge))
    }

    /// Whether a path (a non-empty hyperedge sequence, each element a
    /// successor of the previous) runs from `from` to `to`. Node endpoints
    /// are single-node subgraphs: the path must start at a hyperedge that
    /// has the node among its sources, and end at one that has it among its
    /// targets.
    pub fn has_path(&self, from: Endpoint<'_>, to: Endpoint<'_>) -> Result<bool, GraphError> {
        self.check_endpoint(&from)?;
        self.check_endpoint(&to)?;
        let inc = self.incidence();
        let starts = self.start_edges(&inc, &from);
        let ends = self.end_edges(&inc, &to);
        if ends.is_empty() {
            return Ok(false);
        }
        let reach = inc.forward_closure(self, starts);
        Ok(reach.iter().any(|e| ends.contains(e)))
    }

    /// No node has a path to itself.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Hyperedges in an order compatible with the successor relation,
    /// smallest id first among the ready ones; `None` if the graph is cyclic.
    pub fn topological_order(&self) -> Option<Vec<EdgeId>> {
        let inc = self.incidence();
        let mut indeg: BTreeMap<EdgeId, usize> = BTreeMap::new();
        let mut succ: BTreeMap<EdgeId, BTreeSet<EdgeId>> = BTreeMap::new();
        for e in self.edges.keys() {
            let s = inc.successors(self, *e);
            if s.contains(e) {
                return None;
            }
            indeg.entry(*e).or_insert(0);
            for t in &s {
                *indeg.entry(*t).or_insert(0) += 1;
            }
            succ.insert(*e, s);
        }
        let mut ready: BTreeSet<EdgeId> = indeg.iter().filter(|(_, d)| **d == 0).map(|(e, _)| *e).collect();
        let mut order = Vec::with_capacity(self.edges.len());
        while let Some(e) = ready.pop_first() {
            order.push(e);
            for t in &succ[&e] {
                let d = indeg.get_mut(t).expect("edge present");
                *d -= 1;
                if *d == 0 {
                    ready.insert(*t);
                }
            }
        }
        (order.len() == self.edges.len()).then_some(order)
    }

    /// Whether every path between two selected nodes stays inside the
    /// selection.
    pub fn is_convex(&self, selection: &SubgraphSelection) -> Result<bool, GraphError> {
        selection.check_closed(self)?;
        let inc = self.incidence();
        let mut starts = BTreeSet::new();
        let mut ends = BTreeSet::new();
        for n in &selection.nodes {
            starts.extend(inc.consumers(*n).iter().map(|(e, _)| *e));
            ends.extend(inc.producers(*n).iter().map(|(e, _)| *e));
        }
        let forward = inc.forward_closure(self, starts);
        let backward = inc.backward_closure(self, ends);
        Ok(forward
            .iter()
            .all(|e| selection.edges.contains(e) || !backward.contains(e)))
    }

    /// The sub-hypergraph induced by a closed selection, keeping ids.
    pub fn subgraph(&self, selection: &SubgraphSelection) -> Result<Hypergraph, GraphError> {
        selection.check_closed(self)?;
        let mut out = Hypergraph::new();
        for n in &selection.nodes {
            out.nodes.insert(*n, self.nodes[n].clone());
        }
        for e in &selection.edges {
            out.edges.insert(*e, self.edges[e].clone());
        }
        Ok(out)
    }

    /// Node-to-hyperedge incidence tables.
    pub fn incidence(&self) -> Incidence {
        Incidence::build(self)
    }

    fn require_node(&self, n: NodeId) -> Result<(), GraphError> {
        if self.contains_node(n) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(n))
        }
    }

    fn require_edge(&self, e: EdgeId) -> Result<(), GraphError> {
        if self.contains_edge(e) {
            Ok(())
        } else {
            Err(GraphError::UnknownEdge(e))
        }
    }

    fn check_endpoint(&self, ep: &Endpoint<'_>) -> Result<(), GraphError> {
        match ep {
            Endpoint::Node(n) => self.require_node(*n),
            Endpoint::Edge(e) => self.require_edge(*e),
            Endpoint::Selection(s) => {
                for n in &s.nodes {
                    self.require_node(*n)?;
                }
                for e in &s.edges {
                    self.require_edge(*e)?;
                }
                Ok(())
            }
        }
    }

    fn start_edges(&self, inc: &Incidence, ep: &Endpoint<'_>) -> BTreeSet<EdgeId> {
        match ep {
            Endpoint::Node(n) => inc.consumers(*n).iter().map(|(e, _)| *e).collect(),
            Endpoint::Edge(e) => BTreeSet::from([*e]),
            Endpoint::Selection(s) => s
                .nodes
                .iter()
                .flat_map(|n| inc.consumers(*n).iter().map(|(e, _)| *e))
                .collect(),
        }
    }

    fn end_edges(&self, inc: &Incidence, ep: &Endpoint<'_>) -> BTreeSet<EdgeId> {
        match ep {
            Endpoint::Node(n) => inc.producers(*n).iter().map(|(e, _)| *e).collect(),
            Endpoint::Edge(e) => BTreeSet::from([*e]),
            Endpoint::Selection(s) => s
                .nodes
                .iter()
                .flat_map(|n| inc.producers(*n).iter().map(|(e, _)| *e))
                .collect(),
        }
    }
}

/// One end of a path query.
#[derive(Clone, Copy, Debug)]
pub enum Endpoint<'a> {
    Node(NodeId),
    Edge(EdgeId),
    Selection(&'a SubgraphSelection),
}

/// For each node, the `(hyperedge, position)` pairs where it occurs as a
/// target (producers) and as a source (consumers).
#[derive(Clone, Debug, Default)]
pub struct Incidence {
    producers: BTreeMap<NodeId, Vec<(EdgeId, usize)>>,
    consumers: BTreeMap<NodeId, Vec<(EdgeId, usize)>>,
}

impl Incidence {
    fn build(g: &Hypergraph) -> Self {
        let mut inc = Incidence::default();
        for n in g.nodes.keys() {
            inc.producers.insert(*n, Vec::new());
            inc.consumers.insert(*n, Vec::new());
        }
        for (id, e) in &g.edges {
            for (i, s) in e.sources.iter().enumerate() {
                inc.consumers.get_mut(s).expect("node").push((*id, i));
            }
            for (i, t) in e.targets.iter().enumerate() {
                inc.producers.get_mut(t).expect("node").push((*id, i));
            }
        }
        inc
    }

    pub fn producers(&self, n: NodeId) -> &[(EdgeId, usize)] {
        self.producers.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn consumers(&self, n: NodeId) -> &[(EdgeId, usize)] {
        self.consumers.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn in_degree(&self, n: NodeId) -> usize {
        self.producers(n).len()
    }

    pub fn out_degree(&self, n: NodeId) -> usize {
        self.consumers(n).len()
    }

    pub fn successors(&self, g: &Hypergraph, e: EdgeId) -> BTreeSet<EdgeId> {
        g.edges[&e]
            .targets
            .iter()
            .flat_map(|t| self.consumers(*t).iter().map(|(h, _)| *h))
            .collect()
    }

    pub fn predecessors(&self, g: &Hypergraph, e: EdgeId) -> BTreeSet<EdgeId> {
        g.edges[&e]
            .sources
            .iter()
            .flat_map(|s| self.producers(*s).iter().map(|(h, _)| *h))
            .collect()
    }

    /// All hyperedges reachable from `starts` (inclusive).
    pub fn forward_closure(&self, g: &Hypergraph, starts: BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
        self.closure(starts, |e| self.successors(g, e))
    }

    /// All hyperedges from which one of `ends` is reachable (inclusive).
    pub fn backward_closure(&self, g: &Hypergraph, ends: BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
        self.closure(ends, |e| self.predecessors(g, e))
    }

    fn closure(&self, seeds: BTreeSet<EdgeId>, step: impl Fn(EdgeId) -> BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
        let mut seen = seeds.clone();
        let mut queue: VecDeque<EdgeId> = seeds.into_iter().collect();
        while let Some(e) = queue.pop_front() {
            for next in step(e) {
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }
}

/// A set of nodes and hyperedges of some host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubgraphSelection {
    pub nodes: BTreeSet<NodeId>,
    pub edges: BTreeSet<EdgeId>,
}

impl SubgraphSelection {
    pub fn new(nodes: impl IntoIterator<Item = NodeId>, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        SubgraphSelection {
            nodes: nodes.into_iter().collect(),
            edges: edges.into_iter().collect(),
        }
    }

    /// The given hyperedges together with all their incident nodes.
    pub fn from_edges(g: &Hypergraph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self, GraphError> {
        let mut sel = SubgraphSelection::default();
        for e in edges {
            let edge = g.edge(e).ok_or(GraphError::UnknownEdge(e))?;
            sel.nodes.extend(edge.incident_nodes());
            sel.edges.insert(e);
        }
        Ok(sel)
    }

    /// Everything in `g`.
    pub fn full(g: &Hypergraph) -> Self {
        SubgraphSelection::new(g.node_ids(), g.edge_ids())
    }

    pub fn check_closed(&self, g: &Hypergraph) -> Result<(), GraphError> {
        for n in &self.nodes {
            if !g.contains_node(*n) {
                return Err(GraphError::UnknownNode(*n));
            }
        }
        for e in &self.edges {
            let edge = g.edge(*e).ok_or(GraphError::UnknownEdge(*e))?;
            if let Some(n) = edge.incident_nodes().find(|n| !self.nodes.contains(n)) {
                return Err(GraphError::NotClosed(n));
            }
        }
        Ok(())
    }

    pub fn is_closed(&self, g: &Hypergraph) -> bool {
        self.check_closed(g).is_ok()
    }
}

/// A structure-preserving map between two hypergraphs, as explicit tables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homomorphism {
    pub nodes: BTreeMap<NodeId, NodeId>,
    pub edges: BTreeMap<EdgeId, EdgeId>,
}

impl Homomorphism {
    pub fn identity(g: &Hypergraph) -> Self {
        Homomorphism {
            nodes: g.node_ids().map(|n| (n, n)).collect(),
            edges: g.edge_ids().map(|e| (e, e)).collect(),
        }
    }

    /// Total on `src`, into `tgt`, preserving colours, labels and the
    /// ordered source/target lists.
    pub fn is_valid(&self, src: &Hypergraph, tgt: &Hypergraph) -> bool {
        let nodes_ok = src.nodes().all(|(n, c)| {
            self.nodes
                .get(&n)
                .and_then(|m| tgt.colour(*m))
                .is_some_and(|c2| c2 == c)
        });
        let edges_ok = src.edges().all(|(e, edge)| {
            let Some(img) = self.edges.get(&e).and_then(|f| tgt.edge(*f)) else {
                return false;
            };
            img.label == edge.label
                && img.sources.len() == edge.sources.len()
                && img.targets.len() == edge.targets.len()
                && edge
                    .sources
                    .iter()
                    .zip(&img.sources)
                    .all(|(a, b)| self.nodes.get(a) == Some(b))
                && edge
                    .targets
                    .iter()
                    .zip(&img.targets)
                    .all(|(a, b)| self.nodes.get(a) == Some(b))
        });
        nodes_ok && edges_ok && self.nodes.len() == src.node_count() && self.edges.len() == src.edge_count()
    }

    pub fn is_mono(&self) -> bool {
        let n: BTreeSet<_> = self.nodes.values().collect();
        let e: BTreeSet<_> = self.edges.values().collect();
        n.len() == self.nodes.len() && e.len() == self.edges.len()
    }

    /// The inverse table; only meaningful for bijections.
    pub fn inverse(&self) -> Homomorphism {
        Homomorphism {
            nodes: self.nodes.iter().map(|(a, b)| (*b, *a)).collect(),
            edges: self.edges.iter().map(|(a, b)| (*b, *a)).collect(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Homomorphism) -> Homomorphism {
        Homomorphism {
            nodes: self
                .nodes
                .iter()
                .filter_map(|(a, b)| next.nodes.get(b).map(|c| (*a, *c)))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter_map(|(a, b)| next.edges.get(b).map(|c| (*a, *c)))
                .collect(),
        }
    }

    /// The image as a selection of the target graph.
    pub fn image(&self) -> SubgraphSelection {
        SubgraphSelection::new(self.nodes.values().copied(), self.edges.values().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{OpType, DEFAULT_COLOUR};

    /// The labelled example graph with h1:(3,3), h2:(2,1), h3:(1,0).
    fn worked_example() -> (Hypergraph, Vec<NodeId>, [EdgeId; 3]) {
        let mut g = Hypergraph::new();
        let v: Vec<NodeId> = (0..8).map(|_| g.add_node(DEFAULT_COLOUR)).collect();
        let h1 = g
            .add_edge("o1", vec![v[0], v[1], v[2]], vec![v[4], v[5], v[5]])
            .unwrap();
        let h2 = g.add_edge("o3", vec![v[2], v[3]], vec![v[7]]).unwrap();
        let h3 = g.add_edge("o2", vec![v[5]], vec![]).unwrap();
        (g, v, [h1, h2, h3])
    }

    fn example_sig() -> Signature {
        Signature::one_sorted()
            .with_op("o1", OpType::plain(3, 3))
            .unwrap()
            .with_op("o2", OpType::plain(1, 0))
            .unwrap()
            .with_op("o3", OpType::plain(2, 1))
            .unwrap()
    }

    /// e1:1->2 ; (id ⊗ e3) ; e2:2->1, returning (graph, [e1, e3, e2]).
    fn chain() -> (Hypergraph, [EdgeId; 3]) {
        let mut g = Hypergraph::new();
        let x = g.add_node(DEFAULT_COLOUR);
        let p = g.add_node(DEFAULT_COLOUR);
        let q = g.add_node(DEFAULT_COLOUR);
        let q2 = g.add_node(DEFAULT_COLOUR);
        let y = g.add_node(DEFAULT_COLOUR);
        let e1 = g.add_edge("e1", vec![x], vec![p, q]).unwrap();
        let e3 = g.add_edge("e3", vec![q], vec![q2]).unwrap();
        let e2 = g.add_edge("e2", vec![p, q2], vec![y]).unwrap();
        (g, [e1, e3, e2])
    }

    #[test]
    fn validate_accepts_worked_example_and_empty_graph() {
        let (g, _, _) = worked_example();
        assert!(g.validate(&example_sig()).is_empty());
        assert!(Hypergraph::new().validate(&example_sig()).is_empty());
    }

    #[test]
    fn validate_reports_arity_mismatch() {
        let mut g = Hypergraph::new();
        let a = g.add_node(DEFAULT_COLOUR);
        let b = g.add_node(DEFAULT_COLOUR);
        g.add_edge("o3", vec![a], vec![b]).unwrap();
        let v = g.validate(&example_sig());
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], Violation::ArityMismatch { .. }));
        assert!(v[0].to_string().contains("arity mismatch"));
    }

    #[test]
    fn dangling_references_are_refused() {
        let mut g = Hypergraph::new();
        let err = g.add_edge("f", vec![NodeId(3)], vec![]).unwrap_err();
        assert_eq!(err, GraphError::UnknownNode(NodeId(3)));
    }

    #[test]
    fn degrees_of_worked_example() {
        let (g, v, _) = worked_example();
        assert_eq!(g.in_degree(v[5]).unwrap(), 2);
        assert_eq!(g.out_degree(v[5]).unwrap(), 1);
        assert_eq!(g.out_degree(v[2]).unwrap(), 2);
        assert_eq!(g.in_degree(NodeId(99)), Err(GraphError::UnknownNode(NodeId(99))));
    }

    #[test]
    fn isolated_node_has_zero_degrees() {
        let mut g = Hypergraph::new();
        let n = g.add_node(DEFAULT_COLOUR);
        assert_eq!((g.in_degree(n).unwrap(), g.out_degree(n).unwrap()), (0, 0));
    }

    #[test]
    fn successors_of_worked_example() {
        let (g, _, [h1, h2, h3]) = worked_example();
        assert_eq!(g.successors(h1).unwrap(), BTreeSet::from([h3]));
        assert!(g.successors(h3).unwrap().is_empty());
        assert!(g.predecessors(h2).unwrap().is_empty());
        assert_eq!(g.predecessors(h3).unwrap(), BTreeSet::from([h1]));
        assert!(g.successors(EdgeId(7)).is_err());
    }

    #[test]
    fn paths_along_chain() {
        let (g, [e1, e3, e2]) = chain();
        assert!(g.successors(e1).unwrap().contains(&e3));
        assert!(g.has_path(Endpoint::Edge(e1), Endpoint::Edge(e2)).unwrap());
        assert!(!g.has_path(Endpoint::Edge(e2), Endpoint::Edge(e1)).unwrap());
        assert!(g.has_path(Endpoint::Edge(e3), Endpoint::Edge(e3)).unwrap());
        assert!(g.is_acyclic());
    }

    #[test]
    fn disjoint_edges_have_no_path() {
        let mut g = Hypergraph::new();
        let a = g.add_node(DEFAULT_COLOUR);
        let b = g.add_node(DEFAULT_COLOUR);
        let f = g.add_edge("f", vec![a], vec![]).unwrap();
        let h = g.add_edge("f", vec![b], vec![]).unwrap();
        assert!(!g.has_path(Endpoint::Edge(f), Endpoint::Edge(h)).unwrap());
        assert!(!g.has_path(Endpoint::Node(a), Endpoint::Node(b)).unwrap());
    }

    #[test]
    fn node_reaching_itself_is_a_cycle() {
        let mut g = Hypergraph::new();
        let a = g.add_node(DEFAULT_COLOUR);
        let b = g.add_node(DEFAULT_COLOUR);
        g.add_edge("f", vec![a], vec![b]).unwrap();
        assert!(g.is_acyclic());
        g.add_edge("f", vec![b], vec![a]).unwrap();
        assert!(!g.is_acyclic());
        assert!(g.has_path(Endpoint::Node(a), Endpoint::Node(a)).unwrap());
    }

    #[test]
    fn same_node_as_source_and_target_is_cyclic() {
        let mut g = Hypergraph::new();
        let a = g.add_node(DEFAULT_COLOUR);
        g.add_edge("f", vec![a], vec![a]).unwrap();
        assert!(!g.is_acyclic());
    }

    #[test]
    fn discrete_graph_is_acyclic() {
        let mut g = Hypergraph::new();
        g.add_node(DEFAULT_COLOUR);
        g.add_node(DEFAULT_COLOUR);
        assert!(g.is_acyclic());
    }

    #[test]
    fn convexity_of_chain_selections() {
        let (g, [e1, e3, e2]) = chain();
        let empty = SubgraphSelection::default();
        assert!(g.is_convex(&empty).unwrap());
        assert!(g.is_convex(&SubgraphSelection::full(&g)).unwrap());
        let u_shape = SubgraphSelection::from_edges(&g, [e1, e2]).unwrap();
        assert!(!g.is_convex(&u_shape).unwrap());
        let prefix = SubgraphSelection::from_edges(&g, [e1, e3]).unwrap();
        assert!(g.is_convex(&prefix).unwrap());
    }

    #[test]
    fn convexity_requires_closed_selection() {
        let (g, [e1, ..]) = chain();
        let sel = SubgraphSelection::new([], [e1]);
        assert!(matches!(g.is_convex(&sel), Err(GraphError::NotClosed(_))));
    }

    #[test]
    fn homomorphism_checks() {
        let (g, _, _) = worked_example();
        let id = Homomorphism::identity(&g);
        assert!(id.is_valid(&g, &g));
        assert!(id.is_mono());
        let mut broken = id.clone();
        broken.nodes.insert(NodeId(0), NodeId(1));
        assert!(!broken.is_valid(&g, &g));
    }
}
