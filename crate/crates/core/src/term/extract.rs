//! Decomposition of monogamous acyclic cospans around a convex piece, and
//! term extraction by induction on the number of hyperedges.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cospan::{InterfacedCospan, MonogamyReport};
use crate::hypergraph::{EdgeId, GraphError, NodeId, SubgraphSelection};
use crate::signature::Word;

use super::Term;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("cospan is not monogamous ({} offending nodes, legs mono: {})", .0.offenders.len(), .0.legs_mono)]
    NotMonogamous(MonogamyReport),
    #[error("cospan is cyclic")]
    Cyclic,
    #[error("selection is not convex")]
    NotConvex,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `g ≅ c1 ; (id_k ⊕ l) ; c2` where `l` is the selected piece.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// `n -> C1 <- k ++ i`
    pub c1: InterfacedCospan,
    /// `i -> L <- j`
    pub l: InterfacedCospan,
    /// `k ++ j -> C2 <- m`
    pub c2: InterfacedCospan,
    /// The wires passing by `l`.
    pub k: Vec<NodeId>,
    pub k_word: Word,
}

impl Decomposition {
    /// `c1 ; (id_k ⊕ l) ; c2`.
    pub fn reassemble(&self) -> InterfacedCospan {
        let middle = InterfacedCospan::identity(&self.k_word).tensor(&self.l);
        self.c1
            .compose(&middle)
            .and_then(|x| x.compose(&self.c2))
            .expect("decomposition parts are composable")
    }
}

fn require_ma(g: &InterfacedCospan) -> Result<(), ExtractError> {
    let report = g.monogamy();
    if !report.is_monogamous() {
        return Err(ExtractError::NotMonogamous(report));
    }
    if !g.graph.is_acyclic() {
        return Err(ExtractError::Cyclic);
    }
    Ok(())
}

/// Splits `g` into the part before the selection, the selection, and the
/// part after it. All three parts are sub-cospans of `g` and keep its ids.
pub fn decompose(g: &InterfacedCospan, selection: &SubgraphSelection) -> Result<Decomposition, ExtractError> {
    require_ma(g)?;
    if !g.graph.is_convex(selection)? {
        return Err(ExtractError::NotConvex);
    }
    let inc = g.graph.incidence();
    let producers_of_l: BTreeSet<EdgeId> = selection
        .nodes
        .iter()
        .flat_map(|n| inc.producers(*n).iter().map(|(e, _)| *e))
        .collect();
    let c1_edges: BTreeSet<EdgeId> = inc
        .backward_closure(&g.graph, producers_of_l)
        .into_iter()
        .filter(|e| !selection.edges.contains(e))
        .collect();
    let c2_edges: BTreeSet<EdgeId> = g
        .graph
        .edge_ids()
        .filter(|e| !c1_edges.contains(e) && !selection.edges.contains(e))
        .collect();

    let mut c1 = SubgraphSelection::from_edges(&g.graph, c1_edges.iter().copied())?;
    c1.nodes.extend(g.inputs.iter().copied());
    let mut c2 = SubgraphSelection::from_edges(&g.graph, c2_edges.iter().copied())?;
    c2.nodes.extend(g.outputs.iter().copied());
    for n in g.graph.node_ids() {
        if !c1.nodes.contains(&n) && !c2.nodes.contains(&n) && !selection.nodes.contains(&n) {
            c2.nodes.insert(n);
        }
    }

    let i_set: BTreeSet<NodeId> = c1.nodes.intersection(&selection.nodes).copied().collect();
    let j_set: BTreeSet<NodeId> = c2.nodes.intersection(&selection.nodes).copied().collect();
    let k: Vec<NodeId> = c1
        .nodes
        .intersection(&c2.nodes)
        .filter(|n| !selection.nodes.contains(n))
        .copied()
        .collect();

    let lg = g.graph.subgraph(selection)?;
    let i = boundary_order(&i_set, lg.edges().flat_map(|(_, e)| e.sources.iter().copied()));
    let j = boundary_order(&j_set, lg.edges().flat_map(|(_, e)| e.targets.iter().copied()));

    let k_word = g.graph.word_of(&k)?;
    let ki: Vec<NodeId> = k.iter().chain(&i).copied().collect();
    let kj: Vec<NodeId> = k.iter().chain(&j).copied().collect();
    Ok(Decomposition {
        c1: InterfacedCospan::new(g.graph.subgraph(&c1)?, g.inputs.clone(), ki).expect("nodes in c1"),
        l: InterfacedCospan::new(lg, i, j).expect("nodes in l"),
        c2: InterfacedCospan::new(g.graph.subgraph(&c2)?, kj, g.outputs.clone()).expect("nodes in c2"),
        k,
        k_word,
    })
}

/// Members of `set` in order of first occurrence in `ports`, then the rest
/// by id.
fn boundary_order(set: &BTreeSet<NodeId>, ports: impl Iterator<Item = NodeId>) -> Vec<NodeId> {
    let mut out = Vec::with_capacity(set.len());
    let mut seen = BTreeSet::new();
    for n in ports {
        if set.contains(&n) && seen.insert(n) {
            out.push(n);
        }
    }
    out.extend(set.iter().filter(|n| !seen.contains(n)));
    out
}

/// A term denoting `g`. Fails exactly when `g` is not monogamous acyclic.
pub fn extract_term(g: &InterfacedCospan) -> Result<Term, ExtractError> {
    require_ma(g)?;
    Ok(extract_ma(g))
}

fn extract_ma(g: &InterfacedCospan) -> Term {
    let inc = g.graph.incidence();
    let minimal = g.graph.edge_ids().find(|e| inc.predecessors(&g.graph, *e).is_empty());
    let Some(edge) = minimal else {
        return permutation(g);
    };
    let selection = SubgraphSelection::from_edges(&g.graph, [edge]).expect("edge exists");
    let d = decompose(g, &selection).expect("minimal hyperedge is convex in an MA cospan");
    let label = g.graph.edge(edge).expect("edge").label.clone();
    let middle = if d.k.is_empty() {
        Term::Gen(label)
    } else {
        Term::par(Term::Id(d.k_word.clone()), Term::Gen(label))
    };
    let before = permutation(&d.c1);
    let after = extract_ma(&d.c2);
    Term::seq(Term::seq(before, middle), after)
}

/// The Id/Sym term realising a discrete monogamous cospan, built from
/// adjacent transpositions in bubble-sort order.
fn permutation(g: &InterfacedCospan) -> Term {
    debug_assert!(g.graph.is_discrete());
    let target: BTreeMap<NodeId, usize> = g.outputs.iter().enumerate().map(|(p, n)| (*n, p)).collect();
    let mut current = g.inputs.clone();
    let colour = |n: &NodeId| g.graph.colour(*n).expect("node").clone();
    let mut layers = Vec::new();
    while let Some(p) = (0..current.len().saturating_sub(1)).find(|&p| target[&current[p]] > target[&current[p + 1]]) {
        let prefix: Word = current[..p].iter().map(colour).collect();
        let suffix: Word = current[p + 2..].iter().map(colour).collect();
        let swap = Term::Sym(vec![colour(&current[p])], vec![colour(&current[p + 1])]);
        let parts = [
            (!prefix.is_empty()).then_some(Term::Id(prefix)),
            Some(swap),
            (!suffix.is_empty()).then_some(Term::Id(suffix)),
        ];
        layers.push(Term::par_all(parts.into_iter().flatten()).expect("swap present"));
        current.swap(p, p + 1);
    }
    Term::seq_all(layers).unwrap_or_else(|| Term::Id(g.domain()))
}
