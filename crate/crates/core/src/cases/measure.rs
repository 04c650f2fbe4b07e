//! Natural-number graph functionals and lexicographic termination checks.
//!
//! Hyperedges are classified by shape: `(2, 1)` multiplications, `(1, 2)`
//! comultiplications, `(0, 1)` units and `(1, 0)` counits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::cospan::InterfacedCospan;
use crate::dpo::Trace;
use crate::hypergraph::{EdgeId, Hypergraph, Incidence, NodeId};

const MU: (usize, usize) = (2, 1);
const DELTA: (usize, usize) = (1, 2);
const ETA: (usize, usize) = (0, 1);
const EPSILON: (usize, usize) = (1, 0);

/// U-paths contributed by a node that is both an input and an output.
pub const BARE_WIRE_U_PATHS: u64 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("path counts are undefined on a cyclic graph")]
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    /// Pairs (multiplication, comultiplication) with no path between them.
    D,
    /// Sum of tree weights.
    L,
    /// Paths from an input or unit to an output or counit.
    U,
    /// Paths from a multiplication to a comultiplication.
    M,
    MuCount,
    DeltaCount,
}

impl Component {
    pub fn name(self) -> &'static str {
        match self {
            Component::D => "D",
            Component::L => "L",
            Component::U => "U",
            Component::M => "M",
            Component::MuCount => "#mu",
            Component::DeltaCount => "#delta",
        }
    }

    pub fn evaluate(self, c: &InterfacedCospan) -> Result<u64, MeasureError> {
        Ok(match self {
            Component::D => d_metric(&c.graph),
            Component::L => l_weight(&c.graph),
            Component::U => u_paths(c)?,
            Component::M => m_paths(&c.graph)?,
            Component::MuCount => count_shape(&c.graph, MU),
            Component::DeltaCount => count_shape(&c.graph, DELTA),
        })
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn edges_of_shape(g: &Hypergraph, shape: (usize, usize)) -> impl Iterator<Item = EdgeId> + '_ {
    g.edges().filter(move |(_, e)| e.shape() == shape).map(|(id, _)| id)
}

pub fn count_shape(g: &Hypergraph, shape: (usize, usize)) -> u64 {
    edges_of_shape(g, shape).count() as u64
}

/// Number of multiplication hyperedges in the maximal tree of
/// multiplications whose root output is `v`.
fn mu_tree(g: &Hypergraph, inc: &Incidence, v: NodeId, seen: &mut BTreeSet<EdgeId>) -> u64 {
    let [(p, _)] = inc.producers(v) else {
        return 0;
    };
    let edge = g.edge(*p).expect("edge");
    if edge.shape() != MU || !seen.insert(*p) {
        return 0;
    }
    1 + mu_tree(g, inc, edge.sources[0], seen) + mu_tree(g, inc, edge.sources[1], seen)
}

/// Dual of [`mu_tree`]: comultiplications fed from `v`.
fn delta_tree(g: &Hypergraph, inc: &Incidence, v: NodeId, seen: &mut BTreeSet<EdgeId>) -> u64 {
    let [(c, _)] = inc.consumers(v) else {
        return 0;
    };
    let edge = g.edge(*c).expect("edge");
    if edge.shape() != DELTA || !seen.insert(*c) {
        return 0;
    }
    1 + delta_tree(g, inc, edge.targets[0], seen) + delta_tree(g, inc, edge.targets[1], seen)
}

/// `L`: each multiplication weighs the size of the tree hanging off its
/// first input, each comultiplication the size of the tree hanging off its
/// first output.
pub fn l_weight(g: &Hypergraph) -> u64 {
    let inc = g.incidence();
    let mut total = 0;
    for (_, e) in g.edges() {
        let mut seen = BTreeSet::new();
        if e.shape() == MU {
            total += mu_tree(g, &inc, e.sources[0], &mut seen);
        } else if e.shape() == DELTA {
            total += delta_tree(g, &inc, e.targets[0], &mut seen);
        }
    }
    total
}

/// `|D|`: pairs of a multiplication and a comultiplication with no path from
/// the former to the latter.
pub fn d_metric(g: &Hypergraph) -> u64 {
    let inc = g.incidence();
    let deltas: Vec<EdgeId> = edges_of_shape(g, DELTA).collect();
    edges_of_shape(g, MU)
        .map(|h| {
            let reach = inc.forward_closure(g, BTreeSet::from([h]));
            deltas.iter().filter(|d| !reach.contains(d)).count() as u64
        })
        .sum()
}

/// Counts wire-level paths: one per chain of (hyperedge, port) incidences,
/// so a hyperedge reached through two of its ports contributes twice.
struct PathCounter<'a> {
    g: &'a Hypergraph,
    inc: Incidence,
    order: Vec<EdgeId>,
}

impl<'a> PathCounter<'a> {
    fn new(g: &'a Hypergraph) -> Result<Self, MeasureError> {
        let order = g.topological_order().ok_or(MeasureError::Cyclic)?;
        Ok(PathCounter {
            g,
            inc: g.incidence(),
            order,
        })
    }

    /// `start(v)` paths begin at node `v`, `seed(h)` at hyperedge `h`.
    /// Returns per-node and per-hyperedge counts of paths ending there.
    fn run(
        &self,
        start: impl Fn(NodeId) -> u64,
        seed: impl Fn(EdgeId) -> u64,
    ) -> (BTreeMap<NodeId, u64>, BTreeMap<EdgeId, u64>) {
        let mut at_node: BTreeMap<NodeId, u64> = BTreeMap::new();
        let mut at_edge: BTreeMap<EdgeId, u64> = BTreeMap::new();
        let node_value = |v: NodeId, at_edge: &BTreeMap<EdgeId, u64>| -> u64 {
            start(v) + self.inc.producers(v).iter().map(|(p, _)| at_edge[p]).sum::<u64>()
        };
        for e in &self.order {
            let edge = self.g.edge(*e).expect("edge");
            let incoming: u64 = edge.sources.iter().map(|s| node_value(*s, &at_edge)).sum();
            at_edge.insert(*e, seed(*e) + incoming);
        }
        for v in self.g.node_ids() {
            at_node.insert(v, node_value(v, &at_edge));
        }
        (at_node, at_edge)
    }
}

/// `U`: paths from an input or unit to an output or counit.
pub fn u_paths(c: &InterfacedCospan) -> Result<u64, MeasureError> {
    let counter = PathCounter::new(&c.graph)?;
    let inputs: BTreeSet<NodeId> = c.inputs.iter().copied().collect();
    let g = &c.graph;
    let (at_node, at_edge) = counter.run(
        |v| if inputs.contains(&v) { BARE_WIRE_U_PATHS } else { 0 },
        |e| u64::from(g.edge(e).expect("edge").shape() == ETA),
    );
    let to_outputs: u64 = c.outputs.iter().map(|v| at_node[v]).sum();
    let to_counits: u64 = edges_of_shape(g, EPSILON).map(|e| at_edge[&e]).sum();
    Ok(to_outputs + to_counits)
}

/// `M`: paths from a multiplication to a comultiplication.
pub fn m_paths(g: &Hypergraph) -> Result<u64, MeasureError> {
    let counter = PathCounter::new(g)?;
    let (_, at_edge) = counter.run(|_| 0, |e| u64::from(g.edge(e).expect("edge").shape() == MU));
    Ok(edges_of_shape(g, DELTA).map(|d| at_edge[&d]).sum())
}

/// A lexicographic combination of components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    pub name: String,
    pub components: Vec<Component>,
}

pub fn lex_measure(name: &str, components: &[Component]) -> Measure {
    Measure {
        name: name.to_string(),
        components: components.to_vec(),
    }
}

impl Measure {
    pub fn fs() -> Measure {
        lex_measure("fs", &[Component::D, Component::L])
    }

    pub fn ba() -> Measure {
        lex_measure(
            "ba",
            &[
                Component::U,
                Component::M,
                Component::MuCount,
                Component::DeltaCount,
                Component::L,
            ],
        )
    }

    pub fn value(&self, c: &InterfacedCospan) -> Result<Vec<u64>, MeasureError> {
        self.components.iter().map(|k| k.evaluate(c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub rule: String,
    pub before: Vec<u64>,
    pub after: Vec<u64>,
    /// Index of the first component that differs, if it went down.
    pub decreased: Option<usize>,
    /// Indices of components with equal values.
    pub equal: Vec<usize>,
}

impl StepRecord {
    pub fn passed(&self) -> bool {
        self.decreased.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingReport {
    pub measure: Measure,
    pub initial: Vec<u64>,
    pub records: Vec<StepRecord>,
}

impl OrderingReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(StepRecord::passed)
    }

    /// Steps where the deciding component differs from `expected(rule)`.
    pub fn pattern_mismatches(&self, expected: impl Fn(&str) -> Option<Component>) -> Vec<String> {
        self.records
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let want = expected(&r.rule)?;
                let got = r.decreased.map(|k| self.measure.components[k]);
                (got != Some(want)).then(|| {
                    format!(
                        "step {}: {} expected {} to decide, got {}",
                        i + 1,
                        r.rule,
                        want,
                        got.map_or("none".to_string(), |c| c.to_string())
                    )
                })
            })
            .collect()
    }
}

/// Index of the first differing component if `after` is lexicographically
/// smaller than `before`.
fn lex_decrease(before: &[u64], after: &[u64]) -> Option<usize> {
    let k = before.iter().zip(after).position(|(b, a)| b != a)?;
    (after[k] < before[k]).then_some(k)
}

/// Measures every state of the trace and records each step's comparison.
pub fn check_decrease(trace: &Trace, measure: &Measure) -> Result<OrderingReport, MeasureError> {
    let initial = measure.value(&trace.initial)?;
    let mut before = initial.clone();
    let mut records = Vec::with_capacity(trace.steps.len());
    for step in &trace.steps {
        let after = measure.value(&step.result)?;
        records.push(StepRecord {
            rule: step.rule.clone(),
            decreased: lex_decrease(&before, &after),
            equal: (0..before.len()).filter(|k| before[*k] == after[*k]).collect(),
            before,
            after: after.clone(),
        });
        before = after;
    }
    Ok(OrderingReport {
        measure: measure.clone(),
        initial,
        records,
    })
}

/// Upper bound on FS trace length from `g`: the number of values `(D, L)`
/// can take below the start, given that FS rules preserve hyperedge counts.
pub fn fs_step_bound(g: &Hypergraph) -> u64 {
    let mu = count_shape(g, MU);
    let delta = count_shape(g, DELTA);
    let l_max = mu * mu.saturating_sub(1) + delta * delta.saturating_sub(1);
    (d_metric(g) + 1) * (l_max + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::theories::{ba_signature, NON_CONFLUENCE_HOST};
    use crate::signature::plain_word;
    use crate::term::parse;

    fn cospan(text: &str) -> InterfacedCospan {
        let s = ba_signature();
        parse(text, &s).unwrap().interpret(&s).unwrap()
    }

    #[test]
    fn l_weight_of_chains() {
        assert_eq!(l_weight(&cospan("(id(1) + m) ; m").graph), 0);
        assert_eq!(l_weight(&cospan("(m + id(1)) ; m").graph), 1);
        assert_eq!(l_weight(&cospan("u ; e").graph), 0);
        assert_eq!(l_weight(&cospan("d ; (d + id(1))").graph), 1);
    }

    #[test]
    fn d_metric_examples() {
        assert_eq!(d_metric(&cospan(NON_CONFLUENCE_HOST).graph), 4);
        assert_eq!(d_metric(&cospan("(d + id(1)) ; (id(1) + m)").graph), 1);
        assert_eq!(d_metric(&cospan("m ; d").graph), 0);
        assert_eq!(d_metric(&cospan("m ; e").graph), 0);
    }

    #[test]
    fn path_counts() {
        let id = InterfacedCospan::identity(&plain_word(1));
        assert_eq!(u_paths(&id).unwrap(), 1);
        assert_eq!(m_paths(&id.graph).unwrap(), 0);
        assert_eq!(u_paths(&cospan("u ; e")).unwrap(), 1);
        assert_eq!(u_paths(&cospan("id(0)")).unwrap(), 0);
        assert_eq!(m_paths(&cospan("m ; d").graph).unwrap(), 1);
        assert_eq!(m_paths(&cospan(NON_CONFLUENCE_HOST).graph).unwrap(), 0);
    }

    #[test]
    fn cyclic_graphs_have_no_path_count() {
        let mut g = Hypergraph::new();
        let a = g.add_node("•");
        g.add_edge("f", vec![a], vec![a]).unwrap();
        assert_eq!(m_paths(&g), Err(MeasureError::Cyclic));
    }

    #[test]
    fn lexicographic_decrease() {
        assert_eq!(lex_decrease(&[2, 5], &[1, 9]), Some(0));
        assert_eq!(lex_decrease(&[2, 5], &[2, 4]), Some(1));
        assert_eq!(lex_decrease(&[2, 5], &[2, 5]), None);
        assert_eq!(lex_decrease(&[2, 5], &[3, 0]), None);
    }
}
