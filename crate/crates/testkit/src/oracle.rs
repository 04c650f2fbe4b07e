//! Reference implementations that share no code with the library's own
//! algorithms. They are slow and only meant for small inputs.

use std::collections::{BTreeMap, BTreeSet};

use sdrw::hypergraph::Endpoint;
use sdrw::signature::{Colour, Signature, Word};
use sdrw::{EdgeId, Homomorphism, Hypergraph, InterfacedCospan, NodeId, SubgraphSelection, Term};

/// Walk reachability between hyperedges by Warshall's algorithm:
/// `reach[a][b]` iff some hyperedge sequence starts at `a` and ends at `b`.
pub struct Reach {
    edges: Vec<EdgeId>,
    reach: Vec<Vec<bool>>,
}

impl Reach {
    pub fn new(g: &Hypergraph) -> Self {
        let edges: Vec<EdgeId> = g.edge_ids().collect();
        let n = edges.len();
        let mut reach = vec![vec![false; n]; n];
        for (a, ea) in edges.iter().enumerate() {
            reach[a][a] = true;
            for (b, eb) in edges.iter().enumerate() {
                let ta = &g.edge(*ea).unwrap().targets;
                if g.edge(*eb).unwrap().sources.iter().any(|s| ta.contains(s)) {
                    reach[a][b] = true;
                }
            }
        }
        #[allow(clippy::needless_range_loop)]
        for k in 0..n {
            for a in 0..n {
                if reach[a][k] {
                    for b in 0..n {
                        if reach[k][b] {
                            reach[a][b] = true;
                        }
                    }
                }
            }
        }
        Reach { edges, reach }
    }

    fn index(&self, e: EdgeId) -> usize {
        self.edges.iter().position(|x| *x == e).unwrap()
    }

    pub fn edge_to_edge(&self, a: EdgeId, b: EdgeId) -> bool {
        self.reach[self.index(a)][self.index(b)]
    }

    /// Whether a sequence with one hyperedge of `from` at its start and one
    /// of `to` at its end exists. Only a length-one sequence may repeat its
    /// single hyperedge as both ends, which `reach[a][a]` already encodes.
    fn any(&self, from: &[EdgeId], to: &[EdgeId]) -> bool {
        from.iter().any(|a| to.iter().any(|b| self.edge_to_edge(*a, *b)))
    }
}

fn consumers(g: &Hypergraph, nodes: &BTreeSet<NodeId>) -> Vec<EdgeId> {
    g.edges()
        .filter(|(_, e)| e.sources.iter().any(|s| nodes.contains(s)))
        .map(|(id, _)| id)
        .collect()
}

fn producers(g: &Hypergraph, nodes: &BTreeSet<NodeId>) -> Vec<EdgeId> {
    g.edges()
        .filter(|(_, e)| e.targets.iter().any(|t| nodes.contains(t)))
        .map(|(id, _)| id)
        .collect()
}

fn start_edges(g: &Hypergraph, end: &Endpoint<'_>) -> Vec<EdgeId> {
    match end {
        Endpoint::Node(n) => consumers(g, &BTreeSet::from([*n])),
        Endpoint::Edge(e) => vec![*e],
        Endpoint::Selection(s) => consumers(g, &s.nodes),
    }
}

fn end_edges(g: &Hypergraph, end: &Endpoint<'_>) -> Vec<EdgeId> {
    match end {
        Endpoint::Node(n) => producers(g, &BTreeSet::from([*n])),
        Endpoint::Edge(e) => vec![*e],
        Endpoint::Selection(s) => producers(g, &s.nodes),
    }
}

pub fn has_path(g: &Hypergraph, from: Endpoint<'_>, to: Endpoint<'_>) -> bool {
    Reach::new(g).any(&start_edges(g, &from), &end_edges(g, &to))
}

/// No node reaches itself.
pub fn is_acyclic(g: &Hypergraph) -> bool {
    let r = Reach::new(g);
    g.node_ids().all(|n| {
        let one = BTreeSet::from([n]);
        !r.any(&consumers(g, &one), &producers(g, &one))
    })
}

/// No hyperedge outside the selection lies on a path from a selected node
/// to a selected node.
pub fn is_convex(g: &Hypergraph, sel: &SubgraphSelection) -> bool {
    let r = Reach::new(g);
    let starts = consumers(g, &sel.nodes);
    let ends = producers(g, &sel.nodes);
    g.edge_ids()
        .filter(|e| !sel.edges.contains(e))
        .all(|e| !(starts.iter().any(|s| r.edge_to_edge(*s, e)) && ends.iter().any(|t| r.edge_to_edge(e, *t))))
}

/// Every simple path (no hyperedge repeated) from node `x` to node `y`.
pub fn simple_paths(g: &Hypergraph, x: NodeId, y: NodeId) -> Vec<Vec<EdgeId>> {
    fn extend(g: &Hypergraph, path: &mut Vec<EdgeId>, y: NodeId, out: &mut Vec<Vec<EdgeId>>) {
        let last = g.edge(*path.last().unwrap()).unwrap();
        if last.targets.contains(&y) {
            out.push(path.clone());
        }
        let next: Vec<EdgeId> = g
            .edges()
            .filter(|(id, e)| !path.contains(id) && e.sources.iter().any(|s| last.targets.contains(s)))
            .map(|(id, _)| id)
            .collect();
        for e in next {
            path.push(e);
            extend(g, path, y, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for (id, e) in g.edges() {
        if e.sources.contains(&x) {
            extend(g, &mut vec![id], y, &mut out);
        }
    }
    out
}

/// Convexity as literally defined, by listing the simple paths between
/// every pair of selected nodes. On cyclic graphs this can differ from the
/// walk-based [`is_convex`].
pub fn is_convex_by_paths(g: &Hypergraph, sel: &SubgraphSelection) -> bool {
    sel.nodes.iter().all(|x| {
        sel.nodes
            .iter()
            .all(|y| simple_paths(g, *x, *y).iter().flatten().all(|e| sel.edges.contains(e)))
    })
}

/// Degree counted by scanning every port of every hyperedge.
pub fn degrees(g: &Hypergraph, n: NodeId) -> (usize, usize) {
    let mut d = (0, 0);
    for (_, e) in g.edges() {
        d.0 += e.targets.iter().filter(|t| **t == n).count();
        d.1 += e.sources.iter().filter(|s| **s == n).count();
    }
    d
}

/// Monogamy and acyclicity straight from the definitions.
pub fn is_ma(c: &InterfacedCospan) -> bool {
    let distinct = |v: &[NodeId]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
    distinct(&c.inputs)
        && distinct(&c.outputs)
        && c.graph.node_ids().all(|n| {
            let (i, o) = degrees(&c.graph, n);
            i == usize::from(!c.inputs.contains(&n)) && o == usize::from(!c.outputs.contains(&n))
        })
        && is_acyclic(&c.graph)
}

/// What deleting a left-linear match leaves behind: the host minus the
/// matched hyperedges and the matched nodes that are not interface images.
pub fn deletion_remainder(host: &Hypergraph, hom: &Homomorphism, lhs_interface: &[NodeId]) -> SubgraphSelection {
    let kept: BTreeSet<NodeId> = lhs_interface.iter().map(|n| hom.nodes[n]).collect();
    let gone_nodes: BTreeSet<NodeId> = hom.nodes.values().filter(|n| !kept.contains(n)).copied().collect();
    let gone_edges: BTreeSet<EdgeId> = hom.edges.values().copied().collect();
    SubgraphSelection::new(
        host.node_ids().filter(|n| !gone_nodes.contains(n)),
        host.edge_ids().filter(|e| !gone_edges.contains(e)),
    )
}

/// A rewrite found by splitting the host into `before ; (id + lhs) ; after`.
#[derive(Clone, Debug)]
pub struct Redex {
    /// Host hyperedges playing the role of the left-hand side.
    pub edges: BTreeSet<EdgeId>,
    /// `before ; (id + rhs) ; after` written out as a term.
    pub term: Term,
    pub result: InterfacedCospan,
}

struct Layers<'a> {
    g: &'a Hypergraph,
    wires: Vec<NodeId>,
    terms: Vec<Term>,
}

impl Layers<'_> {
    fn word(&self, nodes: &[NodeId]) -> Word {
        nodes.iter().map(|n| self.g.colour(*n).unwrap().clone()).collect()
    }

    /// Reorders the wires into `target` by moving one wire at a time to its
    /// place with a block symmetry.
    fn permute(&mut self, target: &[NodeId]) {
        assert_eq!(self.wires.len(), target.len());
        for (t, want) in target.iter().enumerate() {
            let p = self.wires.iter().position(|n| n == want).expect("wire present");
            if p == t {
                continue;
            }
            let parts = [
                (t > 0).then(|| Term::Id(self.word(&self.wires[..t]))),
                Some(Term::Sym(self.word(&self.wires[t..p]), self.word(&self.wires[p..=p]))),
                (p + 1 < self.wires.len()).then(|| Term::Id(self.word(&self.wires[p + 1..]))),
            ];
            self.terms.push(Term::par_all(parts.into_iter().flatten()).unwrap());
            let n = self.wires.remove(p);
            self.wires.insert(t, n);
        }
    }

    /// Brings `inputs` to the end of the wires, then applies `block` to them.
    fn apply(&mut self, inputs: &[NodeId], block: Term, outputs: &[NodeId]) {
        let rest: Vec<NodeId> = self.wires.iter().filter(|n| !inputs.contains(n)).copied().collect();
        let target: Vec<NodeId> = rest.iter().chain(inputs).copied().collect();
        self.permute(&target);
        let layer = if rest.is_empty() {
            block
        } else {
            Term::par(Term::Id(self.word(&rest)), block)
        };
        self.terms.push(layer);
        self.wires = rest.into_iter().chain(outputs.iter().copied()).collect();
    }

    /// Emits the hyperedges of `set` one by one, always the smallest id whose
    /// sources are all available.
    fn edges(&mut self, set: &BTreeSet<EdgeId>) {
        let mut left = set.clone();
        while !left.is_empty() {
            let e = *left
                .iter()
                .find(|e| self.g.edge(**e).unwrap().sources.iter().all(|s| self.wires.contains(s)))
                .expect("prefix-closed set has a ready hyperedge");
            left.remove(&e);
            let edge = self.g.edge(e).unwrap();
            self.apply(
                &edge.sources.clone(),
                Term::Gen(edge.label.clone()),
                &edge.targets.clone(),
            );
        }
    }
}

fn permutations(items: &[NodeId]) -> Vec<Vec<NodeId>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn subsets(items: &[EdgeId]) -> impl Iterator<Item = BTreeSet<EdgeId>> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| *e)
            .collect()
    })
}

/// Every hyperedge that produces one of `e`'s sources.
fn direct_predecessors(g: &Hypergraph, e: EdgeId) -> Vec<EdgeId> {
    let sources = &g.edge(e).unwrap().sources;
    g.edges()
        .filter(|(_, f)| f.targets.iter().any(|t| sources.contains(t)))
        .map(|(id, _)| id)
        .collect()
}

fn prefix_closed(g: &Hypergraph, set: &BTreeSet<EdgeId>) -> bool {
    set.iter()
        .all(|e| direct_predecessors(g, *e).iter().all(|p| set.contains(p)))
}

/// All rewrites of `host` by `lhs -> rhs` obtained from a factorisation
/// `host = before ; (id + lhs) ; after`, found by trying every split of the
/// host's hyperedges into a prefix-closed `before`, a window and the rest,
/// and every ordering of the window's boundary wires. The host must be
/// monogamous acyclic and `lhs` must have no bare wires.
pub fn syntactic_redexes(host: &InterfacedCospan, lhs: &Term, rhs: &Term, sig: &Signature) -> Vec<Redex> {
    let l = lhs.interpret(sig).unwrap();
    let g = &host.graph;
    let all: Vec<EdgeId> = g.edge_ids().collect();
    let labels = |edges: &mut dyn Iterator<Item = &str>| {
        let mut v: Vec<String> = edges.map(str::to_string).collect();
        v.sort();
        v
    };
    let l_labels = labels(&mut l.graph.edges().map(|(_, e)| e.label.as_str()));
    let mut out = Vec::new();
    for window in subsets(&all) {
        if window.len() != l_labels.len()
            || labels(&mut window.iter().map(|e| g.edge(*e).unwrap().label.as_str())) != l_labels
        {
            continue;
        }
        let produced: BTreeSet<NodeId> = window
            .iter()
            .flat_map(|e| g.edge(*e).unwrap().targets.clone())
            .collect();
        let consumed: BTreeSet<NodeId> = window
            .iter()
            .flat_map(|e| g.edge(*e).unwrap().sources.clone())
            .collect();
        let i: Vec<NodeId> = consumed.difference(&produced).copied().collect();
        let j: Vec<NodeId> = produced.difference(&consumed).copied().collect();
        let piece = SubgraphSelection::from_edges(g, window.iter().copied()).unwrap();
        let piece_graph = g.subgraph(&piece).unwrap();
        let fits: Vec<(Vec<NodeId>, Vec<NodeId>)> = permutations(&i)
            .into_iter()
            .flat_map(|ip| permutations(&j).into_iter().map(move |jp| (ip.clone(), jp)))
            .filter(|(ip, jp)| {
                InterfacedCospan::new(piece_graph.clone(), ip.clone(), jp.clone())
                    .unwrap()
                    .is_isomorphic(&l)
            })
            .collect();
        if fits.is_empty() {
            continue;
        }
        let others: Vec<EdgeId> = all.iter().filter(|e| !window.contains(e)).copied().collect();
        for before in subsets(&others) {
            let upto: BTreeSet<EdgeId> = before.union(&window).copied().collect();
            if !prefix_closed(g, &before) || !prefix_closed(g, &upto) {
                continue;
            }
            let after: BTreeSet<EdgeId> = others.iter().filter(|e| !before.contains(e)).copied().collect();
            for (ip, jp) in &fits {
                let mut layers = Layers {
                    g,
                    wires: host.inputs.clone(),
                    terms: Vec::new(),
                };
                layers.edges(&before);
                layers.apply(ip, rhs.clone(), jp);
                layers.edges(&after);
                layers.permute(&host.outputs);
                let term = Term::seq_all(layers.terms).unwrap_or_else(|| Term::Id(layers_word(g, &host.inputs)));
                let result = term.interpret(sig).expect("layered term is well typed");
                out.push(Redex {
                    edges: window.clone(),
                    term,
                    result,
                });
            }
        }
    }
    out
}

fn layers_word(g: &Hypergraph, nodes: &[NodeId]) -> Vec<Colour> {
    nodes.iter().map(|n| g.colour(*n).unwrap().clone()).collect()
}

/// Groups results by window and keeps one representative per isomorphism
/// class.
pub fn distinct_results<'a>(
    items: impl IntoIterator<Item = (BTreeSet<EdgeId>, &'a InterfacedCospan)>,
) -> BTreeMap<BTreeSet<EdgeId>, Vec<&'a InterfacedCospan>> {
    let mut out: BTreeMap<BTreeSet<EdgeId>, Vec<&InterfacedCospan>> = BTreeMap::new();
    for (key, c) in items {
        let class = out.entry(key).or_default();
        if !class.iter().any(|d| d.is_isomorphic(c)) {
            class.push(c);
        }
    }
    out
}

/// Wire-level path counts by exhaustive forward enumeration: a path leaves a
/// node through each consuming port separately and a hyperedge through each
/// target port separately. `starts` gives how many paths begin at each node,
/// `seeds` which hyperedges begin one, `node_end`/`edge_end` where they may
/// stop. Exponential; acyclic graphs only.
pub fn count_wire_paths(
    g: &Hypergraph,
    starts: &dyn Fn(NodeId) -> u64,
    seeds: &dyn Fn(EdgeId) -> bool,
    node_end: &dyn Fn(NodeId) -> bool,
    edge_end: &dyn Fn(EdgeId) -> bool,
) -> u64 {
    fn from_node(
        g: &Hypergraph,
        v: NodeId,
        node_end: &dyn Fn(NodeId) -> bool,
        edge_end: &dyn Fn(EdgeId) -> bool,
    ) -> u64 {
        let mut n = u64::from(node_end(v));
        for (id, e) in g.edges() {
            for s in &e.sources {
                if *s == v {
                    n += from_edge(g, id, node_end, edge_end);
                }
            }
        }
        n
    }
    fn from_edge(
        g: &Hypergraph,
        e: EdgeId,
        node_end: &dyn Fn(NodeId) -> bool,
        edge_end: &dyn Fn(EdgeId) -> bool,
    ) -> u64 {
        let mut n = u64::from(edge_end(e));
        for t in &g.edge(e).unwrap().targets {
            n += from_node(g, *t, node_end, edge_end);
        }
        n
    }
    let by_nodes: u64 = g
        .node_ids()
        .map(|v| starts(v) * from_node(g, v, node_end, edge_end))
        .sum();
    let by_edges: u64 = g
        .edge_ids()
        .filter(|e| seeds(*e))
        .map(|e| from_edge(g, e, node_end, edge_end))
        .sum();
    by_nodes + by_edges
}

fn shape_is(g: &Hypergraph, e: EdgeId, shape: (usize, usize)) -> bool {
    let e = g.edge(e).unwrap();
    (e.sources.len(), e.targets.len()) == shape
}

/// U-paths: from an input or a `(0,1)` hyperedge to an output or a `(1,0)`
/// hyperedge.
pub fn u_paths(c: &InterfacedCospan) -> u64 {
    let g = &c.graph;
    count_wire_paths(
        g,
        &|v| u64::from(c.inputs.contains(&v)),
        &|e| shape_is(g, e, (0, 1)),
        &|v| c.outputs.contains(&v),
        &|e| shape_is(g, e, (1, 0)),
    )
}

/// M-paths: from a `(2,1)` hyperedge to a `(1,2)` hyperedge. The starting
/// hyperedge itself is never an end.
pub fn m_paths(g: &Hypergraph) -> u64 {
    g.edge_ids()
        .filter(|e| shape_is(g, *e, (2, 1)))
        .map(|e| {
            g.edge(e)
                .unwrap()
                .targets
                .iter()
                .map(|t| {
                    count_wire_paths(g, &|v| u64::from(v == *t), &|_| false, &|_| false, &|x| {
                        shape_is(g, x, (1, 2))
                    })
                })
                .sum::<u64>()
        })
        .sum()
}

/// Pairs of a `(2,1)` and a `(1,2)` hyperedge with no path between them.
pub fn d_metric(g: &Hypergraph) -> u64 {
    let mus: Vec<EdgeId> = g.edge_ids().filter(|e| shape_is(g, *e, (2, 1))).collect();
    let deltas: Vec<EdgeId> = g.edge_ids().filter(|e| shape_is(g, *e, (1, 2))).collect();
    let r = Reach::new(g);
    mus.iter()
        .flat_map(|m| deltas.iter().map(move |d| (*m, *d)))
        .filter(|(m, d)| !r.edge_to_edge(*m, *d))
        .count() as u64
}
