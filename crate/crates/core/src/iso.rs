//! Backtracking search for isomorphisms and monomorphisms between
//! hypergraphs.
//!
//! Hyperedges of the pattern are visited in connectivity order so that, after
//! the first edge of each component, candidates come from the incidence lists
//! of an already mapped node rather than from the whole host.

use std::collections::{BTreeMap, BTreeSet};

use crate::hypergraph::{EdgeId, Homomorphism, Hypergraph, Incidence, NodeId};

/// A colour-, label- and port-preserving bijection from `a` to `b`, if any.
pub fn isomorphic(a: &Hypergraph, b: &Hypergraph) -> Option<Homomorphism> {
    isomorphic_with(a, b, &BTreeMap::new())
}

/// Like [`isomorphic`], but the bijection must extend `seed`.
pub fn isomorphic_with(a: &Hypergraph, b: &Hypergraph, seed: &BTreeMap<NodeId, NodeId>) -> Option<Homomorphism> {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    if invariant_profile(a) != invariant_profile(b) {
        return None;
    }
    let mut found = Vec::new();
    Search::new(a, b, Kind::Iso).run(seed, Some(1), &mut found);
    found.pop()
}

/// Every injective homomorphism from `pattern` into `host` extending `seed`,
/// in search order.
pub fn monomorphisms(pattern: &Hypergraph, host: &Hypergraph, seed: &BTreeMap<NodeId, NodeId>) -> Vec<Homomorphism> {
    let mut found = Vec::new();
    Search::new(pattern, host, Kind::Mono).run(seed, None, &mut found);
    found
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Iso,
    Mono,
}

type Profile = BTreeMap<(String, usize, usize), usize>;

fn invariant_profile(g: &Hypergraph) -> (Profile, BTreeMap<String, usize>) {
    let inc = g.incidence();
    let mut nodes = BTreeMap::new();
    for (n, c) in g.nodes() {
        *nodes
            .entry((c.clone(), inc.in_degree(n), inc.out_degree(n)))
            .or_insert(0) += 1;
    }
    let mut labels = BTreeMap::new();
    for (_, e) in g.edges() {
        *labels.entry(e.label.clone()).or_insert(0) += 1;
    }
    (nodes, labels)
}

struct Search<'a> {
    pattern: &'a Hypergraph,
    host: &'a Hypergraph,
    host_inc: Incidence,
    pattern_inc: Incidence,
    kind: Kind,
    order: Vec<EdgeId>,
    loose_nodes: Vec<NodeId>,
}

struct State {
    nodes: BTreeMap<NodeId, NodeId>,
    used_nodes: BTreeSet<NodeId>,
    edges: BTreeMap<EdgeId, EdgeId>,
    used_edges: BTreeSet<EdgeId>,
}

impl<'a> Search<'a> {
    fn new(pattern: &'a Hypergraph, host: &'a Hypergraph, kind: Kind) -> Self {
        let pattern_inc = pattern.incidence();
        let order = connectivity_order(pattern, &pattern_inc);
        let loose_nodes = pattern
            .node_ids()
            .filter(|n| pattern_inc.in_degree(*n) == 0 && pattern_inc.out_degree(*n) == 0)
            .collect();
        Search {
            pattern,
            host,
            host_inc: host.incidence(),
            pattern_inc,
            kind,
            order,
            loose_nodes,
        }
    }

    fn run(&self, seed: &BTreeMap<NodeId, NodeId>, limit: Option<usize>, out: &mut Vec<Homomorphism>) {
        let mut state = State {
            nodes: BTreeMap::new(),
            used_nodes: BTreeSet::new(),
            edges: BTreeMap::new(),
            used_edges: BTreeSet::new(),
        };
        for (p, h) in seed {
            if !self.node_compatible(*p, *h) {
                return;
            }
            match state.nodes.get(p) {
                Some(existing) if existing != h => return,
                Some(_) => continue,
                None => {}
            }
            if !state.used_nodes.insert(*h) {
                return;
            }
            state.nodes.insert(*p, *h);
        }
        self.extend_edges(0, &mut state, limit, out);
    }

    fn full(&self, limit: Option<usize>, out: &[Homomorphism]) -> bool {
        limit.is_some_and(|l| out.len() >= l)
    }

    fn node_compatible(&self, p: NodeId, h: NodeId) -> bool {
        let (Some(pc), Some(hc)) = (self.pattern.colour(p), self.host.colour(h)) else {
            return false;
        };
        if pc != hc {
            return false;
        }
        let (pi, po) = (self.pattern_inc.in_degree(p), self.pattern_inc.out_degree(p));
        let (hi, ho) = (self.host_inc.in_degree(h), self.host_inc.out_degree(h));
        match self.kind {
            Kind::Iso => pi == hi && po == ho,
            Kind::Mono => pi <= hi && po <= ho,
        }
    }

    fn extend_edges(&self, depth: usize, state: &mut State, limit: Option<usize>, out: &mut Vec<Homomorphism>) {
        if self.full(limit, out) {
            return;
        }
        let Some(&pe) = self.order.get(depth) else {
            self.extend_loose(0, state, limit, out);
            return;
        };
        let pedge = self.pattern.edge(pe).expect("pattern edge");
        for he in self.candidates(pe, state) {
            if state.used_edges.contains(&he) {
                continue;
            }
            let hedge = self.host.edge(he).expect("host edge");
            if hedge.label != pedge.label
                || hedge.sources.len() != pedge.sources.len()
                || hedge.targets.len() != pedge.targets.len()
            {
                continue;
            }
            let mut added = Vec::new();
            let mut ok = true;
            let pairs = pedge
                .sources
                .iter()
                .zip(&hedge.sources)
                .chain(pedge.targets.iter().zip(&hedge.targets));
            for (p, h) in pairs {
                match state.nodes.get(p) {
                    Some(m) if m == h => {}
                    Some(_) => {
                        ok = false;
                        break;
                    }
                    None => {
                        if state.used_nodes.contains(h) || !self.node_compatible(*p, *h) {
                            ok = false;
                            break;
                        }
                        state.nodes.insert(*p, *h);
                        state.used_nodes.insert(*h);
                        added.push((*p, *h));
                    }
                }
            }
            if ok {
                state.edges.insert(pe, he);
                state.used_edges.insert(he);
                self.extend_edges(depth + 1, state, limit, out);
                state.edges.remove(&pe);
                state.used_edges.remove(&he);
            }
            for (p, h) in added {
                state.nodes.remove(&p);
                state.used_nodes.remove(&h);
            }
            if self.full(limit, out) {
                return;
            }
        }
    }

    /// Host edges that `pe` could map to given the nodes mapped so far.
    fn candidates(&self, pe: EdgeId, state: &State) -> Vec<EdgeId> {
        let pedge = self.pattern.edge(pe).expect("pattern edge");
        for (i, s) in pedge.sources.iter().enumerate() {
            if let Some(h) = state.nodes.get(s) {
                return self
                    .host_inc
                    .consumers(*h)
                    .iter()
                    .filter(|(_, pos)| *pos == i)
                    .map(|(e, _)| *e)
                    .collect();
            }
        }
        for (i, t) in pedge.targets.iter().enumerate() {
            if let Some(h) = state.nodes.get(t) {
                return self
                    .host_inc
                    .producers(*h)
                    .iter()
                    .filter(|(_, pos)| *pos == i)
                    .map(|(e, _)| *e)
                    .collect();
            }
        }
        self.host
            .edges()
            .filter(|(_, e)| e.label == pedge.label)
            .map(|(id, _)| id)
            .collect()
    }

    fn extend_loose(&self, idx: usize, state: &mut State, limit: Option<usize>, out: &mut Vec<Homomorphism>) {
        if self.full(limit, out) {
            return;
        }
        let Some(&p) = self.loose_nodes.get(idx) else {
            out.push(Homomorphism {
                nodes: state.nodes.clone(),
                edges: state.edges.clone(),
            });
            return;
        };
        if state.nodes.contains_key(&p) {
            self.extend_loose(idx + 1, state, limit, out);
            return;
        }
        let hosts: Vec<NodeId> = self.host.node_ids().collect();
        for h in hosts {
            if state.used_nodes.contains(&h) || !self.node_compatible(p, h) {
                continue;
            }
            state.nodes.insert(p, h);
            state.used_nodes.insert(h);
            self.extend_loose(idx + 1, state, limit, out);
            state.nodes.remove(&p);
            state.used_nodes.remove(&h);
            if self.full(limit, out) {
                return;
            }
        }
    }
}

/// Pattern edges ordered so that each one after the first of its component
/// shares a node with an earlier one.
fn connectivity_order(g: &Hypergraph, inc: &Incidence) -> Vec<EdgeId> {
    let mut order = Vec::with_capacity(g.edge_count());
    let mut seen = BTreeSet::new();
    for start in g.edge_ids() {
        if !seen.insert(start) {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(e) = queue.pop_front() {
            order.push(e);
            let edge = g.edge(e).expect("edge");
            for n in edge.incident_nodes() {
                for (next, _) in inc.consumers(n).iter().chain(inc.producers(n)) {
                    if seen.insert(*next) {
                        queue.push_back(*next);
                    }
                }
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::DEFAULT_COLOUR;

    fn path_graph(labels: &[&str]) -> Hypergraph {
        let mut g = Hypergraph::new();
        let mut prev = g.add_node(DEFAULT_COLOUR);
        for l in labels {
            let next = g.add_node(DEFAULT_COLOUR);
            g.add_edge(*l, vec![prev], vec![next]).unwrap();
            prev = next;
        }
        g
    }

    #[test]
    fn graph_is_isomorphic_to_itself_via_identity() {
        let g = path_graph(&["f", "g", "f"]);
        let iso = isomorphic(&g, &g).unwrap();
        assert_eq!(iso, Homomorphism::identity(&g));
    }

    #[test]
    fn different_labels_are_not_isomorphic() {
        assert!(isomorphic(&path_graph(&["f"]), &path_graph(&["g"])).is_none());
    }

    #[test]
    fn port_order_matters() {
        let mut a = Hypergraph::new();
        let x = a.add_node(DEFAULT_COLOUR);
        let y = a.add_node(DEFAULT_COLOUR);
        let z = a.add_node(DEFAULT_COLOUR);
        a.add_edge("m", vec![x, y], vec![z]).unwrap();
        a.add_edge("u", vec![], vec![x]).unwrap();
        let mut b = Hypergraph::new();
        let x = b.add_node(DEFAULT_COLOUR);
        let y = b.add_node(DEFAULT_COLOUR);
        let z = b.add_node(DEFAULT_COLOUR);
        b.add_edge("m", vec![x, y], vec![z]).unwrap();
        b.add_edge("u", vec![], vec![y]).unwrap();
        assert!(isomorphic(&a, &b).is_none());
    }

    #[test]
    fn monomorphisms_of_edge_into_path() {
        let pattern = path_graph(&["f"]);
        let host = path_graph(&["f", "g", "f"]);
        let ms = monomorphisms(&pattern, &host, &BTreeMap::new());
        assert_eq!(ms.len(), 2);
        assert!(ms.iter().all(|m| m.is_valid(&pattern, &host) && m.is_mono()));
    }

    #[test]
    fn loose_nodes_map_injectively() {
        let mut pattern = Hypergraph::new();
        pattern.add_node(DEFAULT_COLOUR);
        pattern.add_node(DEFAULT_COLOUR);
        let host = path_graph(&["f", "f"]);
        assert_eq!(monomorphisms(&pattern, &host, &BTreeMap::new()).len(), 6);
    }
}
