//! Pushout complements of a match along a rule's interface `i + j -> L`.
//!
//! The complement `C` keeps every host node outside the match with its host
//! id, every unmatched host hyperedge with its host id, and one fresh node
//! per class of interface points. Fresh nodes are numbered after the host's
//! largest node id, in order of the smallest interface point of each class,
//! so complements built by different routes compare equal with `==`.

use std::collections::{BTreeMap, BTreeSet};

use crate::cospan::InterfacedCospan;
use crate::hypergraph::{EdgeId, Homomorphism, Hypergraph, NodeId};

use super::Match;

/// A context `C` with `c : i + j -> C`, `d : n + m -> C` and `g : C -> D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    pub graph: Hypergraph,
    /// `c`, indexed by interface point (inputs of the rule first).
    pub interface: Vec<NodeId>,
    /// `d1 : n -> C`.
    pub inputs: Vec<NodeId>,
    /// `d2 : m -> C`.
    pub outputs: Vec<NodeId>,
    /// `g : C -> D`.
    pub to_host: Homomorphism,
    pub boundary: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Source(EdgeId, usize),
    Target(EdgeId, usize),
    Input(usize),
    Output(usize),
}

/// The parts of a match that every complement shares.
struct Frame<'m, 'a> {
    m: &'m Match<'a>,
    /// `f(a(p))` for each interface point `p`.
    glued: Vec<NodeId>,
    matched_nodes: BTreeSet<NodeId>,
    matched_edges: BTreeSet<EdgeId>,
    /// Incidences of unmatched host structure at glued nodes.
    slots: Vec<(Slot, NodeId)>,
    fresh_base: u32,
}

impl<'m, 'a> Frame<'m, 'a> {
    /// `None` if the dangling condition fails: some unmatched hyperedge or
    /// host interface point touches a matched node outside `f(a(i + j))`.
    fn new(m: &'m Match<'a>) -> Option<Self> {
        let host = &m.host.graph;
        let glued = m.interface_image();
        let glued_set: BTreeSet<NodeId> = glued.iter().copied().collect();
        let matched_nodes: BTreeSet<NodeId> = m.hom.nodes.values().copied().collect();
        let matched_edges: BTreeSet<EdgeId> = m.hom.edges.values().copied().collect();
        let deleted = |v: &NodeId| matched_nodes.contains(v) && !glued_set.contains(v);
        let mut slots = Vec::new();
        for (id, e) in host.edges() {
            if matched_edges.contains(&id) {
                continue;
            }
            for (k, v) in e.sources.iter().enumerate() {
                if deleted(v) {
                    return None;
                }
                if glued_set.contains(v) {
                    slots.push((Slot::Source(id, k), *v));
                }
            }
            for (k, v) in e.targets.iter().enumerate() {
                if deleted(v) {
                    return None;
                }
                if glued_set.contains(v) {
                    slots.push((Slot::Target(id, k), *v));
                }
            }
        }
        for (k, v) in m.host.inputs.iter().enumerate() {
            if deleted(v) {
                return None;
            }
            if glued_set.contains(v) {
                slots.push((Slot::Input(k), *v));
            }
        }
        for (k, v) in m.host.outputs.iter().enumerate() {
            if deleted(v) {
                return None;
            }
            if glued_set.contains(v) {
                slots.push((Slot::Output(k), *v));
            }
        }
        Some(Frame {
            m,
            glued,
            matched_nodes,
            matched_edges,
            slots,
            fresh_base: host.next_node_id().0,
        })
    }

    fn n_inputs(&self) -> usize {
        self.m.rule.inputs.len()
    }

    /// Builds the complement for a partition of the interface points
    /// (`class_of`, classes numbered by first point) and a class for every
    /// slot.
    fn build(&self, class_of: &[usize], choice: &BTreeMap<Slot, usize>) -> Complement {
        let host = &self.m.host;
        let fresh = |c: usize| NodeId(self.fresh_base + c as u32);
        let n_classes = class_of.iter().max().map_or(0, |c| c + 1);
        let mut graph = Hypergraph::new();
        let mut to_host = Homomorphism::default();
        for (v, colour) in host.graph.nodes() {
            if !self.matched_nodes.contains(&v) {
                graph.insert_node(v, colour.clone()).expect("fresh id");
                to_host.nodes.insert(v, v);
            }
        }
        for c in 0..n_classes {
            let p = class_of.iter().position(|x| *x == c).expect("class has a point");
            let v = self.glued[p];
            graph
                .insert_node(fresh(c), host.graph.colour(v).expect("node").clone())
                .expect("fresh id");
            to_host.nodes.insert(fresh(c), v);
        }
        let place = |slot: Slot, v: NodeId| -> NodeId {
            match choice.get(&slot) {
                Some(c) => fresh(*c),
                None => v,
            }
        };
        for (id, e) in host.graph.edges() {
            if self.matched_edges.contains(&id) {
                continue;
            }
            let sources = e
                .sources
                .iter()
                .enumerate()
                .map(|(k, v)| place(Slot::Source(id, k), *v))
                .collect();
            let targets = e
                .targets
                .iter()
                .enumerate()
                .map(|(k, v)| place(Slot::Target(id, k), *v))
                .collect();
            graph
                .insert_edge(id, e.label.clone(), sources, targets)
                .expect("nodes present");
            to_host.edges.insert(id, id);
        }
        let inputs: Vec<NodeId> = host
            .inputs
            .iter()
            .enumerate()
            .map(|(k, v)| place(Slot::Input(k), *v))
            .collect();
        let outputs: Vec<NodeId> = host
            .outputs
            .iter()
            .enumerate()
            .map(|(k, v)| place(Slot::Output(k), *v))
            .collect();
        let interface: Vec<NodeId> = class_of.iter().map(|c| fresh(*c)).collect();

        let injective = n_classes == class_of.len();
        let (ci, cj) = interface.split_at(self.n_inputs());
        let induced = InterfacedCospan {
            graph: graph.clone(),
            inputs: cj.iter().chain(&inputs).copied().collect(),
            outputs: ci.iter().chain(&outputs).copied().collect(),
        };
        let boundary = injective && induced.is_monogamous();
        Complement {
            graph,
            interface,
            inputs,
            outputs,
            to_host,
            boundary,
        }
    }

    /// Interface points grouped by their common image.
    fn fibres(&self) -> Vec<Vec<usize>> {
        let mut by_node: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
        for (p, v) in self.glued.iter().enumerate() {
            by_node.entry(*v).or_default().push(p);
        }
        by_node.into_values().collect()
    }
}

/// Relabels classes in order of their first point.
fn canonical(class_of: &[usize]) -> Vec<usize> {
    let mut names = BTreeMap::new();
    class_of
        .iter()
        .map(|c| {
            let next = names.len();
            *names.entry(*c).or_insert(next)
        })
        .collect()
}

/// All set partitions of `0..n` as restricted growth strings.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for c in 0..=limit {
            prefix.push(c);
            go(prefix, max.max(c), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 0, n, &mut out);
    out
}

/// Every pushout complement of the match, by brute force over quotients of
/// the interface inside each fibre of `a` and over the attachment of every
/// unmatched incidence at a glued node.
pub fn enumerate_pushout_complements(m: &Match<'_>) -> Vec<Complement> {
    let Some(frame) = Frame::new(m) else {
        return Vec::new();
    };
    let fibres = frame.fibres();
    let per_fibre: Vec<Vec<Vec<usize>>> = fibres.iter().map(|f| partitions(f.len())).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; fibres.len()];
    loop {
        let mut raw = vec![0usize; frame.glued.len()];
        for (fi, fibre) in fibres.iter().enumerate() {
            let rgs = &per_fibre[fi][pick[fi]];
            for (k, p) in fibre.iter().enumerate() {
                raw[*p] = fi * frame.glued.len() + rgs[k];
            }
        }
        let class_of = canonical(&raw);
        enumerate_choices(&frame, &class_of, &mut out);
        if !advance(&mut pick, |i| per_fibre[i].len()) {
            break;
        }
    }
    out
}

fn enumerate_choices(frame: &Frame<'_, '_>, class_of: &[usize], out: &mut Vec<Complement>) {
    let mut classes_at: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
    for (p, c) in class_of.iter().enumerate() {
        let list = classes_at.entry(frame.glued[p]).or_default();
        if !list.contains(c) {
            list.push(*c);
        }
    }
    let options: Vec<&Vec<usize>> = frame.slots.iter().map(|(_, v)| &classes_at[v]).collect();
    let mut pick = vec![0usize; options.len()];
    loop {
        let choice: BTreeMap<Slot, usize> = frame
            .slots
            .iter()
            .zip(&options)
            .zip(&pick)
            .map(|(((slot, _), opts), k)| (*slot, opts[*k]))
            .collect();
        out.push(frame.build(class_of, &choice));
        if !advance(&mut pick, |i| options[i].len()) {
            break;
        }
    }
}

/// Odometer step over mixed radices; false once every digit wrapped.
fn advance(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radix(i) {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// The boundary complement, built directly: one fresh node per interface
/// point, and where an input point and an output point of the rule share a
/// host node, consumers attach to the output point and producers to the
/// input point. `None` if the result is not a boundary complement.
pub fn boundary_complement(m: &Match<'_>) -> Option<Complement> {
    let frame = Frame::new(m)?;
    let n_in = frame.n_inputs();
    let class_of: Vec<usize> = (0..frame.glued.len()).collect();
    let mut at: BTreeMap<NodeId, (Option<usize>, Option<usize>)> = BTreeMap::new();
    for (p, v) in frame.glued.iter().enumerate() {
        let entry = at.entry(*v).or_default();
        let side = if p < n_in { &mut entry.0 } else { &mut entry.1 };
        if side.replace(p).is_some() {
            return None;
        }
    }
    let mut choice = BTreeMap::new();
    for (slot, v) in &frame.slots {
        let pick = match (at[v], slot) {
            ((Some(i), None), _) | ((None, Some(i)), _) => i,
            ((Some(_), Some(j)), Slot::Source(..) | Slot::Output(_)) => j,
            ((Some(i), Some(_)), Slot::Target(..) | Slot::Input(_)) => i,
            ((None, None), _) => unreachable!("glued node has a point"),
        };
        choice.insert(*slot, pick);
    }
    let c = frame.build(&class_of, &choice);
    c.boundary.then_some(c)
}

/// The unique complement of a left-linear rule: delete the matched
/// hyperedges and the matched nodes outside the interface.
pub fn deletion_complement(m: &Match<'_>) -> Option<Complement> {
    if !m.rule.is_left_linear() {
        return None;
    }
    let frame = Frame::new(m)?;
    let class_of: Vec<usize> = (0..frame.glued.len()).collect();
    let point_at: BTreeMap<NodeId, usize> = frame.glued.iter().enumerate().map(|(p, v)| (*v, p)).collect();
    let choice = frame.slots.iter().map(|(slot, v)| (*slot, point_at[v])).collect();
    Some(frame.build(&class_of, &choice))
}
