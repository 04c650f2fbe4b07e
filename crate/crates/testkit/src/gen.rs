use rand::seq::SliceRandom;
use rand::Rng;

use sdrw::cases::theories::{ba_signature, fs_signature};
use sdrw::cospan::quotient;
use sdrw::signature::{Colour, OpType, Signature, Word};
use sdrw::{Hypergraph, InterfacedCospan, NodeId, Term};

const COLOURS: [&str; 3] = ["a", "b", "c"];

/// One to three colours and two to five operations of width at most two.
pub fn signature(rng: &mut impl Rng) -> Signature {
    let colours: Vec<Colour> = COLOURS[..rng.gen_range(1..=3)].iter().map(|c| c.to_string()).collect();
    let mut sig = Signature::new(colours.clone());
    for k in 0..rng.gen_range(2..=5) {
        let word = |rng: &mut dyn rand::RngCore| -> Word {
            (0..rng.gen_range(0..=2))
                .map(|_| colours.choose(rng).unwrap().clone())
                .collect()
        };
        let arity = word(rng);
        let coarity = word(rng);
        sig.add_op(&format!("f{k}"), OpType::new(arity, coarity)).unwrap();
    }
    sig
}

pub fn word(sig: &Signature, rng: &mut impl Rng, max_len: usize) -> Word {
    let colours: Vec<&Colour> = sig.colours().iter().collect();
    (0..rng.gen_range(0..=max_len))
        .map(|_| colours.choose(rng).unwrap().to_string())
        .collect()
}

fn par_opt(parts: impl IntoIterator<Item = Option<Term>>) -> Option<Term> {
    Term::par_all(parts.into_iter().flatten())
}

fn id_opt(w: &[Colour]) -> Option<Term> {
    (!w.is_empty()).then(|| Term::Id(w.to_vec()))
}

fn then(t: Option<Term>, layer: Term) -> Term {
    match t {
        Some(t) => Term::seq(t, layer),
        None => layer,
    }
}

/// A well-typed term with up to `gens` generator occurrences whose domain
/// contains `dom`. Generators are placed on a matching window of the current
/// wires when one exists. Otherwise, if `widen` is set, they are tensored
/// alongside, which widens the domain; if not, generation stops early.
pub fn term_from(sig: &Signature, rng: &mut impl Rng, dom: &[Colour], gens: usize, widen: bool) -> Term {
    let ops: Vec<(String, OpType)> = sig.operations().map(|(l, t)| (l.to_string(), t.clone())).collect();
    let mut wires: Word = dom.to_vec();
    let mut term = id_opt(dom);
    let mut placed = 0;
    while placed < gens {
        if wires.len() >= 2 && rng.gen_bool(0.2) {
            let p = rng.gen_range(0..wires.len() - 1);
            let a = rng.gen_range(1..wires.len() - p);
            let b = rng.gen_range(1..=wires.len() - p - a);
            let (x, y) = (wires[p..p + a].to_vec(), wires[p + a..p + a + b].to_vec());
            let layer = par_opt([
                id_opt(&wires[..p]),
                Some(Term::Sym(x.clone(), y.clone())),
                id_opt(&wires[p + a + b..]),
            ]);
            term = Some(then(term, layer.unwrap()));
            wires.splice(p..p + a + b, [y, x].concat());
            continue;
        }
        let windows = |ty: &OpType| -> Vec<usize> {
            let n = ty.arity.len();
            (0..=wires.len())
                .filter(|p| p + n <= wires.len() && wires[*p..p + n] == ty.arity[..])
                .collect()
        };
        let fitting: Vec<&(String, OpType)> = ops.iter().filter(|(_, ty)| !windows(ty).is_empty()).collect();
        let (label, ty) = if widen {
            ops.choose(rng).unwrap()
        } else {
            match fitting.choose(rng) {
                Some(op) => *op,
                None => break,
            }
        };
        let gen = Term::gen(label);
        match windows(ty).choose(rng) {
            Some(&p) => {
                let n = ty.arity.len();
                let layer = par_opt([id_opt(&wires[..p]), Some(gen), id_opt(&wires[p + n..])]).unwrap();
                term = Some(then(term, layer));
                wires.splice(p..p + n, ty.coarity.iter().cloned());
            }
            None => match term.take() {
                Some(t) if rng.gen_bool(0.5) => {
                    term = Some(Term::par(gen, t));
                    wires.splice(0..0, ty.coarity.iter().cloned());
                }
                t => {
                    term = Some(match t {
                        Some(t) => Term::par(t, gen),
                        None => gen,
                    });
                    wires.extend(ty.coarity.iter().cloned());
                }
            },
        }
        placed += 1;
    }
    term.unwrap_or_else(|| Term::Id(Vec::new()))
}

pub fn term(sig: &Signature, rng: &mut impl Rng, max_gens: usize) -> Term {
    let dom = word(sig, rng, 3);
    let gens = rng.gen_range(0..=max_gens);
    term_from(sig, rng, &dom, gens, true)
}

/// A random signature and a term over it.
pub fn signed_term(rng: &mut impl Rng, max_gens: usize) -> (Signature, Term) {
    let sig = signature(rng);
    let t = term(&sig, rng, max_gens);
    (sig, t)
}

/// Two composable terms `a : x -> y`, `b : y -> z`.
pub fn composable_pair(sig: &Signature, rng: &mut impl Rng, max_gens: usize) -> (Term, Term) {
    let a = term(sig, rng, max_gens);
    let (_, cod) = a.typecheck(sig).unwrap();
    let gens = rng.gen_range(0..=max_gens);
    (a, term_from(sig, rng, &cod, gens, false))
}

/// A monogamous acyclic host built from multiplications and
/// comultiplications only.
pub fn fs_host(rng: &mut impl Rng, max_gens: usize) -> InterfacedCospan {
    let sig = fs_signature();
    let width = rng.gen_range(1..=4);
    let gens = rng.gen_range(1..=max_gens);
    let t = term_from(&sig, rng, &sig_word(width), gens, true);
    t.interpret(&sig).unwrap()
}

/// A host over the bialgebra signature.
pub fn ba_host(rng: &mut impl Rng, max_gens: usize) -> InterfacedCospan {
    let sig = ba_signature();
    let width = rng.gen_range(0..=3);
    let gens = rng.gen_range(1..=max_gens);
    term_from(&sig, rng, &sig_word(width), gens, true)
        .interpret(&sig)
        .unwrap()
}

fn sig_word(n: usize) -> Word {
    sdrw::signature::plain_word(n)
}

/// A small hypergraph with no structural guarantees: cycles, self-loops and
/// repeated nodes in port lists are all possible.
pub fn hypergraph(rng: &mut impl Rng, max_nodes: usize, max_edges: usize) -> Hypergraph {
    let mut g = Hypergraph::new();
    let nodes: Vec<NodeId> = (0..rng.gen_range(1..=max_nodes))
        .map(|_| g.add_node(*COLOURS[..2].choose(rng).unwrap()))
        .collect();
    for _ in 0..rng.gen_range(0..=max_edges) {
        let sources = (0..rng.gen_range(0..=2)).map(|_| *nodes.choose(rng).unwrap()).collect();
        let targets = (0..rng.gen_range(0..=2)).map(|_| *nodes.choose(rng).unwrap()).collect();
        g.add_edge(*["f", "g"].choose(rng).unwrap(), sources, targets).unwrap();
    }
    g
}

/// A random closed selection: some hyperedges, their nodes, and a few extra
/// nodes.
pub fn selection(g: &Hypergraph, rng: &mut impl Rng) -> sdrw::SubgraphSelection {
    let edges: Vec<_> = g.edge_ids().filter(|_| rng.gen_bool(0.4)).collect();
    let mut sel = sdrw::SubgraphSelection::from_edges(g, edges).unwrap();
    sel.nodes.extend(g.node_ids().filter(|_| rng.gen_bool(0.2)));
    sel
}

/// Breaks monogamy or acyclicity of a cospan in one of several ways. `None`
/// when the chosen mutation has nothing to act on or happens to leave the
/// cospan monogamous acyclic, as judged by the oracle.
pub fn break_ma(c: &InterfacedCospan, rng: &mut impl Rng) -> Option<InterfacedCospan> {
    let mut out = c.clone();
    match rng.gen_range(0..5) {
        0 => {
            // glue two nodes of the same colour
            let nodes: Vec<NodeId> = c.graph.node_ids().collect();
            let x = *nodes.choose(rng)?;
            let y = *nodes
                .iter()
                .filter(|y| **y != x && c.graph.colour(**y) == c.graph.colour(x))
                .collect::<Vec<_>>()
                .choose(rng)?;
            let (g, map) = quotient(&c.graph, &[(x, *y)]);
            out.graph = g;
            out.inputs = c.inputs.iter().map(|n| map[n]).collect();
            out.outputs = c.outputs.iter().map(|n| map[n]).collect();
        }
        1 => {
            let n = *c.inputs.choose(rng)?;
            out.inputs.push(n);
        }
        2 => {
            let k = rng.gen_range(0..c.outputs.len().max(1));
            if c.outputs.is_empty() {
                return None;
            }
            out.outputs.remove(k);
        }
        3 => {
            // feed an output back into an input of the same colour
            let o = *c.outputs.choose(rng)?;
            let i = **c
                .inputs
                .iter()
                .filter(|i| c.graph.colour(**i) == c.graph.colour(o) && **i != o)
                .collect::<Vec<_>>()
                .choose(rng)?;
            let (g, map) = quotient(&c.graph, &[(o, i)]);
            out.graph = g;
            out.inputs = c.inputs.iter().filter(|n| **n != i).map(|n| map[n]).collect();
            out.outputs = c.outputs.iter().filter(|n| **n != o).map(|n| map[n]).collect();
        }
        _ => {
            let nodes: Vec<NodeId> = c.graph.node_ids().collect();
            let x = *nodes.choose(rng)?;
            let y = *nodes.choose(rng)?;
            out.graph.add_edge("back", vec![x], vec![y]).unwrap();
        }
    }
    (!crate::oracle::is_ma(&out)).then_some(out)
}

/// The same graph under shuffled node and hyperedge ids, with the renaming.
pub fn renamed(g: &Hypergraph, rng: &mut impl Rng) -> (Hypergraph, std::collections::BTreeMap<NodeId, NodeId>) {
    let mut ids: Vec<u32> = (0..g.node_count() as u32 * 2 + 1).collect();
    ids.shuffle(rng);
    let map: std::collections::BTreeMap<NodeId, NodeId> = g.node_ids().zip(ids.iter().map(|i| NodeId(*i))).collect();
    let mut out = Hypergraph::new();
    let mut order: Vec<NodeId> = g.node_ids().collect();
    order.shuffle(rng);
    for n in order {
        out.insert_node(map[&n], g.colour(n).unwrap().clone()).unwrap();
    }
    let mut edges: Vec<_> = g.edges().collect();
    edges.shuffle(rng);
    let mut eids: Vec<u32> = (0..edges.len() as u32 * 2 + 1).collect();
    eids.shuffle(rng);
    for ((_, e), id) in edges.into_iter().zip(eids) {
        let m = |v: &[NodeId]| v.iter().map(|n| map[n]).collect();
        out.insert_edge(sdrw::EdgeId(id), e.label.clone(), m(&e.sources), m(&e.targets))
            .unwrap();
    }
    (out, map)
}

pub fn renamed_cospan(c: &InterfacedCospan, rng: &mut impl Rng) -> InterfacedCospan {
    let (g, map) = renamed(&c.graph, rng);
    InterfacedCospan::new(
        g,
        c.inputs.iter().map(|n| map[n]).collect(),
        c.outputs.iter().map(|n| map[n]).collect(),
    )
    .unwrap()
}

/// `(c1 + l) ; c2` with random `c1` and `c2`, so that `l` occurs in the
/// result at least once.
pub fn planted(sig: &Signature, l: &Term, rng: &mut impl Rng, max_gens: usize) -> Term {
    let c1 = term(sig, rng, max_gens);
    let (_, cod1) = c1.typecheck(sig).unwrap();
    let (_, lcod) = l.typecheck(sig).unwrap();
    let gens = rng.gen_range(0..=max_gens);
    let c2 = term_from(sig, rng, &[cod1, lcod].concat(), gens, false);
    Term::seq(Term::par(c1, l.clone()), c2)
}
