use std::collections::BTreeSet;

use crate::cospan::InterfacedCospan;
use crate::hypergraph::{GraphError, Hypergraph, NodeId};
use crate::signature::{format_word, Signature};
use crate::term::Term;

use super::DpoError;

/// A span `L <- i + j -> R`. The interface is stored as pairs of
/// corresponding nodes, split into the input block `i` and the output block
/// `j` of the rule's left-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: String,
    pub lhs: Hypergraph,
    pub rhs: Hypergraph,
    pub inputs: Vec<(NodeId, NodeId)>,
    pub outputs: Vec<(NodeId, NodeId)>,
}

impl RewriteRule {
    pub fn new(
        name: impl Into<String>,
        lhs: Hypergraph,
        rhs: Hypergraph,
        inputs: Vec<(NodeId, NodeId)>,
        outputs: Vec<(NodeId, NodeId)>,
    ) -> Result<Self, DpoError> {
        for (l, r) in inputs.iter().chain(&outputs) {
            if !lhs.contains_node(*l) {
                return Err(GraphError::UnknownNode(*l).into());
            }
            if !rhs.contains_node(*r) {
                return Err(GraphError::UnknownNode(*r).into());
            }
            if lhs.colour(*l) != rhs.colour(*r) {
                return Err(DpoError::InterfaceMismatch(format!(
                    "interface pair ({l}, {r}) joins different colours"
                )));
            }
        }
        Ok(RewriteRule {
            name: name.into(),
            lhs,
            rhs,
            inputs,
            outputs,
        })
    }

    /// The rule `⌈l⌉ => ⌈r⌉` for terms of equal type: both sides are
    /// interpreted and share the rewired interface.
    pub fn from_terms(name: impl Into<String>, l: &Term, r: &Term, sig: &Signature) -> Result<Self, DpoError> {
        let (ld, lc) = l.typecheck(sig)?;
        let (rd, rc) = r.typecheck(sig)?;
        if ld != rd || lc != rc {
            return Err(DpoError::InterfaceMismatch(format!(
                "sides have types {} -> {} and {} -> {}",
                format_word(&ld),
                format_word(&lc),
                format_word(&rd),
                format_word(&rc)
            )));
        }
        let lcsp = l.interpret(sig)?;
        let rcsp = r.interpret(sig)?;
        Self::from_cospans(name, &lcsp, &rcsp)
    }

    /// The rule between two cospans of the same type.
    pub fn from_cospans(name: impl Into<String>, l: &InterfacedCospan, r: &InterfacedCospan) -> Result<Self, DpoError> {
        if l.domain() != r.domain() || l.codomain() != r.codomain() {
            return Err(DpoError::InterfaceMismatch("sides have different types".into()));
        }
        Self::new(
            name,
            l.graph.clone(),
            r.graph.clone(),
            l.inputs.iter().copied().zip(r.inputs.iter().copied()).collect(),
            l.outputs.iter().copied().zip(r.outputs.iter().copied()).collect(),
        )
    }

    /// `i -> L <- j`.
    pub fn lhs_cospan(&self) -> InterfacedCospan {
        InterfacedCospan {
            graph: self.lhs.clone(),
            inputs: self.inputs.iter().map(|p| p.0).collect(),
            outputs: self.outputs.iter().map(|p| p.0).collect(),
        }
    }

    /// `i -> R <- j`.
    pub fn rhs_cospan(&self) -> InterfacedCospan {
        InterfacedCospan {
            graph: self.rhs.clone(),
            inputs: self.inputs.iter().map(|p| p.1).collect(),
            outputs: self.outputs.iter().map(|p| p.1).collect(),
        }
    }

    /// `a : i + j -> L`, inputs first.
    pub fn lhs_interface(&self) -> Vec<NodeId> {
        self.inputs.iter().chain(&self.outputs).map(|p| p.0).collect()
    }

    /// `b : i + j -> R`, inputs first.
    pub fn rhs_interface(&self) -> Vec<NodeId> {
        self.inputs.iter().chain(&self.outputs).map(|p| p.1).collect()
    }

    /// Whether `i + j -> L` is injective.
    pub fn is_left_linear(&self) -> bool {
        let a = self.lhs_interface();
        a.iter().collect::<BTreeSet<_>>().len() == a.len()
    }
}
