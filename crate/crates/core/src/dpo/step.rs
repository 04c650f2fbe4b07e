use crate::cospan::{disjoint_union, quotient, InterfacedCospan};
use crate::hypergraph::{Homomorphism, NodeId};

use super::{
    boundary_complement, deletion_complement, enumerate_pushout_complements, find_matches, Complement, DpoError, Match,
    MatchMode, RewriteRule,
};

/// Which pushout complements and matches a step may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepMode {
    /// Convex matches and boundary complements only.
    Convex,
    /// Any mono match and any pushout complement.
    Frobenius,
}

impl StepMode {
    pub fn match_mode(self) -> MatchMode {
        match self {
            StepMode::Convex => MatchMode::Convex,
            StepMode::Frobenius => MatchMode::AnyMono,
        }
    }
}

/// The right-hand pushout `C <- i + j -> R`, with the host interface carried
/// along `C`. In convex mode the match must be convex, the complement
/// boundary, and the result is checked to be monogamous acyclic.
pub fn apply_step(m: &Match<'_>, complement: &Complement, mode: StepMode) -> Result<InterfacedCospan, DpoError> {
    if mode == StepMode::Convex {
        if !m.convex {
            return Err(DpoError::NotConvex);
        }
        if !complement.boundary {
            return Err(DpoError::NotBoundary);
        }
    }
    let rule = m.rule;
    let (sum, [hc, hr]) = disjoint_union([&complement.graph, &rule.rhs]);
    let glue: Vec<(NodeId, NodeId)> = complement
        .interface
        .iter()
        .zip(rule.rhs_interface())
        .map(|(c, r)| (hc.nodes[c], hr.nodes[&r]))
        .collect();
    let (graph, q) = quotient(&sum, &glue);
    let result = InterfacedCospan {
        graph,
        inputs: complement.inputs.iter().map(|n| q[&hc.nodes[n]]).collect(),
        outputs: complement.outputs.iter().map(|n| q[&hc.nodes[n]]).collect(),
    }
    .compacted();
    if mode == StepMode::Convex && !result.is_ma() {
        return Err(DpoError::ResultNotMa);
    }
    Ok(result)
}

/// A rewrite that may be performed: a match together with the complement
/// the mode prescribes for it.
#[derive(Clone, Debug)]
pub struct Candidate<'a> {
    pub rule_index: usize,
    pub m: Match<'a>,
    pub complement: Complement,
}

impl Candidate<'_> {
    pub fn apply(&self, mode: StepMode) -> Result<InterfacedCospan, DpoError> {
        apply_step(&self.m, &self.complement, mode)
    }

    pub fn hom(&self) -> &Homomorphism {
        &self.m.hom
    }
}

/// Every admissible step, by rule order then match order. Convex mode pairs
/// each convex match with its boundary complement and drops matches that
/// have none. Frobenius mode pairs each mono match with the deletion
/// complement when the rule is left-linear, otherwise with the first
/// enumerated complement.
pub fn admissible_steps<'a>(
    rules: &'a [RewriteRule],
    host: &'a InterfacedCospan,
    mode: StepMode,
) -> Vec<Candidate<'a>> {
    let mut out = Vec::new();
    for (rule_index, rule) in rules.iter().enumerate() {
        for m in find_matches(rule, host, mode.match_mode()) {
            let complement = match mode {
                StepMode::Convex => boundary_complement(&m),
                StepMode::Frobenius => {
                    deletion_complement(&m).or_else(|| enumerate_pushout_complements(&m).into_iter().next())
                }
            };
            if let Some(complement) = complement {
                out.push(Candidate {
                    rule_index,
                    m,
                    complement,
                });
            }
        }
    }
    out
}
