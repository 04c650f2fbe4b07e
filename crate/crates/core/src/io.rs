//! JSON file formats for signatures, hypergraphs, cospans, rule sets and
//! traces. Maps are written as arrays so output is deterministic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cospan::{CospanError, InterfacedCospan};
use crate::dpo::{DpoError, RewriteRule, RewriteStep, Trace};
use crate::hypergraph::{EdgeId, GraphError, Homomorphism, Hypergraph, NodeId};
use crate::signature::{Colour, OpType, Signature, SignatureError};
use crate::term::{parse, TermError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cospan(#[from] CospanError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Dpo(#[from] DpoError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: u32,
    pub colour: Colour,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: u32,
    pub label: String,
    pub sources: Vec<u32>,
    pub targets: Vec<u32>,
}

/// A hypergraph, or a cospan when `inputs`/`outputs` are present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    #[serde(default)]
    pub colours: Vec<Colour>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<u32>>,
}

impl GraphJson {
    pub fn from_graph(g: &Hypergraph) -> Self {
        GraphJson {
            colours: g.colours().into_iter().collect(),
            nodes: g
                .nodes()
                .map(|(id, c)| NodeJson {
                    id: id.0,
                    colour: c.clone(),
                })
                .collect(),
            edges: g
                .edges()
                .map(|(id, e)| EdgeJson {
                    id: id.0,
                    label: e.label.clone(),
                    sources: e.sources.iter().map(|n| n.0).collect(),
                    targets: e.targets.iter().map(|n| n.0).collect(),
                })
                .collect(),
            inputs: None,
            outputs: None,
        }
    }

    pub fn from_cospan(c: &InterfacedCospan) -> Self {
        GraphJson {
            inputs: Some(c.inputs.iter().map(|n| n.0).collect()),
            outputs: Some(c.outputs.iter().map(|n| n.0).collect()),
            ..GraphJson::from_graph(&c.graph)
        }
    }

    pub fn to_graph(&self) -> Result<Hypergraph, IoError> {
        let mut g = Hypergraph::new();
        for n in &self.nodes {
            if !self.colours.is_empty() && !self.colours.contains(&n.colour) {
                return Err(IoError::Invalid(format!(
                    "node {} has colour `{}` not listed in \"colours\"",
                    n.id, n.colour
                )));
            }
            g.insert_node(NodeId(n.id), n.colour.clone())?;
        }
        for e in &self.edges {
            g.insert_edge(
                EdgeId(e.id),
                e.label.clone(),
                e.sources.iter().map(|n| NodeId(*n)).collect(),
                e.targets.iter().map(|n| NodeId(*n)).collect(),
            )?;
        }
        Ok(g)
    }

    /// Missing interface lists read as empty.
    pub fn to_cospan(&self) -> Result<InterfacedCospan, IoError> {
        let ids = |v: &Option<Vec<u32>>| v.iter().flatten().map(|n| NodeId(*n)).collect();
        Ok(InterfacedCospan::new(
            self.to_graph()?,
            ids(&self.inputs),
            ids(&self.outputs),
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationJson {
    pub label: String,
    pub arity: Vec<Colour>,
    pub coarity: Vec<Colour>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureJson {
    pub colours: Vec<Colour>,
    pub operations: Vec<OperationJson>,
}

impl SignatureJson {
    pub fn from_signature(sig: &Signature) -> Self {
        SignatureJson {
            colours: sig.colours().iter().cloned().collect(),
            operations: sig
                .operations()
                .map(|(l, t)| OperationJson {
                    label: l.to_string(),
                    arity: t.arity.clone(),
                    coarity: t.coarity.clone(),
                })
                .collect(),
        }
    }

    pub fn to_signature(&self) -> Result<Signature, IoError> {
        let mut sig = Signature::new(self.colours.iter().cloned());
        for op in &self.operations {
            sig.add_op(&op.label, OpType::new(op.arity.clone(), op.coarity.clone()))?;
        }
        Ok(sig)
    }
}

/// A rule side: term text or an explicit graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SideJson {
    Term(String),
    Graph(GraphJson),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterfaceJson {
    #[serde(default)]
    pub inputs: Vec<(u32, u32)>,
    #[serde(default)]
    pub outputs: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    pub name: String,
    pub lhs: SideJson,
    pub rhs: SideJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interface: Option<InterfaceJson>,
}

impl RuleJson {
    /// Term sides are interpreted and rewired, so their interface is implied;
    /// graph sides need an explicit interface.
    pub fn to_rule(&self, sig: &Signature) -> Result<RewriteRule, IoError> {
        match (&self.lhs, &self.rhs) {
            (SideJson::Term(l), SideJson::Term(r)) => {
                let l = parse(l, sig)?;
                let r = parse(r, sig)?;
                Ok(RewriteRule::from_terms(self.name.clone(), &l, &r, sig)?)
            }
            (l, r) => {
                let side = |s: &SideJson| -> Result<Hypergraph, IoError> {
                    match s {
                        SideJson::Graph(g) => g.to_graph(),
                        SideJson::Term(t) => Ok(parse(t, sig)?.interpret(sig)?.graph),
                    }
                };
                let iface = self.interface.as_ref().ok_or_else(|| {
                    IoError::Invalid(format!("rule `{}` has a graph side but no interface", self.name))
                })?;
                let pairs = |v: &[(u32, u32)]| v.iter().map(|(a, b)| (NodeId(*a), NodeId(*b))).collect();
                Ok(RewriteRule::new(
                    self.name.clone(),
                    side(l)?,
                    side(r)?,
                    pairs(&iface.inputs),
                    pairs(&iface.outputs),
                )?)
            }
        }
    }

    pub fn from_rule(rule: &RewriteRule) -> Self {
        let pairs = |v: &[(NodeId, NodeId)]| v.iter().map(|(a, b)| (a.0, b.0)).collect();
        RuleJson {
            name: rule.name.clone(),
            lhs: SideJson::Graph(GraphJson::from_graph(&rule.lhs)),
            rhs: SideJson::Graph(GraphJson::from_graph(&rule.rhs)),
            interface: Some(InterfaceJson {
                inputs: pairs(&rule.inputs),
                outputs: pairs(&rule.outputs),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulesetJson {
    pub signature: SignatureJson,
    pub rules: Vec<RuleJson>,
}

impl RulesetJson {
    pub fn load(&self) -> Result<(Signature, Vec<RewriteRule>), IoError> {
        let sig = self.signature.to_signature()?;
        let rules = self.rules.iter().map(|r| r.to_rule(&sig)).collect::<Result<_, _>>()?;
        Ok((sig, rules))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub nodes: Vec<(u32, u32)>,
    pub edges: Vec<(u32, u32)>,
}

impl HomJson {
    pub fn from_hom(h: &Homomorphism) -> Self {
        HomJson {
            nodes: h.nodes.iter().map(|(a, b)| (a.0, b.0)).collect(),
            edges: h.edges.iter().map(|(a, b)| (a.0, b.0)).collect(),
        }
    }

    pub fn to_hom(&self) -> Homomorphism {
        Homomorphism {
            nodes: self.nodes.iter().map(|(a, b)| (NodeId(*a), NodeId(*b))).collect(),
            edges: self.edges.iter().map(|(a, b)| (EdgeId(*a), EdgeId(*b))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub rule: String,
    #[serde(rename = "match")]
    pub hom: HomJson,
    pub result: GraphJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub ruleset: String,
    pub mode: String,
    pub strategy: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub initial: GraphJson,
    pub steps: Vec<StepJson>,
    #[serde(rename = "final")]
    pub last: GraphJson,
    pub normal_form: bool,
    pub exhausted: bool,
}

impl TraceJson {
    pub fn new(trace: &Trace, ruleset: &str, mode: &str, strategy: &str, seed: Option<u64>) -> Self {
        TraceJson {
            ruleset: ruleset.to_string(),
            mode: mode.to_string(),
            strategy: strategy.to_string(),
            seed,
            initial: GraphJson::from_cospan(&trace.initial),
            steps: trace
                .steps
                .iter()
                .map(|s| StepJson {
                    rule: s.rule.clone(),
                    hom: HomJson::from_hom(&s.hom),
                    result: GraphJson::from_cospan(&s.result),
                })
                .collect(),
            last: GraphJson::from_cospan(trace.last()),
            normal_form: trace.normal_form,
            exhausted: trace.exhausted,
        }
    }

    /// Rule indices are not stored; they read back as positions in the
    /// trace's own list of distinct rule names.
    pub fn to_trace(&self) -> Result<Trace, IoError> {
        let mut names: Vec<&str> = Vec::new();
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let rule_index = names.iter().position(|n| *n == s.rule).unwrap_or_else(|| {
                    names.push(&s.rule);
                    names.len() - 1
                });
                Ok(RewriteStep {
                    rule: s.rule.clone(),
                    rule_index,
                    hom: s.hom.to_hom(),
                    result: s.result.to_cospan()?,
                })
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(Trace {
            initial: self.initial.to_cospan()?,
            steps,
            normal_form: self.normal_form,
            exhausted: self.exhausted,
        })
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn read_cospan(text: &str) -> Result<InterfacedCospan, IoError> {
    serde_json::from_str::<GraphJson>(text)?.to_cospan()
}

pub fn read_signature(text: &str) -> Result<Signature, IoError> {
    serde_json::from_str::<SignatureJson>(text)?.to_signature()
}

/// The smallest signature a graph validates against: its colours plus one
/// operation per label, typed by the first hyperedge carrying it.
pub fn infer_signature(g: &Hypergraph) -> Result<Signature, IoError> {
    let mut sig = Signature::new(g.colours());
    for (_, e) in g.edges() {
        if sig.op(&e.label).is_none() {
            let ty = OpType::new(g.word_of(&e.sources)?, g.word_of(&e.targets)?);
            sig.add_op(&e.label, ty)?;
        }
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::theories::{ba_signature, fs_rules};

    #[test]
    fn cospan_json_round_trips() {
        let sig = ba_signature();
        let c = parse("(d + u) ; (id(1) + m)", &sig).unwrap().interpret(&sig).unwrap();
        let text = to_json(&GraphJson::from_cospan(&c));
        assert_eq!(read_cospan(&text).unwrap(), c);
    }

    #[test]
    fn signature_json_round_trips() {
        let sig = ba_signature();
        let text = to_json(&SignatureJson::from_signature(&sig));
        assert_eq!(read_signature(&text).unwrap(), sig);
    }

    #[test]
    fn graph_rules_round_trip() {
        let sig = ba_signature();
        for rule in fs_rules() {
            let json = RuleJson::from_rule(&rule);
            let text = to_json(&json);
            let back: RuleJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_rule(&sig).unwrap(), rule);
        }
    }

    #[test]
    fn term_rules_need_no_interface() {
        let sig = ba_signature();
        let json: RuleJson = serde_json::from_str(r#"{"name":"r","lhs":"u ; e","rhs":"id(0)"}"#).unwrap();
        let rule = json.to_rule(&sig).unwrap();
        assert_eq!(rule.lhs.edge_count(), 2);
        assert!(rule.inputs.is_empty() && rule.outputs.is_empty());
    }

    #[test]
    fn dangling_edge_is_rejected() {
        let text = r#"{"nodes":[{"id":0,"colour":"•"}],"edges":[{"id":0,"label":"f","sources":[3],"targets":[]}]}"#;
        assert!(matches!(
            read_cospan(text),
            Err(IoError::Graph(GraphError::UnknownNode(_)))
        ));
    }

    #[test]
    fn inferred_signature_validates() {
        let sig = ba_signature();
        let c = parse("m ; d", &sig).unwrap().interpret(&sig).unwrap();
        let inferred = infer_signature(&c.graph).unwrap();
        assert!(c.graph.validate(&inferred).is_empty());
        assert_eq!(inferred.len(), 2);
    }
}
