use std::collections::BTreeMap;

use crate::cospan::InterfacedCospan;
use crate::hypergraph::{EdgeId, Homomorphism, NodeId};
use crate::iso::monomorphisms;

use super::RewriteRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    /// Injective with a convex image.
    Convex,
    /// Any injective homomorphism.
    AnyMono,
}

/// An injective homomorphism from a rule's left-hand side into a host.
#[derive(Clone, Debug)]
pub struct Match<'a> {
    pub rule: &'a RewriteRule,
    pub host: &'a InterfacedCospan,
    pub hom: Homomorphism,
    pub convex: bool,
}

impl Match<'_> {
    /// Host nodes hit by `f ∘ a`, indexed by interface point.
    pub fn interface_image(&self) -> Vec<NodeId> {
        self.rule.lhs_interface().iter().map(|n| self.hom.nodes[n]).collect()
    }
}

/// All matches of `rule` in `host`, ordered by edge map, then node map.
pub fn find_matches<'a>(rule: &'a RewriteRule, host: &'a InterfacedCospan, mode: MatchMode) -> Vec<Match<'a>> {
    let mut homs = monomorphisms(&rule.lhs, &host.graph, &BTreeMap::new());
    homs.sort_by_key(|h| {
        (
            h.edges.values().copied().collect::<Vec<EdgeId>>(),
            h.nodes.values().copied().collect::<Vec<NodeId>>(),
        )
    });
    homs.into_iter()
        .filter_map(|hom| {
            let convex = host
                .graph
                .is_convex(&hom.image())
                .expect("image of a homomorphism is closed");
            (convex || mode == MatchMode::AnyMono).then_some(Match {
                rule,
                host,
                hom,
                convex,
            })
        })
        .collect()
}
