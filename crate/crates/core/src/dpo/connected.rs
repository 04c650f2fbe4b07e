use crate::hypergraph::Endpoint;

use super::RewriteRule;

/// Which parts of the left-connectedness condition one rule meets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleConnectivity {
    pub rule: String,
    pub left_linear: bool,
    pub lhs_ma: bool,
    pub rhs_ma: bool,
    /// Every input of `i -> L <- j` has a path to every output.
    pub strongly_connected: bool,
}

impl RuleConnectivity {
    pub fn holds(&self) -> bool {
        self.left_linear && self.lhs_ma && self.rhs_ma && self.strongly_connected
    }

    /// Names of the failed conditions.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.left_linear, "left-linear"),
            (self.lhs_ma, "lhs monogamous acyclic"),
            (self.rhs_ma, "rhs monogamous acyclic"),
            (self.strongly_connected, "strongly connected"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftConnectedReport {
    pub rules: Vec<RuleConnectivity>,
}

impl LeftConnectedReport {
    pub fn holds(&self) -> bool {
        self.rules.iter().all(RuleConnectivity::holds)
    }
}

pub fn rule_connectivity(rule: &RewriteRule) -> RuleConnectivity {
    let l = rule.lhs_cospan();
    let strongly_connected = l.inputs.iter().all(|x| {
        l.outputs.iter().all(|y| {
            l.graph
                .has_path(Endpoint::Node(*x), Endpoint::Node(*y))
                .expect("interface nodes exist")
        })
    });
    RuleConnectivity {
        rule: rule.name.clone(),
        left_linear: rule.is_left_linear(),
        lhs_ma: l.is_ma(),
        rhs_ma: rule.rhs_cospan().is_ma(),
        strongly_connected,
    }
}

pub fn is_left_connected(rules: &[RewriteRule]) -> LeftConnectedReport {
    LeftConnectedReport {
        rules: rules.iter().map(rule_connectivity).collect(),
    }
}
