use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cospan::InterfacedCospan;
use crate::hypergraph::Homomorphism;

use super::{admissible_steps, Candidate, DpoError, RewriteRule, StepMode};

pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// How to pick among the admissible steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// First rule with an admissible match, first match in match order.
    RuleOrder,
    /// The step whose matched hyperedges start earliest in the host's
    /// topological order; ties by rule order.
    Leftmost,
    /// Uniformly at random from a seeded generator.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: String,
    pub rule_index: usize,
    pub hom: Homomorphism,
    pub result: InterfacedCospan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub initial: InterfacedCospan,
    pub steps: Vec<RewriteStep>,
    /// No admissible step remains at the end.
    pub normal_form: bool,
    /// Stopped by the step budget.
    pub exhausted: bool,
}

impl Trace {
    pub fn last(&self) -> &InterfacedCospan {
        self.steps.last().map_or(&self.initial, |s| &s.result)
    }

    /// Every state, initial first.
    pub fn states(&self) -> impl Iterator<Item = &InterfacedCospan> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|s| &s.result))
    }
}

/// Picks a step index according to the strategy.
pub fn choose(
    strategy: Strategy,
    host: &InterfacedCospan,
    candidates: &[Candidate<'_>],
    rng: &mut ChaCha8Rng,
) -> usize {
    match strategy {
        Strategy::RuleOrder => 0,
        Strategy::Random(_) => rng.gen_range(0..candidates.len()),
        Strategy::Leftmost => {
            let order: Vec<_> = host
                .graph
                .topological_order()
                .unwrap_or_else(|| host.graph.edge_ids().collect());
            let rank = |c: &Candidate<'_>| {
                c.m.hom
                    .edges
                    .values()
                    .filter_map(|e| order.iter().position(|x| x == e))
                    .min()
                    .unwrap_or(order.len())
            };
            (0..candidates.len())
                .min_by_key(|i| rank(&candidates[*i]))
                .expect("non-empty")
        }
    }
}

/// Rewrites until no admissible step remains or `max_steps` is reached. In
/// convex mode the host must be monogamous acyclic.
pub fn normalize(
    host: &InterfacedCospan,
    rules: &[RewriteRule],
    mode: StepMode,
    strategy: Strategy,
    max_steps: usize,
) -> Result<Trace, DpoError> {
    if mode == StepMode::Convex && !host.is_ma() {
        return Err(DpoError::HostNotMa);
    }
    let seed = match strategy {
        Strategy::Random(s) => s,
        _ => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace = Trace {
        initial: host.clone(),
        steps: Vec::new(),
        normal_form: false,
        exhausted: false,
    };
    loop {
        let current = trace.last().clone();
        let candidates = admissible_steps(rules, &current, mode);
        if candidates.is_empty() {
            trace.normal_form = true;
            return Ok(trace);
        }
        if trace.steps.len() >= max_steps {
            trace.exhausted = true;
            return Ok(trace);
        }
        let pick = &candidates[choose(strategy, &current, &candidates, &mut rng)];
        let result = pick.apply(mode)?;
        trace.steps.push(RewriteStep {
            rule: rules[pick.rule_index].name.clone(),
            rule_index: pick.rule_index,
            hom: pick.m.hom.clone(),
            result,
        });
    }
}
