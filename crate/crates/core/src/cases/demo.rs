//! Scripted scenarios with fixed expected outcomes. Each returns its
//! artefacts plus a list of regressions (empty when everything behaves as
//! documented).

use crate::cospan::InterfacedCospan;
use crate::dpo::{
    admissible_steps, apply_step, boundary_complement, deletion_complement, enumerate_pushout_complements,
    find_matches, rule_connectivity, MatchMode, RewriteRule, StepMode,
};
use crate::hypergraph::Hypergraph;
use crate::signature::{OpType, Signature, DEFAULT_COLOUR};
use crate::term::parse;

use super::theories::{fs_rules, fs_signature, NON_CONFLUENCE_HOST};

pub fn non_confluence_host() -> InterfacedCospan {
    let sig = fs_signature();
    parse(NON_CONFLUENCE_HOST, &sig)
        .and_then(|t| t.interpret(&sig))
        .expect("fixed host")
}

#[derive(Clone, Debug)]
pub struct NonConfluence {
    pub g: InterfacedCospan,
    /// Rule names of the admissible first steps, in order.
    pub first_steps: Vec<String>,
    pub h1: InterfacedCospan,
    pub h2: InterfacedCospan,
    pub h1_fs4_mono: usize,
    pub h1_fs4_convex: usize,
    pub h2_fs3_mono: usize,
    pub h2_fs3_convex: usize,
    pub h1_normal: bool,
    pub h2_normal: bool,
    pub distinct: bool,
    pub regressions: Vec<String>,
}

/// Applies FS3 and FS4 to the counterexample host and checks that the two
/// results are distinct normal forms.
pub fn non_confluence_demo() -> NonConfluence {
    let rules = fs_rules();
    let g = non_confluence_host();
    let steps = admissible_steps(&rules, &g, StepMode::Convex);
    let first_steps: Vec<String> = steps.iter().map(|c| rules[c.rule_index].name.clone()).collect();
    let result_of = |name: &str| {
        steps
            .iter()
            .find(|c| rules[c.rule_index].name == name)
            .map(|c| c.apply(StepMode::Convex).expect("admissible step applies"))
            .unwrap_or_default()
    };
    let h1 = result_of("FS3");
    let h2 = result_of("FS4");
    let count = |rule: &RewriteRule, host: &InterfacedCospan, mode| find_matches(rule, host, mode).len();
    let (fs3, fs4) = (&rules[2], &rules[3]);
    let h1_normal = admissible_steps(&rules, &h1, StepMode::Convex).is_empty();
    let h2_normal = admissible_steps(&rules, &h2, StepMode::Convex).is_empty();
    let out = NonConfluence {
        first_steps: first_steps.clone(),
        h1_fs4_mono: count(fs4, &h1, MatchMode::AnyMono),
        h1_fs4_convex: count(fs4, &h1, MatchMode::Convex),
        h2_fs3_mono: count(fs3, &h2, MatchMode::AnyMono),
        h2_fs3_convex: count(fs3, &h2, MatchMode::Convex),
        h1_normal,
        h2_normal,
        distinct: !h1.is_isomorphic(&h2),
        g,
        h1,
        h2,
        regressions: Vec::new(),
    };
    let mut regressions = Vec::new();
    if first_steps != ["FS3", "FS4"] {
        regressions.push(format!("expected first steps [FS3, FS4], got {first_steps:?}"));
    }
    if !out.distinct {
        regressions.push("the two results are isomorphic".into());
    }
    if !(out.h1_normal && out.h2_normal) {
        regressions.push("a result is not a normal form".into());
    }
    if out.h1_fs4_mono == 0 || out.h1_fs4_convex != 0 {
        regressions.push("FS4 is not blocked by convexity after FS3".into());
    }
    if out.h2_fs3_mono == 0 || out.h2_fs3_convex != 0 {
        regressions.push("FS3 is not blocked by convexity after FS4".into());
    }
    NonConfluence { regressions, ..out }
}

/// `a1 : 0 -> 1`, `a2 : 1 -> 0`, `a3 : 1 -> 1`.
pub fn unsound_context_signature() -> Signature {
    Signature::one_sorted()
        .with_op("a1", OpType::plain(0, 1))
        .and_then(|s| s.with_op("a2", OpType::plain(1, 0)))
        .and_then(|s| s.with_op("a3", OpType::plain(1, 1)))
        .expect("distinct labels")
}

/// The rewired rule `id(1) => a2 ; a1`, which is not left-linear.
pub fn unsound_context_rule() -> RewriteRule {
    let sig = unsound_context_signature();
    let l = parse("id(1)", &sig).expect("fixed term");
    let r = parse("a2 ; a1", &sig).expect("fixed term");
    RewriteRule::from_terms("unsound-context", &l, &r, &sig).expect("fixed rule")
}

/// `a1 ; a3 ; a2 : 0 -> 0`.
pub fn unsound_context_host() -> InterfacedCospan {
    let sig = unsound_context_signature();
    parse("a1 ; a3 ; a2", &sig)
        .and_then(|t| t.interpret(&sig))
        .expect("fixed host")
}

#[derive(Clone, Debug)]
pub struct BoundaryUniqueness {
    pub host: InterfacedCospan,
    pub rule: RewriteRule,
    /// `(complements, boundary complements)` per match.
    pub per_match: Vec<(usize, usize)>,
    /// Result of rewriting with the boundary complement of the first match.
    pub boundary_result: InterfacedCospan,
    /// Results of rewriting with the other complements of the first match.
    pub other_results: Vec<InterfacedCospan>,
    pub regressions: Vec<String>,
}

/// Enumerates all complements of the rewired identity rule in
/// `a1 ; a3 ; a2` and checks that exactly one per match is boundary.
pub fn boundary_uniqueness_demo() -> BoundaryUniqueness {
    let rule = unsound_context_rule();
    let host = unsound_context_host();
    let matches = find_matches(&rule, &host, MatchMode::AnyMono);
    let mut per_match = Vec::new();
    let mut boundary_result = InterfacedCospan::default();
    let mut other_results = Vec::new();
    let mut regressions = Vec::new();
    for (k, m) in matches.iter().enumerate() {
        let all = enumerate_pushout_complements(m);
        let boundary: Vec<_> = all.iter().filter(|c| c.boundary).collect();
        per_match.push((all.len(), boundary.len()));
        if boundary.len() != 1 {
            regressions.push(format!("match {k}: {} boundary complements", boundary.len()));
        }
        if boundary_complement(m).as_ref() != boundary.first().copied() {
            regressions.push(format!(
                "match {k}: direct boundary complement differs from enumeration"
            ));
        }
        if k == 0 {
            if let Some(b) = boundary.first() {
                boundary_result = apply_step(m, b, StepMode::Frobenius).expect("pushout exists");
            }
            other_results = all
                .iter()
                .filter(|c| !c.boundary)
                .map(|c| apply_step(m, c, StepMode::Frobenius).expect("pushout exists"))
                .collect();
        }
    }
    if per_match.is_empty() || per_match.iter().any(|(n, _)| *n < 2) {
        regressions.push(format!("expected at least 2 complements per match, got {per_match:?}"));
    }
    if !boundary_result.is_ma() {
        regressions.push("boundary rewrite is not monogamous acyclic".into());
    }
    if other_results.iter().any(InterfacedCospan::is_monogamous) {
        regressions.push("a non-boundary rewrite is monogamous".into());
    }
    BoundaryUniqueness {
        host,
        rule,
        per_match,
        boundary_result,
        other_results,
        regressions,
    }
}

/// `e1 : 1 -> 2`, `e2 : 2 -> 1`, `e3 : 1 -> 1`, `e4 : 1 -> 1`.
pub fn unsound_signature() -> Signature {
    Signature::one_sorted()
        .with_op("e1", OpType::plain(1, 2))
        .and_then(|s| s.with_op("e2", OpType::plain(2, 1)))
        .and_then(|s| s.with_op("e3", OpType::plain(1, 1)))
        .and_then(|s| s.with_op("e4", OpType::plain(1, 1)))
        .expect("distinct labels")
}

/// Left-hand side: `e1` and `e2` joined by one wire, with the other output
/// of `e1` and the other input of `e2` left on the boundary. Right-hand side:
/// two parallel `e4`.
pub fn unsound_rule() -> RewriteRule {
    let sig = unsound_signature();
    let l = parse("(e1 + id(1)) ; (id(1) + sym(1, 1)) ; (e2 + id(1))", &sig).expect("fixed term");
    let r = parse("e4 + e4", &sig).expect("fixed term");
    RewriteRule::from_terms("unsound", &l, &r, &sig).expect("fixed rule")
}

/// `e1 ; (id(1) + e3) ; e2 : 1 -> 1`.
pub fn unsound_host() -> InterfacedCospan {
    let sig = unsound_signature();
    parse("e1 ; (id(1) + e3) ; e2", &sig)
        .and_then(|t| t.interpret(&sig))
        .expect("fixed host")
}

#[derive(Clone, Debug)]
pub struct ConvexityBlocking {
    pub host: InterfacedCospan,
    pub rule: RewriteRule,
    pub mono_matches: usize,
    pub convex_matches: usize,
    pub complement_is_boundary: bool,
    /// The plain DPO result, which contains a cycle.
    pub frobenius_result: Option<InterfacedCospan>,
    pub convex_rejected: bool,
    pub left_connected: bool,
    pub regressions: Vec<String>,
}

/// The U-shaped match of `e1`, `e2` around `e3`: mono but not convex.
pub fn convexity_blocking_demo() -> ConvexityBlocking {
    let rule = unsound_rule();
    let host = unsound_host();
    let mono = find_matches(&rule, &host, MatchMode::AnyMono);
    let convex = find_matches(&rule, &host, MatchMode::Convex);
    let complement = mono.first().and_then(deletion_complement);
    let frobenius_result = mono
        .first()
        .zip(complement.as_ref())
        .and_then(|(m, c)| apply_step(m, c, StepMode::Frobenius).ok());
    let convex_rejected = mono
        .first()
        .zip(complement.as_ref())
        .is_some_and(|(m, c)| apply_step(m, c, StepMode::Convex).is_err());
    let out = ConvexityBlocking {
        mono_matches: mono.len(),
        convex_matches: convex.len(),
        complement_is_boundary: complement.as_ref().is_some_and(|c| c.boundary),
        frobenius_result,
        convex_rejected,
        left_connected: rule_connectivity(&rule).holds(),
        host: host.clone(),
        rule: rule.clone(),
        regressions: Vec::new(),
    };
    let mut regressions = Vec::new();
    if out.mono_matches != 1 || out.convex_matches != 0 {
        regressions.push(format!(
            "expected 1 mono and 0 convex matches, got {} and {}",
            out.mono_matches, out.convex_matches
        ));
    }
    match &out.frobenius_result {
        Some(r) if !r.graph.is_acyclic() => {}
        Some(_) => regressions.push("plain DPO result is acyclic".into()),
        None => regressions.push("plain DPO step failed".into()),
    }
    if !out.convex_rejected {
        regressions.push("convex step was not rejected".into());
    }
    if !out.complement_is_boundary {
        regressions.push("complement is not boundary".into());
    }
    if out.left_connected {
        regressions.push("rule reported left-connected".into());
    }
    ConvexityBlocking { regressions, ..out }
}

/// Two acyclic cospans over `f : 1 -> 1` whose composite is cyclic: the
/// first feeds its own input back out as a second output, the second
/// routes one input through `f` into the other.
pub fn cyclic_composition() -> (InterfacedCospan, InterfacedCospan) {
    let mut a = Hypergraph::new();
    let x = a.add_node(DEFAULT_COLOUR);
    let y = a.add_node(DEFAULT_COLOUR);
    a.add_edge("f", vec![x], vec![y]).expect("nodes exist");
    let a = InterfacedCospan {
        graph: a,
        inputs: vec![x],
        outputs: vec![y, x],
    };
    let mut b = Hypergraph::new();
    let p = b.add_node(DEFAULT_COLOUR);
    let q = b.add_node(DEFAULT_COLOUR);
    b.add_edge("f", vec![p], vec![q]).expect("nodes exist");
    let b = InterfacedCospan {
        graph: b,
        inputs: vec![p, q],
        outputs: vec![q],
    };
    (a, b)
}
