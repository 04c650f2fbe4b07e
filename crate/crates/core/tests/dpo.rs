use std::collections::BTreeSet;

use proptest::prelude::*;
use sdrw::cases::theories::{ba_rules, ba_signature, fs_rules, BA_RULES, FS_RULES};
use sdrw::dpo::{
    admissible_steps, apply_step, boundary_complement, deletion_complement, enumerate_pushout_complements,
    find_matches, normalize, MatchMode, RewriteRule, StepMode, Strategy,
};
use sdrw::term::{extract_term, parse};
use sdrw::{EdgeId, InterfacedCospan};
use sdrw_testkit::{gen, oracle, rng};

fn all_rules() -> Vec<(RewriteRule, &'static str, &'static str)> {
    let texts = FS_RULES.iter().chain(&BA_RULES);
    fs_rules()
        .into_iter()
        .chain(ba_rules())
        .zip(texts)
        .map(|(r, (_, l, rhs))| (r, *l, *rhs))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn at_most_one_boundary_complement_per_match(seed in any::<u64>()) {
        let host = gen::ba_host(&mut rng(seed), 5);
        for (rule, _, _) in all_rules() {
            for m in find_matches(&rule, &host, MatchMode::AnyMono) {
                let all = enumerate_pushout_complements(&m);
                let boundary: Vec<_> = all.iter().filter(|c| c.boundary).collect();
                prop_assert!(boundary.len() <= 1, "{} has {} boundary complements", rule.name, boundary.len());
                match (boundary.first(), boundary_complement(&m)) {
                    (Some(b), Some(direct)) => prop_assert!(sdrw::iso::isomorphic(&b.graph, &direct.graph).is_some()),
                    (None, None) => {}
                    (b, d) => prop_assert!(false, "enumerated {} vs direct {}", b.is_some(), d.is_some()),
                }
            }
        }
    }

    #[test]
    fn deletion_removes_exactly_the_matched_part(seed in any::<u64>()) {
        let host = gen::ba_host(&mut rng(seed), 6);
        for rule in ba_rules() {
            for m in find_matches(&rule, &host, MatchMode::AnyMono) {
                let c = deletion_complement(&m).expect("left-linear rule in a monogamous host");
                let expected = oracle::deletion_remainder(&host.graph, &m.hom, &rule.lhs_interface());
                prop_assert_eq!(c.to_host.image(), expected);
            }
        }
    }

    #[test]
    fn left_connected_rules_need_no_convexity_check(seed in any::<u64>()) {
        let host = gen::ba_host(&mut rng(seed), 6);
        for rule in ba_rules() {
            for m in find_matches(&rule, &host, MatchMode::AnyMono) {
                prop_assert!(m.convex);
                prop_assert!(deletion_complement(&m).unwrap().boundary);
            }
        }
    }

    #[test]
    fn convex_steps_keep_ma_and_interface(seed in any::<u64>()) {
        let host = gen::ba_host(&mut rng(seed), 6);
        let rules = ba_rules();
        for c in admissible_steps(&rules, &host, StepMode::Convex) {
            let out = c.apply(StepMode::Convex).unwrap();
            prop_assert!(oracle::is_ma(&out));
            prop_assert_eq!(out.domain(), host.domain());
            prop_assert_eq!(out.codomain(), host.codomain());
        }
    }

    #[test]
    fn trivial_rules_leave_the_host_unchanged(seed in any::<u64>()) {
        let sig = ba_signature();
        let host = gen::ba_host(&mut rng(seed), 6);
        for (_, lhs, _) in BA_RULES {
            let t = parse(lhs, &sig).unwrap();
            let rule = RewriteRule::from_terms("same", &t, &t, &sig).unwrap();
            for m in find_matches(&rule, &host, MatchMode::Convex) {
                let c = boundary_complement(&m).unwrap();
                prop_assert!(apply_step(&m, &c, StepMode::Convex).unwrap().is_isomorphic(&host));
            }
        }
    }

    #[test]
    fn fs_steps_conserve_hyperedge_counts(seed in any::<u64>()) {
        let host = gen::fs_host(&mut rng(seed), 8);
        let rules = fs_rules();
        let counts = |c: &InterfacedCospan| {
            let mut v: Vec<_> = c.graph.edges().map(|(_, e)| e.label.clone()).collect();
            v.sort();
            v
        };
        for c in admissible_steps(&rules, &host, StepMode::Convex) {
            prop_assert_eq!(counts(&c.apply(StepMode::Convex).unwrap()), counts(&host));
        }
    }
}

#[test]
fn convex_steps_match_syntactic_redexes() {
    let sig = ba_signature();
    let mut r = rng(2024);
    let rules = all_rules();
    let mut nonempty = 0;
    for k in 0..60 {
        let (rule, lhs, rhs) = &rules[k % rules.len()];
        let (lt, rt) = (parse(lhs, &sig).unwrap(), parse(rhs, &sig).unwrap());
        let host = if k % 2 == 0 {
            gen::planted(&sig, &lt, &mut r, 3).interpret(&sig).unwrap()
        } else {
            gen::ba_host(&mut r, 5)
        };
        let redexes = oracle::syntactic_redexes(&host, &lt, &rt, &sig);
        let one = std::slice::from_ref(rule);
        let steps: Vec<(BTreeSet<EdgeId>, InterfacedCospan)> = admissible_steps(one, &host, StepMode::Convex)
            .iter()
            .map(|c| {
                (
                    c.m.hom.edges.values().copied().collect(),
                    c.apply(StepMode::Convex).unwrap(),
                )
            })
            .collect();
        for (_, out) in &steps {
            let t = extract_term(out).unwrap();
            assert!(t.interpret(&sig).unwrap().is_isomorphic(out));
        }
        let syntactic = oracle::distinct_results(redexes.iter().map(|x| (x.edges.clone(), &x.result)));
        let semantic = oracle::distinct_results(steps.iter().map(|(k, c)| (k.clone(), c)));
        assert_eq!(
            syntactic.keys().collect::<Vec<_>>(),
            semantic.keys().collect::<Vec<_>>(),
            "{}",
            rule.name
        );
        for (key, classes) in &semantic {
            assert_eq!(classes.len(), 1);
            assert_eq!(syntactic[key].len(), 1);
            assert!(classes[0].is_isomorphic(syntactic[key][0]));
        }
        nonempty += usize::from(!steps.is_empty());
    }
    assert!(nonempty >= 30, "only {nonempty} hosts had a redex");
}

#[test]
fn ba_normal_forms_agree_across_strategies() {
    let rules = ba_rules();
    let mut r = rng(99);
    for _ in 0..30 {
        let host = gen::ba_host(&mut r, 5);
        let strategies = [
            Strategy::RuleOrder,
            Strategy::Leftmost,
            Strategy::Random(1),
            Strategy::Random(2),
        ];
        let forms: Vec<InterfacedCospan> = strategies
            .iter()
            .map(|s| normalize(&host, &rules, StepMode::Convex, *s, 500).unwrap())
            .filter(|t| t.normal_form)
            .map(|t| t.last().clone())
            .collect();
        for f in &forms[1..] {
            assert!(f.is_isomorphic(&forms[0]));
        }
    }
}

#[test]
fn host_without_redex_is_already_normal() {
    let sig = ba_signature();
    let host = parse("m + d", &sig).unwrap().interpret(&sig).unwrap();
    let t = normalize(&host, &ba_rules(), StepMode::Convex, Strategy::RuleOrder, 10).unwrap();
    assert!(t.steps.is_empty() && t.normal_form && !t.exhausted);
}

#[test]
fn non_ma_host_is_refused_in_convex_mode_only() {
    let mu = InterfacedCospan::frobenius(sdrw::cospan::FrobeniusGenerator::Multiplication, "•");
    assert!(normalize(&mu, &ba_rules(), StepMode::Convex, Strategy::RuleOrder, 10).is_err());
    assert!(normalize(&mu, &ba_rules(), StepMode::Frobenius, Strategy::RuleOrder, 10).is_ok());
}
