//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use sdrw::cases::demo::{boundary_uniqueness_demo, convexity_blocking_demo, cyclic_composition, non_confluence_demo};
use sdrw::cases::demo::{unsound_context_rule, unsound_context_signature};
use sdrw::cases::measure::{check_decrease, fs_step_bound, Measure};
use sdrw::cases::theories::{
    ba_expected_decrease, ba_rules, ba_signature, fs_expected_decrease, fs_rules, BA_RULES, FS_RULES,
};
use sdrw::dpo::{
    admissible_steps, enumerate_pushout_complements, find_matches, is_left_connected, normalize, MatchMode,
    RewriteRule, StepMode, Strategy,
};
use sdrw::term::{extract_term, parse};
use sdrw::{EdgeId, InterfacedCospan};
use sdrw_testkit::{gen, oracle, rng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1} s", d.as_secs_f64())
}

/// 500 terms, at most 10 generators over at most 3 colours, under 60 s.
fn characterisation() -> Outcome {
    const N: u64 = 500;
    let start = Instant::now();
    for seed in 0..N {
        let (sig, t) = gen::signed_term(&mut rng(seed), 10);
        let c = t.interpret(&sig).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(c.is_ma() && oracle::is_ma(&c), || format!("seed {seed}: {t} is not MA"))?;
        let back = extract_term(&c).map_err(|e| format!("seed {seed}: {e}"))?;
        let again = back.interpret(&sig).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(again.is_isomorphic(&c), || {
            format!("seed {seed}: {t} extracted as {back}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {} (limit 60 s)", secs(elapsed))
    })?;
    Ok(format!("{N}/{N} round trips in {} (limit 60 s)", secs(elapsed)))
}

/// 500 composable pairs and 500 tensor pairs.
fn ma_closure() -> Outcome {
    const N: u64 = 500;
    for seed in 0..N {
        let r = &mut rng(10_000 + seed);
        let sig = gen::signature(r);
        let (a, b) = gen::composable_pair(&sig, r, 6);
        let (ca, cb) = (a.interpret(&sig).unwrap(), b.interpret(&sig).unwrap());
        let seq = ca.compose(&cb).map_err(|e| format!("seed {seed}: {e}"))?;
        let c = gen::term(&sig, r, 6).interpret(&sig).unwrap();
        let par = ca.tensor(&c);
        ensure(oracle::is_ma(&seq) && oracle::is_ma(&par), || {
            format!("seed {seed}: composite not MA")
        })?;
    }
    Ok(format!("{N}/{N} composites and {N}/{N} tensors MA"))
}

fn non_preservation() -> Outcome {
    let (a, b) = cyclic_composition();
    ensure(a.graph.is_acyclic() && b.graph.is_acyclic(), || {
        "a factor is cyclic".into()
    })?;
    let c = a.compose(&b).map_err(|e| e.to_string())?;
    ensure(!c.graph.is_acyclic() && !oracle::is_acyclic(&c.graph), || {
        "composite is acyclic".into()
    })?;
    Ok("acyclic factors, cyclic composite".into())
}

fn boundary_uniqueness() -> Outcome {
    let mut rules: Vec<RewriteRule> = fs_rules().into_iter().chain(ba_rules()).collect();
    let mut hosts: Vec<InterfacedCospan> = Vec::new();
    let r = &mut rng(20_000);
    for _ in 0..60 {
        hosts.push(gen::ba_host(r, 6));
    }
    for _ in 0..30 {
        hosts.push(gen::fs_host(r, 6));
    }
    let ctx = unsound_context_signature();
    let ctx_hosts: Vec<InterfacedCospan> = (0..30)
        .map(|_| gen::term(&ctx, r, 5).interpret(&ctx).unwrap())
        .collect();
    let (mut matches, mut complements, mut max_boundary) = (0, 0, 0);
    let mut tally = |rules: &[RewriteRule], host: &InterfacedCospan| {
        for rule in rules {
            for m in find_matches(rule, host, MatchMode::AnyMono) {
                let all = enumerate_pushout_complements(&m);
                matches += 1;
                complements += all.len();
                max_boundary = max_boundary.max(all.iter().filter(|c| c.boundary).count());
            }
        }
    };
    for h in &hosts {
        tally(&rules, h);
    }
    rules = vec![unsound_context_rule()];
    for h in &ctx_hosts {
        tally(&rules, h);
    }
    let total = hosts.len() + ctx_hosts.len();
    ensure(max_boundary <= 1, || {
        format!("a match has {max_boundary} boundary complements")
    })?;
    let demo = boundary_uniqueness_demo();
    ensure(demo.regressions.is_empty(), || demo.regressions.join("; "))?;
    let &(all, boundary) = demo.per_match.first().ok_or("fixture has no match")?;
    ensure(all >= 2 && boundary == 1, || {
        format!("fixture: {all} complements, {boundary} boundary")
    })?;
    Ok(format!(
        "{total} hosts, {matches} matches, {complements} complements, max 1 boundary per match; fixture {all} complements, {boundary} boundary"
    ))
}

fn convexity_blocking() -> Outcome {
    let d = convexity_blocking_demo();
    ensure(d.mono_matches >= 1 && d.convex_matches == 0, || {
        format!("{} mono, {} convex matches", d.mono_matches, d.convex_matches)
    })?;
    ensure(d.frobenius_result.is_some(), || "Frobenius-mode apply failed".into())?;
    ensure(d.convex_rejected, || "convex-mode apply accepted".into())?;
    Ok(format!(
        "{} mono, 0 convex; Frobenius apply ok, convex apply rejected",
        d.mono_matches
    ))
}

/// 200 (host, rule) pairs over FS and BA rules, half of them with the
/// left-hand side planted in the host.
fn adequacy() -> Outcome {
    const N: usize = 200;
    let start = Instant::now();
    let sig = ba_signature();
    let rules: Vec<(RewriteRule, &str, &str)> = fs_rules()
        .into_iter()
        .chain(ba_rules())
        .zip(FS_RULES.iter().chain(&BA_RULES))
        .map(|(r, (_, l, rhs))| (r, *l, *rhs))
        .collect();
    let r = &mut rng(30_000);
    let mut with_redex = 0;
    for k in 0..N {
        let (rule, lhs, rhs) = &rules[k % rules.len()];
        let (lt, rt) = (parse(lhs, &sig).unwrap(), parse(rhs, &sig).unwrap());
        let host = if k % 2 == 0 {
            gen::planted(&sig, &lt, r, 3).interpret(&sig).unwrap()
        } else {
            gen::ba_host(r, 5)
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
        let syntactic = oracle::distinct_results(redexes.iter().map(|x| (x.edges.clone(), &x.result)));
        let semantic = oracle::distinct_results(steps.iter().map(|(e, c)| (e.clone(), c)));
        let agree = syntactic.len() == semantic.len()
            && semantic.iter().all(|(key, classes)| {
                syntactic.get(key).is_some_and(|s| {
                    s.len() == classes.len() && classes.iter().all(|c| s.iter().any(|d| d.is_isomorphic(c)))
                })
            });
        ensure(agree, || {
            format!(
                "pair {k} ({}): {} syntactic vs {} semantic",
                rule.name,
                syntactic.len(),
                semantic.len()
            )
        })?;
        with_redex += usize::from(!steps.is_empty());
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(300), || {
        format!("took {} (limit 300 s)", secs(elapsed))
    })?;
    Ok(format!(
        "{N}/{N} pairs agree ({with_redex} with a redex) in {} (limit 300 s)",
        secs(elapsed)
    ))
}

fn fs_termination() -> Outcome {
    const N: u64 = 200;
    let rules = fs_rules();
    let mut steps = 0;
    for seed in 0..N {
        let host = gen::fs_host(&mut rng(40_000 + seed), 12);
        ensure(host.graph.edge_count() <= 12, || format!("seed {seed}: host too large"))?;
        let bound = fs_step_bound(&host.graph);
        let trace = normalize(
            &host,
            &rules,
            StepMode::Convex,
            Strategy::Random(seed),
            bound as usize + 1,
        )
        .map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(trace.normal_form && trace.steps.len() as u64 <= bound, || {
            format!("seed {seed}: {} steps, bound {bound}", trace.steps.len())
        })?;
        let report = check_decrease(&trace, &Measure::fs()).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("seed {seed}: measure did not decrease"))?;
        let bad = report.pattern_mismatches(fs_expected_decrease);
        ensure(bad.is_empty(), || format!("seed {seed}: {}", bad.join("; ")))?;
        steps += trace.steps.len();
    }
    Ok(format!(
        "{N}/{N} hosts normalised within bound, {steps} steps decrease (D, L) per rule"
    ))
}

fn fs_non_confluence() -> Outcome {
    let d = non_confluence_demo();
    ensure(d.first_steps == ["FS3", "FS4"], || {
        format!("first steps {:?}", d.first_steps)
    })?;
    ensure(d.distinct, || "H1 and H2 are isomorphic".into())?;
    ensure(d.h1_normal && d.h2_normal, || "a result is not normal".into())?;
    ensure(d.regressions.is_empty(), || d.regressions.join("; "))?;
    Ok("2 first steps (FS3, FS4), H1 not iso H2, both normal".into())
}

fn ba_termination() -> Outcome {
    const N: u64 = 200;
    let rules = ba_rules();
    let mut steps = 0;
    for seed in 0..N {
        let host = gen::ba_host(&mut rng(50_000 + seed), 6);
        let trace = normalize(&host, &rules, StepMode::Convex, Strategy::Random(seed), 10_000)
            .map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(trace.normal_form, || {
            format!("seed {seed}: no normal form after 10000 steps")
        })?;
        let report = check_decrease(&trace, &Measure::ba()).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("seed {seed}: measure did not decrease"))?;
        let bad = report.pattern_mismatches(ba_expected_decrease);
        ensure(bad.is_empty(), || format!("seed {seed}: {}", bad.join("; ")))?;
        steps += trace.steps.len();
    }
    Ok(format!(
        "{N}/{N} hosts, {steps} steps decrease (U, M, #m, #d, L) per rule"
    ))
}

fn left_connectedness() -> Outcome {
    const N: u64 = 100;
    ensure(is_left_connected(&ba_rules()).holds(), || {
        "BA is not left-connected".into()
    })?;
    let fs = is_left_connected(&fs_rules());
    ensure(!fs.holds(), || "FS reported left-connected".into())?;
    let failing: Vec<String> = fs
        .rules
        .iter()
        .filter(|r| !r.holds())
        .map(|r| format!("{}: {}", r.rule, r.failures().join(", ")))
        .collect();
    let rules = ba_rules();
    let mut compared = 0;
    for seed in 0..N {
        let host = gen::ba_host(&mut rng(60_000 + seed), 6);
        let convex = admissible_steps(&rules, &host, StepMode::Convex);
        let mono = admissible_steps(&rules, &host, StepMode::Frobenius);
        let key = |c: &sdrw::dpo::Candidate<'_>| (c.rule_index, c.m.hom.clone());
        ensure(convex.iter().map(key).eq(mono.iter().map(key)), || {
            format!("seed {seed}: step sets differ")
        })?;
        for (a, b) in convex.iter().zip(&mono) {
            let (ra, rb) = (
                a.apply(StepMode::Convex).unwrap(),
                b.apply(StepMode::Frobenius).unwrap(),
            );
            ensure(ra.is_isomorphic(&rb), || format!("seed {seed}: results differ"))?;
        }
        compared += convex.len();
    }
    Ok(format!(
        "BA left-connected; FS fails [{}]; {N} hosts, {compared} identical mono/convex steps",
        failing.join("; ")
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let hosts = [
        ("fs", "(d + d) ; (id(1) + sym(1, 1) + id(1)) ; (m + m)"),
        ("fs", "(m + id(1)) ; m ; d ; (d + id(1)) ; (id(1) + m)"),
        ("ba", "(m + u) ; m ; d ; (d + e)"),
        ("ba", "(m + m) ; sym(1, 1) ; (d + d)"),
    ];
    let mut runs = 0;
    for (k, (ruleset, text)) in hosts.iter().enumerate() {
        let host = dir.path().join(format!("host{k}.term"));
        std::fs::write(&host, text).map_err(|e| e.to_string())?;
        for seed in ["7", "42"] {
            let mut outputs = Vec::new();
            for run in 0..3 {
                let out = dir.path().join(format!("trace-{k}-{seed}-{run}.json"));
                let status = Command::new(env!("CARGO_BIN_EXE_sdrw"))
                    .args(["rewrite", host.to_str().unwrap(), "--ruleset", ruleset, "--normalize"])
                    .args(["--strategy", "random", "--seed", seed, "--out", out.to_str().unwrap()])
                    .env_remove("SDRW_OUT_DIR")
                    .output()
                    .map_err(|e| e.to_string())?
                    .status;
                ensure(status.success(), || format!("host {k} seed {seed}: exit {status}"))?;
                outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
                runs += 1;
            }
            ensure(outputs.windows(2).all(|w| w[0] == w[1]), || {
                format!("host {k} seed {seed}: traces differ")
            })?;
        }
    }
    Ok(format!("{runs} runs, traces byte-identical per (host, seed)"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("characterisation round trip", characterisation),
        ("MA closure", ma_closure),
        ("acyclicity not preserved", non_preservation),
        ("boundary complement uniqueness", boundary_uniqueness),
        ("convexity blocking", convexity_blocking),
        ("adequacy spot check", adequacy),
        ("FS termination", fs_termination),
        ("FS non-confluence", fs_non_confluence),
        ("BA termination", ba_termination),
        ("left-connectedness", left_connectedness),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
