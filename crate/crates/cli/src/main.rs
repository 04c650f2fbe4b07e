//! `sdrw`: check, rewrite, measure and extract string diagrams from the
//! command line.
//!
//! Exit codes: 0 ok, 1 negative answer (not MA, no strict decrease, no term),
//! 2 bad input, 3 no admissible step, 4 demo regression.

mod input;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sdrw::cases::demo::{boundary_uniqueness_demo, convexity_blocking_demo, non_confluence_demo};
use sdrw::cases::measure::{check_decrease, Measure, OrderingReport};
use sdrw::dot::to_dot;
use sdrw::dpo::{admissible_steps, normalize, RewriteStep, StepMode, Strategy, Trace, DEFAULT_MAX_STEPS};
use sdrw::io::{infer_signature, to_json, GraphJson, RuleJson, TraceJson};
use sdrw::term::extract_term;
use serde::Serialize;

use input::{load_ruleset, load_signature, read_diagram, read_text, Diagram};
use output::{Sink, Written};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Output(String),
    #[error("no admissible step{0}")]
    NoStep(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Output(_) => 2,
            CliError::NoStep(_) => 3,
        }
    }
}

type Outcome = Result<ExitCode, CliError>;

#[derive(Parser, Debug)]
#[command(name = "sdrw", version, about = "Convex DPO rewriting of string diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report monogamy, acyclicity and signature conformance of a term or graph.
    Check {
        file: PathBuf,
        #[command(flatten)]
        sig: SigArg,
    },
    /// Rewrite a host with a rule set, one step or to normal form.
    Rewrite(RewriteArgs),
    /// Check that a trace strictly decreases a termination measure.
    Measure {
        trace: PathBuf,
        #[arg(long, value_enum)]
        measure: MeasureName,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run a scripted scenario and write its fixtures.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        /// Defaults to $SDRW_OUT_DIR, then the current directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Convert a term to a graph, or a monogamous acyclic graph to a term.
    Extract {
        file: PathBuf,
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct SigArg {
    /// `fs`, `ba` or a signature JSON file. Terms are parsed over it (default
    /// `ba`); graphs are validated against it when given.
    #[arg(long)]
    signature: Option<String>,
}

#[derive(Args, Debug)]
struct RewriteArgs {
    host: PathBuf,
    /// `fs`, `ba` or a rule set JSON file.
    #[arg(long)]
    ruleset: String,
    #[arg(long, value_enum, default_value_t = Mode::Convex)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = StrategyName::RuleOrder)]
    strategy: StrategyName,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: usize,
    /// List admissible steps, or apply the one at `--index`.
    #[arg(long, conflicts_with = "normalize", required_unless_present = "normalize")]
    step: bool,
    #[arg(long, requires = "step")]
    index: Option<usize>,
    /// Rewrite until no admissible step remains or the budget runs out.
    #[arg(long)]
    normalize: bool,
    /// Trace file; defaults to $SDRW_OUT_DIR/trace.json, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write one DOT file per state here.
    #[arg(long)]
    dot_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Convex,
    Frobenius,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyName {
    RuleOrder,
    Leftmost,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MeasureName {
    Fs,
    Ba,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DemoName {
    FsNonconfluence,
    BoundaryUniqueness,
    ConvexityBlocking,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file, sig } => check(&file, sig.signature.as_deref()),
        Command::Rewrite(args) => rewrite(&args),
        Command::Measure { trace, measure, format } => measure_cmd(&trace, measure, format),
        Command::Demo { name, out_dir } => demo(name, out_dir),
        Command::Extract { file, sig, format, out } => {
            extract(&file, sig.signature.as_deref().unwrap_or("ba"), format, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(file: &Path, sig_arg: Option<&str>) -> Outcome {
    let sig = load_signature(sig_arg.unwrap_or("ba"))?;
    let c = read_diagram(&read_text(file)?, &sig)?.cospan;
    let report = c.monogamy();
    println!("monogamous: {}", yes_no(report.is_monogamous()));
    if !report.legs_mono {
        println!("  leg not mono");
    }
    for o in &report.offenders {
        println!(
            "  node {} has (in, out) = {:?}, expected {:?}",
            o.node, o.actual, o.expected
        );
    }
    let acyclic = c.graph.is_acyclic();
    println!("acyclic: {}", yes_no(acyclic));
    // without an explicit signature, labels must at least be used consistently
    let against = match sig_arg {
        Some(_) => sig,
        None => infer_signature(&c.graph).map_err(|e| CliError::Input(e.to_string()))?,
    };
    let violations = c.graph.validate(&against);
    if violations.is_empty() {
        println!("signature: ok");
    } else {
        println!("signature: {} violation(s)", violations.len());
        for v in &violations {
            println!("  {v}");
        }
    }
    let ma = report.is_monogamous() && acyclic;
    if ma {
        println!("MA: yes");
    } else if !report.legs_mono {
        println!("MA: no (leg not mono)");
    } else if !report.is_monogamous() {
        println!("MA: no (not monogamous)");
    } else {
        println!("MA: no (cyclic)");
    }
    Ok(ExitCode::from(u8::from(!ma)))
}

fn strategy(args: &RewriteArgs) -> (Strategy, &'static str, Option<u64>) {
    match args.strategy {
        StrategyName::RuleOrder => (Strategy::RuleOrder, "rule-order", None),
        StrategyName::Leftmost => (Strategy::Leftmost, "leftmost", None),
        StrategyName::Random => (Strategy::Random(args.seed), "random", Some(args.seed)),
    }
}

fn rewrite(args: &RewriteArgs) -> Outcome {
    let (sig, rules) = load_ruleset(&args.ruleset)?;
    let host = read_diagram(&read_text(&args.host)?, &sig)?.cospan;
    let (mode, mode_name) = match args.mode {
        Mode::Convex => (StepMode::Convex, "convex"),
        Mode::Frobenius => (StepMode::Frobenius, "frobenius"),
    };
    if mode == StepMode::Convex && !host.is_ma() {
        return Err(CliError::Input(
            "host is not monogamous acyclic; convex mode needs an MA host".into(),
        ));
    }
    let (strategy, strategy_name, seed) = strategy(args);
    let trace = if args.normalize {
        let trace =
            normalize(&host, &rules, mode, strategy, args.max_steps).map_err(|e| CliError::Input(e.to_string()))?;
        eprintln!(
            "{} step(s); {}",
            trace.steps.len(),
            if trace.normal_form {
                "normal form reached"
            } else {
                "step budget exhausted"
            }
        );
        trace
    } else {
        let candidates = admissible_steps(&rules, &host, mode);
        let Some(index) = args.index else {
            if candidates.is_empty() {
                return Err(CliError::NoStep(String::new()));
            }
            for (k, c) in candidates.iter().enumerate() {
                let edges: Vec<String> = c.m.hom.edges.values().map(ToString::to_string).collect();
                println!("{k}: {} on {}", rules[c.rule_index].name, edges.join(" "));
            }
            return Ok(ExitCode::SUCCESS);
        };
        let Some(c) = candidates.get(index) else {
            return Err(CliError::NoStep(format!(
                " at index {index} ({} available)",
                candidates.len()
            )));
        };
        let result = c.apply(mode).map_err(|e| CliError::Input(e.to_string()))?;
        let normal_form = admissible_steps(&rules, &result, mode).is_empty();
        Trace {
            initial: host.clone(),
            steps: vec![RewriteStep {
                rule: rules[c.rule_index].name.clone(),
                rule_index: c.rule_index,
                hom: c.m.hom.clone(),
                result,
            }],
            normal_form,
            exhausted: false,
        }
    };
    let json = TraceJson::new(&trace, &args.ruleset, mode_name, strategy_name, seed);
    let sink = match &args.out {
        Some(p) => Sink::File(p.clone()),
        None => output::default_dir().map_or(Sink::Stdout, |d| Sink::File(d.join("trace.json"))),
    };
    sink.write(&to_json(&json))?;
    if let Some(dir) = &args.dot_dir {
        for (k, state) in trace.states().enumerate() {
            let name = format!("step-{k:04}");
            output::write_file(&dir.join(format!("{name}.dot")), &to_dot(state, &name))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ReportJson<'a> {
    measure: &'a str,
    components: Vec<&'static str>,
    initial: &'a [u64],
    steps: Vec<StepJson<'a>>,
    passed: bool,
}

#[derive(Serialize)]
struct StepJson<'a> {
    rule: &'a str,
    before: &'a [u64],
    after: &'a [u64],
    decreased: Option<&'static str>,
    equal: Vec<&'static str>,
}

fn report_json(r: &OrderingReport) -> String {
    let names: Vec<&'static str> = r.measure.components.iter().map(|c| c.name()).collect();
    to_json(&ReportJson {
        measure: &r.measure.name,
        components: names.clone(),
        initial: &r.initial,
        steps: r
            .records
            .iter()
            .map(|s| StepJson {
                rule: &s.rule,
                before: &s.before,
                after: &s.after,
                decreased: s.decreased.map(|k| names[k]),
                equal: s.equal.iter().map(|k| names[*k]).collect(),
            })
            .collect(),
        passed: r.passed(),
    })
}

fn report_table(r: &OrderingReport) -> String {
    let names: Vec<&str> = r.measure.components.iter().map(|c| c.name()).collect();
    let fmt = |v: &[u64]| v.iter().map(|x| format!("{x:>6}")).collect::<String>();
    let header = names.iter().map(|n| format!("{n:>6}")).collect::<String>();
    let mut out = format!("{:>5} {:<6}{header}  | after\n", "step", "rule");
    out.push_str(&format!("{:>5} {:<6}{}\n", "", "start", fmt(&r.initial)));
    for (k, s) in r.records.iter().enumerate() {
        let verdict = match s.decreased {
            Some(c) => format!("{} down", names[c]),
            None => "FAIL".to_string(),
        };
        out.push_str(&format!(
            "{:>5} {:<6}{}  |{}  {verdict}\n",
            k + 1,
            s.rule,
            fmt(&s.before),
            fmt(&s.after)
        ));
    }
    out.push_str(if r.passed() { "PASS\n" } else { "FAIL\n" });
    out
}

fn measure_cmd(path: &Path, name: MeasureName, format: Format) -> Outcome {
    let text = read_text(path)?;
    let json: TraceJson = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed trace: {e}")))?;
    let trace = json
        .to_trace()
        .map_err(|e| CliError::Input(format!("malformed trace: {e}")))?;
    let measure = match name {
        MeasureName::Fs => Measure::fs(),
        MeasureName::Ba => Measure::ba(),
    };
    let report = check_decrease(&trace, &measure).map_err(|e| CliError::Input(e.to_string()))?;
    match format {
        Format::Table => print!("{}", report_table(&report)),
        Format::Json => print!("{}", report_json(&report)),
    }
    Ok(ExitCode::from(u8::from(!report.passed())))
}

fn demo(name: DemoName, out_dir: Option<PathBuf>) -> Outcome {
    let dir = out_dir
        .or_else(output::default_dir)
        .unwrap_or_else(|| PathBuf::from("."));
    let mut w = Written::new(&dir);
    let regressions = match name {
        DemoName::FsNonconfluence => {
            let d = non_confluence_demo();
            w.cospan("G", &d.g)?;
            w.cospan("H1", &d.h1)?;
            w.cospan("H2", &d.h2)?;
            let cert = serde_json::json!({
                "first_steps": d.first_steps,
                "h1_h2_isomorphic": !d.distinct,
                "h1_normal_form": d.h1_normal,
                "h2_normal_form": d.h2_normal,
                "fs4_on_h1": {"mono": d.h1_fs4_mono, "convex": d.h1_fs4_convex},
                "fs3_on_h2": {"mono": d.h2_fs3_mono, "convex": d.h2_fs3_convex},
            });
            w.text("certificate.json", &to_json(&cert))?;
            println!("admissible first steps: {}", d.first_steps.join(", "));
            println!("H1 and H2 isomorphic: {}", yes_no(!d.distinct));
            println!(
                "H1 normal form: {}; H2 normal form: {}",
                yes_no(d.h1_normal),
                yes_no(d.h2_normal)
            );
            println!("FS4 in H1: {} mono, {} convex", d.h1_fs4_mono, d.h1_fs4_convex);
            println!("FS3 in H2: {} mono, {} convex", d.h2_fs3_mono, d.h2_fs3_convex);
            d.regressions
        }
        DemoName::BoundaryUniqueness => {
            let d = boundary_uniqueness_demo();
            w.cospan("host", &d.host)?;
            w.text("rule.json", &to_json(&RuleJson::from_rule(&d.rule)))?;
            w.cospan("boundary-result", &d.boundary_result)?;
            for (k, c) in d.other_results.iter().enumerate() {
                w.cospan(&format!("other-result-{k}"), c)?;
            }
            for (k, (all, boundary)) in d.per_match.iter().enumerate() {
                println!("match {k}: {all} complements, {boundary} boundary");
            }
            d.regressions
        }
        DemoName::ConvexityBlocking => {
            let d = convexity_blocking_demo();
            w.cospan("host", &d.host)?;
            w.text("rule.json", &to_json(&RuleJson::from_rule(&d.rule)))?;
            if let Some(c) = &d.frobenius_result {
                w.cospan("frobenius-result", c)?;
            }
            println!("mono matches: {}; convex matches: {}", d.mono_matches, d.convex_matches);
            println!("deletion complement is boundary: {}", yes_no(d.complement_is_boundary));
            println!(
                "frobenius-mode step: {}",
                match &d.frobenius_result {
                    Some(c) => format!("applied, result acyclic: {}", yes_no(c.graph.is_acyclic())),
                    None => "failed".into(),
                }
            );
            println!("convex-mode step rejected: {}", yes_no(d.convex_rejected));
            println!("rule left-connected: {}", yes_no(d.left_connected));
            d.regressions
        }
    };
    println!("wrote {} file(s) to {}", w.count, dir.display());
    if regressions.is_empty() {
        println!("OK");
        Ok(ExitCode::SUCCESS)
    } else {
        for r in &regressions {
            eprintln!("regression: {r}");
        }
        Ok(ExitCode::from(4))
    }
}

fn extract(file: &Path, sig: &str, format: GraphFormat, out: Option<PathBuf>) -> Outcome {
    let sig = load_signature(sig)?;
    let d: Diagram = read_diagram(&read_text(file)?, &sig)?;
    let sink = out.map_or(Sink::Stdout, Sink::File);
    if d.from_term {
        let text = match format {
            GraphFormat::Json => to_json(&GraphJson::from_cospan(&d.cospan)),
            GraphFormat::Dot => to_dot(&d.cospan, "term"),
        };
        sink.write(&text)?;
        return Ok(ExitCode::SUCCESS);
    }
    match extract_term(&d.cospan) {
        Ok(t) => {
            sink.write(&format!("{t}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("no term: {e}");
            Ok(ExitCode::from(1))
        }
    }
}
