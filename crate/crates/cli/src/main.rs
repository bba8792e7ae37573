//! Command-line front end: validate decision graphs, explain decisions,
//! and cross-check the algorithmic pipeline against the brute-force
//! oracle.
//!
//! Exit codes: 0 success, 1 validation/verification failure, 2 usage
//! error, 3 capacity exceeded.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mvreasons::explain::{
    explain_with, gnr_all_violations_flip, nr_some_violation_flips, oracle_mismatches,
    report_to_json, report_to_text, Budgets, ExplanationReport,
};
use mvreasons::graph::graph_from_json;
use mvreasons::logic::DEFAULT_WORLD_BUDGET;
use mvreasons::pi::validate_pi_shape;
use mvreasons::quantify::is_locally_fixated;
use mvreasons::{DecisionGraph, Error, World};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mvreasons",
    about = "Explanations for classifiers with non-binary discrete features",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a decision-graph file against the weak test-once property.
    Validate {
        /// Path to a decision-graph JSON file.
        graph: PathBuf,
    },
    /// Explain the decision a graph makes on an instance.
    Explain {
        /// Path to a decision-graph JSON file.
        graph: PathBuf,
        #[command(flatten)]
        instance: InstanceArgs,
        /// Which explanation kinds to print.
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Cross-check the result against the brute-force oracle.
        #[arg(long)]
        check: bool,
    },
    /// Run sampled instances through the pipeline and the oracle.
    Check {
        /// Path to a decision-graph JSON file.
        graph: PathBuf,
        /// How many instances to test (all of them when the space is
        /// smaller).
        #[arg(long, default_value_t = 25)]
        samples: usize,
        /// Seed for instance sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct InstanceArgs {
    /// Set one variable, e.g. --set Age=">=55" (repeatable).
    #[arg(long = "set", value_name = "VAR=STATE")]
    sets: Vec<String>,
    /// Read the instance from a JSON object {"Var": "state", ...}.
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Sr,
    Nr,
    Gsr,
    Gnr,
    General,
    Complete,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::UnknownVariable(_)
        | Error::UnknownState { .. }
        | Error::BadWorld { .. }
        | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn budgets() -> Budgets {
    let worlds = std::env::var("MVREASONS_WORLD_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_WORLD_BUDGET);
    Budgets {
        worlds,
        ..Budgets::default()
    }
}

fn load_graph(path: &Path) -> Result<DecisionGraph, Error> {
    let text = std::fs::read_to_string(path)?;
    graph_from_json(&text)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate { graph } => {
            let g = load_graph(&graph)?;
            let report = g.validate();
            if report.is_valid() {
                println!(
                    "ok: {} nodes, {} classes, weak test-once property holds",
                    g.nodes().len(),
                    g.classes().len()
                );
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &report.violations {
                    println!("violation: {v}");
                }
                Ok(ExitCode::from(EXIT_FAILURE))
            }
        }
        Command::Explain {
            graph,
            instance,
            kind,
            format,
            check,
        } => {
            let g = load_graph(&graph)?;
            let w = parse_instance(&g, &instance)?;
            let report = explain_with(&g, &w, budgets())?;
            print_report(&report, kind, format);
            if check {
                let mismatches = oracle_mismatches(&report)?;
                if !mismatches.is_empty() {
                    for m in &mismatches {
                        eprintln!("oracle mismatch: {m}");
                    }
                    return Ok(ExitCode::from(EXIT_FAILURE));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            graph,
            samples,
            seed,
        } => {
            let g = load_graph(&graph)?;
            let report = g.validate();
            if !report.is_valid() {
                for v in &report.violations {
                    println!("violation: {v}");
                }
                return Ok(ExitCode::from(EXIT_FAILURE));
            }
            run_check(&g, samples, seed)
        }
    }
}

fn parse_instance(g: &DecisionGraph, args: &InstanceArgs) -> Result<World, Error> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    if let Some(path) = &args.instance {
        let text = std::fs::read_to_string(path)?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let obj = value.as_object().ok_or_else(|| {
            Error::Schema("instance file must be a JSON object of var: state".into())
        })?;
        for (k, v) in obj {
            let state = v
                .as_str()
                .ok_or_else(|| Error::Schema(format!("state of `{k}` must be a string")))?;
            pairs.push((k.clone(), state.to_string()));
        }
    }
    for s in &args.sets {
        let (var, state) = s.split_once('=').ok_or_else(|| {
            Error::Schema(format!("--set takes VAR=STATE, got `{s}`"))
        })?;
        pairs.push((var.to_string(), state.to_string()));
    }
    World::from_pairs(g.table(), pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())))
}

fn print_report(report: &ExplanationReport, kind: Kind, format: Format) {
    match format {
        Format::Json => {
            let mut value = report_to_json(report);
            if kind != Kind::All {
                let keep = match kind {
                    Kind::Sr => "sufficient_reasons",
                    Kind::Nr => "necessary_reasons",
                    Kind::Gsr => "general_sufficient_reasons",
                    Kind::Gnr => "general_necessary_reasons",
                    Kind::General => "general_reason",
                    Kind::Complete => "complete_reason",
                    Kind::All => unreachable!(),
                };
                let obj = value.as_object_mut().expect("report is an object");
                obj.retain(|k, _| k == keep || k == "decision" || k == "instance");
            }
            println!("{}", serde_json::to_string_pretty(&value).expect("valid json"));
        }
        Format::Text => {
            if kind == Kind::All {
                print!("{}", report_to_text(report));
                return;
            }
            let arena = report.arena();
            let table = arena.table();
            if let Some(d) = &report.decision {
                println!("decision: {d}");
            }
            match kind {
                Kind::Sr => {
                    for t in &report.srs {
                        println!("{}", t.render(table));
                    }
                }
                Kind::Nr => {
                    for c in &report.nrs {
                        println!("{}", c.render(table));
                    }
                }
                Kind::Gsr => {
                    for t in report.gsrs.iter() {
                        println!("{}", t.render(table));
                    }
                }
                Kind::Gnr => {
                    for c in report.gnrs.iter() {
                        println!("{}", c.render(table));
                    }
                }
                Kind::General => println!("{}", arena.render(report.general_reason)),
                Kind::Complete => println!("{}", arena.render(report.complete_reason)),
                Kind::All => unreachable!(),
            }
        }
    }
}

/// Explains sampled instances and re-derives every set via the oracle;
/// also re-checks the structural invariants of the general-reason
/// circuit and the flip guarantees of the necessary reasons.
fn run_check(g: &DecisionGraph, samples: usize, seed: u64) -> Result<ExitCode, Error> {
    let worlds: Vec<World> = g.table().worlds().collect();
    let chosen: Vec<World> = if samples >= worlds.len() {
        worlds
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked: Vec<World> = worlds
            .choose_multiple(&mut rng, samples)
            .cloned()
            .collect();
        picked.sort();
        picked
    };

    let mut failures = 0usize;
    for w in &chosen {
        let mut problems: Vec<String> = Vec::new();
        match explain_with(g, w, budgets()) {
            Ok(report) => {
                problems.extend(oracle_mismatches(&report)?);
                let arena = report.arena();
                if !is_locally_fixated(arena, report.general_reason, w) {
                    problems.push("general reason is not locally fixated".into());
                }
                if validate_pi_shape(arena, report.general_reason).is_err() {
                    problems.push("general reason violates the disjunction shape".into());
                }
                for c in report.gnrs.iter() {
                    if !gnr_all_violations_flip(arena, report.class_formula, w, c)? {
                        problems.push("GNR without the all-violations guarantee".to_string());
                    }
                }
                for c in &report.nrs {
                    if !nr_some_violation_flips(arena, report.class_formula, w, c)? {
                        problems.push("NR without a flipping violation".to_string());
                    }
                }
                let srs: BTreeSet<_> = report.srs.iter().cloned().collect();
                let recovered: BTreeSet<_> = report
                    .gsrs
                    .iter()
                    .map(|t| mvreasons::logic::instance_cap_term(w, t))
                    .collect::<Result<_, _>>()?;
                if srs != recovered {
                    problems.push("SR recovery mismatch".into());
                }
            }
            Err(e @ Error::Capacity { .. }) => return Err(e),
            Err(e) => problems.push(e.to_string()),
        }
        if problems.is_empty() {
            println!("ok: {}", w.render(g.table()));
        } else {
            failures += 1;
            for p in &problems {
                println!("FAIL: {} — {}", w.render(g.table()), p);
            }
        }
    }
    println!(
        "checked {} instances, {} failures",
        chosen.len(),
        failures
    );
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    })
}
