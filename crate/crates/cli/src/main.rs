//! `tsca`: enumeration campaigns, symmetry searches, zoo checks and 2D
//! simulations, with deterministic file outputs and manifests.
//!
//! Exit codes: 0 success/found, 3 exhausted within bounds, 4 invalid
//! input, 5 verification failure.

mod manifest;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tsca_core::involution::{enumerate_involutions, solve_additive_involutions, EnumerationSpec};
use tsca_core::io;
use tsca_core::rule::{Alphabet, LocalRule1D, Neighborhood};
use tsca_core::symmetry::{find_symmetry, FindSymmetry};
use tsca_core::zoo;

use manifest::{write_atomic, Manifest};
use scenario::{InitSpec, Scenario};

const EXIT_OK: u8 = 0;
const EXIT_EXHAUSTED: u8 = 3;
const EXIT_INVALID: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser)]
#[command(name = "tsca", about = "Time-symmetric cellular automata toolkit")]
struct Cli {
    /// Size of the worker pool for enumeration searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the involutions of a rule space.
    Involutions(InvolutionsArgs),
    /// Search for a time-symmetry certificate for a rule.
    Symmetry(SymmetryArgs),
    /// Solve the additive involution conditions.
    Additive(AdditiveArgs),
    /// Run a simulation scenario and emit images, CSV and a manifest.
    #[command(subcommand)]
    Simulate(SimulateCommand),
    /// Inspect the built-in rule registry.
    #[command(subcommand)]
    Zoo(ZooCommand),
    /// Re-check a rule, certificate or report file from disk.
    Verify { file: PathBuf },
}

#[derive(Args)]
struct InvolutionsArgs {
    /// Alphabet size.
    #[arg(long)]
    m: usize,
    /// Comma-separated neighborhood offsets, e.g. `-1,0,1`.
    #[arg(long, allow_hyphen_values = true)]
    offsets: String,
    /// Decision-node budget (TSCA_BUDGET overrides the default).
    #[arg(long)]
    budget: Option<u64>,
    /// Output directory for the report and rule files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SymmetryArgs {
    /// Rule file path, or `zoo:NAME`.
    #[arg(long)]
    rule: String,
    /// Largest involution neighborhood span to try.
    #[arg(long)]
    max_span: u32,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AdditiveArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    radius: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SimulateCommand {
    /// Ant on a torus, from an all-white field.
    Ant {
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 256)]
        width: usize,
        #[arg(long, default_value_t = 256)]
        height: usize,
        /// Run this many steps, inject the head/tail exchange, run the
        /// same number again and require the initial grid back.
        #[arg(long)]
        reverse_at: Option<usize>,
        /// `white-right` (default) or `white-left`.
        #[arg(long, default_value = "white-right")]
        turn: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Billiard balls on a torus.
    Billiard {
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 32)]
        width: usize,
        #[arg(long, default_value_t = 32)]
        height: usize,
        /// Semicolon-separated ball positions, e.g. `1,1;4,2`.
        #[arg(long)]
        balls: Option<String>,
        /// Random fill density in [0,1]; uses --seed.
        #[arg(long)]
        random_fill: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        reverse_at: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Space-time diagram of the built-in infinite-order rule.
    Hedlund {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: usize,
        /// Random initial configuration (with --seed).
        #[arg(long)]
        random: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Explicit initial cells, e.g. `010110`.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Space-time diagram of an arbitrary rule file or zoo rule.
    Rule {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        random: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Alternating-involution dynamics of a certificate file.
    Alternating {
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        random: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run a previously written manifest; outputs are byte-identical.
    Rerun {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ZooCommand {
    /// List entries with their verified annotations.
    List,
    /// Write one entry as a rule file.
    Export {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the annotation checks (all entries, or one).
    Verify { name: Option<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("--threads must be positive");
            return ExitCode::from(EXIT_INVALID);
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn default_budget(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("TSCA_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(1 << 24)
}

/// Resolves `zoo:NAME` or a rule file path.
fn load_rule(spec: &str) -> anyhow::Result<(LocalRule1D, Option<zoo::ZooEntry>)> {
    if let Some(name) = spec.strip_prefix("zoo:") {
        let entry = zoo::entry(name)?;
        Ok((entry.rule.clone(), Some(entry)))
    } else {
        let text = std::fs::read_to_string(spec)?;
        Ok((io::rule_from_json(&text)?, None))
    }
}

fn out_dir(dir: &Option<PathBuf>) -> anyhow::Result<PathBuf> {
    let dir = dir.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Involutions(args) => cmd_involutions(args),
        Command::Symmetry(args) => cmd_symmetry(args),
        Command::Additive(args) => cmd_additive(args),
        Command::Simulate(sim) => cmd_simulate(sim),
        Command::Zoo(z) => cmd_zoo(z),
        Command::Verify { file } => cmd_verify(&file),
    }
}

fn cmd_involutions(args: InvolutionsArgs) -> anyhow::Result<u8> {
    let offsets: Vec<i32> = args
        .offsets
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()?;
    let spec = EnumerationSpec::new(
        Alphabet::new(args.m)?,
        Neighborhood::new(offsets)?,
        default_budget(args.budget),
    );
    let report = enumerate_involutions(&spec)?;
    for rule in &report.found {
        println!("involution: table {:?}", rule.table());
    }
    println!(
        "{} involutions, {} nodes, exhausted: {}",
        report.found.len(),
        report.nodes,
        report.exhausted
    );
    let dir = out_dir(&args.out)?;
    write_atomic(&dir.join("report.json"), &io::report_to_json(&report))?;
    for (i, rule) in report.found.iter().enumerate() {
        write_atomic(
            &dir.join(format!("involution_{i:03}.json")),
            &io::rule_to_json(rule),
        )?;
    }
    Ok(if report.exhausted {
        EXIT_OK
    } else {
        EXIT_EXHAUSTED
    })
}

fn cmd_symmetry(args: SymmetryArgs) -> anyhow::Result<u8> {
    let (rule, entry) = load_rule(&args.rule)?;
    let budget = default_budget(args.budget);
    let dir = out_dir(&args.out)?;
    match find_symmetry(&rule, args.max_span, budget) {
        FindSymmetry::Found(cert) => {
            println!(
                "certificate found: H over {:?}, G over {:?}",
                cert.h().neighborhood().offsets(),
                cert.g().neighborhood().offsets()
            );
            println!(
                "checked: H^2 = id ({} entries), G^2 = id ({} entries), G∘H = F, H∘F∘H = F^-1",
                cert.h().table().len(),
                cert.g().table().len()
            );
            write_atomic(
                &dir.join("certificate.json"),
                &io::certificate_to_json(&cert),
            )?;
            Ok(EXIT_OK)
        }
        FindSymmetry::Exhausted {
            max_span,
            complete,
            nodes,
        } => {
            println!(
                "exhausted: no certificate with involution span <= {max_span} \
                 (complete: {complete}, nodes: {nodes})"
            );
            if let Some(entry) = entry {
                for a in &entry.annotations {
                    if let zoo::Annotation::NotTimeSymmetricTheorem(reason) = a {
                        println!("note: {}: {reason}", entry.name);
                    }
                }
            }
            let body = serde_json::json!({
                "exhausted": true,
                "max_span": max_span,
                "complete": complete,
                "nodes": nodes,
            });
            write_atomic(
                &dir.join("exhausted.json"),
                &serde_json::to_string_pretty(&body)?,
            )?;
            Ok(EXIT_EXHAUSTED)
        }
    }
}

fn cmd_additive(args: AdditiveArgs) -> anyhow::Result<u8> {
    let solutions = solve_additive_involutions(args.m, args.radius)?;
    for c in &solutions {
        println!("coefficients {:?} (mod {})", c.coeffs, c.modulus);
    }
    println!("{} solutions", solutions.len());
    let dir = out_dir(&args.out)?;
    let body = serde_json::json!({
        "modulus": args.m,
        "radius": args.radius,
        "solutions": solutions.iter().map(|c| c.coeffs.clone()).collect::<Vec<_>>(),
    });
    write_atomic(
        &dir.join("additive.json"),
        &serde_json::to_string_pretty(&body)?,
    )?;
    for (i, c) in solutions.iter().enumerate() {
        let rule = tsca_core::involution::additive_rule(c)?;
        write_atomic(
            &dir.join(format!("additive_{i:03}.json")),
            &io::rule_to_json(&rule),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_simulate(sim: SimulateCommand) -> anyhow::Result<u8> {
    let (scenario, out) = match sim {
        SimulateCommand::Ant {
            steps,
            width,
            height,
            reverse_at,
            turn,
            out,
        } => {
            if let Some(k) = reverse_at {
                if k != steps {
                    eprintln!("--reverse-at must equal --steps");
                    return Ok(EXIT_INVALID);
                }
            }
            (
                Scenario::Ant {
                    width,
                    height,
                    steps,
                    reverse_at,
                    turn,
                },
                out,
            )
        }
        SimulateCommand::Billiard {
            steps,
            width,
            height,
            balls,
            random_fill,
            seed,
            reverse_at,
            out,
        } => {
            if let Some(k) = reverse_at {
                if k != steps {
                    eprintln!("--reverse-at must equal --steps");
                    return Ok(EXIT_INVALID);
                }
            }
            let balls = match (&balls, random_fill) {
                (Some(spec), None) => Some(scenario::parse_balls(spec)?),
                (None, Some(_)) => None,
                (None, None) => Some(vec![(1, 1)]),
                (Some(_), Some(_)) => {
                    eprintln!("--balls and --random-fill are mutually exclusive");
                    return Ok(EXIT_INVALID);
                }
            };
            (
                Scenario::Billiard {
                    width,
                    height,
                    steps,
                    balls,
                    random_fill,
                    seed: seed.unwrap_or(0),
                    reverse_at,
                },
                out,
            )
        }
        SimulateCommand::Hedlund {
            n,
            steps,
            random,
            seed,
            pattern,
            out,
        } => (
            Scenario::Hedlund {
                n,
                steps,
                init: InitSpec::from_flags(random, seed, pattern)?,
            },
            out,
        ),
        SimulateCommand::Rule {
            rule,
            n,
            steps,
            random,
            seed,
            pattern,
            out,
        } => {
            let (rule, _) = load_rule(&rule)?;
            (
                Scenario::Rule {
                    rule: io::RuleFile::from(&rule),
                    n,
                    steps,
                    init: InitSpec::from_flags(random, seed, pattern)?,
                },
                out,
            )
        }
        SimulateCommand::Alternating {
            certificate,
            n,
            steps,
            random,
            seed,
            pattern,
            out,
        } => {
            let text = std::fs::read_to_string(&certificate)?;
            let file: io::CertificateFile = serde_json::from_str(&text)?;
            (
                Scenario::Alternating {
                    certificate: file,
                    n,
                    steps,
                    init: InitSpec::from_flags(random, seed, pattern)?,
                },
                out,
            )
        }
        SimulateCommand::Rerun { manifest, out } => {
            let text = std::fs::read_to_string(&manifest)?;
            let m: Manifest = serde_json::from_str(&text)?;
            (m.scenario, out)
        }
    };
    let dir = out_dir(&out)?;
    match scenario::run(&scenario) {
        Ok(outputs) => {
            let names: Vec<String> = outputs.iter().map(|(n, _)| n.clone()).collect();
            for (name, content) in &outputs {
                write_atomic(&dir.join(name), content)?;
            }
            let manifest = Manifest {
                subcommand: "simulate".to_string(),
                scenario,
                outputs: names,
            };
            write_atomic(
                &dir.join("manifest.json"),
                &serde_json::to_string_pretty(&manifest)?,
            )?;
            Ok(EXIT_OK)
        }
        Err(scenario::RunError::ReversalFailed) => {
            eprintln!("reversal self-test failed: initial configuration not recovered");
            Ok(EXIT_VERIFY)
        }
        Err(scenario::RunError::Invalid(msg)) => {
            eprintln!("invalid scenario: {msg}");
            Ok(EXIT_INVALID)
        }
    }
}

fn cmd_zoo(z: ZooCommand) -> anyhow::Result<u8> {
    match z {
        ZooCommand::List => {
            let entries = match zoo::entries() {
                Ok(e) => e,
                Err(e) => {
                    eprintln!("zoo verification failed: {e}");
                    return Ok(EXIT_VERIFY);
                }
            };
            for e in entries {
                let notes: Vec<String> = e
                    .annotations
                    .iter()
                    .map(|a| match a {
                        zoo::Annotation::Involution => "involution".to_string(),
                        zoo::Annotation::NotInvolution => "not an involution".to_string(),
                        zoo::Annotation::ReversibleWithinSpan(s) => {
                            format!("reversible (span <= {s})")
                        }
                        zoo::Annotation::TimeSymmetricWith(h) => {
                            format!("time-symmetric (H = {h})")
                        }
                        zoo::Annotation::NotTimeSymmetricTheorem(_) => {
                            "not time-symmetric (theorem)".to_string()
                        }
                        zoo::Annotation::GrowingCycleOrders { max_n } => {
                            format!("cycle orders grow (n <= {max_n})")
                        }
                    })
                    .collect();
                println!("{}: {}", e.name, notes.join(", "));
            }
            Ok(EXIT_OK)
        }
        ZooCommand::Export { name, out } => {
            let entry = zoo::entry(&name)?;
            let text = io::rule_to_json(&entry.rule);
            match out {
                Some(path) => write_atomic(&path, &text)?,
                None => println!("{text}"),
            }
            Ok(EXIT_OK)
        }
        ZooCommand::Verify { name } => {
            let result = match name {
                Some(n) => zoo::entry(&n).map(|_| ()),
                None => zoo::entries().map(|_| ()),
            };
            match result {
                Ok(()) => {
                    println!("all annotations verified");
                    Ok(EXIT_OK)
                }
                Err(zoo::ZooError::UnknownEntry(n)) => {
                    eprintln!("no zoo entry named `{n}`");
                    Ok(EXIT_INVALID)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(EXIT_VERIFY)
                }
            }
        }
    }
}

fn cmd_verify(file: &std::path::Path) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(file)?;
    let value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("unreadable JSON: {e}");
            return Ok(EXIT_INVALID);
        }
    };
    let kind = if value.get("F").is_some() {
        "certificate"
    } else if value.get("found").is_some() {
        "report"
    } else if value.get("alphabet").is_some() {
        "rule"
    } else {
        eprintln!("unrecognized file shape");
        return Ok(EXIT_INVALID);
    };
    let outcome = match kind {
        "certificate" => io::certificate_from_json(&text).map(|_| ()),
        "report" => io::report_from_json(&text).map(|_| ()),
        _ => io::rule_from_json(&text).map(|_| ()),
    };
    match outcome {
        Ok(()) => {
            println!("{kind} verified");
            Ok(EXIT_OK)
        }
        Err(e) => {
            eprintln!("{kind} failed verification: {e}");
            Ok(EXIT_VERIFY)
        }
    }
}
