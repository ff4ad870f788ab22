//! `qct`: decide and verify n-cluster-tilting structure for the
//! radical-square-zero algebra of a quiver.
//!
//! Exit codes: 0 = affirmative/pass, 1 = negative/fail (still a
//! successful run), 2 = usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qct_core::admissibility::{
    admissible_degree, admits_nz, divisor_lattice, enumerate_flow_paths, is_n_admissible, q_values,
};
use qct_core::modules::{cluster_tilting_subcategories, lattice_of_ct, ModuleList};
use qct_core::oracle::{self, FieldSpec};
use qct_core::quiver::Quiver;

#[derive(Parser)]
#[command(name = "qct", version, about = "n-cluster-tilting for radical-square-zero path algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report n-(pre-)admissibility with all violations.
    Check {
        quiver: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        per_component: bool,
    },
    /// List the flow paths with their q-values.
    FlowPaths {
        quiver: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        per_component: bool,
    },
    /// Print the admissible degree N(Q).
    Degree {
        quiver: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        per_component: bool,
    },
    /// Construct the n-cluster-tilting generators (the module M, or the
    /// cycle family).
    Module {
        quiver: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        per_component: bool,
    },
    /// List cluster-tilting subcategories (all levels, or one with --n).
    Subcats {
        quiver: PathBuf,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        per_component: bool,
    },
    /// The lattice of cluster-tilting subcategories.
    Lattice {
        quiver: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        per_component: bool,
    },
    /// Verify the n-cluster-tilting property homologically.
    Verify {
        quiver: PathBuf,
        #[arg(long)]
        n: u64,
        /// Generators as ModuleList JSON; computed from the classification
        /// when omitted.
        #[arg(long)]
        gens: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long, default_value_t = 64)]
        max_resolution: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The nZ criterion, plus the syzygy-closure check when generators
    /// are supplied.
    Nz {
        quiver: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        gens: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The AR quiver, as DOT by default.
    ArQuiver {
        quiver: PathBuf,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Pad a skeleton's flow paths into an n-admissible quiver.
    Generate {
        skeleton: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// 0 = affirmative, 1 = negative, 2 = error.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Pass) => ExitCode::from(0),
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_quiver(path: &Path) -> Result<Quiver, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Quiver::parse(&text).map_err(|e| e.to_string())
}

/// Split into components when requested; a disconnected quiver without
/// the flag is an input error.
fn components_for(q: Quiver, per_component: bool) -> Result<Vec<Quiver>, String> {
    if q.is_connected() {
        Ok(vec![q])
    } else if per_component {
        Ok(q.components())
    } else {
        Err("quiver is not connected (use --per-component to analyze each component)".to_string())
    }
}

fn field(p: u64) -> Result<FieldSpec, String> {
    FieldSpec::new(p).map_err(|e| e.to_string())
}

fn load_gens(q: &Quiver, path: &Path) -> Result<ModuleList, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("invalid JSON: {e}"))?;
    ModuleList::from_json(q, &value).map_err(|e| e.to_string())
}

fn combine(results: Vec<Outcome>) -> Outcome {
    if results.iter().all(|r| matches!(r, Outcome::Pass)) {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn section(i: usize, total: usize) {
    if total > 1 {
        println!("# component {}", i + 1);
    }
}

fn run(cmd: Cmd) -> Result<Outcome, String> {
    match cmd {
        Cmd::Check {
            quiver,
            n,
            format,
            per_component,
        } => {
            let comps = components_for(load_quiver(&quiver)?, per_component)?;
            let total = comps.len();
            let mut outcomes = Vec::new();
            for (i, q) in comps.iter().enumerate() {
                section(i, total);
                let report = is_n_admissible(q, n).map_err(|e| e.to_string())?;
                match format {
                    Format::Json => println!("{}", report.to_json()),
                    _ => {
                        if report.verdict {
                            println!("{n}-admissible");
                        } else {
                            println!("not {n}-admissible");
                            for v in &report.violations {
                                println!("  violation {:?}: {}", v.rule, v.location.join(", "));
                            }
                        }
                    }
                }
                outcomes.push(if report.verdict { Outcome::Pass } else { Outcome::Fail });
            }
            Ok(combine(outcomes))
        }
        Cmd::FlowPaths {
            quiver,
            format,
            per_component,
        } => {
            let comps = components_for(load_quiver(&quiver)?, per_component)?;
            let total = comps.len();
            for (i, q) in comps.iter().enumerate() {
                section(i, total);
                let fps = enumerate_flow_paths(q).map_err(|e| e.to_string())?;
                match format {
                    Format::Json => {
                        let arr: Vec<serde_json::Value> = fps
                            .iter()
                            .map(|fp| {
                                let qv = q_values(q, fp);
                                serde_json::json!({
                                    "path": fp.display(q),
                                    "k": qv.k,
                                    "q1": qv.q1,
                                    "qk": qv.qk,
                                    "q": qv.q,
                                    "k_plus_q": qv.k_plus_q(),
                                })
                            })
                            .collect();
                        println!("{}", serde_json::Value::Array(arr));
                    }
                    _ => {
                        for fp in &fps {
                            let qv = q_values(q, fp);
                            println!(
                                "{} k={} q1={} qk={} q={} k+q={}",
                                fp.display(q),
                                qv.k,
                                qv.q1,
                                qv.qk,
                                qv.q,
                                qv.k_plus_q()
                            );
                        }
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Cmd::Degree {
            quiver,
            format,
            per_component,
        } => {
            let comps = components_for(load_quiver(&quiver)?, per_component)?;
            let total = comps.len();
            for (i, q) in comps.iter().enumerate() {
                section(i, total);
                let deg = admissible_degree(q).map_err(|e| e.to_string())?;
                match format {
                    Format::Json => println!("{}", serde_json::json!({ "N": deg })),
                    _ => println!("{deg}"),
                }
            }
            Ok(Outcome::Pass)
        }
        Cmd::Module {
            quiver,
            n,
            field: p,
            format,
            per_component,
        } => {
            let f = field(p)?;
            let comps = components_for(load_quiver(&quiver)?, per_component)?;
            let total = comps.len();
            let mut outcomes = Vec::new();
            for (i, q) in comps.iter().enumerate() {
                section(i, total);
                let subs = cluster_tilting_subcategories(q, n, f).map_err(|e| e.to_string())?;
                print_subcategories(q, &subs, format);
                outcomes.push(if subs.is_empty() { Outcome::Fail } else { Outcome::Pass });
            }
            Ok(combine(outcomes))
        }
        Cmd::Subcats {
            quiver,
            n,
            field: p,
            format,
            per_component,
        } => {
            let f = field(p)?;
            let comps = components_for(load_quiver(&quiver)?, per_component)?;
            let total = comps.len();
            let mut outcomes = Vec::new();
            for (i, q) in comps.iter().enumerate() {
                section(i, total);
                let levels: Vec<u64> = match n {
                    Some(level) => vec![level],
                    None => {
                        let deg = admissible_degree(q).map_err(|e| e.to_string())?;
                        let mut ls = vec![1];
                        ls.extend(divisor_lattice(deg).divisors.iter().skip(1));
                        ls
                    }
                };
                let mut any = false;
                for level in levels {
                    let subs =
                        cluster_tilting_subcategories(q, level, f).map_err(|e| e.to_string())?;
                    any |= !subs.is_empty();
                    if format != Format::Json {
                        println!("n = {level}: {} subcategor{}", subs.len(), if subs.len() == 1 { "y" } else { "ies" });
                    }
                    print_subcategories(q, &subs, format);
                }
                outcomes.push(if any { Outcome::Pass } else { Outcome::Fail });
            }
            Ok(combine(outcomes))
        }
        Cmd::Lattice {
            quiver,
            format,
            per_component,
        } => {
            let comps = components_for(load_quiver(&quiver)?, per_component)?;
            let total = comps.len();
            for (i, q) in comps.iter().enumerate() {
                section(i, total);
                let lat = lattice_of_ct(q).map_err(|e| e.to_string())?;
                match format {
                    Format::Json => println!("{}", lat.to_json(q)),
                    Format::Dot => print!("{}", lat.to_dot(q)),
                    Format::Text => {
                        println!("N = {}", lat.degree);
                        for (d, gens) in &lat.levels {
                            println!("C_{d}: {} indecomposables", gens.len());
                        }
                        for (a, b) in &lat.covers {
                            println!("C_{a} < C_{b}");
                        }
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Cmd::Verify {
            quiver,
            n,
            gens,
            field: p,
            max_resolution,
            format,
        } => {
            let f = field(p)?;
            let q = load_quiver(&quiver)?;
            if !q.is_connected() {
                return Err("quiver is not connected".to_string());
            }
            if (n as usize) > max_resolution {
                return Err(format!(
                    "verification at level {n} needs resolutions of length {n} > cap {max_resolution}"
                ));
            }
            let gen_lists: Vec<ModuleList> = match gens {
                Some(path) => vec![load_gens(&q, &path)?],
                None => {
                    let subs = cluster_tilting_subcategories(&q, n, f).map_err(|e| e.to_string())?;
                    if subs.is_empty() {
                        println!("no {n}-cluster-tilting subcategory exists (not {n}-admissible)");
                        return Ok(Outcome::Fail);
                    }
                    subs
                }
            };
            let mut reports = Vec::new();
            for gens in &gen_lists {
                reports
                    .push(oracle::verify_n_cluster_tilting(&q, n, gens, f).map_err(|e| e.to_string())?);
            }
            let pass = reports.iter().all(|r| r.pass);
            match format {
                // a single report serializes bare; a cycle family gives an array
                Format::Json if reports.len() == 1 => println!("{}", reports[0].to_json()),
                Format::Json => {
                    let arr: Vec<_> = reports.iter().map(|r| r.to_json()).collect();
                    println!("{}", serde_json::Value::Array(arr));
                }
                _ => {
                    for r in &reports {
                        print_verify(r, format);
                    }
                }
            }
            Ok(if pass { Outcome::Pass } else { Outcome::Fail })
        }
        Cmd::Nz {
            quiver,
            n,
            gens,
            field: p,
            format,
        } => {
            let f = field(p)?;
            let q = load_quiver(&quiver)?;
            let verdict = admits_nz(&q, n).map_err(|e| e.to_string())?;
            let report = match gens {
                Some(path) => {
                    let gens = load_gens(&q, &path)?;
                    Some(oracle::verify_nz(&q, n, &gens, f).map_err(|e| e.to_string())?)
                }
                None => None,
            };
            let pass = verdict && report.as_ref().is_none_or(|r| r.pass);
            if format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "admits_nZ": verdict,
                        "verify": report.as_ref().map(|r| r.to_json()),
                    })
                );
            } else {
                println!("admits nZ at n = {n}: {verdict}");
                if let Some(r) = &report {
                    print_verify(r, format);
                }
            }
            Ok(if pass { Outcome::Pass } else { Outcome::Fail })
        }
        Cmd::ArQuiver {
            quiver,
            field: p,
            format,
        } => {
            let f = field(p)?;
            let q = load_quiver(&quiver)?;
            if !q.is_connected() {
                return Err("quiver is not connected".to_string());
            }
            let ar = oracle::ar_quiver(&q, f).map_err(|e| e.to_string())?;
            match format {
                Format::Json => {
                    let nodes: Vec<String> = ar.nodes.iter().map(|m| m.display(&q)).collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "nodes": nodes,
                            "arrows": ar.arrows,
                            "tau_pairs": ar.tau_pairs,
                        })
                    );
                }
                _ => print!("{}", ar.to_dot(&q)),
            }
            Ok(Outcome::Pass)
        }
        Cmd::Generate { skeleton, n, seed } => {
            let sk = load_quiver(&skeleton)?;
            let out = qct_core::admissibility::generate_admissible(n, &sk, seed)
                .map_err(|e| e.to_string())?;
            print!("{}", out.to_text());
            Ok(Outcome::Pass)
        }
    }
}

fn print_subcategories(q: &Quiver, subs: &[ModuleList], format: Format) {
    match format {
        Format::Json => {
            let arr: Vec<serde_json::Value> = subs.iter().map(|s| s.to_json(q)).collect();
            println!("{}", serde_json::Value::Array(arr));
        }
        _ => {
            for (i, sub) in subs.iter().enumerate() {
                if subs.len() > 1 {
                    println!("subcategory {}:", i + 1);
                }
                for m in sub.iter() {
                    println!("  {}", m.display(q));
                }
            }
        }
    }
}

fn print_verify(report: &oracle::VerifyReport, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        _ => {
            println!("{}", if report.pass { "pass" } else { "fail" });
            for c in &report.counterexamples {
                println!("  counterexample: {} (i = {}, {})", c.module, c.i, c.direction);
            }
        }
    }
}
