//! Command-line surface: argument definitions and command execution.
//!
//! Exit codes: `0` success or all checks passed, `1` a domain failure
//! (validation failed or a check failed), `2` a usage, I/O or parse error.

pub mod document;
pub mod dot;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use crate::cstar::{
    acyclic_block_structure, coaction_crossed_product_blocks, dual_crossed_product_blocks,
    graded_dimensions, is_acyclic, k_theory, regular_vertices, vertex_matrix, BlockStructure,
    GradedDimensions, IntMatrix, KTheory,
};
use crate::fixtures::random_case;
use crate::quiver::{validate_quiver, DEFAULT_NODE_BUDGET};
use crate::skew::{gross_tucker_reconstruct, quotient_quiver, skew_product, Section};
use crate::verify::{run_suite, CheckResult, Fault, SuiteOptions};

use document::{
    section_from_document, ActionDocument, CocycleDocument, MorphismDocument, QuiverDocument,
    QuotientDocument, SectionDocument, WitnessDocument,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "skewquiver",
    version,
    about = "Skew-product quivers, quotients and their invariants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a quiver document.
    Validate { quiver: PathBuf },
    /// Build the skew product of a quiver by a cocycle.
    Skew {
        quiver: PathBuf,
        cocycle: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient a quiver by a free group action.
    Quotient {
        quiver: PathBuf,
        action: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhibit a quiver with a free action as a skew product of its quotient.
    Reconstruct {
        quiver: PathBuf,
        action: PathBuf,
        /// Orbit -> representative map; defaults to the least vertex per orbit.
        #[arg(long)]
        section: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regular vertices, vertex matrix, K-theory and (if acyclic) blocks.
    Invariants {
        quiver: PathBuf,
        #[arg(long)]
        cocycle: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the structural checks on a quiver and cocycle, or on random
    /// fixtures when --seed is given.
    Verify {
        quiver: Option<PathBuf>,
        cocycle: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random fixtures in --seed mode.
        #[arg(long, default_value_t = 20)]
        cases: usize,
        /// Maximum number of sections tried per reconstruction.
        #[arg(long, default_value_t = 64)]
        sections: usize,
        /// Isomorphism search node budget.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Corrupt one skew-product weight before checking.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Export a quiver as a Graphviz digraph.
    ExportDot {
        quiver: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, content: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => stdout
            .write_all(content.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn say(stdout: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(stdout, "{line}").map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

#[derive(Serialize)]
struct InvariantsReport {
    vertices: Vec<String>,
    regular_vertices: Vec<String>,
    vertex_matrix: IntMatrix,
    k_theory: KTheory,
    acyclic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    block_structure: Option<BlocksReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    graded_dimensions: Option<GradedDimensions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coaction_crossed_product_blocks: Option<BlocksReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual_crossed_product_blocks: Option<BlocksReport>,
}

#[derive(Serialize)]
struct BlocksReport {
    blocks: Vec<u64>,
    dimension: u64,
}

impl From<BlockStructure> for BlocksReport {
    fn from(b: BlockStructure) -> Self {
        BlocksReport {
            dimension: b.dimension(),
            blocks: b.blocks,
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn print_results(results: &[CheckResult], stdout: &mut dyn Write) -> Result<bool, CliError> {
    let mut ok = true;
    for r in results {
        ok &= r.passed();
        say(stdout, &r.to_string())?;
    }
    Ok(ok)
}

/// Runs one command, writing its report to `stdout`. Returns the exit code.
pub fn execute(command: &Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Validate { quiver } => {
            let doc: QuiverDocument = read_json(quiver)?;
            let (vertices, edges) = doc.to_specs()?;
            let report = validate_quiver(&vertices, &edges);
            say(stdout, &report.to_string())?;
            Ok(if report.is_ok() { 0 } else { 1 })
        }
        Command::Skew {
            quiver,
            cocycle,
            out,
        } => {
            let q = read_json::<QuiverDocument>(quiver)?.to_quiver()?;
            let k = read_json::<CocycleDocument>(cocycle)?.to_cocycle()?;
            let f = skew_product(&q, &k).map_err(domain)?;
            emit(
                out.as_deref(),
                &to_json(&QuiverDocument::from_quiver(&f)),
                stdout,
            )?;
            Ok(0)
        }
        Command::Quotient {
            quiver,
            action,
            out,
        } => {
            let q = read_json::<QuiverDocument>(quiver)?.to_quiver()?;
            let a = read_json::<ActionDocument>(action)?.to_action(&q)?;
            let quot = quotient_quiver(&q, &a).map_err(domain)?;
            let doc = QuotientDocument {
                quotient: QuiverDocument::from_quiver(&quot.quiver),
                projection: MorphismDocument::from(&quot.projection),
            };
            emit(out.as_deref(), &to_json(&doc), stdout)?;
            Ok(0)
        }
        Command::Reconstruct {
            quiver,
            action,
            section,
            out,
        } => {
            let q = read_json::<QuiverDocument>(quiver)?.to_quiver()?;
            let action_doc: ActionDocument = read_json(action)?;
            let a = action_doc.to_action(&q)?;
            let s = match section {
                Some(path) => section_from_document(&read_json::<SectionDocument>(path)?),
                None => Section::least(&q, &a).map_err(domain)?,
            };
            let w = gross_tucker_reconstruct(&q, &a, &s).map_err(domain)?;
            let doc = WitnessDocument::new(&q, action_doc.group.clone(), &s, &w);
            emit(out.as_deref(), &to_json(&doc), stdout)?;
            Ok(0)
        }
        Command::Invariants {
            quiver,
            cocycle,
            out,
        } => {
            let q = read_json::<QuiverDocument>(quiver)?.to_quiver()?;
            let k = match cocycle {
                Some(path) => Some(read_json::<CocycleDocument>(path)?.to_cocycle()?),
                None => None,
            };
            let acyclic = is_acyclic(&q);
            let mut report = InvariantsReport {
                vertices: q.vertices().to_vec(),
                regular_vertices: regular_vertices(&q)
                    .into_iter()
                    .map(|v| q.vertex_id(v).to_string())
                    .collect(),
                vertex_matrix: vertex_matrix(&q),
                k_theory: k_theory(&q),
                acyclic,
                block_structure: None,
                graded_dimensions: None,
                coaction_crossed_product_blocks: None,
                dual_crossed_product_blocks: None,
            };
            if acyclic {
                report.block_structure = Some(acyclic_block_structure(&q).map_err(domain)?.into());
                if let Some(k) = &k {
                    report.graded_dimensions = Some(graded_dimensions(&q, k).map_err(domain)?);
                    report.coaction_crossed_product_blocks = Some(
                        coaction_crossed_product_blocks(&q, k)
                            .map_err(domain)?
                            .into(),
                    );
                    report.dual_crossed_product_blocks =
                        Some(dual_crossed_product_blocks(&q, k).map_err(domain)?.into());
                }
            }
            emit(out.as_deref(), &to_json(&report), stdout)?;
            Ok(0)
        }
        Command::Verify {
            quiver,
            cocycle,
            seed,
            cases,
            sections,
            budget,
            inject_fault,
        } => {
            let options = SuiteOptions {
                section_budget: *sections,
                iso_budget: *budget,
                fault: inject_fault.then_some(Fault::MutateWeight),
            };
            let mut ok = true;
            match (quiver, cocycle, seed) {
                (Some(qp), Some(kp), None) => {
                    let q = read_json::<QuiverDocument>(qp)?.to_quiver()?;
                    let k = read_json::<CocycleDocument>(kp)?.to_cocycle()?;
                    ok &= print_results(&run_suite(&q, &k, &options), stdout)?;
                }
                (None, None, Some(seed)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    for i in 0..*cases {
                        let acyclic = i % 2 == 0;
                        let case = random_case(&mut rng, 8, if acyclic { 12 } else { 16 }, acyclic);
                        say(
                            stdout,
                            &format!(
                                "case {i}: {} |V|={} |E|={}",
                                case.group_name,
                                case.quiver.vertex_count(),
                                case.quiver.edge_count()
                            ),
                        )?;
                        ok &= print_results(
                            &run_suite(&case.quiver, &case.cocycle, &options),
                            stdout,
                        )?;
                    }
                }
                _ => {
                    return Err(CliError::Usage(
                        "verify takes either QUIVER COCYCLE or --seed N".into(),
                    ))
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::ExportDot { quiver, out } => {
            let q = read_json::<QuiverDocument>(quiver)?.to_quiver()?;
            emit(out.as_deref(), &dot::to_dot(&q), stdout)?;
            Ok(0)
        }
    }
}
