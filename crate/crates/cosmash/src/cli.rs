//! Command-line front end producing machine-readable verification reports.
//!
//! Subcommands: `commutator`, `smith`, `sh-check`, `xmod-check`, `cat-check`,
//! `beck-check`, `dce-check`, `info`. Exit codes: 0 success, 1 domain error
//! (structured error report), 2 usage error.

use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{
    denormalize, normal_closure, normalize, subobject_generate, Alg, AlgebraError, Elem,
    Homomorphism, Subobject, UNIT,
};
use crate::catalog::{builtin, load_algebra, parse_algebra, CatalogError};
use crate::commutators::{
    associator_subobject, higgins_binary, huq_commutator, sh_check, smith_commutator,
    smith_normalization, ternary_group_exact, ternary_lower_bound, ternary_obstruction,
    CommutatorError, CommutatorKind, CommutatorReport, Exactness,
};
use crate::report::Report;
use crate::structures::{
    beck_module_check, builtin_extension, builtin_square, double_central_check,
    graph_from_precrossed, internal_category_check, ReflexiveGraph, SplitExtension,
    StructureError,
};
use crate::words::WordError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Commutator(#[from] CommutatorError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("{0}")]
    Input(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommutatorChoice {
    Higgins,
    Huq,
    SmithNormalization,
    TernaryObstruction,
    TernaryGroup,
    Associator,
    TernaryLower,
}

#[derive(Debug, Parser)]
#[command(
    name = "cosmash",
    version,
    about = "Commutator calculus on finite groups and loops"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basic facts about an algebra.
    Info {
        /// Catalog name, file path, or `-` for standard input.
        #[arg(long)]
        algebra: String,
    },
    /// Binary and ternary commutators of promoted subobjects.
    Commutator {
        #[arg(long, value_enum)]
        kind: CommutatorChoice,
        #[arg(long)]
        algebra: String,
        /// Comma-separated element names generating K.
        #[arg(long)]
        k: String,
        #[arg(long)]
        l: String,
        /// Generators for M (ternary kinds only).
        #[arg(long)]
        m: Option<String>,
        /// Enumeration depth for the lower-bound kind.
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Smith commutator of the denormalisations of K and L.
    Smith {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        k: String,
        #[arg(long)]
        l: String,
    },
    /// Scan all normal subobject pairs for Smith-is-Huq violations.
    ShCheck {
        #[arg(long)]
        algebra: String,
    },
    /// Staged crossed-module verdict for an extension and boundary.
    XmodCheck {
        #[arg(long)]
        extension: String,
        /// `zero`, `inclusion`, `identity`, or comma-separated images.
        #[arg(long)]
        boundary: String,
    },
    /// Internal-category check for the graph of an extension.
    CatCheck {
        #[arg(long)]
        extension: String,
        /// Boundary for the precrossed graph; omitted means d = c = p.
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Beck-module check for a split extension.
    BeckCheck {
        #[arg(long)]
        extension: String,
    },
    /// Double-central-extension check for a named square.
    DceCheck {
        #[arg(long)]
        square: String,
    },
}

/// Parses argv and executes; returns the exit code and the report payload.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return (2, e.to_string()),
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok((inputs, results)) => {
            let report = Report::new(
                command_name(&cli.command),
                inputs,
                results,
                start.elapsed().as_millis() as u64,
            );
            let body = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            (0, body)
        }
        Err(err) => {
            let report = Report::new(
                command_name(&cli.command),
                json!({}),
                json!({ "error": err.to_string() }),
                start.elapsed().as_millis() as u64,
            );
            let body = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            (1, body)
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Info { .. } => "info",
        Command::Commutator { .. } => "commutator",
        Command::Smith { .. } => "smith",
        Command::ShCheck { .. } => "sh-check",
        Command::XmodCheck { .. } => "xmod-check",
        Command::CatCheck { .. } => "cat-check",
        Command::BeckCheck { .. } => "beck-check",
        Command::DceCheck { .. } => "dce-check",
    }
}

fn resolve_algebra(spec: &str) -> Result<Alg, CliError> {
    if spec == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("failed to read standard input: {e}")))?;
        return Ok(parse_algebra(&text)?);
    }
    if std::path::Path::new(spec).is_file() {
        return Ok(load_algebra(spec)?);
    }
    Ok(builtin(spec)?)
}

fn parse_elements(x: &Alg, list: &str) -> Result<Vec<Elem>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| x.element_by_name(name).map_err(CliError::from))
        .collect()
}

/// Normal-subobject promotion of a generator list, as recorded in reports.
fn promote(x: &Alg, list: &str) -> Result<(Vec<Elem>, Subobject), CliError> {
    let gens = parse_elements(x, list)?;
    Ok((gens.clone(), normal_closure(x, &gens)))
}

fn names_of(x: &Alg, elems: &[Elem]) -> Vec<String> {
    elems.iter().map(|&e| x.name(e).to_string()).collect()
}

fn resolve_boundary(ext: &SplitExtension, spec: &str) -> Result<Homomorphism, CliError> {
    let a = ext.kernel_algebra();
    let g = ext.base();
    let map: Vec<Elem> = match spec {
        "zero" => vec![UNIT; a.order()],
        "inclusion" | "identity" => a
            .names()
            .iter()
            .map(|n| g.element_by_name(n).map_err(CliError::from))
            .collect::<Result<_, _>>()?,
        list => list
            .split(',')
            .map(str::trim)
            .map(|n| g.element_by_name(n).map_err(CliError::from))
            .collect::<Result<_, _>>()?,
    };
    if map.len() != a.order() {
        return Err(CliError::Input(format!(
            "boundary must assign {} images, got {}",
            a.order(),
            map.len()
        )));
    }
    Ok(crate::algebra::hom_check(a, g, map)?)
}

fn projection_graph(ext: &SplitExtension) -> Result<ReflexiveGraph, CliError> {
    Ok(ReflexiveGraph::new(
        ext.total().clone(),
        ext.base().clone(),
        ext.projection().clone(),
        ext.projection().clone(),
        ext.section().clone(),
    )?)
}

fn execute(command: &Command) -> Result<(Value, Value), CliError> {
    match command {
        Command::Info { algebra } => {
            let x = resolve_algebra(algebra)?;
            let normals = crate::algebra::normal_subobjects(&x);
            Ok((
                json!({ "algebra": algebra }),
                json!({
                    "kind": x.kind().to_string(),
                    "order": x.order(),
                    "elements": x.names(),
                    "abelian": x.is_abelian(),
                    "associative": x.is_associative(),
                    "normal_subobjects": normals.len(),
                }),
            ))
        }
        Command::Commutator { kind, algebra, k, l, m, depth } => {
            let x = resolve_algebra(algebra)?;
            let (k_gens, ks) = promote(&x, k)?;
            let (l_gens, ls) = promote(&x, l)?;
            let mut inputs = json!({
                "algebra": algebra,
                "k_generators": names_of(&x, &k_gens),
                "k": ks.element_names(),
                "l_generators": names_of(&x, &l_gens),
                "l": ls.element_names(),
                "promotion": "normal_closure",
            });
            let ternary = |m: &Option<String>| -> Result<(Vec<Elem>, Subobject), CliError> {
                match m {
                    Some(list) => promote(&x, list),
                    None => Ok((
                        x.elements().collect(),
                        subobject_generate(&x, &x.elements().collect::<Vec<_>>()),
                    )),
                }
            };
            let report = match kind {
                CommutatorChoice::Higgins => {
                    let result = higgins_binary(&x, &ks, &ls);
                    CommutatorReport::for_subobject(
                        CommutatorKind::HigginsBinary,
                        vec![("K".into(), ks.element_names()), ("L".into(), ls.element_names())],
                        &result,
                        Exactness::Exact,
                    )
                }
                CommutatorChoice::Huq => {
                    let result = huq_commutator(&x, &ks, &ls);
                    CommutatorReport::for_subobject(
                        CommutatorKind::Huq,
                        vec![("K".into(), ks.element_names()), ("L".into(), ls.element_names())],
                        &result,
                        Exactness::Exact,
                    )
                }
                CommutatorChoice::SmithNormalization => {
                    let result = smith_normalization(&x, &ks, &ls)?;
                    CommutatorReport::for_subobject(
                        CommutatorKind::SmithNormalization,
                        vec![("K".into(), ks.element_names()), ("L".into(), ls.element_names())],
                        &result,
                        Exactness::Exact,
                    )
                }
                CommutatorChoice::TernaryObstruction => {
                    let result = ternary_obstruction(&x, &ks, &ls)?;
                    CommutatorReport::for_subobject(
                        CommutatorKind::TernaryObstruction,
                        vec![("K".into(), ks.element_names()), ("L".into(), ls.element_names())],
                        &result,
                        Exactness::Exact,
                    )
                }
                CommutatorChoice::TernaryGroup => {
                    let (m_gens, ms) = ternary(m)?;
                    inputs["m_generators"] = json!(names_of(&x, &m_gens));
                    inputs["m"] = json!(ms.element_names());
                    let result = ternary_group_exact(&x, &ks, &ls, &ms)?;
                    CommutatorReport::for_subobject(
                        CommutatorKind::TernaryGroupExact,
                        vec![
                            ("K".into(), ks.element_names()),
                            ("L".into(), ls.element_names()),
                            ("M".into(), ms.element_names()),
                        ],
                        &result,
                        Exactness::Exact,
                    )
                }
                CommutatorChoice::Associator => {
                    let (m_gens, ms) = ternary(m)?;
                    inputs["m_generators"] = json!(names_of(&x, &m_gens));
                    inputs["m"] = json!(ms.element_names());
                    let result = associator_subobject(&x, &ks, &ls, &ms)?;
                    CommutatorReport::for_subobject(
                        CommutatorKind::Associator,
                        vec![
                            ("K".into(), ks.element_names()),
                            ("L".into(), ls.element_names()),
                            ("M".into(), ms.element_names()),
                        ],
                        &result,
                        Exactness::LowerBound,
                    )
                }
                CommutatorChoice::TernaryLower => {
                    let (m_gens, ms) = ternary(m)?;
                    inputs["m_generators"] = json!(names_of(&x, &m_gens));
                    inputs["m"] = json!(ms.element_names());
                    inputs["depth"] = json!(depth);
                    let lb = ternary_lower_bound(&x, &ks, &ls, &ms, *depth)?;
                    let mut report = CommutatorReport::for_subobject(
                        CommutatorKind::TernaryLowerBound,
                        vec![
                            ("K".into(), ks.element_names()),
                            ("L".into(), ls.element_names()),
                            ("M".into(), ms.element_names()),
                        ],
                        &lb.subobject,
                        lb.exactness,
                    );
                    report.witnesses = lb
                        .witnesses
                        .iter()
                        .map(|w| {
                            format!(
                                "{} at ({},{},{}) = {}",
                                w.term,
                                x.name(w.assignment[0]),
                                x.name(w.assignment[1]),
                                x.name(w.assignment[2]),
                                x.name(w.value)
                            )
                        })
                        .collect();
                    report
                }
            };
            Ok((inputs, json!({ "report": report })))
        }
        Command::Smith { algebra, k, l } => {
            let x = resolve_algebra(algebra)?;
            let (k_gens, ks) = promote(&x, k)?;
            let (l_gens, ls) = promote(&x, l)?;
            let (delta, witness) = smith_commutator(&x, &denormalize(&ks), &denormalize(&ls))?;
            let report = CommutatorReport::for_congruence(
                CommutatorKind::Smith,
                vec![("K".into(), ks.element_names()), ("L".into(), ls.element_names())],
                &delta,
                Exactness::Exact,
            );
            Ok((
                json!({
                    "algebra": algebra,
                    "k_generators": names_of(&x, &k_gens),
                    "k": ks.element_names(),
                    "l_generators": names_of(&x, &l_gens),
                    "l": ls.element_names(),
                    "promotion": "normal_closure",
                }),
                json!({
                    "commutes": delta.is_diagonal(),
                    "connector_verified": witness.is_some(),
                    "normalization": normalize(&delta).element_names(),
                    "report": report,
                }),
            ))
        }
        Command::ShCheck { algebra } => {
            let x = resolve_algebra(algebra)?;
            let report = sh_check(&x)?;
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "k": v.k.element_names(),
                        "l": v.l.element_names(),
                        "obstruction": v.obstruction.element_names(),
                        "witnesses": names_of(&x, &v.witnesses),
                    })
                })
                .collect();
            Ok((
                json!({ "algebra": algebra }),
                json!({
                    "pairs_scanned": report.pairs_scanned,
                    "pairs_applicable": report.pairs_applicable,
                    "violation_count": report.violations.len(),
                    "violations": violations,
                    "satisfies_smith_is_huq": report.violations.is_empty(),
                }),
            ))
        }
        Command::XmodCheck { extension, boundary } => {
            let ext = builtin_extension(extension)?;
            let b = resolve_boundary(&ext, boundary)?;
            let verdict = crate::structures::xmod_check(&ext, &b)?;
            Ok((
                json!({ "extension": extension, "boundary": boundary }),
                json!({ "verdict": verdict }),
            ))
        }
        Command::CatCheck { extension, boundary } => {
            let ext = builtin_extension(extension)?;
            let rg = match boundary {
                Some(spec) => {
                    let b = resolve_boundary(&ext, spec)?;
                    graph_from_precrossed(&ext, &b)?
                }
                None => projection_graph(&ext)?,
            };
            let report = internal_category_check(&rg)?;
            Ok((
                json!({
                    "extension": extension,
                    "boundary": boundary.clone().unwrap_or_else(|| "(projection graph)".into()),
                }),
                json!({
                    "is_category": report.is_category,
                    "binary_vanishes": report.binary_vanishes,
                    "ternary_vanishes": report.ternary_vanishes,
                    "smith_commutes": report.smith_commutes,
                }),
            ))
        }
        Command::BeckCheck { extension } => {
            let ext = builtin_extension(extension)?;
            let is_module = beck_module_check(&ext)?;
            Ok((
                json!({ "extension": extension }),
                json!({
                    "is_module": is_module,
                    // Thm Beck-2 route: the (p,p,s) graph is the same computation
                    "route": "abelian kernel + self-commuting kernel congruence",
                }),
            ))
        }
        Command::DceCheck { square } => {
            let sq = builtin_square(square)?;
            let report = double_central_check(&sq)?;
            Ok((
                json!({ "square": square }),
                json!({
                    "central": report.central,
                    "binary_vanishes": report.binary_vanishes,
                    "meet_with_whole_vanishes": report.meet_with_whole_vanishes,
                    "ternary_vanishes": report.ternary_vanishes,
                }),
            ))
        }
    }
}
