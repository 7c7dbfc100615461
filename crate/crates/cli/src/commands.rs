//! Implementations of the command-line verbs.
//!
//! Every verb returns its full output as a string together with a pass flag
//! that decides the exit status.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use brion_core::brion::{
    atoms_closed_in, cell, classify as classify_orbit, declared_rank, extended_atoms, generator_bot, group_words,
    matchings_for,
};
use brion_core::clans::{MAX_CLAN_RANK, SPACE_NAMES};
use brion_core::coxeter::named_element;
use brion_core::symfunc::{
    conjecture_report, inv_schubert_stanley, schur_qps, stanley, ConjectureId, InvFlavor, SchurKind, StanleyType,
    SymLevel,
};
use brion_core::weak_order::{build_graph, AtomTable};
use brion_core::words::Word;
use brion_core::{NamedElement, OrbitGraph, StrictPartition, SymSpace, WeylElement, WeylKind};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{Format, SpaceArgs, Theorem};

/// Largest rank accepted by `verify` and `classify` without `--big`.
pub const DEFAULT_RANK_BOUND: usize = 4;

/// Failures that end the process with exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or flag combinations.
    #[error("{0}")]
    Usage(String),
    /// Parameters rejected by the library.
    #[error(transparent)]
    Domain(#[from] brion_core::Error),
}

/// Text to print and whether every check it reports passed.
#[derive(Debug)]
pub struct Output {
    /// The bytes written to standard output.
    pub text: String,
    /// False when a verification found a disagreement.
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn reject_dot(format: Format, verb: &str) -> CliResult<()> {
    if format == Format::Dot {
        return Err(usage(format!("--format dot is only available for graph, not {verb}")));
    }
    Ok(())
}

fn check_rank(space: SymSpace, big: bool) -> CliResult<()> {
    let rank = space.rank();
    if rank > MAX_CLAN_RANK {
        return Err(usage(format!(
            "{space} has rank {rank}; the largest supported rank is {MAX_CLAN_RANK}"
        )));
    }
    if rank > DEFAULT_RANK_BOUND && !big {
        return Err(usage(format!(
            "{space} has rank {rank}; pass --big for ranks above {DEFAULT_RANK_BOUND}"
        )));
    }
    Ok(())
}

/// The single space named by `--space` with its parameters.
fn single_space(args: &SpaceArgs) -> CliResult<SymSpace> {
    let name = args.space.as_deref().ok_or_else(|| usage("--space is required"))?;
    let space = SymSpace::from_parts(name, args.n, args.p, args.q)?;
    if space.rank() > MAX_CLAN_RANK {
        return Err(usage(format!(
            "{space} exceeds the largest supported rank {MAX_CLAN_RANK}"
        )));
    }
    Ok(space)
}

/// The spaces covered by `verify` and `classify`.
///
/// A fully specified space is used as is. A signature space given only `--n`
/// expands to every signature of that rank, and a missing `--space` covers
/// every space of rank 1 through `--n`.
fn space_family(args: &SpaceArgs) -> CliResult<Vec<SymSpace>> {
    let spaces = match args.space.as_deref() {
        None => {
            let bound = args.n.unwrap_or(DEFAULT_RANK_BOUND);
            if args.p.is_some() || args.q.is_some() {
                return Err(usage("--p and --q need --space"));
            }
            (1..=bound)
                .flat_map(|n| {
                    SPACE_NAMES
                        .iter()
                        .flat_map(move |name| SymSpace::all_with_rank(name, n))
                })
                .collect()
        }
        Some(name) => match SymSpace::from_parts(name, args.n, args.p, args.q) {
            Ok(space) => vec![space],
            Err(e) => {
                let upper = name.to_ascii_uppercase();
                match args.n {
                    Some(n) if args.p.is_none() && args.q.is_none() && SPACE_NAMES.contains(&upper.as_str()) => {
                        let all = SymSpace::all_with_rank(&upper, n);
                        if all.is_empty() {
                            return Err(e.into());
                        }
                        all
                    }
                    _ => return Err(e.into()),
                }
            }
        },
    };
    for &space in &spaces {
        check_rank(space, args.big)?;
    }
    Ok(spaces)
}

/// `clans`: every orbit index with its twisted involution.
pub fn clans(args: &SpaceArgs, format: Format) -> CliResult<Output> {
    reject_dot(format, "clans")?;
    let space = single_space(args)?;
    let graph = build_graph(space)?;
    let rows = graph.vertices().iter().zip(graph.images());
    Ok(Output::ok(match format {
        Format::Json => pretty(&Value::Array(
            rows.map(|(v, z)| json!({"clan": v.to_string(), "image": z.to_string()}))
                .collect(),
        )),
        _ => {
            let mut out = String::from("clan\timage\n");
            for (v, z) in rows {
                out.push_str(&format!("{v}\t{z}\n"));
            }
            out
        }
    }))
}

/// `graph`: the weak order graph in DOT, JSON or edge-list form.
pub fn graph(args: &SpaceArgs, format: Format) -> CliResult<Output> {
    let space = single_space(args)?;
    let graph = build_graph(space)?;
    Ok(Output::ok(match format {
        Format::Dot => graph.to_dot(),
        Format::Json => pretty(&graph.to_json()),
        Format::Tsv => {
            let mut out = String::from("source\tgenerator\ttarget\tdoubled\n");
            for e in graph.edges() {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    graph.vertices()[e.source],
                    e.generator,
                    graph.vertices()[e.target],
                    e.doubled
                ));
            }
            out
        }
    }))
}

/// `atoms`: the path-based atoms of every orbit with their exponents.
pub fn atoms(args: &SpaceArgs, format: Format) -> CliResult<Output> {
    reject_dot(format, "atoms")?;
    let space = single_space(args)?;
    let graph = build_graph(space)?;
    let table = graph.atoms_bfs();
    let passed = table.conflicts().is_empty() && table.nonreduced().is_empty();
    let text = match format {
        Format::Json => pretty(&table.to_json(&graph)),
        _ => {
            let mut out = String::from("orbit\tatom\td\n");
            for (v, orbit) in graph.vertices().iter().enumerate() {
                for (w, d) in table.atoms(v) {
                    out.push_str(&format!("{orbit}\t{w}\t{d}\n"));
                }
            }
            out
        }
    };
    Ok(Output { text, passed })
}

/// One twisted involution of the image with its orbits.
struct Fiber<'a> {
    z: &'a WeylElement,
    vertices: Vec<usize>,
}

/// Checks the closed form for one fiber of the orbit map.
fn verify_fiber(
    space: SymSpace,
    graph: &OrbitGraph,
    table: &AtomTable,
    universe: &HashSet<Word>,
    fiber: &Fiber<'_>,
) -> CliResult<(Value, bool)> {
    let z = fiber.z;
    let matchings = matchings_for(space, z)?;
    let mut cells = Vec::with_capacity(matchings.len());
    let mut union = BTreeSet::new();
    for m in &matchings {
        let set = cell(space, z, m, universe)?;
        let generator = generator_bot(space, z, m)?;
        let ranks = set
            .iter()
            .map(|w| declared_rank(space, w.oneline()))
            .collect::<brion_core::Result<Vec<i64>>>()?;
        let span = match (ranks.iter().min(), ranks.iter().max()) {
            (Some(lo), Some(hi)) => json!([lo, hi]),
            _ => Value::Null,
        };
        cells.push(json!({
            "matching": m.to_string(),
            "generator": generator.to_string(),
            "size": set.len(),
            "rank_span": span,
        }));
        union.extend(set);
    }
    let mut agree = union == extended_atoms(space, z)?;
    for &v in &fiber.vertices {
        let closed = atoms_closed_in(space, &graph.vertices()[v], universe)?;
        agree &= &closed.dz == table.atoms(v);
    }
    let record = json!({
        "z": z.to_string(),
        "matchings": matchings.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "cells": cells,
        "bfs_agree": agree,
    });
    Ok((record, agree))
}

/// Runs the closed-form check over every fiber of one space.
fn verify_space(space: SymSpace, fail_fast: bool) -> CliResult<(Value, bool)> {
    let graph = build_graph(space)?;
    let table = graph.atoms_bfs();
    let universe = group_words(space.kind())?;
    let mut by_image: BTreeMap<&WeylElement, Vec<usize>> = BTreeMap::new();
    for (v, z) in graph.images().iter().enumerate() {
        by_image.entry(z).or_default().push(v);
    }
    let fibers: Vec<Fiber<'_>> = by_image
        .into_iter()
        .map(|(z, vertices)| Fiber { z, vertices })
        .collect();
    let results: Vec<(Value, bool)> = if fail_fast {
        let mut out = Vec::new();
        for fiber in &fibers {
            let result = verify_fiber(space, &graph, &table, &universe, fiber)?;
            let stop = !result.1;
            out.push(result);
            if stop {
                break;
            }
        }
        out
    } else {
        fibers
            .par_iter()
            .map(|fiber| verify_fiber(space, &graph, &table, &universe, fiber))
            .collect::<CliResult<Vec<_>>>()?
    };
    let consistent = table.conflicts().is_empty() && table.nonreduced().is_empty();
    let agree = consistent && results.iter().all(|(_, ok)| *ok);
    let report = json!({
        "space": space.to_string(),
        "bfs_consistent": consistent,
        "bfs_agree": agree,
        "fibers": results.into_iter().map(|(record, _)| record).collect::<Vec<_>>(),
    });
    Ok((report, agree))
}

fn verify_main(args: &SpaceArgs, fail_fast: bool, format: Format) -> CliResult<Output> {
    let spaces = space_family(args)?;
    let mut reports = Vec::new();
    let mut passed = true;
    for space in spaces {
        let (report, ok) = verify_space(space, fail_fast)?;
        passed &= ok;
        reports.push(report);
        if fail_fast && !ok {
            break;
        }
    }
    let text = match format {
        Format::Json => pretty(&Value::Array(reports)),
        _ => {
            let mut out = String::from("space\tz\tmatchings\tatoms\tbfs_agree\n");
            for report in &reports {
                for fiber in report["fibers"].as_array().into_iter().flatten() {
                    let size: u64 = fiber["cells"]
                        .as_array()
                        .into_iter()
                        .flatten()
                        .filter_map(|c| c["size"].as_u64())
                        .sum();
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\n",
                        report["space"].as_str().unwrap_or_default(),
                        fiber["z"].as_str().unwrap_or_default(),
                        fiber["matchings"].as_array().map_or(0, Vec::len),
                        size,
                        fiber["bfs_agree"],
                    ));
                }
            }
            out
        }
    };
    Ok(Output { text, passed })
}

/// One longest-element identity between an involution Stanley function and a Schur function.
fn symfunc_case(
    part: &str,
    flavor: InvFlavor,
    n: usize,
    kind: SchurKind,
    shape: StrictPartition,
    m: usize,
) -> CliResult<(Value, bool)> {
    let z = named_element(flavor.kind(n), NamedElement::W0)?;
    let lhs = inv_schubert_stanley(flavor, &z, m, SymLevel::Stanley)?;
    let rhs = schur_qps(kind, &shape, None, m)?;
    let equal = lhs == rhs;
    let schur = match kind {
        SchurKind::Q => "Q",
        SchurKind::P => "P",
        SchurKind::S => "S",
    };
    Ok((
        json!({
            "part": part,
            "flavor": flavor.to_string(),
            "n": n,
            "vars": m,
            "schur": format!("{schur}{shape}"),
            "equal": equal,
        }),
        equal,
    ))
}

fn verify_symfunc(args: &SpaceArgs, fail_fast: bool, vars: usize, format: Format) -> CliResult<Output> {
    if args.space.is_some() || args.p.is_some() || args.q.is_some() {
        return Err(usage("--theorem symfunc takes only --n and --vars"));
    }
    let bound = args.n.unwrap_or(DEFAULT_RANK_BOUND);
    if bound > DEFAULT_RANK_BOUND && !args.big {
        return Err(usage(format!("pass --big for ranks above {DEFAULT_RANK_BOUND}")));
    }
    if bound > MAX_CLAN_RANK {
        return Err(usage(format!("the largest supported rank is {MAX_CLAN_RANK}")));
    }
    let mut cases: Vec<(&str, InvFlavor, usize, SchurKind, StrictPartition)> = Vec::new();
    for n in 1..=bound {
        let step = StrictPartition::step_two(n as u32);
        cases.push(("a", InvFlavor::AI, n, SchurKind::Q, step.clone()));
        if n % 2 == 1 {
            cases.push((
                "b",
                InvFlavor::AII,
                n,
                SchurKind::P,
                StrictPartition::step_two(n as u32 - 1),
            ));
        }
        cases.push(("c", InvFlavor::AIII, n, SchurKind::P, step));
        cases.push((
            "d",
            InvFlavor::BI,
            n,
            SchurKind::S,
            StrictPartition::staircase(n as u32),
        ));
    }
    let mut records = Vec::new();
    let mut passed = true;
    for (part, flavor, n, kind, shape) in cases {
        let (record, ok) = symfunc_case(part, flavor, n, kind, shape, vars)?;
        passed &= ok;
        records.push(record);
        if fail_fast && !ok {
            break;
        }
    }
    let text = match format {
        Format::Json => pretty(&Value::Array(records)),
        _ => {
            let mut out = String::from("part\tflavor\tn\tvars\tschur\tequal\n");
            for r in &records {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r["part"].as_str().unwrap_or_default(),
                    r["flavor"].as_str().unwrap_or_default(),
                    r["n"],
                    r["vars"],
                    r["schur"].as_str().unwrap_or_default(),
                    r["equal"]
                ));
            }
            out
        }
    };
    Ok(Output { text, passed })
}

/// `verify`: compare the closed forms with independent computations.
pub fn verify(args: &SpaceArgs, theorem: Theorem, fail_fast: bool, vars: usize, format: Format) -> CliResult<Output> {
    reject_dot(format, "verify")?;
    match theorem {
        Theorem::Main => verify_main(args, fail_fast, format),
        Theorem::Symfunc => verify_symfunc(args, fail_fast, vars, format),
    }
}

/// `classify`: closed-form classification next to the path-based multiplicity check.
pub fn classify(args: &SpaceArgs, format: Format) -> CliResult<Output> {
    reject_dot(format, "classify")?;
    let mut records = Vec::new();
    let mut passed = true;
    for space in space_family(args)? {
        let graph = build_graph(space)?;
        let table = graph.atoms_bfs();
        for (v, orbit) in graph.vertices().iter().enumerate() {
            let c = classify_orbit(space, orbit)?;
            let observed = table.atoms(v).values().all(|&d| d == 0);
            passed &= observed == c.multiplicity_free;
            records.push(json!({
                "space": space.to_string(),
                "orbit": orbit.to_string(),
                "multiplicity_free": c.multiplicity_free,
                "uniform": c.uniform,
                "alternating": c.alternating,
                "multiplicity_free_bfs": observed,
            }));
        }
    }
    let text = match format {
        Format::Json => pretty(&Value::Array(records)),
        _ => {
            let mut out =
                String::from("space\torbit\tmultiplicity_free\tuniform\talternating\tmultiplicity_free_bfs\n");
            for r in &records {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r["space"].as_str().unwrap_or_default(),
                    r["orbit"].as_str().unwrap_or_default(),
                    r["multiplicity_free"],
                    r["uniform"],
                    r["alternating"],
                    r["multiplicity_free_bfs"]
                ));
            }
            out
        }
    };
    Ok(Output { text, passed })
}

/// Flags of the `symfunc` verb; exactly one of `--schur`, `--stanley` or `--flavor` is used.
#[derive(Debug, Clone, clap::Args)]
pub struct SymfuncArgs {
    /// Schur Q, P or S function of a strict partition.
    #[arg(long, conflicts_with_all = ["stanley", "flavor"])]
    pub schur: Option<String>,
    /// Strict partition such as `(3,1)`.
    #[arg(long, requires = "schur")]
    pub lambda: Option<String>,
    /// Optional inner strict partition for a skew function.
    #[arg(long, requires = "lambda")]
    pub mu: Option<String>,
    /// Stanley symmetric function of type A, B, C or D.
    #[arg(long, conflicts_with = "flavor", requires = "w")]
    pub stanley: Option<String>,
    /// Group element in one-line notation, such as `[2,-1,3]` or `D:[-1,-2,3]`.
    #[arg(long, requires = "stanley")]
    pub w: Option<String>,
    /// Involution flavor: AI, AII, AIII, BI, CI, CII, DI, DII or DIII.
    #[arg(long, requires = "z")]
    pub flavor: Option<String>,
    /// Twisted involution in one-line notation.
    #[arg(long, requires = "flavor")]
    pub z: Option<String>,
    /// Sum Schubert polynomials or Stanley functions.
    #[arg(long, value_parser = ["schubert", "stanley"], default_value = "stanley")]
    pub level: String,
    /// Number of variables.
    #[arg(long = "vars", default_value_t = 4)]
    pub vars: usize,
}

/// Parses a tagged element, or an untagged one-line word in the group family `family`.
fn parse_element(text: &str, family: fn(usize) -> WeylKind) -> CliResult<WeylElement> {
    if text.contains(':') {
        return Ok(text.parse()?);
    }
    let word = brion_core::coxeter::parse_word(text)?;
    let degree = word.len();
    let probe = family(degree.max(1));
    let rank = if probe.degree() == degree {
        degree
    } else {
        degree.saturating_sub(1)
    };
    Ok(WeylElement::from_oneline(family(rank), word)?)
}

/// `symfunc`: one Schur, Stanley or involution function as a polynomial.
pub fn symfunc(args: &SymfuncArgs, format: Format) -> CliResult<Output> {
    reject_dot(format, "symfunc")?;
    let m = args.vars;
    let (label, input, poly) = if let Some(kind) = &args.schur {
        let kind: SchurKind = kind.parse()?;
        let lambda: StrictPartition = args
            .lambda
            .as_deref()
            .ok_or_else(|| usage("--schur needs --lambda"))?
            .parse()?;
        let mu: Option<StrictPartition> = args.mu.as_deref().map(str::parse).transpose()?;
        let input = match &mu {
            Some(mu) => format!("{lambda}/{mu}"),
            None => lambda.to_string(),
        };
        ("schur", input, schur_qps(kind, &lambda, mu.as_ref(), m)?)
    } else if let Some(ty) = &args.stanley {
        let ty: StanleyType = ty.parse()?;
        let family: fn(usize) -> WeylKind = match ty {
            StanleyType::A => WeylKind::A,
            StanleyType::B | StanleyType::C => WeylKind::BC,
            StanleyType::D => WeylKind::D,
        };
        let w = parse_element(args.w.as_deref().ok_or_else(|| usage("--stanley needs --w"))?, family)?;
        ("stanley", w.to_string(), stanley(ty, &w, m)?)
    } else if let Some(flavor) = &args.flavor {
        let flavor: InvFlavor = flavor.parse()?;
        let family: fn(usize) -> WeylKind = match flavor.kind(1) {
            WeylKind::A(_) => WeylKind::A,
            WeylKind::BC(_) => WeylKind::BC,
            WeylKind::D(_) => WeylKind::D,
        };
        let z = parse_element(args.z.as_deref().ok_or_else(|| usage("--flavor needs --z"))?, family)?;
        let level = if args.level == "schubert" {
            SymLevel::Schubert
        } else {
            SymLevel::Stanley
        };
        ("involution", z.to_string(), inv_schubert_stanley(flavor, &z, m, level)?)
    } else {
        return Err(usage("symfunc needs one of --schur, --stanley or --flavor"));
    };
    Ok(Output::ok(match format {
        Format::Json => pretty(&json!({"function": label, "input": input, "polynomial": poly.to_json()})),
        _ => format!("{poly}\n"),
    }))
}

/// `conjectures`: evaluate conjectural identities for a range of ranks.
pub fn conjectures(id: Option<&str>, n: Option<usize>, vars: usize, format: Format) -> CliResult<Output> {
    reject_dot(format, "conjectures")?;
    let ids: Vec<ConjectureId> = match id {
        Some(id) => vec![id.parse()?],
        None => ConjectureId::ALL.to_vec(),
    };
    let ranks: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (1..=5).collect(),
    };
    let jobs: Vec<(ConjectureId, usize)> = ids.iter().flat_map(|&id| ranks.iter().map(move |&n| (id, n))).collect();
    let reports = jobs
        .par_iter()
        .map(|&(id, n)| conjecture_report(id, n, vars))
        .collect::<brion_core::Result<Vec<_>>>()?;
    Ok(Output::ok(match format {
        Format::Json => pretty(&Value::Array(reports.iter().map(|r| r.to_json()).collect())),
        _ => {
            let mut out = String::from("id\tn\tvars\tequal\tremark_equal\tnote\n");
            let show = |b: Option<bool>| b.map_or_else(|| "-".to_string(), |b| b.to_string());
            for r in &reports {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.id,
                    r.n,
                    r.m,
                    show(r.equal),
                    show(r.remark_equal),
                    r.not_applicable.as_deref().or(r.remark.as_deref()).unwrap_or("-"),
                ));
            }
            out
        }
    }))
}
