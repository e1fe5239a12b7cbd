//! Command-line surface for the multiplicative Lie algebra workbench.
//!
//! Exit codes: 0 on success, 1 when violations or precondition failures
//! were found (they are reported, not crashed on), 2 on usage or IO
//! errors. Reports are JSON on stdout and are byte-identical for identical
//! inputs and seed; timing goes to stderr.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mla::catalog::{census_group, enumeration_catalog};
use mla::extension::ExtensionError;
use mla::families::FamilySpec;
use mla::group::GroupTable;
use mla::identities::check_derived_identities;
use mla::io;
use mla::pairing::{central_pairing_to_star, enumerate_central_pairings, star_to_central_pairing};
use mla::search::{automorphism_group, dedup_stars, enumerate_stars, SearchOptions};
use mla::series::{compute_series, lz_center, mz_center, SeriesKind, SeriesReport};
use mla::star::{check_mla_axioms, Mla, StarTable, Violation};
use mla::structure::{class2_property_report, combine_structures, CombineError};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(
    name = "mla",
    version,
    about = "Validate, enumerate and construct multiplicative Lie algebra structures on finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or validate group tables
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Check the five axioms on a structure
    Check(StructureArgs),
    /// Check the twelve derived identities of a certified structure
    Identities(StructureArgs),
    /// Compute the four descending series
    Series(StructureArgs),
    /// Compute the multiplicative Lie center and the Lie center
    Centers(StructureArgs),
    /// Run the five-point class-2 property report
    Class2(StructureArgs),
    /// Enumerate every structure on a group
    Enumerate(EnumerateArgs),
    /// Combine two structures pointwise after checking the preconditions
    Combine(CombineArgs),
    /// Verify or build extension data
    Ext {
        #[command(subcommand)]
        cmd: ExtCmd,
    },
    /// Enumerate central pairings of a class-2 group, or apply one
    Pairing {
        #[command(subcommand)]
        cmd: PairingCmd,
    },
    /// Enumerate and classify structures across the small-group catalog
    Census(CensusArgs),
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Construct a standard family member and emit its table
    Build(GroupBuildArgs),
    /// Validate a group file
    Validate(GroupValidateArgs),
}

#[derive(Args)]
struct GroupBuildArgs {
    /// Family spec, e.g. cyclic:6, abelian:2,4, metacyclic:5,4,2,0
    #[arg(long)]
    family: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GroupValidateArgs {
    /// Group file (JSON)
    #[arg(long)]
    group: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct GroupSource {
    /// Group file (JSON)
    #[arg(long, conflicts_with = "family")]
    group: Option<PathBuf>,
    /// Family spec, e.g. heisenberg:3
    #[arg(long)]
    family: Option<String>,
}

impl GroupSource {
    fn load(&self) -> Result<GroupTable> {
        match (&self.group, &self.family) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                io::group_from_json(&text).map_err(|e| anyhow!("{e}"))
            }
            (None, Some(spec)) => Ok(FamilySpec::parse(spec)
                .map_err(|e| UsageError(e.to_string()))?
                .build()
                .map_err(|e| UsageError(e.to_string()))?),
            (None, None) => bail!(UsageError("need --group FILE or --family SPEC".into())),
        }
    }
}

#[derive(Args)]
struct StructureArgs {
    #[command(flatten)]
    source: GroupSource,
    /// Star file, or the keywords `trivial` / `improper`
    #[arg(long)]
    star: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    source: GroupSource,
    /// Search budget in seconds (also settable via MLA_BUDGET_SECONDS)
    #[arg(long)]
    budget: Option<u64>,
    /// Report automorphism-orbit representatives as well
    #[arg(long)]
    dedup: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct CombineArgs {
    #[command(flatten)]
    source: GroupSource,
    /// Exactly two occurrences: star files or trivial/improper keywords
    #[arg(long = "star", action = clap::ArgAction::Append)]
    stars: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum ExtCmd {
    /// Run both verifiers on an extension file
    Verify(ExtArgs),
    /// Verify, then build the group and the certified star
    Build(ExtArgs),
}

#[derive(Args)]
struct ExtArgs {
    /// Extension data file (JSON)
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum PairingCmd {
    /// List every alternating biadditive pairing of G/[G,G] into [G,G]
    Enumerate(PairingEnumerateArgs),
    /// Build the certified star a pairing file induces on a group
    Apply(PairingApplyArgs),
}

#[derive(Args)]
struct PairingEnumerateArgs {
    #[command(flatten)]
    source: GroupSource,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PairingApplyArgs {
    #[command(flatten)]
    source: GroupSource,
    /// Pairing file (JSON)
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CensusArgs {
    /// Per-group search budget in seconds (also MLA_BUDGET_SECONDS)
    #[arg(long)]
    budget: Option<u64>,
    /// Largest group order to include (complete enumeration territory)
    #[arg(long, default_value_t = 8)]
    max_order: usize,
    /// Record only automorphism-orbit representatives, with orbit sizes
    #[arg(long)]
    dedup: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

/// Marker for exit-code-2 conditions raised past argument parsing.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    eprintln!("completed in {:?}", started.elapsed());
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Group { cmd } => match cmd {
            GroupCmd::Build(args) => group_build(args),
            GroupCmd::Validate(args) => group_validate(args),
        },
        Command::Check(args) => structure_report(args, Mode::Check),
        Command::Identities(args) => structure_report(args, Mode::Identities),
        Command::Series(args) => structure_report(args, Mode::Series),
        Command::Centers(args) => structure_report(args, Mode::Centers),
        Command::Class2(args) => structure_report(args, Mode::Class2),
        Command::Enumerate(args) => enumerate(args),
        Command::Combine(args) => combine(args),
        Command::Ext { cmd } => match cmd {
            ExtCmd::Verify(args) => ext_verify(args),
            ExtCmd::Build(args) => ext_build(args),
        },
        Command::Pairing { cmd } => match cmd {
            PairingCmd::Enumerate(args) => pairing_enumerate(args),
            PairingCmd::Apply(args) => pairing_apply(args),
        },
        Command::Census(args) => census(args),
    }
}

fn default_budget(flag: Option<u64>) -> Duration {
    let secs = flag
        .or_else(|| {
            std::env::var("MLA_BUDGET_SECONDS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(60);
    Duration::from_secs(secs)
}

fn digest_inputs(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for p in parts {
        hasher.update(p.as_bytes());
        hasher.update([0]);
    }
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn emit(
    command: &str,
    digest: String,
    results: Value,
    complete: bool,
    format: Format,
    out: Option<&Path>,
) -> Result<()> {
    let report = json!({
        "command": command,
        "inputs": digest,
        "results": results,
        "complete": complete,
    });
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(&report)?,
        Format::Text => render_text(&report),
    };
    match out {
        Some(path) => std::fs::write(path, rendered + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{rendered}"),
    }
    Ok(())
}

fn render_text(v: &Value) -> String {
    let mut out = String::new();
    fn walk(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    match val {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            walk(val, indent + 1, out);
                        }
                        _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                    }
                }
            }
            Value::Array(items) => {
                if items.is_empty() {
                    out.push_str(&format!("{pad}(none)\n"));
                }
                for item in items {
                    match item {
                        Value::Object(_) | Value::Array(_) => walk(item, indent, out),
                        _ => out.push_str(&format!("{pad}- {item}\n")),
                    }
                }
            }
            _ => out.push_str(&format!("{pad}{v}\n")),
        }
    }
    walk(v, 0, &mut out);
    out.trim_end().to_string()
}

fn violations_json(vs: &[Violation]) -> Value {
    Value::Array(
        vs.iter()
            .map(|v| {
                json!({
                    "law": v.law,
                    "witness": v.witness,
                    "left": v.left,
                    "right": v.right,
                })
            })
            .collect(),
    )
}

fn series_json(r: &SeriesReport) -> Value {
    json!({
        "terms": r.terms.iter().map(|t| t.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        "stabilized": r.stabilized,
        "class": r.class,
    })
}

fn group_build(args: GroupBuildArgs) -> Result<i32> {
    let spec = FamilySpec::parse(&args.family).map_err(|e| UsageError(e.to_string()))?;
    let g = spec.build().map_err(|e| UsageError(e.to_string()))?;
    let text = io::group_to_json(&g);
    match &args.out {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    eprintln!("built {} of order {}", g.name(), g.order());
    Ok(0)
}

fn group_validate(args: GroupValidateArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.group)
        .with_context(|| format!("reading {}", args.group.display()))?;
    let digest = digest_inputs(&[&text]);
    match io::group_from_json(&text) {
        Ok(g) => {
            let results = json!({
                "valid": true,
                "name": g.name(),
                "order": g.order(),
                "identity": g.identity(),
                "abelian": g.is_abelian(),
                "class2": g.is_class2(),
            });
            emit("group validate", digest, results, true, args.format, None)?;
            Ok(0)
        }
        Err(io::IoError::Json(e)) => Err(e).context("parsing group file"),
        Err(err) => {
            let results = json!({ "valid": false, "error": err.to_string() });
            emit("group validate", digest, results, true, args.format, None)?;
            Ok(1)
        }
    }
}

enum Mode {
    Check,
    Identities,
    Series,
    Centers,
    Class2,
}

fn load_structure(source: &GroupSource, star_arg: &str) -> Result<(GroupTable, StarTable)> {
    match star_arg {
        "trivial" => {
            let g = source.load()?;
            let star = StarTable::trivial(&g);
            Ok((g, star))
        }
        "improper" => {
            let g = source.load()?;
            let star = StarTable::improper(&g);
            Ok((g, star))
        }
        path => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let (g, star) = io::star_from_json(&text).map_err(|e| anyhow!("{e}"))?;
            Ok((g, star))
        }
    }
}

fn structure_report(args: StructureArgs, mode: Mode) -> Result<i32> {
    let (g, star) = load_structure(&args.source, &args.star)?;
    let digest = digest_inputs(&[
        &format!("{:?}", g.rows()),
        &format!("{:?}", star.rows()),
        &format!("{:?}", args.seed),
    ]);
    let axioms = check_mla_axioms(&g, &star);
    let mut results = serde_json::Map::new();
    results.insert("group".into(), json!(g.name()));
    results.insert("order".into(), json!(g.order()));
    results.insert("axioms".into(), violations_json(&axioms));

    let command = match mode {
        Mode::Check => "check",
        Mode::Identities => "identities",
        Mode::Series => "series",
        Mode::Centers => "centers",
        Mode::Class2 => "class2",
    };

    let mut failed = !axioms.is_empty();
    if axioms.is_empty() {
        let mla = Mla::certify(g.clone(), star).expect("checked above");
        match mode {
            Mode::Check => {}
            Mode::Identities => {
                let ids = check_derived_identities(mla.group(), mla.star());
                failed |= !ids.is_empty();
                results.insert("identities".into(), violations_json(&ids));
            }
            Mode::Series => {
                let mut series = serde_json::Map::new();
                for (key, kind) in [
                    ("gamma_derived", SeriesKind::GammaDerived),
                    ("gamma_lower_central", SeriesKind::GammaLowerCentral),
                    ("lie_derived", SeriesKind::LieDerived),
                    ("lie_lower_central", SeriesKind::LieLowerCentral),
                ] {
                    series.insert(key.into(), series_json(&compute_series(&mla, kind)));
                }
                results.insert("series".into(), Value::Object(series));
            }
            Mode::Centers => {
                results.insert(
                    "centers".into(),
                    json!({
                        "mz": mz_center(&mla).iter().collect::<Vec<_>>(),
                        "lz": lz_center(&mla).iter().collect::<Vec<_>>(),
                        "group_center": g.center().iter().collect::<Vec<_>>(),
                    }),
                );
            }
            Mode::Class2 => {
                if !g.is_class2() {
                    results.insert(
                        "class2".into(),
                        json!({"applicable": false, "reason": "group is not nilpotent of class 2"}),
                    );
                    failed = true;
                } else {
                    let checks = class2_property_report(&mla);
                    failed |= checks.iter().any(|c| !c.holds);
                    results.insert(
                        "class2".into(),
                        Value::Array(
                            checks
                                .iter()
                                .map(|c| {
                                    json!({
                                        "label": c.label,
                                        "holds": c.holds,
                                        "witness": c.witness,
                                    })
                                })
                                .collect(),
                        ),
                    );
                }
            }
        }
    }

    emit(
        command,
        digest,
        Value::Object(results),
        true,
        args.format,
        args.out.as_deref(),
    )?;
    Ok(if failed { 1 } else { 0 })
}

fn enumerate(args: EnumerateArgs) -> Result<i32> {
    let g = args.source.load()?;
    let opts = SearchOptions {
        time_budget: default_budget(args.budget),
        dedup_by_automorphism: args.dedup,
        ..SearchOptions::default()
    };
    let digest = digest_inputs(&[&format!("{:?}", g.rows()), &format!("{:?}", args.seed)]);
    let enumeration = enumerate_stars(&g, &opts);
    let mut results = serde_json::Map::new();
    results.insert("group".into(), json!(g.name()));
    results.insert("count".into(), json!(enumeration.stars.len()));
    results.insert("complete".into(), json!(enumeration.complete));
    results.insert(
        "stars".into(),
        Value::Array(enumeration.stars.iter().map(|s| json!(s.rows())).collect()),
    );
    if opts.dedup_by_automorphism {
        let auts = automorphism_group(&g);
        let orbits = dedup_stars(&g, &enumeration.stars, &auts);
        results.insert(
            "orbits".into(),
            Value::Array(
                orbits
                    .iter()
                    .map(|o| json!({"representative": o.representative.rows(), "size": o.size}))
                    .collect(),
            ),
        );
        results.insert("automorphisms".into(), json!(auts.len()));
    }
    let complete = enumeration.complete;
    emit(
        "enumerate",
        digest,
        Value::Object(results),
        complete,
        args.format,
        args.out.as_deref(),
    )?;
    Ok(if complete { 0 } else { 1 })
}

fn combine(args: CombineArgs) -> Result<i32> {
    if args.stars.len() != 2 {
        bail!(UsageError(
            "combine needs exactly two --star arguments".into()
        ));
    }
    let (g1, s1) = load_structure(&args.source, &args.stars[0])?;
    let (g2, s2) = load_structure(&args.source, &args.stars[1])?;
    if g1.rows() != g2.rows() {
        bail!(UsageError("the two stars live on different groups".into()));
    }
    let digest = digest_inputs(&[
        &format!("{:?}", g1.rows()),
        &format!("{:?}", s1.rows()),
        &format!("{:?}", s2.rows()),
    ]);
    let m1 = match Mla::certify(g1.clone(), s1) {
        Ok(m) => m,
        Err(vs) => {
            emit(
                "combine",
                digest,
                json!({"error": "first star fails the axioms", "axioms": violations_json(&vs)}),
                true,
                args.format,
                args.out.as_deref(),
            )?;
            return Ok(1);
        }
    };
    let m2 = match Mla::certify(g1.clone(), s2) {
        Ok(m) => m,
        Err(vs) => {
            emit(
                "combine",
                digest,
                json!({"error": "second star fails the axioms", "axioms": violations_json(&vs)}),
                true,
                args.format,
                args.out.as_deref(),
            )?;
            return Ok(1);
        }
    };
    match combine_structures(&m1, &m2) {
        Ok(combined) => {
            let results = json!({
                "group": g1.name(),
                "star": combined.star().rows(),
                "certified": true,
            });
            emit(
                "combine",
                digest,
                results,
                true,
                args.format,
                args.out.as_deref(),
            )?;
            Ok(0)
        }
        Err(CombineError::TheoremViolated(v)) => {
            let results = json!({
                "error": "combined star failed certification despite preconditions",
                "violation": violations_json(std::slice::from_ref(&v)),
            });
            emit(
                "combine",
                digest,
                results,
                true,
                args.format,
                args.out.as_deref(),
            )?;
            Ok(1)
        }
        Err(err @ CombineError::Precondition { .. }) => {
            let results = json!({ "error": err.to_string() });
            emit(
                "combine",
                digest,
                results,
                true,
                args.format,
                args.out.as_deref(),
            )?;
            Ok(1)
        }
        Err(CombineError::GroupMismatch) => {
            bail!(UsageError("the two stars live on different groups".into()))
        }
    }
}

fn ext_verify(args: ExtArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let digest = digest_inputs(&[&text]);
    let data = match io::extension_from_json(&text) {
        Ok(d) => d,
        Err(io::IoError::Bracket(vs)) => {
            emit(
                "ext verify",
                digest,
                json!({"brackets": violations_json(&vs)}),
                true,
                args.format,
                args.out.as_deref(),
            )?;
            return Ok(1);
        }
        Err(e) => return Err(anyhow!("{e}")),
    };
    let cocycle = data.verify_cocycle();
    let star_compat = data.verify_star_compatibility();
    let clean = cocycle.is_empty() && star_compat.is_empty();
    let results = json!({
        "cocycle": violations_json(&cocycle),
        "star_compatibility": violations_json(&star_compat),
    });
    emit(
        "ext verify",
        digest,
        results,
        true,
        args.format,
        args.out.as_deref(),
    )?;
    Ok(if clean { 0 } else { 1 })
}

fn ext_build(args: ExtArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let digest = digest_inputs(&[&text]);
    let data = match io::extension_from_json(&text) {
        Ok(d) => d,
        Err(io::IoError::Bracket(vs)) => {
            emit(
                "ext build",
                digest,
                json!({"brackets": violations_json(&vs)}),
                true,
                args.format,
                args.out.as_deref(),
            )?;
            return Ok(1);
        }
        Err(e) => return Err(anyhow!("{e}")),
    };
    match data.build_star() {
        Ok(mla) => {
            let star_file = io::star_to_json(mla.group(), mla.star());
            if let Some(path) = &args.out {
                std::fs::write(path, star_file + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let results = json!({
                "group": mla.group().name(),
                "order": mla.group().order(),
                "certified": true,
                "star": mla.star().rows(),
            });
            emit("ext build", digest, results, true, args.format, None)?;
            Ok(0)
        }
        Err(ExtensionError::NotVerified(v)) => {
            let results = json!({
                "error": "compatibility equations do not hold",
                "violation": violations_json(std::slice::from_ref(&v)),
            });
            emit(
                "ext build",
                digest,
                results,
                true,
                args.format,
                args.out.as_deref(),
            )?;
            Ok(1)
        }
        Err(ExtensionError::TheoremViolated(v)) => {
            let results = json!({
                "error": "built star failed certification despite verified data; preserve this input",
                "violation": violations_json(std::slice::from_ref(&v)),
            });
            emit(
                "ext build",
                digest,
                results,
                true,
                args.format,
                args.out.as_deref(),
            )?;
            Ok(1)
        }
        Err(e) => Err(anyhow!("{e}")),
    }
}

fn pairing_enumerate(args: PairingEnumerateArgs) -> Result<i32> {
    let g = args.source.load()?;
    let digest = digest_inputs(&[&format!("{:?}", g.rows())]);
    if !g.is_class2() {
        emit(
            "pairing enumerate",
            digest,
            json!({"error": "group is not nilpotent of class 2"}),
            true,
            args.format,
            args.out.as_deref(),
        )?;
        return Ok(1);
    }
    let derived = g.derived_subgroup();
    let (q, _) = g.quotient(&derived).map_err(|e| anyhow!("{e}"))?;
    let (a, _) = g
        .subgroup_table(&derived, "A")
        .map_err(|e| anyhow!("{e}"))?;
    let pairings = enumerate_central_pairings(&q, &a);
    let results = json!({
        "group": g.name(),
        "quotient_order": q.order(),
        "target_order": a.order(),
        "count": pairings.len(),
        "pairings": pairings
            .iter()
            .map(|p| {
                let qn = q.order();
                let rows: Vec<Vec<usize>> =
                    (0..qn).map(|x| p.table()[x * qn..(x + 1) * qn].to_vec()).collect();
                json!(rows)
            })
            .collect::<Vec<_>>(),
    });
    emit(
        "pairing enumerate",
        digest,
        results,
        true,
        args.format,
        args.out.as_deref(),
    )?;
    Ok(0)
}

fn pairing_apply(args: PairingApplyArgs) -> Result<i32> {
    let g = args.source.load()?;
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let digest = digest_inputs(&[&format!("{:?}", g.rows()), &text]);
    let file: io::PairingFile = serde_json::from_str(&text).context("parsing pairing file")?;
    let pairing = match file.to_pairing() {
        Ok(p) => p,
        Err(e) => {
            emit(
                "pairing apply",
                digest,
                json!({"error": e.to_string()}),
                true,
                args.format,
                args.out.as_deref(),
            )?;
            return Ok(1);
        }
    };
    match central_pairing_to_star(&g, &pairing) {
        Ok(mla) => {
            // read it back as a sanity check on the correspondence
            let back = star_to_central_pairing(&mla).map_err(|e| anyhow!("{e}"))?;
            let round_trip = back.table() == pairing.table();
            let results = json!({
                "group": g.name(),
                "certified": true,
                "round_trip": round_trip,
                "star": mla.star().rows(),
            });
            if let Some(path) = &args.out {
                std::fs::write(path, io::star_to_json(mla.group(), mla.star()) + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit("pairing apply", digest, results, true, args.format, None)?;
            Ok(if round_trip { 0 } else { 1 })
        }
        Err(e) => {
            emit(
                "pairing apply",
                digest,
                json!({"error": e.to_string()}),
                true,
                args.format,
                args.out.as_deref(),
            )?;
            Ok(1)
        }
    }
}

fn census(args: CensusArgs) -> Result<i32> {
    let budget = default_budget(args.budget);
    let mut entries = enumeration_catalog(args.max_order);
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    let mut lines = Vec::new();
    let mut all_complete = true;
    for entry in entries {
        let g = entry.build();
        let (records, summary) = census_group(&g, budget);
        all_complete &= summary.complete;
        if args.dedup {
            let auts = automorphism_group(&g);
            let stars: Vec<StarTable> = records
                .iter()
                .map(|r| StarTable::from_rows(g.order(), &r.star).expect("round trip"))
                .collect();
            let orbits = dedup_stars(&g, &stars, &auts);
            for orbit in orbits {
                let rec = records
                    .iter()
                    .find(|r| {
                        StarTable::from_rows(g.order(), &r.star).expect("round trip")
                            == orbit.representative
                    })
                    .expect("representative is enumerated");
                let mut line = serde_json::to_value(rec)?;
                line.as_object_mut()
                    .expect("record is an object")
                    .insert("orbit_size".into(), json!(orbit.size));
                lines.push(serde_json::to_string(&line)?);
            }
        } else {
            for rec in &records {
                lines.push(serde_json::to_string(rec)?);
            }
        }
        lines.push(serde_json::to_string(&summary)?);
    }
    let body = lines.join("\n") + "\n";
    match &args.out {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{body}"),
    }
    Ok(if all_complete { 0 } else { 1 })
}
