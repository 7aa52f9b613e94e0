use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aap_core::discoverability::{TaskCatalogue, TaskType};
use aap_core::graph::Iri;
use aap_core::matcher::{compose, feasible, rank, FailureDimension, FeasibilityVerdict, MatchConfig};
use aap_core::profile::{build_profile, KgDescriptor};
use aap_core::registry::manifest::{load_manifest, populate_registry, read_catalogue, read_graph};
use aap_core::registry::report::{PlanJson, Report, VerdictJson, REPORT_SCHEMA};
use aap_core::registry::{emit_document, load_registry, rebuild_index, Registry};
use aap_core::vocab::{dcat, rdf, void, VOCABULARY_TTL};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;

const EXIT_G: u8 = 2;
const EXIT_R: u8 = 3;
const EXIT_E: u8 = 4;
const EXIT_USAGE: u8 = 64;
const EXIT_INPUT: u8 = 65;

/// Build, register and match agentic affordance profiles of knowledge graphs.
#[derive(Parser)]
#[command(name = "aap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Profile one KG into a document, or every KG of a manifest into a registry.
    Profile(ProfileArgs),
    /// Rank every registered KG against a task.
    Match(MatchArgs),
    /// Verdict, remedy and detail for one KG and one task.
    Diagnose(DiagnoseArgs),
    /// Check whether several KGs, plus registered mediators, jointly ground a task.
    Compose(ComposeArgs),
    /// Rescan a registry directory and rewrite its index.
    Index {
        #[arg(long, env = "AAP_REGISTRY")]
        registry: PathBuf,
    },
    /// Print the AAP vocabulary document.
    Vocab,
    /// Print the JSON Schema of reports.
    Schema,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long, conflicts_with = "manifest", requires_all = ["data", "metadata", "tasks", "out"])]
    schema: Option<PathBuf>,
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    metadata: Option<PathBuf>,
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long)]
    tasks: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// KG id; defaults to the dataset described in the metadata.
    #[arg(long)]
    kg_id: Option<String>,
    /// Batch manifest listing several KGs.
    #[arg(long, requires = "registry")]
    manifest: Option<PathBuf>,
    #[arg(long, env = "AAP_REGISTRY")]
    registry: Option<PathBuf>,
}

#[derive(Args)]
struct TaskArgs {
    #[arg(long, env = "AAP_REGISTRY")]
    registry: PathBuf,
    /// Task id, or its last segment.
    #[arg(long)]
    task: String,
    #[arg(long)]
    tasks: PathBuf,
    /// Conformance ratio below which a KG counts as an expressivity failure, as n/d.
    #[arg(long, value_parser = parse_ratio, default_value = "9/10")]
    conformance_floor: Ratio<u64>,
    /// Also write the report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct MatchArgs {
    #[command(flatten)]
    common: TaskArgs,
    /// Include derivations and profile warnings per verdict.
    #[arg(long)]
    explain: bool,
}

#[derive(Args)]
struct DiagnoseArgs {
    #[command(flatten)]
    common: TaskArgs,
    /// KG id, or its last segment.
    #[arg(long)]
    kg: String,
}

#[derive(Args)]
struct ComposeArgs {
    #[command(flatten)]
    common: TaskArgs,
    /// Comma-separated KG ids or last segments.
    #[arg(long, value_delimiter = ',', required = true)]
    kgs: Vec<String>,
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: u64 = n.trim().parse().map_err(|_| format!("`{s}` is not n/d"))?;
    let d: u64 = d.trim().parse().map_err(|_| format!("`{s}` is not n/d"))?;
    if d == 0 || n > d {
        return Err(format!("`{s}` is not a ratio in [0, 1]"));
    }
    Ok(Ratio::new(n, d))
}

/// A command line that parsed but cannot be acted on.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_INPUT)
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Profile(args) => profile(args),
        Command::Match(args) => match_cmd(args),
        Command::Diagnose(args) => diagnose(args),
        Command::Compose(args) => compose_cmd(args),
        Command::Index { registry } => {
            let r = rebuild_index(&registry)?;
            warn_all(&r.warnings);
            eprintln!("indexed {} profiles and {} mediators", r.profiles.len(), r.mediators.len());
            Ok(0)
        }
        Command::Vocab => {
            print!("{VOCABULARY_TTL}");
            Ok(0)
        }
        Command::Schema => {
            print!("{REPORT_SCHEMA}");
            Ok(0)
        }
    }
}

/// `SOURCE_DATE_EPOCH` when set, otherwise the current time.
fn timestamp() -> Result<String> {
    let at = match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(s) => {
            let secs: i64 = s.trim().parse().with_context(|| format!("SOURCE_DATE_EPOCH `{s}` is not an integer"))?;
            chrono::DateTime::from_timestamp(secs, 0).ok_or_else(|| anyhow!("SOURCE_DATE_EPOCH `{s}` is out of range"))?
        }
        Err(_) => chrono::Utc::now(),
    };
    Ok(at.to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn default_kg_id(metadata: &aap_core::graph::Graph) -> Result<Iri> {
    let datasets: std::collections::BTreeSet<&Iri> = metadata
        .with_predicate(rdf::TYPE)
        .filter(|t| t.object.as_iri().is_some_and(|o| o.as_str() == dcat::DATASET || o.as_str() == void::DATASET))
        .filter_map(|t| t.subject.as_iri())
        .collect();
    match datasets.len() {
        1 => Ok(datasets.into_iter().next().expect("one element").clone()),
        0 => Err(UsageError("metadata describes no dataset; pass --kg-id".into()).into()),
        _ => Err(UsageError("metadata describes several datasets; pass --kg-id".into()).into()),
    }
}

fn profile(args: ProfileArgs) -> Result<u8> {
    let at = timestamp()?;
    if let Some(manifest) = &args.manifest {
        let registry = args.registry.as_ref().expect("clap enforces --registry");
        let loaded = load_manifest(manifest)?;
        let r = populate_registry(registry, &loaded, &at)?;
        warn_all(&r.warnings);
        for p in &r.profiles {
            warn_all(&p.warnings);
        }
        eprintln!("profiled {} KGs into {}", r.profiles.len(), registry.display());
        return Ok(0);
    }
    let (Some(schema), Some(data), Some(metadata), Some(tasks), Some(out)) =
        (&args.schema, &args.data, &args.metadata, &args.tasks, &args.out)
    else {
        return Err(UsageError("profile needs --schema, --data, --metadata, --tasks and --out, or --manifest".into()).into());
    };
    let metadata = read_graph(metadata)?;
    let kg_id = match &args.kg_id {
        Some(id) => Iri::new(id).map_err(|e| UsageError(format!("--kg-id: {e}")))?,
        None => default_kg_id(&metadata)?,
    };
    let kg = KgDescriptor { kg_id, schema: read_graph(schema)?, data: read_graph(data)?, metadata };
    let reference = args.reference.as_deref().map(read_graph).transpose()?;
    let catalogue = read_catalogue(tasks)?;
    let p = build_profile(&kg, &catalogue, reference.as_ref(), &at);
    warn_all(&p.warnings);
    fs::write(out, emit_document(&p)).with_context(|| format!("writing {}", out.display()))?;
    Ok(0)
}

struct MatchContext {
    registry: Registry,
    task: TaskType,
    config: MatchConfig,
}

fn load_context(args: &TaskArgs) -> Result<MatchContext> {
    let catalogue: TaskCatalogue = read_catalogue(&args.tasks)?;
    let task = catalogue.find(&args.task).cloned().ok_or_else(|| anyhow!("no task `{}` in {}", args.task, args.tasks.display()))?;
    let registry = load_registry(&args.registry)?;
    warn_all(&registry.warnings);
    Ok(MatchContext { registry, task, config: MatchConfig { conformance_floor: args.conformance_floor } })
}

fn exit_code(v: &FeasibilityVerdict) -> u8 {
    match v.failure_dimension {
        None => 0,
        Some(FailureDimension::GFailure) => EXIT_G,
        Some(FailureDimension::RFailure) => EXIT_R,
        Some(FailureDimension::EFailure) => EXIT_E,
    }
}

fn emit_report(report: &Report, path: Option<&Path>) -> Result<()> {
    let json = report.to_json();
    if let Some(p) = path {
        fs::write(p, format!("{json}\n")).with_context(|| format!("writing {}", p.display()))?;
    }
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{json}")?;
    Ok(())
}

fn match_cmd(args: MatchArgs) -> Result<u8> {
    let ctx = load_context(&args.common)?;
    let mut report = Report::new(&ctx.task);
    for p in &ctx.registry.profiles {
        if feasible(p, &ctx.task, &ctx.config).is_err() {
            report.warnings.push(format!("<{}> cannot be assessed against <{}>", p.kg_id, ctx.task.id));
        }
    }
    let verdicts = rank(&ctx.registry.profiles, &ctx.task, &ctx.config);
    if verdicts.is_empty() {
        bail!("no profile in {} can be assessed against <{}>", args.common.registry.display(), ctx.task.id);
    }
    for v in &verdicts {
        let mut json = VerdictJson::from(v);
        if args.explain {
            let profile = ctx.registry.profiles.iter().find(|p| p.kg_id == v.kg_id).expect("verdict comes from a profile");
            json = json.explain(profile, &ctx.task);
        }
        report.verdicts.push(json);
    }
    warn_all(&report.warnings);
    emit_report(&report, args.common.report.as_deref())?;
    Ok(exit_code(&verdicts[0]))
}

fn find_profile<'r>(registry: &'r Registry, key: &str) -> Result<&'r aap_core::profile::AapProfile> {
    registry.find(key).ok_or_else(|| anyhow!("no unique KG `{key}` in the registry"))
}

fn diagnose(args: DiagnoseArgs) -> Result<u8> {
    let ctx = load_context(&args.common)?;
    let profile = find_profile(&ctx.registry, &args.kg)?;
    let v = feasible(profile, &ctx.task, &ctx.config)?;
    let mut report = Report::new(&ctx.task);
    report.verdicts.push(VerdictJson::from(&v).explain(profile, &ctx.task));
    emit_report(&report, args.common.report.as_deref())?;
    Ok(exit_code(&v))
}

fn compose_cmd(args: ComposeArgs) -> Result<u8> {
    let ctx = load_context(&args.common)?;
    let keys: Vec<&String> = args.kgs.iter().filter(|k| !k.trim().is_empty()).collect();
    if keys.is_empty() {
        return Err(UsageError("--kgs names no KG".into()).into());
    }
    let profiles = keys.iter().map(|k| find_profile(&ctx.registry, k).cloned()).collect::<Result<Vec<_>>>()?;
    let plan = compose(&profiles, &ctx.task, &ctx.registry.mediators);
    let mut report = Report::new(&ctx.task);
    for p in &profiles {
        report.verdicts.push(VerdictJson::from(&feasible(p, &ctx.task, &ctx.config)?));
    }
    warn_all(&plan.warnings);
    let closed = plan.residual_gap.is_empty();
    report.plan = Some(PlanJson::from(&plan));
    emit_report(&report, args.common.report.as_deref())?;
    Ok(if closed { 0 } else { EXIT_G })
}
