//! Command-line driver for model-driven IoT/IIoT security assurance.
//!
//! Loads a declarative system model, runs the selected analysis, and emits
//! the result in machine (canonical JSON) or human form. Exit codes are
//! automation-friendly: 0 means no finding reached the `--fail-on` threshold,
//! 1 means at least one did, and 2 means the model or the invocation itself
//! was invalid.

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use iotsure_core::{
    analyze_crypto, compile_plan, completeness_report, default_policy, default_ruleset_for,
    enumerate_threats, full_report, machine_json, parameter_catalog, parse_model, render_config,
    render_coverage, render_crypto, render_plan, render_report, render_threats, render_validation,
    validate_model, ConfigDoc, CryptoPolicy, KnowledgeLevel, ParameterCatalog, ParseDiagnostic,
    ParseMode, PentestPhase, PlanFormat, RuleSet, Severity, ValidationDoc, ValidationIssue,
};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "iotsure",
    version,
    about = "Security assurance for declarative IoT/IIoT system models"
)]
struct Cli {
    /// Path to the system model document (JSON)
    #[arg(long, global = true)]
    model: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,

    /// Write the output to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerate unknown parameters in the model (dropped with a warning)
    #[arg(long, global = true)]
    lax: bool,

    /// Override the model's declared knowledge level
    #[arg(long, global = true, value_enum)]
    knowledge: Option<KnowledgeArg>,

    /// Custom threat ruleset document (JSON)
    #[arg(long, global = true)]
    ruleset: Option<PathBuf>,

    /// Custom crypto policy document (JSON)
    #[arg(long, global = true)]
    policy: Option<PathBuf>,

    /// Custom parameter catalog document (JSON)
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,

    /// Exit with status 1 if any finding is at or above this severity
    #[arg(long, global = true, value_enum)]
    fail_on: Option<SeverityArg>,

    /// Pentest phases for plan and report (comma-separated)
    #[arg(long, global = true, value_enum, value_delimiter = ',')]
    phases: Option<Vec<PhaseArg>>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Check the model against the parameter catalog and structural rules
    Validate,
    /// Score metadata completeness and per-phase readiness
    Coverage,
    /// Enumerate STRIDE threats over components and flows
    Threats,
    /// Audit crypto and protocol declarations against the policy
    Analyze,
    /// Compile a phase-ordered test plan from the model
    Plan,
    /// Run every analysis and emit one consolidated report
    Report,
    /// Export the built-in catalog, ruleset, and policy
    Catalog,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Machine,
    Human,
}

#[derive(Clone, Copy, ValueEnum)]
enum KnowledgeArg {
    Black,
    Grey,
    White,
}

impl From<KnowledgeArg> for KnowledgeLevel {
    fn from(k: KnowledgeArg) -> Self {
        match k {
            KnowledgeArg::Black => KnowledgeLevel::BlackBox,
            KnowledgeArg::Grey => KnowledgeLevel::GreyBox,
            KnowledgeArg::White => KnowledgeLevel::WhiteBox,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeverityArg {
    Low,
    Medium,
    High,
}

impl From<SeverityArg> for Severity {
    fn from(s: SeverityArg) -> Self {
        match s {
            SeverityArg::Low => Severity::Low,
            SeverityArg::Medium => Severity::Medium,
            SeverityArg::High => Severity::High,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseArg {
    Recon,
    Scan,
    Access,
    Maintain,
    Cover,
}

impl From<PhaseArg> for PentestPhase {
    fn from(p: PhaseArg) -> Self {
        match p {
            PhaseArg::Recon => PentestPhase::Reconnaissance,
            PhaseArg::Scan => PentestPhase::Scanning,
            PhaseArg::Access => PentestPhase::GainingAccess,
            PhaseArg::Maintain => PentestPhase::MaintainingAccess,
            PhaseArg::Cover => PentestPhase::CoveringTracks,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))
}

/// Writes the chosen rendering to `--out` or standard output.
fn emit(cli: &Cli, machine: String, human: String) -> Result<()> {
    let text = match cli.format {
        FormatArg::Machine => machine,
        FormatArg::Human => human,
    };
    match &cli.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write `{}`", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Exit status under the `--fail-on` threshold: 1 iff any severity reaches it.
fn gate(
    threshold: Option<SeverityArg>,
    severities: impl IntoIterator<Item = Severity>,
) -> ExitCode {
    match threshold {
        None => ExitCode::SUCCESS,
        Some(t) => {
            let t = Severity::from(t);
            if severities.into_iter().any(|s| s >= t) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

/// Splits ingest-level diagnostics from the ones that merely echo structural
/// validation issues, so the validation document lists each problem once.
fn ingest_only(diags: Vec<ParseDiagnostic>, issues: &[ValidationIssue]) -> Vec<ParseDiagnostic> {
    diags
        .into_iter()
        .filter(|d| {
            !issues
                .iter()
                .any(|i| i.location == d.location && i.message == d.message)
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let catalog = match &cli.catalog {
        Some(path) => ParameterCatalog::from_json(&read(path)?)?,
        None => parameter_catalog(),
    };
    let policy = match &cli.policy {
        Some(path) => CryptoPolicy::from_json(&read(path)?)?,
        None => default_policy(),
    };
    let ruleset = match &cli.ruleset {
        Some(path) => RuleSet::from_json(&read(path)?)?,
        None => default_ruleset_for(&policy),
    };

    if cli.command == Command::Catalog {
        let config = ConfigDoc {
            catalog,
            ruleset,
            policy,
        };
        emit(&cli, machine_json(&config), render_config(&config))?;
        return Ok(ExitCode::SUCCESS);
    }

    let model_path = cli
        .model
        .as_ref()
        .context("--model <path> is required for this command")?;
    let text = read(model_path)?;
    let mode = if cli.lax {
        ParseMode::Lax
    } else {
        ParseMode::Strict
    };

    let (mut model, diags) = match parse_model(&text, &catalog, mode) {
        Ok(parsed) => parsed,
        Err(diags) => {
            for d in &diags {
                eprintln!("{d}");
            }
            if cli.command == Command::Validate {
                let doc = ValidationDoc::new(diags, Vec::new());
                emit(&cli, machine_json(&doc), render_validation(&doc))?;
            }
            return Ok(ExitCode::from(2));
        }
    };
    for d in &diags {
        eprintln!("{d}");
    }

    if let Some(level) = cli.knowledge {
        model.knowledge_level = level.into();
    }
    let phases: Vec<PentestPhase> = match &cli.phases {
        Some(list) => list.iter().map(|p| PentestPhase::from(*p)).collect(),
        None => PentestPhase::AUTOMATED.to_vec(),
    };

    match cli.command {
        Command::Validate => {
            let issues = validate_model(&model, &catalog);
            let doc = ValidationDoc::new(ingest_only(diags, &issues), issues);
            emit(&cli, machine_json(&doc), render_validation(&doc))?;
            Ok(if doc.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Coverage => {
            let report = completeness_report(&model, &catalog);
            emit(&cli, machine_json(&report), render_coverage(&report))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Threats => {
            let findings = enumerate_threats(&model, &ruleset, &catalog)?;
            emit(&cli, machine_json(&findings), render_threats(&findings))?;
            Ok(gate(cli.fail_on, findings.iter().map(|f| f.severity)))
        }
        Command::Analyze => {
            let findings = analyze_crypto(&model, &policy);
            emit(&cli, machine_json(&findings), render_crypto(&findings))?;
            Ok(gate(cli.fail_on, findings.iter().map(|f| f.severity)))
        }
        Command::Plan => {
            let plan = compile_plan(&model, &phases, &catalog)?;
            emit(
                &cli,
                render_plan(&plan, PlanFormat::Machine),
                render_plan(&plan, PlanFormat::Human),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Report => {
            let issues = validate_model(&model, &catalog);
            let report = full_report(
                &model,
                ingest_only(diags, &issues),
                issues,
                &catalog,
                &ruleset,
                &policy,
                &phases,
            )?;
            emit(&cli, machine_json(&report), render_report(&report))?;
            let severities = report
                .threats
                .iter()
                .map(|t| t.severity)
                .chain(report.crypto.iter().map(|c| c.severity));
            Ok(gate(cli.fail_on, severities))
        }
        Command::Catalog => unreachable!("handled before model loading"),
    }
}
