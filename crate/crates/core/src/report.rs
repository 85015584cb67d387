//! Assembled reports and human-readable rendering.
//!
//! Every analysis has a machine form (canonical JSON) and a human form (plain
//! text). The full report is the strict union of the individual analyses: each
//! of its sections serializes to exactly the document the corresponding
//! standalone analysis produces.

use crate::catalog::ParameterCatalog;
use crate::completeness::{completeness_report, CompletenessReport};
use crate::crypto::{analyze_crypto, CryptoFinding, CryptoPolicy};
use crate::ingest::ParseDiagnostic;
use crate::model::SystemModel;
use crate::planner::{compile_plan, render_plan, PentestPhase, PlanError, PlanFormat, TestPlan};
use crate::threat::{enumerate_threats, RuleError, RuleSet, ThreatFinding};
use crate::validate::{is_structurally_valid, IssueSeverity, ValidationIssue};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

/// Validation outcome: parse diagnostics plus structural issues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationDoc {
    /// True iff neither list contains an error.
    pub valid: bool,
    /// Diagnostics from document ingestion.
    pub parse: Vec<ParseDiagnostic>,
    /// Issues from structural validation.
    pub issues: Vec<ValidationIssue>,
}

impl ValidationDoc {
    pub fn new(parse: Vec<ParseDiagnostic>, issues: Vec<ValidationIssue>) -> ValidationDoc {
        let valid = parse.iter().all(|d| d.severity != IssueSeverity::Error)
            && is_structurally_valid(&issues);
        ValidationDoc {
            valid,
            parse,
            issues,
        }
    }
}

/// The built-in analysis configuration as one reviewable document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub catalog: ParameterCatalog,
    pub ruleset: RuleSet,
    pub policy: CryptoPolicy,
}

/// Every analysis over one model, assembled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullReport {
    /// Model name; may be empty.
    pub model: String,
    pub validation: ValidationDoc,
    pub coverage: CompletenessReport,
    pub threats: Vec<ThreatFinding>,
    pub crypto: Vec<CryptoFinding>,
    pub plan: TestPlan,
}

/// Errors from report assembly.
#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Plan(#[from] PlanError),
}

/// Runs every analysis and assembles the full report.
///
/// `parse` carries the diagnostics from ingesting the model document, and
/// `issues` the structural validation result; both are embedded verbatim.
pub fn full_report(
    model: &SystemModel,
    parse: Vec<ParseDiagnostic>,
    issues: Vec<ValidationIssue>,
    catalog: &ParameterCatalog,
    rules: &RuleSet,
    policy: &CryptoPolicy,
    phases: &[PentestPhase],
) -> Result<FullReport, ReportError> {
    Ok(FullReport {
        model: model.name.clone(),
        validation: ValidationDoc::new(parse, issues),
        coverage: completeness_report(model, catalog),
        threats: enumerate_threats(model, rules, catalog)?,
        crypto: analyze_crypto(model, policy),
        plan: compile_plan(model, phases, catalog)?,
    })
}

/// Serializes any document to canonical machine JSON (pretty, trailing newline).
pub fn machine_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("document serializes");
    text.push('\n');
    text
}

fn percent(score: f64) -> String {
    format!("{:.1}%", score * 100.0)
}

/// Renders a validation outcome as plain text.
pub fn render_validation(doc: &ValidationDoc) -> String {
    let mut out = String::new();
    let verdict = if doc.valid { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "Validation: {verdict}");
    for d in &doc.parse {
        let _ = writeln!(out, "  {d}");
    }
    for issue in &doc.issues {
        let _ = writeln!(out, "  {issue}");
    }
    if doc.parse.is_empty() && doc.issues.is_empty() {
        out.push_str("  (no diagnostics)\n");
    }
    out
}

/// Renders a completeness report as plain text.
pub fn render_coverage(report: &CompletenessReport) -> String {
    let mut out = String::new();
    let name = if report.model_name.is_empty() {
        "(unnamed)"
    } else {
        &report.model_name
    };
    let _ = writeln!(out, "Completeness for {name}");
    out.push_str("Coverage:\n");
    if report.coverage.is_empty() {
        out.push_str("  (no targets)\n");
    }
    for entry in &report.coverage {
        let kind = match entry.target {
            crate::completeness::CoverageTarget::Component => "component",
            crate::completeness::CoverageTarget::Flow => "flow",
        };
        let _ = write!(
            out,
            "  {} [{kind}] {} ({}/{} parameters declared)",
            entry.id,
            percent(entry.score),
            entry.present.len(),
            entry.applicable.len(),
        );
        if entry.missing.is_empty() {
            out.push('\n');
        } else {
            let _ = writeln!(out, " — missing: {}", entry.missing.join(", "));
        }
    }
    out.push_str("Phase readiness:\n");
    if report.readiness.is_empty() {
        out.push_str("  (no components)\n");
    }
    for entry in &report.readiness {
        let _ = writeln!(
            out,
            "  {} {} {} ({}/{} inputs)",
            entry.component_id,
            entry.phase,
            percent(entry.readiness),
            entry.satisfied.len(),
            entry.required.len(),
        );
    }
    let _ = writeln!(out, "Overall: {}", percent(report.overall_score));
    out
}

/// Renders threat findings as plain text.
pub fn render_threats(findings: &[ThreatFinding]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Threats: {} finding(s)", findings.len());
    for t in findings {
        let _ = writeln!(
            out,
            "  [{}] {} — {} — {} (rule {})",
            t.severity, t.target, t.category, t.rationale, t.rule_id
        );
    }
    out
}

/// Renders crypto findings as plain text.
pub fn render_crypto(findings: &[CryptoFinding]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Crypto audit: {} finding(s)", findings.len());
    for f in findings {
        let _ = writeln!(
            out,
            "  [{}] flow {} — {}: `{}` violates {}",
            f.severity, f.flow_id, f.class, f.matched, f.policy_entry
        );
    }
    out
}

/// Renders the built-in configuration as plain text.
pub fn render_config(config: &ConfigDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Parameter catalog {} ({} parameters)",
        config.catalog.version,
        config.catalog.parameters.len()
    );
    for p in &config.catalog.parameters {
        let kinds: Vec<&str> = p.applicability.iter().map(|k| k.as_str()).collect();
        let _ = writeln!(
            out,
            "  {} [{}] {} — applies to: {}",
            p.id,
            p.shape,
            if p.extension { "(extension)" } else { "(core)" },
            kinds.join(", ")
        );
    }
    let _ = writeln!(
        out,
        "Threat ruleset {} ({} rules)",
        config.ruleset.version,
        config.ruleset.rules.len()
    );
    for r in &config.ruleset.rules {
        let categories: Vec<&str> = r.categories.iter().map(|c| c.name()).collect();
        let _ = writeln!(
            out,
            "  {} [{}] {} — {}",
            r.id,
            r.severity,
            categories.join(", "),
            r.rationale
        );
    }
    let _ = writeln!(out, "Crypto policy {}", config.policy.version);
    let _ = writeln!(
        out,
        "  denied protocols: {}",
        config.policy.deny_protocols.join(", ")
    );
    let _ = writeln!(
        out,
        "  denied primitives: {}",
        config.policy.deny_primitives.join(", ")
    );
    let _ = writeln!(
        out,
        "  minimum key length: {} bits",
        config.policy.min_key_length_bits
    );
    let _ = writeln!(
        out,
        "  end-of-life software: {}",
        config.policy.software_deny.join(", ")
    );
    out
}

/// Renders the full report as plain text, one section per analysis.
pub fn render_report(report: &FullReport) -> String {
    let name = if report.model.is_empty() {
        "(unnamed)"
    } else {
        &report.model
    };
    let mut out = String::new();
    let _ = writeln!(out, "Report for {name}");
    out.push_str("\n=== Validation ===\n");
    out.push_str(&render_validation(&report.validation));
    out.push_str("\n=== Completeness ===\n");
    out.push_str(&render_coverage(&report.coverage));
    out.push_str("\n=== Threats ===\n");
    out.push_str(&render_threats(&report.threats));
    out.push_str("\n=== Crypto audit ===\n");
    out.push_str(&render_crypto(&report.crypto));
    out.push_str("\n=== Test plan ===\n");
    out.push_str(&render_plan(&report.plan, PlanFormat::Human));
    out
}
