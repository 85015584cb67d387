//! Model-driven security assurance for IoT/IIoT systems.
//!
//! This crate ingests declarative system models — typed components and the
//! data flows between them, annotated with metadata parameters from a
//! curated catalog — and derives security analyses from them:
//!
//! - structural validation against the parameter catalog ([`validate_model`]);
//! - completeness and per-phase readiness scoring ([`completeness_report`]);
//! - rule-driven STRIDE threat enumeration under a network-controlling
//!   attacker ([`enumerate_threats`]);
//! - a crypto configuration audit against deny lists of deprecated protocols
//!   and broken primitives ([`analyze_crypto`]);
//! - compilation of phase-ordered penetration test plans whose tool inputs
//!   are bound from model metadata, respecting the assessor's knowledge
//!   level ([`compile_plan`]).
//!
//! All analyses are pure functions over the model; given the same model and
//! configuration they produce byte-identical documents.

pub mod catalog;
pub mod completeness;
pub mod crypto;
pub mod ingest;
pub mod kind;
pub mod model;
pub mod planner;
pub mod report;
#[cfg(any(test, feature = "testgen"))]
pub mod testgen;
pub mod threat;
pub mod validate;

pub use catalog::{
    parameter_catalog, CatalogError, Category, Observability, ParameterCatalog, ParameterDef,
    Priority, ValueShape,
};
pub use completeness::{
    completeness_report, phase_inputs, phase_readiness, CompletenessReport, ComponentCoverage,
    CoverageTarget, PhaseReadiness,
};
pub use crypto::{
    analyze_crypto, default_policy, matches_primitive, CryptoFinding, CryptoFindingClass,
    CryptoPolicy, PolicyError,
};
pub use ingest::{parse_model, serialize_model, ParseDiagnostic, ParseMode};
pub use kind::{AliasMap, CanonicalKind, ComponentKind};
pub use model::{
    Component, ConnectionType, DataFlow, KnowledgeLevel, ParamValue, Severity, SystemModel,
};
pub use planner::{
    compile_plan, parse_plan, redact_model, render_plan, PentestPhase, PlanError, PlanFormat,
    TaskStatus, TestPlan, TestTask, ToolClass,
};
pub use report::{
    full_report, machine_json, render_config, render_coverage, render_crypto, render_report,
    render_threats, render_validation, ConfigDoc, FullReport, ReportError, ValidationDoc,
};
pub use threat::{
    default_ruleset, default_ruleset_for, enumerate_threats, stride_categories, Guard, RuleError,
    RuleSet, RuleTarget, StrideCategory, ThreatFinding, ThreatRule,
};
pub use validate::{
    is_structurally_valid, validate_model, IssueKind, IssueSeverity, ValidationIssue,
};
