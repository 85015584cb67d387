//! Structural validation of system models against the parameter catalog.
//!
//! Validation never fails: it returns a list of issues, each an error
//! (structural defect) or a warning (suspicious but usable metadata). A model
//! with no error-severity issues satisfies all structural invariants.

use crate::catalog::{ParameterCatalog, ValueShape};
use crate::model::{ParamValue, SystemModel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Weight of a validation or parse diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueSeverity {
    Warning,
    Error,
}

impl fmt::Display for IssueSeverity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IssueSeverity::Warning => "warning",
            IssueSeverity::Error => "error",
        })
    }
}

/// What went wrong, as a stable machine-readable tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueKind {
    DuplicateComponentId,
    DuplicateFlowId,
    DanglingFlowEndpoint,
    SelfLoopFlow,
    UnknownParameter,
    MalformedParameterValue,
    NonApplicableParameter,
}

/// One validation finding on a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationIssue {
    pub severity: IssueSeverity,
    pub kind: IssueKind,
    /// Where in the model the issue sits, in terms of ids (not list indexes),
    /// so reordered models produce identical locations.
    pub location: String,
    pub message: String,
}

impl ValidationIssue {
    fn error(kind: IssueKind, location: String, message: String) -> Self {
        ValidationIssue {
            severity: IssueSeverity::Error,
            kind,
            location,
            message,
        }
    }

    fn warning(kind: IssueKind, location: String, message: String) -> Self {
        ValidationIssue {
            severity: IssueSeverity::Warning,
            kind,
            location,
            message,
        }
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.severity, self.location, self.message)
    }
}

fn matches_shape(value: &ParamValue, shape: &ValueShape) -> bool {
    matches!(
        (value, shape),
        (ParamValue::Bool(_), ValueShape::Boolean)
            | (ParamValue::Str(_), ValueShape::String)
            | (ParamValue::StrList(_), ValueShape::StringList)
            | (ParamValue::Number(_), ValueShape::Number { .. })
    )
}

/// Checks a model's structural invariants against the catalog.
///
/// Errors cover duplicate ids, dangling or self-referential flows, unknown
/// parameters, and parameter values of the wrong shape. Warnings cover
/// parameters set on a component kind they do not apply to. The result is
/// sorted by (location, message) and is therefore independent of component
/// and flow list order.
pub fn validate_model(model: &SystemModel, catalog: &ParameterCatalog) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();

    let mut component_ids = BTreeSet::new();
    for component in &model.components {
        if !component_ids.insert(component.id.as_str()) {
            issues.push(ValidationIssue::error(
                IssueKind::DuplicateComponentId,
                format!("component {}", component.id),
                format!("duplicate component id `{}`", component.id),
            ));
        }
    }

    let mut flow_ids = BTreeSet::new();
    for flow in &model.flows {
        if !flow_ids.insert(flow.id.as_str()) {
            issues.push(ValidationIssue::error(
                IssueKind::DuplicateFlowId,
                format!("flow {}", flow.id),
                format!("duplicate flow id `{}`", flow.id),
            ));
        }
        for endpoint in [&flow.source, &flow.destination] {
            if !component_ids.contains(endpoint.as_str()) {
                issues.push(ValidationIssue::error(
                    IssueKind::DanglingFlowEndpoint,
                    format!("flow {}", flow.id),
                    format!(
                        "flow `{}` references unknown component `{}`",
                        flow.id, endpoint
                    ),
                ));
            }
        }
        if flow.source == flow.destination {
            issues.push(ValidationIssue::error(
                IssueKind::SelfLoopFlow,
                format!("flow {}", flow.id),
                format!(
                    "flow `{}` connects component `{}` to itself",
                    flow.id, flow.source
                ),
            ));
        }
    }

    for component in &model.components {
        for (param_id, value) in &component.params {
            let location = format!("component {} parameter {}", component.id, param_id);
            let Some(def) = catalog.get(param_id) else {
                issues.push(ValidationIssue::error(
                    IssueKind::UnknownParameter,
                    location,
                    format!("parameter `{param_id}` is not in the catalog"),
                ));
                continue;
            };
            if !matches_shape(value, &def.shape) {
                issues.push(ValidationIssue::error(
                    IssueKind::MalformedParameterValue,
                    location.clone(),
                    format!(
                        "parameter `{}` expects {}, got {}",
                        param_id,
                        def.shape,
                        value.kind_name()
                    ),
                ));
            } else if let ParamValue::Number(n) = value {
                if !n.is_finite() {
                    issues.push(ValidationIssue::error(
                        IssueKind::MalformedParameterValue,
                        location.clone(),
                        format!("parameter `{param_id}` must be a finite number"),
                    ));
                }
            }
            if !def
                .applicability
                .contains(&component.kind.resolve(&catalog.aliases))
            {
                issues.push(ValidationIssue::warning(
                    IssueKind::NonApplicableParameter,
                    location,
                    format!(
                        "parameter `{}` does not apply to kind {}",
                        param_id, component.kind
                    ),
                ));
            }
        }
    }

    issues.sort_by(|a, b| (&a.location, &a.message).cmp(&(&b.location, &b.message)));
    issues
}

/// True iff the issue list contains no error-severity entries.
pub fn is_structurally_valid(issues: &[ValidationIssue]) -> bool {
    issues.iter().all(|i| i.severity != IssueSeverity::Error)
}
