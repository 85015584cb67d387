//! Metadata completeness scoring and per-phase readiness.
//!
//! Coverage measures how much of the applicable parameter set a component
//! actually declares, weighted by parameter priority. Flows are scored as
//! network-protocol pseudo-components so channel metadata counts too.
//! Readiness measures, per component and automatable pentest phase, how many
//! of the phase's required tool inputs are declared.

use crate::catalog::{ParameterCatalog, ParameterDef};
use crate::kind::CanonicalKind;
use crate::model::SystemModel;
use crate::planner::{PentestPhase, PlanError};
use serde::{Deserialize, Serialize};

/// Whether a coverage entry describes a component or a flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageTarget {
    Component,
    Flow,
}

/// Coverage of one component (or flow) against its applicable parameters.
///
/// `present` and `missing` partition `applicable`; all three lists follow
/// catalog order. Extension parameters do not count toward coverage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentCoverage {
    /// Component or flow id.
    pub id: String,
    pub target: CoverageTarget,
    pub applicable: Vec<String>,
    pub present: Vec<String>,
    pub missing: Vec<String>,
    /// Priority-weighted fraction of applicable parameters present, in [0,1].
    pub score: f64,
}

/// How ready one component is for one pentest phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReadiness {
    pub component_id: String,
    pub phase: PentestPhase,
    /// Parameter ids the phase's tooling needs as inputs.
    pub required: Vec<String>,
    /// The subset of `required` actually declared on the component.
    pub satisfied: Vec<String>,
    /// |satisfied| / |required|, in [0,1].
    pub readiness: f64,
}

/// Completeness assessment of a whole model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub model_name: String,
    /// One entry per component, then one per flow, each sorted by id.
    pub coverage: Vec<ComponentCoverage>,
    /// One entry per (automatable phase, component), phase-major.
    pub readiness: Vec<PhaseReadiness>,
    /// Weight-weighted mean of the coverage scores, in [0,1].
    pub overall_score: f64,
}

/// The catalog parameters feeding each automatable pentest phase.
///
/// Non-automatable phases have no input mapping and are an error.
pub fn phase_inputs(phase: PentestPhase) -> Result<&'static [&'static str], PlanError> {
    match phase {
        PentestPhase::Reconnaissance => Ok(&[
            "ip_address",
            "host_names",
            "network_address",
            "hardware_interface",
        ]),
        PentestPhase::Scanning => Ok(&[
            "web_urls",
            "ip_address",
            "hardware_interface",
            "open_ports",
            "operating_system",
        ]),
        PentestPhase::GainingAccess => {
            Ok(&["operating_system", "software_versions", "protocol_version"])
        }
        other => Err(PlanError::UnsupportedPhase(other)),
    }
}

/// Scores one target against its applicable (non-extension) parameters and
/// returns the entry plus its weight numerator/denominator for the overall
/// aggregate.
fn coverage_entry<'a>(
    id: &str,
    target: CoverageTarget,
    defs: impl Iterator<Item = &'a ParameterDef>,
    has: impl Fn(&str) -> bool,
) -> (ComponentCoverage, u64, u64) {
    let mut applicable = Vec::new();
    let mut present = Vec::new();
    let mut missing = Vec::new();
    let mut num = 0u64;
    let mut den = 0u64;
    for def in defs {
        let weight = u64::from(def.priority.weight());
        den += weight;
        applicable.push(def.id.clone());
        if has(&def.id) {
            num += weight;
            present.push(def.id.clone());
        } else {
            missing.push(def.id.clone());
        }
    }
    let score = if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    };
    (
        ComponentCoverage {
            id: id.to_string(),
            target,
            applicable,
            present,
            missing,
            score,
        },
        num,
        den,
    )
}

/// Scores every component and flow and aggregates the overall score.
pub fn completeness_report(model: &SystemModel, catalog: &ParameterCatalog) -> CompletenessReport {
    let mut coverage = Vec::new();
    let mut total_num = 0u64;
    let mut total_den = 0u64;

    for component in model.sorted_components() {
        let defs = catalog
            .applicable_to(component.kind)
            .filter(|d| !d.extension);
        let (entry, num, den) =
            coverage_entry(&component.id, CoverageTarget::Component, defs, |p| {
                component.params.contains_key(p)
            });
        total_num += num;
        total_den += den;
        coverage.push(entry);
    }

    // Flows carry the channel-level metadata, so they are scored against the
    // network-protocol column of the matrix.
    let flow_defs = || {
        catalog
            .parameters
            .iter()
            .filter(|d| !d.extension && d.applicability.contains(&CanonicalKind::NetworkProtocol))
    };
    for flow in model.sorted_flows() {
        let (entry, num, den) = coverage_entry(&flow.id, CoverageTarget::Flow, flow_defs(), |p| {
            flow.param(p).is_some()
        });
        total_num += num;
        total_den += den;
        coverage.push(entry);
    }

    let readiness = PentestPhase::AUTOMATED
        .into_iter()
        .flat_map(|phase| {
            phase_readiness(model, phase).expect("automated phases have input mappings")
        })
        .collect();

    CompletenessReport {
        model_name: model.name.clone(),
        coverage,
        readiness,
        overall_score: if total_den == 0 {
            1.0
        } else {
            total_num as f64 / total_den as f64
        },
    }
}

/// Readiness of every component for one phase, sorted by component id.
pub fn phase_readiness(
    model: &SystemModel,
    phase: PentestPhase,
) -> Result<Vec<PhaseReadiness>, PlanError> {
    let inputs = phase_inputs(phase)?;
    Ok(model
        .sorted_components()
        .into_iter()
        .map(|component| {
            let satisfied: Vec<String> = inputs
                .iter()
                .filter(|p| component.params.contains_key(**p))
                .map(|p| p.to_string())
                .collect();
            PhaseReadiness {
                component_id: component.id.clone(),
                phase,
                required: inputs.iter().map(|p| p.to_string()).collect(),
                satisfied: satisfied.clone(),
                readiness: satisfied.len() as f64 / inputs.len() as f64,
            }
        })
        .collect())
}
