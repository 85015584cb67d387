//! Rule-driven STRIDE threat enumeration over system models.
//!
//! The attacker is assumed to control the network: any message can be read,
//! modified, replayed, or injected unless a declared countermeasure rules it
//! out. Rules therefore fire *conservatively*: a missing security declaration
//! counts as absent protection, and the resulting finding is marked as caused
//! by missing metadata so it can be distinguished from a confirmed gap.

use crate::catalog::ParameterCatalog;
use crate::crypto::{matches_primitive, CryptoPolicy};
use crate::kind::CanonicalKind;
use crate::model::{Component, DataFlow, ParamValue, Severity, SystemModel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// The six STRIDE threat categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrideCategory {
    Spoofing,
    Tampering,
    Repudiation,
    InformationDisclosure,
    DenialOfService,
    ElevationOfPrivilege,
}

impl StrideCategory {
    /// All six categories, in conventional order.
    pub const ALL: [StrideCategory; 6] = [
        StrideCategory::Spoofing,
        StrideCategory::Tampering,
        StrideCategory::Repudiation,
        StrideCategory::InformationDisclosure,
        StrideCategory::DenialOfService,
        StrideCategory::ElevationOfPrivilege,
    ];

    /// Stable machine name, used in finding ids and documents.
    pub fn as_str(&self) -> &'static str {
        match self {
            StrideCategory::Spoofing => "spoofing",
            StrideCategory::Tampering => "tampering",
            StrideCategory::Repudiation => "repudiation",
            StrideCategory::InformationDisclosure => "information_disclosure",
            StrideCategory::DenialOfService => "denial_of_service",
            StrideCategory::ElevationOfPrivilege => "elevation_of_privilege",
        }
    }

    /// Human-readable category name.
    pub fn name(&self) -> &'static str {
        match self {
            StrideCategory::Spoofing => "Spoofing",
            StrideCategory::Tampering => "Tampering",
            StrideCategory::Repudiation => "Repudiation",
            StrideCategory::InformationDisclosure => "Information disclosure",
            StrideCategory::DenialOfService => "Denial of service",
            StrideCategory::ElevationOfPrivilege => "Elevation of privilege",
        }
    }

    /// What the category covers.
    pub fn definition(&self) -> &'static str {
        match self {
            StrideCategory::Spoofing => "Pretending to be a different user, component, or system.",
            StrideCategory::Tampering => {
                "Unauthorised modification of data or code, in transit or at rest."
            }
            StrideCategory::Repudiation => {
                "Denying having performed an action in a way others cannot disprove."
            }
            StrideCategory::InformationDisclosure => {
                "Information is exposed to unauthorised users."
            }
            StrideCategory::DenialOfService => {
                "Attacks that degrade or deny service availability to legitimate users."
            }
            StrideCategory::ElevationOfPrivilege => {
                "Gaining capabilities or access rights beyond those granted."
            }
        }
    }
}

impl fmt::Display for StrideCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Returns all six STRIDE categories, in conventional order.
pub fn stride_categories() -> [StrideCategory; 6] {
    StrideCategory::ALL
}

/// What a rule is matched against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RuleTarget {
    /// Components whose canonical kind is in the set.
    Components { kinds: BTreeSet<CanonicalKind> },
    /// Every data flow.
    Flows,
    /// Components whose canonical kind is in the set, plus every data flow.
    ComponentsAndFlows { kinds: BTreeSet<CanonicalKind> },
}

impl RuleTarget {
    fn matches_component(&self, canonical: CanonicalKind) -> bool {
        match self {
            RuleTarget::Components { kinds } | RuleTarget::ComponentsAndFlows { kinds } => {
                kinds.contains(&canonical)
            }
            RuleTarget::Flows => false,
        }
    }

    fn matches_flows(&self) -> bool {
        matches!(
            self,
            RuleTarget::Flows | RuleTarget::ComponentsAndFlows { .. }
        )
    }
}

/// Condition deciding whether a rule fires on a matched target.
///
/// Evaluation is three-valued in spirit: a guard reports whether it fired and
/// whether it fired *because metadata was absent* rather than because a value
/// confirmed the weakness. Findings carry that distinction in their rationale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Guard {
    /// Fires unconditionally.
    Always,
    /// Fires iff the parameter is set to boolean `true`.
    IsTrue { param: String },
    /// Fires iff the parameter is set to boolean `false` (never on absence).
    IsFalse { param: String },
    /// Fires unless the parameter is set to boolean `true`; absence fires too,
    /// marked as missing metadata.
    NotTrue { param: String },
    /// Fires iff any listed parameter's string value matches a deny entry.
    DenyListed {
        params: Vec<String>,
        deny: Vec<String>,
    },
    /// Fires on a component iff, for some listed parameter, its incident
    /// flows both confirm (`true`) and fail to confirm the protection.
    IncidentFlowsDisagree { params: Vec<String> },
    /// Fires iff every sub-guard fires.
    All { guards: Vec<Guard> },
    /// Fires iff at least one sub-guard fires.
    Any { guards: Vec<Guard> },
}

/// Result of evaluating a guard: did it fire, and only thanks to absent data?
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Outcome {
    fired: bool,
    missing: bool,
}

/// A rule subject: one component or one flow of the model under analysis.
enum Subject<'a> {
    Component(&'a Component),
    Flow(&'a DataFlow),
}

impl Subject<'_> {
    fn id(&self) -> &str {
        match self {
            Subject::Component(c) => &c.id,
            Subject::Flow(f) => &f.id,
        }
    }

    fn value(&self, param: &str) -> Option<ParamValue> {
        match self {
            Subject::Component(c) => c.params.get(param).cloned(),
            Subject::Flow(f) => f.param(param),
        }
    }
}

impl Guard {
    fn evaluate(&self, subject: &Subject<'_>, model: &SystemModel) -> Outcome {
        match self {
            Guard::Always => Outcome {
                fired: true,
                missing: false,
            },
            Guard::IsTrue { param } => Outcome {
                fired: matches!(subject.value(param), Some(ParamValue::Bool(true))),
                missing: false,
            },
            Guard::IsFalse { param } => Outcome {
                fired: matches!(subject.value(param), Some(ParamValue::Bool(false))),
                missing: false,
            },
            Guard::NotTrue { param } => match subject.value(param) {
                None => Outcome {
                    fired: true,
                    missing: true,
                },
                Some(ParamValue::Bool(true)) => Outcome::default(),
                Some(_) => Outcome {
                    fired: true,
                    missing: false,
                },
            },
            Guard::DenyListed { params, deny } => {
                let hit = |s: &str| deny.iter().any(|entry| matches_primitive(s, entry));
                let fired = params.iter().any(|p| match subject.value(p) {
                    Some(ParamValue::Str(s)) => hit(&s),
                    Some(ParamValue::StrList(items)) => items.iter().any(|s| hit(s)),
                    _ => false,
                });
                Outcome {
                    fired,
                    missing: false,
                }
            }
            Guard::IncidentFlowsDisagree { params } => {
                let Subject::Component(component) = subject else {
                    return Outcome::default();
                };
                let flows: Vec<&DataFlow> = model.incident_flows(&component.id).collect();
                let mut outcome = Outcome::default();
                for param in params {
                    let mut confirmed = false;
                    let mut unconfirmed = false;
                    let mut unset = false;
                    for flow in &flows {
                        match flow.param(param) {
                            Some(ParamValue::Bool(true)) => confirmed = true,
                            Some(_) => unconfirmed = true,
                            None => {
                                unconfirmed = true;
                                unset = true;
                            }
                        }
                    }
                    if confirmed && unconfirmed {
                        outcome.fired = true;
                        outcome.missing |= unset;
                    }
                }
                outcome
            }
            Guard::All { guards } => {
                let outcomes: Vec<Outcome> =
                    guards.iter().map(|g| g.evaluate(subject, model)).collect();
                if outcomes.iter().all(|o| o.fired) {
                    Outcome {
                        fired: true,
                        missing: outcomes.iter().any(|o| o.missing),
                    }
                } else {
                    Outcome::default()
                }
            }
            Guard::Any { guards } => {
                let firing: Vec<Outcome> = guards
                    .iter()
                    .map(|g| g.evaluate(subject, model))
                    .filter(|o| o.fired)
                    .collect();
                if firing.is_empty() {
                    Outcome::default()
                } else {
                    Outcome {
                        fired: true,
                        missing: firing.iter().all(|o| o.missing),
                    }
                }
            }
        }
    }

    /// Every parameter id the guard reads, recursively.
    fn referenced_params(&self) -> Vec<&str> {
        match self {
            Guard::Always => Vec::new(),
            Guard::IsTrue { param } | Guard::IsFalse { param } | Guard::NotTrue { param } => {
                vec![param.as_str()]
            }
            Guard::DenyListed { params, .. } | Guard::IncidentFlowsDisagree { params } => {
                params.iter().map(String::as_str).collect()
            }
            Guard::All { guards } | Guard::Any { guards } => {
                guards.iter().flat_map(|g| g.referenced_params()).collect()
            }
        }
    }
}

/// One threat-enumeration rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreatRule {
    /// Stable rule id, embedded in finding ids.
    pub id: String,
    pub target: RuleTarget,
    pub guard: Guard,
    /// Categories asserted when the rule fires; one finding per category.
    pub categories: BTreeSet<StrideCategory>,
    /// Why the matched configuration is a threat.
    pub rationale: String,
    pub severity: Severity,
}

/// An ordered collection of threat rules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleSet {
    /// Version tag identifying the ruleset revision.
    pub version: String,
    pub rules: Vec<ThreatRule>,
}

/// Errors from ruleset loading and consistency checks.
#[derive(Debug, Error)]
pub enum RuleError {
    #[error("rule `{rule_id}` references unknown parameter `{param}`")]
    UnknownParameter { rule_id: String, param: String },
    #[error("rule `{rule_id}` asserts no threat category")]
    NoCategories { rule_id: String },
    #[error("duplicate rule id `{0}`")]
    DuplicateRule(String),
    #[error("malformed ruleset document: {0}")]
    Malformed(String),
}

impl RuleSet {
    /// Checks rule consistency against a catalog: every guard parameter must
    /// exist, every rule must assert a category, rule ids must be unique.
    pub fn check(&self, catalog: &ParameterCatalog) -> Result<(), RuleError> {
        let mut seen = BTreeSet::new();
        for rule in &self.rules {
            if !seen.insert(rule.id.as_str()) {
                return Err(RuleError::DuplicateRule(rule.id.clone()));
            }
            if rule.categories.is_empty() {
                return Err(RuleError::NoCategories {
                    rule_id: rule.id.clone(),
                });
            }
            for param in rule.guard.referenced_params() {
                if catalog.get(param).is_none() {
                    return Err(RuleError::UnknownParameter {
                        rule_id: rule.id.clone(),
                        param: param.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Loads a ruleset from its JSON document form.
    pub fn from_json(text: &str) -> Result<Self, RuleError> {
        serde_json::from_str(text).map_err(|e| RuleError::Malformed(e.to_string()))
    }

    /// Serializes the ruleset to its JSON document form.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("ruleset serializes");
        text.push('\n');
        text
    }
}

/// One enumerated threat on one component or flow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreatFinding {
    /// Stable id: `<target>:<rule>:<category>`.
    pub id: String,
    /// Id of the component or flow the threat applies to.
    pub target: String,
    pub category: StrideCategory,
    pub rule_id: String,
    pub severity: Severity,
    /// The rule's rationale, suffixed when the rule fired on absent metadata.
    pub rationale: String,
}

/// Returns the built-in ruleset, with deny lists taken from the given policy.
pub fn default_ruleset_for(policy: &CryptoPolicy) -> RuleSet {
    use CanonicalKind::*;
    use StrideCategory::*;
    let kinds = |list: &[CanonicalKind]| list.iter().copied().collect::<BTreeSet<_>>();
    let cats = |list: &[StrideCategory]| list.iter().copied().collect::<BTreeSet<_>>();

    RuleSet {
        version: "builtin-1".to_string(),
        rules: vec![
            ThreatRule {
                id: "flow-unencrypted".into(),
                target: RuleTarget::Flows,
                guard: Guard::NotTrue {
                    param: "encryption".into(),
                },
                categories: cats(&[InformationDisclosure, Tampering]),
                rationale: "Unencrypted or unconfirmed encryption lets a network attacker \
                            read and alter messages in transit."
                    .into(),
                severity: Severity::High,
            },
            ThreatRule {
                id: "flow-unauthenticated".into(),
                target: RuleTarget::Flows,
                guard: Guard::NotTrue {
                    param: "authentication".into(),
                },
                categories: cats(&[Spoofing]),
                rationale: "Without peer authentication an attacker can impersonate either \
                            endpoint of the channel."
                    .into(),
                severity: Severity::High,
            },
            ThreatRule {
                id: "flow-no-integrity".into(),
                target: RuleTarget::Flows,
                guard: Guard::NotTrue {
                    param: "data_integrity".into(),
                },
                categories: cats(&[Tampering]),
                rationale: "Messages without integrity protection can be modified undetected \
                            on the wire."
                    .into(),
                severity: Severity::Medium,
            },
            ThreatRule {
                id: "unsanitized-input".into(),
                target: RuleTarget::ComponentsAndFlows {
                    kinds: kinds(&[UserInterface]),
                },
                guard: Guard::IsFalse {
                    param: "input_sanitization".into(),
                },
                categories: cats(&[Tampering, ElevationOfPrivilege]),
                rationale: "Unvalidated input reaching back-end systems enables injection \
                            attacks."
                    .into(),
                severity: Severity::High,
            },
            ThreatRule {
                id: "flow-repudiable".into(),
                target: RuleTarget::Flows,
                guard: Guard::NotTrue {
                    param: "authentication".into(),
                },
                categories: cats(&[Repudiation]),
                rationale: "Actions on an unauthenticated channel cannot be attributed to a \
                            peer afterwards."
                    .into(),
                severity: Severity::Medium,
            },
            ThreatRule {
                id: "server-flooding".into(),
                target: RuleTarget::Components {
                    kinds: kinds(&[CloudServer, SmartServiceBackend]),
                },
                guard: Guard::Always,
                categories: cats(&[DenialOfService]),
                rationale: "Server-side infrastructure is a standing exposure candidate for \
                            resource-exhaustion and flooding attacks."
                    .into(),
                severity: Severity::Medium,
            },
            ThreatRule {
                id: "deny-listed-software".into(),
                target: RuleTarget::Components {
                    kinds: kinds(&[SmartDeviceSensor, Gateway, CloudServer, SmartServiceBackend]),
                },
                guard: Guard::DenyListed {
                    params: vec!["operating_system".into(), "software_versions".into()],
                    deny: policy.software_deny.clone(),
                },
                categories: cats(&[ElevationOfPrivilege]),
                rationale: "Operating systems or software versions past end-of-life carry \
                            known unpatched vulnerabilities."
                    .into(),
                severity: Severity::High,
            },
            ThreatRule {
                id: "shared-resources".into(),
                target: RuleTarget::Components {
                    kinds: kinds(&[Gateway, CloudServer, SmartServiceBackend]),
                },
                guard: Guard::IsTrue {
                    param: "shared_resources".into(),
                },
                categories: cats(&[InformationDisclosure]),
                rationale: "Resources shared with other tenants or processes can leak data \
                            across the boundary."
                    .into(),
                severity: Severity::Medium,
            },
            ThreatRule {
                id: "unprotected-storage".into(),
                target: RuleTarget::Components {
                    kinds: kinds(&[SmartDeviceSensor, Gateway, CloudServer, SmartServiceBackend]),
                },
                guard: Guard::All {
                    guards: vec![
                        Guard::IsTrue {
                            param: "data_storage".into(),
                        },
                        Guard::NotTrue {
                            param: "secure_key_store".into(),
                        },
                    ],
                },
                categories: cats(&[InformationDisclosure]),
                rationale: "Locally stored data without a secure key store is recoverable by \
                            whoever obtains the hardware."
                    .into(),
                severity: Severity::Medium,
            },
            ThreatRule {
                id: "gateway-downgrade".into(),
                target: RuleTarget::Components {
                    kinds: kinds(&[Gateway]),
                },
                guard: Guard::IncidentFlowsDisagree {
                    params: vec!["encryption".into(), "authentication".into()],
                },
                categories: cats(&[Tampering, InformationDisclosure]),
                rationale: "A gateway bridging links with differing protection levels \
                            downgrades the stronger side to the weaker."
                    .into(),
                severity: Severity::Medium,
            },
        ],
    }
}

/// Returns the built-in ruleset with the built-in policy's deny lists.
pub fn default_ruleset() -> RuleSet {
    default_ruleset_for(&crate::crypto::default_policy())
}

const MISSING_SUFFIX: &str = " (due to missing metadata)";

fn push_findings(
    findings: &mut Vec<ThreatFinding>,
    rule: &ThreatRule,
    target: &str,
    missing: bool,
) {
    for category in &rule.categories {
        let rationale = if missing {
            format!("{}{MISSING_SUFFIX}", rule.rationale)
        } else {
            rule.rationale.clone()
        };
        findings.push(ThreatFinding {
            id: format!("{target}:{}:{}", rule.id, category.as_str()),
            target: target.to_string(),
            category: *category,
            rule_id: rule.id.clone(),
            severity: rule.severity,
            rationale,
        });
    }
}

/// Enumerates every threat the ruleset asserts over the model.
///
/// Alias component kinds resolve through the catalog before target matching.
/// Findings are sorted by (target id, category, rule id) and carry stable ids,
/// so repeated runs over the same model are byte-identical.
pub fn enumerate_threats(
    model: &SystemModel,
    rules: &RuleSet,
    catalog: &ParameterCatalog,
) -> Result<Vec<ThreatFinding>, RuleError> {
    rules.check(catalog)?;
    let mut findings = Vec::new();
    for rule in &rules.rules {
        for component in &model.components {
            let canonical = component.kind.resolve(&catalog.aliases);
            if !rule.target.matches_component(canonical) {
                continue;
            }
            let subject = Subject::Component(component);
            let outcome = rule.guard.evaluate(&subject, model);
            if outcome.fired {
                push_findings(&mut findings, rule, subject.id(), outcome.missing);
            }
        }
        if rule.target.matches_flows() {
            for flow in &model.flows {
                let subject = Subject::Flow(flow);
                let outcome = rule.guard.evaluate(&subject, model);
                if outcome.fired {
                    push_findings(&mut findings, rule, subject.id(), outcome.missing);
                }
            }
        }
    }
    findings.sort_by(|a, b| {
        (&a.target, a.category, &a.rule_id).cmp(&(&b.target, b.category, &b.rule_id))
    });
    Ok(findings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parameter_catalog;
    use crate::kind::ComponentKind;
    use crate::model::{ConnectionType, KnowledgeLevel};
    use std::collections::BTreeMap;

    fn component(id: &str, kind: ComponentKind) -> Component {
        Component {
            id: id.to_string(),
            name: String::new(),
            kind,
            knowledge_level: None,
            params: BTreeMap::new(),
        }
    }

    fn flow(id: &str, source: &str, destination: &str) -> DataFlow {
        DataFlow {
            id: id.to_string(),
            source: source.to_string(),
            destination: destination.to_string(),
            connection_type: ConnectionType::Wireless,
            protocol: None,
            protocol_version: None,
            cipher_suite: None,
            key_length_bits: None,
            encryption: None,
            data_integrity: None,
            authentication: None,
            input_sanitization: None,
        }
    }

    fn model(components: Vec<Component>, flows: Vec<DataFlow>) -> SystemModel {
        SystemModel {
            schema_version: "1".into(),
            name: "m".into(),
            knowledge_level: KnowledgeLevel::WhiteBox,
            components,
            flows,
        }
    }

    fn protect(f: &mut DataFlow) {
        f.encryption = Some(true);
        f.data_integrity = Some(true);
        f.authentication = Some(true);
        f.input_sanitization = Some(true);
    }

    #[test]
    fn six_categories_with_definitions() {
        let categories = stride_categories();
        assert_eq!(categories.len(), 6);
        assert!(StrideCategory::InformationDisclosure
            .definition()
            .contains("unauthorised users"));
        assert!(StrideCategory::DenialOfService
            .definition()
            .contains("availability"));
        for c in categories {
            assert!(!c.definition().is_empty());
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(json, format!("\"{}\"", c.as_str()));
        }
    }

    #[test]
    fn default_ruleset_shape() {
        let rules = default_ruleset();
        assert_eq!(rules.rules.len(), 10);
        rules.check(&parameter_catalog()).unwrap();
        let round = RuleSet::from_json(&rules.to_json()).unwrap();
        assert_eq!(round, rules);
    }

    #[test]
    fn unprotected_flow_covers_four_categories() {
        let mut f = flow("f1", "dev", "gw");
        f.encryption = Some(false);
        f.data_integrity = Some(false);
        f.authentication = Some(false);
        let m = model(
            vec![
                component("dev", ComponentKind::SmartDeviceSensor),
                component("gw", ComponentKind::Gateway),
            ],
            vec![f],
        );
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        let flow_categories: BTreeSet<StrideCategory> = findings
            .iter()
            .filter(|t| t.target == "f1")
            .map(|t| t.category)
            .collect();
        assert_eq!(
            flow_categories,
            BTreeSet::from([
                StrideCategory::Spoofing,
                StrideCategory::Tampering,
                StrideCategory::Repudiation,
                StrideCategory::InformationDisclosure,
            ])
        );
        // Explicit false is a confirmed gap, not missing metadata.
        for t in findings.iter().filter(|t| t.target == "f1") {
            assert!(!t.rationale.ends_with(MISSING_SUFFIX), "{}", t.id);
        }
    }

    #[test]
    fn protected_flow_is_silent() {
        let mut f = flow("f1", "dev", "gw");
        protect(&mut f);
        let m = model(
            vec![
                component("dev", ComponentKind::SmartDeviceSensor),
                component("gw", ComponentKind::Gateway),
            ],
            vec![f],
        );
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        assert!(findings.is_empty(), "{findings:?}");
    }

    #[test]
    fn unset_protections_fire_with_missing_marker() {
        let m = model(
            vec![
                component("dev", ComponentKind::SmartDeviceSensor),
                component("gw", ComponentKind::Gateway),
            ],
            vec![flow("f1", "dev", "gw")],
        );
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        assert!(!findings.is_empty());
        for t in &findings {
            assert!(t.rationale.ends_with(MISSING_SUFFIX), "{}", t.id);
        }
    }

    #[test]
    fn unsanitized_input_fires_on_explicit_false_only() {
        let mut ui = component("app", ComponentKind::UserInterface);
        ui.params
            .insert("input_sanitization".into(), ParamValue::Bool(false));
        let m = model(vec![ui], vec![]);
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        let categories: BTreeSet<StrideCategory> = findings.iter().map(|t| t.category).collect();
        assert_eq!(
            categories,
            BTreeSet::from([
                StrideCategory::Tampering,
                StrideCategory::ElevationOfPrivilege
            ])
        );
        assert!(findings.iter().all(|t| t.severity == Severity::High));

        // Absence of the declaration does not fire this rule.
        let silent = model(vec![component("app", ComponentKind::UserInterface)], vec![]);
        let findings =
            enumerate_threats(&silent, &default_ruleset(), &parameter_catalog()).unwrap();
        assert!(findings.iter().all(|t| t.rule_id != "unsanitized-input"));
    }

    #[test]
    fn unsanitized_input_also_matches_flows() {
        let mut f = flow("f1", "gw", "dev");
        protect(&mut f);
        f.input_sanitization = Some(false);
        let m = model(
            vec![
                component("dev", ComponentKind::SmartDeviceSensor),
                component("gw", ComponentKind::Gateway),
            ],
            vec![f],
        );
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        assert!(findings
            .iter()
            .any(|t| t.rule_id == "unsanitized-input" && t.target == "f1"));
    }

    #[test]
    fn servers_are_flooding_candidates() {
        let m = model(
            vec![
                component("cloud", ComponentKind::CloudServer),
                component("dev", ComponentKind::SmartDeviceSensor),
            ],
            vec![],
        );
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        let dos: Vec<&ThreatFinding> = findings
            .iter()
            .filter(|t| t.category == StrideCategory::DenialOfService)
            .collect();
        assert_eq!(dos.len(), 1);
        assert_eq!(dos[0].target, "cloud");
        assert!(dos[0].rationale.contains("exposure candidate"));
    }

    #[test]
    fn deny_listed_software_fires() {
        let mut old = component("srv", ComponentKind::CloudServer);
        old.params.insert(
            "operating_system".into(),
            ParamValue::Str("Windows XP SP3".into()),
        );
        let m = model(vec![old], vec![]);
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        assert!(findings.iter().any(|t| t.rule_id == "deny-listed-software"
            && t.category == StrideCategory::ElevationOfPrivilege));

        // Version lists match too, with the digit-boundary rule intact.
        let mut tablet = component("tab", ComponentKind::SmartDeviceSensor);
        tablet.params.insert(
            "software_versions".into(),
            ParamValue::StrList(vec!["OpenSSL 3.0".into(), "Android 4.4".into()]),
        );
        let m = model(vec![tablet], vec![]);
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        assert!(findings.iter().any(|t| t.rule_id == "deny-listed-software"));

        let mut modern = component("new", ComponentKind::SmartDeviceSensor);
        modern.params.insert(
            "operating_system".into(),
            ParamValue::Str("Android 44".into()),
        );
        let m = model(vec![modern], vec![]);
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        assert!(findings.iter().all(|t| t.rule_id != "deny-listed-software"));
    }

    #[test]
    fn storage_without_key_store() {
        let mut dev = component("dev", ComponentKind::SmartDeviceSensor);
        dev.params
            .insert("data_storage".into(), ParamValue::Bool(true));
        let m = model(vec![dev.clone()], vec![]);
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        let hit = findings
            .iter()
            .find(|t| t.rule_id == "unprotected-storage")
            .unwrap();
        // Key store unset: fires, but flagged as a metadata gap.
        assert!(hit.rationale.ends_with(MISSING_SUFFIX));

        dev.params
            .insert("secure_key_store".into(), ParamValue::Bool(true));
        let m = model(vec![dev.clone()], vec![]);
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        assert!(findings.iter().all(|t| t.rule_id != "unprotected-storage"));

        dev.params
            .insert("secure_key_store".into(), ParamValue::Bool(false));
        let m = model(vec![dev], vec![]);
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        let hit = findings
            .iter()
            .find(|t| t.rule_id == "unprotected-storage")
            .unwrap();
        assert!(!hit.rationale.ends_with(MISSING_SUFFIX));
    }

    #[test]
    fn gateway_bridging_unequal_links() {
        let mut inner = flow("f-in", "dev", "gw");
        protect(&mut inner);
        let mut outer = flow("f-out", "gw", "cloud");
        protect(&mut outer);
        outer.encryption = Some(false);
        let m = model(
            vec![
                component("dev", ComponentKind::SmartDeviceSensor),
                component("gw", ComponentKind::Gateway),
                component("cloud", ComponentKind::CloudServer),
            ],
            vec![inner.clone(), outer.clone()],
        );
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        let gw: Vec<&ThreatFinding> = findings
            .iter()
            .filter(|t| t.rule_id == "gateway-downgrade")
            .collect();
        assert_eq!(gw.len(), 2);
        assert!(gw.iter().all(|t| t.target == "gw"));
        assert!(gw.iter().all(|t| !t.rationale.ends_with(MISSING_SUFFIX)));

        // Agreement on both links: silent.
        outer.encryption = Some(true);
        let m = model(
            vec![
                component("dev", ComponentKind::SmartDeviceSensor),
                component("gw", ComponentKind::Gateway),
                component("cloud", ComponentKind::CloudServer),
            ],
            vec![inner.clone(), outer.clone()],
        );
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        assert!(findings.iter().all(|t| t.rule_id != "gateway-downgrade"));

        // One side unset: fires as a metadata gap.
        outer.encryption = None;
        let m = model(
            vec![
                component("dev", ComponentKind::SmartDeviceSensor),
                component("gw", ComponentKind::Gateway),
                component("cloud", ComponentKind::CloudServer),
            ],
            vec![inner, outer],
        );
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        let gw: Vec<&ThreatFinding> = findings
            .iter()
            .filter(|t| t.rule_id == "gateway-downgrade")
            .collect();
        assert!(!gw.is_empty());
        assert!(gw.iter().all(|t| t.rationale.ends_with(MISSING_SUFFIX)));
    }

    #[test]
    fn unknown_guard_parameter_rejected() {
        let rules = RuleSet {
            version: "t".into(),
            rules: vec![ThreatRule {
                id: "bogus".into(),
                target: RuleTarget::Flows,
                guard: Guard::IsTrue {
                    param: "made_up".into(),
                },
                categories: BTreeSet::from([StrideCategory::Spoofing]),
                rationale: "x".into(),
                severity: Severity::Low,
            }],
        };
        let m = model(vec![], vec![]);
        let err = enumerate_threats(&m, &rules, &parameter_catalog()).unwrap_err();
        assert!(matches!(
            err,
            RuleError::UnknownParameter { ref rule_id, ref param }
                if rule_id == "bogus" && param == "made_up"
        ));
    }

    #[test]
    fn finding_ids_and_order_are_stable() {
        let mut f = flow("f1", "dev", "srv");
        f.encryption = Some(false);
        f.data_integrity = Some(true);
        f.authentication = Some(true);
        let m = model(
            vec![
                component("dev", ComponentKind::SmartDeviceSensor),
                component("srv", ComponentKind::SmartServiceBackend),
            ],
            vec![f],
        );
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        let ids: Vec<&str> = findings.iter().map(|t| t.id.as_str()).collect();
        assert_eq!(
            ids,
            vec![
                "f1:flow-unencrypted:tampering",
                "f1:flow-unencrypted:information_disclosure",
                "srv:server-flooding:denial_of_service",
            ]
        );
        // Deterministic across runs.
        let again = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        assert_eq!(findings, again);
    }

    #[test]
    fn alias_kinds_resolve_before_matching() {
        let analytics = component("ml", ComponentKind::DataAnalytics);
        let m = model(vec![analytics], vec![]);
        let findings = enumerate_threats(&m, &default_ruleset(), &parameter_catalog()).unwrap();
        // Analytics nodes resolve to back-end services, which are flooding candidates.
        assert!(findings
            .iter()
            .any(|t| t.rule_id == "server-flooding" && t.target == "ml"));
    }
}
