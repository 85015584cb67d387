//! Knowledge-aware compilation of phase-ordered penetration test plans.
//!
//! A plan binds model metadata to the inputs of abstract tool classes, one
//! task per (target, phase, tool). Tasks whose required inputs are not all
//! visible at the model's knowledge level stay in the plan as `Blocked`
//! rather than being dropped, so the plan doubles as a gap list. Only the
//! first three pentest phases are automatable; requesting later phases is an
//! error.

use crate::catalog::{Observability, ParameterCatalog};
use crate::kind::CanonicalKind;
use crate::model::{Component, KnowledgeLevel, ParamValue, SystemModel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// The classic penetration-testing phases, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PentestPhase {
    Reconnaissance,
    Scanning,
    GainingAccess,
    MaintainingAccess,
    CoveringTracks,
}

impl PentestPhase {
    pub const ALL: [PentestPhase; 5] = [
        PentestPhase::Reconnaissance,
        PentestPhase::Scanning,
        PentestPhase::GainingAccess,
        PentestPhase::MaintainingAccess,
        PentestPhase::CoveringTracks,
    ];

    /// The phases a plan can contain: everything from gaining access onward
    /// needs a human in the loop.
    pub const AUTOMATED: [PentestPhase; 3] = [
        PentestPhase::Reconnaissance,
        PentestPhase::Scanning,
        PentestPhase::GainingAccess,
    ];

    pub fn is_automated(&self) -> bool {
        PentestPhase::AUTOMATED.contains(self)
    }

    /// Stable machine name, used in task ids and documents.
    pub fn as_str(&self) -> &'static str {
        match self {
            PentestPhase::Reconnaissance => "reconnaissance",
            PentestPhase::Scanning => "scanning",
            PentestPhase::GainingAccess => "gaining_access",
            PentestPhase::MaintainingAccess => "maintaining_access",
            PentestPhase::CoveringTracks => "covering_tracks",
        }
    }

    /// Human-readable phase title.
    pub fn title(&self) -> &'static str {
        match self {
            PentestPhase::Reconnaissance => "Reconnaissance",
            PentestPhase::Scanning => "Scanning",
            PentestPhase::GainingAccess => "Gaining access",
            PentestPhase::MaintainingAccess => "Maintaining access",
            PentestPhase::CoveringTracks => "Covering tracks",
        }
    }
}

impl fmt::Display for PentestPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Abstract capability categories standing in for concrete pentest tools.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToolClass {
    NetworkScanner,
    ExploitFramework,
    SqlInjection,
    SubdomainDiscovery,
    InfoGathering,
    WebScanner,
}

impl ToolClass {
    pub const ALL: [ToolClass; 6] = [
        ToolClass::NetworkScanner,
        ToolClass::ExploitFramework,
        ToolClass::SqlInjection,
        ToolClass::SubdomainDiscovery,
        ToolClass::InfoGathering,
        ToolClass::WebScanner,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ToolClass::NetworkScanner => "network_scanner",
            ToolClass::ExploitFramework => "exploit_framework",
            ToolClass::SqlInjection => "sql_injection",
            ToolClass::SubdomainDiscovery => "subdomain_discovery",
            ToolClass::InfoGathering => "info_gathering",
            ToolClass::WebScanner => "web_scanner",
        }
    }

    /// What tools of this class do (with a well-known representative).
    pub fn description(&self) -> &'static str {
        match self {
            ToolClass::NetworkScanner => {
                "Sweeps address ranges for live hosts, open ports, and service banners (e.g. Nmap)."
            }
            ToolClass::ExploitFramework => {
                "Matches known exploits against identified software and drives them (e.g. Metasploit)."
            }
            ToolClass::SqlInjection => {
                "Probes database-backed endpoints for injection flaws (e.g. Sqlmap)."
            }
            ToolClass::SubdomainDiscovery => {
                "Enumerates DNS names below a target domain (e.g. Subfinder)."
            }
            ToolClass::InfoGathering => {
                "Collects whois, DNS, and host intelligence about a target (e.g. DMitry)."
            }
            ToolClass::WebScanner => {
                "Crawls and probes web applications for vulnerabilities (e.g. Burp Suite)."
            }
        }
    }
}

impl fmt::Display for ToolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether a task can run with the metadata at hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskStatus {
    Ready,
    Blocked,
}

/// One planned tool invocation against one target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestTask {
    /// Stable id: `<phase>-<tool_class>-<target_id>`.
    pub id: String,
    pub phase: PentestPhase,
    /// Component or flow id the task runs against.
    pub target: String,
    pub tool: ToolClass,
    pub status: TaskStatus,
    /// Required input ids mapped to their values; `null` marks a missing one.
    pub bindings: BTreeMap<String, Option<ParamValue>>,
    /// Required inputs without a value, sorted.
    pub missing: Vec<String>,
}

/// A compiled, phase-ordered test plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestPlan {
    pub model_name: String,
    /// Knowledge level the plan's bindings were redacted to.
    pub knowledge_level: KnowledgeLevel,
    /// Requested phases, deduplicated, in canonical order.
    pub phases: Vec<PentestPhase>,
    /// Tasks sorted by (phase, target, tool).
    pub tasks: Vec<TestTask>,
}

/// Output formats for rendered plans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanFormat {
    /// Canonical JSON, reparseable via [`parse_plan`].
    Machine,
    /// Phase-grouped listing with READY/BLOCKED markers.
    Human,
}

impl PlanFormat {
    pub fn parse(s: &str) -> Result<PlanFormat, PlanError> {
        match s {
            "machine" => Ok(PlanFormat::Machine),
            "human" => Ok(PlanFormat::Human),
            other => Err(PlanError::UnknownFormat(other.to_string())),
        }
    }
}

/// Errors from plan compilation, rendering, and parsing.
#[derive(Debug, Error)]
pub enum PlanError {
    #[error(
        "phase `{0}` is not automatable; supported phases are reconnaissance, scanning, and gaining_access"
    )]
    UnsupportedPhase(PentestPhase),
    #[error("unknown plan format `{0}` (expected \"machine\" or \"human\")")]
    UnknownFormat(String),
    #[error("malformed plan document: {0}")]
    Malformed(String),
}

/// One row of the dispatch table: which tool runs in which phase, what it
/// needs, and (optionally) which component kinds it is restricted to beyond
/// parameter admissibility.
struct Dispatch {
    phase: PentestPhase,
    tool: ToolClass,
    /// Required input parameter ids, sorted.
    required: &'static [&'static str],
    kind_filter: Option<&'static [CanonicalKind]>,
}

/// Component-targeted dispatch rows. A task is emitted for every component
/// whose (canonical) kind admits at least one required input per the catalog,
/// and that passes the kind filter where present — so the task set depends
/// only on component kinds, never on which values happen to be set.
const COMPONENT_DISPATCH: [Dispatch; 7] = [
    Dispatch {
        phase: PentestPhase::Reconnaissance,
        tool: ToolClass::InfoGathering,
        required: &[
            "hardware_interface",
            "host_names",
            "ip_address",
            "network_address",
        ],
        kind_filter: None,
    },
    Dispatch {
        phase: PentestPhase::Reconnaissance,
        tool: ToolClass::NetworkScanner,
        required: &["ip_address", "network_address"],
        kind_filter: None,
    },
    Dispatch {
        phase: PentestPhase::Reconnaissance,
        tool: ToolClass::SubdomainDiscovery,
        required: &["host_names"],
        kind_filter: None,
    },
    Dispatch {
        phase: PentestPhase::Scanning,
        tool: ToolClass::NetworkScanner,
        required: &["ip_address", "open_ports"],
        kind_filter: None,
    },
    Dispatch {
        phase: PentestPhase::Scanning,
        tool: ToolClass::WebScanner,
        required: &["web_urls"],
        kind_filter: None,
    },
    Dispatch {
        phase: PentestPhase::GainingAccess,
        tool: ToolClass::ExploitFramework,
        required: &["operating_system", "protocol_version", "software_versions"],
        kind_filter: None,
    },
    Dispatch {
        phase: PentestPhase::GainingAccess,
        tool: ToolClass::SqlInjection,
        required: &["web_urls"],
        kind_filter: Some(&[
            CanonicalKind::CloudServer,
            CanonicalKind::SmartServiceBackend,
        ]),
    },
];

/// Flows are planning targets only for protocol-version-driven access tasks.
const FLOW_DISPATCH: Dispatch = Dispatch {
    phase: PentestPhase::GainingAccess,
    tool: ToolClass::ExploitFramework,
    required: &["protocol_version"],
    kind_filter: None,
};

/// Strips a model down to what an assessor at the given knowledge level can
/// see.
///
/// Per component, the effective level is the component's override (if any) or
/// the given level; parameters survive iff their observability class is
/// visible at that level. Parameters unknown to the catalog are treated as
/// internal. Flow topology and connection types always survive; protocol,
/// version, cipher suite, and key length are network-observable; the security
/// assurance flags are internal knowledge.
pub fn redact_model(
    model: &SystemModel,
    level: KnowledgeLevel,
    catalog: &ParameterCatalog,
) -> SystemModel {
    let components = model
        .components
        .iter()
        .map(|c| {
            let effective = c.knowledge_level.unwrap_or(level);
            let params = c
                .params
                .iter()
                .filter(|(id, _)| {
                    let class = catalog
                        .get(id)
                        .map_or(Observability::Internal, |d| d.observability);
                    effective.reveals(class)
                })
                .map(|(id, value)| (id.clone(), value.clone()))
                .collect();
            Component {
                params,
                ..c.clone()
            }
        })
        .collect();

    let flows = model
        .flows
        .iter()
        .map(|f| {
            let mut f = f.clone();
            if !level.reveals(Observability::NetworkObservable) {
                f.protocol = None;
                f.protocol_version = None;
                f.cipher_suite = None;
                f.key_length_bits = None;
            }
            if !level.reveals(Observability::Internal) {
                f.encryption = None;
                f.data_integrity = None;
                f.authentication = None;
                f.input_sanitization = None;
            }
            f
        })
        .collect();

    SystemModel {
        components,
        flows,
        ..model.clone()
    }
}

fn make_task(
    phase: PentestPhase,
    tool: ToolClass,
    target_id: &str,
    required: &[&str],
    lookup: impl Fn(&str) -> Option<ParamValue>,
) -> TestTask {
    let mut bindings = BTreeMap::new();
    let mut missing = Vec::new();
    for param in required {
        let value = lookup(param);
        if value.is_none() {
            missing.push(param.to_string());
        }
        bindings.insert(param.to_string(), value);
    }
    TestTask {
        id: format!("{}-{}-{}", phase.as_str(), tool.as_str(), target_id),
        phase,
        target: target_id.to_string(),
        tool,
        status: if missing.is_empty() {
            TaskStatus::Ready
        } else {
            TaskStatus::Blocked
        },
        bindings,
        missing,
    }
}

/// Compiles a test plan for the requested phases.
///
/// The model is first redacted to its own knowledge level, so bindings only
/// draw on what the assumed assessor can see. Tasks with missing required
/// inputs are emitted as `Blocked`, never dropped.
pub fn compile_plan(
    model: &SystemModel,
    phases: &[PentestPhase],
    catalog: &ParameterCatalog,
) -> Result<TestPlan, PlanError> {
    if let Some(bad) = phases.iter().find(|p| !p.is_automated()) {
        return Err(PlanError::UnsupportedPhase(*bad));
    }
    let selected: Vec<PentestPhase> = PentestPhase::AUTOMATED
        .into_iter()
        .filter(|p| phases.contains(p))
        .collect();

    let redacted = redact_model(model, model.knowledge_level, catalog);
    let mut tasks = Vec::new();

    for dispatch in COMPONENT_DISPATCH
        .iter()
        .filter(|d| selected.contains(&d.phase))
    {
        for component in &redacted.components {
            let canonical = component.kind.resolve(&catalog.aliases);
            if let Some(kinds) = dispatch.kind_filter {
                if !kinds.contains(&canonical) {
                    continue;
                }
            }
            let admits_any = dispatch.required.iter().any(|p| {
                catalog
                    .get(p)
                    .is_some_and(|def| def.applicability.contains(&canonical))
            });
            if !admits_any {
                continue;
            }
            tasks.push(make_task(
                dispatch.phase,
                dispatch.tool,
                &component.id,
                dispatch.required,
                |p| component.params.get(p).cloned(),
            ));
        }
    }

    if selected.contains(&FLOW_DISPATCH.phase) {
        for flow in &redacted.flows {
            tasks.push(make_task(
                FLOW_DISPATCH.phase,
                FLOW_DISPATCH.tool,
                &flow.id,
                FLOW_DISPATCH.required,
                |p| flow.param(p),
            ));
        }
    }

    tasks.sort_by(|a, b| (a.phase, &a.target, a.tool).cmp(&(b.phase, &b.target, b.tool)));

    Ok(TestPlan {
        model_name: model.name.clone(),
        knowledge_level: model.knowledge_level,
        phases: selected,
        tasks,
    })
}

/// Renders a plan as canonical JSON or a human-readable listing.
pub fn render_plan(plan: &TestPlan, format: PlanFormat) -> String {
    match format {
        PlanFormat::Machine => {
            let mut text = serde_json::to_string_pretty(plan).expect("plan serializes");
            text.push('\n');
            text
        }
        PlanFormat::Human => {
            let mut out = String::new();
            let name = if plan.model_name.is_empty() {
                "(unnamed)"
            } else {
                &plan.model_name
            };
            out.push_str(&format!("Test plan: {name}\n"));
            out.push_str(&format!("Knowledge level: {}\n", plan.knowledge_level));
            for phase in &plan.phases {
                out.push_str(&format!("\n== {} ==\n", phase.title()));
                let mut any = false;
                for task in plan.tasks.iter().filter(|t| t.phase == *phase) {
                    any = true;
                    match task.status {
                        TaskStatus::Ready => {
                            out.push_str(&format!(
                                "  [READY]   {} on {}\n",
                                task.tool, task.target
                            ));
                        }
                        TaskStatus::Blocked => {
                            out.push_str(&format!(
                                "  [BLOCKED] {} on {} — missing: {}\n",
                                task.tool,
                                task.target,
                                task.missing.join(", ")
                            ));
                        }
                    }
                    for (param, value) in &task.bindings {
                        match value {
                            Some(v) => out.push_str(&format!("            {param} = {v}\n")),
                            None => out.push_str(&format!("            {param} = MISSING\n")),
                        }
                    }
                }
                if !any {
                    out.push_str("  (no tasks)\n");
                }
            }
            out
        }
    }
}

/// Parses a machine-format plan document and checks its consistency.
pub fn parse_plan(text: &str) -> Result<TestPlan, PlanError> {
    let plan: TestPlan =
        serde_json::from_str(text).map_err(|e| PlanError::Malformed(e.to_string()))?;
    for phase in &plan.phases {
        if !phase.is_automated() {
            return Err(PlanError::Malformed(format!(
                "plan contains non-automatable phase `{phase}`"
            )));
        }
    }
    for task in &plan.tasks {
        let missing: Vec<String> = task
            .bindings
            .iter()
            .filter(|(_, v)| v.is_none())
            .map(|(k, _)| k.clone())
            .collect();
        if missing != task.missing {
            return Err(PlanError::Malformed(format!(
                "task `{}`: missing list disagrees with bindings",
                task.id
            )));
        }
        let expected = if missing.is_empty() {
            TaskStatus::Ready
        } else {
            TaskStatus::Blocked
        };
        if task.status != expected {
            return Err(PlanError::Malformed(format!(
                "task `{}`: status disagrees with bindings",
                task.id
            )));
        }
    }
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parameter_catalog;
    use crate::kind::ComponentKind;
    use crate::model::{ConnectionType, DataFlow};
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

    fn model_of(components: Vec<Component>, flows: Vec<DataFlow>) -> SystemModel {
        SystemModel {
            schema_version: "1".into(),
            name: "m".into(),
            knowledge_level: KnowledgeLevel::WhiteBox,
            components,
            flows,
        }
    }

    fn set_list(c: &mut Component, id: &str, value: &str) {
        c.params
            .insert(id.to_string(), ParamValue::StrList(vec![value.to_string()]));
    }

    #[test]
    fn empty_model_empty_plan() {
        let plan = compile_plan(
            &model_of(vec![], vec![]),
            &PentestPhase::AUTOMATED,
            &parameter_catalog(),
        )
        .unwrap();
        assert!(plan.tasks.is_empty());
        assert_eq!(plan.phases, PentestPhase::AUTOMATED.to_vec());
    }

    #[test]
    fn recon_tasks_ready_when_inputs_bound() {
        let mut c = component("svc", ComponentKind::SmartServiceBackend);
        set_list(&mut c, "ip_address", "10.1.2.3");
        set_list(&mut c, "host_names", "svc.local");
        set_list(&mut c, "network_address", "10.1.2.0/24");
        set_list(&mut c, "hardware_interface", "eth0");
        let plan = compile_plan(
            &model_of(vec![c], vec![]),
            &[PentestPhase::Reconnaissance],
            &parameter_catalog(),
        )
        .unwrap();
        let tools: Vec<ToolClass> = plan.tasks.iter().map(|t| t.tool).collect();
        assert!(tools.contains(&ToolClass::NetworkScanner));
        assert!(tools.contains(&ToolClass::InfoGathering));
        assert!(tools.contains(&ToolClass::SubdomainDiscovery));
        assert!(plan.tasks.iter().all(|t| t.status == TaskStatus::Ready));
    }

    #[test]
    fn missing_inputs_block_but_keep_tasks() {
        let mut c = component("gw", ComponentKind::Gateway);
        set_list(&mut c, "ip_address", "192.168.0.1");
        let plan = compile_plan(
            &model_of(vec![c], vec![]),
            &[PentestPhase::GainingAccess],
            &parameter_catalog(),
        )
        .unwrap();
        let task = plan
            .tasks
            .iter()
            .find(|t| t.tool == ToolClass::ExploitFramework)
            .unwrap();
        assert_eq!(task.status, TaskStatus::Blocked);
        assert_eq!(
            task.missing,
            vec!["operating_system", "protocol_version", "software_versions"]
        );
        assert_eq!(task.id, "gaining_access-exploit_framework-gw");
    }

    #[test]
    fn later_phases_are_rejected() {
        let err = compile_plan(
            &model_of(vec![], vec![]),
            &[PentestPhase::Reconnaissance, PentestPhase::CoveringTracks],
            &parameter_catalog(),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            PlanError::UnsupportedPhase(PentestPhase::CoveringTracks)
        ));
    }

    #[test]
    fn phases_are_deduplicated_and_ordered() {
        let plan = compile_plan(
            &model_of(vec![], vec![]),
            &[
                PentestPhase::Scanning,
                PentestPhase::Reconnaissance,
                PentestPhase::Scanning,
            ],
            &parameter_catalog(),
        )
        .unwrap();
        assert_eq!(
            plan.phases,
            vec![PentestPhase::Reconnaissance, PentestPhase::Scanning]
        );
    }

    #[test]
    fn sql_injection_only_for_server_kinds() {
        let mut ui = component("portal", ComponentKind::UserInterface);
        set_list(&mut ui, "web_urls", "https://portal.example");
        let mut cloud = component("api", ComponentKind::CloudServer);
        set_list(&mut cloud, "web_urls", "https://api.example");
        let plan = compile_plan(
            &model_of(vec![ui, cloud], vec![]),
            &[PentestPhase::GainingAccess, PentestPhase::Scanning],
            &parameter_catalog(),
        )
        .unwrap();
        let sql_targets: Vec<&str> = plan
            .tasks
            .iter()
            .filter(|t| t.tool == ToolClass::SqlInjection)
            .map(|t| t.target.as_str())
            .collect();
        assert_eq!(sql_targets, vec!["api"]);
        // The UI still gets a web scan in the scanning phase.
        assert!(plan
            .tasks
            .iter()
            .any(|t| t.tool == ToolClass::WebScanner && t.target == "portal"));
    }

    #[test]
    fn flows_get_protocol_version_access_tasks() {
        let flow = DataFlow {
            id: "f1".into(),
            source: "a".into(),
            destination: "b".into(),
            connection_type: ConnectionType::Wired,
            protocol: Some("mqtt".into()),
            protocol_version: Some("5.0".into()),
            cipher_suite: None,
            key_length_bits: None,
            encryption: None,
            data_integrity: None,
            authentication: None,
            input_sanitization: None,
        };
        let m = model_of(
            vec![
                component("a", ComponentKind::SmartDeviceSensor),
                component("b", ComponentKind::Gateway),
            ],
            vec![flow],
        );
        let plan = compile_plan(&m, &[PentestPhase::GainingAccess], &parameter_catalog()).unwrap();
        let task = plan.tasks.iter().find(|t| t.target == "f1").unwrap();
        assert_eq!(task.tool, ToolClass::ExploitFramework);
        assert_eq!(task.status, TaskStatus::Ready);
        assert_eq!(
            task.bindings.get("protocol_version"),
            Some(&Some(ParamValue::Str("5.0".into())))
        );
    }

    #[test]
    fn redaction_examples() {
        let catalog = parameter_catalog();
        let mut c = component("d", ComponentKind::SmartDeviceSensor);
        set_list(&mut c, "ip_address", "10.0.0.2");
        c.params
            .insert("operating_system".into(), ParamValue::Str("linux".into()));
        c.params
            .insert("connection_type".into(), ParamValue::Str("wireless".into()));
        let m = model_of(vec![c], vec![]);

        let white = redact_model(&m, KnowledgeLevel::WhiteBox, &catalog);
        assert_eq!(white, m);

        let grey = redact_model(&m, KnowledgeLevel::GreyBox, &catalog);
        let grey_keys: Vec<&String> = grey.components[0].params.keys().collect();
        assert_eq!(grey_keys, vec!["connection_type", "ip_address"]);

        let black = redact_model(&m, KnowledgeLevel::BlackBox, &catalog);
        let black_keys: Vec<&String> = black.components[0].params.keys().collect();
        assert_eq!(black_keys, vec!["connection_type"]);
    }

    #[test]
    fn component_override_beats_model_level() {
        let catalog = parameter_catalog();
        let mut c = component("d", ComponentKind::Gateway);
        c.knowledge_level = Some(KnowledgeLevel::BlackBox);
        set_list(&mut c, "ip_address", "10.0.0.2");
        let m = model_of(vec![c], vec![]);
        let redacted = redact_model(&m, KnowledgeLevel::WhiteBox, &catalog);
        assert!(redacted.components[0].params.is_empty());
    }

    #[test]
    fn flow_redaction_levels() {
        let flow = DataFlow {
            id: "f".into(),
            source: "a".into(),
            destination: "b".into(),
            connection_type: ConnectionType::Wireless,
            protocol: Some("https".into()),
            protocol_version: Some("TLS 1.2".into()),
            cipher_suite: Some("AES-GCM".into()),
            key_length_bits: Some(256),
            encryption: Some(true),
            data_integrity: Some(true),
            authentication: Some(true),
            input_sanitization: Some(false),
        };
        let m = model_of(
            vec![
                component("a", ComponentKind::Gateway),
                component("b", ComponentKind::CloudServer),
            ],
            vec![flow],
        );
        let catalog = parameter_catalog();

        let black = redact_model(&m, KnowledgeLevel::BlackBox, &catalog);
        let f = &black.flows[0];
        assert_eq!(f.connection_type, ConnectionType::Wireless);
        assert!(f.protocol.is_none() && f.protocol_version.is_none());
        assert!(f.encryption.is_none() && f.input_sanitization.is_none());

        let grey = redact_model(&m, KnowledgeLevel::GreyBox, &catalog);
        let f = &grey.flows[0];
        assert_eq!(f.protocol_version.as_deref(), Some("TLS 1.2"));
        assert_eq!(f.key_length_bits, Some(256));
        assert!(f.encryption.is_none());

        assert_eq!(redact_model(&m, KnowledgeLevel::WhiteBox, &catalog), m);
    }

    #[test]
    fn plan_render_round_trip() {
        let mut c = component("api", ComponentKind::CloudServer);
        set_list(&mut c, "ip_address", "203.0.113.7");
        let plan = compile_plan(
            &model_of(vec![c], vec![]),
            &PentestPhase::AUTOMATED,
            &parameter_catalog(),
        )
        .unwrap();
        let text = render_plan(&plan, PlanFormat::Machine);
        let back = parse_plan(&text).unwrap();
        assert_eq!(back, plan);
    }

    #[test]
    fn human_format_marks_blocked_tasks() {
        let c = component("api", ComponentKind::CloudServer);
        let plan = compile_plan(
            &model_of(vec![c], vec![]),
            &[PentestPhase::Scanning],
            &parameter_catalog(),
        )
        .unwrap();
        let text = render_plan(&plan, PlanFormat::Human);
        assert!(text.contains("BLOCKED"));
        assert!(text.contains("open_ports"));
        assert!(text.contains("MISSING"));
        assert!(PlanFormat::parse("carrier-pigeon").is_err());
    }

    #[test]
    fn inconsistent_plans_fail_to_parse() {
        let mut c = component("api", ComponentKind::CloudServer);
        set_list(&mut c, "ip_address", "203.0.113.7");
        set_list(&mut c, "open_ports", "443");
        let plan = compile_plan(
            &model_of(vec![c], vec![]),
            &[PentestPhase::Scanning],
            &parameter_catalog(),
        )
        .unwrap();
        let mut text = render_plan(&plan, PlanFormat::Machine);
        text = text.replace("\"ready\"", "\"blocked\"");
        assert!(matches!(parse_plan(&text), Err(PlanError::Malformed(_))));
    }
}
