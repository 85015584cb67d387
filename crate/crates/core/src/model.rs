//! System model types: components, data flows, and the assembled model.
//!
//! A [`SystemModel`] is a declarative description of a deployment: typed
//! components carrying metadata parameters, and data flows connecting them.
//! Models are immutable once built; every analysis in this crate is a pure
//! read over them.

use crate::catalog::Observability;
use crate::kind::ComponentKind;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// How much knowledge of the target an assessor is assumed to hold.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum KnowledgeLevel {
    /// Only externally evident facts are available.
    #[serde(rename = "black")]
    BlackBox,
    /// Network-level reconnaissance results are additionally available.
    #[serde(rename = "grey")]
    GreyBox,
    /// Full insider documentation is available.
    #[default]
    #[serde(rename = "white")]
    WhiteBox,
}

impl KnowledgeLevel {
    /// All levels, from least to most informed.
    pub const ALL: [KnowledgeLevel; 3] = [
        KnowledgeLevel::BlackBox,
        KnowledgeLevel::GreyBox,
        KnowledgeLevel::WhiteBox,
    ];

    /// Stable machine name, as used in model documents.
    pub fn as_str(&self) -> &'static str {
        match self {
            KnowledgeLevel::BlackBox => "black",
            KnowledgeLevel::GreyBox => "grey",
            KnowledgeLevel::WhiteBox => "white",
        }
    }

    /// Parses a machine name back into a level.
    pub fn parse(s: &str) -> Option<KnowledgeLevel> {
        KnowledgeLevel::ALL.into_iter().find(|l| l.as_str() == s)
    }

    /// True iff parameters of the given observability class are visible here.
    pub fn reveals(&self, class: Observability) -> bool {
        match self {
            KnowledgeLevel::BlackBox => class == Observability::Public,
            KnowledgeLevel::GreyBox => class != Observability::Internal,
            KnowledgeLevel::WhiteBox => true,
        }
    }
}

impl fmt::Display for KnowledgeLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Physical nature of a data flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionType {
    Wired,
    Wireless,
    /// A flow with no dedicated physical link of its own (e.g. tunneled).
    Logical,
}

impl ConnectionType {
    pub const ALL: [ConnectionType; 3] = [
        ConnectionType::Wired,
        ConnectionType::Wireless,
        ConnectionType::Logical,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ConnectionType::Wired => "wired",
            ConnectionType::Wireless => "wireless",
            ConnectionType::Logical => "logical",
        }
    }

    pub fn parse(s: &str) -> Option<ConnectionType> {
        ConnectionType::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for ConnectionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Shared severity scale for threat and crypto findings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Low,
    Medium,
    High,
}

impl Severity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Severity::Low => "low",
            Severity::Medium => "medium",
            Severity::High => "high",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A metadata parameter value.
///
/// The variant must agree with the parameter's declared shape in the catalog;
/// structural validation flags mismatches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Bool(bool),
    Str(String),
    StrList(Vec<String>),
    Number(f64),
}

impl ParamValue {
    /// Name of the value's shape, for diagnostics.
    pub fn kind_name(&self) -> &'static str {
        match self {
            ParamValue::Bool(_) => "boolean",
            ParamValue::Str(_) => "string",
            ParamValue::StrList(_) => "string list",
            ParamValue::Number(_) => "number",
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Bool(b) => write!(f, "{b}"),
            ParamValue::Str(s) => f.write_str(s),
            ParamValue::StrList(items) => f.write_str(&items.join(", ")),
            ParamValue::Number(n) => write!(f, "{n}"),
        }
    }
}

/// One component of the modeled system.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    /// Unique id, referenced by flows.
    pub id: String,
    /// Human-readable name; may be empty.
    pub name: String,
    pub kind: ComponentKind,
    /// Per-component override of the model's knowledge level, if any.
    pub knowledge_level: Option<KnowledgeLevel>,
    /// Declared metadata, keyed by catalog parameter id.
    pub params: BTreeMap<String, ParamValue>,
}

impl Component {
    pub fn param(&self, id: &str) -> Option<&ParamValue> {
        self.params.get(id)
    }
}

/// A directed data flow between two components.
#[derive(Debug, Clone, PartialEq)]
pub struct DataFlow {
    /// Unique id.
    pub id: String,
    /// Id of the sending component.
    pub source: String,
    /// Id of the receiving component.
    pub destination: String,
    pub connection_type: ConnectionType,
    /// Protocol carried on the flow (e.g. "mqtt").
    pub protocol: Option<String>,
    pub protocol_version: Option<String>,
    pub cipher_suite: Option<String>,
    pub key_length_bits: Option<u32>,
    pub encryption: Option<bool>,
    pub data_integrity: Option<bool>,
    pub authentication: Option<bool>,
    pub input_sanitization: Option<bool>,
}

impl DataFlow {
    /// Views the flow as a bag of catalog parameters.
    ///
    /// Flows are scored and rule-matched as network-protocol
    /// pseudo-components; this maps the typed flow fields onto the catalog
    /// parameter ids they correspond to. Fields with no catalog counterpart
    /// (protocol name, cipher suite, key length) are not exposed here.
    pub fn param(&self, id: &str) -> Option<ParamValue> {
        match id {
            "connection_type" => Some(ParamValue::Str(self.connection_type.as_str().to_string())),
            "protocol_version" => self.protocol_version.clone().map(ParamValue::Str),
            "encryption" => self.encryption.map(ParamValue::Bool),
            "data_integrity" => self.data_integrity.map(ParamValue::Bool),
            "authentication" => self.authentication.map(ParamValue::Bool),
            "input_sanitization" => self.input_sanitization.map(ParamValue::Bool),
            _ => None,
        }
    }
}

/// A complete system description: components plus the flows between them.
#[derive(Debug, Clone, Default)]
pub struct SystemModel {
    pub schema_version: String,
    /// Model name; may be empty.
    pub name: String,
    /// Knowledge level assumed for analyses unless overridden per component.
    pub knowledge_level: KnowledgeLevel,
    pub components: Vec<Component>,
    pub flows: Vec<DataFlow>,
}

impl SystemModel {
    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn flow(&self, id: &str) -> Option<&DataFlow> {
        self.flows.iter().find(|f| f.id == id)
    }

    /// Flows that start or end at the given component.
    pub fn incident_flows<'a>(
        &'a self,
        component_id: &'a str,
    ) -> impl Iterator<Item = &'a DataFlow> {
        self.flows
            .iter()
            .filter(move |f| f.source == component_id || f.destination == component_id)
    }

    /// Components sorted by id (canonical order).
    pub fn sorted_components(&self) -> Vec<&Component> {
        let mut v: Vec<&Component> = self.components.iter().collect();
        v.sort_by(|a, b| a.id.cmp(&b.id));
        v
    }

    /// Flows sorted by id (canonical order).
    pub fn sorted_flows(&self) -> Vec<&DataFlow> {
        let mut v: Vec<&DataFlow> = self.flows.iter().collect();
        v.sort_by(|a, b| a.id.cmp(&b.id));
        v
    }
}

// Models are equal up to reordering of their component and flow lists: the
// canonical serialized form sorts both by id, so equality must not depend on
// declaration order either.
impl PartialEq for SystemModel {
    fn eq(&self, other: &Self) -> bool {
        self.schema_version == other.schema_version
            && self.name == other.name
            && self.knowledge_level == other.knowledge_level
            && self.sorted_components() == other.sorted_components()
            && self.sorted_flows() == other.sorted_flows()
    }
}
