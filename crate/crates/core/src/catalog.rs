//! The parameter catalog: which metadata parameters exist, what shape their
//! values take, which component kinds they apply to, and how observable they
//! are to an outside attacker.
//!
//! The built-in catalog ships 28 core parameters spanning five categories
//! (network, hardware, software/OS, security, performance) plus four
//! extension parameters (`host_names`, `network_address`, `web_urls`,
//! `open_ports`) that exist only because pentest tooling needs them as
//! inputs. Extensions carry `extension: true`.
//!
//! Priorities default to Medium for every built-in entry; deployments that
//! know better can load an adjusted catalog file instead.

use crate::kind::{AliasMap, CanonicalKind, ComponentKind};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Grouping of catalog parameters by the aspect of a system they describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    NetworkProperties,
    HardwareProperties,
    SoftwareOsProperties,
    SecurityProperties,
    PerformanceProperties,
}

impl Category {
    /// All categories, in catalog row order.
    pub const ALL: [Category; 5] = [
        Category::NetworkProperties,
        Category::HardwareProperties,
        Category::SoftwareOsProperties,
        Category::SecurityProperties,
        Category::PerformanceProperties,
    ];
}

/// Relative importance of a parameter when scoring completeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Priority {
    Low,
    Medium,
    High,
}

impl Priority {
    /// Completeness weight: Low=1, Medium=2, High=3.
    pub fn weight(&self) -> u32 {
        match self {
            Priority::Low => 1,
            Priority::Medium => 2,
            Priority::High => 3,
        }
    }
}

/// How much access an attacker needs before a parameter becomes visible.
///
/// Drives knowledge-level redaction: black-box testers see only `Public`
/// parameters, grey-box testers additionally see `NetworkObservable` ones,
/// and white-box testers see everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observability {
    /// Evident to anyone near the system (e.g. whether a link is wireless).
    Public,
    /// Discoverable by network-level reconnaissance and scanning.
    NetworkObservable,
    /// Requires insider or white-box access.
    Internal,
}

/// Expected shape of a parameter's value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ValueShape {
    Boolean,
    String,
    StringList,
    Number {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<String>,
    },
}

impl fmt::Display for ValueShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueShape::Boolean => f.write_str("boolean"),
            ValueShape::String => f.write_str("string"),
            ValueShape::StringList => f.write_str("string list"),
            ValueShape::Number { unit: Some(u) } => write!(f, "number ({u})"),
            ValueShape::Number { unit: None } => f.write_str("number"),
        }
    }
}

/// One catalog entry: a parameter, its shape, and where it applies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterDef {
    /// Stable machine name used as the key in component parameter maps.
    pub id: String,
    /// Human-readable display name.
    pub name: String,
    pub category: Category,
    pub description: String,
    /// Canonical kinds whose matrix cell is checked for this parameter.
    pub applicability: BTreeSet<CanonicalKind>,
    pub shape: ValueShape,
    pub priority: Priority,
    pub observability: Observability,
    /// True for parameters added beyond the core table to feed pentest tooling.
    #[serde(default)]
    pub extension: bool,
}

/// Errors raised by catalog lookup and catalog-file loading.
#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown parameter id `{0}`")]
    UnknownParameter(String),
    #[error("duplicate parameter id `{0}` in catalog")]
    DuplicateParameter(String),
    #[error("parameter `{0}` applies to no component kind")]
    EmptyApplicability(String),
    #[error("malformed catalog document: {0}")]
    Malformed(String),
}

/// The full parameter table plus alias-kind resolution targets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterCatalog {
    /// Version tag identifying the catalog revision.
    pub version: String,
    /// Where the two alias component kinds resolve for matrix lookups.
    #[serde(default)]
    pub aliases: AliasMap,
    /// Ordered parameter entries; core table first, extensions last.
    pub parameters: Vec<ParameterDef>,
}

impl ParameterCatalog {
    /// Looks up a parameter by id.
    pub fn get(&self, id: &str) -> Option<&ParameterDef> {
        self.parameters.iter().find(|p| p.id == id)
    }

    /// Looks up a parameter by id, failing for unknown ids.
    pub fn require(&self, id: &str) -> Result<&ParameterDef, CatalogError> {
        self.get(id)
            .ok_or_else(|| CatalogError::UnknownParameter(id.to_string()))
    }

    /// True iff the matrix cell for (parameter, kind) is checked.
    ///
    /// Alias kinds resolve to their canonical kind first. Unknown parameter
    /// ids are a lookup error, not `false`.
    pub fn is_applicable(&self, param_id: &str, kind: ComponentKind) -> Result<bool, CatalogError> {
        let def = self.require(param_id)?;
        Ok(def.applicability.contains(&kind.resolve(&self.aliases)))
    }

    /// Parameters applicable to the given kind (alias kinds resolve first).
    pub fn applicable_to(&self, kind: ComponentKind) -> impl Iterator<Item = &ParameterDef> {
        let canonical = kind.resolve(&self.aliases);
        self.parameters
            .iter()
            .filter(move |p| p.applicability.contains(&canonical))
    }

    /// Core (non-extension) entries, in table order.
    pub fn table_entries(&self) -> impl Iterator<Item = &ParameterDef> {
        self.parameters.iter().filter(|p| !p.extension)
    }

    /// Checks structural invariants: unique ids, non-empty applicability.
    pub fn check(&self) -> Result<(), CatalogError> {
        let mut seen = BTreeSet::new();
        for p in &self.parameters {
            if !seen.insert(p.id.as_str()) {
                return Err(CatalogError::DuplicateParameter(p.id.clone()));
            }
            if p.applicability.is_empty() {
                return Err(CatalogError::EmptyApplicability(p.id.clone()));
            }
        }
        Ok(())
    }

    /// Loads a catalog from its JSON document form and checks invariants.
    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let catalog: ParameterCatalog =
            serde_json::from_str(text).map_err(|e| CatalogError::Malformed(e.to_string()))?;
        catalog.check()?;
        Ok(catalog)
    }

    /// Serializes the catalog to its JSON document form.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("catalog serializes");
        text.push('\n');
        text
    }
}

/// Returns the built-in catalog: 28 core parameters plus 4 extensions.
pub fn parameter_catalog() -> ParameterCatalog {
    use CanonicalKind::*;

    // Shared applicability sets. `NODES` covers everything that is a host in
    // its own right (device, gateway, cloud, back-end) as opposed to a
    // network or a UI.
    const NODES: [CanonicalKind; 4] =
        [SmartDeviceSensor, Gateway, CloudServer, SmartServiceBackend];
    const SERVERS: [CanonicalKind; 3] = [Gateway, CloudServer, SmartServiceBackend];
    const SOFTWARE_HOSTS: [CanonicalKind; 4] = [
        SmartDeviceSensor,
        CloudServer,
        SmartServiceBackend,
        UserInterface,
    ];
    const EVERY: [CanonicalKind; 6] = CanonicalKind::ALL;
    const LINKS: [CanonicalKind; 3] = [NetworkProtocol, Gateway, CloudServer];

    fn def(
        id: &str,
        name: &str,
        category: Category,
        applicability: &[CanonicalKind],
        shape: ValueShape,
        observability: Observability,
        description: &str,
    ) -> ParameterDef {
        ParameterDef {
            id: id.to_string(),
            name: name.to_string(),
            category,
            description: description.to_string(),
            applicability: applicability.iter().copied().collect(),
            shape,
            priority: Priority::Medium,
            observability,
            extension: false,
        }
    }

    fn number(unit: &str) -> ValueShape {
        ValueShape::Number {
            unit: Some(unit.to_string()),
        }
    }

    use Category::*;
    use Observability::*;
    use ValueShape::{Boolean, String as Str, StringList};

    let mut parameters = vec![
        // Network properties.
        def(
            "hardware_interface",
            "Hardware interface",
            NetworkProperties,
            &NODES,
            StringList,
            NetworkObservable,
            "Physical and radio interfaces the node exposes (Ethernet, USB, serial, 802.15.4, ...).",
        ),
        def(
            "connection_type",
            "Connection type",
            NetworkProperties,
            &[SmartDeviceSensor, NetworkProtocol, Gateway, CloudServer, SmartServiceBackend],
            Str,
            Public,
            "Whether the attachment or link is wired, wireless, or purely logical.",
        ),
        def(
            "ip_address",
            "IP address",
            NetworkProperties,
            &NODES,
            StringList,
            NetworkObservable,
            "IPv4/IPv6 addresses assigned to the node.",
        ),
        def(
            "mac_address",
            "MAC address",
            NetworkProperties,
            &NODES,
            StringList,
            NetworkObservable,
            "Link-layer hardware addresses of the node's interfaces.",
        ),
        def(
            "network_protocols",
            "Network protocols",
            NetworkProperties,
            &NODES,
            StringList,
            NetworkObservable,
            "Network and application protocols the node speaks (MQTT, CoAP, HTTP, ...).",
        ),
        def(
            "protocol_version",
            "Protocol version",
            NetworkProperties,
            &[SmartDeviceSensor, NetworkProtocol, Gateway],
            Str,
            NetworkObservable,
            "Version of the protocol in use on the link or in the node's stack.",
        ),
        def(
            "pairing_process",
            "Pairing process",
            NetworkProperties,
            &NODES,
            Str,
            Internal,
            "How the node is enrolled or paired with its peers or controller.",
        ),
        // Hardware properties.
        def(
            "secure_key_store",
            "Secure key store",
            HardwareProperties,
            &NODES,
            Boolean,
            Internal,
            "Whether cryptographic keys live in a dedicated secure store or element.",
        ),
        def(
            "data_storage",
            "Data storage",
            HardwareProperties,
            &NODES,
            Boolean,
            Internal,
            "Whether the node persists data locally.",
        ),
        def(
            "power_consumption",
            "Power consumption",
            HardwareProperties,
            &[SmartDeviceSensor],
            number("watts"),
            Internal,
            "Electrical power the device draws, in watts.",
        ),
        def(
            "electromagnetic_emission",
            "Electromagnetic emission",
            HardwareProperties,
            &[SmartDeviceSensor],
            Str,
            Internal,
            "Observable electromagnetic side-channel emissions of the device.",
        ),
        // Software / OS properties.
        def(
            "operating_system",
            "Operating system",
            SoftwareOsProperties,
            &NODES,
            Str,
            Internal,
            "Operating system the node runs, including distribution or build.",
        ),
        def(
            "firmware_version",
            "Firmware version",
            SoftwareOsProperties,
            &[SmartDeviceSensor, Gateway],
            Str,
            Internal,
            "Firmware revision installed on the device.",
        ),
        def(
            "software_apis",
            "Software APIs",
            SoftwareOsProperties,
            &SOFTWARE_HOSTS,
            StringList,
            Internal,
            "Programmatic interfaces the software stack exposes to other systems.",
        ),
        def(
            "software_versions",
            "Software versions",
            SoftwareOsProperties,
            &NODES,
            StringList,
            Internal,
            "Versions of notable software packages and services on the node.",
        ),
        def(
            "interfaces",
            "Interfaces",
            SoftwareOsProperties,
            &SOFTWARE_HOSTS,
            StringList,
            Internal,
            "Access interfaces offered to humans or machines (web console, SSH, REST, ...).",
        ),
        def(
            "administration",
            "Administration",
            SoftwareOsProperties,
            &EVERY,
            Str,
            Internal,
            "How the node is administered and by whom (local, remote management, vendor).",
        ),
        def(
            "update_process",
            "Update process",
            SoftwareOsProperties,
            &EVERY,
            Str,
            Internal,
            "How software and firmware updates are delivered and applied.",
        ),
        def(
            "reset_functionality",
            "Reset functionality",
            SoftwareOsProperties,
            &NODES,
            Str,
            Internal,
            "What a factory or soft reset does and who can trigger it.",
        ),
        def(
            "shared_resources",
            "Shared resources",
            SoftwareOsProperties,
            &SERVERS,
            Boolean,
            Internal,
            "Whether compute or storage is shared with other users or processes.",
        ),
        // Security properties.
        def(
            "encryption",
            "Encryption",
            SecurityProperties,
            &[NetworkProtocol],
            Boolean,
            Internal,
            "Whether traffic on the channel is encrypted end to end.",
        ),
        def(
            "data_integrity",
            "Data integrity",
            SecurityProperties,
            &[NetworkProtocol],
            Boolean,
            Internal,
            "Whether messages are integrity-protected against modification in transit.",
        ),
        def(
            "authentication",
            "Authentication",
            SecurityProperties,
            &[NetworkProtocol, UserInterface],
            Boolean,
            Internal,
            "Whether peers or users must authenticate before interacting.",
        ),
        def(
            "input_sanitization",
            "Input sanitization",
            SecurityProperties,
            &[NetworkProtocol, UserInterface],
            Boolean,
            Internal,
            "Whether inbound data is validated before being forwarded to back-end systems.",
        ),
        // Performance properties.
        def(
            "bandwidth",
            "Bandwidth",
            PerformanceProperties,
            &LINKS,
            number("bits/second"),
            Internal,
            "Nominal capacity of the link, in bits per second.",
        ),
        def(
            "throughput",
            "Throughput",
            PerformanceProperties,
            &LINKS,
            number("bits/second"),
            Internal,
            "Sustained data rate actually achieved, in bits per second.",
        ),
        def(
            "latency",
            "Latency",
            PerformanceProperties,
            &LINKS,
            number("milliseconds"),
            Internal,
            "Typical end-to-end delay, in milliseconds.",
        ),
        def(
            "error_rate",
            "Error rate",
            PerformanceProperties,
            &LINKS,
            number("percent"),
            Internal,
            "Fraction of transmissions that fail or arrive corrupted, in percent.",
        ),
    ];

    // Extension parameters: not part of the core table, required as inputs by
    // reconnaissance and scanning tooling.
    let mut ext = |id: &str, name: &str, applicability: &[CanonicalKind], description: &str| {
        let mut d = def(
            id,
            name,
            NetworkProperties,
            applicability,
            StringList,
            NetworkObservable,
            description,
        );
        d.extension = true;
        parameters.push(d);
    };
    ext(
        "host_names",
        "Host names",
        &NODES,
        "DNS or mDNS names under which the node is reachable.",
    );
    ext(
        "network_address",
        "Network address",
        &NODES,
        "Network ranges the node occupies, in CIDR notation.",
    );
    ext(
        "web_urls",
        "Web URLs",
        &[CloudServer, SmartServiceBackend, UserInterface],
        "HTTP(S) endpoints served by the node.",
    );
    ext(
        "open_ports",
        "Open ports",
        &NODES,
        "Transport-layer ports known to accept connections.",
    );

    ParameterCatalog {
        version: "builtin-1".to_string(),
        aliases: AliasMap::default(),
        parameters,
    }
}
