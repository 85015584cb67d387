//! Component taxonomy for IoT/IIoT system models.
//!
//! Six canonical kinds carry applicability columns in the parameter matrix.
//! Two additional alias kinds (analysis/actuator nodes and data-analytics
//! nodes) have no column of their own and resolve to a canonical kind
//! through the catalog's alias map before any matrix lookup.

use serde::{Deserialize, Serialize};
use std::fmt;

/// The six component kinds that carry a column in the applicability matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalKind {
    /// End devices and sensors: thermostats, pressure sensors, RFID readers.
    SmartDeviceSensor,
    /// Networks and protocols interconnecting devices (Bluetooth LE, ZigBee, MQTT, ...).
    NetworkProtocol,
    /// Gateways bridging device networks to servers, translating protocols.
    Gateway,
    /// Cloud and server infrastructure providing storage, processing, analytics.
    CloudServer,
    /// Smart services and back-end systems inside the company network.
    SmartServiceBackend,
    /// User interfaces and M2M APIs through which the system is accessed.
    UserInterface,
}

impl CanonicalKind {
    /// All six canonical kinds, in matrix column order.
    pub const ALL: [CanonicalKind; 6] = [
        CanonicalKind::SmartDeviceSensor,
        CanonicalKind::NetworkProtocol,
        CanonicalKind::Gateway,
        CanonicalKind::CloudServer,
        CanonicalKind::SmartServiceBackend,
        CanonicalKind::UserInterface,
    ];

    /// Stable machine name, as used in model documents.
    pub fn as_str(&self) -> &'static str {
        match self {
            CanonicalKind::SmartDeviceSensor => "smart_device_sensor",
            CanonicalKind::NetworkProtocol => "network_protocol",
            CanonicalKind::Gateway => "gateway",
            CanonicalKind::CloudServer => "cloud_server",
            CanonicalKind::SmartServiceBackend => "smart_service_backend",
            CanonicalKind::UserInterface => "user_interface",
        }
    }
}

impl fmt::Display for CanonicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A component kind as declared in a model: canonical, or an alias.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    SmartDeviceSensor,
    NetworkProtocol,
    Gateway,
    CloudServer,
    SmartServiceBackend,
    UserInterface,
    /// Analysis and actuator nodes; alias, resolves via the catalog alias map.
    AnalysisActuator,
    /// Big-data / AI / ML analytics nodes; alias, resolves via the catalog alias map.
    DataAnalytics,
}

impl ComponentKind {
    /// All declarable kinds, canonical kinds first.
    pub const ALL: [ComponentKind; 8] = [
        ComponentKind::SmartDeviceSensor,
        ComponentKind::NetworkProtocol,
        ComponentKind::Gateway,
        ComponentKind::CloudServer,
        ComponentKind::SmartServiceBackend,
        ComponentKind::UserInterface,
        ComponentKind::AnalysisActuator,
        ComponentKind::DataAnalytics,
    ];

    /// Stable machine name, as used in model documents.
    pub fn as_str(&self) -> &'static str {
        match self {
            ComponentKind::SmartDeviceSensor => "smart_device_sensor",
            ComponentKind::NetworkProtocol => "network_protocol",
            ComponentKind::Gateway => "gateway",
            ComponentKind::CloudServer => "cloud_server",
            ComponentKind::SmartServiceBackend => "smart_service_backend",
            ComponentKind::UserInterface => "user_interface",
            ComponentKind::AnalysisActuator => "analysis_actuator",
            ComponentKind::DataAnalytics => "data_analytics",
        }
    }

    /// Parses a machine name back into a kind.
    pub fn parse(s: &str) -> Option<ComponentKind> {
        ComponentKind::ALL.into_iter().find(|k| k.as_str() == s)
    }

    /// The canonical kind, if this kind is already canonical.
    pub fn as_canonical(&self) -> Option<CanonicalKind> {
        match self {
            ComponentKind::SmartDeviceSensor => Some(CanonicalKind::SmartDeviceSensor),
            ComponentKind::NetworkProtocol => Some(CanonicalKind::NetworkProtocol),
            ComponentKind::Gateway => Some(CanonicalKind::Gateway),
            ComponentKind::CloudServer => Some(CanonicalKind::CloudServer),
            ComponentKind::SmartServiceBackend => Some(CanonicalKind::SmartServiceBackend),
            ComponentKind::UserInterface => Some(CanonicalKind::UserInterface),
            ComponentKind::AnalysisActuator | ComponentKind::DataAnalytics => None,
        }
    }

    /// Resolves this kind to a canonical kind using the given alias map.
    pub fn resolve(&self, aliases: &AliasMap) -> CanonicalKind {
        match self {
            ComponentKind::AnalysisActuator => aliases.analysis_actuator,
            ComponentKind::DataAnalytics => aliases.data_analytics,
            other => other.as_canonical().expect("non-alias kinds are canonical"),
        }
    }
}

impl From<CanonicalKind> for ComponentKind {
    fn from(k: CanonicalKind) -> Self {
        match k {
            CanonicalKind::SmartDeviceSensor => ComponentKind::SmartDeviceSensor,
            CanonicalKind::NetworkProtocol => ComponentKind::NetworkProtocol,
            CanonicalKind::Gateway => ComponentKind::Gateway,
            CanonicalKind::CloudServer => ComponentKind::CloudServer,
            CanonicalKind::SmartServiceBackend => ComponentKind::SmartServiceBackend,
            CanonicalKind::UserInterface => ComponentKind::UserInterface,
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Resolution targets for the two alias kinds.
///
/// Analysis/actuator nodes behave like smart devices; analytics nodes behave
/// like back-end services. Both targets are configurable through the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AliasMap {
    pub analysis_actuator: CanonicalKind,
    pub data_analytics: CanonicalKind,
}

impl Default for AliasMap {
    fn default() -> Self {
        AliasMap {
            analysis_actuator: CanonicalKind::SmartDeviceSensor,
            data_analytics: CanonicalKind::SmartServiceBackend,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alias_resolution_is_total() {
        let aliases = AliasMap::default();
        for kind in ComponentKind::ALL {
            // Every declarable kind resolves to exactly one canonical kind.
            let canonical = kind.resolve(&aliases);
            assert!(CanonicalKind::ALL.contains(&canonical));
        }
    }

    #[test]
    fn default_aliases() {
        let aliases = AliasMap::default();
        assert_eq!(
            ComponentKind::AnalysisActuator.resolve(&aliases),
            CanonicalKind::SmartDeviceSensor
        );
        assert_eq!(
            ComponentKind::DataAnalytics.resolve(&aliases),
            CanonicalKind::SmartServiceBackend
        );
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in ComponentKind::ALL {
            assert_eq!(ComponentKind::parse(kind.as_str()), Some(kind));
            let json = serde_json::to_string(&kind).unwrap();
            assert_eq!(json, format!("\"{}\"", kind.as_str()));
        }
        assert_eq!(ComponentKind::parse("quantum"), None);
    }
}
