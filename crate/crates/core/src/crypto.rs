//! Cryptographic configuration audit for data flows.
//!
//! Flows declare the protocol version, cipher suite, and key length they use;
//! this module checks those declarations against a policy of deprecated
//! protocols and broken primitives. Absent fields yield no findings here —
//! completeness scoring is responsible for flagging missing metadata.

use crate::model::{Severity, SystemModel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Deny/warn lists and thresholds for the crypto audit.
///
/// Protocol entries match exactly (trimmed, ASCII-case-insensitive); primitive
/// entries match as substrings of the cipher-suite string. The `software_deny`
/// list feeds the threat rule that flags end-of-life operating systems and
/// software, keeping all deny-listing in one place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CryptoPolicy {
    /// Version tag identifying the policy revision.
    pub version: String,
    /// Protocol versions that must not be used (exact match).
    pub deny_protocols: Vec<String>,
    /// Protocol versions that are allowed but flagged (exact match).
    #[serde(default)]
    pub warn_protocols: Vec<String>,
    /// Primitive identifiers that must not appear in cipher suites (substring
    /// match with a digit-boundary rule, see [`matches_primitive`]).
    pub deny_primitives: Vec<String>,
    /// Primitive identifiers that are allowed but flagged.
    #[serde(default)]
    pub warn_primitives: Vec<String>,
    /// Smallest acceptable key length on a flow.
    pub min_key_length_bits: u32,
    /// Operating-system / software identifiers considered end-of-life.
    #[serde(default)]
    pub software_deny: Vec<String>,
    /// Why each entry is listed (public attack or deprecation notice).
    #[serde(default)]
    pub notes: BTreeMap<String, String>,
}

/// Errors from policy loading and invariant checks.
#[derive(Debug, Error)]
pub enum PolicyError {
    #[error("malformed policy document: {0}")]
    Malformed(String),
    #[error("`{0}` appears in both a deny list and a warn list")]
    OverlappingLists(String),
    #[error("minimum key length must be positive")]
    ZeroMinimumKeyLength,
}

impl CryptoPolicy {
    /// Checks structural invariants: disjoint deny/warn lists, positive
    /// minimum key length.
    pub fn check(&self) -> Result<(), PolicyError> {
        if self.min_key_length_bits == 0 {
            return Err(PolicyError::ZeroMinimumKeyLength);
        }
        for (denied, warned) in [
            (&self.deny_protocols, &self.warn_protocols),
            (&self.deny_primitives, &self.warn_primitives),
        ] {
            for entry in denied {
                if warned.iter().any(|w| w.eq_ignore_ascii_case(entry)) {
                    return Err(PolicyError::OverlappingLists(entry.clone()));
                }
            }
        }
        Ok(())
    }

    /// Loads a policy from its JSON document form and checks invariants.
    pub fn from_json(text: &str) -> Result<Self, PolicyError> {
        let policy: CryptoPolicy =
            serde_json::from_str(text).map_err(|e| PolicyError::Malformed(e.to_string()))?;
        policy.check()?;
        Ok(policy)
    }

    /// Serializes the policy to its JSON document form.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("policy serializes");
        text.push('\n');
        text
    }
}

/// Returns the built-in policy.
///
/// Protocol versions below TLS 1.2 are denied; the primitive deny list covers
/// identifiers with published practical breaks; 128 bits is the minimum key
/// length. The warn lists start empty — they are hooks for deployments that
/// want softer flagging.
pub fn default_policy() -> CryptoPolicy {
    let notes: BTreeMap<String, String> = [
        ("SSLv2", "obsolete for decades; enables protocol downgrade and DROWN-style cross-protocol attacks"),
        ("SSLv3", "padding-oracle attack on CBC modes (POODLE) is practical"),
        ("TLS 1.0", "formally deprecated by RFC 8996; lacks modern AEAD protection"),
        ("TLS 1.1", "formally deprecated by RFC 8996"),
        ("SHA-1", "chosen-prefix collisions are practical; unfit for signatures"),
        ("SHA1", "chosen-prefix collisions are practical; unfit for signatures"),
        ("MD5", "collisions computable in seconds on commodity hardware"),
        ("OCB2", "forgery and plaintext-recovery attacks published against the mode"),
        ("RC4", "exploitable keystream biases; prohibited for TLS"),
        ("DES", "56-bit keyspace is brute-forceable"),
        ("3DES", "64-bit block size enables Sweet32 birthday attacks"),
        ("min_key_length_bits", "128-bit keys are the accepted floor for symmetric strength"),
        ("software_deny", "end-of-life systems no longer receive security patches"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect();

    CryptoPolicy {
        version: "builtin-1".to_string(),
        deny_protocols: ["SSLv2", "SSLv3", "TLS 1.0", "TLS 1.1"]
            .map(String::from)
            .to_vec(),
        warn_protocols: Vec::new(),
        deny_primitives: ["SHA-1", "SHA1", "MD5", "OCB2", "RC4", "DES", "3DES"]
            .map(String::from)
            .to_vec(),
        warn_primitives: Vec::new(),
        min_key_length_bits: 128,
        software_deny: [
            "Windows 2000",
            "Windows XP",
            "Windows Vista",
            "Windows Server 2003",
            "Android 4",
        ]
        .map(String::from)
        .to_vec(),
        notes,
    }
}

/// Which policy list a finding came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CryptoFindingClass {
    DeprecatedProtocol,
    BrokenPrimitive,
    WeakKey,
    /// Warn-list hit: allowed but flagged.
    Misconfiguration,
}

impl CryptoFindingClass {
    /// Stable machine name, as used in finding documents.
    pub fn as_str(&self) -> &'static str {
        match self {
            CryptoFindingClass::DeprecatedProtocol => "deprecated_protocol",
            CryptoFindingClass::BrokenPrimitive => "broken_primitive",
            CryptoFindingClass::WeakKey => "weak_key",
            CryptoFindingClass::Misconfiguration => "misconfiguration",
        }
    }
}

impl std::fmt::Display for CryptoFindingClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One policy violation on one flow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CryptoFinding {
    pub flow_id: String,
    pub class: CryptoFindingClass,
    /// The offending value as it appears on the flow.
    pub matched: String,
    /// The policy entry (or threshold) that matched it.
    pub policy_entry: String,
    pub severity: Severity,
}

/// Case-insensitive substring match with a digit-boundary rule: an entry that
/// ends in a digit only matches when the next character is not another digit,
/// so "SHA1" does not fire inside "SHA256"-style names while "RC4-SHA" still
/// matches "RC4".
pub fn matches_primitive(haystack: &str, entry: &str) -> bool {
    let haystack = haystack.to_ascii_lowercase();
    let entry = entry.trim().to_ascii_lowercase();
    if entry.is_empty() {
        return false;
    }
    let boundary_guard = entry.as_bytes()[entry.len() - 1].is_ascii_digit();
    let h = haystack.as_bytes();
    let e = entry.as_bytes();
    if e.len() > h.len() {
        return false;
    }
    for start in 0..=(h.len() - e.len()) {
        if &h[start..start + e.len()] != e {
            continue;
        }
        if !boundary_guard {
            return true;
        }
        match h.get(start + e.len()) {
            None => return true,
            Some(next) if !next.is_ascii_digit() => return true,
            _ => {}
        }
    }
    false
}

fn protocol_matches(version: &str, entry: &str) -> bool {
    version.trim().eq_ignore_ascii_case(entry.trim())
}

/// Audits every flow's crypto declarations against the policy.
///
/// Unset fields are skipped entirely; one finding is emitted per matched
/// policy entry. Output is sorted by (flow id, class, policy entry).
pub fn analyze_crypto(model: &SystemModel, policy: &CryptoPolicy) -> Vec<CryptoFinding> {
    let mut findings = Vec::new();

    for flow in &model.flows {
        if let Some(version) = &flow.protocol_version {
            for entry in &policy.deny_protocols {
                if protocol_matches(version, entry) {
                    findings.push(CryptoFinding {
                        flow_id: flow.id.clone(),
                        class: CryptoFindingClass::DeprecatedProtocol,
                        matched: version.clone(),
                        policy_entry: entry.clone(),
                        severity: Severity::High,
                    });
                }
            }
            for entry in &policy.warn_protocols {
                if protocol_matches(version, entry) {
                    findings.push(CryptoFinding {
                        flow_id: flow.id.clone(),
                        class: CryptoFindingClass::Misconfiguration,
                        matched: version.clone(),
                        policy_entry: entry.clone(),
                        severity: Severity::Low,
                    });
                }
            }
        }

        if let Some(suite) = &flow.cipher_suite {
            for entry in &policy.deny_primitives {
                if matches_primitive(suite, entry) {
                    findings.push(CryptoFinding {
                        flow_id: flow.id.clone(),
                        class: CryptoFindingClass::BrokenPrimitive,
                        matched: suite.clone(),
                        policy_entry: entry.clone(),
                        severity: Severity::High,
                    });
                }
            }
            for entry in &policy.warn_primitives {
                if matches_primitive(suite, entry) {
                    findings.push(CryptoFinding {
                        flow_id: flow.id.clone(),
                        class: CryptoFindingClass::Misconfiguration,
                        matched: suite.clone(),
                        policy_entry: entry.clone(),
                        severity: Severity::Low,
                    });
                }
            }
        }

        if let Some(bits) = flow.key_length_bits {
            if bits < policy.min_key_length_bits {
                findings.push(CryptoFinding {
                    flow_id: flow.id.clone(),
                    class: CryptoFindingClass::WeakKey,
                    matched: format!("{bits}"),
                    policy_entry: format!("minimum {} bits", policy.min_key_length_bits),
                    severity: Severity::Medium,
                });
            }
        }
    }

    findings.sort_by(|a, b| {
        (&a.flow_id, a.class, &a.policy_entry).cmp(&(&b.flow_id, b.class, &b.policy_entry))
    });
    findings
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kind::ComponentKind;
    use crate::model::{Component, ConnectionType, DataFlow, KnowledgeLevel};
    use std::collections::BTreeMap;

    fn flow_with(
        protocol_version: Option<&str>,
        cipher_suite: Option<&str>,
        key_length_bits: Option<u32>,
    ) -> SystemModel {
        let mk = |id: &str, kind| Component {
            id: id.to_string(),
            name: String::new(),
            kind,
            knowledge_level: None,
            params: BTreeMap::new(),
        };
        SystemModel {
            schema_version: "1".into(),
            name: "m".into(),
            knowledge_level: KnowledgeLevel::WhiteBox,
            components: vec![
                mk("a", ComponentKind::Gateway),
                mk("b", ComponentKind::CloudServer),
            ],
            flows: vec![DataFlow {
                id: "f1".into(),
                source: "a".into(),
                destination: "b".into(),
                connection_type: ConnectionType::Wired,
                protocol: None,
                protocol_version: protocol_version.map(String::from),
                cipher_suite: cipher_suite.map(String::from),
                key_length_bits,
                encryption: None,
                data_integrity: None,
                authentication: None,
                input_sanitization: None,
            }],
        }
    }

    #[test]
    fn default_policy_invariants() {
        let policy = default_policy();
        policy.check().unwrap();
        assert!(policy.deny_protocols.contains(&"SSLv3".to_string()));
        assert_eq!(policy.min_key_length_bits, 128);
        let round = CryptoPolicy::from_json(&policy.to_json()).unwrap();
        assert_eq!(round, policy);
    }

    #[test]
    fn reference_configuration_is_clean() {
        let m = flow_with(Some("TLS 1.3"), Some("AES-GCM"), Some(128));
        assert!(analyze_crypto(&m, &default_policy()).is_empty());
    }

    #[test]
    fn deprecated_protocol_flagged() {
        let m = flow_with(Some("SSLv3"), None, None);
        let findings = analyze_crypto(&m, &default_policy());
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].class, CryptoFindingClass::DeprecatedProtocol);
        assert_eq!(findings[0].severity, Severity::High);
        assert_eq!(findings[0].policy_entry, "SSLv3");

        // Exact matching: TLS 1.3 is not TLS 1.0/1.1.
        let ok = flow_with(Some("tls 1.0"), None, None);
        assert_eq!(analyze_crypto(&ok, &default_policy()).len(), 1);
    }

    #[test]
    fn broken_primitive_and_weak_key() {
        let m = flow_with(None, Some("ECDHE-RSA-SHA1"), Some(112));
        let findings = analyze_crypto(&m, &default_policy());
        let classes: Vec<CryptoFindingClass> = findings.iter().map(|f| f.class).collect();
        assert_eq!(
            classes,
            vec![
                CryptoFindingClass::BrokenPrimitive,
                CryptoFindingClass::WeakKey
            ]
        );
        assert_eq!(findings[0].policy_entry, "SHA1");
        assert_eq!(findings[1].matched, "112");
    }

    #[test]
    fn digit_boundary_spares_sha256_family() {
        assert!(!matches_primitive("TLS_AES_128_GCM_SHA256", "SHA1"));
        assert!(!matches_primitive("TLS_AES_128_GCM_SHA256", "SHA-1"));
        assert!(!matches_primitive("ECDHE-RSA-AES128-SHA", "SHA-1"));
        assert!(matches_primitive("TLS_RSA_WITH_RC4_128_SHA", "RC4"));
        assert!(!matches_primitive("HYPOTHETICAL-RC41", "RC4"));
        assert!(matches_primitive("DES-CBC3-SHA", "DES"));
        assert!(!matches_primitive("des-cbc3-sha", "3DES"));
        assert!(matches_primitive("ECDHE-3DES-CBC", "3DES"));
        // Case-insensitive both ways.
        assert!(matches_primitive("ecdhe-rsa-sha1", "SHA1"));
        assert!(matches_primitive("ECDHE-RSA-MD5", "md5"));
        let m = flow_with(None, Some("AES_128_GCM_SHA256"), None);
        assert!(analyze_crypto(&m, &default_policy()).is_empty());
    }

    #[test]
    fn unset_fields_yield_nothing() {
        let m = flow_with(None, None, None);
        assert!(analyze_crypto(&m, &default_policy()).is_empty());
    }

    #[test]
    fn key_length_threshold_is_strict() {
        let at = flow_with(None, None, Some(128));
        assert!(analyze_crypto(&at, &default_policy()).is_empty());
        let below = flow_with(None, None, Some(127));
        let findings = analyze_crypto(&below, &default_policy());
        assert_eq!(findings[0].class, CryptoFindingClass::WeakKey);
        assert_eq!(findings[0].severity, Severity::Medium);
    }

    #[test]
    fn warn_lists_produce_low_misconfigurations() {
        let mut policy = default_policy();
        policy.warn_protocols.push("TLS 1.2".into());
        policy.check().unwrap();
        let m = flow_with(Some("TLS 1.2"), None, None);
        let findings = analyze_crypto(&m, &policy);
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].class, CryptoFindingClass::Misconfiguration);
        assert_eq!(findings[0].severity, Severity::Low);
    }

    #[test]
    fn overlapping_lists_rejected() {
        let mut policy = default_policy();
        policy.warn_primitives.push("md5".into());
        assert!(matches!(
            policy.check(),
            Err(PolicyError::OverlappingLists(_))
        ));
        policy.warn_primitives.clear();
        policy.min_key_length_bits = 0;
        assert!(matches!(
            policy.check(),
            Err(PolicyError::ZeroMinimumKeyLength)
        ));
    }

    #[test]
    fn removing_deny_entries_never_adds_findings() {
        let m = flow_with(Some("SSLv3"), Some("RC4-MD5"), Some(64));
        let full = analyze_crypto(&m, &default_policy());
        let mut reduced_policy = default_policy();
        reduced_policy.deny_primitives.retain(|e| e != "RC4");
        let reduced = analyze_crypto(&m, &reduced_policy);
        assert!(reduced.len() < full.len());
        for finding in &reduced {
            assert!(full.contains(finding));
        }
    }
}
