//! Parsing and canonical serialization of model documents.
//!
//! The interchange format is a single UTF-8 JSON document per model. Parsing
//! is total: any input yields either a structurally valid [`SystemModel`]
//! (possibly with warnings) or a list of located diagnostics, never a panic.
//! Serialization is canonical — stable key order, components and flows sorted
//! by id — so equal models produce byte-identical documents.

use crate::catalog::ParameterCatalog;
use crate::kind::ComponentKind;
use crate::model::{Component, ConnectionType, DataFlow, KnowledgeLevel, ParamValue, SystemModel};
use crate::validate::{validate_model, IssueSeverity};
use serde::de::{Deserializer, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A diagnostic produced while parsing a model document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseDiagnostic {
    pub severity: IssueSeverity,
    /// Slash-separated path into the document ("/components/2/params/foo"),
    /// or "line X column Y" for syntax errors.
    pub location: String,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.severity, self.location, self.message)
    }
}

/// How to treat parameter ids the catalog does not know.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ParseMode {
    /// Unknown parameter ids are errors (catches typos).
    #[default]
    Strict,
    /// Unknown parameter ids are dropped with a warning (forward compatibility).
    Lax,
}

/// A JSON value that preserves object entry order and duplicate keys, so the
/// parser can warn about duplicates instead of silently dropping them.
#[derive(Debug, Clone)]
enum Raw {
    Null,
    Bool(bool),
    Number(f64),
    Str(String),
    Array(Vec<Raw>),
    Object(Vec<(String, Raw)>),
}

impl Raw {
    fn type_name(&self) -> &'static str {
        match self {
            Raw::Null => "null",
            Raw::Bool(_) => "a boolean",
            Raw::Number(_) => "a number",
            Raw::Str(_) => "a string",
            Raw::Array(_) => "an array",
            Raw::Object(_) => "an object",
        }
    }
}

impl<'de> Deserialize<'de> for Raw {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Raw, D::Error> {
        struct RawVisitor;

        impl<'de> Visitor<'de> for RawVisitor {
            type Value = Raw;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("any JSON value")
            }

            fn visit_bool<E>(self, v: bool) -> Result<Raw, E> {
                Ok(Raw::Bool(v))
            }

            fn visit_i64<E>(self, v: i64) -> Result<Raw, E> {
                Ok(Raw::Number(v as f64))
            }

            fn visit_u64<E>(self, v: u64) -> Result<Raw, E> {
                Ok(Raw::Number(v as f64))
            }

            fn visit_f64<E>(self, v: f64) -> Result<Raw, E> {
                Ok(Raw::Number(v))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Raw, E> {
                Ok(Raw::Str(v.to_string()))
            }

            fn visit_string<E>(self, v: String) -> Result<Raw, E> {
                Ok(Raw::Str(v))
            }

            fn visit_unit<E>(self) -> Result<Raw, E> {
                Ok(Raw::Null)
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Raw, A::Error> {
                let mut items = Vec::new();
                while let Some(item) = seq.next_element()? {
                    items.push(item);
                }
                Ok(Raw::Array(items))
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Raw, A::Error> {
                let mut entries = Vec::new();
                while let Some((key, value)) = map.next_entry::<String, Raw>()? {
                    entries.push((key, value));
                }
                Ok(Raw::Object(entries))
            }
        }

        deserializer.deserialize_any(RawVisitor)
    }
}

#[derive(Default)]
struct Diags {
    list: Vec<ParseDiagnostic>,
    errors: usize,
}

impl Diags {
    fn error(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.errors += 1;
        self.list.push(ParseDiagnostic {
            severity: IssueSeverity::Error,
            location: location.into(),
            message: message.into(),
        });
    }

    fn warning(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.list.push(ParseDiagnostic {
            severity: IssueSeverity::Warning,
            location: location.into(),
            message: message.into(),
        });
    }
}

/// Resolves duplicate keys (last value wins, with a warning) and returns the
/// surviving fields in first-occurrence order.
fn dedup_fields<'a>(
    entries: &'a [(String, Raw)],
    pointer: &str,
    diags: &mut Diags,
) -> Vec<(&'a str, &'a Raw)> {
    let mut fields: Vec<(&str, &Raw)> = Vec::with_capacity(entries.len());
    for (key, value) in entries {
        if let Some(slot) = fields.iter_mut().find(|(name, _)| *name == key.as_str()) {
            diags.warning(
                format!("{pointer}/{key}"),
                format!("duplicate key `{key}`; the last value wins"),
            );
            slot.1 = value;
        } else {
            fields.push((key.as_str(), value));
        }
    }
    fields
}

fn get<'a>(fields: &[(&'a str, &'a Raw)], name: &str) -> Option<&'a Raw> {
    fields.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
}

fn warn_unknown_fields(fields: &[(&str, &Raw)], known: &[&str], pointer: &str, diags: &mut Diags) {
    for (key, _) in fields {
        if !known.contains(key) {
            diags.warning(
                format!("{pointer}/{key}"),
                format!("unknown field `{key}` ignored"),
            );
        }
    }
}

/// Required string field; records an error and returns None when absent or
/// mistyped.
fn require_string(
    fields: &[(&str, &Raw)],
    name: &str,
    pointer: &str,
    diags: &mut Diags,
) -> Option<String> {
    match get(fields, name) {
        Some(Raw::Str(s)) => Some(s.clone()),
        Some(other) => {
            diags.error(
                format!("{pointer}/{name}"),
                format!("`{name}` must be a string, got {}", other.type_name()),
            );
            None
        }
        None => {
            diags.error(
                pointer.to_string(),
                format!("missing required field `{name}`"),
            );
            None
        }
    }
}

/// Optional string field; mistyped values record an error and read as absent.
fn optional_string(
    fields: &[(&str, &Raw)],
    name: &str,
    pointer: &str,
    diags: &mut Diags,
) -> Option<String> {
    match get(fields, name) {
        Some(Raw::Str(s)) => Some(s.clone()),
        Some(other) => {
            diags.error(
                format!("{pointer}/{name}"),
                format!("`{name}` must be a string, got {}", other.type_name()),
            );
            None
        }
        None => None,
    }
}

/// Optional boolean field; mistyped values record an error and read as absent.
fn optional_bool(
    fields: &[(&str, &Raw)],
    name: &str,
    pointer: &str,
    diags: &mut Diags,
) -> Option<bool> {
    match get(fields, name) {
        Some(Raw::Bool(b)) => Some(*b),
        Some(other) => {
            diags.error(
                format!("{pointer}/{name}"),
                format!("`{name}` must be a boolean, got {}", other.type_name()),
            );
            None
        }
        None => None,
    }
}

fn parse_level(raw: &Raw, pointer: &str, diags: &mut Diags) -> Option<KnowledgeLevel> {
    match raw {
        Raw::Str(s) => match KnowledgeLevel::parse(s) {
            Some(level) => Some(level),
            None => {
                diags.error(
                    pointer.to_string(),
                    format!(
                        "unknown knowledge level `{s}` (expected \"black\", \"grey\", or \"white\")"
                    ),
                );
                None
            }
        },
        other => {
            diags.error(
                pointer.to_string(),
                format!(
                    "knowledge level must be a string, got {}",
                    other.type_name()
                ),
            );
            None
        }
    }
}

fn parse_param_value(raw: &Raw, pointer: &str, diags: &mut Diags) -> Option<ParamValue> {
    match raw {
        Raw::Bool(b) => Some(ParamValue::Bool(*b)),
        Raw::Str(s) => Some(ParamValue::Str(s.clone())),
        Raw::Number(n) => Some(ParamValue::Number(*n)),
        Raw::Array(items) => {
            let mut list = Vec::with_capacity(items.len());
            for item in items {
                let Raw::Str(s) = item else {
                    diags.error(
                        pointer.to_string(),
                        format!(
                            "list parameter values must all be strings, got {}",
                            item.type_name()
                        ),
                    );
                    return None;
                };
                list.push(s.clone());
            }
            Some(ParamValue::StrList(list))
        }
        Raw::Null | Raw::Object(_) => {
            diags.error(
                pointer.to_string(),
                format!("unsupported parameter value type ({})", raw.type_name()),
            );
            None
        }
    }
}

fn parse_component(
    raw: &Raw,
    pointer: &str,
    catalog: &ParameterCatalog,
    mode: ParseMode,
    diags: &mut Diags,
) -> Option<Component> {
    let Raw::Object(entries) = raw else {
        diags.error(
            pointer.to_string(),
            format!("component must be an object, got {}", raw.type_name()),
        );
        return None;
    };
    let fields = dedup_fields(entries, pointer, diags);
    warn_unknown_fields(
        &fields,
        &["id", "name", "kind", "knowledge_level", "params"],
        pointer,
        diags,
    );

    let id = require_string(&fields, "id", pointer, diags);
    let kind = match get(&fields, "kind") {
        Some(Raw::Str(s)) => match ComponentKind::parse(s) {
            Some(kind) => Some(kind),
            None => {
                diags.error(
                    format!("{pointer}/kind"),
                    format!("unknown component kind `{s}`"),
                );
                None
            }
        },
        Some(other) => {
            diags.error(
                format!("{pointer}/kind"),
                format!("`kind` must be a string, got {}", other.type_name()),
            );
            None
        }
        None => {
            diags.error(pointer.to_string(), "missing required field `kind`");
            None
        }
    };
    let name = optional_string(&fields, "name", pointer, diags).unwrap_or_default();
    let knowledge_level = get(&fields, "knowledge_level")
        .and_then(|raw| parse_level(raw, &format!("{pointer}/knowledge_level"), diags));

    let mut params = BTreeMap::new();
    match get(&fields, "params") {
        Some(Raw::Object(entries)) => {
            let params_pointer = format!("{pointer}/params");
            for (param_id, value) in dedup_fields(entries, &params_pointer, diags) {
                let value_pointer = format!("{params_pointer}/{param_id}");
                if catalog.get(param_id).is_none() {
                    match mode {
                        ParseMode::Strict => {
                            diags.error(value_pointer, format!("unknown parameter `{param_id}`"));
                        }
                        ParseMode::Lax => {
                            diags.warning(
                                value_pointer,
                                format!("unknown parameter `{param_id}` ignored"),
                            );
                        }
                    }
                    continue;
                }
                if let Some(value) = parse_param_value(value, &value_pointer, diags) {
                    params.insert(param_id.to_string(), value);
                }
            }
        }
        Some(other) => diags.error(
            format!("{pointer}/params"),
            format!("`params` must be an object, got {}", other.type_name()),
        ),
        None => {}
    }

    Some(Component {
        id: id?,
        name,
        kind: kind?,
        knowledge_level,
        params,
    })
}

fn parse_flow(raw: &Raw, pointer: &str, diags: &mut Diags) -> Option<DataFlow> {
    let Raw::Object(entries) = raw else {
        diags.error(
            pointer.to_string(),
            format!("flow must be an object, got {}", raw.type_name()),
        );
        return None;
    };
    let fields = dedup_fields(entries, pointer, diags);
    warn_unknown_fields(
        &fields,
        &[
            "id",
            "source",
            "destination",
            "connection_type",
            "protocol",
            "protocol_version",
            "cipher_suite",
            "key_length_bits",
            "encryption",
            "data_integrity",
            "authentication",
            "input_sanitization",
        ],
        pointer,
        diags,
    );

    let id = require_string(&fields, "id", pointer, diags);
    let source = require_string(&fields, "source", pointer, diags);
    let destination = require_string(&fields, "destination", pointer, diags);
    let connection_type = match get(&fields, "connection_type") {
        Some(Raw::Str(s)) => match ConnectionType::parse(s) {
            Some(ct) => Some(ct),
            None => {
                diags.error(
                    format!("{pointer}/connection_type"),
                    format!(
                        "unknown connection type `{s}` (expected \"wired\", \"wireless\", or \"logical\")"
                    ),
                );
                None
            }
        },
        Some(other) => {
            diags.error(
                format!("{pointer}/connection_type"),
                format!(
                    "`connection_type` must be a string, got {}",
                    other.type_name()
                ),
            );
            None
        }
        None => {
            diags.error(
                pointer.to_string(),
                "missing required field `connection_type`",
            );
            None
        }
    };

    let key_length_bits = match get(&fields, "key_length_bits") {
        Some(Raw::Number(n)) if n.fract() == 0.0 && *n >= 0.0 && *n <= f64::from(u32::MAX) => {
            Some(*n as u32)
        }
        Some(raw) => {
            diags.error(
                format!("{pointer}/key_length_bits"),
                format!(
                    "`key_length_bits` must be a non-negative integer, got {}",
                    raw.type_name()
                ),
            );
            None
        }
        None => None,
    };

    Some(DataFlow {
        id: id?,
        source: source?,
        destination: destination?,
        connection_type: connection_type?,
        protocol: optional_string(&fields, "protocol", pointer, diags),
        protocol_version: optional_string(&fields, "protocol_version", pointer, diags),
        cipher_suite: optional_string(&fields, "cipher_suite", pointer, diags),
        key_length_bits,
        encryption: optional_bool(&fields, "encryption", pointer, diags),
        data_integrity: optional_bool(&fields, "data_integrity", pointer, diags),
        authentication: optional_bool(&fields, "authentication", pointer, diags),
        input_sanitization: optional_bool(&fields, "input_sanitization", pointer, diags),
    })
}

/// Parses a model document.
///
/// On success returns the model together with any warnings; on failure
/// returns all diagnostics gathered (errors and warnings). Successful parses
/// satisfy the structural invariants checked by
/// [`validate_model`](crate::validate::validate_model) at error severity;
/// validation warnings (e.g. non-applicable parameters) pass through as parse
/// warnings.
pub fn parse_model(
    text: &str,
    catalog: &ParameterCatalog,
    mode: ParseMode,
) -> Result<(SystemModel, Vec<ParseDiagnostic>), Vec<ParseDiagnostic>> {
    let mut diags = Diags::default();

    let raw: Raw = match serde_json::from_str(text) {
        Ok(raw) => raw,
        Err(e) => {
            return Err(vec![ParseDiagnostic {
                severity: IssueSeverity::Error,
                location: format!("line {} column {}", e.line(), e.column()),
                message: format!("invalid JSON: {e}"),
            }]);
        }
    };

    let Raw::Object(entries) = &raw else {
        return Err(vec![ParseDiagnostic {
            severity: IssueSeverity::Error,
            location: "/".to_string(),
            message: format!("top level must be a JSON object, got {}", raw.type_name()),
        }]);
    };

    let fields = dedup_fields(entries, "", &mut diags);
    warn_unknown_fields(
        &fields,
        &[
            "schema_version",
            "name",
            "knowledge_level",
            "components",
            "flows",
        ],
        "",
        &mut diags,
    );

    let schema_version = match get(&fields, "schema_version") {
        Some(Raw::Str(s)) => {
            if s != "1" {
                diags.error(
                    "/schema_version",
                    format!("unsupported schema version `{s}` (supported: \"1\")"),
                );
            }
            s.clone()
        }
        Some(other) => {
            diags.error(
                "/schema_version",
                format!(
                    "`schema_version` must be a string, got {}",
                    other.type_name()
                ),
            );
            String::new()
        }
        None => {
            diags.error("/", "missing required field `schema_version`");
            String::new()
        }
    };

    let name = optional_string(&fields, "name", "", &mut diags).unwrap_or_default();
    let knowledge_level = get(&fields, "knowledge_level")
        .and_then(|raw| parse_level(raw, "/knowledge_level", &mut diags))
        .unwrap_or_default();

    let mut components = Vec::new();
    match get(&fields, "components") {
        Some(Raw::Array(items)) => {
            for (i, item) in items.iter().enumerate() {
                if let Some(c) =
                    parse_component(item, &format!("/components/{i}"), catalog, mode, &mut diags)
                {
                    components.push(c);
                }
            }
        }
        Some(other) => diags.error(
            "/components",
            format!("`components` must be an array, got {}", other.type_name()),
        ),
        None => {}
    }

    let mut flows = Vec::new();
    match get(&fields, "flows") {
        Some(Raw::Array(items)) => {
            for (i, item) in items.iter().enumerate() {
                if let Some(f) = parse_flow(item, &format!("/flows/{i}"), &mut diags) {
                    flows.push(f);
                }
            }
        }
        Some(other) => diags.error(
            "/flows",
            format!("`flows` must be an array, got {}", other.type_name()),
        ),
        None => {}
    }

    let model = SystemModel {
        schema_version,
        name,
        knowledge_level,
        components,
        flows,
    };

    // Structural checks run only when the document itself was clean, so a
    // half-parsed model does not produce misleading follow-up errors.
    if diags.errors == 0 {
        for issue in validate_model(&model, catalog) {
            match issue.severity {
                IssueSeverity::Error => diags.error(issue.location, issue.message),
                IssueSeverity::Warning => diags.warning(issue.location, issue.message),
            }
        }
    }

    if diags.errors > 0 {
        Err(diags.list)
    } else {
        Ok((model, diags.list))
    }
}

#[derive(Serialize)]
struct ComponentDoc<'a> {
    id: &'a str,
    name: &'a str,
    kind: ComponentKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    knowledge_level: Option<KnowledgeLevel>,
    params: &'a BTreeMap<String, ParamValue>,
}

#[derive(Serialize)]
struct FlowDoc<'a> {
    id: &'a str,
    source: &'a str,
    destination: &'a str,
    connection_type: ConnectionType,
    #[serde(skip_serializing_if = "Option::is_none")]
    protocol: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    protocol_version: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cipher_suite: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    key_length_bits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    encryption: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    data_integrity: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    authentication: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input_sanitization: Option<bool>,
}

#[derive(Serialize)]
struct ModelDoc<'a> {
    schema_version: &'a str,
    name: &'a str,
    knowledge_level: KnowledgeLevel,
    components: Vec<ComponentDoc<'a>>,
    flows: Vec<FlowDoc<'a>>,
}

/// Serializes a model to its canonical document form.
///
/// Key order is fixed, components and flows are sorted by id, unset optional
/// flow fields are omitted, and the text ends with a newline. Equal models
/// (up to list order) produce byte-identical output.
pub fn serialize_model(model: &SystemModel) -> String {
    let doc = ModelDoc {
        schema_version: &model.schema_version,
        name: &model.name,
        knowledge_level: model.knowledge_level,
        components: model
            .sorted_components()
            .into_iter()
            .map(|c| ComponentDoc {
                id: &c.id,
                name: &c.name,
                kind: c.kind,
                knowledge_level: c.knowledge_level,
                params: &c.params,
            })
            .collect(),
        flows: model
            .sorted_flows()
            .into_iter()
            .map(|f| FlowDoc {
                id: &f.id,
                source: &f.source,
                destination: &f.destination,
                connection_type: f.connection_type,
                protocol: f.protocol.as_deref(),
                protocol_version: f.protocol_version.as_deref(),
                cipher_suite: f.cipher_suite.as_deref(),
                key_length_bits: f.key_length_bits,
                encryption: f.encryption,
                data_integrity: f.data_integrity,
                authentication: f.authentication,
                input_sanitization: f.input_sanitization,
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("model serializes");
    text.push('\n');
    text
}
