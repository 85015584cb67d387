//! Property-test generators for system models.
//!
//! Exposed to dependents through the `testgen` feature and used by this
//! crate's own tests. Generated models are structurally valid by
//! construction: component ids are unique, flows connect distinct existing
//! components, and parameters are drawn from the catalog entries applicable
//! to each component's kind, with shape-correct values.

use crate::catalog::{parameter_catalog, ValueShape};
use crate::kind::ComponentKind;
use crate::model::{Component, ConnectionType, DataFlow, KnowledgeLevel, ParamValue, SystemModel};
use proptest::prelude::*;
use std::collections::BTreeMap;

/// Strategy for a value matching the given shape.
pub fn arb_value(shape: &ValueShape) -> BoxedStrategy<ParamValue> {
    match shape {
        ValueShape::Boolean => any::<bool>().prop_map(ParamValue::Bool).boxed(),
        ValueShape::String => "[a-z][a-z0-9._ -]{0,11}".prop_map(ParamValue::Str).boxed(),
        ValueShape::StringList => prop::collection::vec("[a-z][a-z0-9._-]{0,7}", 1..4)
            .prop_map(ParamValue::StrList)
            .boxed(),
        ValueShape::Number { .. } => (0u32..10_000)
            .prop_map(|n| ParamValue::Number(f64::from(n)))
            .boxed(),
    }
}

/// Strategy for a parameter map drawn from the catalog entries applicable to
/// the given kind; roughly a third of the applicable parameters get values.
pub fn arb_params(kind: ComponentKind) -> impl Strategy<Value = BTreeMap<String, ParamValue>> {
    let catalog = parameter_catalog();
    let slots: Vec<BoxedStrategy<Option<(String, ParamValue)>>> = catalog
        .applicable_to(kind)
        .map(|def| {
            let id = def.id.clone();
            prop_oneof![
                2 => Just(None),
                1 => arb_value(&def.shape).prop_map(move |v| Some((id.clone(), v))),
            ]
            .boxed()
        })
        .collect();
    slots.prop_map(|pairs| pairs.into_iter().flatten().collect())
}

/// Strategy for one component with the given index-derived id.
pub fn arb_component(index: usize) -> impl Strategy<Value = Component> {
    prop::sample::select(ComponentKind::ALL.to_vec()).prop_flat_map(move |kind| {
        (
            arb_params(kind),
            prop::option::weighted(0.25, prop::sample::select(KnowledgeLevel::ALL.to_vec())),
            "[A-Za-z][A-Za-z ]{0,11}",
        )
            .prop_map(move |(params, knowledge_level, name)| Component {
                id: format!("c{index}"),
                name,
                kind,
                knowledge_level,
                params,
            })
    })
}

/// Strategy for one flow between two distinct components `c0..c{n-1}`.
///
/// The id is left empty; the model strategy assigns unique ids afterwards.
fn arb_flow(component_count: usize) -> impl Strategy<Value = DataFlow> {
    let protocol = prop::sample::select(vec!["mqtt", "http", "coap", "opc-ua"]);
    let version = prop::sample::select(vec!["TLS 1.3", "TLS 1.2", "TLS 1.0", "SSLv3", "5.0"]);
    let suite = prop::sample::select(vec![
        "TLS_AES_128_GCM_SHA256",
        "ECDHE-RSA-AES256-GCM-SHA384",
        "ECDHE-RSA-SHA1",
        "RC4-MD5",
    ]);
    (
        (
            0..component_count,
            1..component_count.max(2),
            prop::sample::select(ConnectionType::ALL.to_vec()),
        ),
        (
            prop::option::of(protocol),
            prop::option::of(version),
            prop::option::of(suite),
            prop::option::of(0u32..=4096),
        ),
        (
            prop::option::of(any::<bool>()),
            prop::option::of(any::<bool>()),
            prop::option::of(any::<bool>()),
            prop::option::of(any::<bool>()),
        ),
    )
        .prop_map(
            move |(
                (src, offset, connection_type),
                (protocol, protocol_version, cipher_suite, key_length_bits),
                (encryption, data_integrity, authentication, input_sanitization),
            )| {
                DataFlow {
                    id: String::new(),
                    source: format!("c{src}"),
                    destination: format!("c{}", (src + offset) % component_count),
                    connection_type,
                    protocol: protocol.map(String::from),
                    protocol_version: protocol_version.map(String::from),
                    cipher_suite: cipher_suite.map(String::from),
                    key_length_bits,
                    encryption,
                    data_integrity,
                    authentication,
                    input_sanitization,
                }
            },
        )
}

/// Strategy for a whole structurally valid system model.
pub fn arb_model() -> impl Strategy<Value = SystemModel> {
    (0usize..=5).prop_flat_map(|n| {
        let components: Vec<_> = (0..n).map(arb_component).collect();
        let flows = if n >= 2 {
            prop::collection::vec(arb_flow(n), 0..6).boxed()
        } else {
            Just(Vec::new()).boxed()
        };
        (
            components,
            flows,
            prop::sample::select(KnowledgeLevel::ALL.to_vec()),
            "[a-z]{0,8}",
        )
            .prop_map(|(components, mut flows, knowledge_level, name)| {
                for (i, flow) in flows.iter_mut().enumerate() {
                    flow.id = format!("f{i}");
                }
                SystemModel {
                    schema_version: "1".to_string(),
                    name,
                    knowledge_level,
                    components,
                    flows,
                }
            })
    })
}
