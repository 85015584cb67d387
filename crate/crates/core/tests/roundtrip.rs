//! End-to-end properties over randomly generated models: canonical
//! serialization round-trips and analysis determinism.

use iotsure_core::testgen::arb_model;
use iotsure_core::{
    analyze_crypto, compile_plan, completeness_report, default_policy, default_ruleset,
    enumerate_threats, parameter_catalog, parse_model, serialize_model, IssueSeverity, ParseMode,
    PentestPhase,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn serialize_parse_round_trip(model in arb_model()) {
        let catalog = parameter_catalog();
        let text = serialize_model(&model);
        let (back, diags) = match parse_model(&text, &catalog, ParseMode::Strict) {
            Ok(ok) => ok,
            Err(diags) => return Err(TestCaseError::fail(format!("parse failed: {diags:?}"))),
        };
        prop_assert!(diags.iter().all(|d| d.severity != IssueSeverity::Error), "{diags:?}");
        prop_assert_eq!(&back, &model);
        // Serialization is canonical: re-serializing is byte-identical.
        prop_assert_eq!(serialize_model(&back), text);
    }

    #[test]
    fn serialization_ignores_declaration_order(model in arb_model()) {
        let mut shuffled = model.clone();
        shuffled.components.reverse();
        shuffled.flows.reverse();
        prop_assert_eq!(serialize_model(&shuffled), serialize_model(&model));
        prop_assert_eq!(&shuffled, &model);
    }

    #[test]
    fn analyses_are_deterministic(model in arb_model()) {
        let catalog = parameter_catalog();
        let rules = default_ruleset();
        let policy = default_policy();

        let threats = enumerate_threats(&model, &rules, &catalog).unwrap();
        prop_assert_eq!(&threats, &enumerate_threats(&model, &rules, &catalog).unwrap());

        let crypto = analyze_crypto(&model, &policy);
        prop_assert_eq!(&crypto, &analyze_crypto(&model, &policy));

        let coverage = completeness_report(&model, &catalog);
        prop_assert_eq!(&coverage, &completeness_report(&model, &catalog));

        let plan = compile_plan(&model, &PentestPhase::AUTOMATED, &catalog).unwrap();
        prop_assert_eq!(&plan, &compile_plan(&model, &PentestPhase::AUTOMATED, &catalog).unwrap());
    }

    #[test]
    fn analyses_ignore_declaration_order(model in arb_model()) {
        let mut shuffled = model.clone();
        shuffled.components.reverse();
        shuffled.flows.reverse();
        let catalog = parameter_catalog();
        prop_assert_eq!(
            enumerate_threats(&shuffled, &default_ruleset(), &catalog).unwrap(),
            enumerate_threats(&model, &default_ruleset(), &catalog).unwrap()
        );
        prop_assert_eq!(
            completeness_report(&shuffled, &catalog),
            completeness_report(&model, &catalog)
        );
        prop_assert_eq!(
            compile_plan(&shuffled, &PentestPhase::AUTOMATED, &catalog).unwrap(),
            compile_plan(&model, &PentestPhase::AUTOMATED, &catalog).unwrap()
        );
    }
}
