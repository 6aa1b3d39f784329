use super::*;
use crate::error::Error;
use crate::extraction::{collapse_all, extract};
use crate::normalform::{normalize, Logic, RuleName};
use crate::syntax::{parse_formula, FinType, Formula, Signature};

const TRANS: &str = "!st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0";

fn f(text: &str) -> Formula {
    parse_formula(text, &Signature::new()).unwrap()
}

fn model(size: u32, cutoff: u32) -> TwoLevelModel {
    TwoLevelModel::new(ModelConfig::new(size, cutoff), &Signature::new()).unwrap()
}

#[test]
fn universes_have_the_expected_sizes() {
    let m = model(3, 2);
    assert_eq!(m.universe(&FinType::Base).len(), 3);
    assert_eq!(m.standard(&FinType::Base).len(), 2);
    assert_eq!(m.universe(&FinType::pure(1)).len(), 27);
    // standard functions map {0,1} into {0,1}: 2 * 2 * 3
    assert_eq!(m.standard(&FinType::pure(1)).len(), 12);
    // sequences of length <= 2 over three elements
    assert_eq!(m.universe(&FinType::seq(FinType::Base)).len(), 13);
    assert!(m.universe(&FinType::pure(2)).len() <= SAMPLED_UNIVERSE + 1);
}

#[test]
fn bounds_are_enforced() {
    let sig = Signature::new();
    assert!(matches!(TwoLevelModel::new(ModelConfig::new(5, 1), &sig), Err(Error::Bounds(_))));
    assert!(matches!(TwoLevelModel::new(ModelConfig::new(2, 3), &sig), Err(Error::Bounds(_))));
    assert!(matches!(
        TwoLevelModel::new(ModelConfig::new(2, 1).level(3), &sig),
        Err(Error::Bounds(_))
    ));
    let m = model(2, 1);
    assert!(matches!(eval_closed(&f("?g:2. 0 = 0"), &m), Err(Error::Bounds(_))));
}

#[test]
fn standard_quantifiers_range_over_the_standard_part() {
    let m = model(3, 2);
    assert!(eval_closed(&f("!st x:0. x <= 1"), &m).unwrap());
    assert!(!eval_closed(&f("!x:0. x <= 1"), &m).unwrap());
    assert!(eval_closed(&f("?x:0. ~st(x)"), &m).unwrap());
    assert!(eval_closed(&f("!st g:1. !st x:0. st(app(g,x))"), &m).unwrap());
}

#[test]
fn successor_saturates_and_sequences_evaluate() {
    let m = model(2, 2);
    assert!(eval_closed(&f("S(S(0)) = S(0)"), &m).unwrap());
    assert!(eval_closed(&f("max0([0, 1]) = 1"), &m).unwrap());
    assert!(eval_closed(&f("?x in [0, 1]. x = 1"), &m).unwrap());
}

#[test]
fn enumeration_respects_standard_closure() {
    let mut sig = Signature::new();
    sig.declare_fun("g", vec![FinType::Base], FinType::Base);
    let e = Enumeration {
        max_size: 2,
        ..Enumeration::default()
    };
    let models = enumerate_models(&sig, &e).unwrap();
    let count = |size, cutoff| {
        models
            .iter()
            .filter(|m| m.size() == size && m.cutoff() == cutoff)
            .count()
    };
    assert_eq!(count(1, 1), 1);
    assert_eq!(count(2, 1), 2);
    assert_eq!(count(2, 2), 4);
    let e = Enumeration {
        max_size: 5,
        ..Enumeration::default()
    };
    assert!(matches!(enumerate_models(&sig, &e), Err(Error::Bounds(_))));
}

#[test]
fn suite_rules_have_no_violations() {
    let config = SoundnessConfig {
        pairs: 300,
        ..SoundnessConfig::default()
    };
    for rule in SOUND_RULES {
        let r = check_rule_soundness(rule, &config).unwrap();
        assert_eq!(r.pairs, 300);
        assert!(r.pass, "{}: {}", rule, r.counterexamples[0].to_text());
    }
}

#[test]
fn idealisation_has_a_small_counterexample() {
    let r = check_rule_soundness(RuleName::Idealisation, &SoundnessConfig::default()).unwrap();
    assert!(!r.pass);
    assert!(r.violations > 0);
    let c = &r.counterexamples[0];
    assert!(c.before_holds && !c.after_holds);
    assert!(c.to_text().contains("before (true)"));
}

#[test]
fn rules_without_a_schema_are_reported() {
    assert!(matches!(
        check_rule_soundness(RuleName::ExpandApprox, &SoundnessConfig::default()),
        Err(Error::Shape(_))
    ));
}

#[test]
fn soundness_runs_are_reproducible() {
    let config = SoundnessConfig {
        pairs: 100,
        seed: 7,
        ..SoundnessConfig::default()
    };
    let a = check_rule_soundness(RuleName::Idealisation, &config).unwrap();
    let b = check_rule_soundness(RuleName::Idealisation, &config).unwrap();
    assert_eq!(a, b);
}

#[test]
fn search_witness_is_valid_and_a_truncated_one_is_not() {
    let (nf, trace) = normalize(&f(TRANS), Logic::Classical).unwrap();
    let mut r = extract(&nf, &trace).unwrap();
    collapse_all(&mut r).unwrap();
    let base = model(3, 3);
    let good = base.clone().with_interp("t_m", least_zero_realiser());
    let check = check_extraction(&r, &good).unwrap();
    assert_eq!(check.assignments, 27);
    assert!(check.pass, "{:?}", check);
    let bad = base.with_interp("t_m", truncated_realiser(least_zero_realiser()));
    let check = check_extraction(&r, &bad).unwrap();
    assert!(!check.pass);
    assert!(!check.violations.is_empty());
    assert!(!check.collapsed_violations.is_empty());
}

#[test]
fn exhaustive_realiser_validates_any_extraction() {
    let (nf, trace) = normalize(&f(TRANS), Logic::Classical).unwrap();
    let r = extract(&nf, &trace).unwrap();
    let m = model(2, 1).with_interp("t_m", exhaustive_realiser(FinType::Base));
    assert!(check_extraction(&r, &m).unwrap().pass);
}
