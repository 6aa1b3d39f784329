use super::*;
use crate::syntax::{alpha_eq, parse_formula, print_formula, FinType, Formula, Signature};

fn sig() -> Signature {
    let mut s = Signature::new();
    s.declare_rel("P", vec![FinType::Base, FinType::Base]);
    s.declare_rel("Q", vec![]);
    s
}

fn f(text: &str) -> Formula {
    parse_formula(text, &sig()).unwrap_or_else(|e| panic!("{}: {}", text, e))
}

fn assert_alpha(got: &Formula, want: &str) {
    let want = f(want);
    assert!(
        alpha_eq(got, &want),
        "got  {}\nwant {}",
        print_formula(got),
        print_formula(&want)
    );
}

const TRANS: &str = "!st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0";
const CURK: &str = "!st f:1. ?st m:0. (?n:0. app(f,n) = 0) -> ?i <= m. app(f,i) = 0";

#[test]
fn transfer_reaches_bounded_search_form_classically() {
    let (nf, trace) = normalize(&f(TRANS), Logic::Classical).unwrap();
    assert_alpha(&nf.to_formula(), CURK);
    assert_eq!(
        trace.rules(),
        vec![RuleName::BoundedSearchSt, RuleName::PrenexImpliesSt]
    );
    assert_eq!(trace.replay().unwrap(), nf.to_formula());
}

#[test]
fn transfer_intuitionistic_collapses_the_herbrand_sequence() {
    let (nf, trace) = normalize(&f(TRANS), Logic::Intuitionistic).unwrap();
    assert_alpha(&nf.to_formula(), CURK);
    assert_eq!(
        trace.rules(),
        vec![RuleName::BoundedSearchSt, RuleName::HIPforallst]
    );
}

#[test]
fn normal_form_recognition() {
    let nf = is_normal_form(&f(CURK)).unwrap();
    assert_eq!(nf.st_universals.len(), 1);
    assert_eq!(nf.st_existentials.len(), 1);
    assert!(is_normal_form(&f(TRANS)).is_none());
    let internal = is_normal_form(&f("!x:0. x = x")).unwrap();
    assert!(internal.vacuous());
}

#[test]
fn already_normal_input_has_empty_trace() {
    let (nf, trace) = normalize(&f(CURK), Logic::Classical).unwrap();
    assert!(trace.is_empty());
    assert_eq!(nf.to_formula(), f(CURK));
}

#[test]
fn hgmp_example() {
    let phi = f("!g:1. (!st x:0. app(g,x) = 0) -> Q()");
    let out = apply_rule(RuleName::HGMPst, &phi, &[0]).unwrap();
    assert_alpha(&out, "!g:1. ?st x':0^*. (!x in x'. app(g,x) = 0) -> Q()");
}

#[test]
fn hip_example() {
    let phi = f("(!st x:0. P(x,x)) -> ?st y:0. P(y,0) | ~P(0,y)");
    let out = apply_rule(RuleName::HIPforallst, &phi, &[]).unwrap();
    assert_alpha(&out, "?st y':0^*. (!st x:0. P(x,x)) -> ?y in y'. P(y,0) | ~P(0,y)");
}

#[test]
fn hac_example() {
    let phi = f("!st x:1. ?st y:0. app(x,y) = y");
    let out = apply_rule(RuleName::HACint, &phi, &[]).unwrap();
    assert_alpha(&out, "?st F:(1 -> 0^*). !st x:1. ?y in app(F,x). app(x,y) = y");
}

#[test]
fn idealisation_example() {
    let phi = f("!st x:0^*. ?y:0. !z in x. P(z,y)");
    let out = apply_rule(RuleName::Idealisation, &phi, &[]).unwrap();
    assert_alpha(&out, "?y:0. !st z:0. P(z,y)");
}

#[test]
fn idealisation_needs_internal_matrix() {
    let phi = f("!st x:0^*. ?y:0. !z in x. st(z)");
    assert!(matches!(
        apply_rule(RuleName::Idealisation, &phi, &[]),
        Err(crate::Error::Inapplicable { .. })
    ));
}

#[test]
fn classical_only_rules_refused_intuitionistically() {
    let phi = f("~~(?st x:0. P(x,x))");
    let mut supply = FreshSupply::for_formula(&phi);
    assert!(rewrite(RuleName::DoubleNegSt, &phi, &[], Logic::Intuitionistic, &mut supply).is_err());
    assert_alpha(
        &apply_rule(RuleName::DoubleNegSt, &phi, &[]).unwrap(),
        "?st x:0. P(x,x)",
    );
}

#[test]
fn prenex_renames_to_avoid_capture() {
    let phi = f("!x:0. (?st x:0. P(x,x)) & P(x,0)");
    let out = apply_rule(RuleName::PrenexAndSt, &phi, &[0]).unwrap();
    assert_alpha(&out, "!x:0. ?st x':0. P(x',x') & P(x,0)");
}

#[test]
fn junction_pulls_universals_before_existentials() {
    let (nf, _) = normalize(&f("(?st x:0. P(x,0)) | (!st y:0. P(y,y))"), Logic::Classical).unwrap();
    assert_alpha(&nf.to_formula(), "!st y:0. ?st x:0. (?i <= x. P(i,0)) | P(y,y)");
}

#[test]
fn same_named_st_blocks_get_distinct_names() {
    let (nf, _) = normalize(&f("(!st x:0. P(x,0)) & (!st x:0. P(0,x))"), Logic::Classical).unwrap();
    assert_eq!(nf.st_universals.len(), 2);
    assert_alpha(&nf.to_formula(), "!st x:0. !st x':0. P(x,0) & P(0,x')");
}

#[test]
fn unsupported_reports_blocking_node() {
    let phi = f("!st x:0. st(x) | Q()");
    match normalize(&phi, Logic::Classical) {
        Err(crate::Error::Unsupported { path, .. }) => assert_eq!(path, "0.0"),
        other => panic!("{:?}", other),
    }
}

#[test]
fn markov_moves_negation_inward() {
    let phi = f("~(!st x:0. P(x,0))");
    let (nf, _) = normalize(&phi, Logic::Classical).unwrap();
    assert_alpha(&nf.to_formula(), "?st x:0. ~P(x,0)");
}

#[test]
fn trace_text_lines() {
    let (_, trace) = normalize(&f(TRANS), Logic::Classical).unwrap();
    let text = trace.to_text();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("STEP 1 BoundedSearchSt AT 0.1 FRESH - => "), "{}", first);
    let json = trace.to_json();
    assert_eq!(json["steps"][1]["rule"], "PrenexImpliesSt");
}
