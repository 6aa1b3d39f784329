use super::*;
use crate::normalform::{normalize_implication, Logic};
use crate::syntax::{alpha_eq, parse_document, print_formula, FinType, Formula, Signature};

#[test]
fn every_statement_round_trips() {
    for name in PRINCIPLE_NAMES {
        let p = get_principle(name).unwrap();
        let (sig, again) = parse_document(&p.text(), &Signature::new())
            .unwrap_or_else(|e| panic!("{}: {}\n{}", name, e, p.text()));
        assert_eq!(again, p.statement, "{}", name);
        assert_eq!(sig, p.signature, "{}", name);
    }
}

#[test]
fn uniform_pi01g_functional_type() {
    let u = get_principle("UPi01G").unwrap();
    let one = FinType::pure(1);
    let pair = FinType::prod(one.clone(), one);
    assert_eq!(u.functional.unwrap().ty, FinType::arrow(pair.clone(), pair));
    let text = print_formula(&u.statement);
    assert!(text.contains("Init(app(snd(app(Phi,<f,g>)),i),fst(app(Phi,<f,g>)))"), "{}", text);
}

#[test]
fn uniform_types_follow_the_witness_dependencies() {
    let ty = |n: &str| get_principle(n).unwrap().functional.unwrap().ty.to_string();
    assert_eq!(ty("UDNR"), "(1 -> 1)");
    assert_eq!(ty("U1G"), "(1 -> (1 * (2 * 2)))");
    assert_eq!(ty("UHYP"), "(1 -> (1 * (0 -> 1)))");
    assert_eq!(ty("UNCS"), "(1 -> (1 * 1))");
    assert_eq!(ty("UKPT"), "(1 -> (1 * 1))");
}

#[test]
fn erasing_the_functional_recovers_the_zoo_statement() {
    for zoo in ["DNR", "Pi01G", "1GEN", "HYP", "NCS", "KPT"] {
        let p = get_principle(zoo).unwrap();
        let u = uniformize_detailed(&p, functional_name(zoo)).unwrap();
        let back = erase_functional(&u).unwrap();
        assert!(
            alpha_eq(&back, &p.statement),
            "{}:\n{}\n{}",
            zoo,
            print_formula(&back),
            print_formula(&p.statement)
        );
    }
}

#[test]
fn aliases_and_unencoded() {
    assert_eq!(get_principle("OPT").unwrap().statement, get_principle("UHYP").unwrap().statement);
    assert_eq!(get_principle("AST").unwrap().statement, get_principle("UNCS").unwrap().statement);
    assert!(matches!(get_principle("FIP"), Err(crate::Error::NotEncoded(..))));
    assert!(matches!(get_principle("WKL"), Err(crate::Error::UnknownPrinciple(_))));
}

#[test]
fn plus_version_only_once() {
    let u = get_principle("UPi01G").unwrap();
    let plus = plus_version(&u).unwrap();
    assert_eq!(plus.kind, Kind::UniformPlus);
    assert!(matches!(plus.statement, Formula::Quant(crate::syntax::Quant::ExistsSt, _, _)));
    assert!(plus_version(&plus).is_err());
    assert!(plus_version(&get_principle("Pi01G").unwrap()).is_err());
}

#[test]
fn pi01g_plus_against_transfer() {
    let plus = plus_version(&get_principle("UPi01G").unwrap()).unwrap();
    let trans = get_principle("PI01-TRANS").unwrap().statement;
    for logic in [Logic::Classical, Logic::Intuitionistic] {
        let (nf, trace) = normalize_implication(&plus.statement, &trans, logic).unwrap();
        println!("{:?}\n{}\n{}", logic, trace.to_text(), print_formula(&nf.to_formula()));
    }
}

#[test]
fn plus_version_relativizes_only_the_input_block() {
    let plus = plus_version(&get_principle("UDNR").unwrap()).unwrap();
    let text = print_formula(&plus.statement);
    assert!(
        text.starts_with("?st Psi:(1 -> 1). (!st A:1. !e:0. !s:0. !m:0. T(e,s,A,e,m) -> "),
        "{}",
        text
    );
    assert!(text.ends_with(" & stdext(Psi)"), "{}", text);
}

#[test]
fn every_pipeline_principle_normalizes_in_both_logics() {
    let trans = get_principle("PI01-TRANS").unwrap().statement;
    for name in PIPELINE_PRINCIPLES {
        let u = match zoo_of(name) {
            Some(_) => get_principle(name).unwrap(),
            None => uniformize(&get_principle(name).unwrap(), functional_name(name)).unwrap(),
        };
        let plus = plus_version(&u).unwrap();
        let mut prefixes = Vec::new();
        for logic in [Logic::Classical, Logic::Intuitionistic] {
            let (nf, trace) = normalize_implication(&plus.statement, &trans, logic)
                .unwrap_or_else(|e| panic!("{} {:?}: {}", name, logic, e));
            assert!(nf.matrix.is_internal());
            trace.replay().unwrap();
            prefixes.push(nf);
        }
        let (c, i) = (&prefixes[0], &prefixes[1]);
        assert_eq!(c.st_universals, i.st_universals, "{}", name);
        assert_eq!(c.st_existentials.len(), 1, "{}", name);
        assert_eq!(
            i.st_existentials[0].ty,
            FinType::seq(c.st_existentials[0].ty.clone()),
            "{}",
            name
        );
    }
}

#[test]
fn reference_texts_parse_print_and_typecheck() {
    use crate::syntax::{print_formula, typecheck_formula, Context};
    for name in GOLDEN_NAMES {
        let text = builtin_golden(name).unwrap();
        let (sig, f) = parse_golden(text).unwrap_or_else(|e| panic!("{}: {}", name, e));
        typecheck_formula(&f, &Context::new(&sig)).unwrap_or_else(|e| panic!("{}: {}", name, e));
        assert_eq!(golden_text(&sig, &f), text, "{}", name);
        assert_eq!(text.lines().last().unwrap(), print_formula(&f));
    }
}

#[test]
fn pi01g_pipeline_matches_every_reference() {
    use crate::normalform::Logic;
    for logic in [Logic::Classical, Logic::Intuitionistic] {
        let r = pipeline("Pi01G", logic).unwrap();
        for (k, v) in &r.verdicts {
            assert!(!v.is_fail(), "{:?} {}: {}", logic, k, v.detail);
        }
        let goldens = r.verdicts.keys().filter(|k| k.starts_with("golden:")).count();
        assert_eq!(goldens, 7, "{:?}", r.verdicts.keys().collect::<Vec<_>>());
    }
}

#[test]
fn every_pipeline_principle_passes_in_both_logics() {
    use crate::normalform::Logic;
    for name in PIPELINE_PRINCIPLES {
        for logic in [Logic::Classical, Logic::Intuitionistic] {
            let r = pipeline(name, logic).unwrap_or_else(|e| panic!("{} {:?}: {}", name, logic, e));
            assert!(r.passed(), "{} {:?}: {:?}", name, logic, r.verdicts);
            assert!(r.verdicts["round_trip"].is_pass());
        }
    }
}

#[test]
fn non_uniformisable_names_fail_with_a_partial_report() {
    use crate::normalform::Logic;
    let e = pipeline("MU2", Logic::Classical).unwrap_err();
    assert!(matches!(&e.error, crate::error::Error::Stage { stage, .. } if stage == "uniformize"));
    assert!(e.report.error.is_some());
    assert!(pipeline("FIP", Logic::Classical).is_err());
}

#[test]
fn reports_are_reproducible() {
    use crate::normalform::Logic;
    let a = serde_json::to_string(&pipeline("Pi01G", Logic::Classical).unwrap().to_json()).unwrap();
    let b = serde_json::to_string(&pipeline("Pi01G", Logic::Classical).unwrap().to_json()).unwrap();
    assert_eq!(a, b);
}
