use proptest::prelude::*;

use nszoo::normalform::{is_normal_form, normalize, Logic};
use nszoo::semantics::{eval, Env, ModelConfig, TwoLevelModel, Value};
use nszoo::syntax::{alpha_eq, parse_formula, print_formula, FinType, Formula, Quant, Signature, Term, Var};

fn v0(name: &str) -> Var {
    Var::new(name, FinType::Base)
}

fn term0(names: &'static [&'static str]) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        Just(Term::num(1)),
        proptest::sample::select(names).prop_map(|n| Term::var(n, FinType::Base)),
    ];
    leaf.prop_recursive(2, 4, 1, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::Succ(Box::new(t))),
            inner.prop_map(|t| Term::app(Term::var("h", FinType::pure(1)), t)),
        ]
    })
    .boxed()
}

fn internal(names: &'static [&'static str]) -> BoxedStrategy<Formula> {
    let atom = (term0(names), term0(names), any::<bool>())
        .prop_map(|(l, r, eq)| if eq { Formula::Eq(l, r) } else { Formula::Le(l, r) });
    atom.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
    .boxed()
}

const NAMES: &[&str] = &["x", "y", "a"];

fn st_quant() -> impl Strategy<Value = Quant> {
    prop_oneof![Just(Quant::ForallSt), Just(Quant::ExistsSt)]
}

/// Internal formulas under at most two standard quantifiers, combined by
/// the propositional connectives.
fn two_level() -> impl Strategy<Value = Formula> {
    let block = (st_quant(), proptest::sample::select(&["x", "y"][..]), internal(NAMES))
        .prop_map(|(q, n, body)| Formula::quant(q, v0(n), body))
        .boxed();
    prop_oneof![
        block.clone(),
        (block.clone(), internal(NAMES)).prop_map(|(a, b)| Formula::implies(a, b)),
        (internal(NAMES), block.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
        (block.clone(), block.clone()).prop_map(|(a, b)| Formula::and(a, b)),
        (block.clone(), block.clone()).prop_map(|(a, b)| Formula::or(a, b)),
        (block.clone(), block.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
        block.prop_map(Formula::not),
    ]
}

fn models() -> Vec<TwoLevelModel> {
    let sig = Signature::new();
    let mut out = Vec::new();
    for size in 1..=3 {
        for cutoff in 1..=size {
            let config = ModelConfig::new(size, cutoff).seq_len(3);
            out.push(TwoLevelModel::new(config, &sig).unwrap());
        }
    }
    out
}

/// Every assignment of the free parameters `a : 0` and `h : 1`.
fn parameter_envs(m: &TwoLevelModel, f: &Formula) -> Vec<Env> {
    let mut envs = vec![Env::new()];
    for v in f.free_vars() {
        let u = m.universe(&v.ty);
        let mut next = Vec::new();
        for e in &envs {
            for x in &u.items {
                next.push(e.clone().with(&v.name, x.clone()));
            }
        }
        envs = next;
    }
    envs
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn printing_then_parsing_is_the_identity(f in two_level()) {
        let text = print_formula(&f);
        let mut sig = Signature::new();
        for v in f.free_vars() {
            sig.declare_var(&v.name, v.ty.clone());
        }
        let back = parse_formula(&text, &sig).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn classical_normalization_yields_a_replayable_normal_form(f in two_level()) {
        let (nf, trace) = normalize(&f, Logic::Classical).unwrap();
        prop_assert!(nf.matrix.is_internal());
        prop_assert!(is_normal_form(&nf.to_formula()).is_some());
        prop_assert!(alpha_eq(&trace.replay().unwrap(), &nf.to_formula()));
        let (again, _) = normalize(&f, Logic::Classical).unwrap();
        prop_assert_eq!(again, nf);
    }

    #[test]
    fn intuitionistic_normalization_never_uses_classical_rules(f in two_level()) {
        if let Ok((nf, trace)) = normalize(&f, Logic::Intuitionistic) {
            prop_assert!(nf.matrix.is_internal());
            prop_assert!(trace.rules().iter().all(|r| !r.classical_only()));
        }
    }

    #[test]
    fn normal_forms_follow_from_their_inputs(f in two_level()) {
        let (nf, _) = normalize(&f, Logic::Classical).unwrap();
        let g = nf.to_formula();
        for m in models() {
            for env in parameter_envs(&m, &f) {
                if eval(&f, &m, &env).unwrap() {
                    prop_assert!(
                        eval(&g, &m, &env).unwrap(),
                        "{} holds but {} fails in {}", print_formula(&f), print_formula(&g), m
                    );
                }
            }
        }
    }

    #[test]
    fn standard_quantifiers_are_monotone_in_the_standard_part(
        body in internal(NAMES),
        size in 2u32..=3,
        a in 0u32..3,
    ) {
        let sig = Signature::new();
        let env = Env::new()
            .with("a", Value::Num(a % size))
            .with("y", Value::Num(0))
            .with("h", Value::fun((0..size).map(|i| Value::Num((i + 1) % size)).collect()));
        let all = Formula::quant(Quant::ForallSt, v0("x"), body.clone());
        let some = Formula::quant(Quant::ExistsSt, v0("x"), body);
        for cutoff in 1..size {
            let small = TwoLevelModel::new(ModelConfig::new(size, cutoff), &sig).unwrap();
            let large = TwoLevelModel::new(ModelConfig::new(size, cutoff + 1), &sig).unwrap();
            if eval(&all, &large, &env).unwrap() {
                prop_assert!(eval(&all, &small, &env).unwrap());
            }
            if eval(&some, &small, &env).unwrap() {
                prop_assert!(eval(&some, &large, &env).unwrap());
            }
        }
    }

    #[test]
    fn evaluation_is_deterministic(f in two_level()) {
        for m in models() {
            for env in parameter_envs(&m, &f).into_iter().take(4) {
                prop_assert_eq!(eval(&f, &m, &env).unwrap(), eval(&f, &m, &env).unwrap());
            }
        }
    }
}
