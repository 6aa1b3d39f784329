//! One pass/fail line per acceptance criterion, written straight to stderr
//! so that it shows up even when test output is captured.

use std::io::Write;
use std::time::{Duration, Instant};

use nszoo::catalog::{
    builtin_golden, get_principle, golden_matches, parse_golden, pipeline, plus_version, Report,
    ALIASES, GOLDEN_NAMES, PIPELINE_PRINCIPLES, PRINCIPLE_NAMES,
};
use nszoo::cli::run_command;
use nszoo::extraction::{collapse_all, extract, herbrandise, meta_reverse, Recipe};
use nszoo::normalform::{normalize, Logic, RuleName};
use nszoo::semantics::{
    check_extraction, check_rule_soundness, least_zero_realiser, truncated_realiser, ModelConfig,
    SoundnessConfig, TwoLevelModel,
};
use nszoo::syntax::{
    alpha_eq, parse_document, print_formula, typecheck_formula, Context, Formula, Quant, Signature,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion(id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let pass = out.pass && elapsed <= limit;
    let _ = writeln!(
        std::io::stderr(),
        "[{}] {} {} ({:.2}s, limit {}s) {}",
        id,
        if pass { "PASS" } else { "FAIL" },
        name,
        elapsed.as_secs_f64(),
        limit.as_secs(),
        out.detail
    );
    pass
}

fn transfer() -> Formula {
    get_principle("PI01-TRANS").unwrap().statement
}

fn pi01g(logic: Logic) -> Result<Report, String> {
    pipeline("Pi01G", logic).map_err(|e| e.to_string())
}

fn transfer_normal_form() -> Outcome {
    match normalize(&transfer(), Logic::Classical) {
        Ok((nf, _)) => match golden_matches("curk", &nf.to_formula(), None) {
            Ok(m) => ok(m, print_formula(&nf.to_formula())),
            Err(e) => ok(false, e.to_string()),
        },
        Err(e) => ok(false, e.to_string()),
    }
}

fn classical_pipeline() -> Outcome {
    let r = match pi01g(Logic::Classical) {
        Ok(r) => r,
        Err(e) => return ok(false, e),
    };
    let structure = r.verdicts["golden:structure"].is_pass();
    let internal = r.verdicts["matrix_internal"].is_pass();
    let extraction = r.artifacts.extraction.as_ref().unwrap();
    let shape = match &extraction.collapsed {
        Some(c) => {
            let (vars, _) = c.strip_quants(Quant::Forall);
            let names: Vec<&str> = vars.iter().map(|v| v.name.as_str()).collect();
            names == ["Phi", "Xi1", "f"]
                && print_formula(c).ends_with("-> ?i <= max0(t_m(Phi,Xi1,f)). app(f,i) = 0")
        }
        None => false,
    };
    ok(
        structure && internal && shape,
        format!("structure={} internal={} collapse={}", structure, internal, shape),
    )
}

fn intuitionistic_pipeline() -> Outcome {
    let r = match pi01g(Logic::Intuitionistic) {
        Ok(r) => r,
        Err(e) => return ok(false, e),
    };
    let bling = r.verdicts["golden:bling"].is_pass();
    let witnesses = &r.artifacts.extraction.as_ref().unwrap().witnesses;
    let types: Vec<String> = witnesses.iter().map(|w| w.var.ty.to_string()).collect();
    let herbrand = witnesses
        .iter()
        .all(|w| matches!(w.recipe, Recipe::Introduced { .. }));
    let pass = bling && herbrand && types == ["0^*", "1^*", "1^*"];
    ok(pass, format!("bling={} existentials={:?}", bling, types))
}

fn herbrand_round_trips() -> Outcome {
    let (consequent, _) = normalize(&transfer(), Logic::Classical).unwrap();
    let mut passed = 0;
    let mut failed = Vec::new();
    for name in PIPELINE_PRINCIPLES {
        let target = ALIASES
            .iter()
            .find(|(a, _)| *a == name)
            .map(|(_, u)| u.to_string())
            .unwrap_or_else(|| {
                nszoo::catalog::uniform_name(name).unwrap_or(name).to_string()
            });
        let result = get_principle(&target)
            .and_then(|u| plus_version(&u))
            .and_then(|plus| {
                let h = herbrandise(&plus.statement, &consequent)?;
                let back = meta_reverse(&h)?;
                Ok(alpha_eq(&back, &Formula::implies(plus.statement, transfer())))
            });
        match result {
            Ok(true) => passed += 1,
            Ok(false) => failed.push(name.to_string()),
            Err(e) => failed.push(format!("{}: {}", name, e)),
        }
    }
    ok(
        failed.is_empty(),
        format!("{}/{} {}", passed, PIPELINE_PRINCIPLES.len(), failed.join("; ")),
    )
}

fn rule_soundness() -> Outcome {
    let config = SoundnessConfig::default();
    let required = [
        RuleName::HGMPst,
        RuleName::HIPforallst,
        RuleName::HACint,
        RuleName::PrenexAndSt,
        RuleName::PrenexOrSt,
        RuleName::PrenexImpliesSt,
        RuleName::MarkovSt,
        RuleName::DropStAntecedent,
    ];
    let mut violations = 0;
    let mut pairs = usize::MAX;
    for rule in required {
        match check_rule_soundness(rule, &config) {
            Ok(r) => {
                violations += r.violations;
                pairs = pairs.min(r.pairs);
            }
            Err(e) => return ok(false, format!("{}: {}", rule, e)),
        }
    }
    let ideal = match check_rule_soundness(RuleName::Idealisation, &config) {
        Ok(r) => r,
        Err(e) => return ok(false, e.to_string()),
    };
    let refuted = !ideal.counterexamples.is_empty();
    ok(
        violations == 0 && pairs >= 1000 && refuted,
        format!(
            "{} rules x {} pairs, {} violations; idealisation counterexamples: {}",
            required.len(),
            pairs,
            violations,
            ideal.violations
        ),
    )
}

fn extraction_validity() -> Outcome {
    let (nf, trace) = normalize(&transfer(), Logic::Classical).unwrap();
    let mut r = extract(&nf, &trace).unwrap();
    collapse_all(&mut r).unwrap();
    let model = TwoLevelModel::new(ModelConfig::new(3, 3), &r.signature).unwrap();
    let good = check_extraction(&r, &model.clone().with_interp("t_m", least_zero_realiser())).unwrap();
    let bad = check_extraction(
        &r,
        &model.with_interp("t_m", truncated_realiser(least_zero_realiser())),
    )
    .unwrap();
    ok(
        good.pass && good.assignments == 27 && !bad.pass,
        format!(
            "{} functions checked, mutation found {} violations",
            good.assignments,
            bad.violations.len()
        ),
    )
}

fn reprints(sig: &Signature, f: &Formula) -> bool {
    let text = format!("{}{}", sig.restricted_to(f), print_formula(f));
    matches!(parse_document(&text, &Signature::new()), Ok((_, g)) if g == *f)
        && typecheck_formula(f, &Context::new(sig)).is_ok()
}

fn round_trips() -> Outcome {
    let mut total = 0;
    let mut failed = Vec::new();
    for name in PRINCIPLE_NAMES {
        total += 1;
        match get_principle(name) {
            Ok(p) if reprints(&p.signature, &p.statement) => {}
            _ => failed.push(name.to_string()),
        }
    }
    for name in GOLDEN_NAMES {
        total += 1;
        match parse_golden(builtin_golden(name).unwrap()) {
            Ok((sig, f)) if reprints(&sig, &f) => {}
            _ => failed.push(name.to_string()),
        }
    }
    ok(
        failed.is_empty(),
        format!("{}/{} statements {}", total - failed.len(), total, failed.join(" ")),
    )
}

fn run_json(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_command(args.iter().copied(), &mut out, &mut err);
    (code, out)
}

fn determinism() -> Outcome {
    let args = ["nszoo", "pipeline", "Pi01G", "--logic", "classical", "--seed", "42", "--soundness"];
    let (c1, a) = run_json(&args);
    let (c2, b) = run_json(&args);
    ok(
        c1 == 0 && c2 == 0 && a == b && !a.is_empty(),
        format!("{} bytes, identical={}", a.len(), a == b),
    )
}

#[test]
fn acceptance_criteria() {
    let s = Duration::from_secs;
    let results = [
        criterion(1, "transfer normal form matches curk", s(1), transfer_normal_form),
        criterion(2, "classical Pi01G pipeline: structure, internal matrix, collapse", s(5), classical_pipeline),
        criterion(3, "intuitionistic Pi01G pipeline: bling, three Herbrand existentials", s(5), intuitionistic_pipeline),
        criterion(4, "Herbrandisation round trip for the pipeline principles", s(10), herbrand_round_trips),
        criterion(5, "rule soundness suite and idealisation counterexample", s(120), rule_soundness),
        criterion(6, "extraction validity on all 27 toy functions, mutation detected", s(10), extraction_validity),
        criterion(7, "parse/print round trip and typecheck of catalog and reference texts", s(60), round_trips),
        criterion(8, "identical seeded pipeline runs emit identical JSON", s(60), determinism),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, p)| !**p)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
