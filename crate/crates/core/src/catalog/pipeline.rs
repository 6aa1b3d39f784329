//! Uniform version, plus version, normal form of `UT+ -> PI01-TRANS`,
//! extraction, collapse, Herbrandisation and meta-reversal, in one run.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use super::explicit::{explicit_equivalence, explicit_search_term};
use super::golden::golden_matches;
use super::principles::{get_principle, resolve_alias, uniform_name, zoo_of, Kind, Principle};
use super::uniform::plus_version;
use crate::error::{Error, Result};
use crate::extraction::{
    collapse_all, extract, herbrandise, meta_reverse, ExtractionResult, Herbrandisation,
};
use crate::normalform::{
    expand_standard_extensionality_term, normalize, normalize_implication, Logic, NormalForm,
    RuleName, RuleTrace,
};
use crate::semantics::{check_rule_soundness, SoundnessConfig, SOUND_RULES};
use crate::syntax::{alpha_eq, print_formula, FinType, Formula, Quant, Signature};

/// The fixed consequent of every run.
pub const CONSEQUENT: &str = "PI01-TRANS";

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    pub golden_dir: Option<PathBuf>,
    pub timings: bool,
    /// Recorded in the report.
    pub seed: Option<u64>,
    /// Runs the rule-soundness suite; its verdict is skipped otherwise.
    pub soundness: Option<SoundnessConfig>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub detail: String,
}

impl Verdict {
    pub fn new(pass: bool, detail: impl Into<String>) -> Verdict {
        Verdict {
            status: if pass { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn skipped(detail: impl Into<String>) -> Verdict {
        Verdict {
            status: Status::Skipped,
            detail: detail.into(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageEntry {
    pub stage: String,
    pub formula: String,
}

/// Typed results of a run, for library callers.
#[derive(Clone, Debug, Default)]
pub struct Artifacts {
    /// Every symbol used by any stage.
    pub signature: Signature,
    pub uniform: Option<Principle>,
    pub plus: Option<Principle>,
    pub consequent: Option<NormalForm>,
    pub normal_form: Option<NormalForm>,
    pub trace: Option<RuleTrace>,
    pub extraction: Option<ExtractionResult>,
    pub herbrandisation: Option<Herbrandisation>,
    pub explicit: Option<Formula>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub principle: String,
    pub logic: Logic,
    pub stages: Vec<StageEntry>,
    pub trace: Option<Value>,
    pub extraction: Option<Value>,
    pub herbrandisation: Option<Value>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub seed: Option<u64>,
    /// Milliseconds per stage; absent unless requested, so that reports
    /// are reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub artifacts: Artifacts,
}

impl Report {
    fn new(principle: &str, logic: Logic, timings: bool) -> Report {
        Report {
            principle: principle.to_string(),
            logic,
            stages: Vec::new(),
            trace: None,
            extraction: None,
            herbrandisation: None,
            // every report carries these, skipped until decided
            verdicts: ["matrix_internal", "round_trip", "soundness"]
                .into_iter()
                .map(|k| (k.to_string(), Verdict::skipped("stage not reached")))
                .collect(),
            seed: None,
            timings: timings.then(BTreeMap::new),
            error: None,
            artifacts: Artifacts::default(),
        }
    }

    fn stage(&mut self, name: &str, f: &Formula) {
        self.stages.push(StageEntry {
            stage: name.to_string(),
            formula: print_formula(f),
        });
    }

    pub fn stage_formula(&self, name: &str) -> Option<&str> {
        self.stages
            .iter()
            .find(|s| s.stage == name)
            .map(|s| s.formula.as_str())
    }

    /// No verdict failed and no stage failed.
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.verdicts.values().any(Verdict::is_fail)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialises")
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{error}")]
pub struct PipelineError {
    pub error: Error,
    /// Everything computed before the failing stage.
    pub report: Box<Report>,
}

struct Run<'a> {
    report: Report,
    options: &'a PipelineOptions,
}

impl Run<'_> {
    fn timed<T>(&mut self, stage: &str, f: impl FnOnce(&mut Self) -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f(self).map_err(|e| e.in_stage(stage));
        if let Some(t) = self.report.timings.as_mut() {
            t.insert(stage.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }

    fn golden(&mut self, name: &str, f: &Formula) {
        let dir: Option<&Path> = self.options.golden_dir.as_deref();
        let verdict = match golden_matches(name, f, dir) {
            Ok(true) => Verdict::new(true, "alpha-equivalent to the reference"),
            Ok(false) => Verdict::new(false, format!("differs from the reference: {}", print_formula(f))),
            Err(e) => Verdict::new(false, e.to_string()),
        };
        self.report.verdicts.insert(format!("golden:{}", name), verdict);
    }
}

/// The uniform principle a pipeline name stands for.
fn uniform_principle(name: &str) -> Result<Principle> {
    let p = get_principle(name)?;
    match p.kind {
        Kind::Uniform => Ok(p),
        Kind::Zoo => get_principle(uniform_name(&p.name).expect("every zoo entry has a uniform version")),
        _ => Err(Error::Shape(format!("{} is neither a zoo nor a uniform principle", name))),
    }
}

/// Name of the zoo principle behind `name`, for choosing reference texts.
fn zoo_name(name: &str) -> String {
    let resolved = resolve_alias(name);
    zoo_of(resolved).unwrap_or(resolved).to_string()
}

pub fn pipeline(name: &str, logic: Logic) -> std::result::Result<Report, PipelineError> {
    pipeline_with(name, logic, &PipelineOptions::default())
}

pub fn pipeline_with(
    name: &str,
    logic: Logic,
    options: &PipelineOptions,
) -> std::result::Result<Report, PipelineError> {
    let mut run = Run {
        report: Report::new(name, logic, options.timings),
        options,
    };
    run.report.seed = options.seed;
    match stages(&mut run, name, logic) {
        Ok(()) => Ok(run.report),
        Err(error) => {
            run.report.error = Some(error.to_string());
            Err(PipelineError {
                error,
                report: Box::new(run.report),
            })
        }
    }
}

fn stages(run: &mut Run, name: &str, logic: Logic) -> Result<()> {
    let zoo = zoo_name(name);

    let uniform = run.timed("uniformize", |run| {
        if let Ok(p) = get_principle(&zoo) {
            if p.kind == Kind::Zoo {
                run.report.stage("zoo", &p.statement);
            }
        }
        let u = uniform_principle(name)?;
        run.report.stage("uniform", &u.statement);
        Ok(u)
    })?;
    run.report.artifacts.signature = uniform.signature.clone();
    match zoo.as_str() {
        "Pi01G" => run.golden("frok", &uniform.statement),
        "1GEN" => run.golden("fras", &uniform.statement),
        _ => {}
    }

    let plus = run.timed("plus_version", |run| {
        let p = plus_version(&uniform)?;
        run.report.stage("plus", &p.statement);
        Ok(p)
    })?;
    if zoo == "Pi01G" {
        run.timed("extensionality", |run| {
            let phi = plus.functional.as_ref().expect("plus versions carry their functional");
            let FinType::Arrow(dom, cod) = &phi.ty else {
                return Err(Error::Shape("functional without an arrow type".into()));
            };
            let ext = expand_standard_extensionality_term(&phi.term(), dom, cod)?;
            run.report.stage("extensionality", &ext);
            let (_, rest) = ext.strip_quants(Quant::ForallSt);
            let (_, matrix) = rest.strip_quants(Quant::ExistsSt);
            let matrix = matrix.clone();
            run.golden("finkal", &ext);
            run.golden("tokamak", &matrix);
            Ok(())
        })?;
    }

    let transfer = get_principle(CONSEQUENT)?.statement;
    let (consequent, _) = run.timed("consequent", |run| {
        run.report.stage("consequent", &transfer);
        let out = normalize(&transfer, logic)?;
        run.report.stage("consequent_normal_form", &out.0.to_formula());
        Ok(out)
    })?;
    run.golden("curk", &consequent.to_formula());
    run.report.artifacts.consequent = Some(consequent.clone());

    let (nf, trace) = run.timed("normalize", |run| {
        let implication = Formula::implies(plus.statement.clone(), transfer.clone());
        run.report.stage("implication", &implication);
        let out = normalize_implication(&plus.statement, &transfer, logic)?;
        run.report.stage("normal_form", &out.0.to_formula());
        Ok(out)
    })?;
    run.report.trace = Some(trace.to_json());
    run.report.verdicts.insert(
        "matrix_internal".into(),
        Verdict::new(nf.matrix.is_internal(), "the normal form's matrix has no st"),
    );
    if zoo == "Pi01G" {
        let display = match logic {
            Logic::Classical => "structure",
            Logic::Intuitionistic => "bling",
        };
        run.golden(display, &nf.to_formula());
    }
    run.report.artifacts.normal_form = Some(nf.clone());
    run.report.artifacts.trace = Some(trace.clone());

    let extraction = run.timed("extract", |run| {
        let mut r = extract(&nf, &trace)?;
        run.report.stage("internal_sentence", &r.internal_sentence);
        if let Some(c) = collapse_all(&mut r)? {
            run.report.stage("collapsed", &c);
        }
        Ok(r)
    })?;
    run.report.extraction = Some(extraction.to_json());
    run.report.artifacts.signature = run.report.artifacts.signature.merged(&extraction.signature);
    run.report.artifacts.extraction = Some(extraction);

    let h = run.timed("herbrandise", |run| {
        let h = herbrandise(&plus.statement, &consequent)?;
        run.report.stage("herbrandisation", &h.body);
        Ok(h)
    })?;
    run.report.herbrandisation = Some(h.to_json());
    run.report.artifacts.signature = run.report.artifacts.signature.merged(&h.signature);
    if zoo == "Pi01G" {
        run.golden("HIO", &h.body);
    }

    run.timed("meta_reverse", |run| {
        let back = meta_reverse(&h)?;
        run.report.stage("meta_reversal", &back);
        let original = Formula::implies(plus.statement.clone(), transfer.clone());
        let ok = alpha_eq(&back, &original);
        run.report.verdicts.insert(
            "round_trip".into(),
            Verdict::new(ok, "meta-reversal recovers the implication up to bound renaming"),
        );
        Ok(())
    })?;
    run.report.artifacts.herbrandisation = Some(h);

    run.timed("explicit", |run| {
        let (sig, f) = match logic {
            Logic::Classical => explicit_equivalence(&uniform, &plus)?,
            Logic::Intuitionistic => explicit_search_term(&uniform, &plus)?,
        };
        run.report.stage("explicit", &f);
        run.report.artifacts.signature = run.report.artifacts.signature.merged(&sig);
        match (zoo.as_str(), logic) {
            ("DNR", Logic::Classical) => run.golden("frood", &f),
            ("Pi01G", Logic::Classical) => run.golden("frood2", &f),
            ("Pi01G", Logic::Intuitionistic) => run.golden("froodke", &f),
            _ => {}
        }
        run.report.artifacts.explicit = Some(f);
        Ok(())
    })?;

    let soundness = match &run.options.soundness {
        Some(config) => run.timed("soundness", |_| soundness_verdict(config))?,
        None => Verdict::skipped("not requested"),
    };
    run.report.verdicts.insert("soundness".into(), soundness);

    run.report.artifacts.uniform = Some(uniform);
    run.report.artifacts.plus = Some(plus);
    Ok(())
}

/// Every rule tagged sound shows no violation, and idealisation shows the
/// expected finite counterexample.
pub fn soundness_verdict(config: &SoundnessConfig) -> Result<Verdict> {
    let mut failed = Vec::new();
    for rule in SOUND_RULES {
        let r = check_rule_soundness(rule, config)?;
        if !r.pass {
            failed.push(format!("{} ({} violations)", rule, r.violations));
        }
    }
    let ideal = check_rule_soundness(RuleName::Idealisation, config)?;
    if ideal.pass {
        failed.push("Idealisation (no finite counterexample found)".into());
    }
    Ok(if failed.is_empty() {
        Verdict::new(
            true,
            format!(
                "{} rules sound on {} pairs each; idealisation refuted as expected",
                SOUND_RULES.len(),
                config.pairs
            ),
        )
    } else {
        Verdict::new(false, failed.join(", "))
    })
}
