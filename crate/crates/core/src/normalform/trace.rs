//! Record of a normalisation run, with a textual and a JSON rendering and
//! an independent replay check.

use serde::Serialize;

use super::fresh::FreshSupply;
use super::rules::{rewrite, Logic, RuleName};
use crate::error::{Error, Result};
use crate::syntax::{alpha_eq, format_path, print_formula, Formula, Path, Var};

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub index: usize,
    pub rule: RuleName,
    pub path: Path,
    pub fresh: Vec<Var>,
    pub after: Formula,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RuleTrace {
    pub initial: Formula,
    pub logic: Logic,
    pub steps: Vec<TraceStep>,
}

#[derive(Serialize)]
struct StepJson<'a> {
    index: usize,
    rule: &'a str,
    path: String,
    fresh: Vec<FreshJson>,
    after: String,
}

#[derive(Serialize)]
struct FreshJson {
    name: String,
    ty: String,
}

#[derive(Serialize)]
struct TraceJson<'a> {
    logic: Logic,
    initial: String,
    steps: Vec<StepJson<'a>>,
}

impl RuleTrace {
    pub fn new(initial: Formula, logic: Logic) -> RuleTrace {
        RuleTrace {
            initial,
            logic,
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, rule: RuleName, path: Path, fresh: Vec<Var>, after: Formula) {
        self.steps.push(TraceStep {
            index: self.steps.len() + 1,
            rule,
            path,
            fresh,
            after,
        });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn result(&self) -> &Formula {
        self.steps.last().map(|s| &s.after).unwrap_or(&self.initial)
    }

    pub fn rules(&self) -> Vec<RuleName> {
        self.steps.iter().map(|s| s.rule).collect()
    }

    /// Every fresh variable introduced, with the step that introduced it.
    pub fn introduced(&self) -> impl Iterator<Item = (&TraceStep, &Var)> {
        self.steps
            .iter()
            .flat_map(|s| s.fresh.iter().map(move |v| (s, v)))
    }

    /// One line per step: `STEP <n> <Rule> AT <path> FRESH <names> => <formula>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let fresh = if s.fresh.is_empty() {
                "-".to_string()
            } else {
                s.fresh
                    .iter()
                    .map(|v| v.name.as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out.push_str(&format!(
                "STEP {} {} AT {} FRESH {} => {}\n",
                s.index,
                s.rule,
                format_path(&s.path),
                fresh,
                print_formula(&s.after)
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = TraceJson {
            logic: self.logic,
            initial: print_formula(&self.initial),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    index: s.index,
                    rule: s.rule.as_str(),
                    path: format_path(&s.path),
                    fresh: s
                        .fresh
                        .iter()
                        .map(|v| FreshJson {
                            name: v.name.clone(),
                            ty: v.ty.to_string(),
                        })
                        .collect(),
                    after: print_formula(&s.after),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("trace serialises")
    }

    /// Re-applies every step to the initial formula and checks that each
    /// recorded result is reproduced (up to renaming of bound variables).
    pub fn replay(&self) -> Result<Formula> {
        let mut fresh = FreshSupply::for_formula(&self.initial);
        let mut current = self.initial.clone();
        for s in &self.steps {
            let rw = rewrite(s.rule, &current, &s.path, self.logic, &mut fresh)
                .map_err(|e| Error::Trace(format!("step {}: {}", s.index, e)))?;
            if !alpha_eq(&rw.formula, &s.after) || rw.fresh != s.fresh {
                return Err(Error::Trace(format!(
                    "step {} ({}) does not reproduce the recorded formula",
                    s.index, s.rule
                )));
            }
            current = rw.formula;
        }
        Ok(current)
    }
}
