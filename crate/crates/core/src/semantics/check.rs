//! Validity of extracted terms: the internal sentence, with the witness
//! symbols interpreted by concrete realisers, is checked over every
//! assignment of its universal variables in a finite model.

use std::rc::Rc;

use serde::Serialize;

use super::eval::{assignments, eval};
use super::model::{Interp, TwoLevelModel};
use super::value::Value;
use crate::error::{Error, Result};
use crate::extraction::ExtractionResult;
use crate::syntax::{FinType, Formula, Quant, Var};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtractionCheck {
    /// Assignments of the universal variables that were tried.
    pub assignments: usize,
    /// Assignments under which the internal sentence fails.
    pub violations: Vec<String>,
    /// Assignments under which the collapsed sentence fails.
    pub collapsed_violations: Vec<String>,
    pub pass: bool,
}

/// Checks the internal (and, if present, collapsed) sentence of `result`
/// in `model`, whose witness symbols should already be interpreted.
pub fn check_extraction(result: &ExtractionResult, model: &TwoLevelModel) -> Result<ExtractionCheck> {
    let model = model_with_signature(result, model);
    let violations = failing(&result.internal_sentence, &result.universals, &model)?;
    let collapsed_violations = match &result.collapsed {
        Some(c) => failing(c, &result.universals, &model)?,
        None => Vec::new(),
    };
    let count = assignments(&model, &result.universals, false)?.len();
    Ok(ExtractionCheck {
        assignments: count,
        pass: violations.is_empty() && collapsed_violations.is_empty(),
        violations,
        collapsed_violations,
    })
}

/// The model extended with the extraction's witness declarations, keeping
/// interpretations already present.
fn model_with_signature(result: &ExtractionResult, model: &TwoLevelModel) -> TwoLevelModel {
    let sig = model.signature.merged(&result.signature);
    let mut out = TwoLevelModel::new(model.config, &sig).expect("config already validated");
    for name in sig.funs.keys() {
        if let Some(i) = model.interp(name) {
            out = out.with_interp(name, i.clone());
        }
    }
    out
}

/// Assignments of `universals` that falsify the body of `sentence`.
fn failing(sentence: &Formula, universals: &[Var], model: &TwoLevelModel) -> Result<Vec<String>> {
    let (vars, body) = sentence.strip_quants(Quant::Forall);
    if vars.len() < universals.len() || vars[..universals.len()] != *universals {
        return Err(Error::Shape("sentence does not start with the recorded universals".into()));
    }
    let body = Formula::quants(Quant::Forall, &vars[universals.len()..], body.clone());
    let mut out = Vec::new();
    for env in assignments(model, universals, false)? {
        if !eval(&body, model, &env)? {
            out.push(
                env.bindings()
                    .iter()
                    .map(|(n, v)| format!("{} = {}", n, v))
                    .collect::<Vec<_>>()
                    .join(", "),
            );
        }
    }
    Ok(out)
}

/// Realiser of a search witness: for a type-1 argument `f`, the one-entry
/// sequence holding the least zero of `f`, or 0 when there is none.
pub fn least_zero_realiser() -> Interp {
    Interp::Native(Rc::new(|m: &TwoLevelModel, args: &[Value]| {
        let f = args
            .last()
            .ok_or_else(|| Error::Shape("search realiser needs an argument".into()))?;
        let mut found = 0;
        for n in 0..m.size() {
            if m.apply(f, &FinType::Base, &Value::Num(n))? == Value::Num(0) {
                found = n;
                break;
            }
        }
        Ok(Value::seq(vec![Value::Num(found)]))
    }))
}

/// Realiser returning every element of `ty` the model knows: a candidate
/// list that contains a witness whenever one exists.
pub fn exhaustive_realiser(ty: FinType) -> Interp {
    Interp::Native(Rc::new(move |m: &TwoLevelModel, _: &[Value]| {
        Ok(Value::seq(m.universe(&ty).items.clone()))
    }))
}

/// Corrupts a realiser by dropping the last entry of each output.
pub fn truncated_realiser(inner: Interp) -> Interp {
    Interp::Native(Rc::new(move |m: &TwoLevelModel, args: &[Value]| {
        let v = match &inner {
            Interp::Native(f) => f(m, args)?,
            _ => return Err(Error::Shape("only native realisers can be corrupted".into())),
        };
        let mut items = v
            .as_seq()
            .ok_or_else(|| Error::Shape("realiser output is not a sequence".into()))?
            .to_vec();
        items.pop();
        Ok(Value::seq(items))
    }))
}
