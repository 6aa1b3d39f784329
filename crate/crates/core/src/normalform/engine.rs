//! The normalisation driver: repeatedly picks the first applicable rule
//! (by phase, then post-order position) until the formula is in normal form.

use std::collections::BTreeSet;

use super::fresh::FreshSupply;
use super::measure::measure;
use super::rules::{describe_node, rewrite, Logic, Rewrite, RuleName};
use super::trace::RuleTrace;
use crate::error::{Error, Result};
use crate::syntax::{format_path, post_order_paths, Formula, Path, Quant, Var};

/// `!st universals. ?st existentials. matrix` with an internal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub st_universals: Vec<Var>,
    pub st_existentials: Vec<Var>,
    pub matrix: Formula,
}

impl NormalForm {
    /// No standard quantifiers at all.
    pub fn vacuous(&self) -> bool {
        self.st_universals.is_empty() && self.st_existentials.is_empty()
    }

    pub fn to_formula(&self) -> Formula {
        Formula::quants(
            Quant::ForallSt,
            &self.st_universals,
            Formula::quants(Quant::ExistsSt, &self.st_existentials, self.matrix.clone()),
        )
    }
}

/// Reads `f` as a normal form, if it is one.
pub fn is_normal_form(f: &Formula) -> Option<NormalForm> {
    let (us, rest) = f.strip_quants(Quant::ForallSt);
    let (es, matrix) = rest.strip_quants(Quant::ExistsSt);
    if !matrix.is_internal() {
        return None;
    }
    let mut seen = BTreeSet::new();
    if !us.iter().chain(&es).all(|v| seen.insert(v.name.clone())) {
        return None;
    }
    Some(NormalForm {
        st_universals: us,
        st_existentials: es,
        matrix: matrix.clone(),
    })
}

const PHASES: [&[RuleName]; 4] = [
    &[
        RuleName::ExpandApprox,
        RuleName::ExpandExactEq,
        RuleName::ExpandStdExt,
    ],
    &[RuleName::DoubleNegSt, RuleName::MarkovSt],
    &[
        RuleName::BoundedSearchSt,
        RuleName::CodeTuple,
        RuleName::SkolemAntecedent,
        RuleName::DropStAntecedent,
    ],
    &[
        RuleName::PrenexAndSt,
        RuleName::PrenexOrSt,
        RuleName::PrenexImpliesSt,
        RuleName::Idealisation,
        RuleName::HACint,
        RuleName::HGMPst,
        RuleName::HIPforallst,
    ],
];

/// Step cap; every derivation in practice is far shorter.
pub const MAX_STEPS: usize = 500;

/// Extra side conditions the driver imposes on top of rule applicability.
fn engine_allows(rule: RuleName, root: &Formula, path: &[usize]) -> bool {
    match rule {
        // choice is only needed to pull an st-existential over a block that
        // itself sits below an st-existential
        RuleName::HACint => matches!(
            path.split_last().and_then(|(_, p)| root.at(p)),
            Some(Formula::Quant(Quant::ExistsSt, _, _))
        ),
        _ => true,
    }
}

fn select(
    f: &Formula,
    logic: Logic,
    fresh: &mut FreshSupply,
) -> Option<(RuleName, Path, Rewrite)> {
    let paths = post_order_paths(f);
    for phase in PHASES {
        for path in &paths {
            for &rule in phase {
                if rule.classical_only() && logic == Logic::Intuitionistic {
                    continue;
                }
                if !engine_allows(rule, f, path) {
                    continue;
                }
                if let Ok(rw) = rewrite(rule, f, path, logic, fresh) {
                    return Some((rule, path.to_vec(), rw));
                }
            }
        }
    }
    None
}

/// The first node (post-order) that keeps `f` out of normal form.
fn blocking_node(f: &Formula) -> Error {
    let (us, rest) = f.strip_quants(Quant::ForallSt);
    let (es, _) = rest.strip_quants(Quant::ExistsSt);
    let prefix = us.len() + es.len();
    for path in post_order_paths(f) {
        if path.len() < prefix {
            continue;
        }
        let node = f.at(&path).expect("path exists");
        let offending = match node {
            Formula::Quant(q, _, _) => q.is_st(),
            Formula::St(_) | Formula::StdExt(_) | Formula::HigherEq(..) => true,
            _ => false,
        };
        if offending {
            return Error::Unsupported {
                path: format_path(&path),
                node: describe_node(node),
            };
        }
    }
    Error::Unsupported {
        path: "root".into(),
        node: describe_node(f),
    }
}

/// Rewrites `phi` to normal form, recording every step.
pub fn normalize(phi: &Formula, logic: Logic) -> Result<(NormalForm, RuleTrace)> {
    let mut trace = RuleTrace::new(phi.clone(), logic);
    let mut fresh = FreshSupply::for_formula(phi);
    let mut current = phi.clone();
    let mut last = measure(&current);
    for step in 1..=MAX_STEPS {
        if let Some(nf) = is_normal_form(&current) {
            return Ok((nf, trace));
        }
        let (rule, path, rw) =
            select(&current, logic, &mut fresh).ok_or_else(|| blocking_node(&current))?;
        let next = measure(&rw.formula);
        if next >= last {
            return Err(Error::Measure(step));
        }
        trace.push(rule, path, rw.fresh, rw.formula.clone());
        current = rw.formula;
        last = next;
    }
    match is_normal_form(&current) {
        Some(nf) => Ok((nf, trace)),
        None => Err(Error::Budget(format!("{} rewrite steps", MAX_STEPS))),
    }
}

/// Normalises `antecedent -> consequent`; a trivial antecedent is dropped.
pub fn normalize_implication(
    antecedent: &Formula,
    consequent: &Formula,
    logic: Logic,
) -> Result<(NormalForm, RuleTrace)> {
    if *antecedent == Formula::True {
        normalize(consequent, logic)
    } else {
        normalize(
            &Formula::implies(antecedent.clone(), consequent.clone()),
            logic,
        )
    }
}
